from fractions import Fraction

import pytest

from patchwork.errors import InvalidInputError
from patchwork.lattice import (
    ConvexPolygon, LatticePoint, Quadrant, Ray, SignedTriangulation, lattice_length, midpoint, newton_polygon, on_segment,
    orientation, outward_normal_rays, validate_triangulation,
)


def unit_square() -> SignedTriangulation:
    domain = ConvexPolygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    return SignedTriangulation(domain, [(0, 0), (1, 0), (1, 1), (0, 1)], [(0, 1, 2), (0, 2, 3)], [1, -1, 1, -1])


class TestQuadrant:
    def test_label(self):
        assert [quadrant.label for quadrant in Quadrant] == ["++", "-+", "+-", "--"]

    def test_reflect(self):
        assert Quadrant.MINUS_PLUS.reflect(LatticePoint(2, 3)) == LatticePoint(-2, 3)
        assert Quadrant.MINUS_MINUS.reflect((Fraction(1, 2), 1)) == (Fraction(-1, 2), -1)

    def test_of(self):
        assert Quadrant.of(1, -1) is Quadrant.PLUS_MINUS


class TestLatticePoint:
    def test_arithmetic(self):
        p, q = LatticePoint(1, 2), LatticePoint(3, -1)
        assert p + q == LatticePoint(4, 1)
        assert q - p == LatticePoint(2, -3)
        assert -p == LatticePoint(-1, -2)
        assert p.scaled(3) == LatticePoint(3, 6)
        assert p.dot(q) == 1
        assert p.cross(q) == -7

    def test_non_integer_coordinates(self):
        with pytest.raises(TypeError):
            LatticePoint(1.5, 0)

    def test_primitive(self):
        assert LatticePoint(4, -6).primitive() == LatticePoint(2, -3)
        with pytest.raises(InvalidInputError):
            LatticePoint(0, 0).primitive()

    def test_coerce(self):
        assert LatticePoint.coerce((2, 5)) == LatticePoint(2, 5)
        with pytest.raises(TypeError):
            LatticePoint.coerce(5)

    def test_ordering(self):
        assert sorted([LatticePoint(1, 0), LatticePoint(0, 2), LatticePoint(0, 1)]) == [LatticePoint(0, 1), LatticePoint(0, 2), LatticePoint(1, 0)]


class TestHelpers:
    def test_lattice_length(self):
        assert lattice_length(LatticePoint(0, 0), LatticePoint(4, 6)) == 2

    def test_orientation(self):
        assert orientation(LatticePoint(0, 0), LatticePoint(1, 0), LatticePoint(0, 1)) == 1
        assert orientation(LatticePoint(0, 0), LatticePoint(0, 1), LatticePoint(1, 0)) == -1

    def test_midpoint(self):
        assert midpoint(LatticePoint(0, 0), LatticePoint(1, 3)) == (Fraction(1, 2), Fraction(3, 2))

    def test_on_segment(self):
        assert on_segment((1, 1), LatticePoint(0, 0), LatticePoint(2, 2))
        assert not on_segment((3, 3), LatticePoint(0, 0), LatticePoint(2, 2))


class TestConvexPolygon:
    def test_clockwise_rejected(self):
        with pytest.raises(InvalidInputError):
            ConvexPolygon([(0, 0), (0, 1), (1, 0)])

    def test_collinear_rejected(self):
        with pytest.raises(InvalidInputError):
            ConvexPolygon([(0, 0), (1, 0), (2, 0), (0, 1)])

    def test_degree_triangle(self):
        triangle = ConvexPolygon.degree_triangle(3)
        assert triangle.doubled_area == 9
        assert triangle.lattice_perimeter == 9
        assert len(triangle.lattice_points()) == 10
        with pytest.raises(InvalidInputError):
            ConvexPolygon.degree_triangle(0)

    def test_contains(self):
        triangle = ConvexPolygon.degree_triangle(2)
        assert triangle.contains((1, 1))
        assert not triangle.contains((1, 1), strict=True)
        assert triangle.contains((Fraction(1, 2), Fraction(1, 2)), strict=True)
        assert triangle.on_boundary((1, 0))

    def test_equality_ignores_starting_vertex(self):
        assert ConvexPolygon([(0, 0), (1, 0), (0, 1)]) == ConvexPolygon([(1, 0), (0, 1), (0, 0)])

    def test_segment(self):
        segment = ConvexPolygon([(0, 0), (2, 0)])
        assert segment.is_segment
        assert len(segment.sides) == 2
        assert segment.lattice_perimeter == 4
        assert segment.contains((1, 0))

    def test_side_containing(self):
        triangle = ConvexPolygon.degree_triangle(3)
        assert triangle.side_containing((1, 0), (2, 0)) == (LatticePoint(0, 0), LatticePoint(3, 0))
        assert triangle.side_containing((1, 1), (2, 0)) is None

    def test_reflected(self):
        assert ConvexPolygon.degree_triangle(1).reflected(Quadrant.MINUS_PLUS) == ConvexPolygon([(0, 0), (0, 1), (-1, 0)])


class TestNewtonPolygon:
    def test_drops_interior_and_collinear_points(self):
        assert newton_polygon([(0, 0), (1, 0), (2, 0), (1, 1), (0, 2), (0, 1)]) == ConvexPolygon.degree_triangle(2)

    def test_degenerate_hulls(self):
        assert newton_polygon([(1, 1)]).is_point
        assert newton_polygon([(0, 0), (1, 1), (2, 2)]) == ConvexPolygon([(0, 0), (2, 2)])

    def test_empty(self):
        with pytest.raises(InvalidInputError, match="empty polynomial"):
            newton_polygon([])


class TestRay:
    def test_outward_normals(self):
        normals = {side: ray.direction for side, ray in outward_normal_rays(ConvexPolygon.degree_triangle(2))}
        assert normals[(LatticePoint(0, 0), LatticePoint(2, 0))] == LatticePoint(0, -1)
        assert normals[(LatticePoint(2, 0), LatticePoint(0, 2))] == LatticePoint(1, 1)
        assert normals[(LatticePoint(0, 2), LatticePoint(0, 0))] == LatticePoint(-1, 0)

    def test_non_primitive_direction(self):
        with pytest.raises(InvalidInputError):
            Ray(LatticePoint(2, 0), (Fraction(0), Fraction(0)))


class TestSignedTriangulation:
    def test_triangles_normalized_counterclockwise(self):
        triangulation = unit_square().with_triangles([(0, 2, 1), (0, 3, 2)])
        for triangle in triangulation.triangles:
            assert orientation(*triangulation.triangle_points(triangle)) > 0

    def test_equality_ignores_indexing(self):
        assert unit_square() == unit_square().with_triangles([(2, 3, 0), (1, 2, 0)])
        assert unit_square() != unit_square().with_flipped_signs()

    def test_with_sign(self):
        assert unit_square().with_sign((1, 0), 1).sign((1, 0)) == 1

    def test_sign_count_mismatch(self):
        with pytest.raises(InvalidInputError):
            SignedTriangulation(ConvexPolygon.degree_triangle(1), [(0, 0), (1, 0), (0, 1)], [(0, 1, 2)], [1, 1])

    def test_standard(self):
        triangulation = SignedTriangulation.standard(4, lambda i, j: 1)
        assert len(triangulation.triangles) == 16
        assert len(triangulation.vertices) == 15
        assert validate_triangulation(triangulation).primitive

    def test_edges(self):
        assert len(unit_square().edges()) == 5


class TestValidateTriangulation:
    def test_valid(self):
        report = validate_triangulation(unit_square())
        assert report and report.primitive
        assert report.to_json() == {"valid": True, "primitive": True, "violations": []}

    def test_overlapping_triangles(self):
        overlapping = unit_square().with_triangles([(0, 1, 2), (0, 1, 3)])
        report = validate_triangulation(overlapping)
        assert not report
        assert any("used twice with the same orientation" in violation for violation in report.violations)

    def test_missing_cover(self):
        report = validate_triangulation(unit_square().with_triangles([(0, 1, 2)]))
        assert "area sum mismatch" in report.violations
        assert any("not on the domain boundary" in violation for violation in report.violations)

    def test_duplicate_vertices(self):
        triangulation = SignedTriangulation(ConvexPolygon.degree_triangle(1), [(0, 0), (1, 0), (0, 1), (0, 0)], [(0, 1, 2)], {(0, 0): 1, (1, 0): 1, (0, 1): 1})
        assert "duplicate vertices" in validate_triangulation(triangulation).violations

    def test_bad_signs(self):
        report = validate_triangulation(unit_square().with_sign((0, 0), 0))
        assert "signs must be +1 or -1" in report.violations

    def test_non_primitive(self):
        triangulation = SignedTriangulation(ConvexPolygon.degree_triangle(2), [(0, 0), (2, 0), (0, 2)], [(0, 1, 2)], [1, 1, 1])
        report = validate_triangulation(triangulation)
        assert report.valid and not report.primitive

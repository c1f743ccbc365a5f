from fractions import Fraction

import pytest

from patchwork.charts import Chart, adjoin_side, affine_topology, chart_of_polynomial, chart_of_triangulation, projective_topology, trinomial_chart
from patchwork.errors import InvalidInputError, SingularCurveError
from patchwork.lattice import ConvexPolygon, Quadrant, SignedTriangulation
from patchwork.polyval import SparsePolynomial, numeric_isotopy
from patchwork.presets import cubic_family
from patchwork.tcurve import IsotopyCode, TCurve
from patchwork.tcurve.curve import Enums


def chart(text: str):
    return chart_of_polynomial(SparsePolynomial.parse(text))


class TestAdjoinSide:
    def test_existing_side_is_kept(self):
        line = chart("x + y + 1")
        assert adjoin_side(line, (0, -1)) is line

    def test_left_side_of_a_cubic_chart(self):
        adjoined = adjoin_side(chart("8x^3 - x^2 + 4y^2"), (-1, 0))
        assert adjoined.polygon == ConvexPolygon([(2, 0), (3, 0), (3, 1), (0, 3), (0, 2)])
        strip = ((Fraction(3, 2), 1), (Fraction(3, 2), 2))
        assert strip in adjoined.segments(Quadrant.MINUS_PLUS)
        assert strip in adjoined.segments(Quadrant.MINUS_MINUS)
        assert strip not in adjoined.segments(Quadrant.PLUS_PLUS)

    def test_copies_below_the_cut_are_kept(self):
        adjoined = adjoin_side(chart("8x^3 - x^2 + 4y^2"), (-1, 0))
        midline = ((1, 1), (Fraction(5, 2), 0))
        assert adjoined.segments(Quadrant.PLUS_PLUS) == (midline,)
        assert adjoined.segments(Quadrant.PLUS_MINUS) == (midline,)

    def test_signs_move_with_the_vertices(self):
        adjoined = adjoin_side(chart("8x^3 - x^2 + 4y^2"), (-1, 0))
        assert adjoined.sign(Quadrant.PLUS_PLUS, (2, 0)) == -1
        assert adjoined.sign(Quadrant.PLUS_PLUS, (0, 3)) == 1
        assert adjoined.sign(Quadrant.MINUS_PLUS, (3, 1)) == -1

    def test_point(self):
        adjoined = adjoin_side(chart_of_polynomial(SparsePolynomial.monomial((1, 1))), (0, -1))
        assert adjoined.polygon.is_segment

    def test_non_primitive_normal(self):
        assert adjoin_side(chart("x + y + 1"), (2, 2)) == chart("x + y + 1")

    def test_zero_normal(self):
        with pytest.raises(InvalidInputError):
            adjoin_side(chart("x + y + 1"), (0, 0))

    def test_wrong_type(self):
        with pytest.raises(TypeError):
            adjoin_side(ConvexPolygon.degree_triangle(1), (0, -1))


class TestAffineTopology:
    def test_line(self):
        glued = affine_topology(chart("x + y + 1"))
        assert glued.tag == Enums.Carrier.AFFINE_PLANE
        assert glued.components == 1
        assert glued.unbounded_branches == 2
        assert glued.closed_components == 0
        assert glued.code is None

    def test_circle(self):
        glued = affine_topology(chart("x^2 + y^2 - 1"))
        assert glued.components == 1
        assert glued.unbounded_branches == 0
        assert glued.closed_components == 1

    def test_node_at_the_origin_is_smoothed(self):
        glued = affine_topology(chart("8x^3*y - x^2*y + 4y^3"))
        assert glued.components == 2
        assert glued.unbounded_branches == 2
        assert glued.closed_components == 1
        assert glued.components == numeric_isotopy(SparsePolynomial.parse("8x^3 - x^2 + 4y^2"), resolution=1024).affine_components

    def test_node_without_signs(self):
        unsigned = Chart.from_json({key: value for key, value in chart("8x^3 - x^2 + 4y^2").to_json().items() if key != "signs"})
        glued = affine_topology(unsigned)
        assert glued.components == 1
        assert glued.unbounded_branches == 2

    def test_to_json(self):
        payload = affine_topology(chart("x + y + 1")).to_json()
        assert payload["carrier"] == "affine-plane"
        assert payload["unbounded_branches"] == 2
        assert "isotopy_code" not in payload


class TestProjectiveTopology:
    def test_line(self):
        assert projective_topology(chart("x + y + 1")).code.encoding == "J"

    def test_conic(self):
        glued = projective_topology(chart("x^2 + y^2 - 1"))
        assert glued.code.encoding == "1"
        assert glued.components == 1

    def test_agrees_with_the_t_curve(self):
        triangulation = SignedTriangulation.standard(4, lambda i, j: -1 if i % 2 and j % 2 else 1)
        assert projective_topology(chart_of_triangulation(triangulation)).code == TCurve(triangulation).code

    def test_polygon_other_than_a_degree_triangle(self):
        assert projective_topology(chart_of_triangulation(cubic_family().triangulation())).code.encoding == "J ∪ 1"

    def test_node_at_the_origin_matches_the_numeric_curve(self):
        polynomial = SparsePolynomial.parse("8x^3 - x^2 + 4y^2")
        glued = projective_topology(trinomial_chart(polynomial))
        assert glued.code == IsotopyCode.from_encoding("J ∪ 1")
        assert glued.code == numeric_isotopy(polynomial, resolution=1024).code

    def test_node_without_signs(self):
        unsigned = Chart.from_json({key: value for key, value in chart("8x^3 - x^2 + 4y^2").to_json().items() if key != "signs"})
        with pytest.raises(SingularCurveError):
            projective_topology(unsigned)

    def test_to_json(self):
        payload = projective_topology(trinomial_chart(SparsePolynomial.parse("x + y + 1"))).to_json()
        assert payload["carrier"] == "projective-plane"
        assert payload["isotopy_code"]["encoding"] == "J"
        assert payload["glued"]

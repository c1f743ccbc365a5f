from fractions import Fraction

import pytest

from patchwork.charts import (
    chart_of_polynomial, is_completely_nondegenerate, is_peripherally_nondegenerate, quasihomogeneous_chart, quasihomogeneous_roots, trinomial_chart,
)
from patchwork.errors import ChartError, InvalidInputError
from patchwork.lattice import ConvexPolygon, LatticePoint, Quadrant
from patchwork.polyval import SparsePolynomial

HALF = Fraction(1, 2)


class TestTrinomialChart:
    def test_line(self):
        chart = trinomial_chart(SparsePolynomial.parse("x + y + 1"))
        assert chart.polygon == ConvexPolygon.degree_triangle(1)
        assert chart.segments(Quadrant.PLUS_PLUS) == ()
        assert chart.segments(Quadrant.MINUS_PLUS) == (((HALF, 0), (HALF, HALF)),)
        assert chart.segments(Quadrant.MINUS_MINUS) == (((0, HALF), (HALF, 0)),)

    def test_vertex_signs(self):
        chart = trinomial_chart(SparsePolynomial.parse("8x^3 - x^2 + 4y^2"))
        assert chart.sign(Quadrant.PLUS_PLUS, (2, 0)) == -1
        assert chart.sign(Quadrant.MINUS_PLUS, (3, 0)) == -1
        assert chart.sign(Quadrant.PLUS_MINUS, (0, 2)) == 1

    def test_flipping_every_coefficient_keeps_the_chart(self):
        assert trinomial_chart(SparsePolynomial.parse("-x - y - 1")) == trinomial_chart(SparsePolynomial.parse("x + y + 1"))

    def test_collinear(self):
        with pytest.raises(ChartError):
            trinomial_chart(SparsePolynomial.parse("1 + x + x^2"))

    def test_wrong_number_of_terms(self):
        with pytest.raises(ChartError):
            trinomial_chart(SparsePolynomial.parse("1 + x + y + x*y"))

    def test_wrong_type(self):
        with pytest.raises(TypeError):
            trinomial_chart("x + y + 1")


class TestQuasihomogeneousChart:
    def test_marked_points_follow_root_signs(self):
        chart = quasihomogeneous_chart(SparsePolynomial.parse("x^3 - 7x + 6"))
        assert chart.marked_points(Quadrant.PLUS_PLUS) == [(1, 0), (2, 0)]
        assert chart.marked_points(Quadrant.PLUS_MINUS) == [(1, 0), (2, 0)]
        assert chart.marked_points(Quadrant.MINUS_PLUS) == [(Fraction(3, 2), 0)]

    def test_monomial(self):
        chart = quasihomogeneous_chart(SparsePolynomial.monomial((2, 1)))
        assert chart.polygon.is_point
        assert chart.is_empty
        assert chart.sign(Quadrant.PLUS_MINUS, (2, 1)) == -1

    def test_not_a_segment(self):
        with pytest.raises(ChartError):
            quasihomogeneous_chart(SparsePolynomial.parse("x + y + 1"))

    def test_repeated_root(self):
        with pytest.raises(ChartError, match="peripherally degenerate"):
            quasihomogeneous_chart(SparsePolynomial.parse("(x - 1)^2"))


class TestQuasihomogeneousRoots:
    def test_diagonal_segment(self):
        start, direction, roots = quasihomogeneous_roots(SparsePolynomial.parse("x^2 - y^2"))
        assert start == LatticePoint(0, 2)
        assert direction == LatticePoint(1, -1)
        assert sorted(float(root) for root in roots) == [-1.0, 1.0]


class TestChartOfPolynomial:
    def test_dispatch(self):
        assert chart_of_polynomial(SparsePolynomial.parse("x^2 - 1")).polygon.is_segment
        assert chart_of_polynomial(SparsePolynomial.parse("x^2 + y^2 - 1")).polygon == ConvexPolygon.degree_triangle(2)

    def test_too_many_terms(self):
        with pytest.raises(ChartError):
            chart_of_polynomial(SparsePolynomial.parse("1 + x + y + x*y"))


class TestNondegeneracy:
    def test_completely_nondegenerate(self):
        assert is_completely_nondegenerate(SparsePolynomial.parse("x + y + 1"))
        assert is_completely_nondegenerate(SparsePolynomial.parse("x^3 - 7x + 6"))
        assert not is_completely_nondegenerate(SparsePolynomial.parse("(x - 1)^2"))

    def test_peripherally_degenerate_side(self):
        assert not is_peripherally_nondegenerate(SparsePolynomial.parse("x^2 + 2x*y + y^2 + 1"))
        assert is_peripherally_nondegenerate(SparsePolynomial.parse("x^2 + y^2 - 1"))

    def test_undecided(self):
        with pytest.raises(InvalidInputError):
            is_completely_nondegenerate(SparsePolynomial.parse("1 + x + y + x*y"))

    def test_zero(self):
        with pytest.raises(InvalidInputError):
            is_completely_nondegenerate(SparsePolynomial())

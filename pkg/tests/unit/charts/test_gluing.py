import pytest

from patchwork.charts import chart_of_triangulation, patchwork_charts, trinomial_chart
from patchwork.errors import ChartError, InvalidInputError
from patchwork.lattice import ConvexPolygon, Quadrant, SignedTriangulation
from patchwork.polyval import SparsePolynomial
from patchwork.tcurve import PLCurve, TCurve


def trinomial(text: str):
    return trinomial_chart(SparsePolynomial.parse(text))


class TestPatchworkCharts:
    def test_single_chart(self):
        line = trinomial("x + y + 1")
        assert patchwork_charts(line) is line

    def test_compatible(self):
        glued = patchwork_charts([trinomial("1 + x + y"), trinomial("x + x*y + y")])
        assert glued.polygon == ConvexPolygon([(0, 0), (1, 0), (1, 1), (0, 1)])
        assert glued.sign(Quadrant.PLUS_PLUS, (1, 1)) == 1
        assert glued.sign(Quadrant.MINUS_PLUS, (1, 0)) == -1

    def test_incompatible(self):
        with pytest.raises(ChartError, match="incompatible charts"):
            patchwork_charts([trinomial("1 + x + y"), trinomial("-x + x*y + y")])

    def test_overlapping(self):
        with pytest.raises(ChartError):
            patchwork_charts([trinomial("1 + x + y"), trinomial("1 + x + y")])

    def test_empty(self):
        with pytest.raises(InvalidInputError):
            patchwork_charts([])


class TestChartOfTriangulation:
    def test_matches_the_t_curve(self):
        triangulation = SignedTriangulation.standard(3, lambda i, j: -1 if (i + 2 * j) % 3 == 1 else 1)
        chart = chart_of_triangulation(triangulation)
        assert chart.polygon == ConvexPolygon.degree_triangle(3)
        assert PLCurve(tuple(chart.drawn())) == TCurve(triangulation).curve

    def test_wrong_type(self):
        with pytest.raises(TypeError):
            chart_of_triangulation(ConvexPolygon.degree_triangle(1))

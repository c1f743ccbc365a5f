from fractions import Fraction

import pytest

from patchwork.charts import Chart, side_normal
from patchwork.charts.chart import has_side_with_normal
from patchwork.errors import InvalidInputError
from patchwork.lattice import ConvexPolygon, LatticePoint, Quadrant

HALF = Fraction(1, 2)


def line_chart() -> Chart:
    return Chart(ConvexPolygon.degree_triangle(1), {Quadrant.MINUS_PLUS: [((HALF, 0), (HALF, HALF))], Quadrant.MINUS_MINUS: [((HALF, 0), (0, HALF))]})


class TestChart:
    def test_wrong_polygon_type(self):
        with pytest.raises(TypeError):
            Chart([(0, 0), (1, 0), (0, 1)])

    def test_curve_must_stay_in_the_polygon(self):
        with pytest.raises(InvalidInputError):
            Chart(ConvexPolygon.degree_triangle(1), {Quadrant.PLUS_PLUS: [((0, 0), (1, 1))]})

    def test_is_empty(self):
        assert Chart(ConvexPolygon.degree_triangle(1)).is_empty
        assert not line_chart().is_empty

    def test_drawn_reflects_into_quadrants(self):
        drawn = line_chart().drawn()
        assert ((-HALF, 0), (-HALF, HALF)) in drawn
        assert ((0, -HALF), (-HALF, 0)) in drawn

    def test_marked_points(self):
        chart = Chart(ConvexPolygon([(0, 0), (2, 0)]), {Quadrant.PLUS_PLUS: [((1, 0), (1, 0))]})
        assert chart.marked_points(Quadrant.PLUS_PLUS) == [(1, 0)]
        assert chart.marked_points(Quadrant.MINUS_PLUS) == []

    def test_trace(self):
        side = (LatticePoint(0, 0), LatticePoint(1, 0))
        assert line_chart().trace(side, Quadrant.MINUS_PLUS) == {(HALF, 0)}
        assert line_chart().trace(side, Quadrant.PLUS_PLUS) == set()

    def test_translation_is_invisible_to_equality(self):
        moved = line_chart().translated(LatticePoint(2, 3))
        assert moved.polygon == ConvexPolygon([(2, 3), (3, 3), (2, 4)])
        assert moved == line_chart()
        assert moved.normalized().polygon == ConvexPolygon.degree_triangle(1)

    def test_json(self):
        payload = line_chart().to_json()
        assert payload["polygon"] == [[0, 0], [1, 0], [0, 1]]
        assert payload["curve"]["-+"] == [[["1/2", "0"], ["1/2", "1/2"]]]
        assert payload["curve"]["++"] == []
        assert Chart.from_json(payload) == line_chart()
        assert "signs" not in payload

    def test_signs(self):
        signed = Chart(ConvexPolygon.degree_triangle(1), signs={quadrant: {(0, 0): 1, (1, 0): -1, (0, 1): 1} for quadrant in Quadrant})
        assert signed.sign(Quadrant.PLUS_PLUS, (1, 0)) == -1
        assert signed.sign(Quadrant.PLUS_PLUS, (1, 1)) is None
        assert line_chart().sign(Quadrant.PLUS_PLUS, (0, 0)) is None
        assert Chart.from_json(signed.to_json()).signs == signed.signs

    def test_translation_multiplies_signs_by_a_monomial(self):
        signed = Chart(ConvexPolygon.degree_triangle(1), signs={quadrant: {(0, 0): 1} for quadrant in Quadrant})
        moved = signed.translated(LatticePoint(1, 0))
        assert moved.sign(Quadrant.PLUS_PLUS, (1, 0)) == 1
        assert moved.sign(Quadrant.MINUS_PLUS, (1, 0)) == -1
        assert moved.sign(Quadrant.MINUS_MINUS, (1, 0)) == -1

    def test_bad_signs(self):
        with pytest.raises(InvalidInputError):
            Chart(ConvexPolygon.degree_triangle(1), signs={Quadrant.PLUS_PLUS: {(0, 0): 0}})


class TestSideNormal:
    def test_normals(self):
        assert side_normal((LatticePoint(0, 0), LatticePoint(3, 0))) == LatticePoint(0, -1)
        assert side_normal((LatticePoint(3, 0), LatticePoint(0, 3))) == LatticePoint(1, 1)

    def test_has_side_with_normal(self):
        assert has_side_with_normal(ConvexPolygon.degree_triangle(2), LatticePoint(2, 2))
        assert not has_side_with_normal(ConvexPolygon([(0, 0), (2, 0), (0, 1)]), LatticePoint(1, 1))

from fractions import Fraction
from math import e

import numpy as np
import pytest

from patchwork.convexity import HeightFunction
from patchwork.errors import InvalidInputError
from patchwork.lattice import ConvexPolygon
from patchwork.polyval import SparsePolynomial, log_map, log_moment_map, moment_map, quasi_homothety

TRIANGLE = ConvexPolygon.degree_triangle(1)


class TestLogMap:
    def test_pair(self):
        assert log_map((1, -1)) == (0.0, 0.0)
        assert log_map((e, -e ** 2)) == pytest.approx((1.0, 2.0))

    def test_array(self):
        logs = log_map(np.array([[1.0, 1.0], [e, 1.0], [1.0, -e]]))
        assert logs.shape == (3, 2)
        assert np.allclose(logs, [[0, 0], [1, 0], [0, 1]])

    def test_axis(self):
        with pytest.raises(InvalidInputError):
            log_map((0, 1))

    def test_wrong_shape(self):
        with pytest.raises(InvalidInputError):
            log_map((1, 2, 3))


class TestQuasiHomothety:
    def test_exact_point(self):
        assert quasi_homothety((1, 1), (1, 2), 2) == (Fraction(2), Fraction(4))
        assert quasi_homothety((Fraction(1, 2), 3), (-1, 0), Fraction(1, 2)) == (Fraction(1), Fraction(3))

    def test_float_point(self):
        assert quasi_homothety((1.0, 1.0), (Fraction(1, 2), 1), 4) == pytest.approx((2.0, 4.0))

    def test_array(self):
        assert np.allclose(quasi_homothety(np.array([[1.0, 1.0], [2.0, 3.0]]), (1, 2), 2), [[2, 4], [4, 12]])

    def test_polynomial(self):
        assert quasi_homothety(SparsePolynomial.parse("x + y + 1"), (1, 2), 2) == SparsePolynomial.parse("2x + 4y + 1")

    def test_polynomial_needs_integer_weights(self):
        with pytest.raises(InvalidInputError):
            quasi_homothety(SparsePolynomial.parse("x"), (Fraction(1, 2), 0), 2)

    def test_t_must_be_positive(self):
        with pytest.raises(InvalidInputError):
            quasi_homothety((1, 1), (1, 1), 0)


class TestMomentMap:
    def test_barycenter(self):
        assert moment_map((1, -1), TRIANGLE) == pytest.approx((1 / 3, 1 / 3))

    def test_far_points_go_to_vertices(self):
        assert log_moment_map((50.0, 0.0), TRIANGLE) == pytest.approx((1.0, 0.0))
        assert log_moment_map((-50.0, -50.0), TRIANGLE) == pytest.approx((0.0, 0.0))

    def test_array(self):
        images = log_moment_map(np.zeros((4, 2)), TRIANGLE)
        assert images.shape == (4, 2)
        assert np.allclose(images, 1 / 3)

    def test_points_must_include_the_vertices(self):
        with pytest.raises(InvalidInputError):
            moment_map((1, 1), TRIANGLE, points=[(0, 0), (1, 0)])

    def test_heights_need_t(self):
        with pytest.raises(InvalidInputError):
            moment_map((1, 1), TRIANGLE, heights=HeightFunction({(0, 0): 0, (1, 0): 0, (0, 1): 0}))

    def test_base_exponent_does_not_move_the_image(self):
        rng = np.random.default_rng(7)
        points = rng.uniform(0.1, 3.0, size=(100, 2)) * rng.choice([-1, 1], size=(100, 2))
        cubic = ConvexPolygon.degree_triangle(3)
        for point in points:
            assert moment_map(point, cubic, base=(2, 1)) == pytest.approx(moment_map(point, cubic, base=(0, 3)), abs=1e-12)
        assert np.allclose(log_moment_map(np.log(np.abs(points)), cubic, base=(1, 1)), log_moment_map(np.log(np.abs(points)), cubic), atol=1e-12, rtol=0)

    def test_heights_shift_the_image(self):
        heights = HeightFunction({(0, 0): 0, (1, 0): 1, (0, 1): 1})
        assert moment_map((1, 1), TRIANGLE, heights=heights, t=1) == pytest.approx((1 / 3, 1 / 3))
        assert moment_map((1, 1), TRIANGLE, heights=heights, t=Fraction(1, 2)) == pytest.approx((1 / 4, 1 / 4))

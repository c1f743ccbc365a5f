from fractions import Fraction

import numpy as np
import pytest

from patchwork.errors import InvalidInputError
from patchwork.lattice import ConvexPolygon
from patchwork.polyval import HomogeneousPolynomial, SparsePolynomial, homogenize


class TestSparsePolynomial:
    def test_zero_coefficients_are_dropped(self):
        polynomial = SparsePolynomial({(1, 0): 1, (0, 1): 0})
        assert len(polynomial) == 1
        assert polynomial == SparsePolynomial.monomial((1, 0))
        assert not SparsePolynomial([((1, 0), 1), ((1, 0), -1)])

    def test_parse(self):
        polynomial = SparsePolynomial.parse("8x^3 - x^2 + 4y^2")
        assert polynomial.coefficient((3, 0)) == 8
        assert polynomial.coefficient((2, 0)) == -1
        assert polynomial.coefficient((0, 2)) == 4
        assert polynomial.coefficient((1, 1)) == 0

    def test_parse_expands_products(self):
        assert SparsePolynomial.parse("(x + y)^2") == SparsePolynomial.parse("x**2 + 2*x*y + y**2")
        assert SparsePolynomial.parse("x/2 + 3").coefficient((1, 0)) == Fraction(1, 2)

    @pytest.mark.parametrize("text", ["x +", "z + 1", "x^(1/2)", "x^y"])
    def test_bad_strings(self, text):
        with pytest.raises(InvalidInputError, match="bad polynomial string"):
            SparsePolynomial.parse(text)

    def test_parse_wrong_type(self):
        with pytest.raises(TypeError):
            SparsePolynomial.parse(5)

    def test_laurent(self):
        polynomial = SparsePolynomial.parse("x^-1 + y")
        assert not polynomial.is_polynomial
        assert polynomial.coefficient((-1, 0)) == 1

    def test_arithmetic(self):
        assert SparsePolynomial.parse("x + 1") * SparsePolynomial.parse("x - 1") == SparsePolynomial.parse("x^2 - 1")
        assert SparsePolynomial.parse("x + y") + SparsePolynomial.parse("1 - y") == SparsePolynomial.parse("x + 1")
        assert not SparsePolynomial.parse("x*y") - SparsePolynomial.parse("x*y")
        assert 3 * SparsePolynomial.parse("x") == SparsePolynomial.monomial((1, 0), 3)

    def test_degree(self):
        assert SparsePolynomial.parse("x^2*y + 1").degree == 3
        assert SparsePolynomial().degree == 0

    def test_newton_polygon(self):
        assert SparsePolynomial.parse("x^2 + x*y + y^2 + 1").newton_polygon() == ConvexPolygon.degree_triangle(2)
        with pytest.raises(InvalidInputError):
            SparsePolynomial().newton_polygon()

    def test_truncation(self):
        polynomial = SparsePolynomial.parse("x^2 + x*y + y^2 + 1")
        assert polynomial.truncation([(2, 0), (0, 2)]) == SparsePolynomial.parse("x^2 + x*y + y^2")
        assert polynomial.truncation([(0, 0)]) == SparsePolynomial.parse("1")
        assert polynomial.truncation(ConvexPolygon.degree_triangle(1)) == SparsePolynomial.parse("1")

    def test_evaluate(self):
        circle = SparsePolynomial.parse("x^2 + y^2 - 1")
        assert circle(Fraction(1, 2), Fraction(1, 2)) == Fraction(-1, 2)
        assert circle(1, 0) == 0
        assert circle.evaluate(0.5, 0.5) == pytest.approx(-0.5)
        assert np.allclose(circle.evaluate(np.array([0.0, 1.0]), np.array([0.0, 0.0])), [-1.0, 0.0])

    def test_laurent_on_an_axis(self):
        with pytest.raises(InvalidInputError):
            SparsePolynomial.parse("x^-1 + y").evaluate(0, 1)

    def test_to_json(self):
        assert SparsePolynomial.parse("x/2 + 3").to_json() == [[0, 0, 3], [1, 0, "1/2"]]

    def test_str(self):
        assert str(SparsePolynomial.parse("x + 1")) == "x + 1"


class TestHomogenize:
    def test_circle(self):
        form = homogenize(SparsePolynomial.parse("x^2 + y^2 - 1"), 2)
        assert form.terms == {(0, 2, 0): 1, (0, 0, 2): 1, (2, 0, 0): -1}
        assert form(1, 1, 0) == 0
        assert form.dehomogenize() == SparsePolynomial.parse("x^2 + y^2 - 1")
        assert form.top_form() == SparsePolynomial.parse("x^2 + y^2")

    def test_higher_degree(self):
        form = homogenize(SparsePolynomial.parse("x + 1"), 3)
        assert form.terms == {(2, 1, 0): 1, (3, 0, 0): 1}
        assert not form.top_form()

    def test_degree_too_small(self):
        with pytest.raises(InvalidInputError):
            homogenize(SparsePolynomial.parse("x^3"), 2)

    def test_laurent(self):
        with pytest.raises(InvalidInputError, match="Laurent"):
            homogenize(SparsePolynomial.parse("x^-1"), 2)

    def test_wrong_type(self):
        with pytest.raises(TypeError):
            homogenize("x + 1", 1)


class TestHomogeneousPolynomial:
    def test_monomial_of_the_wrong_degree(self):
        with pytest.raises(InvalidInputError):
            HomogeneousPolynomial(2, {(1, 1, 1): 1})

    def test_equality(self):
        assert HomogeneousPolynomial(1, {(1, 0, 0): 1, (0, 1, 0): 0}) == HomogeneousPolynomial(1, {(1, 0, 0): 1})

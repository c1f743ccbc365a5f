from __future__ import annotations

import logging
from fractions import Fraction
from tokenize import TokenError
from typing import Any, Iterable, Iterator, Mapping, Sequence, Tuple, Union

import numpy as np
import sympy
from sympy.parsing.sympy_parser import convert_xor, implicit_multiplication_application, parse_expr, standard_transformations

from ..errors import InvalidInputError
from ..lattice import ConvexPolygon, LatticePoint, newton_polygon, on_segment

logger = logging.getLogger(__name__)

X, Y, T = sympy.symbols("x y t")
X0, X1, X2 = sympy.symbols("x0 x1 x2")

TRANSFORMATIONS = standard_transformations + (implicit_multiplication_application, convert_xor)

Number = Union[int, Fraction]


def parse_terms(text: str, variables: Sequence[sympy.Symbol]) -> list[Tuple[Fraction, Tuple[int, ...]]]:
    """Expand a polynomial expression and return its terms as (rational coefficient, exponents) pairs over the given variables."""
    if not isinstance(text, str):
        raise TypeError(f"Expected a polynomial expression as 'str', not '{type(text).__name__}'.")

    try:
        expression = sympy.expand(parse_expr(text, local_dict={str(variable): variable for variable in variables}, transformations=TRANSFORMATIONS))
    except (SyntaxError, TokenError, TypeError, ValueError, sympy.SympifyError) as ex:
        raise InvalidInputError(f"bad polynomial string {text!r}", [str(ex)]) from ex

    if unknown := sorted(str(symbol) for symbol in expression.free_symbols if symbol not in variables):
        raise InvalidInputError(f"bad polynomial string {text!r}", [f"unknown variable {name!r}" for name in unknown])

    terms = []
    for term in sympy.Add.make_args(expression):
        coefficient, monomial = term.as_coeff_Mul()
        if not coefficient.is_Rational:
            raise InvalidInputError(f"bad polynomial string {text!r}", [f"coefficient {coefficient} is not rational"])

        exponents = dict.fromkeys(variables, 0)
        for base, power in monomial.as_powers_dict().items():
            if base == 1:
                continue
            if base not in exponents or not power.is_Integer:
                raise InvalidInputError(f"bad polynomial string {text!r}", [f"{term} is not a monomial with integer exponents"])
            exponents[base] += int(power)

        if coefficient != 0:
            terms.append((Fraction(int(coefficient.p), int(coefficient.q)), tuple(exponents[variable] for variable in variables)))

    return terms


class SparsePolynomial:
    """
    A Laurent polynomial in x and y with exact rational coefficients, stored as a mapping from exponent vectors to nonzero coefficients.
    Zero coefficients are dropped on construction, so two equal polynomials always hold equal mappings.
    """

    def __init__(self, terms: Union[Mapping[Any, Number], Iterable[Tuple[Any, Number]]] = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        self.terms: dict[LatticePoint, Fraction] = {}
        for point, coefficient in items:
            point = LatticePoint.coerce(point)
            self.terms[point] = self.terms.get(point, Fraction(0)) + Fraction(coefficient)
        self.terms = {point: coefficient for point, coefficient in self.terms.items() if coefficient}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"

    def __str__(self) -> str:
        return str(self.to_sympy())

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, SparsePolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[LatticePoint, Fraction]]:
        return iter(sorted(self.terms.items()))

    def __add__(self, other: SparsePolynomial) -> SparsePolynomial:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return type(self)([*self.terms.items(), *other.terms.items()])

    def __neg__(self) -> SparsePolynomial:
        return type(self)({point: -coefficient for point, coefficient in self.terms.items()})

    def __sub__(self, other: SparsePolynomial) -> SparsePolynomial:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union[SparsePolynomial, Number]) -> SparsePolynomial:
        if isinstance(other, SparsePolynomial):
            return type(self)([(p + q, a * b) for p, a in self.terms.items() for q, b in other.terms.items()])
        if isinstance(other, (int, Fraction)):
            return type(self)({point: coefficient * other for point, coefficient in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __call__(self, x: Any, y: Any) -> Any:
        return self.evaluate(x, y)

    @property
    def support(self) -> list[LatticePoint]:
        return sorted(self.terms)

    @property
    def degree(self) -> int:
        """Total degree, the largest i + j over the support. The zero polynomial has degree 0."""
        return max((point.i + point.j for point in self.terms), default=0)

    @property
    def is_polynomial(self) -> bool:
        """Whether every exponent is nonnegative."""
        return all(point.i >= 0 and point.j >= 0 for point in self.terms)

    def coefficient(self, point: Any) -> Fraction:
        return self.terms.get(LatticePoint.coerce(point), Fraction(0))

    def newton_polygon(self) -> ConvexPolygon:
        if not self.terms:
            raise InvalidInputError("the zero polynomial has no Newton polygon")
        return newton_polygon(self.terms)

    def truncation(self, face: Union[ConvexPolygon, Sequence[Any]]) -> SparsePolynomial:
        """
        The sum of the terms whose exponent lies in the given closed face, which may be a polygon, a side given as a pair of
        points, or a single point.
        """
        if isinstance(face, ConvexPolygon):
            return type(self)({point: coefficient for point, coefficient in self.terms.items() if face.contains(point)})

        points = [LatticePoint.coerce(point) for point in face]
        if len(points) == 1:
            return type(self)({point: coefficient for point, coefficient in self.terms.items() if point == points[0]})
        if len(points) == 2:
            return type(self)({point: coefficient for point, coefficient in self.terms.items() if on_segment(point, *points)})

        return self.truncation(newton_polygon(points))

    def evaluate(self, x: Any, y: Any) -> Any:
        """Evaluate at a point. Rational arguments give an exact Fraction, numpy arrays evaluate elementwise in floating point."""
        if isinstance(x, np.ndarray) or isinstance(y, np.ndarray):
            x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
            total = np.zeros(np.broadcast(x, y).shape)
            for point, coefficient in self.terms.items():
                total = total + float(coefficient) * x ** point.i * y ** point.j
            return total

        if isinstance(x, float) or isinstance(y, float):
            return sum(float(coefficient) * x ** point.i * y ** point.j for point, coefficient in self.terms.items())

        x, y = Fraction(x), Fraction(y)
        if (x == 0 or y == 0) and not self.is_polynomial:
            raise InvalidInputError("cannot evaluate a Laurent polynomial on a coordinate axis")
        return sum((coefficient * x ** point.i * y ** point.j for point, coefficient in self.terms.items()), Fraction(0))

    def to_sympy(self, x: sympy.Symbol = X, y: sympy.Symbol = Y) -> sympy.Expr:
        return sympy.Add(*[sympy.Rational(coefficient.numerator, coefficient.denominator) * x ** point.i * y ** point.j for point, coefficient in sorted(self.terms.items(), reverse=True)])

    def to_json(self) -> list[list[Any]]:
        return [[point.i, point.j, _rational_text(coefficient)] for point, coefficient in sorted(self.terms.items())]

    @classmethod
    def parse(cls, text: str) -> SparsePolynomial:
        """Parse an expression in x and y such as '8x^3 - x^2 + 4y^2', with '^' or '**' for powers and implicit products."""
        return cls({(i, j): coefficient for coefficient, (i, j) in parse_terms(text, (X, Y))})

    @classmethod
    def monomial(cls, point: Any, coefficient: Number = 1) -> SparsePolynomial:
        return cls({point: coefficient})


class HomogeneousPolynomial:
    """A homogeneous polynomial in x0, x1, x2 with exact rational coefficients, keyed by exponent triples."""

    def __init__(self, degree: int, terms: Union[Mapping[Tuple[int, int, int], Number], Iterable[Tuple[Tuple[int, int, int], Number]]] = ()) -> None:
        self.degree = degree
        items = terms.items() if isinstance(terms, Mapping) else terms
        self.terms: dict[Tuple[int, int, int], Fraction] = {}
        for exponents, coefficient in items:
            exponents = tuple(int(value) for value in exponents)
            if len(exponents) != 3 or sum(exponents) != degree or min(exponents) < 0:
                raise InvalidInputError(f"monomial with exponents {exponents} does not belong to a form of degree {degree}")
            self.terms[exponents] = self.terms.get(exponents, Fraction(0)) + Fraction(coefficient)
        self.terms = {exponents: coefficient for exponents, coefficient in self.terms.items() if coefficient}

    def __repr__(self) -> str:
        return f"{type(self).__name__}(degree={self.degree}, {str(self)!r})"

    def __str__(self) -> str:
        return str(self.to_sympy())

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, HomogeneousPolynomial) and (self.degree, self.terms) == (other.degree, other.terms)

    def __call__(self, x0: Any, x1: Any, x2: Any) -> Any:
        return sum((coefficient * x0 ** a * x1 ** b * x2 ** c for (a, b, c), coefficient in self.terms.items()), Fraction(0))

    def dehomogenize(self) -> SparsePolynomial:
        """Set x0 = 1."""
        return SparsePolynomial({(b, c): coefficient for (_, b, c), coefficient in self.terms.items()})

    def top_form(self) -> SparsePolynomial:
        """The restriction to the line at infinity x0 = 0, as a polynomial in x1 and x2."""
        return SparsePolynomial({(b, c): coefficient for (a, b, c), coefficient in self.terms.items() if a == 0})

    def to_sympy(self) -> sympy.Expr:
        return sympy.Add(*[sympy.Rational(coefficient.numerator, coefficient.denominator) * X0 ** a * X1 ** b * X2 ** c for (a, b, c), coefficient in sorted(self.terms.items())])


def homogenize(polynomial: SparsePolynomial, degree: int) -> HomogeneousPolynomial:
    """The form x0^m b(x1/x0, x2/x0) of degree m."""
    if not isinstance(polynomial, SparsePolynomial):
        raise TypeError(f"Expected '{SparsePolynomial.__name__}', not '{type(polynomial).__name__}'.")

    if not polynomial.is_polynomial:
        raise InvalidInputError("cannot homogenize a Laurent polynomial with negative exponents")

    if polynomial.degree > degree:
        raise InvalidInputError(f"polynomial of degree {polynomial.degree} cannot be homogenized to degree {degree}")

    return HomogeneousPolynomial(degree, {(degree - point.i - point.j, point.i, point.j): coefficient for point, coefficient in polynomial.terms.items()})


def _rational_text(value: Fraction) -> Union[int, str]:
    return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping, Tuple, Union

import sympy
from miscutils import OneOrMany

from ..convexity import ConvexPartition, HeightFunction, convexity_violations, induced_lattice_heights
from ..errors import IncompatiblePartsError, InvalidInputError, NotConvexError
from ..lattice import ConvexPolygon, LatticePoint, SignedTriangulation, newton_polygon
from .polynomial import T, X, Y, SparsePolynomial, parse_terms

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


class PatchworkFamily:
    """
    A one-parameter family b_t(x, y) = sum of a_w t^h(w) x^i y^j, stored as a mapping from exponent vectors to
    (rational coefficient, integer height) pairs.
    """

    def __init__(self, terms: Union[Mapping[Any, Tuple[Number, Number]], Iterable[Tuple[Any, Tuple[Number, Number]]]]) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        self.terms: dict[LatticePoint, Tuple[Fraction, int]] = {}
        for point, (coefficient, height) in items:
            point, coefficient, height = LatticePoint.coerce(point), Fraction(coefficient), Fraction(height)
            if height.denominator != 1:
                raise InvalidInputError(f"height {height} at {point} is not an integer")
            if point in self.terms:
                raise InvalidInputError(f"monomial {point} appears twice in the family")
            if coefficient:
                self.terms[point] = (coefficient, int(height))

        if not self.terms:
            raise InvalidInputError("a patchwork family needs at least one nonzero term")

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"

    def __str__(self) -> str:
        return str(self.to_sympy())

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, PatchworkFamily) and self.terms == other.terms

    def __iter__(self) -> Iterator[Tuple[LatticePoint, Tuple[Fraction, int]]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def support(self) -> list[LatticePoint]:
        return sorted(self.terms)

    @property
    def degree(self) -> int:
        return max(point.i + point.j for point in self.terms)

    @property
    def heights(self) -> HeightFunction:
        return HeightFunction({point: height for point, (_, height) in self.terms.items()})

    @property
    def polynomial(self) -> SparsePolynomial:
        """The member at t = 1, where every height drops out."""
        return self.substitute_t(1)

    def newton_polygon(self) -> ConvexPolygon:
        return newton_polygon(self.terms)

    def substitute_t(self, t: Union[Number, str]) -> SparsePolynomial:
        """The exact polynomial b_t for a positive rational t."""
        t = Fraction(t)
        if t <= 0:
            raise InvalidInputError(f"the parameter t must be positive, not {t}")
        return SparsePolynomial({point: coefficient * t ** height for point, (coefficient, height) in self.terms.items()})

    def shifted(self, alpha: int, beta: int, gamma: int = 0) -> PatchworkFamily:
        """
        The family whose heights are h + alpha*i + beta*j + gamma.
        Its member at t is t^gamma times b_t composed with the quasi-homothety (x, y) -> (t^alpha x, t^beta y).
        """
        return type(self)({point: (coefficient, height + alpha * point.i + beta * point.j + gamma) for point, (coefficient, height) in self.terms.items()})

    def to_sympy(self) -> sympy.Expr:
        return sympy.Add(*[sympy.Rational(coefficient.numerator, coefficient.denominator) * T ** height * X ** point.i * Y ** point.j for point, (coefficient, height) in sorted(self.terms.items(), reverse=True)])

    def to_json(self) -> list[list[Any]]:
        return [[point.i, point.j, coefficient.numerator if coefficient.denominator == 1 else f"{coefficient.numerator}/{coefficient.denominator}", height] for point, (coefficient, height) in sorted(self.terms.items())]

    @classmethod
    def parse(cls, text: str) -> PatchworkFamily:
        """Parse an expression in x, y and t such as '8x^3 - x^2 + 4y^2 + t^2'. Each monomial in x and y must carry a single power of t."""
        terms: dict[LatticePoint, Tuple[Fraction, int]] = {}
        for coefficient, (i, j, height) in parse_terms(text, (X, Y, T)):
            point = LatticePoint(i, j)
            if point in terms:
                raise InvalidInputError(f"bad family string {text!r}", [f"monomial {point} carries more than one power of t"])
            terms[point] = (coefficient, height)
        return cls(terms)

    @classmethod
    def from_json(cls, payload: Iterable[Any]) -> PatchworkFamily:
        return cls({(i, j): (Fraction(coefficient), height) for i, j, coefficient, height in payload})


def patchwork_family(parts: Union[SparsePolynomial, Iterable[SparsePolynomial]], heights: HeightFunction) -> PatchworkFamily:
    """
    Patchwork polynomials whose Newton polygons subdivide a convex polygon, by heights given at least on the vertices of that subdivision.
    Parts must agree on every monomial whose exponent lies in two Newton polygons. Monomials off the vertices take the height of the affine
    piece of their cell, which must be an integer.
    """
    parts = OneOrMany(of_type=SparsePolynomial).to_list(parts)
    if not parts or any(not part for part in parts):
        raise InvalidInputError("patchworking needs at least one part and no zero parts")

    polygons = [part.newton_polygon() for part in parts]
    partition = ConvexPartition(newton_polygon(point for part in parts for point in part.terms), polygons)
    if violations := partition.violations():
        raise InvalidInputError("the Newton polygons of the parts do not subdivide their hull", violations)

    mismatches = []
    for first, (a, box_a) in enumerate(zip(parts, polygons)):
        for b, box_b in zip(parts[first + 1:], polygons[first + 1:]):
            for point in sorted(set(a.terms) | set(b.terms)):
                if box_a.contains(point) and box_b.contains(point) and a.coefficient(point) != b.coefficient(point):
                    mismatches.append(f"parts {a} and {b} disagree at {point}: {a.coefficient(point)} != {b.coefficient(point)}")
    if mismatches:
        raise IncompatiblePartsError(violations=mismatches)

    if violations := convexity_violations(partition, heights):
        raise NotConvexError("heights do not convexify the subdivision", violations)

    induced = induced_lattice_heights(partition, heights)
    terms: dict[LatticePoint, Tuple[Fraction, Fraction]] = {}
    for part in parts:
        for point, coefficient in part.terms.items():
            if Fraction(induced[point]).denominator != 1:
                raise NotConvexError("heights do not convexify the subdivision", [f"induced height at lattice point {point} is not an integer"])
            terms[point] = (coefficient, induced[point])

    family = PatchworkFamily(terms)
    logger.info(f"patchworked {len(parts)} parts into {family}")
    return family


def family_from_triangulation(triangulation: SignedTriangulation, heights: HeightFunction) -> PatchworkFamily:
    """The family sum of sign(w) t^h(w) x^i y^j over the vertices of a convex triangulation."""
    if violations := convexity_violations(triangulation, heights):
        raise NotConvexError("heights do not convexify the triangulation", violations)

    return PatchworkFamily({vertex: (triangulation.sign(vertex), heights[vertex]) for vertex in triangulation.vertices})

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Tuple

import sympy

from ..errors import ChartError, InvalidInputError
from ..lattice import ConvexPolygon, LatticePoint, Quadrant, midpoint, orientation
from ..polyval import SparsePolynomial
from .chart import Chart

logger = logging.getLogger(__name__)

Z = sympy.Symbol("z")


def trinomial_chart(polynomial: SparsePolynomial) -> Chart:
    """
    The chart of a trinomial whose Newton polygon is a triangle. In each quadrant the copy of the triangle carries the midline separating the
    vertex whose monomial has the odd sign there, or nothing when all three monomials share a sign.
    """
    _check_type(polynomial)
    if len(polynomial) != 3:
        raise ChartError(f"a trinomial chart needs exactly three monomials, not {len(polynomial)}")

    (a, ca), (b, cb), (c, cc) = sorted(polynomial.terms.items())
    if not orientation(a, b, c):
        raise ChartError("use quasihomogeneous_chart", [f"the exponents {a}, {b}, {c} are collinear"])

    curves, vertex_signs = {}, {}
    for quadrant in Quadrant:
        signs = [_monomial_sign(coefficient, point, quadrant) for point, coefficient in ((a, ca), (b, cb), (c, cc))]
        vertex_signs[quadrant] = dict(zip((a, b, c), signs))
        if len(set(signs)) == 1:
            continue

        odd = next(index for index in range(3) if signs.count(signs[index]) == 1)
        apex, others = (a, b, c)[odd], [point for index, point in enumerate((a, b, c)) if index != odd]
        curves[quadrant] = [(midpoint(apex, others[0]), midpoint(apex, others[1]))]

    return Chart(polynomial.newton_polygon(), curves, vertex_signs)


def quasihomogeneous_chart(polynomial: SparsePolynomial) -> Chart:
    """
    The chart of a polynomial whose Newton polygon is a segment: a set of marked points on each copy of the segment, one for every
    quasiline branch of the curve in that quadrant, ordered along the segment by the size of the root they come from.
    """
    _check_type(polynomial)
    polygon = polynomial.newton_polygon()
    if polygon.is_point:
        return Chart(polygon, signs=_vertex_signs(polynomial, polygon))

    if not polygon.is_segment:
        raise ChartError("the Newton polygon is not a segment, use trinomial_chart or patchwork_charts")

    start, direction, roots = quasihomogeneous_roots(polynomial)
    end = polygon.vertices[1] if polygon.vertices[0] == start else polygon.vertices[0]
    curves = {}
    for quadrant in Quadrant:
        eps, delta = quadrant.signs
        positive = eps ** (direction.i % 2) * delta ** (direction.j % 2) > 0
        branches = [root for root in roots if bool(root > 0) == positive]
        fractions = [Fraction(position, len(branches) + 1) for position in range(1, len(branches) + 1)]
        curves[quadrant] = [((start.i + fraction * (end.i - start.i), start.j + fraction * (end.j - start.j)),) * 2 for fraction in fractions]

    chart = Chart(polygon, curves, _vertex_signs(polynomial, polygon))
    logger.debug(f"quasi-homogeneous chart with {len(roots)} real roots: {chart}")
    return chart


def quasihomogeneous_roots(polynomial: SparsePolynomial) -> Tuple[LatticePoint, LatticePoint, list[sympy.Expr]]:
    """
    Write the polynomial as x^p y^q f(x^a y^b) for the primitive direction (a, b) of its segment and return the starting exponent, the direction
    and the real roots of f, which are simple.
    """
    polygon = polynomial.newton_polygon()
    start = min(polygon.vertices)
    end = max(polygon.vertices)
    direction = (end - start).primitive()

    coefficients = {}
    for point, coefficient in polynomial.terms.items():
        offset = point - start
        power = offset.i // direction.i if direction.i else offset.j // direction.j
        coefficients[power] = sympy.Rational(coefficient.numerator, coefficient.denominator)

    reduced = sympy.Poly(sum(coefficient * Z ** power for power, coefficient in coefficients.items()), Z)
    if sympy.degree(sympy.gcd(reduced, reduced.diff(Z)), Z) > 0:
        raise ChartError("peripherally degenerate", [f"{reduced.as_expr()} has a repeated root"])

    return start, direction, sorted((root for root in reduced.real_roots() if root != 0), key=lambda root: abs(float(root)))


def chart_of_polynomial(polynomial: SparsePolynomial) -> Chart:
    """Dispatch to the constructor that applies: quasi-homogeneous polynomials and trinomials have charts built from scratch."""
    _check_type(polynomial)
    if polynomial.newton_polygon().doubled_area == 0:
        return quasihomogeneous_chart(polynomial)
    if len(polynomial) == 3:
        return trinomial_chart(polynomial)
    raise ChartError(f"charts are built only for trinomials and quasi-homogeneous polynomials, {polynomial} has {len(polynomial)} monomials", ["patchwork the charts of its pieces instead"])


def is_completely_nondegenerate(polynomial: SparsePolynomial) -> bool:
    """Whether the polynomial and all its truncations to sides define nonsingular curves in the torus. Decided for binomials, trinomials and quasi-homogeneous polynomials."""
    _check_type(polynomial)
    if not polynomial:
        raise InvalidInputError("the zero polynomial defines no curve")

    polygon = polynomial.newton_polygon()
    if polygon.doubled_area and len(polynomial) != 3:
        raise InvalidInputError(f"complete nondegeneracy is decided only for binomials, trinomials and quasi-homogeneous polynomials, not {polynomial}")

    if polygon.doubled_area:
        return is_peripherally_nondegenerate(polynomial)

    try:
        quasihomogeneous_roots(polynomial) if not polygon.is_point else None
    except ChartError:
        return False
    return True


def is_peripherally_nondegenerate(polynomial: SparsePolynomial) -> bool:
    """Whether every truncation of the polynomial to a side of its Newton polygon has only simple roots."""
    _check_type(polynomial)
    polygon = polynomial.newton_polygon()
    for side in polygon.sides:
        truncation = polynomial.truncation(side)
        if len(truncation) < 2:
            continue
        try:
            quasihomogeneous_roots(truncation)
        except ChartError:
            return False
    return True


def _monomial_sign(coefficient: Fraction, point: LatticePoint, quadrant: Quadrant) -> int:
    eps, delta = quadrant.signs
    return (1 if coefficient > 0 else -1) * eps ** (point.i % 2) * delta ** (point.j % 2)


def _vertex_signs(polynomial: SparsePolynomial, polygon: ConvexPolygon) -> dict[Quadrant, dict[LatticePoint, int]]:
    return {quadrant: {vertex: _monomial_sign(polynomial.terms[vertex], vertex, quadrant) for vertex in polygon.vertices} for quadrant in Quadrant}


def _check_type(polynomial: SparsePolynomial) -> None:
    if not isinstance(polynomial, SparsePolynomial):
        raise TypeError(f"Expected '{SparsePolynomial.__name__}', not '{type(polynomial).__name__}'.")

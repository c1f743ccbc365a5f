from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Tuple

from subtypes import Enum

from ..errors import InvalidInputError, SignRuleError
from ..lattice import ConvexPolygon, RationalPoint, midpoint
from .isotopy import IsotopyCode, classify_curve
from .symmetric import SymmetricComplex

logger = logging.getLogger(__name__)

Segment = Tuple[RationalPoint, RationalPoint]


class Enums:
    class Carrier(Enum):
        SQUARE = "square"
        PROJECTIVE_PLANE = "projective-plane"
        AFFINE_PLANE = "affine-plane"


@dataclass(frozen=True)
class PLCurve:
    """A piecewise-linear curve as an unordered set of segments with exact rational endpoints."""
    segments: Tuple[Segment, ...] = ()

    def __post_init__(self) -> None:
        normalized = tuple(sorted(tuple(sorted(((Fraction(p[0]), Fraction(p[1])), (Fraction(q[0]), Fraction(q[1]))))) for p, q in self.segments))
        object.__setattr__(self, "segments", normalized)

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    @property
    def endpoints(self) -> dict[RationalPoint, int]:
        """Number of segments incident to each endpoint."""
        counts: dict[RationalPoint, int] = {}
        for segment in self.segments:
            for point in segment:
                counts[point] = counts.get(point, 0) + 1
        return counts

    def swapped(self) -> PLCurve:
        return PLCurve(tuple(((p[1], p[0]), (q[1], q[0])) for p, q in self.segments))

    def to_json(self) -> list[list[list[str]]]:
        return [[[str(value) for value in point] for point in segment] for segment in self.segments]


@dataclass(frozen=True)
class ProjectiveComplex:
    """
    The square of a symmetric complex with antipodal points of its boundary glued together, and the curve it carries.
    'identification' pairs each boundary endpoint of the curve with its antipode.
    """
    carrier: Tuple[RationalPoint, ...]
    curve: PLCurve
    identification: dict[RationalPoint, RationalPoint] = field(default_factory=dict)
    tag: Enums.Carrier = Enums.Carrier.PROJECTIVE_PLANE

    @property
    def crossings(self) -> int:
        """Number of times the curve passes through the glued boundary."""
        return len(self.identification) // 2

    def isotopy_code(self) -> IsotopyCode:
        return isotopy_code(self)


def midline_curve(complex_: SymmetricComplex) -> PLCurve:
    """One midline for each triangle whose vertex signs are not all equal, joining the midpoints of its two sign-changing edges."""
    segments = []
    for triangle in complex_.triangles():
        signs = [complex_.sign(vertex) for vertex in triangle]
        if len(set(signs)) == 1:
            continue

        odd = next(index for index in range(3) if signs.count(signs[index]) == 1)
        apex, others = triangle[odd], [vertex for index, vertex in enumerate(triangle) if index != odd]
        segments.append((midpoint(apex, others[0]), midpoint(apex, others[1])))

    curve = PLCurve(tuple(segments))
    logger.debug(f"extracted {len(curve)} midlines")
    return curve


def projective_quotient(complex_: SymmetricComplex, curve: PLCurve) -> ProjectiveComplex:
    domain = complex_.base.domain
    degree = max(vertex.i for vertex in domain)
    if domain != ConvexPolygon.degree_triangle(degree):
        raise InvalidInputError(f"the projective quotient needs the triangle of a degree, not {domain}")

    carrier = tuple(point.as_rational() for point in complex_.carrier)

    def on_boundary(point: RationalPoint) -> bool:
        return abs(point[0]) + abs(point[1]) == degree

    endpoints = curve.endpoints
    identification, unmatched = {}, []
    for point in endpoints:
        if on_boundary(point):
            antipode = (-point[0], -point[1])
            if antipode in endpoints:
                identification[point] = antipode
            else:
                unmatched.append(f"boundary endpoint ({point[0]}, {point[1]}) has no antipodal partner")

    if unmatched:
        raise SignRuleError("sign rule violated", unmatched)

    return ProjectiveComplex(carrier=carrier, curve=curve, identification=identification)


def isotopy_code(projective: ProjectiveComplex) -> IsotopyCode:
    return classify_curve(projective.carrier, projective.curve.segments)


def curve_from_json(payload: Iterable[Any]) -> PLCurve:
    return PLCurve(tuple(((Fraction(p[0]), Fraction(p[1])), (Fraction(q[0]), Fraction(q[1]))) for p, q in payload))

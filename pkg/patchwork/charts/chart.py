from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, Iterator, Mapping, Optional, Tuple

from ..errors import InvalidInputError
from ..lattice import ConvexPolygon, LatticePoint, Quadrant, RationalPoint, on_segment
from ..tcurve import IsotopyCode, PLCurve, classify_curve
from ..tcurve.curve import Enums, Segment

logger = logging.getLogger(__name__)


class Chart:
    """
    A chart of a polynomial: the four reflected copies of a lattice polygon and the curve drawn in them.

    The curve of each copy is stored in the coordinates of the polygon itself, before reflection into its quadrant, so that cut-and-insert
    operations on the polygon apply to every copy alike. Zero-length segments are the marked points of a chart of a quasi-homogeneous polynomial.

    Charts built from polynomials also know the sign of the region at each vertex of every copy. Charts read from bare drawings do not,
    and 'signs' is None for them.
    """

    def __init__(self, polygon: ConvexPolygon, curves: Mapping[Quadrant, Iterable[Segment]] = None, signs: Mapping[Quadrant, Mapping[Any, int]] = None) -> None:
        if not isinstance(polygon, ConvexPolygon):
            raise TypeError(f"Expected '{ConvexPolygon.__name__}', not '{type(polygon).__name__}'.")

        self.polygon = polygon
        self.curves: dict[Quadrant, PLCurve] = {quadrant: PLCurve(tuple((curves or {}).get(quadrant, ()))) for quadrant in Quadrant}

        for quadrant, curve in self.curves.items():
            if outside := [point for segment in curve for point in segment if not polygon.contains(point)]:
                raise InvalidInputError(f"the curve of quadrant {quadrant.label} leaves the polygon", [f"({x}, {y})" for x, y in outside[:10]])

        self.signs: Optional[dict[Quadrant, dict[LatticePoint, int]]] = None
        if signs is not None:
            self.signs = {quadrant: {LatticePoint.coerce(point): sign for point, sign in signs.get(quadrant, {}).items()} for quadrant in Quadrant}
            if bad := [sign for values in self.signs.values() for sign in values.values() if sign not in (-1, 1)]:
                raise InvalidInputError("vertex signs are -1 or 1", [repr(sign) for sign in bad[:10]])

    def __repr__(self) -> str:
        return f"{type(self).__name__}(polygon={self.polygon}, segments={sum(len(curve) for curve in self.curves.values())})"

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Chart):
            return NotImplemented
        mine, theirs = self.normalized(), other.normalized()
        return mine.polygon == theirs.polygon and mine.curves == theirs.curves

    def __iter__(self) -> Iterator[Tuple[Quadrant, PLCurve]]:
        return iter(self.curves.items())

    @property
    def is_empty(self) -> bool:
        return not any(len(curve) for curve in self.curves.values())

    def segments(self, quadrant: Quadrant) -> Tuple[Segment, ...]:
        return self.curves[quadrant].segments

    def marked_points(self, quadrant: Quadrant) -> list[RationalPoint]:
        return [p for p, q in self.curves[quadrant] if p == q]

    def drawn(self) -> list[Segment]:
        """Every segment in the plane, reflected into the copy of its quadrant."""
        return [(quadrant.reflect(p), quadrant.reflect(q)) for quadrant, curve in self.curves.items() for p, q in curve]

    def trace(self, side: Tuple[Any, Any], quadrant: Quadrant) -> set[RationalPoint]:
        """The points of the curve of one copy lying on a boundary segment of the polygon."""
        return {point for segment in self.curves[quadrant] for point in segment if on_segment(point, *side)}

    def sign(self, quadrant: Quadrant, vertex: Any) -> Optional[int]:
        """The sign of the region at a vertex of the copy in the given quadrant, if the chart records it."""
        if self.signs is None:
            return None
        return self.signs[quadrant].get(LatticePoint.coerce(vertex))

    def translated(self, offset: LatticePoint) -> Chart:
        di, dj = offset
        curves = {quadrant: [((p[0] + di, p[1] + dj), (q[0] + di, q[1] + dj)) for p, q in curve] for quadrant, curve in self.curves.items()}
        signs = None
        if self.signs is not None:
            # moving the polygon multiplies the polynomial by a monomial, which flips signs by its parity in each quadrant
            signs = {quadrant: {point + offset: sign * quadrant.signs[0] ** (di % 2) * quadrant.signs[1] ** (dj % 2) for point, sign in values.items()} for quadrant, values in self.signs.items()}
        return type(self)(self.polygon.translated(offset), curves, signs)

    def normalized(self) -> Chart:
        """The same chart moved by a lattice translation until its polygon touches both coordinate axes, which is the chart of a monomial multiple."""
        offset = LatticePoint(-min(vertex.i for vertex in self.polygon), -min(vertex.j for vertex in self.polygon))
        return self if (offset.i, offset.j) == (0, 0) else self.translated(offset)

    def to_json(self) -> dict[str, Any]:
        payload = {
            "polygon": [[vertex.i, vertex.j] for vertex in self.polygon],
            "curve": {quadrant.label: curve.to_json() for quadrant, curve in self.curves.items()},
        }
        if self.signs is not None:
            payload["signs"] = {quadrant.label: [[point.i, point.j, sign] for point, sign in sorted(values.items())] for quadrant, values in self.signs.items()}
        return payload

    @classmethod
    def from_json(cls, payload: Mapping[str, Any]) -> Chart:
        curves = {}
        for quadrant in Quadrant:
            curves[quadrant] = [((Fraction(p[0]), Fraction(p[1])), (Fraction(q[0]), Fraction(q[1]))) for p, q in payload.get("curve", {}).get(quadrant.label, [])]

        signs = None
        if "signs" in payload:
            signs = {quadrant: {(i, j): sign for i, j, sign in payload["signs"].get(quadrant.label, [])} for quadrant in Quadrant}
        return cls(ConvexPolygon(payload["polygon"]), curves, signs)


@dataclass(frozen=True)
class GluedComplex:
    """
    The space obtained from a chart by gluing and contracting sides of its copies, with the curve it carries, drawn in the plane.

    For the projective plane 'boundary' is a centrally symmetric polygon whose boundary points are identified with their antipodes.
    For the affine plane it is the outline of the drawing, and 'ends' lists the points where the curve leaves through a removed side.
    """
    tag: Enums.Carrier
    cells: Tuple[Tuple[RationalPoint, ...], ...]
    curve: PLCurve
    boundary: Tuple[RationalPoint, ...]
    ends: Tuple[RationalPoint, ...] = ()
    contracted: Tuple[str, ...] = ()
    glued: Tuple[str, ...] = ()
    removed: Tuple[str, ...] = ()

    def __repr__(self) -> str:
        return f"{type(self).__name__}(tag={self.tag.value!r}, cells={len(self.cells)}, segments={len(self.curve)})"

    @cached_property
    def components(self) -> int:
        if self.tag == Enums.Carrier.PROJECTIVE_PLANE:
            return self.code.components
        return len(self._pieces())

    @property
    def unbounded_branches(self) -> int:
        return len(self.ends)

    @cached_property
    def closed_components(self) -> int:
        """Components that never reach a removed side."""
        ends = set(self.ends)
        return sum(1 for piece in self._pieces() if not piece & ends)

    @cached_property
    def code(self) -> Optional[IsotopyCode]:
        if self.tag != Enums.Carrier.PROJECTIVE_PLANE:
            return None
        return classify_curve(self.boundary, self.curve.segments)

    def to_json(self) -> dict[str, Any]:
        payload = {
            "carrier": self.tag.value,
            "components": self.components,
            "cells": [[[str(value) for value in point] for point in cell] for cell in self.cells],
            "curve": self.curve.to_json(),
            "boundary": [[str(value) for value in point] for point in self.boundary],
            "contracted": list(self.contracted),
            "glued": list(self.glued),
            "removed": list(self.removed),
        }
        if self.tag == Enums.Carrier.PROJECTIVE_PLANE:
            payload["isotopy_code"] = self.code.to_json()
        else:
            payload.update(unbounded_branches=self.unbounded_branches, closed_components=self.closed_components)
        return payload

    def _pieces(self) -> list[set[RationalPoint]]:
        parent: dict[RationalPoint, RationalPoint] = {}

        def find(item: RationalPoint) -> RationalPoint:
            parent.setdefault(item, item)
            while parent[item] != item:
                parent[item] = parent[parent[item]]
                item = parent[item]
            return item

        for p, q in self.curve:
            parent[find(p)] = find(q)

        pieces: dict[RationalPoint, set[RationalPoint]] = {}
        for point in list(parent):
            pieces.setdefault(find(point), set()).add(point)
        return list(pieces.values())


def side_normal(side: Tuple[LatticePoint, LatticePoint]) -> LatticePoint:
    """The primitive outward normal of a side of a counterclockwise polygon."""
    p, q = side
    direction = q - p
    return LatticePoint(direction.j, -direction.i).primitive()


def has_side_with_normal(polygon: ConvexPolygon, normal: LatticePoint) -> bool:
    return any(side_normal(side) == normal.primitive() for side in polygon.sides)


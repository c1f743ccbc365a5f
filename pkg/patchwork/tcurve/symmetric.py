from __future__ import annotations

import logging
from typing import Any, Iterator, Tuple

from ..errors import InvalidInputError, SignRuleError
from ..lattice import ConvexPolygon, LatticePoint, Quadrant, SignedTriangulation, newton_polygon, validate_triangulation

logger = logging.getLogger(__name__)

Triangle = Tuple[LatticePoint, LatticePoint, LatticePoint]


def extended_sign(sign: int, point: LatticePoint, quadrant: Quadrant) -> int:
    """Sign carried by the reflection of a base vertex into the given quadrant: it changes exactly when the reflection moves it an odd distance."""
    eps, delta = quadrant.signs
    return sign * (eps ** (point.i % 2)) * (delta ** (point.j % 2))


class SymmetricComplex:
    """
    The triangulation of the union of the four reflected copies of a signed triangulation lying in the positive quadrant.
    'copies' maps each quadrant to its reflected triangulation, and 'signs' holds the extended sign of every vertex with signed coordinates.
    """

    def __init__(self, base: SignedTriangulation) -> None:
        self.base = base
        self.copies: dict[Quadrant, SignedTriangulation] = {}
        self.signs: dict[LatticePoint, int] = {}

        for quadrant in Quadrant:
            vertices = [quadrant.reflect(vertex) for vertex in base.vertices]
            signs = [extended_sign(base.sign(vertex), vertex, quadrant) for vertex in base.vertices]

            for image, sign in zip(vertices, signs):
                if self.signs.setdefault(image, sign) != sign:
                    raise SignRuleError("sign rule violated", [f"copies disagree on the sign of {image}"])

            self.copies[quadrant] = SignedTriangulation(base.domain.reflected(quadrant), vertices, base.triangles, signs)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(base={self.base!r})"

    @property
    def carrier(self) -> ConvexPolygon:
        """The polygon covered by the four copies."""
        return newton_polygon(self.signs)

    def sign(self, point: Any) -> int:
        return self.signs[LatticePoint.coerce(point)]

    def triangles(self) -> Iterator[Triangle]:
        for copy in self.copies.values():
            for triangle in copy.triangles:
                yield copy.triangle_points(triangle)

    def check(self) -> None:
        """Re-derive every extended sign from the base and raise if one disagrees."""
        for quadrant in Quadrant:
            for vertex in self.base.vertices:
                image = quadrant.reflect(vertex)
                if self.signs[image] * self.base.sign(vertex) * extended_sign(1, vertex, quadrant) != 1:
                    raise SignRuleError("sign rule violated", [f"vertex {image} breaks the extension rule"])


def symmetrize(triangulation: SignedTriangulation) -> SymmetricComplex:
    report = validate_triangulation(triangulation)
    if not report:
        raise InvalidInputError("invalid triangulation", report.violations)

    if outside := [vertex for vertex in triangulation.domain if vertex.i < 0 or vertex.j < 0]:
        raise InvalidInputError("domain leaves the positive quadrant", [f"vertex {vertex} has a negative coordinate" for vertex in outside])

    complex_ = SymmetricComplex(triangulation)
    logger.debug(f"symmetrized {len(triangulation.triangles)} triangles into {4 * len(triangulation.triangles)}")
    return complex_


def swapped(triangulation: SignedTriangulation) -> SignedTriangulation:
    """The image of a signed triangulation under the exchange of coordinates (i, j) -> (j, i)."""
    def swap(point: LatticePoint) -> LatticePoint:
        return LatticePoint(point.j, point.i)

    return SignedTriangulation(
        newton_polygon(swap(vertex) for vertex in triangulation.domain),
        [swap(vertex) for vertex in triangulation.vertices],
        triangulation.triangles,
        {swap(point): sign for point, sign in triangulation.signs.items()},
    )

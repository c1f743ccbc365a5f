from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable

from ..errors import InvalidInputError
from ..lattice import LatticePoint, newton_polygon, orientation
from .heights import ConvexPartition, HeightFunction

logger = logging.getLogger(__name__)


def regular_subdivision(points: Iterable[Any], heights: HeightFunction) -> ConvexPartition:
    """
    The domains of linearity of the lower convex hull of the lifted points, computed exactly by testing the plane through every affinely independent triple.
    Each supporting plane contributes the hull of the points it touches as one cell.
    """
    points = sorted({LatticePoint.coerce(point) for point in points})
    lifted = [(point, Fraction(heights[point])) for point in points]

    if len(points) < 3 or all(orientation(points[0], points[1], point) == 0 for point in points[2:]):
        raise InvalidInputError("points are collinear and do not span the plane")

    faces: set[frozenset[LatticePoint]] = set()
    for triple in combinations(lifted, 3):
        (a, za), (b, zb), (c, zc) = triple
        det = orientation(a, b, c)
        if not det:
            continue

        alpha = Fraction((zb - za) * (c.j - a.j) - (zc - za) * (b.j - a.j), det)
        beta = Fraction((b.i - a.i) * (zc - za) - (c.i - a.i) * (zb - za), det)

        tight = []
        for point, height in lifted:
            plane = za + alpha * (point.i - a.i) + beta * (point.j - a.j)
            if height < plane:
                break
            if height == plane:
                tight.append(point)
        else:
            faces.add(frozenset(tight))

    cells = sorted((newton_polygon(face) for face in faces), key=lambda cell: cell.vertices)
    logger.debug(f"lower hull of {len(points)} lifted points has {len(cells)} facets")
    return ConvexPartition(newton_polygon(points), cells)


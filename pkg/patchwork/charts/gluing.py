from __future__ import annotations

import logging
from typing import Iterable, Tuple, Union

from miscutils import OneOrMany

from ..convexity import ConvexPartition
from ..errors import ChartError, InvalidInputError
from ..lattice import LatticePoint, Quadrant, SignedTriangulation, newton_polygon, orientation
from ..polyval import SparsePolynomial
from .chart import Chart
from .constructors import trinomial_chart

logger = logging.getLogger(__name__)


def patchwork_charts(charts: Union[Chart, Iterable[Chart]]) -> Chart:
    """
    Glue charts whose polygons tile a convex polygon into the chart of that polygon. Neighbouring charts must meet every shared boundary
    segment in the same points, quadrant by quadrant.
    """
    charts = OneOrMany(of_type=Chart).to_list(charts if isinstance(charts, Chart) else list(charts))
    if not charts:
        raise InvalidInputError("nothing to patchwork")

    if len(charts) == 1:
        return charts[0]

    domain = newton_polygon([vertex for chart in charts for vertex in chart.polygon])
    partition = ConvexPartition(domain, [chart.polygon for chart in charts])
    if violations := partition.violations():
        raise ChartError("the charts do not tile a convex polygon with disjoint interiors", violations)

    mismatches = []
    for first, second, side in partition.adjacent_pairs():
        overlap = _overlap(side, charts[second].polygon.sides)
        for quadrant in Quadrant:
            mine, theirs = charts[first].trace(overlap, quadrant), charts[second].trace(overlap, quadrant)
            if mine != theirs:
                mismatches.append(f"charts {first} and {second} meet {overlap[0]}-{overlap[1]} in quadrant {quadrant.label} at {sorted(mine)} and {sorted(theirs)}")

    if mismatches:
        raise ChartError("incompatible charts", mismatches)

    signs = None
    if all(chart.signs is not None for chart in charts):
        signs = {quadrant: {} for quadrant in Quadrant}
        for chart in charts:
            for quadrant, values in chart.signs.items():
                for point, sign in values.items():
                    if point in domain.vertices:
                        signs[quadrant].setdefault(point, sign)

    result = Chart(domain, {quadrant: [segment for chart in charts for segment in chart.segments(quadrant)] for quadrant in Quadrant}, signs)
    logger.info(f"patchworked {len(charts)} charts into {result}")
    return result


def chart_of_triangulation(triangulation: SignedTriangulation) -> Chart:
    """The patchwork of the trinomial charts of the triangles, each trinomial carrying the signs of its vertices as coefficients."""
    if not isinstance(triangulation, SignedTriangulation):
        raise TypeError(f"Expected '{SignedTriangulation.__name__}', not '{type(triangulation).__name__}'.")

    charts = []
    for triangle in triangulation.triangles:
        points = triangulation.triangle_points(triangle)
        charts.append(trinomial_chart(SparsePolynomial({point: triangulation.sign(point) for point in points})))

    return patchwork_charts(charts)


def _overlap(side: Tuple[LatticePoint, LatticePoint], others: Iterable[Tuple[LatticePoint, LatticePoint]]) -> Tuple[LatticePoint, LatticePoint]:
    """The common part of a side with the collinear side of a neighbouring polygon."""
    p, q = side
    direction = q - p
    for r, s in others:
        if orientation(p, q, r) or orientation(p, q, s):
            continue

        length = direction.dot(direction)
        low, high = sorted(((r - p).dot(direction), (s - p).dot(direction)))
        start, stop = max(low, 0), min(high, length)
        if stop > start:
            return tuple(sorted((r, s, p, q), key=lambda point: (point - p).dot(direction))[1:3])

    raise ChartError(f"no common segment along the side {p}-{q}")

from __future__ import annotations

import logging
from fractions import Fraction
from functools import cmp_to_key
from typing import Any, Sequence, Tuple, Union

from ..errors import ChartError, InvalidInputError, SingularCurveError
from ..lattice import ConvexPolygon, LatticePoint, Quadrant, RationalPoint, newton_polygon, on_segment, orientation
from ..tcurve import PLCurve
from ..tcurve.curve import Enums, Segment
from .chart import Chart, GluedComplex, has_side_with_normal, side_normal

logger = logging.getLogger(__name__)

Side = Tuple[LatticePoint, LatticePoint]

BOTTOM, LEFT, DIAGONAL = LatticePoint(0, -1), LatticePoint(-1, 0), LatticePoint(1, 1)
ORIGIN: RationalPoint = (Fraction(0), Fraction(0))


def adjoin_side(chart: Chart, normal: Union[LatticePoint, Sequence[int]]) -> Chart:
    """
    Cut the chart along the chord joining its extreme vertices in the direction of the normal and insert a parallelogram of unit width,
    so that the polygon gains a side with that outward normal. The curve is cut with the polygon: pieces beyond the chord move with it and
    every point where the curve crossed the chord is joined to its translate across the inserted strip.
    Charts that already have such a side are returned unchanged.
    """
    if not isinstance(chart, Chart):
        raise TypeError(f"Expected '{Chart.__name__}', not '{type(chart).__name__}'.")

    normal = LatticePoint.coerce(normal)
    if (normal.i, normal.j) == (0, 0):
        raise InvalidInputError("cannot adjoin a side with the zero normal")

    normal = normal.primitive()
    if has_side_with_normal(chart.polygon, normal):
        return chart

    shift = LatticePoint(normal.j, -normal.i)
    vertices = chart.polygon.vertices
    if chart.polygon.is_point:
        signs = None if chart.signs is None else {quadrant: {point + offset: sign for point, sign in values.items() for offset in (LatticePoint(0, 0), shift)} for quadrant, values in chart.signs.items()}
        return Chart(ConvexPolygon([vertices[0], vertices[0] + shift]), signs=signs).normalized()

    top = max(vertices, key=normal.dot)
    bottom = min(vertices, key=lambda vertex: (normal.dot(vertex), shift.dot(vertex)))
    orientation_sign = 1 if (bottom - top).cross(shift) > 0 else -1

    def side_of(point: Any) -> Any:
        return orientation_sign * orientation(top, bottom, point)

    lower = [vertex for vertex in vertices if side_of(vertex) <= 0]
    upper = [vertex + shift for vertex in vertices if side_of(vertex) >= 0]
    polygon = newton_polygon(lower + upper)

    curves = {quadrant: _cut_and_shift(chart.segments(quadrant), side_of, shift) for quadrant in Quadrant}
    signs = None
    if chart.signs is not None:
        signs = {quadrant: {**{point: sign for point, sign in values.items() if side_of(point) <= 0}, **{point + shift: sign for point, sign in values.items() if side_of(point) >= 0}} for quadrant, values in chart.signs.items()}

    result = Chart(polygon, curves, signs).normalized()
    logger.info(f"adjoined a side with normal ({normal.i}, {normal.j}): {chart.polygon} -> {result.polygon}")
    return result


def _cut_and_shift(segments: Sequence[Segment], side_of: Any, shift: LatticePoint) -> list[Segment]:
    def moved(point: RationalPoint) -> RationalPoint:
        return (point[0] + shift.i, point[1] + shift.j)

    result: list[Segment] = []
    lower_ends: dict[RationalPoint, int] = {}
    upper_ends: dict[RationalPoint, int] = {}

    for a, b in segments:
        sa, sb = side_of(a), side_of(b)
        if a == b:
            result.append((a, moved(a)) if sa == 0 else ((moved(a), moved(a)) if sa > 0 else (a, a)))
        elif sa == 0 and sb == 0:
            raise ChartError(f"curve runs along the cut from ({a[0]}, {a[1]}) to ({b[0]}, {b[1]})", ["adjoin the sides before drawing curves along chords"])
        elif sa >= 0 and sb >= 0:
            result.append((moved(a), moved(b)))
            for point, value in ((a, sa), (b, sb)):
                if value == 0:
                    upper_ends[point] = upper_ends.get(point, 0) + 1
        elif sa <= 0 and sb <= 0:
            result.append((a, b))
            for point, value in ((a, sa), (b, sb)):
                if value == 0:
                    lower_ends[point] = lower_ends.get(point, 0) + 1
        else:
            (low, low_value), (high, high_value) = sorted(((a, sa), (b, sb)), key=lambda item: item[1])
            fraction = Fraction(low_value) / (low_value - high_value)
            crossing = (low[0] + fraction * (high[0] - low[0]), low[1] + fraction * (high[1] - low[1]))
            result += [(low, crossing), (moved(crossing), moved(high))]
            lower_ends[crossing] = lower_ends.get(crossing, 0) + 1
            upper_ends[crossing] = upper_ends.get(crossing, 0) + 1

    for point in sorted(set(lower_ends) | set(upper_ends)):
        if lower_ends.get(point, 0) % 2 or upper_ends.get(point, 0) % 2:
            result.append((point, moved(point)))

    return result


def affine_topology(chart: Chart) -> GluedComplex:
    """
    Recover the pair (plane, curve) from a chart: adjoin sides with normals (0, -1) and (-1, 0), glue the copies along the coordinate axes,
    cone the sides facing the origin off to the origin and remove every other side. Curve ends on removed sides are the unbounded branches.
    More than two half-branches reaching the origin are smoothed when the chart knows its signs and left as a node otherwise.
    """
    chart = adjoin_side(adjoin_side(chart, BOTTOM), LEFT).normalized()
    sides = _classify_sides(chart.polygon, projective=False)
    segments = _drawn_segments(chart)

    ends = {quadrant.reflect(point) for quadrant in Quadrant for point in _ends(chart, quadrant, sides["removed"])}
    cones = _origin_segments(chart, sides["hole"], nodes_allowed=True)

    complex_ = GluedComplex(
        tag=Enums.Carrier.AFFINE_PLANE,
        cells=_copies(chart.polygon) + _hole_cells(sides["hole"]),
        curve=PLCurve(tuple(segments + cones)),
        boundary=_outline(chart.polygon, sides),
        ends=tuple(sorted(ends)),
        contracted=tuple(f"{_describe(side)} to the origin" for side in sides["hole"]),
        glued=_glued(sides),
        removed=tuple(_describe(side) for side in sides["removed"]),
    )
    logger.info(f"affine topology: {complex_.components} components, {complex_.unbounded_branches} unbounded branches")
    return complex_


def projective_topology(chart: Chart) -> GluedComplex:
    """
    Recover the pair (projective plane, curve) from a chart. After adjoining sides with normals (0, -1), (-1, 0) and (1, 1) the copies are
    glued along the axes, the sides facing the origin are coned off to it, the sides between the axes and the side with normal (1, 1) are
    collapsed onto the two points at infinity of the axes, and the remaining side is glued to its antipodal copy. The result is drawn in a
    centrally symmetric disk whose boundary points are identified with their antipodes, which is the carrier the isotopy classifier reads.
    More than two half-branches reaching the origin are smoothed as by a small positive constant term, which needs the signs of the chart.
    """
    chart = adjoin_side(adjoin_side(adjoin_side(chart, BOTTOM), LEFT), DIAGONAL).normalized()
    sides = _classify_sides(chart.polygon, projective=True)
    segments = _drawn_segments(chart)

    (start, end), = sides["diagonal"]
    x_cap, x_collar = _cap_points(sides["x-cap"], axis=0, fallback=start)
    y_cap, y_collar = _cap_points(sides["y-cap"], axis=1, fallback=end)

    carrier = _dedupe([
        x_cap, start.as_rational(), end.as_rational(), y_cap, (-end.i, end.j), (-start.i, start.j),
        _negated(x_cap), _negated(start.as_rational()), _negated(end.as_rational()), _negated(y_cap), (end.i, -end.j), (start.i, -start.j),
    ])

    cones = _origin_segments(chart, sides["hole"], nodes_allowed=False)

    collars = []
    for name, axis, cap, collar in (("x", 0, x_cap, x_collar), ("y", 1, y_cap, y_collar)):
        near, far = [], []
        for quadrant in Quadrant:
            for point in _ends(chart, quadrant, sides[f"{name}-cap"]):
                (near if quadrant.signs[axis] > 0 else far).append(quadrant.reflect(point))
        collars += _collar_segments(name, near, far, cap, collar)

    complex_ = GluedComplex(
        tag=Enums.Carrier.PROJECTIVE_PLANE,
        cells=_copies(chart.polygon) + _hole_cells(sides["hole"]) + _cap_cells(sides["x-cap"], x_cap) + _cap_cells(sides["y-cap"], y_cap),
        curve=PLCurve(tuple(segments + cones + collars)),
        boundary=tuple(carrier),
        contracted=tuple(
            [f"{_describe(side)} to the origin" for side in sides["hole"]]
            + [f"{_describe(side)} to the point at infinity of the {name}-axis" for name in ("x", "y") for side in sides[f"{name}-cap"]]
        ),
        glued=_glued(sides) + (f"{_describe((start, end))} to its antipodal copy",),
    )
    logger.info(f"projective topology: isotopy code {complex_.code.encoding} on a carrier with {len(carrier)} vertices")
    return complex_


def _classify_sides(polygon: ConvexPolygon, projective: bool) -> dict[str, list[Side]]:
    sides: dict[str, list[Side]] = {name: [] for name in ("bottom", "left", "diagonal", "hole", "x-cap", "y-cap", "removed")}
    for side in polygon.sides:
        normal = side_normal(side)
        if normal == BOTTOM:
            sides["bottom"].append(side)
        elif normal == LEFT:
            sides["left"].append(side)
        elif normal.i < 0 and normal.j < 0:
            sides["hole"].append(side)
        elif not projective:
            sides["removed"].append(side)
        elif normal == DIAGONAL:
            sides["diagonal"].append(side)
        elif normal.i > 0 and normal.j < normal.i:
            sides["x-cap"].append(side)
        else:
            sides["y-cap"].append(side)

    missing = [name for name in ("bottom", "left") + (("diagonal",) if projective else ()) if len(sides[name]) != 1]
    if missing:
        raise ChartError(f"the polygon {polygon} is missing the sides {missing} after adjoining them")

    return sides


def _drawn_segments(chart: Chart) -> list[Segment]:
    return [segment for segment in chart.drawn() if segment[0] != segment[1]]


def _ends(chart: Chart, quadrant: Quadrant, sides: Sequence[Side]) -> list[RationalPoint]:
    """Curve endpoints of one copy, in base coordinates, lying on any of the given sides."""
    return sorted(point for point, count in chart.curves[quadrant].endpoints.items() if count % 2 and any(on_segment(point, *side) for side in sides))


def _origin_segments(chart: Chart, hole: Sequence[Side], nodes_allowed: bool) -> list[Segment]:
    """
    The curve inside the cells coned off to the origin. A pair of half-branches is joined at the origin. More half-branches are smoothed
    the way adding a small positive constant to the polynomial smooths them: the sectors between consecutive branches alternate in sign
    starting from the region at the hole vertex on the positive x-axis, and the two branches bounding each negative sector are joined by
    an arc inside that sector which keeps away from the origin. Without vertex signs the branches are coned to a node, if nodes are allowed.
    """
    ends = [quadrant.reflect(point) for quadrant in Quadrant for point in _ends(chart, quadrant, hole)]
    if len(ends) in (0, 2):
        return [(ORIGIN, end) for end in ends]

    problem = f"the curve has {len(ends)} branches through the origin"
    corners = list(dict.fromkeys(quadrant.reflect(vertex.as_rational()) for quadrant in Quadrant for side in hole for vertex in side))
    axis_corner = next(vertex for side in hole for vertex in side if vertex.j == 0)
    reference = chart.sign(Quadrant.PLUS_PLUS, axis_corner)

    reasons = []
    if reference is None:
        reasons.append("the chart records no vertex signs to pick the smoothing")
    if len(ends) % 2:
        reasons.append("an odd number of half-branches")
    if any(end in corners for end in ends):
        reasons.append("a half-branch ends at a vertex of the polygon")

    if reasons:
        if nodes_allowed:
            logger.warning(f"{problem}, coned to a node: {'; '.join(reasons)}")
            return [(ORIGIN, end) for end in ends]
        raise SingularCurveError(problem, reasons)

    items = sorted([(point, True) for point in ends] + [(point, False) for point in corners], key=lambda item: _angle_key(item[0]))
    current, sectors, leading, opened, first = reference, [], [], None, None
    for point, is_end in items:
        if not is_end:
            (leading if opened is None else opened).append(point)
            continue

        if opened is None:
            first = point
        else:
            sectors.append((opened + [point], current))
        current, opened = -current, [point]
    sectors.append((opened + leading + [first], current))

    radius = min(Fraction(side_normal(side).dot(side[0]) ** 2, side_normal(side).dot(side_normal(side))) for side in hole)
    reach = max(x * x + y * y for (x, y), _ in items)
    scale = Fraction(1, 2)
    while scale * scale * reach >= radius:
        scale /= 2

    arcs = []
    for path, sign in sectors:
        if sign < 0:
            points = [path[0]] + [(scale * x, scale * y) for x, y in path] + [path[-1]]
            arcs += list(zip(points, points[1:]))

    logger.info(f"{problem}, smoothed into {len(ends) // 2} arcs")
    return arcs


def _angle(first: RationalPoint, second: RationalPoint) -> int:
    """Counterclockwise order of nonzero points around the origin, starting from the positive x-axis."""
    halves = [0 if y > 0 or (y == 0 and x > 0) else 1 for x, y in (first, second)]
    if halves[0] != halves[1]:
        return halves[0] - halves[1]
    turn = orientation(ORIGIN, first, second)
    return -1 if turn > 0 else (1 if turn < 0 else 0)


_angle_key = cmp_to_key(_angle)


def _cap_points(sides: Sequence[Side], axis: int, fallback: LatticePoint) -> Tuple[RationalPoint, RationalPoint]:
    """The point a cap collapses onto and an interior collar point before it, on the given axis beyond every side of the cap."""
    if not sides:
        return fallback.as_rational(), fallback.as_rational()

    reach = max(Fraction(side_normal(side).dot(side[0]), (side_normal(side).i, side_normal(side).j)[axis]) for side in sides)
    cap, collar = [Fraction(0), Fraction(0)], [Fraction(0), Fraction(0)]
    cap[axis], collar[axis] = reach + 2, reach + 1
    return tuple(cap), tuple(collar)


def _collar_segments(name: str, near: list[RationalPoint], far: list[RationalPoint], cap: RationalPoint, collar: RationalPoint) -> list[Segment]:
    if len(near) + len(far) not in (0, 2):
        raise SingularCurveError(f"the curve has {len(near) + len(far)} branches through the point at infinity of the {name}-axis")

    if len(near) == len(far) == 1:
        return [(near[0], cap), (far[0], _negated(cap))]
    if len(near) == 2:
        return [(near[0], collar), (collar, near[1])]
    if len(far) == 2:
        return [(far[0], _negated(collar)), (_negated(collar), far[1])]
    return []


def _copies(polygon: ConvexPolygon) -> Tuple[Tuple[RationalPoint, ...], ...]:
    return tuple(tuple(quadrant.reflect(vertex.as_rational()) for vertex in polygon) for quadrant in Quadrant)


def _hole_cells(sides: Sequence[Side]) -> Tuple[Tuple[RationalPoint, ...], ...]:
    return tuple((ORIGIN, quadrant.reflect(p.as_rational()), quadrant.reflect(q.as_rational())) for quadrant in Quadrant for p, q in sides)


def _cap_cells(sides: Sequence[Side], cap: RationalPoint) -> Tuple[Tuple[RationalPoint, ...], ...]:
    return tuple((quadrant.reflect(cap), quadrant.reflect(p.as_rational()), quadrant.reflect(q.as_rational())) for quadrant in Quadrant for p, q in sides)


def _outline(polygon: ConvexPolygon, sides: dict[str, list[Side]]) -> Tuple[RationalPoint, ...]:
    """The outer boundary of the four copies, counterclockwise from the positive x-axis."""
    (_, corner), = sides["bottom"]
    (top, _), = sides["left"]
    vertices = polygon.vertices
    first, last = vertices.index(corner), vertices.index(top)
    chain = [vertices[(first + step) % len(vertices)].as_rational() for step in range((last - first) % len(vertices) + 1)]

    return tuple(_dedupe(
        chain + [(-x, y) for x, y in reversed(chain)] + [(-x, -y) for x, y in chain] + [(x, -y) for x, y in reversed(chain)]
    ))


def _glued(sides: dict[str, list[Side]]) -> Tuple[str, ...]:
    return (f"{_describe(sides['bottom'][0])} across the x-axis", f"{_describe(sides['left'][0])} across the y-axis")


def _describe(side: Side) -> str:
    p, q = side
    return f"side {p}-{q}"


def _negated(point: RationalPoint) -> RationalPoint:
    return (-point[0], -point[1])


def _dedupe(points: Sequence[RationalPoint]) -> list[RationalPoint]:
    """Drop cyclically consecutive repeats."""
    points = [(Fraction(x), Fraction(y)) for x, y in points]
    kept = [point for index, point in enumerate(points) if point != points[index - 1]]
    return kept or points[:1]

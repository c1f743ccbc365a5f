from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import log
from typing import Any, Optional, Sequence, Tuple, Union

import numpy as np
from miscutils import Timer

from ..convexity import HeightFunction
from ..errors import InvalidInputError
from ..lattice import ConvexPolygon, Quadrant, SignedTriangulation
from ..tcurve import IsotopyCode, TCurve, extended_sign
from .family import PatchworkFamily, family_from_triangulation
from .numeric import NumericPicture, numeric_isotopy
from .transforms import log_moment_map

logger = logging.getLogger(__name__)

DEFAULT_SCHEDULE = tuple(Fraction(1, 2 ** power) for power in range(1, 13))


@dataclass
class NumericReport:
    """
    The outcome of checking a patchwork numerically over a decreasing schedule of t values.
    The picture fields describe the last t examined. 'stabilized' holds when two consecutive t gave the same code and that code is the
    combinatorial one. 'mismatch' is the fraction of sampled curve-free grid nodes whose sign disagrees with the combinatorial region sign.
    """
    t: Fraction
    resolution: int
    window: float
    quadrant_components: dict[Quadrant, int]
    affine_components: int
    code: IsotopyCode
    expected: IsotopyCode
    stabilized: bool
    mismatch: Optional[float] = None
    history: list[Tuple[Fraction, str]] = field(default_factory=list)
    elapsed: float = 0.0

    def to_json(self) -> dict[str, Any]:
        return {
            "t": f"{self.t.numerator}/{self.t.denominator}",
            "resolution": self.resolution,
            "window": self.window,
            "quadrant_components": {quadrant.label: count for quadrant, count in self.quadrant_components.items()},
            "affine_components": self.affine_components,
            "isotopy_code": self.code.to_json(),
            "expected": self.expected.encoding,
            "stabilized": self.stabilized,
            "mismatch": self.mismatch,
            "history": [[f"{t.numerator}/{t.denominator}", code] for t, code in self.history],
            "elapsed": round(self.elapsed, 3),
        }


def default_window(family: PatchworkFamily, t: Fraction) -> float:
    """A log-radius of 1.2 (max |h| + degree) |ln t|, wide enough to hold every fragment of the curve at that t."""
    return 1.2 * (max(abs(height) for _, (_, height) in family.terms.items()) + family.degree) * abs(log(t.numerator) - log(t.denominator))


def verify_family(family: PatchworkFamily, expected: Union[IsotopyCode, str], schedule: Sequence[Any] = DEFAULT_SCHEDULE, resolution: int = 512, window: Optional[float] = None) -> NumericReport:
    """Run the numeric topology of b_t down the schedule until the code repeats and matches the expected one, or the schedule runs out."""
    report, _ = _run_schedule(family, expected, schedule=schedule, resolution=resolution, window=window)
    return report


def _run_schedule(family: PatchworkFamily, expected: Union[IsotopyCode, str], schedule: Sequence[Any], resolution: int, window: Optional[float]) -> Tuple[NumericReport, NumericPicture]:
    expected = expected if isinstance(expected, IsotopyCode) else IsotopyCode.from_encoding(expected)
    schedule = [Fraction(t) for t in schedule]
    if not schedule or any(t <= 0 or t >= 1 for t in schedule):
        raise InvalidInputError("the schedule must be a nonempty list of values of t between 0 and 1")
    if any(later >= earlier for earlier, later in zip(schedule, schedule[1:])):
        raise InvalidInputError("the schedule must be strictly decreasing")

    timer, history, previous, stabilized = Timer(), [], None, False
    for t in schedule:
        radius = window if window is not None else default_window(family, t)
        picture = numeric_isotopy(family.substitute_t(t), window=radius, resolution=resolution)
        history.append((t, picture.code.encoding))
        logger.info(f"t = {t}: code {picture.code.encoding}, {picture.affine_components} affine components, window {radius:.2f}")

        if picture.code == expected and previous == expected:
            stabilized = True
            break
        previous = picture.code

    report = NumericReport(
        t=t, resolution=resolution, window=picture.window, quadrant_components=picture.quadrant_components, affine_components=picture.affine_components,
        code=picture.code, expected=expected, stabilized=stabilized, history=history, elapsed=float(timer),
    )
    if not stabilized:
        logger.warning(f"no stabilization to {expected.encoding} within {len(schedule)} values of t, last code {picture.code.encoding}")

    return report, picture


def verify_patchwork(triangulation: SignedTriangulation, heights: HeightFunction, schedule: Sequence[Any] = DEFAULT_SCHEDULE, resolution: int = 512, window: Optional[float] = None, samples: int = 64) -> NumericReport:
    """
    Check combinatorial patchworking numerically: build b_t from the signed vertices and the heights, read the topology of its curve for each
    scheduled t and compare it with the combinatorial code, then compare grid signs with the signs of the regions of the T-curve at the last t.
    """
    family = family_from_triangulation(triangulation, heights)
    expected = combinatorial_code(triangulation)
    report, picture = _run_schedule(family, expected, schedule=schedule, resolution=resolution, window=window)
    report.mismatch = sign_mismatch(picture, triangulation, heights, report.t, samples=samples)
    logger.info(f"verified {report.code.encoding} against {expected.encoding}: stabilized={report.stabilized}, mismatch={report.mismatch:.4f}, {report.elapsed:.1f}s")
    return report


def combinatorial_code(triangulation: SignedTriangulation) -> IsotopyCode:
    """The projective code of the T-curve, through the glued trinomial charts when the domain is not the triangle of a degree."""
    degree = max(vertex.i for vertex in triangulation.domain)
    if triangulation.domain == ConvexPolygon.degree_triangle(degree):
        return TCurve(triangulation).code

    from ..charts import chart_of_triangulation, projective_topology
    return projective_topology(chart_of_triangulation(triangulation)).code


def sign_mismatch(picture: NumericPicture, triangulation: SignedTriangulation, heights: HeightFunction, t: Fraction, samples: int = 64) -> float:
    """
    Fraction of sampled interior grid nodes, away from the numeric curve, whose sign differs from the sign of the region of the T-curve that
    contains their image under the weighted moment map reflected into the node's quadrant.
    """
    n = picture.resolution
    indices = np.arange(1, n, max(1, (n - 1) // samples))
    triangles = [triangulation.triangle_points(triangle) for triangle in triangulation.triangles]
    corners = np.array([[[point.i, point.j] for point in triangle] for triangle in triangles], dtype=float)

    compared = disagreeing = 0
    for quadrant, grid in picture.grids.items():
        free = _curve_free(grid)[np.ix_(indices, indices)]
        ks, ls = (indices[axis] for axis in np.nonzero(free))
        if not len(ks):
            continue

        coordinates = np.stack([picture.lattice[ks], picture.lattice[ls]], axis=1)
        images = log_moment_map(coordinates, triangulation.domain, points=triangulation.vertices, heights=heights, t=t).reshape(-1, 2)
        signs = np.array([[extended_sign(triangulation.sign(point), point, quadrant) for point in triangle] for triangle in triangles])
        expected = _region_signs(images, corners, signs)

        compared += len(ks)
        disagreeing += int(np.count_nonzero(expected != grid[ks, ls]))

    return disagreeing / compared if compared else 0.0


def _curve_free(grid: np.ndarray) -> np.ndarray:
    """Interior nodes whose eight neighbours share their sign."""
    free = np.zeros(grid.shape, dtype=bool)
    centre = grid[1:-1, 1:-1]
    same = np.ones(centre.shape, dtype=bool)
    for dk in (-1, 0, 1):
        for dl in (-1, 0, 1):
            same &= grid[1 + dk:grid.shape[0] - 1 + dk, 1 + dl:grid.shape[1] - 1 + dl] == centre
    free[1:-1, 1:-1] = same
    return free


def _region_signs(points: np.ndarray, corners: np.ndarray, signs: np.ndarray) -> np.ndarray:
    """
    The sign of the region of a T-curve at each point: the shared sign inside a triangle whose vertices agree, otherwise the sign of the
    odd vertex when the point is nearer to it than the midline, and the opposite sign beyond.
    """
    a, b, c = corners[:, 0], corners[:, 1], corners[:, 2]
    denominator = (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (c[:, 0] - a[:, 0]) * (b[:, 1] - a[:, 1])
    x, y = points[:, None, 0], points[:, None, 1]
    second = ((x - a[:, 0]) * (c[:, 1] - a[:, 1]) - (c[:, 0] - a[:, 0]) * (y - a[:, 1])) / denominator
    third = ((b[:, 0] - a[:, 0]) * (y - a[:, 1]) - (x - a[:, 0]) * (b[:, 1] - a[:, 1])) / denominator
    weights = np.stack([1 - second - third, second, third], axis=-1)

    containing = np.argmax(weights.min(axis=-1), axis=1)
    rows = np.arange(len(points))
    local, vertex_signs = weights[rows, containing], signs[containing]

    total = vertex_signs.sum(axis=-1)
    uniform = np.abs(total) == 3
    odd = np.argmax(vertex_signs * -np.sign(total)[:, None] > 0, axis=-1)
    odd_sign = vertex_signs[rows, odd]
    near = local[rows, odd] > 0.5
    return np.where(uniform, vertex_signs[:, 0], np.where(near, odd_sign, -odd_sign))

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import hypot, log
from typing import Any, Iterable, Tuple

import numpy as np
import sympy

from ..errors import InvalidInputError
from ..lattice import LatticePoint, Quadrant, lattice_length
from ..tcurve import IsotopyCode, classify_curve
from .polynomial import SparsePolynomial

logger = logging.getLogger(__name__)

GridPoint = Tuple[int, int]
GridSegment = Tuple[GridPoint, GridPoint]

# Cell corners are numbered counterclockwise from (k, l): 0 = (k, l), 1 = (k+1, l), 2 = (k+1, l+1), 3 = (k, l+1), and edge e joins corner e to corner e+1.
# Cases are indexed by the bits c3 c2 c1 c0 of the positive corners. Saddles list the pairs for a negative and for a positive cell center.
MARCHING_SQUARES_TABLE = [
    (False, []),  # 0000
    (False, [(3, 0)]),  # 0001
    (False, [(0, 1)]),  # 0010
    (False, [(1, 3)]),  # 0011
    (False, [(1, 2)]),  # 0100
    (True, ([(3, 0), (1, 2)], [(0, 1), (2, 3)])),  # 0101
    (False, [(0, 2)]),  # 0110
    (False, [(2, 3)]),  # 0111
    (False, [(2, 3)]),  # 1000
    (False, [(0, 2)]),  # 1001
    (True, ([(0, 1), (2, 3)], [(3, 0), (1, 2)])),  # 1010
    (False, [(1, 2)]),  # 1011
    (False, [(1, 3)]),  # 1100
    (False, [(0, 1)]),  # 1101
    (False, [(3, 0)]),  # 1110
    (False, []),  # 1111
]

# Edge midpoints in doubled grid coordinates, relative to twice the cell's lower-left corner.
EDGE_MIDPOINTS = ((1, 0), (2, 1), (1, 2), (0, 1))


class LogEvaluator:
    """
    Values of a polynomial at (eps e^u, delta e^v), computed in logarithmic scale: every term is divided by the largest one before summing,
    so the far corners of wide windows neither overflow nor underflow. Only the sign and the relative size of the result are meaningful.
    """

    def __init__(self, terms: Iterable[Tuple[LatticePoint, Fraction]]) -> None:
        terms = list(terms)
        self.exponents = [(point.i, point.j) for point, _ in terms]
        self.logs = [_log_abs(coefficient) for _, coefficient in terms]
        self.coefficient_signs = [1 if coefficient > 0 else -1 for _, coefficient in terms]

    def __repr__(self) -> str:
        return f"{type(self).__name__}(terms={len(self.logs)})"

    def __bool__(self) -> bool:
        return bool(self.logs)

    def values(self, eps: int, delta: int, u: Any, v: Any) -> np.ndarray:
        u, v = np.asarray(u, dtype=float), np.asarray(v, dtype=float)
        shape = np.broadcast(u, v).shape
        if not self.logs:
            return np.zeros(shape)

        peak = np.full(shape, -np.inf)
        for (i, j), logarithm in zip(self.exponents, self.logs):
            peak = np.maximum(peak, logarithm + i * u + j * v)

        total = np.zeros(shape)
        for (i, j), logarithm, sign in zip(self.exponents, self.logs, self.coefficient_signs):
            total += sign * _parity(eps, i) * _parity(delta, j) * np.exp(logarithm + i * u + j * v - peak)
        return total

    def signs(self, eps: int, delta: int, u: Any, v: Any, zero: int = 1) -> np.ndarray:
        """Signs as +1/-1, with exact zeros replaced by 'zero'."""
        values = self.values(eps, delta, u, v)
        return np.where(values > 0, 1, np.where(values < 0, -1, zero)).astype(np.int8)


@dataclass
class NumericPicture:
    """The topology of the real zero set of a polynomial, read off sign grids over four glued logarithmic windows."""
    resolution: int
    window: float
    quadrant_components: dict[Quadrant, int]
    affine_components: int
    code: IsotopyCode
    segments: int
    grids: dict[Quadrant, np.ndarray] = field(default_factory=dict, repr=False)
    lattice: np.ndarray = field(default_factory=lambda: np.zeros(0), repr=False)

    def to_json(self) -> dict[str, Any]:
        return {
            "resolution": self.resolution,
            "window": self.window,
            "quadrant_components": {quadrant.label: count for quadrant, count in self.quadrant_components.items()},
            "affine_components": self.affine_components,
            "isotopy_code": self.code.to_json(),
            "segments": self.segments,
        }


class GluedWindows:
    """
    Samples a polynomial of degree m over the closed quadrants of the projective plane and extracts its zero set by marching squares.

    Each quadrant is a grid of N x N cells over the logarithmic window [-R, R]^2. The first and last grid lines are replaced by limits:
    column 0 and row 0 carry the values on the coordinate axes, while column N and row N carry the degree-m form on the line at infinity at the
    ratio |y/x| = e^(v-R) and e^(R-u) respectively. Grid points in doubled coordinates (a, b) are placed in the diamond |X| + |Y| <= 8N^2 by
    (X, Y) = (a(4N - b), b(4N - a)) reflected into the quadrant, so that the axes are shared between neighbouring quadrants and the line at
    infinity becomes the boundary of the diamond with antipodal points identified.
    """

    def __init__(self, polynomial: SparsePolynomial, window: float = 10.0, resolution: int = 256) -> None:
        if not isinstance(polynomial, SparsePolynomial):
            raise TypeError(f"Expected '{SparsePolynomial.__name__}', not '{type(polynomial).__name__}'.")
        if not polynomial:
            raise InvalidInputError("the zero polynomial has no curve")
        if not polynomial.is_polynomial:
            raise InvalidInputError("numeric topology needs nonnegative exponents")
        if resolution < 8:
            raise InvalidInputError(f"grid resolution must be at least 8, not {resolution}")
        if not window > 0:
            raise InvalidInputError(f"window radius must be positive, not {window}")

        self.polynomial, self.window, self.resolution = polynomial, float(window), int(resolution)
        self.degree = polynomial.degree
        self.lattice = np.linspace(-self.window, self.window, self.resolution + 1)

        terms = polynomial.terms.items()
        self.interior = LogEvaluator(terms)
        self.y_axis = LogEvaluator((point, coefficient) for point, coefficient in terms if point.i == 0)
        self.x_axis = LogEvaluator((point, coefficient) for point, coefficient in terms if point.j == 0)
        self.infinity = LogEvaluator((point, coefficient) for point, coefficient in terms if point.i + point.j == self.degree)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(polynomial={self.polynomial}, window={self.window}, resolution={self.resolution})"

    @property
    def carrier(self) -> list[GridPoint]:
        limit = 8 * self.resolution ** 2
        return [(limit, 0), (0, limit), (-limit, 0), (0, -limit)]

    def grid(self, quadrant: Quadrant) -> np.ndarray:
        """Signs at the (N+1) x (N+1) grid nodes of a quadrant, indexed [k, l]."""
        eps, delta = quadrant.signs
        n, radius, u, m = self.resolution, self.window, self.lattice, self.degree
        inner = u[1:n]

        grid = np.empty((n + 1, n + 1), dtype=np.int8)
        grid[1:n, 1:n] = self.interior.signs(eps, delta, inner[:, None], inner[None, :])
        grid[0, 1:n] = self.y_axis.signs(eps, delta, 0.0, inner)
        grid[1:n, 0] = self.x_axis.signs(eps, delta, inner, 0.0)
        grid[n, 1:n] = self.infinity.signs(eps, delta, 0.0, inner - radius, zero=eps ** m)
        grid[1:n, n] = self.infinity.signs(eps, delta, 0.0, radius - inner, zero=delta ** m)
        grid[n, n] = self.infinity.signs(eps, delta, 0.0, 0.0, zero=eps ** m)

        grid[0, 0] = _sign(self.polynomial.coefficient((0, 0)), 1)
        grid[n, 0] = _sign(self.polynomial.coefficient((m, 0)), 1) * eps ** m
        grid[0, n] = _sign(self.polynomial.coefficient((0, m)), 1) * delta ** m
        return grid

    def segments(self, quadrant: Quadrant, grid: np.ndarray = None) -> list[GridSegment]:
        """Marching-squares segments of a quadrant in doubled grid coordinates, with saddles resolved by the sign at the cell center."""
        eps, delta = quadrant.signs
        grid = self.grid(quadrant) if grid is None else grid
        positive = grid > 0
        cases = positive[:-1, :-1] * 1 + positive[1:, :-1] * 2 + positive[1:, 1:] * 4 + positive[:-1, 1:] * 8

        ks, ls = np.nonzero((cases != 0) & (cases != 15))
        saddles = np.isin(cases[ks, ls], (5, 10))
        step = 2 * self.window / self.resolution
        centers = dict(zip(zip(ks[saddles].tolist(), ls[saddles].tolist()), self.interior.signs(eps, delta, -self.window + step * (ks[saddles] + 0.5), -self.window + step * (ls[saddles] + 0.5)).tolist()))

        segments = []
        for k, l, case in zip(ks.tolist(), ls.tolist(), cases[ks, ls].tolist()):
            saddle, pairs = MARCHING_SQUARES_TABLE[case]
            if saddle:
                pairs = pairs[centers[(k, l)] > 0]
            for first, second in pairs:
                (a, b), (c, d) = EDGE_MIDPOINTS[first], EDGE_MIDPOINTS[second]
                segments.append(((2 * k + a, 2 * l + b), (2 * k + c, 2 * l + d)))

        logger.debug(f"quadrant {quadrant.label}: {len(segments)} segments from {len(ks)} crossing cells, {int(saddles.sum())} saddles")
        return segments

    def place(self, quadrant: Quadrant, point: GridPoint) -> GridPoint:
        eps, delta = quadrant.signs
        a, b = point
        scale = 4 * self.resolution
        return (eps * a * (scale - b), delta * b * (scale - a))

    def on_limit(self, point: GridPoint) -> bool:
        return any(value in (0, 2 * self.resolution) for value in point)

    def at_infinity(self, point: GridPoint) -> bool:
        return 2 * self.resolution in point

    def routed(self, quadrant: Quadrant, segment: GridSegment) -> list[Tuple[GridPoint, GridPoint]]:
        """
        A segment placed in the diamond. The corner cell at infinity folds onto the boundary, so a segment joining its two sides
        at infinity is bent through the image of the cell center.
        """
        p, q = segment
        if self.at_infinity(p) and self.at_infinity(q):
            center = (2 * self.resolution - 1, 2 * self.resolution - 1)
            return [(self.place(quadrant, p), self.place(quadrant, center)), (self.place(quadrant, center), self.place(quadrant, q))]
        return [(self.place(quadrant, p), self.place(quadrant, q))]

    def picture(self) -> NumericPicture:
        grids = {quadrant: self.grid(quadrant) for quadrant in Quadrant}
        raw = {quadrant: self.segments(quadrant, grids[quadrant]) for quadrant in Quadrant}

        quadrant_components = {quadrant: _component_count(segment for segment in segments if not (self.on_limit(segment[0]) and self.on_limit(segment[1]))) for quadrant, segments in raw.items()}
        affine = _component_count((self.place(quadrant, p), self.place(quadrant, q)) for quadrant, segments in raw.items() for p, q in segments if not (self.at_infinity(p) and self.at_infinity(q)))
        placed = [routed for quadrant, segments in raw.items() for segment in segments for routed in self.routed(quadrant, segment)]

        code = classify_curve(self.carrier, placed)
        logger.debug(f"window {self.window:.3f} at resolution {self.resolution}: {len(placed)} segments, code {code.encoding}")
        return NumericPicture(
            resolution=self.resolution, window=self.window, quadrant_components=quadrant_components, affine_components=affine,
            code=code, segments=len(placed), grids=grids, lattice=self.lattice,
        )


def numeric_isotopy(polynomial: SparsePolynomial, window: float = 10.0, resolution: int = 256) -> NumericPicture:
    """Sign-grid topology of the real curve of a polynomial: per-quadrant and affine component counts and the projective isotopy code."""
    return GluedWindows(polynomial, window=window, resolution=resolution).picture()


def asymptote_lines(polynomial: SparsePolynomial) -> dict[Quadrant, list[Tuple[int, int, float]]]:
    """
    For each quadrant, the lines a*u + b*v = c in logarithmic coordinates approached by the branches of the curve, one for each real root
    of the truncation of the polynomial to a side of its Newton polygon. (a, b) is the primitive direction of the side.
    """
    z = sympy.Symbol("z")
    lines: dict[Quadrant, list[Tuple[int, int, float]]] = {quadrant: [] for quadrant in Quadrant}
    polygon = polynomial.newton_polygon()
    if polygon.is_point:
        return lines

    for p, q in polygon.sides:
        direction = (q - p).primitive()
        restriction = sympy.Add(*[sympy.Rational(*_ratio(polynomial.coefficient(p + direction.scaled(step)))) * z ** step for step in range(lattice_length(p, q) + 1)])
        for root in set(sympy.Poly(restriction, z).real_roots()):
            if root == 0:
                continue
            value = float(root)
            for quadrant in Quadrant:
                eps, delta = quadrant.signs
                if _parity(eps, direction.i) * _parity(delta, direction.j) * value > 0:
                    lines[quadrant].append((direction.i, direction.j, log(abs(value))))

    return lines


def asymptote_distance(polynomial: SparsePolynomial, radius: float, samples: int = 4096) -> float:
    """
    The largest distance, in logarithmic coordinates, from a point where the curve leaves the window [-radius, radius]^2 to the nearest
    asymptote line of its quadrant. It tends to zero as the radius grows.
    """
    evaluator = LogEvaluator(polynomial.terms.items())
    lines = asymptote_lines(polynomial)
    steps = np.linspace(-radius, radius, samples + 1)
    ones = np.full_like(steps, radius)
    path = np.concatenate([np.stack([steps, -ones], axis=1), np.stack([ones, steps], axis=1), np.stack([steps[::-1], ones], axis=1), np.stack([-ones, steps[::-1]], axis=1)])

    distances = []
    for quadrant in Quadrant:
        eps, delta = quadrant.signs
        signs = np.sign(evaluator.values(eps, delta, path[:, 0], path[:, 1]))
        for index in np.nonzero(signs[:-1] * signs[1:] < 0)[0].tolist():
            u, v = _bisect(evaluator, eps, delta, path[index], path[index + 1])
            if lines[quadrant]:
                distances.append(min(abs(a * u + b * v - c) / hypot(a, b) for a, b, c in lines[quadrant]))

    if not distances:
        raise InvalidInputError(f"the curve does not leave the window of radius {radius}")

    logger.debug(f"asymptote distance at radius {radius}: {max(distances):.3g} over {len(distances)} exits")
    return max(distances)


def _bisect(evaluator: LogEvaluator, eps: int, delta: int, start: np.ndarray, end: np.ndarray, steps: int = 60) -> Tuple[float, float]:
    low, high = np.array(start, dtype=float), np.array(end, dtype=float)
    low_sign = np.sign(evaluator.values(eps, delta, low[0], low[1]))
    for _ in range(steps):
        middle = (low + high) / 2
        sign = np.sign(evaluator.values(eps, delta, middle[0], middle[1]))
        if sign == 0:
            return float(middle[0]), float(middle[1])
        if sign == low_sign:
            low = middle
        else:
            high = middle
    return float((low[0] + high[0]) / 2), float((low[1] + high[1]) / 2)


def _component_count(segments: Iterable[Tuple[Any, Any]]) -> int:
    parent: dict[Any, Any] = {}

    def find(item: Any) -> Any:
        parent.setdefault(item, item)
        while parent[item] != item:
            parent[item] = parent[parent[item]]
            item = parent[item]
        return item

    for p, q in segments:
        parent[find(p)] = find(q)

    return len({find(item) for item in list(parent)})


def _log_abs(value: Fraction) -> float:
    value = Fraction(value)
    return log(abs(value.numerator)) - log(value.denominator)


def _ratio(value: Fraction) -> Tuple[int, int]:
    return value.numerator, value.denominator


def _parity(sign: int, exponent: int) -> int:
    return sign if exponent % 2 else 1


def _sign(value: Fraction, zero: int) -> int:
    return 1 if value > 0 else -1 if value < 0 else zero

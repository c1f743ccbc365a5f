from __future__ import annotations

from fractions import Fraction
from math import log
from typing import Any, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import InvalidInputError
from ..lattice import ConvexPolygon, LatticePoint
from .polynomial import SparsePolynomial

Number = Union[int, Fraction]


def log_map(point: Any) -> Any:
    """(x, y) -> (ln|x|, ln|y|). Accepts a single pair or an array whose last axis holds the pairs."""
    values = np.asarray(point, dtype=float)
    if values.shape[-1:] != (2,):
        raise InvalidInputError(f"expected points with two coordinates, got shape {values.shape}")

    if np.any(values == 0):
        raise InvalidInputError("the logarithmic map is undefined on the coordinate axes")

    logs = np.log(np.abs(values))
    return tuple(float(value) for value in logs) if logs.ndim == 1 else logs


def quasi_homothety(target: Any, weights: Sequence[Number], t: Number) -> Any:
    """
    The map (x, y) -> (x t^a, y t^b) for weights (a, b).
    On a SparsePolynomial it returns the composition b(x t^a, y t^b), which multiplies each coefficient by t^(a i + b j)
    and needs integer weights. On points it returns the image, exactly when the point, t and the weights are all rational and the weights integral.
    """
    a, b = (Fraction(weight) for weight in weights)
    t = Fraction(t)
    if t <= 0:
        raise InvalidInputError(f"the parameter t must be positive, not {t}")

    if isinstance(target, SparsePolynomial):
        if a.denominator != 1 or b.denominator != 1:
            raise InvalidInputError(f"polynomials can only be transformed by integer weights, not ({a}, {b})")
        return SparsePolynomial({point: coefficient * t ** int(a * point.i + b * point.j) for point, coefficient in target.terms.items()})

    if isinstance(target, np.ndarray):
        return target * np.array([float(t) ** float(a), float(t) ** float(b)])

    x, y = target
    if a.denominator == 1 and b.denominator == 1 and not isinstance(x, float) and not isinstance(y, float):
        return (Fraction(x) * t ** int(a), Fraction(y) * t ** int(b))
    return (float(x) * float(t) ** float(a), float(y) * float(t) ** float(b))


def moment_map(point: Any, polygon: ConvexPolygon, points: Optional[Sequence[Any]] = None, heights: Optional[Mapping[LatticePoint, Number]] = None, t: Optional[Number] = None,
               base: Optional[Any] = None) -> Any:
    """
    The moment map of a polygon: the convex combination of the chosen lattice points w weighted by |y^w|.
    With heights and t the weights become t^h(w) |y^w|, which moves the images of the fragments of a patchworked curve onto their cells.
    A base exponent w0 turns the weights into |y^(w - w0)|, a common factor that leaves the image unchanged.
    """
    return log_moment_map(log_map(point), polygon, points=points, heights=heights, t=t, base=base)


def log_moment_map(coordinates: Any, polygon: ConvexPolygon, points: Optional[Sequence[Any]] = None, heights: Optional[Mapping[LatticePoint, Number]] = None, t: Optional[Number] = None,
                   base: Optional[Any] = None) -> Any:
    """
    The moment map composed with the exponential, taking logarithmic coordinates (u, v) directly.
    The weights are normalized in logarithmic scale, so the result stays finite far from the origin whatever the base exponent.
    """
    chosen = [LatticePoint.coerce(entry) for entry in (points if points is not None else polygon.lattice_points())]
    if missing := [vertex for vertex in polygon if vertex not in chosen]:
        raise InvalidInputError(f"the chosen points must include every vertex of the polygon, missing {missing}")

    logs = np.asarray(coordinates, dtype=float)
    exponents = np.array([[entry.i, entry.j] for entry in chosen], dtype=float)
    weights = logs @ exponents.T
    if base is not None:
        weights = weights - (logs @ np.array(list(LatticePoint.coerce(base)), dtype=float))[..., None]
    if heights is not None:
        if t is None:
            raise InvalidInputError("a weighted moment map needs both heights and t")
        t = Fraction(t)
        weights = weights + np.array([float(heights[entry]) for entry in chosen]) * (log(t.numerator) - log(t.denominator))

    weights = np.exp(weights - weights.max(axis=-1, keepdims=True))
    image = (weights @ exponents) / weights.sum(axis=-1, keepdims=True)
    return tuple(float(value) for value in image) if image.ndim == 1 else image

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, gcd
from typing import Any, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from ..errors import InvalidInputError
from ..lattice import ConvexPolygon, LatticePoint, SignedTriangulation, orientation, validate_triangulation
from .simplex import SimplexTableau, Enums

logger = logging.getLogger(__name__)


class ConvexPartition:
    """A subdivision of a convex lattice polygon into convex lattice cells with disjoint interiors."""

    def __init__(self, domain: ConvexPolygon, cells: Iterable[ConvexPolygon]) -> None:
        self.domain, self.cells = domain, list(cells)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(domain={self.domain}, cells={self.cells})"

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, ConvexPartition) and self.domain == other.domain and set(self.cells) == set(other.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[ConvexPolygon]:
        return iter(self.cells)

    @property
    def points(self) -> list[LatticePoint]:
        """Every cell vertex, each once, in sorted order."""
        return sorted({vertex for cell in self.cells for vertex in cell})

    def adjacent_pairs(self) -> list[Tuple[int, int, Tuple[LatticePoint, LatticePoint]]]:
        """Pairs of cells sharing a boundary segment of positive length, with that segment's supporting side of the first cell."""
        pairs = []
        for first, a in enumerate(self.cells):
            for second in range(first + 1, len(self.cells)):
                if (side := _shared_side(a, self.cells[second])) is not None:
                    pairs.append((first, second, side))
        return pairs

    def violations(self) -> list[str]:
        violations = []
        if len(self.domain) < 3:
            violations.append("domain is not two-dimensional")

        for cell in self.cells:
            if len(cell) < 3:
                violations.append(f"cell {cell} is not two-dimensional")
            elif any(not self.domain.contains(vertex) for vertex in cell):
                violations.append(f"cell {cell} leaves the domain")

        if sum(cell.doubled_area for cell in self.cells) != self.domain.doubled_area:
            violations.append("area sum mismatch")

        for first, a in enumerate(self.cells):
            for b in self.cells[first + 1:]:
                if len(a) >= 3 and len(b) >= 3 and _interiors_overlap(a, b):
                    violations.append(f"cells {a} and {b} overlap")

        return violations

    @classmethod
    def from_triangulation(cls, triangulation: SignedTriangulation) -> ConvexPartition:
        return cls(triangulation.domain, [ConvexPolygon(triangulation.triangle_points(triangle)) for triangle in triangulation.triangles])


class HeightFunction:
    """Heights on a finite set of lattice points. Values are kept as given so that non-integral candidates can be checked and rejected."""

    def __init__(self, heights: Union[Mapping[Any, Union[int, Fraction]], Iterable[Tuple[Any, Union[int, Fraction]]]]) -> None:
        items = heights.items() if isinstance(heights, Mapping) else heights
        self.heights = {LatticePoint.coerce(point): value for point, value in items}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(f'{point}: {value}' for point, value in sorted(self.heights.items()))})"

    def __getitem__(self, point: Any) -> Union[int, Fraction]:
        return self.heights[LatticePoint.coerce(point)]

    def __contains__(self, point: Any) -> bool:
        return LatticePoint.coerce(point) in self.heights

    def __iter__(self) -> Iterator[LatticePoint]:
        return iter(sorted(self.heights))

    def __len__(self) -> int:
        return len(self.heights)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, HeightFunction) and self.heights == other.heights

    @property
    def is_integral(self) -> bool:
        return all(Fraction(value).denominator == 1 for value in self.heights.values())

    def shifted(self, alpha: int, beta: int, gamma: int = 0) -> HeightFunction:
        """Add the affine function alpha*i + beta*j + gamma."""
        return type(self)({point: value + alpha * point.i + beta * point.j + gamma for point, value in self.heights.items()})

    def scaled(self, factor: int) -> HeightFunction:
        return type(self)({point: factor * value for point, value in self.heights.items()})

    def restricted(self, points: Iterable[Any]) -> HeightFunction:
        return type(self)({point: self[point] for point in points})

    def to_json(self) -> list[list[Any]]:
        return [[point.i, point.j, _to_json_number(value)] for point, value in sorted(self.heights.items())]

    @classmethod
    def from_function(cls, points: Iterable[Any], function: Any) -> HeightFunction:
        return cls({LatticePoint.coerce(point): function(*LatticePoint.coerce(point)) for point in points})


@dataclass
class Infeasible:
    """No strictly convex height function exists. The certificate lists nonnegative multipliers of fold and linearity constraints whose combination forces the slack to vanish."""
    reason: str
    certificate: list[Tuple[str, Fraction]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return False

    @property
    def total_weight(self) -> Fraction:
        return sum((weight for _, weight in self.certificate), Fraction(0))

    def to_json(self) -> dict[str, Any]:
        return {"infeasible": True, "reason": self.reason, "certificate": [{"constraint": name, "multiplier": _to_json_number(weight)} for name, weight in self.certificate]}


class _AffinePiece:
    """The affine function through three lifted, affinely independent points, evaluated through barycentric coordinates."""

    def __init__(self, base: Sequence[LatticePoint]) -> None:
        self.base = tuple(base)
        self.det = orientation(*self.base)
        if not self.det:
            raise InvalidInputError(f"points {self.base} are collinear")

    def weights(self, point: Any) -> Tuple[Fraction, Fraction, Fraction]:
        a, b, c = self.base
        return (Fraction(orientation(point, b, c), self.det), Fraction(orientation(a, point, c), self.det), Fraction(orientation(a, b, point), self.det))

    def evaluate(self, point: Any, heights: Mapping[LatticePoint, Any]) -> Fraction:
        return sum((weight * heights[vertex] for weight, vertex in zip(self.weights(point), self.base)), Fraction(0))


def as_partition(shape: Union[ConvexPartition, SignedTriangulation]) -> ConvexPartition:
    """Validate either kind of input and return it as a partition, raising 'invalid input' with the collected violations."""
    if isinstance(shape, SignedTriangulation):
        report = validate_triangulation(shape)
        if not report.valid:
            raise InvalidInputError("invalid input", report.violations)
        return ConvexPartition.from_triangulation(shape)

    if isinstance(shape, ConvexPartition):
        if violations := shape.violations():
            raise InvalidInputError("invalid input", violations)
        return shape

    raise TypeError(f"Expected '{ConvexPartition.__name__}' or '{SignedTriangulation.__name__}', not '{type(shape).__name__}'.")


def base_triangle(cell: ConvexPolygon) -> Tuple[LatticePoint, LatticePoint, LatticePoint]:
    first, second = cell.vertices[0], cell.vertices[1]
    third = next(vertex for vertex in cell.vertices[2:] if orientation(first, second, vertex))
    return first, second, third


def convexity_violations(shape: Union[ConvexPartition, SignedTriangulation], heights: HeightFunction, lattice_points: bool = False) -> list[str]:
    """
    Every way in which the heights fail to convexify the partition: not affine on a cell, affine across a fold, or non-integral.
    With 'lattice_points' the affine extension must also be integral on every lattice point of every cell.
    """
    partition = as_partition(shape)
    points = partition.points

    if missing := [point for point in points if point not in heights]:
        raise InvalidInputError(f"height function is missing vertices {missing}")

    values = {point: Fraction(heights[point]) for point in heights}
    violations = []
    pieces = [_AffinePiece(base_triangle(cell)) for cell in partition.cells]

    for cell, piece in zip(partition.cells, pieces):
        for point in values:
            if cell.contains(point) and piece.evaluate(point, values) != values[point]:
                violations.append(f"heights are not affine on cell {cell} at {point}")

    for first, second, side in partition.adjacent_pairs():
        for a, b, piece in ((first, second, pieces[first]), (second, first, pieces[second])):
            for vertex in partition.cells[b]:
                if orientation(side[0], side[1], vertex) and piece.evaluate(vertex, values) >= values[vertex]:
                    violations.append(f"fold between {partition.cells[a]} and {partition.cells[b]} is not strictly convex at {vertex}")

    if not heights.is_integral:
        violations.append("heights are not all integers")
    elif lattice_points:
        for cell, piece in zip(partition.cells, pieces):
            for point in cell.lattice_points():
                if piece.evaluate(point, values).denominator != 1:
                    violations.append(f"induced height at lattice point {point} is not an integer")

    return violations


def check_convexifies(shape: Union[ConvexPartition, SignedTriangulation], heights: HeightFunction, lattice_points: bool = False) -> bool:
    return not convexity_violations(shape, heights, lattice_points=lattice_points)


def induced_lattice_heights(shape: Union[ConvexPartition, SignedTriangulation], heights: HeightFunction) -> HeightFunction:
    """Extend the heights to every lattice point of the domain through the affine piece of a cell containing it."""
    partition = as_partition(shape)
    values = {point: Fraction(heights[point]) for point in partition.points}
    induced = {}
    for cell in partition.cells:
        piece = _AffinePiece(base_triangle(cell))
        for point in cell.lattice_points():
            induced.setdefault(point, _normalize(piece.evaluate(point, values)))
    return HeightFunction(induced)


def find_convexifying_heights(shape: Union[ConvexPartition, SignedTriangulation]) -> Union[HeightFunction, Infeasible]:
    """
    Search for integer heights that are affine on each cell and strictly convex across every fold, by maximizing a common fold slack s <= 1 with an exact simplex.
    Three vertices of the first cell are pinned at height 0, after which convexity forces every height to be nonnegative.
    A zero optimum means no such function exists, and the LP duals are returned as the certificate.
    """
    partition = as_partition(shape)
    points = partition.points
    pinned = set(base_triangle(partition.cells[0]))
    free = [point for point in points if point not in pinned]
    column = {point: index for index, point in enumerate(free)}
    slack_column = len(free)

    rows: list[list[Fraction]] = []
    bounds: list[Fraction] = []
    names: list[str] = []

    def add_row(coefficients: Mapping[LatticePoint, Fraction], slack: int, bound: int, name: str) -> None:
        row = [Fraction(0)] * (len(free) + 1)
        for point, coefficient in coefficients.items():
            if point in column:
                row[column[point]] += coefficient
        row[slack_column] = Fraction(slack)
        rows.append(row)
        bounds.append(Fraction(bound))
        names.append(name)

    pieces = [_AffinePiece(base_triangle(cell)) for cell in partition.cells]

    for cell, piece in zip(partition.cells, pieces):
        for point in points:
            if point not in piece.base and cell.contains(point):
                difference = _combination(piece, point)
                add_row(difference, 0, 0, f"affine on {cell} at {point} (upper)")
                add_row({key: -value for key, value in difference.items()}, 0, 0, f"affine on {cell} at {point} (lower)")

    for first, second, side in partition.adjacent_pairs():
        for a, b in ((first, second), (second, first)):
            for vertex in partition.cells[b]:
                if orientation(side[0], side[1], vertex):
                    add_row(_combination(pieces[a], vertex), 1, 0, f"fold {partition.cells[a]} | {partition.cells[b]} at {vertex}")

    add_row({}, 1, 1, "slack bound")

    tableau = SimplexTableau(rows, bounds, [Fraction(0)] * len(free) + [Fraction(1)])
    status = tableau.bland_primal()
    logger.info(f"convexity LP: {len(rows)} constraints, {len(free) + 1} variables, status {status}, optimum {tableau.value}, {tableau.pivots} pivots")

    if status != Enums.Status.OPTIMAL:
        raise RuntimeError("The convexity LP is bounded by construction but the simplex reported it unbounded.")

    if tableau.value <= 0:
        duals = tableau.dual_solution()
        certificate = [(name, weight) for name, weight in zip(names, duals) if weight]
        return Infeasible(reason="no strictly convex height function exists", certificate=certificate)

    solution = tableau.primal_solution()
    rational = {point: Fraction(0) for point in pinned}
    rational.update({point: solution[column[point]] for point in free})

    scale = lcm(*(value.denominator for value in rational.values()))
    integral = {point: int(value * scale) for point, value in rational.items()}
    divisor = gcd(*integral.values()) or 1
    return HeightFunction({point: value // divisor for point, value in integral.items()})


def _combination(piece: _AffinePiece, point: LatticePoint) -> dict[LatticePoint, Fraction]:
    """Coefficients of 'affine extension at point minus height at point' over the height variables."""
    coefficients = {vertex: weight for vertex, weight in zip(piece.base, piece.weights(point))}
    coefficients[point] = coefficients.get(point, Fraction(0)) - 1
    return coefficients


def _shared_side(a: ConvexPolygon, b: ConvexPolygon) -> Optional[Tuple[LatticePoint, LatticePoint]]:
    for p, q in a.sides:
        for r, s in b.sides:
            if orientation(p, q, r) or orientation(p, q, s):
                continue
            direction = q - p
            low, high = sorted(((r - p).dot(direction), (s - p).dot(direction)))
            if min(high, direction.dot(direction)) - max(low, 0) > 0:
                return p, q
    return None


def _interiors_overlap(a: ConvexPolygon, b: ConvexPolygon) -> bool:
    for polygon, other in ((a, b), (b, a)):
        for p, q in polygon.sides:
            if all(orientation(p, q, vertex) <= 0 for vertex in other):
                return False
    return True


def _normalize(value: Fraction) -> Union[int, Fraction]:
    return int(value) if value.denominator == 1 else value


def _to_json_number(value: Union[int, Fraction]) -> Union[int, str]:
    value = Fraction(value)
    return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"

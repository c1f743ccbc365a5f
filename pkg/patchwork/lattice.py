from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

from subtypes import Enum

from .errors import InvalidInputError

RationalPoint = Tuple[Fraction, Fraction]


class Quadrant(Enum):
    """The four open quadrants Q_{εδ} in their canonical order, valued by their (ε, δ) reflection signs."""
    PLUS_PLUS, MINUS_PLUS, PLUS_MINUS, MINUS_MINUS = (1, 1), (-1, 1), (1, -1), (-1, -1)

    @property
    def signs(self) -> Tuple[int, int]:
        return self.value

    @property
    def label(self) -> str:
        return "".join("+" if sign > 0 else "-" for sign in self.value)

    def reflect(self, point: Any) -> Any:
        """Apply the reflection S_{εδ} to a lattice point or a rational point."""
        eps, delta = self.value
        if isinstance(point, LatticePoint):
            return LatticePoint(eps * point.i, delta * point.j)

        x, y = point
        return (eps * x, delta * y)

    @classmethod
    def of(cls, eps: int, delta: int) -> Quadrant:
        return cls((eps, delta))


@dataclass(frozen=True, order=True)
class LatticePoint:
    i: int
    j: int

    def __post_init__(self) -> None:
        if not isinstance(self.i, int) or not isinstance(self.j, int) or isinstance(self.i, bool) or isinstance(self.j, bool):
            raise TypeError(f"{type(self).__name__} coordinates must be of type 'int', not '{type(self.i).__name__}' and '{type(self.j).__name__}'.")

    def __repr__(self) -> str:
        return f"({self.i},{self.j})"

    def __iter__(self) -> Iterator[int]:
        return iter((self.i, self.j))

    def __add__(self, other: LatticePoint) -> LatticePoint:
        return LatticePoint(self.i + other.i, self.j + other.j)

    def __sub__(self, other: LatticePoint) -> LatticePoint:
        return LatticePoint(self.i - other.i, self.j - other.j)

    def __neg__(self) -> LatticePoint:
        return LatticePoint(-self.i, -self.j)

    def scaled(self, factor: int) -> LatticePoint:
        return LatticePoint(factor * self.i, factor * self.j)

    def dot(self, other: Any) -> Any:
        a, b = other
        return self.i * a + self.j * b

    def cross(self, other: LatticePoint) -> int:
        return self.i * other.j - self.j * other.i

    def as_rational(self) -> RationalPoint:
        return (Fraction(self.i), Fraction(self.j))

    def primitive(self) -> LatticePoint:
        divisor = gcd(abs(self.i), abs(self.j))
        if not divisor:
            raise InvalidInputError("the zero vector has no primitive direction")
        return LatticePoint(self.i // divisor, self.j // divisor)

    @classmethod
    def coerce(cls, value: Union[LatticePoint, Sequence[int]]) -> LatticePoint:
        if isinstance(value, cls):
            return value

        try:
            i, j = value
        except (TypeError, ValueError):
            raise TypeError(f"Cannot interpret object of type '{type(value).__name__}' as a {cls.__name__}.")

        return cls(int(i), int(j))


def lattice_length(p: LatticePoint, q: LatticePoint) -> int:
    return gcd(abs(q.i - p.i), abs(q.j - p.j))


def orientation(a: Any, b: Any, c: Any) -> Any:
    """Twice the signed area of the triangle abc. Positive for a counterclockwise turn."""
    (ax, ay), (bx, by), (cx, cy) = a, b, c
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def midpoint(p: Any, q: Any) -> RationalPoint:
    (px, py), (qx, qy) = p, q
    return (Fraction(px + qx, 2), Fraction(py + qy, 2))


def on_segment(point: Any, p: Any, q: Any) -> bool:
    """Whether the point lies on the closed segment pq (exact)."""
    if orientation(p, q, point):
        return False

    (x, y), (px, py), (qx, qy) = point, p, q
    return min(px, qx) <= x <= max(px, qx) and min(py, qy) <= y <= max(py, qy)


class ConvexPolygon:
    """
    A lattice polygon in strictly convex position with vertices in counterclockwise order.
    Points and segments are admitted as 1- and 2-vertex polygons. A segment has two sides, (p, q) and (q, p), one per coorientation.
    """

    def __init__(self, vertices: Iterable[Union[LatticePoint, Sequence[int]]]) -> None:
        self.vertices = tuple(LatticePoint.coerce(vertex) for vertex in vertices)
        self._validate()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(repr(vertex) for vertex in self.vertices)})"

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[LatticePoint]:
        return iter(self.vertices)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, ConvexPolygon) and self._canonical() == other._canonical()

    def __hash__(self) -> int:
        return hash(self._canonical())

    def __contains__(self, point: Any) -> bool:
        return self.contains(point)

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1

    @property
    def is_segment(self) -> bool:
        return len(self.vertices) == 2

    @property
    def sides(self) -> list[Tuple[LatticePoint, LatticePoint]]:
        if self.is_point:
            return []

        if self.is_segment:
            p, q = self.vertices
            return [(p, q), (q, p)]

        return [(vertex, self.vertices[(index + 1) % len(self.vertices)]) for index, vertex in enumerate(self.vertices)]

    @property
    def doubled_area(self) -> int:
        if len(self.vertices) < 3:
            return 0

        origin = self.vertices[0]
        return sum(orientation(origin, a, b) for a, b in zip(self.vertices[1:], self.vertices[2:]))

    @property
    def centroid(self) -> RationalPoint:
        """Vertex centroid, which lies in the relative interior."""
        count = len(self.vertices)
        return (Fraction(sum(vertex.i for vertex in self.vertices), count), Fraction(sum(vertex.j for vertex in self.vertices), count))

    @property
    def lattice_perimeter(self) -> int:
        if self.is_segment:
            return 2 * lattice_length(*self.vertices)
        return sum(lattice_length(p, q) for p, q in self.sides)

    def contains(self, point: Any, strict: bool = False) -> bool:
        if self.is_point:
            return not strict and tuple(point) == tuple(self.vertices[0])

        if self.is_segment:
            return not strict and on_segment(point, *self.vertices)

        turns = [orientation(p, q, point) for p, q in self.sides]
        return all(turn > 0 for turn in turns) if strict else all(turn >= 0 for turn in turns)

    def on_boundary(self, point: Any) -> bool:
        return any(on_segment(point, p, q) for p, q in self.sides)

    def side_containing(self, p: Any, q: Any) -> Optional[Tuple[LatticePoint, LatticePoint]]:
        """The side (as stored) whose closed segment contains both points, if any."""
        for side in self.sides:
            if on_segment(p, *side) and on_segment(q, *side):
                return side
        return None

    def lattice_points(self) -> list[LatticePoint]:
        xs, ys = [vertex.i for vertex in self.vertices], [vertex.j for vertex in self.vertices]
        return [LatticePoint(i, j) for i in range(min(xs), max(xs) + 1) for j in range(min(ys), max(ys) + 1) if self.contains((i, j))]

    def translated(self, offset: LatticePoint) -> ConvexPolygon:
        return type(self)([vertex + offset for vertex in self.vertices])

    def reflected(self, quadrant: Quadrant) -> ConvexPolygon:
        return newton_polygon([quadrant.reflect(vertex) for vertex in self.vertices])

    def _canonical(self) -> Tuple[LatticePoint, ...]:
        if self.is_segment:
            return tuple(sorted(self.vertices))

        start = self.vertices.index(min(self.vertices))
        return self.vertices[start:] + self.vertices[:start]

    def _validate(self) -> None:
        if not self.vertices:
            raise InvalidInputError("a polygon needs at least one vertex")

        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidInputError(f"repeated vertex in {self.vertices}")

        if len(self.vertices) >= 3:
            count = len(self.vertices)
            for index in range(count):
                if orientation(self.vertices[index], self.vertices[(index + 1) % count], self.vertices[(index + 2) % count]) <= 0:
                    raise InvalidInputError(f"vertices {self.vertices} are not in strictly convex counterclockwise position")

    @classmethod
    def degree_triangle(cls, degree: int) -> ConvexPolygon:
        """The triangle with vertices (0,0), (m,0), (0,m)."""
        if degree < 1:
            raise InvalidInputError(f"degree must be positive, not {degree}")
        return cls([(0, 0), (degree, 0), (0, degree)])


@dataclass(frozen=True)
class Ray:
    direction: LatticePoint
    anchor: RationalPoint

    def __post_init__(self) -> None:
        if (self.direction.i, self.direction.j) == (0, 0) or gcd(abs(self.direction.i), abs(self.direction.j)) != 1:
            raise InvalidInputError(f"ray direction {self.direction} is not a primitive nonzero vector")


def newton_polygon(support: Iterable[Union[LatticePoint, Sequence[int]]]) -> ConvexPolygon:
    """Exact convex hull of a finite set of lattice points (monotone chain). Collinear boundary points are dropped."""
    points = sorted({LatticePoint.coerce(point) for point in support})
    if not points:
        raise InvalidInputError("empty polynomial")

    if len(points) <= 2:
        return ConvexPolygon(points)

    def chain(ordered: Sequence[LatticePoint]) -> list[LatticePoint]:
        hull: list[LatticePoint] = []
        for point in ordered:
            while len(hull) >= 2 and orientation(hull[-2], hull[-1], point) <= 0:
                hull.pop()
            hull.append(point)
        return hull

    lower, upper = chain(points), chain(list(reversed(points)))
    hull = lower[:-1] + upper[:-1]

    if len(hull) == 2 or all(orientation(hull[0], hull[1], point) == 0 for point in hull):
        return ConvexPolygon([points[0], points[-1]])

    return ConvexPolygon(hull)


def outward_normal_rays(polygon: ConvexPolygon) -> list[Tuple[Tuple[LatticePoint, LatticePoint], Ray]]:
    """One ray per side: the primitive outward normal of the side, anchored at the side's midpoint."""
    if polygon.is_point:
        raise InvalidInputError("no sides")

    rays = []
    for p, q in polygon.sides:
        direction = q - p
        rays.append(((p, q), Ray(direction=LatticePoint(direction.j, -direction.i).primitive(), anchor=midpoint(p, q))))

    return rays


@dataclass
class TriangulationReport:
    valid: bool
    primitive: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict[str, Any]:
        return {"valid": self.valid, "primitive": self.primitive, "violations": list(self.violations)}


class SignedTriangulation:
    """A lattice triangulation of a convex polygon with a sign attached to each vertex. Triangles are normalized to counterclockwise order."""

    def __init__(self, domain: ConvexPolygon, vertices: Iterable[Union[LatticePoint, Sequence[int]]], triangles: Iterable[Sequence[int]], signs: Union[Mapping[Any, int], Sequence[int]]) -> None:
        self.domain = domain
        self.vertices = tuple(LatticePoint.coerce(vertex) for vertex in vertices)
        self.triangles = tuple(self._counterclockwise(tuple(int(index) for index in triangle)) for triangle in triangles)

        if isinstance(signs, Mapping):
            self.signs = {LatticePoint.coerce(point): int(sign) for point, sign in signs.items()}
        else:
            signs = list(signs)
            if len(signs) != len(self.vertices):
                raise InvalidInputError(f"expected {len(self.vertices)} signs, got {len(signs)}")
            self.signs = {vertex: int(sign) for vertex, sign in zip(self.vertices, signs)}

    def __repr__(self) -> str:
        return f"{type(self).__name__}(domain={self.domain}, vertices={len(self.vertices)}, triangles={len(self.triangles)})"

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, SignedTriangulation) and (self.domain, self.cells(), self.signs) == (other.domain, other.cells(), other.signs)

    def sign(self, point: Union[LatticePoint, Sequence[int]]) -> int:
        return self.signs[LatticePoint.coerce(point)]

    def triangle_points(self, triangle: Sequence[int]) -> Tuple[LatticePoint, LatticePoint, LatticePoint]:
        a, b, c = triangle
        return self.vertices[a], self.vertices[b], self.vertices[c]

    def cells(self) -> frozenset[frozenset[LatticePoint]]:
        """The triangles as vertex sets, independent of index order."""
        return frozenset(frozenset(self.triangle_points(triangle)) for triangle in self.triangles)

    def edges(self) -> set[frozenset[LatticePoint]]:
        return {frozenset((p, q)) for triangle in self.triangles for p, q in _directed_edges(self.triangle_points(triangle))}

    def with_sign(self, point: Union[LatticePoint, Sequence[int]], sign: int) -> SignedTriangulation:
        signs = dict(self.signs)
        signs[LatticePoint.coerce(point)] = sign
        return type(self)(self.domain, self.vertices, self.triangles, signs)

    def with_flipped_signs(self) -> SignedTriangulation:
        return type(self)(self.domain, self.vertices, self.triangles, {point: -sign for point, sign in self.signs.items()})

    def with_triangles(self, triangles: Iterable[Sequence[int]]) -> SignedTriangulation:
        return type(self)(self.domain, self.vertices, triangles, self.signs)

    def _counterclockwise(self, triangle: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(triangle) != 3:
            raise InvalidInputError(f"triangle {triangle} does not have three vertex indices")

        if any(not 0 <= index < len(self.vertices) for index in triangle):
            return triangle

        a, b, c = triangle
        return (a, c, b) if orientation(self.vertices[a], self.vertices[b], self.vertices[c]) < 0 else triangle

    @classmethod
    def standard(cls, degree: int, signs: Union[Mapping[Any, int], Any]) -> SignedTriangulation:
        """
        The primitive triangulation of the degree triangle cut by the lines i = const, j = const and i + j = const.
        'signs' is either a mapping over all lattice points or a callable (i, j) -> ±1.
        """
        domain = ConvexPolygon.degree_triangle(degree)
        vertices = [LatticePoint(i, j) for i in range(degree + 1) for j in range(degree + 1 - i)]
        index = {vertex: position for position, vertex in enumerate(vertices)}

        triangles = []
        for i in range(degree):
            for j in range(degree - i):
                triangles.append((index[LatticePoint(i, j)], index[LatticePoint(i + 1, j)], index[LatticePoint(i, j + 1)]))
                if i + j <= degree - 2:
                    triangles.append((index[LatticePoint(i + 1, j)], index[LatticePoint(i + 1, j + 1)], index[LatticePoint(i, j + 1)]))

        sign_map = signs if isinstance(signs, Mapping) else {vertex: signs(vertex.i, vertex.j) for vertex in vertices}
        return cls(domain, vertices, triangles, sign_map)


def _directed_edges(points: Sequence[LatticePoint]) -> list[Tuple[LatticePoint, LatticePoint]]:
    return [(points[index], points[(index + 1) % len(points)]) for index in range(len(points))]


def validate_triangulation(triangulation: SignedTriangulation) -> TriangulationReport:
    """Check every structural invariant of a signed triangulation and report all violations found, never raising."""
    violations: list[str] = []
    domain, vertices = triangulation.domain, triangulation.vertices

    if len(set(vertices)) != len(vertices):
        violations.append("duplicate vertices")

    if len(domain) < 3:
        violations.append("domain is not two-dimensional")

    for vertex in vertices:
        if not domain.contains(vertex):
            violations.append(f"vertex {vertex} lies outside the domain")

    area_sum, primitive, directed = 0, True, {}
    for triangle in triangulation.triangles:
        if any(not 0 <= index < len(vertices) for index in triangle):
            violations.append(f"triangle {triangle} refers to a missing vertex")
            primitive = False
            continue

        points = triangulation.triangle_points(triangle)
        doubled = orientation(*points)
        if doubled < 1:
            violations.append(f"triangle {points} is degenerate")
            primitive = False
            continue

        area_sum += doubled
        primitive = primitive and doubled == 1
        for edge in _directed_edges(points):
            directed[edge] = directed.get(edge, 0) + 1

    if area_sum != domain.doubled_area:
        violations.append("area sum mismatch")

    boundary_length = 0
    for (p, q), count in directed.items():
        if count > 1:
            violations.append(f"edge {p}-{q} is used twice with the same orientation")
        reverse = directed.get((q, p), 0)
        if not reverse:
            if domain.side_containing(p, q) is None:
                violations.append(f"edge {p}-{q} is used by a single triangle but is not on the domain boundary")
            else:
                boundary_length += lattice_length(p, q)

    if len(domain) >= 3 and boundary_length != domain.lattice_perimeter:
        violations.append("boundary edges do not tile the domain boundary")

    used = {vertices[index] for triangle in triangulation.triangles for index in triangle if 0 <= index < len(vertices)}
    for vertex in vertices:
        if vertex not in used:
            violations.append(f"vertex {vertex} is not used by any triangle")

    if set(triangulation.signs) != set(vertices):
        violations.append("signs are not defined exactly on the vertices")

    if any(sign not in (1, -1) for sign in triangulation.signs.values()):
        violations.append("signs must be +1 or -1")

    valid = not violations
    return TriangulationReport(valid=valid, primitive=valid and primitive, violations=violations)

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Any, Iterable, Iterator, Optional, Sequence, Tuple

import numpy as np

from ..errors import InvalidInputError, SingularCurveError
from ..lattice import RationalPoint, orientation, on_segment

logger = logging.getLogger(__name__)

Segment = Tuple[RationalPoint, RationalPoint]
LiftedSegment = Tuple[int, RationalPoint, RationalPoint]

UNION, OPEN, CLOSE = " ∪ ", "⟨", "⟩"


@dataclass(frozen=True)
class OvalNode:
    """An oval together with the ovals immediately inside it."""
    children: Tuple[OvalNode, ...] = ()

    @property
    def size(self) -> int:
        return 1 + sum(child.size for child in self.children)

    @property
    def height(self) -> int:
        return 1 + max((child.height for child in self.children), default=0)

    @property
    def encoding(self) -> str:
        return f"1{OPEN}{_encode_forest(self.children)}{CLOSE}" if self.children else "1"

    def sort_key(self) -> Tuple[int, int, str]:
        return (self.height, self.size, self.encoding)


def _encode_forest(nodes: Sequence[OvalNode]) -> str:
    empty = sum(1 for node in nodes if not node.children)
    nested = sorted((node for node in nodes if node.children), key=OvalNode.sort_key)
    return UNION.join(([str(empty)] if empty else []) + [node.encoding for node in nested])


@dataclass(frozen=True)
class IsotopyCode:
    """
    The isotopy type of a curve in the real projective plane: at most one one-sided component plus a forest of ovals ordered by immediate nesting.
    The canonical encoding lists the empty ovals of each level as a count, then the nonempty ovals as '1⟨...⟩', joined by ' ∪ ', with a leading 'J' for the one-sided component.
    """
    one_sided: int = 0
    ovals: Tuple[OvalNode, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.one_sided not in (0, 1):
            raise InvalidInputError(f"a curve in the projective plane has at most one one-sided component, not {self.one_sided}")

    def __str__(self) -> str:
        return self.encoding

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, IsotopyCode) and self.encoding == other.encoding

    def __hash__(self) -> int:
        return hash(self.encoding)

    @property
    def encoding(self) -> str:
        forest = _encode_forest(self.ovals)
        if self.one_sided:
            return f"J{UNION}{forest}" if forest else "J"
        return forest or "0"

    @property
    def oval_count(self) -> int:
        return sum(node.size for node in self.ovals)

    @property
    def components(self) -> int:
        return self.one_sided + self.oval_count

    def depths(self) -> list[int]:
        """Number of ovals containing each oval, in depth-first order."""
        def walk(nodes: Sequence[OvalNode], depth: int) -> Iterator[int]:
            for node in nodes:
                yield depth
                yield from walk(node.children, depth + 1)

        return list(walk(self.ovals, 0))

    def to_json(self) -> dict[str, Any]:
        return {"encoding": self.encoding, "one_sided": self.one_sided, "components": self.components, "ovals": self.oval_count}

    @classmethod
    def from_encoding(cls, encoding: str) -> IsotopyCode:
        """Parse a canonical encoding. ASCII stand-ins '<', '>' and 'u' are accepted for the brackets and the union sign."""
        tokens = _TOKEN.findall(encoding.replace("<", OPEN).replace(">", CLOSE).replace("u", "∪"))
        if "".join(tokens) != re.sub(r"\s+", "", encoding.replace("<", OPEN).replace(">", CLOSE).replace("u", "∪")):
            raise InvalidInputError(f"malformed isotopy code {encoding!r}")

        one_sided = 0
        if tokens[:1] == ["J"]:
            one_sided, tokens = 1, tokens[2:] if tokens[1:2] == ["∪"] else tokens[1:]

        if tokens in ([], ["0"]):
            return cls(one_sided=one_sided)

        parser = _ForestParser(tokens, encoding)
        nodes = parser.forest()
        if parser.position != len(tokens):
            raise InvalidInputError(f"unexpected trailing text in isotopy code {encoding!r}")
        return cls(one_sided=one_sided, ovals=tuple(nodes))


_TOKEN = re.compile(rf"\d+|{OPEN}|{CLOSE}|∪|J")


class _ForestParser:
    def __init__(self, tokens: Sequence[str], source: str) -> None:
        self.tokens, self.source, self.position = list(tokens), source, 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def take(self) -> str:
        if (token := self.peek()) is None:
            raise InvalidInputError(f"isotopy code {self.source!r} ends unexpectedly")
        self.position += 1
        return token

    def forest(self) -> list[OvalNode]:
        nodes = self.term()
        while self.peek() == "∪":
            self.take()
            nodes += self.term()
        return nodes

    def term(self) -> list[OvalNode]:
        token = self.take()
        if not token.isdigit():
            raise InvalidInputError(f"expected a count in isotopy code {self.source!r}, found {token!r}")

        if self.peek() != OPEN:
            return [OvalNode() for _ in range(int(token))]

        if token != "1":
            raise InvalidInputError(f"only a single oval may enclose others in {self.source!r}")

        self.take()
        children = self.forest()
        if self.take() != CLOSE:
            raise InvalidInputError(f"unbalanced brackets in isotopy code {self.source!r}")
        return [OvalNode(tuple(children))]


class CurveClassifier:
    """
    Computes the isotopy code of a closed piecewise-linear curve drawn in a disk model of the projective plane.

    The carrier is a polygon, centrally symmetric and star-shaped with respect to a neighbourhood of the origin, whose boundary points are identified with their antipodes.
    Components come from endpoint matching. A component is one-sided exactly when it crosses the boundary an odd number of times.
    Nesting is read off the two-sheeted cover by a sphere made of two copies of the carrier glued along the boundary: an oval B lifts to a circle B',
    and A lies inside B exactly when a lift of A lies on the side of B' away from the other lift of B. Sides are compared by crossing parity along
    exact, generic polygonal paths to a fixed base point.
    """

    SAMPLE_FRACTIONS = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4), Fraction(3, 4), Fraction(1, 5), Fraction(2, 5), Fraction(3, 5), Fraction(4, 5))
    KERNEL_OFFSETS = ((1, 2), (2, -3), (-3, 1), (3, 5), (-5, -2), (4, -7), (-7, 6), (5, 3))

    def __init__(self, boundary: Sequence[RationalPoint], segments: Iterable[Segment]) -> None:
        self.boundary = [(Fraction(x), Fraction(y)) for x, y in boundary]
        self.segments = [((Fraction(p[0]), Fraction(p[1])), (Fraction(q[0]), Fraction(q[1]))) for p, q in segments if tuple(p) != tuple(q)]
        self.edges = [(self.boundary[index], self.boundary[(index + 1) % len(self.boundary)]) for index in range(len(self.boundary))]
        self._validate_carrier()
        self._boundary_cache: dict[RationalPoint, bool] = {}

    def __repr__(self) -> str:
        return f"{type(self).__name__}(boundary={len(self.boundary)} vertices, segments={len(self.segments)})"

    def on_boundary(self, point: RationalPoint) -> bool:
        if (cached := self._boundary_cache.get(point)) is None:
            cached = self._boundary_cache[point] = any(on_segment(point, p, q) for p, q in self.edges)
        return cached

    def node(self, point: RationalPoint) -> RationalPoint:
        """Canonical representative of a point of the quotient: boundary points are paired with their antipodes."""
        return max(point, (-point[0], -point[1])) if self.on_boundary(point) else point

    def components(self) -> list[list[int]]:
        """Segment indices of each connected component of the quotient curve, after checking that every node has degree two."""
        nodes = [(self.node(p), self.node(q)) for p, q in self.segments]
        parent: dict[RationalPoint, RationalPoint] = {}

        def find(item: RationalPoint) -> RationalPoint:
            parent.setdefault(item, item)
            while parent[item] != item:
                parent[item] = parent[parent[item]]
                item = parent[item]
            return item

        degree: dict[RationalPoint, int] = {}
        for a, b in nodes:
            for node in (a, b):
                degree[node] = degree.get(node, 0) + 1
            parent[find(a)] = find(b)

        if bad := sorted(node for node, count in degree.items() if count != 2):
            raise SingularCurveError(f"curve is singular: {len(bad)} nodes do not have exactly two incident segments", [f"node ({node[0]}, {node[1]}) has degree {degree[node]}" for node in bad[:20]])

        groups: dict[RationalPoint, list[int]] = {}
        for index, (a, _) in enumerate(nodes):
            groups.setdefault(find(a), []).append(index)

        return sorted(groups.values(), key=min)

    def classify(self) -> IsotopyCode:
        components = self.components()
        crossings = [sum(1 for index in indices for point in self.segments[index] if self.on_boundary(point)) // 2 for indices in components]
        one_sided = [indices for indices, count in zip(components, crossings) if count % 2]
        ovals = [indices for indices, count in zip(components, crossings) if not count % 2]

        if len(one_sided) > 1:
            raise SingularCurveError(f"found {len(one_sided)} one-sided components, which cannot be disjoint in the projective plane")

        lifts = [self.lift(indices) for indices in ovals]
        scale = self._scale(lifts)
        inside = [[False] * len(ovals) for _ in ovals]

        for b, lift in enumerate(lifts):
            tester = _SideTester(self, lift, scale)
            for a, other in enumerate(lifts):
                if a != b:
                    inside[a][b] = tester.encloses(other)

        depth = [sum(row) for row in inside]
        children: dict[Optional[int], list[int]] = {}
        for a in range(len(ovals)):
            containers = [b for b in range(len(ovals)) if inside[a][b]]
            children.setdefault(max(containers, key=lambda b: depth[b]) if containers else None, []).append(a)

        def build(index: Optional[int]) -> Tuple[OvalNode, ...]:
            return tuple(OvalNode(build(child)) for child in children.get(index, []))

        code = IsotopyCode(one_sided=len(one_sided), ovals=build(None))
        logger.info(f"classified {len(self.segments)} segments into {code.components} components: {code.encoding}")
        return code

    def lift(self, indices: Sequence[int]) -> list[LiftedSegment]:
        """
        Lift a component to the sphere by walking it once per sheet change, as (sheet, start, end) triples in drawing coordinates.
        Sheet -1 is drawn through the antipodal map, so crossing the boundary at q continues from -q of the quotient at the same drawn point.
        """
        incident: dict[RationalPoint, list[Tuple[int, int]]] = {}
        for index in indices:
            for end, point in enumerate(self.segments[index]):
                incident.setdefault(point, []).append((index, end))

        start = (indices[0], 0, 1)
        index, end, sheet = start
        lifted: list[LiftedSegment] = []

        for _ in range(2 * len(indices)):
            p, q = self.segments[index][end], self.segments[index][1 - end]
            lifted.append((sheet, (sheet * p[0], sheet * p[1]), (sheet * q[0], sheet * q[1])))

            if self.on_boundary(q):
                sheet, following = -sheet, incident[(-q[0], -q[1])]
            else:
                following = [(other, other_end) for other, other_end in incident[q] if (other, other_end) != (index, 1 - end)]

            index, end = following[0]
            if (index, end, sheet) == start:
                return lifted

        raise SingularCurveError("component does not close up on the sphere")

    def kernel_points(self) -> list[RationalPoint]:
        """Points near the origin from which the whole carrier is visible, on a dyadic grid fine enough to stay inside the kernel."""
        radius = min(Fraction(orientation(p, q, (0, 0))) / (abs(q[0] - p[0]) + abs(q[1] - p[1])) for p, q in self.edges)
        if radius <= 0:
            return []

        reach = max(max(abs(u), abs(v)) for u, v in self.KERNEL_OFFSETS)
        denominator = 1
        while Fraction(reach, denominator) >= radius:
            denominator *= 2

        return [(Fraction(u, denominator), Fraction(v, denominator)) for u, v in self.KERNEL_OFFSETS]

    def boundary_points(self) -> Iterator[RationalPoint]:
        for fraction in self.SAMPLE_FRACTIONS[1:]:
            for p, q in self.edges:
                yield (p[0] + fraction * (q[0] - p[0]), p[1] + fraction * (q[1] - p[1]))

    def _scale(self, lifts: Sequence[Sequence[LiftedSegment]]) -> int:
        denominators = {value.denominator for point in self.boundary for value in point}
        denominators |= {value.denominator for lift in lifts for _, p, q in lift for value in (*p, *q)}
        denominators |= {value.denominator for point in self.kernel_points() for value in point}
        denominators |= {fraction.denominator for fraction in self.SAMPLE_FRACTIONS}
        return lcm(*denominators)

    def _validate_carrier(self) -> None:
        if len(self.boundary) < 4 or len(self.boundary) % 2:
            raise InvalidInputError("the carrier must be a centrally symmetric polygon")

        half = len(self.boundary) // 2
        for index in range(half):
            x, y = self.boundary[index]
            if self.boundary[index + half] != (-x, -y):
                raise InvalidInputError("the carrier must be centrally symmetric")

        if not self.kernel_points():
            raise InvalidInputError("the carrier is not star-shaped around a neighbourhood of the origin")


class _SideTester:
    """Side-of-loop queries on the sphere for one lifted oval, using exact integer orientation tests on coordinates scaled to a common denominator."""

    def __init__(self, classifier: CurveClassifier, lift: Sequence[LiftedSegment], scale: int) -> None:
        self.classifier, self.lift, self.scale = classifier, lift, scale
        self.kernel = classifier.kernel_points()
        limit = max(max(abs(x), abs(y)) for x, y in classifier.boundary) * scale * 2
        self.dtype = np.int64 if limit < 2 ** 31 else object
        self.sheets = {sheet: self._array([(p, q) for s, p, q in lift if s == sheet]) for sheet in (1, -1)}
        self.route = self._choose_route()
        self.reference = self._reference()

    def encloses(self, lift: Sequence[LiftedSegment]) -> bool:
        for sheet, point in self._samples(lift):
            try:
                first, second = self.parity(sheet, point), self.parity(-sheet, (-point[0], -point[1]))
            except _Degenerate:
                continue
            return first != self.reference or second != self.reference
        raise SingularCurveError("could not find a generic path for a nesting query")

    def parity(self, sheet: int, point: RationalPoint) -> int:
        kernel, boundary, base = self.route
        if sheet == -1:
            return self._crossings(-1, point, base) % 2
        return (self._crossings(1, point, kernel) + self._crossings(1, kernel, boundary) + self._crossings(-1, boundary, base)) % 2

    def _reference(self) -> int:
        opposite = [(-sheet, (-p[0], -p[1]), (-q[0], -q[1])) for sheet, p, q in self.lift]
        for sheet, point in self._samples(opposite):
            try:
                return self.parity(sheet, point)
            except _Degenerate:
                continue
        raise SingularCurveError("could not find a generic reference point on the opposite lift")

    def _samples(self, lift: Sequence[LiftedSegment]) -> Iterator[Tuple[int, RationalPoint]]:
        for fraction in CurveClassifier.SAMPLE_FRACTIONS:
            for sheet, p, q in lift:
                yield sheet, (p[0] + fraction * (q[0] - p[0]), p[1] + fraction * (q[1] - p[1]))

    def _choose_route(self) -> Tuple[RationalPoint, RationalPoint, RationalPoint]:
        for kernel, base in product(self.kernel, repeat=2):
            for boundary in self.classifier.boundary_points():
                try:
                    self._crossings(1, kernel, boundary)
                    self._crossings(-1, boundary, base)
                except _Degenerate:
                    continue
                return kernel, boundary, base
        raise SingularCurveError("could not find a generic base route for nesting queries")

    def _array(self, segments: Sequence[Segment]) -> np.ndarray:
        return np.array([[int(value * self.scale) for value in (*p, *q)] for p, q in segments], dtype=self.dtype).reshape(-1, 4)

    def _crossings(self, sheet: int, start: RationalPoint, end: RationalPoint) -> int:
        segments = self.sheets[sheet]
        if not len(segments):
            return 0

        ux, uy, vx, vy = (int(value * self.scale) for value in (*start, *end))
        x1, y1, x2, y2 = segments[:, 0], segments[:, 1], segments[:, 2], segments[:, 3]

        o1 = (vx - ux) * (y1 - uy) - (vy - uy) * (x1 - ux)
        o2 = (vx - ux) * (y2 - uy) - (vy - uy) * (x2 - ux)
        o3 = (x2 - x1) * (uy - y1) - (y2 - y1) * (ux - x1)
        o4 = (x2 - x1) * (vy - y1) - (y2 - y1) * (vx - x1)

        touching = ((o1 == 0) & _within(x1, y1, ux, uy, vx, vy)) | ((o2 == 0) & _within(x2, y2, ux, uy, vx, vy))
        touching |= ((o3 == 0) & _within(ux, uy, x1, y1, x2, y2)) | ((o4 == 0) & _within(vx, vy, x1, y1, x2, y2))
        if np.any(touching):
            raise _Degenerate()

        s1, s2, s3, s4 = (np.sign(value).astype(np.int64) for value in (o1, o2, o3, o4))
        return int(np.count_nonzero((s1 * s2 < 0) & (s3 * s4 < 0)))


class _Degenerate(Exception):
    pass


def _within(px: Any, py: Any, ax: Any, ay: Any, bx: Any, by: Any) -> Any:
    return (np.minimum(ax, bx) <= px) & (px <= np.maximum(ax, bx)) & (np.minimum(ay, by) <= py) & (py <= np.maximum(ay, by))


def classify_curve(boundary: Sequence[RationalPoint], segments: Iterable[Segment]) -> IsotopyCode:
    return CurveClassifier(boundary, segments).classify()


def harnack_bound(degree: int) -> int:
    """Largest number of components of a nonsingular real plane curve of the given degree."""
    return (degree - 1) * (degree - 2) // 2 + 1

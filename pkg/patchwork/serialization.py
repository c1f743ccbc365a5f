from __future__ import annotations

import json
import logging
import os
import sys
from fractions import Fraction
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

from pathmagic import File, PathLike
from subtypes import Dict

from .charts import chart_of_triangulation, projective_topology
from .convexity import HeightFunction, Infeasible, check_convexifies, convexity_violations, find_convexifying_heights
from .errors import InvalidInputError, NotConvexError
from .lattice import ConvexPolygon, LatticePoint, SignedTriangulation, validate_triangulation
from .polyval import DEFAULT_SCHEDULE, NumericReport, verify_patchwork
from .tcurve import PLCurve, TCurve, harnack_bound

logger = logging.getLogger(__name__)

VERSION = 1
STDIN = "-"

Number = Union[int, Fraction]


class PatchworkProblem:
    """
    The initial data of combinatorial patchworking as stored on disk: a degree, the vertices of a triangulation with their signs, its
    triangles as vertex index triples, and optionally integer heights parallel to the vertices. The domain defaults to the triangle of
    the degree and may be given explicitly for families whose Newton polygon is smaller.
    """

    def __init__(self, degree: int, vertices: Iterable[Any], triangles: Iterable[Sequence[int]], signs: Iterable[int], heights: Optional[Iterable[Number]] = None,
                 name: str = None, notes: str = None, domain: Optional[Iterable[Any]] = None, metadata: Mapping[str, Any] = None) -> None:
        self.degree = degree
        self.vertices = [LatticePoint.coerce(vertex) for vertex in vertices]
        self.triangles = [tuple(int(index) for index in triangle) for triangle in triangles]
        self.signs = [int(sign) for sign in signs]
        self.heights = None if heights is None else [Fraction(value) for value in heights]
        self.name, self.notes = name, notes
        self.metadata = Dict(metadata or {})
        self._domain = None if domain is None else ConvexPolygon(domain)
        self._validate()

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r}, degree={self.degree}, vertices={len(self.vertices)}, triangles={len(self.triangles)})"

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, PatchworkProblem) and self.to_json() == other.to_json()

    @property
    def domain(self) -> ConvexPolygon:
        return self._domain if self._domain is not None else ConvexPolygon.degree_triangle(self.degree)

    def triangulation(self) -> SignedTriangulation:
        return SignedTriangulation(self.domain, self.vertices, self.triangles, self.signs)

    def height_function(self) -> Optional[HeightFunction]:
        return None if self.heights is None else HeightFunction(zip(self.vertices, self.heights))

    def with_heights(self, heights: Union[HeightFunction, Iterable[Number], None]) -> PatchworkProblem:
        values = [heights[vertex] for vertex in self.vertices] if isinstance(heights, HeightFunction) else heights
        return type(self)(self.degree, self.vertices, self.triangles, self.signs, heights=values, name=self.name, notes=self.notes, domain=self._domain, metadata=self.metadata)

    def with_signs(self, signs: Iterable[int]) -> PatchworkProblem:
        return type(self)(self.degree, self.vertices, self.triangles, signs, heights=self.heights, name=self.name, notes=self.notes, domain=self._domain, metadata=self.metadata)

    def to_json(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"v": VERSION, "degree": self.degree}
        if self._domain is not None:
            payload["domain"] = [[vertex.i, vertex.j] for vertex in self._domain]
        payload.update(
            vertices=[[vertex.i, vertex.j] for vertex in self.vertices],
            triangles=[list(triangle) for triangle in self.triangles],
            signs=list(self.signs),
        )
        if self.heights is not None:
            payload["heights"] = [encode_number(value) for value in self.heights]
        metadata = {key: value for key, value in (("name", self.name), ("notes", self.notes)) if value is not None}
        if metadata := {**metadata, **self.metadata}:
            payload["metadata"] = metadata
        return payload

    def dumps(self) -> str:
        return dumps(self.to_json())

    def save(self, path: PathLike) -> File:
        return write_json(self.to_json(), path)

    @classmethod
    def from_json(cls, payload: Mapping[str, Any]) -> PatchworkProblem:
        if not isinstance(payload, Mapping):
            raise InvalidInputError(f"a problem must be a JSON object, not {type(payload).__name__}")

        payload = Dict(payload)
        if (version := payload.get("v", VERSION)) != VERSION:
            raise InvalidInputError(f"unsupported problem version {version!r}, expected {VERSION}")

        if missing := [key for key in ("degree", "vertices", "triangles", "signs") if key not in payload]:
            raise InvalidInputError("malformed problem", [f"missing field {key!r}" for key in missing])

        metadata = payload.get("metadata") or {}
        if not isinstance(metadata, Mapping):
            raise InvalidInputError(f"metadata must be a JSON object, not {type(metadata).__name__}")

        try:
            return cls(
                degree=payload.degree, vertices=payload.vertices, triangles=payload.triangles, signs=payload.signs,
                heights=None if payload.get("heights") is None else [decode_number(value) for value in payload.heights],
                name=metadata.get("name"), notes=metadata.get("notes"), domain=payload.get("domain"),
                metadata={key: value for key, value in metadata.items() if key not in ("name", "notes")},
            )
        except (TypeError, ValueError) as ex:
            if isinstance(ex, InvalidInputError):
                raise
            raise InvalidInputError("malformed problem", [str(ex)]) from ex

    @classmethod
    def loads(cls, text: str) -> PatchworkProblem:
        return cls.from_json(loads(text))

    @classmethod
    def load(cls, source: Union[PathLike, str]) -> PatchworkProblem:
        return cls.from_json(read_json(source))

    @classmethod
    def from_triangulation(cls, triangulation: SignedTriangulation, heights: Optional[HeightFunction] = None, name: str = None, notes: str = None) -> PatchworkProblem:
        degree = max(max(vertex.i + vertex.j for vertex in triangulation.domain), 1)
        domain = None if triangulation.domain == ConvexPolygon.degree_triangle(degree) else triangulation.domain
        return cls(
            degree=degree, vertices=triangulation.vertices, triangles=triangulation.triangles, signs=[triangulation.sign(vertex) for vertex in triangulation.vertices],
            heights=None if heights is None else [heights[vertex] for vertex in triangulation.vertices], name=name, notes=notes, domain=None if domain is None else domain.vertices,
        )

    def _validate(self) -> None:
        if not isinstance(self.degree, int) or isinstance(self.degree, bool) or self.degree < 1:
            raise InvalidInputError(f"the degree must be a positive integer, not {self.degree!r}")

        violations = []
        if len(self.signs) != len(self.vertices):
            violations.append(f"{len(self.signs)} signs for {len(self.vertices)} vertices")
        if self.heights is not None and len(self.heights) != len(self.vertices):
            violations.append(f"{len(self.heights)} heights for {len(self.vertices)} vertices")
        if any(sign not in (1, -1) for sign in self.signs):
            violations.append("signs must be +1 or -1")

        triangle = ConvexPolygon.degree_triangle(self.degree)
        violations += [f"vertex {vertex} lies outside the triangle of degree {self.degree}" for vertex in self.vertices if not triangle.contains(vertex)]
        if self._domain is not None:
            violations += [f"domain vertex {vertex} lies outside the triangle of degree {self.degree}" for vertex in self._domain if not triangle.contains(vertex)]

        if violations:
            raise InvalidInputError("malformed problem", violations)


def build_report(problem: PatchworkProblem) -> dict[str, Any]:
    """Run the combinatorial pipeline on a problem and collect what a build reports: the code, its components and the curve as drawn."""
    triangulation = problem.triangulation()
    validity = validate_triangulation(triangulation)
    if not validity:
        raise InvalidInputError("invalid triangulation", validity.violations)

    if problem.domain == ConvexPolygon.degree_triangle(problem.degree):
        tcurve = TCurve(triangulation)
        code, curve, carrier = tcurve.code, tcurve.curve, tcurve.quotient.carrier
    else:
        chart = chart_of_triangulation(triangulation)
        glued = projective_topology(chart)
        code, curve, carrier = glued.code, PLCurve(tuple(chart.drawn())), glued.boundary

    report: dict[str, Any] = {
        "v": VERSION,
        "name": problem.name,
        "degree": problem.degree,
        "primitive": validity.primitive,
        "isotopy_code": code.to_json(),
        "components": code.components,
        "harnack_bound": harnack_bound(problem.degree),
        "is_m_curve": code.components == harnack_bound(problem.degree),
        "curve": curve.to_json(),
        "carrier": [[encode_number(value) for value in point] for point in carrier],
    }
    if (heights := problem.height_function()) is not None:
        report["convex"] = check_convexifies(triangulation, heights)

    logger.info(f"built {problem}: {code.encoding}")
    return report


def convexify_report(problem: PatchworkProblem) -> Union[dict[str, Any], Infeasible]:
    """
    Check the heights of a problem, or search for integer heights when it has none or its own fail. The report carries the heights that
    convexify and the violations of the given ones, if any. An 'Infeasible' comes back when no convex lift exists.
    """
    triangulation = problem.triangulation()
    violations = [] if (given := problem.height_function()) is None else convexity_violations(triangulation, given)

    if given is not None and not violations:
        heights = given
    elif isinstance(found := find_convexifying_heights(triangulation), Infeasible):
        logger.info(f"{problem} admits no convex lift: {found.reason}")
        return found
    else:
        heights = found

    return {
        "v": VERSION,
        "name": problem.name,
        "given": given is not None,
        "violations": violations,
        "heights": [encode_number(heights[vertex]) for vertex in problem.vertices],
    }


def verify_problem(problem: PatchworkProblem, schedule: Sequence[Any] = None, resolution: int = 512, window: Optional[float] = None) -> NumericReport:
    """Numerically verify the patchwork of a problem, using its heights or, failing those, heights found for it."""
    triangulation = problem.triangulation()
    if (heights := problem.height_function()) is None:
        if isinstance(heights := find_convexifying_heights(triangulation), Infeasible):
            raise NotConvexError("no convexifying heights exist", [heights.reason])

    return verify_patchwork(triangulation, heights, schedule=DEFAULT_SCHEDULE if schedule is None else schedule, resolution=resolution, window=window)


def halving_schedule(start: Any = Fraction(1, 2), steps: int = 12) -> list[Fraction]:
    """The values start, start/2, start/4, ... of t, 'steps' of them."""
    start = decode_number(start) if isinstance(start, str) else Fraction(start)
    if not 0 < start < 1 or steps < 1:
        raise InvalidInputError(f"a schedule needs 0 < t < 1 and at least one step, not t={start} with {steps} steps")
    return [start / 2 ** power for power in range(steps)]


def encode_number(value: Number) -> Union[int, str]:
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def decode_number(value: Any) -> Fraction:
    """Integers and 'p/q' strings. Floats are refused so that nothing inexact enters the pipeline."""
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidInputError(f"expected an integer or a 'p/q' string, not {value!r}")

    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as ex:
        raise InvalidInputError(f"expected an integer or a 'p/q' string, not {value!r}") from ex


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as ex:
        raise InvalidInputError("malformed JSON", [str(ex)]) from ex


def read_json(source: Union[PathLike, str]) -> Any:
    """Parse JSON from a file, or from standard input when the source is '-'."""
    if source == STDIN:
        return loads(sys.stdin.read())

    if not os.path.isfile(source):
        raise InvalidInputError(f"no such file: {source}")

    return loads(File.from_pathlike(source).path.read_text(encoding="utf-8"))


def write_json(payload: Any, path: PathLike) -> File:
    (file := File.from_pathlike(path)).path.write_text(dumps(payload), encoding="utf-8")
    logger.debug(f"wrote {file}")
    return file

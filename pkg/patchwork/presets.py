from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from iotools import Config
from pathmagic import Dir, File
from subtypes import Enum

from .convexity import HeightFunction, Infeasible, find_convexifying_heights
from .errors import InvalidInputError
from .lattice import LatticePoint, SignedTriangulation
from .serialization import PatchworkProblem, read_json, write_json

logger = logging.getLogger(__name__)


class Enums:
    class Preset(Enum):
        ELLIPSE, HARNACK, GUDKOV, HILBERT, PINWHEEL, CUBIC_FAMILY = "ellipse", "harnack", "gudkov", "hilbert", "pinwheel", "cubic-family"


# A regular primitive triangulation of the sextic triangle and signs whose T-curve has one oval holding five ovals beside five more.
GUDKOV_TRIANGLES = (
    ((0, 0), (0, 1), (1, 2)), ((0, 0), (1, 0), (1, 1)), ((0, 0), (1, 1), (2, 3)), ((0, 0), (1, 2), (2, 3)), ((0, 1), (0, 2), (1, 3)),
    ((0, 1), (1, 2), (2, 4)), ((0, 1), (1, 3), (2, 4)), ((0, 2), (0, 3), (1, 4)), ((0, 2), (1, 3), (1, 4)), ((0, 3), (0, 4), (1, 5)),
    ((0, 3), (1, 4), (1, 5)), ((0, 4), (0, 5), (1, 5)), ((0, 5), (0, 6), (1, 5)), ((1, 0), (1, 1), (2, 2)), ((1, 0), (2, 0), (2, 1)),
    ((1, 0), (2, 1), (3, 3)), ((1, 0), (2, 2), (3, 3)), ((1, 1), (2, 2), (2, 3)), ((1, 2), (2, 3), (2, 4)), ((1, 3), (1, 4), (2, 4)),
    ((1, 4), (1, 5), (2, 4)), ((2, 0), (2, 1), (3, 2)), ((2, 0), (3, 0), (3, 1)), ((2, 0), (3, 1), (3, 2)), ((2, 1), (3, 2), (3, 3)),
    ((2, 2), (2, 3), (3, 3)), ((2, 3), (2, 4), (3, 3)), ((3, 0), (3, 1), (4, 2)), ((3, 0), (4, 0), (4, 1)), ((3, 0), (4, 1), (4, 2)),
    ((3, 1), (3, 2), (4, 2)), ((3, 2), (3, 3), (4, 2)), ((4, 0), (4, 1), (5, 1)), ((4, 0), (5, 0), (5, 1)), ((4, 1), (4, 2), (5, 1)),
    ((5, 0), (5, 1), (6, 0)),
)
GUDKOV_NEGATIVE = {
    (0, 1), (0, 3), (0, 4), (1, 0), (1, 2), (2, 0), (2, 1), (3, 2), (4, 0), (4, 1), (4, 2), (5, 0), (5, 1), (6, 0),
}

# Another regular primitive triangulation, reached from the one above by diagonal flips, whose T-curve has one oval holding nine ovals beside one more.
HILBERT_TRIANGLES = (
    ((0, 0), (0, 1), (1, 0)), ((0, 1), (0, 2), (1, 1)), ((0, 1), (1, 0), (1, 1)), ((0, 2), (0, 3), (1, 2)), ((0, 2), (1, 1), (2, 1)),
    ((0, 2), (1, 2), (2, 1)), ((0, 3), (0, 4), (1, 2)), ((0, 4), (0, 5), (1, 3)), ((0, 4), (1, 2), (2, 1)), ((0, 4), (1, 3), (3, 0)),
    ((0, 4), (2, 1), (3, 0)), ((0, 5), (0, 6), (1, 4)), ((0, 5), (1, 3), (3, 0)), ((0, 5), (1, 4), (2, 2)), ((0, 5), (2, 2), (3, 0)),
    ((0, 6), (1, 4), (1, 5)), ((1, 0), (1, 1), (2, 0)), ((1, 1), (2, 0), (3, 0)), ((1, 1), (2, 1), (3, 0)), ((1, 4), (1, 5), (2, 2)),
    ((1, 5), (2, 2), (3, 0)), ((1, 5), (2, 3), (3, 0)), ((1, 5), (2, 3), (3, 2)), ((1, 5), (2, 4), (4, 1)), ((1, 5), (3, 2), (4, 1)),
    ((2, 3), (3, 0), (3, 1)), ((2, 3), (3, 1), (3, 2)), ((2, 4), (3, 3), (4, 1)), ((3, 0), (3, 1), (4, 0)), ((3, 1), (3, 2), (4, 0)),
    ((3, 2), (4, 0), (4, 1)), ((3, 3), (4, 1), (4, 2)), ((4, 0), (4, 1), (5, 0)), ((4, 1), (4, 2), (5, 1)), ((4, 1), (5, 0), (5, 1)),
    ((5, 0), (5, 1), (6, 0)),
)
HILBERT_NEGATIVE = {
    (0, 1), (0, 2), (0, 4), (0, 5), (1, 0), (1, 2), (1, 3), (2, 0), (2, 4), (3, 3), (4, 0), (4, 2),
}


def ellipse() -> PatchworkProblem:
    return PatchworkProblem(
        degree=2, vertices=[(0, 0), (2, 0), (0, 2)], triangles=[(0, 1, 2)], signs=[-1, 1, 1], heights=[0, 0, 0],
        name=Enums.Preset.ELLIPSE.value, notes="x^2 + y^2 - 1: one oval",
    )


def harnack(degree: int = 6) -> PatchworkProblem:
    """The standard triangulation of the triangle of the degree with the sign -1 exactly at points with both coordinates odd, lifted by i^2 + ij + j^2."""
    if degree < 1:
        raise InvalidInputError(f"degree must be positive, not {degree}")

    triangulation = SignedTriangulation.standard(degree, lambda i, j: -1 if i % 2 and j % 2 else 1)
    heights = HeightFunction.from_function(triangulation.vertices, lambda i, j: i * i + i * j + j * j)
    return PatchworkProblem.from_triangulation(triangulation, heights=heights, name=Enums.Preset.HARNACK.value, notes=f"an M-curve of degree {degree}")


def gudkov() -> PatchworkProblem:
    return _lifted_sextic(GUDKOV_TRIANGLES, GUDKOV_NEGATIVE, name=Enums.Preset.GUDKOV.value, notes="an M-curve of degree 6 with one oval holding five")


def hilbert() -> PatchworkProblem:
    return _lifted_sextic(HILBERT_TRIANGLES, HILBERT_NEGATIVE, name=Enums.Preset.HILBERT.value, notes="an M-curve of degree 6 with one oval holding nine")


def _lifted_sextic(triangles: Sequence[Sequence[tuple[int, int]]], negative: set[tuple[int, int]], name: str, notes: str) -> PatchworkProblem:
    """Every lattice point of the sextic triangle as a vertex, signed -1 on the given points, with heights found by the convexity search."""
    vertices = [LatticePoint(i, j) for i in range(7) for j in range(7 - i)]
    index = {vertex: position for position, vertex in enumerate(vertices)}
    signs = [-1 if (vertex.i, vertex.j) in negative else 1 for vertex in vertices]

    problem = PatchworkProblem(
        degree=6, vertices=vertices, triangles=[tuple(index[LatticePoint(*point)] for point in triangle) for triangle in triangles],
        signs=signs, name=name, notes=notes,
    )
    heights = find_convexifying_heights(problem.triangulation())
    if isinstance(heights, Infeasible):
        raise InvalidInputError(f"the {name} triangulation lost its convex lift: {heights.reason}")

    return problem.with_heights(heights)


def pinwheel() -> PatchworkProblem:
    """
    The outer triangle of degree 4 around the homothetic inner triangle (1,1), (2,1), (1,2), joined by three quadrilaterals all cut the same
    way round. Each cut forces the height of one inner vertex below the next, so no convex lift exists.
    """
    return PatchworkProblem(
        degree=4, vertices=[(0, 0), (4, 0), (0, 4), (1, 1), (2, 1), (1, 2)],
        triangles=[(3, 4, 5), (0, 1, 3), (1, 4, 3), (1, 2, 4), (2, 5, 4), (2, 0, 5), (0, 3, 5)],
        signs=[1, 1, 1, -1, 1, 1], name=Enums.Preset.PINWHEEL.value, notes="a triangulation without a convex lift",
    )


def cubic_family() -> PatchworkProblem:
    """Two triangles patchworked into 8x^3 - x^2 + 4y^2 + t^2, whose Newton polygon is not the triangle of its degree."""
    return PatchworkProblem(
        degree=3, domain=[(0, 0), (3, 0), (0, 2)], vertices=[(0, 0), (2, 0), (3, 0), (0, 2)], triangles=[(0, 1, 3), (1, 2, 3)],
        signs=[1, -1, 1, 1], heights=[2, 0, 0, 0], name=Enums.Preset.CUBIC_FAMILY.value, notes="8x^3 - x^2 + 4y^2 + t^2",
    )


BUILTINS: dict[str, Callable[..., PatchworkProblem]] = {
    Enums.Preset.ELLIPSE.value: ellipse,
    Enums.Preset.HARNACK.value: harnack,
    Enums.Preset.GUDKOV.value: gudkov,
    Enums.Preset.HILBERT.value: hilbert,
    Enums.Preset.PINWHEEL.value: pinwheel,
    Enums.Preset.CUBIC_FAMILY.value: cubic_family,
}


def load_preset(name: str, degree: Optional[int] = None) -> PatchworkProblem:
    """A built-in fixture, or a problem saved in the user presets directory under that name."""
    if name in BUILTINS:
        if degree is not None and name != Enums.Preset.HARNACK.value:
            raise InvalidInputError(f"preset {name!r} has a fixed degree, only {Enums.Preset.HARNACK.value!r} takes --degree")
        return BUILTINS[name](degree) if degree is not None else BUILTINS[name]()

    if (file := _user_file(name)) is not None:
        return PatchworkProblem.from_json(read_json(str(file)))

    raise InvalidInputError(f"unknown preset {name!r}", [f"available: {', '.join(preset_names())}"])


def save_preset(name: str, problem: PatchworkProblem) -> File:
    if not name or not all(character.isalnum() or character in "-_." for character in name):
        raise InvalidInputError(f"preset names may hold letters, digits, '-', '_' and '.', not {name!r}")
    if name in BUILTINS:
        raise InvalidInputError(f"{name!r} is a built-in preset")

    file = write_json(problem.to_json(), presets_dir().path / f"{name}.json")
    logger.info(f"saved preset {name!r} to {file}")
    return file


def preset_names() -> list[str]:
    return list(BUILTINS) + sorted(path.stem for path in presets_dir().path.glob("*.json") if path.stem not in BUILTINS)


def presets_dir() -> Dir:
    return Config(name="patchwork").dir.new_dir("presets")


def _user_file(name: str) -> Optional[Path]:
    path = presets_dir().path / f"{name}.json"
    return path if path.is_file() else None


def describe(names: Sequence[str] = None) -> list[dict[str, Any]]:
    """Name, degree and notes of each preset, for listings."""
    listing = []
    for name in names if names is not None else preset_names():
        problem = load_preset(name)
        listing.append({"name": name, "degree": problem.degree, "notes": problem.notes})
    return listing

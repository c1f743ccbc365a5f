from __future__ import annotations

import logging
import math
import string
import xml.etree.ElementTree as ET
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence, Tuple

from pathmagic import File, PathLike

from .charts import Chart, GluedComplex, chart_of_triangulation, projective_topology
from .errors import InvalidInputError
from .lattice import ConvexPolygon, LatticePoint, RationalPoint, SignedTriangulation, validate_triangulation
from .tcurve import PLCurve, SymmetricComplex, TCurve, midline_curve, symmetrize
from .tcurve.curve import Enums, Segment

logger = logging.getLogger(__name__)

GRID, OUTLINE, CURVE = "#c8c8c8", "#606060", "#000000"
POSITIVE, NEGATIVE = "#c0392b", "#2462a8"
MINUS = "−"


class Figure:
    """An SVG document of square panels laid side by side."""

    def __init__(self, panels: int = 1, size: int = 480, margin: int = 28) -> None:
        self.size, self.margin, self.panels = size, margin, []
        width, height = panels * size, size
        self.root = ET.Element(
            "svg", xmlns="http://www.w3.org/2000/svg", version="1.1",
            width=f"{width}px", height=f"{height}px", viewBox=f"0 0 {width} {height}",
        )
        for index in range(panels):
            group = ET.SubElement(self.root, "g", transform=f"translate({index * size} 0)")
            self.panels.append(group)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(panels={len(self.panels)}, size={self.size})"

    def __str__(self) -> str:
        return self.to_string()

    def panel(self, index: int, extent: Iterable[RationalPoint], title: str = None) -> Panel:
        return Panel(self.panels[index], extent, size=self.size, margin=self.margin, title=title)

    def to_string(self) -> str:
        return ET.tostring(self.root, encoding="unicode") + "\n"

    def write(self, path: PathLike) -> File:
        (file := File.from_pathlike(path)).path.write_text(self.to_string(), encoding="utf-8")
        logger.info(f"wrote {file}")
        return file


class Panel:
    """Maps exact plane coordinates into one square of a figure, with the y axis pointing up."""

    def __init__(self, group: ET.Element, extent: Iterable[RationalPoint], size: int, margin: int, title: str = None) -> None:
        points = [(float(x), float(y)) for x, y in extent]
        if not points:
            raise InvalidInputError("nothing to draw")

        self.group, self.size, self.margin = group, size, margin
        self.low_x, self.high_x = min(x for x, _ in points), max(x for x, _ in points)
        self.low_y, self.high_y = min(y for _, y in points), max(y for _, y in points)
        span = max(self.high_x - self.low_x, self.high_y - self.low_y, 1.0)
        self.scale = (size - 2 * margin) / span

        if title is not None:
            ET.SubElement(group, "text", x=f"{size / 2:.2f}", y=f"{margin * 0.6:.2f}", fill=OUTLINE, **{"font-size": "13", "text-anchor": "middle", "font-family": "sans-serif"}).text = title

    def xy(self, point: Sequence[Any]) -> Tuple[float, float]:
        x, y = (float(value) for value in point)
        offset_x = (self.size - 2 * self.margin - (self.high_x - self.low_x) * self.scale) / 2
        offset_y = (self.size - 2 * self.margin - (self.high_y - self.low_y) * self.scale) / 2
        return self.margin + offset_x + (x - self.low_x) * self.scale, self.size - self.margin - offset_y - (y - self.low_y) * self.scale

    def path(self, points: Sequence[Sequence[Any]], closed: bool = False, **attributes: str) -> Optional[ET.Element]:
        if not points:
            return None

        steps = "L".join(self._format(point) for point in points)
        return ET.SubElement(self.group, "path", d=f"M{steps}{'z' if closed else ''}", fill=attributes.pop("fill", "none"), **attributes)

    def segments(self, segments: Iterable[Segment], **attributes: str) -> Optional[ET.Element]:
        pieces = [f"M{self._format(p)}L{self._format(q)}" for p, q in segments if p != q]
        if not pieces:
            return None
        return ET.SubElement(self.group, "path", d="".join(pieces), fill="none", **attributes)

    def dot(self, point: Sequence[Any], radius: float = 3.0, **attributes: str) -> ET.Element:
        x, y = self.xy(point)
        return ET.SubElement(self.group, "circle", cx=f"{x:.2f}", cy=f"{y:.2f}", r=f"{radius:.2f}", **attributes)

    def text(self, point: Sequence[Any], content: str, dx: float = 0.0, dy: float = 0.0, **attributes: str) -> ET.Element:
        x, y = self.xy(point)
        element = ET.SubElement(self.group, "text", x=f"{x + dx:.2f}", y=f"{y + dy:.2f}", **{"font-size": "12", "text-anchor": "middle", "font-family": "sans-serif"}, **attributes)
        element.text = content
        return element

    def arrow(self, start: Sequence[Any], end: Sequence[Any], label: str, center: Sequence[Any] = (0, 0)) -> ET.Element:
        """An arrowhead at the middle of a boundary edge pointing from its start to its end, labelled on the side away from the center."""
        (x1, y1), (x2, y2), (cx, cy) = self.xy(start), self.xy(end), self.xy(center)
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        length = math.hypot(x2 - x1, y2 - y1) or 1.0
        ux, uy = (x2 - x1) / length, (y2 - y1) / length
        tip, back = (mx + 5 * ux, my + 5 * uy), (mx - 5 * ux, my - 5 * uy)
        wing = ((back[0] - 4 * uy, back[1] + 4 * ux), (back[0] + 4 * uy, back[1] - 4 * ux))

        group = ET.SubElement(self.group, "g")
        ET.SubElement(group, "path", d=f"M{tip[0]:.2f} {tip[1]:.2f}L{wing[0][0]:.2f} {wing[0][1]:.2f}L{wing[1][0]:.2f} {wing[1][1]:.2f}z", fill=OUTLINE)

        away = math.hypot(mx - cx, my - cy) or 1.0
        lx, ly = mx + 12 * (mx - cx) / away, my + 12 * (my - cy) / away
        ET.SubElement(group, "text", x=f"{lx:.2f}", y=f"{ly + 4:.2f}", fill=OUTLINE, **{"font-size": "11", "text-anchor": "middle", "font-family": "sans-serif"}).text = label
        return group

    def _format(self, point: Sequence[Any]) -> str:
        x, y = self.xy(point)
        return f"{x:.2f} {y:.2f}"


def draw_symmetric_complex(panel: Panel, complex_: SymmetricComplex, curve: PLCurve = None) -> Panel:
    """The triangles of the four copies in light gray, the axes, the sign of every vertex and the curve in black."""
    edges = sorted({tuple(sorted((p, q))) for triangle in complex_.triangles() for p, q in zip(triangle, triangle[1:] + triangle[:1])})
    panel.segments(edges, stroke=GRID, **{"stroke-width": "1"})

    carrier = complex_.carrier
    panel.path(list(carrier), closed=True, stroke=OUTLINE, **{"stroke-width": "1"})
    reach = max(max(abs(vertex.i), abs(vertex.j)) for vertex in carrier)
    panel.segments([((-reach, 0), (reach, 0)), ((0, -reach), (0, reach))], stroke=OUTLINE, **{"stroke-width": "0.5", "stroke-dasharray": "3 3"})

    for point, sign in sorted(complex_.signs.items()):
        panel.text(point, "+" if sign > 0 else MINUS, dy=4, fill=POSITIVE if sign > 0 else NEGATIVE)

    if curve is not None:
        panel.segments(curve, stroke=CURVE, **{"stroke-width": "2", "stroke-linecap": "round"})

    return panel


def draw_disk_model(panel: Panel, boundary: Sequence[RationalPoint], curve: Iterable[Segment], cells: Iterable[Sequence[RationalPoint]] = ()) -> Panel:
    """
    The projective plane as a centrally symmetric polygon whose opposite boundary edges are identified: every edge and its antipodal edge
    carry the same letter and arrows pointing the same way round.
    """
    boundary = list(boundary)
    if len(boundary) % 2:
        raise InvalidInputError(f"a disk model needs an even number of boundary points, not {len(boundary)}")

    for cell in cells:
        panel.path(list(cell), closed=True, stroke=GRID, **{"stroke-width": "1"})

    panel.path(boundary, closed=True, stroke=OUTLINE, **{"stroke-width": "1.5"})

    half = len(boundary) // 2
    for index, start in enumerate(boundary):
        end = boundary[(index + 1) % len(boundary)]
        panel.arrow(start, end, _edge_label(index % half))

    panel.segments(curve, stroke=CURVE, **{"stroke-width": "2", "stroke-linecap": "round"})
    for p, q in curve:
        if p == q:
            panel.dot(p, fill=CURVE)

    return panel


def render_triangulation(triangulation: SignedTriangulation, size: int = 480) -> Figure:
    """Two panels: the four reflected copies with signs and curve, and the disk model of the projective plane the curve lives in."""
    if not isinstance(triangulation, SignedTriangulation):
        raise TypeError(f"Expected '{SignedTriangulation.__name__}', not '{type(triangulation).__name__}'.")

    if not (report := validate_triangulation(triangulation)):
        raise InvalidInputError("invalid triangulation", report.violations)

    complex_ = symmetrize(triangulation)
    curve = midline_curve(complex_)
    boundary, projective_curve, cells = _projective_picture(triangulation)

    figure = Figure(panels=2, size=size)
    draw_symmetric_complex(figure.panel(0, _extent(complex_.carrier), title="four copies"), complex_, curve)
    draw_disk_model(figure.panel(1, boundary, title="projective plane"), boundary, projective_curve, cells)
    logger.debug(f"rendered {len(curve)} segments of {triangulation}")
    return figure


def render_glued(glued: GluedComplex, size: int = 480) -> Figure:
    """One panel drawing a glued chart complex: its cells, its curve and, for the projective plane, the boundary identification."""
    if not isinstance(glued, GluedComplex):
        raise TypeError(f"Expected '{GluedComplex.__name__}', not '{type(glued).__name__}'.")

    extent = list(glued.boundary) + [point for cell in glued.cells for point in cell]
    figure = Figure(panels=1, size=size)
    panel = figure.panel(0, extent, title=f"{glued.tag.value}: {glued.components} component{'s' if glued.components != 1 else ''}")

    if glued.tag == Enums.Carrier.PROJECTIVE_PLANE:
        draw_disk_model(panel, glued.boundary, glued.curve, glued.cells)
    else:
        for cell in glued.cells:
            panel.path(list(cell), closed=True, stroke=GRID, **{"stroke-width": "1"})
        panel.path(list(glued.boundary), closed=True, stroke=OUTLINE, **{"stroke-width": "1.5", "stroke-dasharray": "4 3"})
        panel.segments(glued.curve, stroke=CURVE, **{"stroke-width": "2", "stroke-linecap": "round"})

    for end in glued.ends:
        panel.dot(end, radius=3.5, fill="white", stroke=CURVE)

    return figure


def render_chart(chart: Chart, size: int = 480) -> Figure:
    """The four reflected copies of the polygon of a chart with the curve drawn in each and its marked points as dots."""
    if not isinstance(chart, Chart):
        raise TypeError(f"Expected '{Chart.__name__}', not '{type(chart).__name__}'.")

    copies = {quadrant: [quadrant.reflect(vertex) for vertex in chart.polygon] for quadrant, _ in chart}
    figure = Figure(panels=1, size=size)
    panel = figure.panel(0, [point for copy in copies.values() for point in copy], title=f"chart of {chart.polygon}")

    for copy in copies.values():
        panel.path(copy, closed=True, stroke=GRID, **{"stroke-width": "1"})

    drawn = chart.drawn()
    panel.segments(drawn, stroke=CURVE, **{"stroke-width": "2", "stroke-linecap": "round"})
    for p, q in drawn:
        if p == q:
            panel.dot(p, fill=CURVE)

    return figure


def _projective_picture(triangulation: SignedTriangulation) -> Tuple[list[RationalPoint], Iterable[Segment], list[Sequence[RationalPoint]]]:
    degree = max(vertex.i + vertex.j for vertex in triangulation.domain)
    if triangulation.domain == ConvexPolygon.degree_triangle(degree):
        quotient = TCurve(triangulation).quotient
        return list(quotient.carrier), quotient.curve, []

    glued = projective_topology(chart_of_triangulation(triangulation))
    return list(glued.boundary), glued.curve, list(glued.cells)


def _extent(polygon: Iterable[LatticePoint]) -> list[RationalPoint]:
    return [(Fraction(vertex.i), Fraction(vertex.j)) for vertex in polygon]


def _edge_label(index: int) -> str:
    letters = string.ascii_lowercase
    return letters[index % len(letters)] + ("'" * (index // len(letters)))

import pytest

from patchwork.charts import chart_of_polynomial, projective_topology
from patchwork.errors import InvalidInputError
from patchwork.lattice import LatticePoint, SignedTriangulation
from patchwork.polyval import SparsePolynomial
from patchwork.presets import cubic_family, ellipse
from patchwork.svg import Figure, draw_disk_model, render_chart, render_glued, render_triangulation


class TestFigure:
    def test_panels(self):
        text = Figure(panels=3, size=100).to_string()
        assert text.startswith("<svg")
        assert 'width="300px"' in text
        assert text.count("translate(") == 3

    def test_panel_needs_an_extent(self):
        with pytest.raises(InvalidInputError):
            Figure().panel(0, [])

    def test_panel_maps_y_up(self):
        panel = Figure(size=100, margin=10).panel(0, [(0, 0), (1, 1)])
        assert panel.xy((0, 0)) == (10.0, 90.0)
        assert panel.xy((1, 1)) == (90.0, 10.0)

    def test_panel_accepts_lattice_points(self):
        panel = Figure(size=100, margin=10).panel(0, [LatticePoint(0, 0), LatticePoint(1, 1)])
        assert panel.xy(LatticePoint(1, 0)) == (90.0, 90.0)

    def test_write(self, tmp_path):
        path = tmp_path / "figure.svg"
        Figure().write(str(path))
        assert path.read_text(encoding="utf-8").startswith("<svg")

    def test_disk_model_needs_an_even_boundary(self):
        panel = Figure().panel(0, [(0, 0), (1, 0), (0, 1)])
        with pytest.raises(InvalidInputError):
            draw_disk_model(panel, [(0, 0), (1, 0), (0, 1)], [])


class TestRender:
    def test_triangulation(self):
        text = render_triangulation(ellipse().triangulation()).to_string()
        assert "four copies" in text
        assert "projective plane" in text
        assert 'stroke="#000000"' in text

    def test_triangulation_of_a_smaller_polygon(self):
        assert "projective plane" in render_triangulation(cubic_family().triangulation()).to_string()

    def test_invalid_triangulation(self):
        full = SignedTriangulation.standard(2, lambda i, j: 1)
        broken = SignedTriangulation(full.domain, full.vertices, full.triangles[1:], [full.sign(vertex) for vertex in full.vertices])
        with pytest.raises(InvalidInputError):
            render_triangulation(broken)

    def test_chart(self):
        assert "chart of" in render_chart(chart_of_polynomial(SparsePolynomial.parse("x^3 - 7x + 6"))).to_string()

    def test_glued(self):
        text = render_glued(projective_topology(chart_of_polynomial(SparsePolynomial.parse("x^2 + y^2 - 1")))).to_string()
        assert "projective-plane: 1 component" in text

    def test_wrong_types(self):
        with pytest.raises(TypeError):
            render_triangulation(ellipse())
        with pytest.raises(TypeError):
            render_chart(ellipse())
        with pytest.raises(TypeError):
            render_glued(ellipse())

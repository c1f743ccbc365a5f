import pytest

from patchwork.lattice import SignedTriangulation, validate_triangulation
from patchwork.presets import ellipse, gudkov, hilbert
from patchwork.tcurve import TCurve, harnack_bound, swapped


def harnack_signs(i: int, j: int) -> int:
    return -1 if i % 2 and j % 2 else 1


class TestTCurve:
    def test_ellipse(self):
        curve = TCurve(ellipse().triangulation())
        assert curve.degree == 2
        assert curve.code.encoding == "1"
        assert curve.is_m_curve

    def test_line(self):
        curve = TCurve(SignedTriangulation.standard(1, lambda i, j: 1))
        assert curve.code.encoding == "J"
        assert curve.quotient.crossings == 1

    @pytest.mark.parametrize("degree", [2, 3, 4, 5])
    def test_harnack_curves_are_maximal(self, degree):
        code = TCurve(SignedTriangulation.standard(degree, harnack_signs)).code
        assert code.components == harnack_bound(degree)
        assert code.one_sided == degree % 2

    def test_harnack_sextic(self):
        curve = TCurve(SignedTriangulation.standard(6, harnack_signs))
        assert curve.code.encoding == "9 ∪ 1⟨1⟩"
        assert curve.is_m_curve

    def test_gudkov_sextic(self):
        assert TCurve(gudkov().triangulation()).code.encoding == "5 ∪ 1⟨5⟩"

    def test_hilbert_sextic(self):
        curve = TCurve(hilbert().triangulation())
        assert curve.code.encoding == "1 ∪ 1⟨9⟩"
        assert curve.is_m_curve
        assert validate_triangulation(curve.triangulation).primitive

    def test_flipping_every_sign_keeps_the_curve(self):
        triangulation = SignedTriangulation.standard(4, harnack_signs)
        assert TCurve(triangulation.with_flipped_signs()).curve == TCurve(triangulation).curve

    def test_swapping_coordinates_mirrors_the_curve(self):
        triangulation = SignedTriangulation.standard(3, lambda i, j: 1 if i > j else -1)
        assert TCurve(swapped(triangulation)).curve == TCurve(triangulation).curve.swapped()
        assert TCurve(swapped(triangulation)).code == TCurve(triangulation).code

    def test_to_json(self):
        report = TCurve(SignedTriangulation.standard(6, harnack_signs)).to_json()
        assert report["degree"] == 6
        assert report["harnack_bound"] == 11
        assert report["isotopy_code"]["encoding"] == "9 ∪ 1⟨1⟩"
        assert report["segments"] > 0

from fractions import Fraction

import pytest

from patchwork.errors import InvalidInputError, SingularCurveError
from patchwork.tcurve import CurveClassifier, IsotopyCode, OvalNode, classify_curve, harnack_bound

CARRIER = [(2, 0), (0, 2), (-2, 0), (0, -2)]


def diamond(x: Fraction, y: Fraction, r: Fraction) -> list:
    corners = [(x + r, y), (x, y + r), (x - r, y), (x, y - r)]
    return [(corners[index], corners[(index + 1) % 4]) for index in range(4)]


HALF = Fraction(1, 2)


class TestOvalNode:
    def test_size_and_height(self):
        node = OvalNode((OvalNode(), OvalNode((OvalNode(),))))
        assert node.size == 4
        assert node.height == 3

    def test_encoding(self):
        assert OvalNode().encoding == "1"
        assert OvalNode((OvalNode(), OvalNode())).encoding == "1⟨2⟩"


class TestIsotopyCode:
    def test_empty(self):
        assert IsotopyCode().encoding == "0"
        assert IsotopyCode().components == 0

    def test_one_sided(self):
        assert IsotopyCode(one_sided=1).encoding == "J"
        assert IsotopyCode(one_sided=1, ovals=(OvalNode(),)).encoding == "J ∪ 1"

    def test_harnack_sextic(self):
        code = IsotopyCode(ovals=(OvalNode((OvalNode(),)),) + (OvalNode(),) * 9)
        assert code.encoding == "9 ∪ 1⟨1⟩"
        assert code.components == 11
        assert sorted(code.depths()) == [0] * 10 + [1]

    def test_nested_ovals_sort_after_empty_ones(self):
        code = IsotopyCode(ovals=(OvalNode((OvalNode(), OvalNode())), OvalNode((OvalNode(),)), OvalNode()))
        assert code.encoding == "1 ∪ 1⟨1⟩ ∪ 1⟨2⟩"

    def test_equality_is_by_encoding(self):
        assert IsotopyCode(ovals=(OvalNode((OvalNode(),)), OvalNode())) == IsotopyCode(ovals=(OvalNode(), OvalNode((OvalNode(),))))

    def test_too_many_one_sided(self):
        with pytest.raises(InvalidInputError):
            IsotopyCode(one_sided=2)

    def test_to_json(self):
        assert IsotopyCode.from_encoding("J ∪ 2").to_json() == {"encoding": "J ∪ 2", "one_sided": 1, "components": 3, "ovals": 2}

    def test_from_encoding(self):
        for encoding in ("0", "J", "1", "9 ∪ 1⟨1⟩", "5 ∪ 1⟨5⟩", "J ∪ 1", "1⟨1⟨1⟩⟩"):
            assert IsotopyCode.from_encoding(encoding).encoding == encoding

    def test_from_ascii_encoding(self):
        assert IsotopyCode.from_encoding("1<5> u 5").encoding == "5 ∪ 1⟨5⟩"

    def test_malformed(self):
        for encoding in ("x", "2⟨1⟩", "1⟨1", "1⟩", "∪ 1"):
            with pytest.raises(InvalidInputError):
                IsotopyCode.from_encoding(encoding)


class TestCurveClassifier:
    def test_single_oval(self):
        assert classify_curve(CARRIER, diamond(0, 0, 1)).encoding == "1"

    def test_line(self):
        assert classify_curve(CARRIER, [((-2, 0), (2, 0))]).encoding == "J"

    def test_nested_ovals(self):
        assert classify_curve(CARRIER, diamond(0, 0, 1) + diamond(0, 0, HALF)).encoding == "1⟨1⟩"

    def test_disjoint_ovals(self):
        assert classify_curve(CARRIER, diamond(1, 0, HALF) + diamond(-1, 0, HALF)).encoding == "2"

    def test_line_and_oval(self):
        assert classify_curve(CARRIER, [((-2, 0), (2, 0))] + diamond(0, 1, HALF)).encoding == "J ∪ 1"

    def test_empty(self):
        assert classify_curve(CARRIER, []).encoding == "0"

    def test_open_curve(self):
        with pytest.raises(SingularCurveError):
            classify_curve(CARRIER, [((0, 0), (1, 0))])

    def test_components(self):
        classifier = CurveClassifier(CARRIER, diamond(1, 0, HALF) + diamond(-1, 0, HALF))
        assert sorted(len(component) for component in classifier.components()) == [4, 4]

    def test_boundary_points_are_identified(self):
        classifier = CurveClassifier(CARRIER, [])
        assert classifier.node((Fraction(-2), Fraction(0))) == classifier.node((Fraction(2), Fraction(0)))
        assert classifier.node((Fraction(0), Fraction(0))) == (0, 0)

    def test_carrier_must_be_symmetric(self):
        with pytest.raises(InvalidInputError):
            CurveClassifier([(2, 0), (0, 2), (-1, 0), (0, -2)], [])

    def test_carrier_needs_an_even_number_of_vertices(self):
        with pytest.raises(InvalidInputError):
            CurveClassifier([(2, 0), (0, 2), (-2, 0)], [])


class TestHarnackBound:
    def test_values(self):
        assert [harnack_bound(degree) for degree in range(1, 7)] == [1, 1, 2, 4, 7, 11]

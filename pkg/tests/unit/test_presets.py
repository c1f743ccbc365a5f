import pytest

from patchwork.convexity import check_convexifies
from patchwork.errors import InvalidInputError
from patchwork.lattice import validate_triangulation
from patchwork.presets import BUILTINS, describe, harnack, load_preset, preset_names, save_preset


class TestBuiltins:
    @pytest.mark.parametrize("name", sorted(BUILTINS))
    def test_triangulations_are_valid(self, name):
        assert validate_triangulation(load_preset(name).triangulation())

    @pytest.mark.parametrize("name", ["ellipse", "harnack", "gudkov", "hilbert", "cubic-family"])
    def test_heights_convexify(self, name):
        problem = load_preset(name)
        assert check_convexifies(problem.triangulation(), problem.height_function())

    def test_pinwheel_has_no_heights(self):
        assert load_preset("pinwheel").heights is None

    def test_harnack_degree(self):
        assert load_preset("harnack", degree=3).degree == 3
        assert load_preset("harnack").degree == 6

    def test_fixed_degree(self):
        with pytest.raises(InvalidInputError):
            load_preset("ellipse", degree=3)

    def test_bad_degree(self):
        with pytest.raises(InvalidInputError):
            harnack(0)

    def test_unknown(self):
        with pytest.raises(InvalidInputError, match="unknown preset"):
            load_preset("quintic")


class TestUserPresets:
    def test_save_and_load(self, user_presets):
        file = save_preset("my-quartic", harnack(4))
        assert (user_presets / "my-quartic.json").is_file()
        assert file.path.name == "my-quartic.json"
        assert load_preset("my-quartic") == harnack(4)
        assert preset_names()[-1] == "my-quartic"

    @pytest.mark.parametrize("name", ["", "../escape", "with space"])
    def test_bad_names(self, name):
        with pytest.raises(InvalidInputError):
            save_preset(name, harnack(2))

    def test_builtin_names_are_reserved(self):
        with pytest.raises(InvalidInputError, match="built-in"):
            save_preset("ellipse", harnack(2))

    def test_describe(self):
        listing = {entry["name"]: entry for entry in describe()}
        assert set(listing) == set(BUILTINS)
        assert listing["ellipse"]["degree"] == 2
        assert listing["gudkov"]["notes"]

import pytest
from pathmagic import Dir

import patchwork.presets


@pytest.fixture(autouse=True)
def user_presets(tmp_path, monkeypatch):
    """Keep saved presets inside the test's temporary directory."""
    folder = tmp_path / "presets"
    folder.mkdir()
    monkeypatch.setattr(patchwork.presets, "presets_dir", lambda: Dir.from_pathlike(folder))
    return folder

"""Unit tests for PresetRepository."""

from pathlib import Path

import pytest

from app.domain.errors import NotFoundError, PresetError
from app.domain.repositories import PresetRepository

SL2_TEXT = """
# SL(2) with residue field F_3
name = SL2_Q3
p = 3
rank = 1
simple_roots = alpha
root.alpha = 2
coroot.alpha = 1
pairing.alpha = 2
"""


def write_preset(tmp_path: Path, text: str, name: str = "custom") -> Path:
    path = tmp_path / f"{name}.preset"
    path.write_text(text)
    return path


class TestPresetRepository:
    """Test cases for PresetRepository."""

    @pytest.fixture
    def repo(self):
        return PresetRepository()

    def test_shipped_presets(self, repo: PresetRepository):
        assert {"GL2_Q2", "GL3_Q2", "SL2_Q2"} <= set(repo.list_names())

    def test_gl3_preset_tables(self, repo: PresetRepository):
        preset = repo.get_by_name("GL3_Q2")
        assert preset.simple_roots == ("alpha", "beta")
        assert preset.pairings == ((2, -1), (-1, 2))
        assert preset.omega_action["u1"]["s_alpha"] == "s_beta"
        assert preset.central_seeds["alpha"] == (1, 1, -2)
        assert preset.c_s("s_alpha") == -1

    def test_load_path(self, repo: PresetRepository, tmp_path: Path):
        preset = repo.load_path(write_preset(tmp_path, SL2_TEXT))
        assert preset.name == "SL2_Q3"
        assert preset.p == 3
        assert preset.k0 == 1

    def test_directory_override(self, tmp_path: Path):
        write_preset(tmp_path, SL2_TEXT, name="SL2_Q3")
        repo = PresetRepository(tmp_path)
        assert repo.list_names() == ["SL2_Q3"]
        assert repo.get_by_name("SL2_Q3").rank == 1

    def test_unknown_name(self, repo: PresetRepository):
        with pytest.raises(NotFoundError):
            repo.get_by_name("no_such_group")

    def test_missing_file(self, repo: PresetRepository, tmp_path: Path):
        with pytest.raises(NotFoundError):
            repo.load_path(tmp_path / "missing.preset")

    def test_composite_characteristic(self, repo: PresetRepository, tmp_path: Path):
        with pytest.raises(PresetError, match="not prime"):
            repo.load_path(write_preset(tmp_path, SL2_TEXT.replace("p = 3", "p = 4")))

    def test_inconsistent_pairing(self, repo: PresetRepository, tmp_path: Path):
        with pytest.raises(PresetError):
            repo.load_path(write_preset(tmp_path, SL2_TEXT.replace("coroot.alpha = 1", "coroot.alpha = 2")))

    def test_missing_root_table(self, repo: PresetRepository, tmp_path: Path):
        with pytest.raises(PresetError, match="Malformed"):
            repo.load_path(write_preset(tmp_path, SL2_TEXT.replace("root.alpha = 2\n", "", 1)))

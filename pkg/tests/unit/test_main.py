"""Command-line entry point, called in-process through main(argv)."""

import json
from pathlib import Path

import pytest

from app.main import build_parser, main

TORUS_MODULE = """levi = empty
p = 2
k = 1
dim = 1

[u1]
1
"""


class TestParser:
    """Argument parsing."""

    def test_subcommands(self):
        args = build_parser().parse_args(["classify", "--preset", "SL2_Q2", "--dim-bound", "2"])
        assert args.command == "classify"
        assert args.dim_bound == 2

    def test_preset_is_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["info"])


class TestCommands:
    """Each command end to end on the smallest preset."""

    def test_info(self, capsys):
        assert main(["info", "--preset", "GL2_Q2"]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["rank"] == 2
        assert [levi["levi"] for levi in summary["levis"]] == ["empty", "alpha"]
        assert summary["levis"][1]["omega_orders"] == {"u1": 2}

    def test_classify_writes_report(self, tmp_path: Path, capsys):
        code = main(["classify", "--preset", "SL2_Q2", "--dim-bound", "2", "--out", str(tmp_path)])
        assert code == 0
        written = json.loads((tmp_path / "classify_SL2_Q2_2_2.json").read_text())
        assert written["passed"]
        assert json.loads(capsys.readouterr().out) == written

    def test_induce(self, tmp_path: Path, capsys):
        module = tmp_path / "torus.module"
        module.write_text(TORUS_MODULE)
        code = main(
            ["induce", "--preset", "SL2_Q2", "--levi", "empty", "--module", str(module),
             "--submodules", "--out", str(tmp_path)]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["induced"]["dim"] == 2
        assert report["composition_dims"] == [1, 1]
        assert report["submodules"] == 3
        assert (tmp_path / "induced_empty.module").is_file()

    def test_unknown_preset(self, capsys):
        assert main(["info", "--preset", "NOPE"]) == 2
        assert "NOT_FOUND" in capsys.readouterr().err.upper()

    def test_bad_field_spec(self):
        assert main(["classify", "--preset", "SL2_Q2", "--field", "6"]) == 2

    def test_bad_levi(self, tmp_path: Path):
        module = tmp_path / "torus.module"
        module.write_text(TORUS_MODULE)
        assert main(["induce", "--preset", "SL2_Q2", "--levi", "gamma", "--module", str(module)]) == 2

    def test_dim_bound_out_of_range(self):
        assert main(["classify", "--preset", "SL2_Q2", "--dim-bound", "999"]) == 2

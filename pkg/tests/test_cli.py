"""
Command line: dispatch, output formats, config files and exit statuses
"""
import json

import pytest

from src.algebra.presets import create_preset
from src.formatters.presentation_io import save_presentation
from src.utils.errors import ConfigError
from workbench_cli import WorkbenchConfig, load_workbench_config, run_command

QDET = "X[1,1]*X[2,2] - q*X[1,2]*X[2,1]"


@pytest.fixture
def cfg():
    return WorkbenchConfig(preset="quantum-matrices", n=2, q="generic", params="q", grading=None, output="text")


def test_qdet(cfg):
    assert run_command(cfg, ["qdet"]) == (0, QDET)


def test_normal_form_of_reversed_diagonal(cfg):
    code, text = run_command(cfg, ["nf", "X[2,2]*X[1,1]"])
    assert code == 0
    assert text == "X[1,1]*X[2,2] + (-q + q^-1)*X[1,2]*X[2,1]"


def test_mul_matches_nf(cfg):
    assert run_command(cfg, ["mul", "X[2,2]", "X[1,1]"]) == run_command(cfg, ["nf", "X[2,2]*X[1,1]"])


def test_qminor_and_counit(cfg):
    assert run_command(cfg, ["qminor", "[1,2|1,2]"]) == (0, QDET)
    assert run_command(cfg, ["qminor", "1,2|1,2"]) == (0, QDET)
    assert run_command(cfg, ["counit", "[1,2|1,2]"]) == (0, "1")


def test_central(cfg):
    assert run_command(cfg, ["central", "[1,2|1,2]"]) == (0, "true")
    assert run_command(cfg, ["central", "X[1,2]"]) == (0, "false")


def test_delta_and_mu_star_live_in_the_tensor_square(cfg):
    code, text = run_command(cfg, ["delta", "X[1,2]"])
    assert code == 0
    assert "X[1,1]@1*X[1,2]@2" in text
    code, text = run_command(cfg, ["mu-star", "X[1,1]", "-t", "2"])
    assert code == 0
    assert text == "X[1,1]@1*X[1,1]@2"
    assert run_command(cfg, ["mu-star", "X[1,1]", "-t", "1"]) == (0, "0")


def test_weight_and_homogeneity(cfg):
    assert run_command(cfg, ["weight", "X[1,2]", "--grading", "matrix"]) == (0, "[1, 0, 0, 1]")
    assert run_command(cfg, ["homog", "X[1,1] + X[1,2]", "--grading", "matrix"]) == (0, "false")
    assert run_command(cfg, ["weight", "X[1,1] + X[1,2]", "--grading", "matrix"]) == (0, "null")


def test_stable(cfg):
    assert run_command(cfg, ["stable", "X[1,2]", "X[2,1]", "--grading", "matrix"]) == (0, "true")


def test_center_of_affine_three_space(cfg):
    assert run_command(cfg, ["center", "--preset", "affine", "-n", "3"]) == (0, "x1*x2^-1*x3")


def test_strata_json_rows(cfg):
    code, text = run_command(cfg, ["strata", "--preset", "affine", "-n", "2", "-q", "generic"])
    assert code == 0
    rows = json.loads(text)
    assert len(rows) == 4
    assert [row["center_rank"] for row in rows] == [0, 1, 1, 0]


def test_patterns_enumerate_json(cfg):
    code, text = run_command(cfg, ["patterns", "enumerate", "-n", "1", "--json"])
    assert code == 0
    data = json.loads(text)
    assert data["command"] == "patterns"
    assert data["result"]["count"] == 2


def test_patterns_counts(cfg):
    code, text = run_command(cfg, ["patterns", "counts", "-n", "2"])
    assert code == 0
    data = json.loads(text)
    assert data["rank_le1_count"] == data["rank_le1_formula"] == 10
    assert data["star_count"] == 13


def test_twist_report(cfg):
    code, text = run_command(cfg, ["twist", "--preset", "affine", "-n", "2", "--degree", "2"])
    assert code == 0
    assert json.loads(text)["ok"] is True


def test_quotient_map_and_fibres(cfg):
    assert run_command(cfg, ["quotient-map", "l1", "0", "l3"]) == (0, "<x2>")
    assert run_command(cfg, ["fibre", "l1", "l2", "l3", "t1*l1", "t1*t3*l2", "t3*l3"]) == (0, "true")
    assert run_command(cfg, ["fibre", "l1", "0", "0", "t1*l1", "0", "0"]) == (0, "false")


def test_preimage_json(cfg):
    code, text = run_command(cfg, ["preimage", "x1", "--json"])
    assert code == 0
    assert json.loads(text)["result"]["components"] == [[1]]


def test_catalog(cfg):
    code, text = run_command(cfg, ["catalog"])
    assert code == 0
    data = json.loads(text)
    assert data["catalog"]["2x2"]["total"] == 14
    assert all(data["consistency"].values())


def test_output_is_deterministic(cfg):
    argv = ["strata", "--preset", "affine", "-n", "3", "--json"]
    assert run_command(cfg, argv) == run_command(cfg, argv)


def test_unknown_command(cfg):
    code, text = run_command(cfg, ["frobnicate"])
    assert code == 2
    assert json.loads(text)["error"] == "CommandError"


def test_bad_size(cfg):
    code, text = run_command(cfg, ["qdet", "-n", "0"])
    assert code == 2
    assert json.loads(text)["error"] == "CommandError"


def test_unknown_symbol(cfg):
    code, text = run_command(cfg, ["nf", "z"])
    assert code == 1
    assert json.loads(text)["error"] == "UnknownSymbolError"


def test_syntax_error_position(cfg):
    code, text = run_command(cfg, ["nf", "X[1,1] +"])
    assert code == 1
    error = json.loads(text)
    assert error["error"] == "ExpressionSyntaxError"
    assert error["position"] == 8


def test_bialgebra_command_on_a_plane(cfg):
    code, text = run_command(cfg, ["qdet", "--preset", "plane"])
    assert code == 1
    assert json.loads(text)["error"] == "PresentationError"


def test_config_file(cfg, tmp_path):
    path = tmp_path / "workbench.json"
    path.write_text(json.dumps({"preset": "plane", "params": "p;q=p^2"}), encoding="utf-8")
    assert run_command(cfg, ["nf", "y*x", "--config", str(path)]) == (0, "p^-2*x*y")


def test_config_file_rejects_numeric_q(cfg, tmp_path):
    path = tmp_path / "workbench.json"
    path.write_text(json.dumps({"q": "0.5"}), encoding="utf-8")
    code, text = run_command(cfg, ["qdet", "--config", str(path)])
    assert code == 2
    error = json.loads(text)
    assert error["error"] == "ConfigError"
    assert error["field"] == "q"


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_workbench_config(tmp_path / "absent.json")


def test_presentation_file_drives_commands(cfg, tmp_path):
    path = save_presentation(create_preset("matrices", 2), tmp_path / "m2.json")
    assert run_command(cfg, ["qdet", "--presentation", str(path)]) == (0, QDET)


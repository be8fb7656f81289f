"""
Test Suite for the OctoGauss Command Line
"""

import json
import sys
from pathlib import Path

import pandas as pd
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from scripts.octogauss import EXIT_CONFIG, EXIT_FAILED, EXIT_PASSED, main

SCENARIOS = Path(__file__).parent.parent.parent / "config" / "scenarios"


@pytest.fixture(autouse=True)
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_verify_topology_writes_report(workdir):
    assert main(["verify", "topology"]) == EXIT_PASSED
    payload = json.loads((workdir / "reports" / "topology_report.json").read_text())
    assert payload["passed"] is True
    assert payload["suite"] == "topology"


def test_verify_equator_with_projections(workdir, capsys):
    out = workdir / "equator.json"
    code = main(
        [
            "verify",
            "s7",
            "--chart",
            "equator",
            "--points",
            "6",
            "--containment-samples",
            "128",
            "--out",
            str(out),
            "--csv",
            str(workdir / "points.csv"),
            "--shape-csv",
            str(workdir / "shape.csv"),
        ]
    )
    assert code == EXIT_PASSED
    assert "sha256" in capsys.readouterr().out
    assert json.loads(out.read_text())["scenario"]["chart"] == "equator"
    assert len(pd.read_csv(workdir / "points.csv")) == 6
    shape = pd.read_csv(workdir / "shape.csv")
    assert list(shape.columns)[-3:] == ["H", "A_norm_sq", "gradH_norm"]


def test_rerun_gives_identical_bytes(workdir):
    args = ["verify", "hopf", "--points", "6", "--out", "hopf.json"]
    assert main(args) == EXIT_PASSED
    first = (workdir / "reports" / "hopf.json").read_bytes()
    assert main(args) == EXIT_PASSED
    assert (workdir / "reports" / "hopf.json").read_bytes() == first


def test_singular_lift_exits_with_failure(workdir):
    code = main(["verify", "cp3", "--chart", "product_torus_lift", "--a", "0.2", "--points", "4"])
    assert code == EXIT_FAILED
    payload = json.loads((workdir / "reports" / "cp3_report.json").read_text())
    assert payload["passed"] is False
    assert "delta" in payload["error"]


def test_configuration_errors_exit_2(workdir):
    assert main(["verify", "s7"]) == EXIT_CONFIG
    bad = workdir / "bad.cfg"
    bad.write_text("suite=s7\nchart=equator\nwobble=1\n")
    assert main(["verify", "s7", "--config", str(bad)]) == EXIT_CONFIG
    assert main(["verify", "algebra", "--config", str(workdir / "missing.cfg")]) == EXIT_CONFIG
    with pytest.raises(SystemExit) as excinfo:
        main(["verify", "octonions"])
    assert excinfo.value.code == 2


def test_suite_can_come_from_the_config_file(workdir, capsys):
    cfg = SCENARIOS / "topology.cfg"
    assert main(["verify", "--config", str(cfg)]) == EXIT_PASSED
    assert "Suite topology" in capsys.readouterr().out
    payload = json.loads((workdir / "reports" / "topology_report.json").read_text())
    assert payload["scenario"]["suite"] == "topology"
    assert main(["verify"]) == EXIT_CONFIG


def test_flags_override_the_config_file(workdir):
    cfg = workdir / "torus.cfg"
    cfg.write_text("suite=s7\nchart=geodesic_sphere\npoints=50\n")
    args = ["verify", "s7", "--config", str(cfg), "--points", "4", "--containment-samples", "64"]
    assert main(args) == EXIT_PASSED
    payload = json.loads((workdir / "reports" / "s7_report.json").read_text())
    assert payload["scenario"]["points"] == 4
    assert len(payload["points"]) == 4


def test_study_command(workdir, capsys):
    steps = ["--steps", "1e-2", "5e-3", "2.5e-3"]
    args = ["study", "--chart", "geodesic_sphere", "--points", "6", *steps, "--out", "study.csv"]
    code = main(args)
    assert code == EXIT_PASSED
    table = pd.read_csv(workdir / "reports" / "study.csv")
    assert list(table.columns) == ["h", "max_residual", "fitted_order"]
    assert len(table) == 3


def test_coarse_study_warns(capsys):
    steps = ["--steps", "0.3", "0.15", "0.075"]
    main(["study", "--chart", "geodesic_sphere", "--points", "4", *steps])
    assert "truncation dominated" in capsys.readouterr().out


def test_study_rejects_short_ladders():
    assert main(["study", "--chart", "equator", "--steps", "1e-2", "5e-3"]) == EXIT_CONFIG


def test_table_command(workdir):
    args = ["table", "--level", "3", "--out", "table.csv", "--matrix", "0,1,0,0,0,0,0,0"]
    assert main(args) == EXIT_PASSED
    table = pd.read_csv(workdir / "reports" / "table.csv")
    assert len(table) == 64
    assert pd.read_csv(workdir / "reports" / "matrix.csv", header=None).shape == (8, 8)
    assert main(["table", "--level", "9"]) == EXIT_CONFIG


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

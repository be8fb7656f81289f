"""
Test Suite for Report Writing
"""

import json
import sys
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from app.schemas.report import CheckResult, PointRecord, ResidualReport
from app.schemas.scenario import load_scenario
from app.services.report_service import ReportWriter, get_report_writer
from app.services.study_service import build_study
from octo.geometry.charts import geodesic_sphere, sample_points
from octo.geometry.shape import shape_data
from octo.geometry.stencils import StencilSpec
from octo.hopf.action import w_gram


@pytest.fixture
def writer(tmp_path):
    return ReportWriter(tmp_path)


@pytest.fixture
def report():
    config = load_scenario(overrides={"suite": "s7", "chart": "equator", "points": 2})
    points = [
        PointRecord(
            index=k,
            u=[0.1 * k, 0.2],
            residual=1e-5,
            H=0.0,
            A_norm_sq=0.0,
            defect=1e-6,
            grad_term=0.0,
        )
        for k in range(2)
    ]
    checks = [CheckResult(name="finest_residual", passed=True, value=1e-5, threshold=1e-3)]
    return ResidualReport(
        suite=config.suite, scenario=config, points=points, checks=checks, duration_seconds=1.5
    )


def test_duration_stays_out_of_the_canonical_json(report):
    payload = json.loads(ReportWriter.canonical_json(report))
    assert "duration_seconds" not in payload
    assert payload["passed"] is True
    assert payload["scenario"]["chart"] == "equator"

    slower = report.model_copy(update={"duration_seconds": 99.0})
    assert ReportWriter.canonical_json(slower) == ReportWriter.canonical_json(report)
    assert ReportWriter.digest(slower) == ReportWriter.digest(report)


def test_failed_check_or_error_fails_the_report(report):
    failing = report.model_copy(update={"checks": [CheckResult(name="x", passed=False)]})
    assert not failing.passed
    assert not report.model_copy(update={"error": "boom"}).passed
    assert not report.model_copy(update={"checks": []}).passed


def test_write_report(writer, report, tmp_path):
    path = writer.write_report(report)
    assert path == tmp_path / "s7_report.json"
    assert path.read_text() == ReportWriter.canonical_json(report)
    nested = writer.write_report(report, tmp_path / "deep" / "run.json")
    assert nested.exists()


def test_points_frame_column_order(writer, report):
    frame = writer.points_frame(report)
    assert list(frame.columns) == [
        "index", "u0", "u1", "residual", "residual_alt", "H", "A_norm_sq", "defect", "grad_term"
    ]
    assert frame["index"].tolist() == [0, 1]


def test_table_frame():
    frame = ReportWriter.table_frame(3)
    assert list(frame.columns) == ["i", "j", "k", "sign"]
    assert len(frame) == 64
    row = frame[(frame.i == 1) & (frame.j == 2)].iloc[0]
    assert (row.k, row.sign) == (3, 1)


def test_matrix_csv_has_no_header(writer):
    path = writer.write_matrix(np.eye(8)[1], "matrix.csv")
    loaded = pd.read_csv(path, header=None)
    assert loaded.shape == (8, 8)
    assert loaded.iloc[1, 0] == 1.0


def test_gram_frame():
    rng = np.random.default_rng(3)
    x = rng.standard_normal((5, 8))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    frame = ReportWriter.gram_frame(x, w_gram(x))
    assert list(frame.columns) == ["a0", "a1", "det", "predicted", "rel_err"]
    assert frame["rel_err"].max() <= 1e-10


def test_shape_frame():
    chart = geodesic_sphere()
    u = sample_points(chart, 4)
    frame = ReportWriter.shape_frame(u, shape_data(chart, u, StencilSpec()))
    assert list(frame.columns) == [f"u{k}" for k in range(6)] + ["H", "A_norm_sq", "gradH_norm"]
    np.testing.assert_allclose(frame["H"], 1 / np.sqrt(3), atol=1e-8)


def test_convergence_frame(writer):
    study = build_study("residual", [1e-2, 5e-3, 2.5e-3], [4e-4, 1e-4, 2.5e-5])
    path = writer.write_csv(writer.convergence_frame(study), "study.csv")
    loaded = pd.read_csv(path)
    assert list(loaded.columns) == ["h", "max_residual", "fitted_order"]
    assert np.isnan(loaded["fitted_order"][0])
    assert loaded["fitted_order"][2] == pytest.approx(2.0)


def test_writer_singleton():
    assert get_report_writer() is get_report_writer()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

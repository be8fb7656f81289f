"""
Test Suite for the Suite Runner
"""

import sys
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from app.core.exceptions import ScenarioError
from app.schemas.scenario import load_scenario
from app.services import suite_service
from app.services.report_service import ReportWriter
from app.services.study_service import residual_ladder, scenario_chart
from app.services.suite_service import SuiteRunner, get_suite_runner, run_suite

SCENARIOS = Path(__file__).parent.parent.parent / "config" / "scenarios"


@pytest.fixture(scope="module")
def runner():
    return SuiteRunner()


def scenario(**values):
    return load_scenario(overrides=values)


def check_names(report):
    return {check.name for check in report.checks}


def check_named(report, name):
    return next(check for check in report.checks if check.name == name)


def test_runner_singleton():
    assert get_suite_runner() is get_suite_runner()


def test_algebra_suite(runner):
    report = runner.run(scenario(suite="algebra", normed_pairs=2000, random_trials=200))
    assert report.passed, report.failed_checks
    assert {
        "octonion_table",
        "normed_level_3",
        "zero_divisor_level_4",
        "non_associative_level_3",
        "non_commutative_level_2",
        "left_mul_matrix",
        "hopf_conjugation",
        "translational_square",
    } <= check_names(report)
    assert report.points == []


def test_topology_suite(runner):
    report = run_suite(scenario(suite="topology"))
    assert report.passed
    values = {check.name: check.value for check in report.checks}
    assert values == {
        "euler_octahedron_boundary": 2.0,
        "euler_seven_vertex_torus": 0.0,
        "euler_circle_cubed": 0.0,
    }


def test_hopf_suite(runner):
    report = runner.run(scenario(suite="hopf", points=10, random_trials=200))
    assert report.passed, report.failed_checks
    assert {
        "symmetrization_fixed_point",
        "right_translation_average",
        "gram_determinant",
    } <= check_names(report)


def test_equator_suite(runner):
    report = runner.run(scenario(suite="s7", chart="equator", points=10, containment_samples=256))
    assert report.passed, report.failed_checks
    assert len(report.points) == 10
    assert [p.index for p in report.points] == list(range(10))
    assert all(abs(p.H) < 1e-8 for p in report.points)
    assert report.convergence_order >= 1.8
    assert report.max_residual <= 1e-3
    assert "hemisphere_implies_equator" in check_names(report)


def test_perturbed_suite_shows_harmonicity_defect(runner):
    config = load_scenario(SCENARIOS / "s7_perturbed_sphere.cfg")
    assert config.mode == 2 and config.points >= 20
    report = runner.run(config)
    assert report.passed, report.failed_checks
    defect = check_named(report, "harmonicity_defect")
    assert defect.threshold == 10.0
    assert defect.value > defect.threshold
    assert all(p.defect > 10 * p.residual for p in report.points)
    assert "hemisphere_implies_equator" not in check_names(report)


def test_one_violating_point_fails_the_dichotomy(runner, monkeypatch):
    config = scenario(suite="s7", chart="perturbed_sphere", points=10)
    chart, u, results = residual_ladder(config, config.steps)
    finest = results[-1]
    defect = finest.defect.copy()
    defect[3] = 0.5 * finest.residual_norm[3]
    doctored = results[:-1] + [replace(finest, defect=defect)]
    monkeypatch.setattr(suite_service, "residual_ladder", lambda *_: (chart, u, doctored))

    report = runner.run(config)
    check = check_named(report, "harmonicity_defect")
    assert np.max(defect) > 10 * np.max(finest.residual_norm)
    assert not check.passed
    assert not report.passed
    assert check.value == pytest.approx(0.5)
    assert "point 3" in check.detail


def test_torus_suite_has_a_tangent_field(runner):
    config = scenario(suite="s7", chart="product_torus", points=10, containment_samples=512)
    report = runner.run(config)
    assert report.passed, report.failed_checks
    floor = next(c for c in report.checks if c.name == "tangent_field_floor")
    assert floor.value == pytest.approx(1.0, abs=1e-8)


def test_cp3_suite(runner):
    report = runner.run(scenario(suite="cp3", chart="product_torus_lift", points=8))
    assert report.passed, report.failed_checks
    for name in ("lift_invariance", "gauge_gamma", "gauge_residual"):
        check = check_named(report, name)
        assert check.threshold == 1e-10
        assert check.value <= 1e-10
    assert report.convergent_variant == "residual_alt"
    assert all(p.residual_alt is not None for p in report.points)


def test_gauge_stencil_targets_the_outer_step(runner):
    config = scenario(suite="cp3", chart="product_torus_lift")
    chart = scenario_chart(config)
    assert runner._gauge_stencil(config, chart).h_step == pytest.approx(5e-2)
    assert runner._gauge_stencil(config, chart.without_jet()).h_step == pytest.approx(5e-3)


def test_singular_set_violation_is_reported_verbatim(runner):
    report = runner.run(scenario(suite="cp3", chart="product_torus_lift", a=0.2, points=4))
    assert not report.passed
    assert report.error is not None
    assert "< delta = 0.1" in report.error
    assert report.checks == []


def test_bad_chart_parameters_raise(runner):
    with pytest.raises(ScenarioError):
        runner.run(scenario(suite="s7", chart="product_torus", p=2, q=2))


def test_rerun_is_byte_identical(runner):
    config = scenario(suite="s7", chart="geodesic_sphere", points=6, containment_samples=128)
    first, second = runner.run(config), runner.run(config)
    assert ReportWriter.canonical_json(first) == ReportWriter.canonical_json(second)
    assert ReportWriter.digest(first) == ReportWriter.digest(second)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

"""
Test Suite for Convergence Studies
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from app.core.exceptions import ScenarioError
from app.schemas.scenario import load_scenario
from app.services.study_service import (
    build_study,
    convergence_study,
    fit_order,
    scenario_chart,
    validate_steps,
)

STEPS = [1e-2, 5e-3, 2.5e-3]


def test_fit_order_recovers_power_laws():
    h = np.array(STEPS)
    assert fit_order(h, 3.0 * h**2) == pytest.approx(2.0)
    assert fit_order(h, 0.1 * h**4) == pytest.approx(4.0)
    assert fit_order(h, [1e-4, 0.0, 1e-6]) is None


def test_validate_steps():
    assert validate_steps(STEPS) == STEPS
    with pytest.raises(ScenarioError):
        validate_steps(STEPS[:2])
    with pytest.raises(ScenarioError):
        validate_steps([1e-2, 1e-2, 5e-3])
    with pytest.raises(ScenarioError):
        validate_steps([1e-2, 5e-3, -1e-3])


def test_study_rows_and_pairwise_orders():
    residuals = [4e-4, 1e-4, 2.5e-5]
    study = build_study("residual", STEPS, residuals)
    assert [row.h for row in study.rows] == STEPS
    assert study.rows[0].fitted_order is None
    assert study.rows[1].fitted_order == pytest.approx(2.0)
    assert study.order == pytest.approx(2.0)
    assert study.monotone
    assert study.warnings == []
    assert study.finest == 2.5e-5


def test_coarse_steps_are_flagged():
    study = build_study("residual", [0.3, 0.15, 0.075], [0.2, 0.05, 0.0125])
    assert any("truncation dominated" in w for w in study.warnings)


def test_non_monotone_residuals_are_flagged_not_hidden():
    study = build_study("residual", STEPS, [1e-4, 3e-4, 5e-5])
    assert not study.monotone
    assert any("does not decrease" in w for w in study.warnings)
    assert [row.max_residual for row in study.rows] == [1e-4, 3e-4, 5e-5]


def test_geodesic_sphere_study():
    config = load_scenario(overrides={"suite": "s7", "chart": "geodesic_sphere", "points": 10})
    (study,) = convergence_study(config, STEPS)
    assert study.order >= 1.8
    assert study.finest <= 1e-3
    assert study.monotone


def test_cp3_study_has_both_variants():
    config = load_scenario(overrides={"suite": "cp3", "chart": "product_torus_lift", "points": 6})
    studies = convergence_study(config)
    assert [s.label for s in studies] == ["residual", "residual_alt"]
    assert studies[1].order >= 1.5


def test_study_needs_a_residual_suite():
    with pytest.raises(ScenarioError):
        convergence_study(load_scenario(overrides={"suite": "topology"}))


def test_invalid_chart_parameters_are_scenario_errors():
    config = load_scenario(overrides={"suite": "s7", "chart": "product_torus", "p": 2, "q": 3})
    with pytest.raises(ScenarioError, match="p \\+ q = 6"):
        scenario_chart(config)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

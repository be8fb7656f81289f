"""
Pydantic Schemas for Scenarios and Reports
"""

from app.schemas.report import (
    CheckResult,
    ConvergenceRow,
    ConvergenceStudy,
    PointRecord,
    ResidualReport,
)
from app.schemas.scenario import ChartName, ScenarioConfig, Suite, load_scenario

__all__ = [
    "ChartName",
    "CheckResult",
    "ConvergenceRow",
    "ConvergenceStudy",
    "PointRecord",
    "ResidualReport",
    "ScenarioConfig",
    "Suite",
    "load_scenario",
]

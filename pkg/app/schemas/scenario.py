"""
Scenario Schema

Pydantic model for verification scenarios. A scenario names a suite, an
optional catalog chart with its parameters, the stencil and sampling setup,
and the output path. Scenario files are flat key=value text; command-line
flags override file values.
"""

import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from app.core.config import settings
from app.core.exceptions import ScenarioError
from octo.geometry.stencils import StencilSpec


class Suite(str, Enum):
    """Verification suites"""
    ALGEBRA = "algebra"
    S7 = "s7"
    CP3 = "cp3"
    HOPF = "hopf"
    TOPOLOGY = "topology"


class ChartName(str, Enum):
    """Catalog hypersurface charts"""
    EQUATOR = "equator"
    GEODESIC_SPHERE = "geodesic_sphere"
    PERTURBED_SPHERE = "perturbed_sphere"
    GREAT_SPHERE = "great_sphere"
    PRODUCT_TORUS = "product_torus"
    PRODUCT_TORUS_LIFT = "product_torus_lift"


# Parameters each chart builder accepts
CHART_PARAMS: Dict[ChartName, tuple] = {
    ChartName.EQUATOR: (),
    ChartName.GEODESIC_SPHERE: ("t0",),
    ChartName.PERTURBED_SPHERE: ("t0", "eps", "mode"),
    ChartName.GREAT_SPHERE: ("axis",),
    ChartName.PRODUCT_TORUS: ("p", "q", "a"),
    ChartName.PRODUCT_TORUS_LIFT: ("a",),
}

CHART_SUITES = (Suite.S7, Suite.CP3)
HORIZONTAL_CHARTS = (ChartName.PRODUCT_TORUS_LIFT,)
MIN_STUDY_STEPS = 3


class ScenarioConfig(BaseModel):
    """
    One verification run.

    Defaults come from the application settings, so OCTOGAUSS_* environment
    variables shift every scenario that leaves a field unset.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    suite: Suite

    # Chart
    chart: Optional[ChartName] = Field(None, description="Catalog chart for the s7 and cp3 suites")
    t0: Optional[float] = Field(None, gt=0, lt=math.pi, description="Latitude of sphere charts")
    eps: Optional[float] = Field(None, ge=0, description="Perturbation amplitude")
    mode: Optional[int] = Field(None, ge=1, description="Perturbation frequency")
    p: Optional[int] = Field(None, ge=1, description="First torus factor dimension")
    q: Optional[int] = Field(None, ge=1, description="Second torus factor dimension")
    a: Optional[float] = Field(None, gt=0, lt=1, description="First torus factor radius")
    axis: Optional[int] = Field(None, ge=0, le=7, description="Normal axis of a great sphere")

    # Stencil
    h: float = Field(
        default_factory=lambda: settings.h_step, gt=0, description="Finite-difference step"
    )
    order: int = Field(
        default_factory=lambda: settings.stencil_order, description="Stencil order (2 or 4)"
    )
    nesting: float = Field(
        default_factory=lambda: settings.nesting_factor, ge=1, description="Outer step multiplier"
    )
    analytic: bool = Field(
        default_factory=lambda: settings.analytic, description="Use analytic chart partials"
    )
    steps: List[float] = Field(
        default_factory=lambda: list(settings.study_steps),
        description="Step ladder for convergence orders"
    )

    # Sampling
    points: int = Field(default_factory=lambda: settings.points, gt=0, description="Sample points")
    containment_samples: int = Field(
        default_factory=lambda: settings.containment_samples,
        gt=0,
        description="Samples for hemisphere scans"
    )
    normed_pairs: int = Field(
        default_factory=lambda: settings.normed_pairs, gt=0, description="Normed-check pairs"
    )
    random_trials: int = Field(
        default_factory=lambda: settings.random_trials, gt=0, description="Other random trials"
    )
    seed: int = Field(default_factory=lambda: settings.seed, ge=0, description="Sampling seed")

    # Hopf / CP3
    quad: int = Field(
        default_factory=lambda: settings.quadrature_nodes, ge=8, description="Trapezoid nodes"
    )
    delta: float = Field(
        default_factory=lambda: settings.singular_delta, gt=0, description="Singular-set guard"
    )

    # Output
    output: Optional[str] = Field(None, description="JSON report path")

    @field_validator("steps", mode="before")
    @classmethod
    def split_steps(cls, value: Any) -> Any:
        if isinstance(value, str):
            return [item for item in value.replace(",", " ").split() if item]
        return value

    @field_validator("steps")
    @classmethod
    def check_steps(cls, value: List[float]) -> List[float]:
        if len(value) < MIN_STUDY_STEPS:
            raise ValueError(f"need at least {MIN_STUDY_STEPS} steps, got {len(value)}")
        if any(h <= 0 for h in value):
            raise ValueError(f"steps must be positive, got {value}")
        if any(b >= a for a, b in zip(value, value[1:])):
            raise ValueError(f"steps must be strictly decreasing, got {value}")
        return value

    @field_validator("order")
    @classmethod
    def check_order(cls, value: int) -> int:
        if value not in (2, 4):
            raise ValueError(f"order must be 2 or 4, got {value}")
        return value

    @field_validator("quad")
    @classmethod
    def check_quad(cls, value: int) -> int:
        if value % 2:
            raise ValueError(f"quad must be even, got {value}")
        return value

    @model_validator(mode="after")
    def check_chart(self) -> "ScenarioConfig":
        if self.suite in CHART_SUITES and self.chart is None:
            raise ValueError(f"suite '{self.suite.value}' needs a chart")
        if self.suite == Suite.CP3 and self.chart not in HORIZONTAL_CHARTS:
            chart = self.chart.value if self.chart else None
            raise ValueError(f"suite 'cp3' needs a horizontal lift, got chart '{chart}'")
        if self.chart is None:
            return self
        given = [
            name
            for names in CHART_PARAMS.values()
            for name in names
            if getattr(self, name) is not None
        ]
        foreign = sorted(set(given) - set(CHART_PARAMS[self.chart]))
        if foreign:
            raise ValueError(f"chart '{self.chart.value}' takes no parameters {foreign}")
        return self

    def chart_params(self) -> Dict[str, Any]:
        """Keyword arguments for the chart builder; unset values keep the builder defaults."""
        if self.chart is None:
            return {}
        values = {name: getattr(self, name) for name in CHART_PARAMS[self.chart]}
        return {name: value for name, value in values.items() if value is not None}

    def stencil(self, h_step: Optional[float] = None) -> StencilSpec:
        return StencilSpec(
            h_step=self.h if h_step is None else h_step,
            order=self.order,
            nesting_factor=self.nesting,
            analytic=self.analytic,
        )


def _format_errors(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "scenario"
        parts.append(f"{location}: {item['msg']}")
    return "; ".join(parts)


def load_scenario(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> ScenarioConfig:
    """
    Build a scenario from a key=value file and flag overrides.

    Args:
        path: Optional scenario file
        overrides: Flag values; None entries are ignored, the rest win over the file

    Returns:
        Validated ScenarioConfig

    Raises:
        ScenarioError: Missing file, unknown key, unknown suite or chart, or invalid value
    """
    values: Dict[str, Any] = {}
    if path is not None:
        file = Path(path)
        if not file.is_file():
            raise ScenarioError(f"Scenario file not found: {file}")
        for key, value in dotenv_values(file).items():
            if value not in (None, ""):
                values[key.strip().lower()] = value
    if overrides:
        values.update({key: value for key, value in overrides.items() if value is not None})

    try:
        return ScenarioConfig.model_validate(values)
    except ValidationError as e:
        raise ScenarioError(f"Invalid scenario: {_format_errors(e)}") from e

"""
Report Schema

Pydantic models for verification reports. The canonical JSON of a report is
model_dump(mode="json") with sorted keys; the wall-clock duration stays on the
model but out of the dump so reruns with the same seed are byte-identical.
"""

from typing import List, Optional

from pydantic import BaseModel, Field, computed_field

from app.schemas.scenario import ScenarioConfig, Suite


class PointRecord(BaseModel):
    """Per-sample values at the finest step"""

    index: int = Field(..., ge=0, description="Sample index")
    u: List[float] = Field(..., description="Chart parameters")
    residual: float = Field(..., ge=0, description="Residual norm")
    residual_alt: Optional[float] = Field(None, ge=0, description="Second sign variant (CP3 only)")
    H: float = Field(..., description="Mean curvature")
    A_norm_sq: float = Field(..., description="Squared norm of the shape operator")
    defect: Optional[float] = Field(None, ge=0, description="Tangential part of the Laplacian")
    grad_term: float = Field(..., ge=0, description="Scaled gradient term norm")


class CheckResult(BaseModel):
    """One acceptance rule and its outcome"""

    name: str
    passed: bool
    value: Optional[float] = Field(None, description="Measured quantity")
    threshold: Optional[float] = Field(None, description="Documented tolerance")
    detail: str = ""


class ConvergenceRow(BaseModel):
    h: float = Field(..., gt=0)
    max_residual: float = Field(..., ge=0)
    fitted_order: Optional[float] = Field(None, description="Order against the previous step")


class ConvergenceStudy(BaseModel):
    """Residual ladder of one residual variant"""

    label: str
    rows: List[ConvergenceRow]
    order: Optional[float] = Field(None, description="Log-log least-squares slope")
    monotone: bool = True
    warnings: List[str] = Field(default_factory=list)

    @property
    def finest(self) -> float:
        return self.rows[-1].max_residual


class ResidualReport(BaseModel):
    """
    Outcome of one suite run.

    A raised library error is kept verbatim in `error` and fails the report.
    """

    suite: Suite
    scenario: ScenarioConfig
    points: List[PointRecord] = Field(default_factory=list)
    checks: List[CheckResult] = Field(default_factory=list)
    studies: List[ConvergenceStudy] = Field(default_factory=list)
    max_residual: Optional[float] = None
    mean_residual: Optional[float] = None
    convergence_order: Optional[float] = None
    convergent_variant: Optional[str] = None
    error: Optional[str] = None
    duration_seconds: float = Field(default=0.0, ge=0, exclude=True)

    @computed_field  # type: ignore[misc]
    @property
    def passed(self) -> bool:
        if self.error is not None or not self.checks:
            return False
        return all(check.passed for check in self.checks)

    @property
    def failed_checks(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

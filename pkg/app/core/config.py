"""
Application Configuration

Centralized configuration management using pydantic-settings.
Supports environment variables and .env files.
"""

from typing import List, Optional

from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """
    Verification settings with support for environment variables.

    Set these via:
    1. Environment variables (e.g., OCTOGAUSS_SEED=11)
    2. .env file in project root
    3. Default values (below)
    """

    # Application
    app_name: str = Field(default="OctoGauss", description="Application name")
    app_version: str = Field(default="1.0.0", description="Application version")
    debug: bool = Field(default=False, description="Debug mode")
    log_level: str = Field(default="INFO", description="Root logging level")
    log_file: Optional[str] = Field(default=None, description="Optional log file path")

    # Algebraic tolerances
    algebra_tolerance: float = Field(default=1e-12, description="Random identity tolerance")
    matrix_tolerance: float = Field(default=1e-13, description="Matrix representation tolerance")
    skew_tolerance: float = Field(default=1e-13, description="Skew tolerance of field matrices")
    hopf_square_tolerance: float = Field(default=1e-10, description="Tolerance for R^2 = -Id")

    # Geometric tolerances
    containment_tolerance: float = Field(default=1e-8, description="Hemisphere sign tolerance")
    equator_tolerance: float = Field(default=1e-6, description="Equator containment tolerance")
    quadrature_tolerance: float = Field(default=1e-10, description="Hopf symmetrization tolerance")
    gram_tolerance: float = Field(default=1e-10, description="Gram determinant relative tolerance")
    gauge_tolerance: float = Field(default=1e-10, description="Representative rotation tolerance")
    orthogonality_tolerance: float = Field(default=1e-12, description="Fiber orthogonality")
    unit_tolerance: float = Field(default=1e-12, description="Unit and real-part gap of gamma")

    # Residual acceptance
    s7_order_threshold: float = Field(default=1.8, description="Minimum fitted order on S7 charts")
    s7_max_residual: float = Field(default=1e-3, description="Max S7 residual at the finest step")
    cp3_order_threshold: float = Field(default=1.5, description="Minimum fitted order on CP3 lifts")
    cp3_max_residual: float = Field(default=1e-2, description="Max CP3 residual at the finest step")
    harmonicity_ratio: float = Field(
        default=10.0,
        description="Non-CMC defect must exceed this multiple of the residual"
    )

    # Stencils
    h_step: float = Field(default=1e-3, description="Default finite-difference step")
    stencil_order: int = Field(default=2, description="Central difference order (2 or 4)")
    nesting_factor: float = Field(default=10.0, description="Outer step multiplier")
    analytic: bool = Field(default=True, description="Use analytic chart partials when available")
    study_steps: List[float] = Field(
        default=[1e-2, 5e-3, 2.5e-3],
        description="Default step ladder for convergence studies"
    )
    coarse_step_warning: float = Field(
        default=0.1,
        description="Steps at or above this are flagged as truncation dominated"
    )
    gauge_step: float = Field(
        default=5e-2,
        description="Outer step of the CP3 residual gauge comparison"
    )

    # Sampling
    points: int = Field(default=20, description="Sample points per chart")
    containment_samples: int = Field(default=4096, description="Samples for orthant scans")
    normed_pairs: int = Field(default=10_000, description="Random pairs for the normed check")
    random_trials: int = Field(default=1_000, description="Random trials for other identities")
    seed: int = Field(default=7, description="Seed for low-discrepancy and random sampling")

    # Hopf / CP3
    quadrature_nodes: int = Field(default=64, description="Trapezoid nodes for symmetrization")
    singular_delta: float = Field(default=0.1, description="Guard on a0^2 + a1^2")

    # Reports
    report_dir: str = Field(default="reports", description="Directory for JSON and CSV reports")

    class Config:
        """Pydantic configuration"""
        env_prefix = "OCTOGAUSS_"
        env_file = ".env"
        case_sensitive = False


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get application settings"""
    return settings

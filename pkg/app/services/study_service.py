"""
Convergence Study Service

Evaluates a residual on a ladder of decreasing steps and fits the observed
order as the least-squares slope of log residual against log h.
"""

from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import NDArray
from scipy import stats

from app.core.config import get_settings
from app.core.exceptions import ScenarioError
from app.core.logger import get_logger
from app.schemas.report import ConvergenceRow, ConvergenceStudy
from app.schemas.scenario import MIN_STUDY_STEPS, ScenarioConfig, Suite
from octo.exceptions import DegenerateChartError
from octo.gauss.gauss_map import GaussResidual, gauss_laplacian_residual
from octo.geometry.charts import HypersurfaceChart, build_chart, sample_points
from octo.hopf.cp3 import CP3Residual, cp3_laplacian_residual

logger = get_logger(__name__)

Residual = Union[GaussResidual, CP3Residual]

# Residual variants reported per suite, as (label, attribute of the residual result)
VARIANTS = {
    Suite.S7: (("residual", "residual_norm"),),
    Suite.CP3: (("residual", "residual_norm"), ("residual_alt", "residual_alt_norm")),
}


def validate_steps(steps: Sequence[float]) -> List[float]:
    """
    Raises:
        ScenarioError: Fewer than three steps, or steps not positive and strictly decreasing
    """
    values = [float(h) for h in steps]
    if len(values) < MIN_STUDY_STEPS:
        raise ScenarioError(
            f"A convergence study needs at least {MIN_STUDY_STEPS} steps, got {len(values)}"
        )
    if any(h <= 0 for h in values) or any(b >= a for a, b in zip(values, values[1:])):
        raise ScenarioError(f"Steps must be positive and strictly decreasing, got {values}")
    return values


def fit_order(steps: Sequence[float], residuals: Sequence[float]) -> Optional[float]:
    """Slope of log residual against log h; None when a residual vanishes."""
    r = np.asarray(residuals, dtype=np.float64)
    if np.any(r <= 0) or not np.all(np.isfinite(r)):
        return None
    fit = stats.linregress(np.log(np.asarray(steps, dtype=np.float64)), np.log(r))
    return float(fit.slope)


def build_study(
    label: str,
    steps: Sequence[float],
    residuals: Sequence[float],
    coarse_threshold: Optional[float] = None,
) -> ConvergenceStudy:
    """
    Assemble a ConvergenceStudy, flagging truncation-dominated steps and
    residual sequences that do not decrease.
    """
    steps, residuals = [float(h) for h in steps], [float(r) for r in residuals]
    if coarse_threshold is None:
        coarse_threshold = get_settings().coarse_step_warning
    warnings: List[str] = []

    coarse = [h for h in steps if h >= coarse_threshold]
    if coarse:
        warnings.append(f"steps {coarse} are at or above {coarse_threshold}: truncation dominated")

    monotone = all(b < a for a, b in zip(residuals, residuals[1:]))
    if not monotone:
        warnings.append(f"{label} does not decrease along the ladder: {list(residuals)}")

    order = fit_order(steps, residuals)
    if order is None:
        warnings.append(f"{label} vanished on the ladder; no order fitted")

    rows = []
    for k, (h, r) in enumerate(zip(steps, residuals)):
        pair = fit_order(steps[k - 1 : k + 1], residuals[k - 1 : k + 1]) if k else None
        rows.append(ConvergenceRow(h=h, max_residual=r, fitted_order=pair))

    for message in warnings:
        logger.warning(message)
    return ConvergenceStudy(
        label=label, rows=rows, order=order, monotone=monotone, warnings=warnings
    )


def scenario_chart(config: ScenarioConfig) -> HypersurfaceChart:
    """
    Raises:
        ScenarioError: The chart parameters do not define a chart
    """
    if config.chart is None:
        raise ScenarioError(f"Suite '{config.suite.value}' has no chart")
    try:
        return build_chart(config.chart.value, **config.chart_params())
    except DegenerateChartError as e:
        raise ScenarioError(str(e)) from e


def residual_ladder(
    config: ScenarioConfig, steps: Sequence[float]
) -> Tuple[HypersurfaceChart, NDArray[np.float64], List[Residual]]:
    """Chart, sample parameters and one residual result per step."""
    if config.suite not in VARIANTS:
        raise ScenarioError(f"Convergence studies need suite s7 or cp3, got '{config.suite.value}'")
    chart = scenario_chart(config)
    u = sample_points(chart, config.points, seed=config.seed)
    results: List[Residual] = []
    for h in steps:
        stencil = config.stencil(h)
        if config.suite == Suite.CP3:
            results.append(cp3_laplacian_residual(chart, u, stencil, delta=config.delta))
        else:
            results.append(gauss_laplacian_residual(chart, u, stencil))
        logger.debug(f"Residual ladder {chart.name}: h={h:g} done")
    return chart, u, results


def studies_from_ladder(
    suite: Suite, steps: Sequence[float], results: Sequence[Residual]
) -> List[ConvergenceStudy]:
    studies = []
    for label, attribute in VARIANTS[suite]:
        maxima = [float(np.max(getattr(result, attribute))) for result in results]
        studies.append(build_study(label, list(steps), maxima))
    return studies


def convergence_study(
    config: ScenarioConfig, steps: Optional[Sequence[float]] = None
) -> List[ConvergenceStudy]:
    """
    Residual ladder and fitted order for an s7 or cp3 scenario.

    Args:
        config: Scenario with suite s7 or cp3
        steps: Decreasing steps; the scenario's ladder when omitted

    Returns:
        One study per residual variant of the suite

    Raises:
        ScenarioError: Invalid ladder, or a suite without residuals
    """
    ladder = validate_steps(config.steps if steps is None else steps)
    logger.info(f"Convergence study for {config.suite.value} on {ladder}")
    _, _, results = residual_ladder(config, ladder)
    return studies_from_ladder(config.suite, ladder, results)

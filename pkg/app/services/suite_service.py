"""
Suite Runner Service

Executes a verification suite for a scenario and assembles the report.

Handles:
- Algebra invariants of the Cayley-Dickson tower
- The Gauss-map Laplacian identity on S7 charts
- The CP3 identity on horizontal lifts
- Hopf symmetrization and the W-field Gram determinant
- Euler characteristics of the standard complexes
"""

import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np

from app.core.config import Settings, get_settings
from app.core.exceptions import ScenarioError
from app.core.logger import get_logger
from app.schemas.report import CheckResult, ConvergenceStudy, PointRecord, ResidualReport
from app.schemas.scenario import ScenarioConfig, Suite
from app.services.study_service import residual_ladder, studies_from_ladder
from octo.algebra.cayley_dickson import (
    REFERENCE_OCTONION_TABLE,
    HypercomplexNumber,
    check_property,
    complex_associativity_check,
    find_zero_divisor,
    generate_mult_table,
    left_mul_matrix,
    mul_array,
    table_as_labels,
)
from octo.exceptions import OctoGaussError
from octo.gauss.fields import (
    custom_field,
    hopf_conjugation_holds,
    is_hopf_multiple,
    linear_field,
    translational_field,
)
from octo.gauss.gauss_map import gauss_map, tangential_field_floor
from octo.gauss.orthant import hemisphere_implies_equator, scan_directions
from octo.gauss.topology import (
    circle,
    euler_characteristic,
    octahedron_boundary,
    product_complex,
    seven_vertex_torus,
)
from octo.geometry.charts import HypersurfaceChart, sample_points
from octo.geometry.shape import analytic_inner
from octo.geometry.stencils import StencilSpec
from octo.hopf.action import (
    QuadratureSpec,
    WGram,
    hopf_act,
    hopf_symmetrize,
    is_hopf_invariant,
    w_field,
    w_gram,
    w_vectors,
)
from octo.hopf.cp3 import (
    LIFT_ANGLES,
    check_lift_invariance,
    cp3_gauss_map,
    cp3_laplacian_residual,
    rotate_representative,
)

logger = get_logger(__name__)

E = np.eye(8)

# Charts whose gradient of H stays below this are treated as CMC
CMC_GRADIENT_TOLERANCE = 1e-6
# A positive floor witnesses a nowhere-vanishing tangent field
FLOOR_THRESHOLD = 1e-3
GAUGE_ANGLE = 2.1
EXPECTED_EULER = {"octahedron_boundary": 2, "seven_vertex_torus": 0, "circle_cubed": 0}


def at_most(name: str, value: float, threshold: float, detail: str = "") -> CheckResult:
    passed = bool(value <= threshold)
    return CheckResult(name=name, passed=passed, value=value, threshold=threshold, detail=detail)


def at_least(name: str, value: Optional[float], threshold: float, detail: str = "") -> CheckResult:
    passed = value is not None and value >= threshold
    return CheckResult(
        name=name, passed=bool(passed), value=value, threshold=threshold, detail=detail
    )


def holds(name: str, flag: bool, detail: str = "") -> CheckResult:
    return CheckResult(name=name, passed=bool(flag), detail=detail)


@dataclass
class SuiteOutcome:
    """Partial report filled by one suite"""

    checks: List[CheckResult] = field(default_factory=list)
    points: List[PointRecord] = field(default_factory=list)
    studies: List[ConvergenceStudy] = field(default_factory=list)
    max_residual: Optional[float] = None
    mean_residual: Optional[float] = None
    convergence_order: Optional[float] = None
    convergent_variant: Optional[str] = None
    error: Optional[str] = None


def _unit_points(rng: np.random.Generator, n: int) -> np.ndarray:
    x = rng.standard_normal((n, 8))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


class SuiteRunner:
    """
    Suite execution service.

    Every suite is deterministic for a fixed scenario seed. Library errors
    become failed reports with the message kept verbatim; scenario errors
    propagate to the caller.
    """

    def __init__(self, settings: Optional[Settings] = None):
        """Initialize the runner"""
        self.settings = settings or get_settings()
        self._suites: Dict[Suite, Callable[[ScenarioConfig], SuiteOutcome]] = {
            Suite.ALGEBRA: self.run_algebra,
            Suite.S7: self.run_s7,
            Suite.CP3: self.run_cp3,
            Suite.HOPF: self.run_hopf,
            Suite.TOPOLOGY: self.run_topology,
        }

    def run(self, config: ScenarioConfig) -> ResidualReport:
        """
        Run the scenario's suite.

        Args:
            config: Validated scenario

        Returns:
            ResidualReport; failed when any check fails or the library raised

        Raises:
            ScenarioError: The scenario cannot be executed as written
        """
        start = time.perf_counter()
        logger.info(f"Running suite '{config.suite.value}'")
        try:
            outcome = self._suites[config.suite](config)
        except ScenarioError:
            raise
        except OctoGaussError as e:
            logger.error(f"Suite '{config.suite.value}' stopped: {e}")
            outcome = SuiteOutcome(error=str(e))

        report = ResidualReport(
            suite=config.suite,
            scenario=config,
            points=sorted(outcome.points, key=lambda record: record.index),
            checks=outcome.checks,
            studies=outcome.studies,
            max_residual=outcome.max_residual,
            mean_residual=outcome.mean_residual,
            convergence_order=outcome.convergence_order,
            convergent_variant=outcome.convergent_variant,
            error=outcome.error,
            duration_seconds=time.perf_counter() - start,
        )
        logger.info(
            f"Suite '{config.suite.value}' {'passed' if report.passed else 'FAILED'} "
            f"({len(report.checks) - len(report.failed_checks)}/{len(report.checks)} checks)"
        )
        return report

    # ------------------------------------------------------------------
    # Algebra

    def run_algebra(self, config: ScenarioConfig) -> SuiteOutcome:
        s = self.settings
        checks = []

        labels = table_as_labels(generate_mult_table(3))
        mismatches = sum(
            a != b for row, ref in zip(labels, REFERENCE_OCTONION_TABLE) for a, b in zip(row, ref)
        )
        checks.append(at_most("octonion_table", float(mismatches), 0.0, "mismatched entries of 64"))

        tol = s.algebra_tolerance
        for level in range(4):
            verdict = check_property(
                level, "normed", trials=config.normed_pairs, seed=config.seed, tol=tol
            )
            checks.append(
                CheckResult(
                    name=f"normed_level_{level}",
                    passed=verdict.holds,
                    value=verdict.max_defect,
                    threshold=s.algebra_tolerance,
                    detail=f"{verdict.random_checked} random pairs",
                )
            )

        checks.append(holds("no_zero_divisor_level_3", not find_zero_divisor(3).found))
        zero = find_zero_divisor(4, tol=s.algebra_tolerance)
        checks.append(
            CheckResult(
                name="zero_divisor_level_4",
                passed=zero.found,
                value=zero.product_norm if zero.found else None,
                threshold=s.algebra_tolerance,
                detail=(
                    f"{zero.x} * {zero.y}" if zero.found else f"none among {zero.searched} pairs"
                ),
            )
        )

        trials = config.random_trials

        def verdict_for(level: int, prop: str):
            return check_property(level, prop, trials=trials, seed=config.seed, tol=tol)

        assoc_2 = verdict_for(2, "associative")
        assoc_3 = verdict_for(3, "associative")
        comm_2 = verdict_for(2, "commutative")
        alt_3 = verdict_for(3, "alternative")
        alt_4 = verdict_for(4, "alternative")
        checks.append(
            holds("associative_level_2", assoc_2.holds, f"{assoc_2.basis_checked} basis triples")
        )
        checks.append(
            holds(
                "non_associative_level_3",
                not assoc_3.holds and assoc_3.random_checked == 0,
                f"basis witness {assoc_3.counterexample}",
            )
        )
        checks.append(
            holds("non_commutative_level_2", not comm_2.holds, f"witness {comm_2.counterexample}")
        )
        checks.append(holds("alternative_level_3", alt_3.holds))
        checks.append(
            holds("non_alternative_level_4", not alt_4.holds, f"witness {alt_4.counterexample}")
        )

        rng = np.random.default_rng(config.seed)
        x, y = rng.standard_normal((2, trials, 8))
        via_matrix = np.einsum("pij,pj->pi", left_mul_matrix(x), y)
        matrix_error = float(np.max(np.abs(via_matrix - mul_array(x, y))))
        checks.append(
            at_most("left_mul_matrix", matrix_error, s.matrix_tolerance, f"{trials} random pairs")
        )
        checks.append(holds("hopf_conjugation", hopf_conjugation_holds(), "(i) = A X0 A^-1"))

        skew, square = 0.0, 0.0
        for x0, w in zip(_unit_points(rng, trials), rng.standard_normal((trials, 8))):
            v = w - (w @ x0) * x0
            multiple = is_hopf_multiple(
                translational_field(v, x0).matrix, tol=s.hopf_square_tolerance
            )
            skew = max(skew, multiple.skew_defect * multiple.scale)
            square = max(square, multiple.square_defect)
        checks.append(
            at_most("translational_skew", skew, s.skew_tolerance, f"{trials} random fields")
        )
        checks.append(
            at_most("translational_square", square, s.hopf_square_tolerance, "normalized R^2 = -Id")
        )

        a, b = rng.standard_normal((2, trials, 2))
        targets = rng.standard_normal((trials, 8))
        complex_ok = all(
            complex_associativity_check(complex(*ai), complex(*bi), HypercomplexNumber(3, xi))
            for ai, bi, xi in zip(a, b, targets)
        )
        checks.append(holds("complex_associativity", complex_ok, f"{trials} random triples"))
        return SuiteOutcome(checks=checks)

    # ------------------------------------------------------------------
    # S7

    def run_s7(self, config: ScenarioConfig) -> SuiteOutcome:
        s = self.settings
        chart, u, results = residual_ladder(config, config.steps)
        studies = studies_from_ladder(config.suite, config.steps, results)
        study, finest = studies[0], results[-1]
        stencil = config.stencil(config.steps[-1])

        checks = [
            at_least(
                "convergence_order", study.order, s.s7_order_threshold, f"steps {config.steps}"
            ),
            at_most("finest_residual", study.finest, s.s7_max_residual),
        ]
        unit_gap = float(np.max(np.abs(np.linalg.norm(finest.gamma, axis=1) - 1.0)))
        real_part = float(np.max(np.abs(finest.gamma[:, 0])))
        checks.append(at_most("gauss_map_unit", unit_gap, s.unit_tolerance))
        checks.append(at_most("gauss_map_imaginary", real_part, s.unit_tolerance))

        cmc = float(np.max(finest.grad_H_norm)) <= CMC_GRADIENT_TOLERANCE
        if cmc:
            defect = float(np.max(finest.defect))
            checks.append(at_most("harmonicity_defect", defect, s.s7_max_residual, "CMC chart"))
            checks.append(self._hemisphere_check(config, chart))
        else:
            checks.append(self._dichotomy_check(finest.defect, finest.residual_norm))

        if chart.name == "product_torus":
            floor = tangential_field_floor(chart, u, E[1], stencil)
            checks.append(at_least("tangent_field_floor", floor, FLOOR_THRESHOLD, "x -> x * e1"))

        points = [
            PointRecord(
                index=k,
                u=[float(c) for c in u[k]],
                residual=float(finest.residual_norm[k]),
                H=float(finest.H[k]),
                A_norm_sq=float(finest.A_norm_sq[k]),
                defect=float(finest.defect[k]),
                grad_term=float(6.0 * np.linalg.norm(finest.grad_term[k])),
            )
            for k in range(len(u))
        ]
        return SuiteOutcome(
            checks=checks,
            points=points,
            studies=studies,
            max_residual=study.finest,
            mean_residual=float(np.mean(finest.residual_norm)),
            convergence_order=study.order,
            convergent_variant=study.label,
        )

    def _dichotomy_check(self, defect: np.ndarray, residual: np.ndarray) -> CheckResult:
        """Every point's defect must exceed ratio x its own residual."""
        ratio = self.settings.harmonicity_ratio
        ceiling = np.full_like(defect, np.finfo(np.float64).max)
        ratios = np.divide(defect, residual, out=ceiling, where=residual > 0)
        worst = int(np.argmin(ratios))
        return CheckResult(
            name="harmonicity_defect",
            passed=bool(np.all(defect > ratio * residual)),
            value=float(ratios[worst]),
            threshold=ratio,
            detail=(
                f"non-CMC chart: min defect / residual at point {worst} "
                f"({defect[worst]:.3e} vs {residual[worst]:.3e})"
            ),
        )

    def _hemisphere_check(self, config: ScenarioConfig, chart) -> CheckResult:
        s = self.settings
        u = sample_points(chart, config.containment_samples, seed=config.seed)
        gamma = gauss_map(chart, u, config.stencil())
        scan = hemisphere_implies_equator(
            gamma,
            scan_directions(seed=config.seed),
            tol=s.containment_tolerance,
            equator_tol=s.equator_tolerance,
        )
        return CheckResult(
            name="hemisphere_implies_equator",
            passed=scan.holds,
            value=scan.worst_equator_gap,
            threshold=s.equator_tolerance,
            detail=f"{len(scan.hemispheres)} of {scan.directions} directions bound a hemisphere",
        )

    # ------------------------------------------------------------------
    # CP3

    def run_cp3(self, config: ScenarioConfig) -> SuiteOutcome:
        s = self.settings
        chart, u, results = residual_ladder(config, config.steps)
        studies = studies_from_ladder(config.suite, config.steps, results)

        checks = [
            at_most(
                "lift_invariance", check_lift_invariance(chart, u, LIFT_ANGLES), s.gauge_tolerance
            ),
        ]
        convergent = [
            study
            for study in studies
            if study.order is not None
            and study.order >= s.cp3_order_threshold
            and study.finest <= s.cp3_max_residual
        ]
        for study in studies:
            if study not in convergent:
                logger.warning(
                    f"Sign variant '{study.label}' does not converge (order {study.order})"
                )
        checks.append(
            CheckResult(
                name="one_variant_converges",
                passed=len(convergent) == 1,
                value=float(len(convergent)),
                threshold=1.0,
                detail=", ".join(f"{st.label}: order {st.order}" for st in studies),
            )
        )
        chosen = convergent[0] if len(convergent) == 1 else None

        coarse = config.stencil(config.steps[0])
        rotated = cp3_gauss_map(
            rotate_representative(chart, GAUGE_ANGLE), u, coarse, delta=config.delta
        )
        gamma_gap = float(np.max(np.abs(rotated.gamma - results[0].gamma)))
        checks.append(at_most("gauge_gamma", gamma_gap, s.gauge_tolerance))

        attribute = "residual"
        if chosen is not None and chosen.label == "residual_alt":
            attribute = "residual_alt"
        gauge = self._gauge_stencil(config, chart)
        base = cp3_laplacian_residual(chart, u, gauge, delta=config.delta)
        moved = cp3_laplacian_residual(chart, u, gauge, delta=config.delta, theta=GAUGE_ANGLE)
        gauge_residual = float(
            np.max(np.abs(getattr(moved, attribute) - getattr(base, attribute)))
        )
        checks.append(
            at_most(
                "gauge_residual",
                gauge_residual,
                s.gauge_tolerance,
                f"{attribute}, outer step {s.gauge_step}",
            )
        )

        finest = results[-1]
        points = [
            PointRecord(
                index=k,
                u=[float(c) for c in u[k]],
                residual=float(finest.residual_norm[k]),
                residual_alt=float(finest.residual_alt_norm[k]),
                H=float(finest.H[k]),
                A_norm_sq=float(finest.A_norm_sq[k]),
                grad_term=float(5.0 * np.linalg.norm(finest.grad_term[k])),
            )
            for k in range(len(u))
        ]
        norms = finest.residual_alt_norm if attribute == "residual_alt" else finest.residual_norm
        return SuiteOutcome(
            checks=checks,
            points=points,
            studies=studies,
            max_residual=float(np.max(norms)),
            mean_residual=float(np.mean(norms)),
            convergence_order=chosen.order if chosen else None,
            convergent_variant=chosen.label if chosen else None,
        )

    def _gauge_stencil(self, config: ScenarioConfig, chart: HypersurfaceChart) -> StencilSpec:
        """Stencil whose outer step on derived quantities is the gauge step."""
        step = self.settings.gauge_step
        stencil = config.stencil(step)
        if analytic_inner(chart, stencil):
            return stencil
        return stencil.with_step(step / stencil.nesting_factor)

    # ------------------------------------------------------------------
    # Hopf

    def gram_scan(self, config: ScenarioConfig) -> tuple:
        """Random unit points and their W-field Gram data."""
        rng = np.random.default_rng(config.seed)
        x = _unit_points(rng, config.random_trials)
        return x, w_gram(x)

    def run_hopf(self, config: ScenarioConfig) -> SuiteOutcome:
        s = self.settings
        tol = s.quadrature_tolerance
        rng = np.random.default_rng(config.seed)
        quad = QuadratureSpec(config.quad)
        x = _unit_points(rng, config.points)
        thetas = rng.uniform(0.0, 2.0 * np.pi, 5)
        checks = []

        fixed = 0.0
        for v in list(E[1:]) + [np.concatenate([[0.0], rng.standard_normal(7)])]:
            field_ = w_field(v)
            gap = hopf_symmetrize(field_, quad)(x) - field_(x)
            fixed = max(fixed, float(np.max(np.abs(gap))))
        checks.append(at_most("symmetrization_fixed_point", fixed, tol, f"N = {quad.node_count}"))

        averaged = 0.0
        for k in range(1, 8):
            right = custom_field(lambda p, k=k: mul_array(p, E[k]), name=f"right_e{k}")
            gap = hopf_symmetrize(right, quad)(x) - w_vectors(x, E[k])
            averaged = max(averaged, float(np.max(np.abs(gap))))
        checks.append(at_most("right_translation_average", averaged, tol))

        a = rng.standard_normal((8, 8))
        once = hopf_symmetrize(linear_field(a - a.T, kind="custom"), quad)
        twice = hopf_symmetrize(once, quad)
        idempotence = float(np.max(np.abs(twice(x) - once(x))))
        checks.append(at_most("symmetrization_idempotent", idempotence, tol))
        checks.append(at_most("symmetrized_invariant", is_hopf_invariant(once, x, thetas), tol))

        right = custom_field(lambda p: mul_array(p, E[6]), name="right_e6")
        doubled = QuadratureSpec(2 * quad.node_count)
        gap = hopf_symmetrize(right, quad)(x) - hopf_symmetrize(right, doubled)(x)
        checks.append(
            at_most(
                "quadrature_converged",
                float(np.max(np.abs(gap))),
                tol,
                f"N vs {doubled.node_count}",
            )
        )

        y = _unit_points(rng, config.random_trials)
        theta, phi = rng.uniform(-np.pi, np.pi, (2, config.random_trials))
        group = float(np.max(np.abs(hopf_act(theta, hopf_act(phi, y)) - hopf_act(theta + phi, y))))
        checks.append(at_most("action_group_law", group, s.orthogonality_tolerance))

        _, gram = self.gram_scan(config)
        checks.extend(self._gram_checks(gram, config.random_trials))
        checks.append(holds("hopf_conjugation", hopf_conjugation_holds(), "(i) = A X0 A^-1"))
        return SuiteOutcome(checks=checks)

    def _gram_checks(self, gram: WGram, count: int) -> List[CheckResult]:
        s = self.settings
        determinant = float(np.max(gram.rel_err))
        fiber = float(np.max(np.abs(gram.fiber_products)))
        return [
            at_most("gram_determinant", determinant, s.gram_tolerance, f"{count} random points"),
            at_most("fiber_orthogonality", fiber, s.orthogonality_tolerance),
        ]

    # ------------------------------------------------------------------
    # Topology

    def run_topology(self, config: ScenarioConfig) -> SuiteOutcome:
        ring = circle(3)
        complexes = {
            "octahedron_boundary": octahedron_boundary(),
            "seven_vertex_torus": seven_vertex_torus(),
            "circle_cubed": product_complex(product_complex(ring, ring), ring),
        }
        checks = []
        for name, complex_ in complexes.items():
            chi = euler_characteristic(complex_)
            expected = EXPECTED_EULER[name]
            checks.append(
                CheckResult(
                    name=f"euler_{name}",
                    passed=chi == expected,
                    value=float(chi),
                    threshold=float(expected),
                    detail=f"f-vector {complex_.f_vector()}",
                )
            )
        return SuiteOutcome(checks=checks)


# Global runner instance
_suite_runner: Optional[SuiteRunner] = None


def get_suite_runner() -> SuiteRunner:
    """Get or create the suite runner singleton"""
    global _suite_runner
    if _suite_runner is None:
        _suite_runner = SuiteRunner()
    return _suite_runner


def run_suite(config: ScenarioConfig) -> ResidualReport:
    """Run a scenario with the shared runner."""
    return get_suite_runner().run(config)

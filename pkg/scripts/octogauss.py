"""
OctoGauss Command Line

Verification driver: runs a suite for a scenario, fits convergence orders on
step ladders, and exports multiplication tables.

Usage:
    python scripts/octogauss.py verify algebra
    python scripts/octogauss.py verify s7 --chart equator --out equator.json --csv points.csv
    python scripts/octogauss.py verify --config config/scenarios/cp3_lift.cfg
    python scripts/octogauss.py study --chart geodesic_sphere --steps 1e-2 5e-3 2.5e-3
    python scripts/octogauss.py table --level 3 --out table.csv

Exit status is 0 when every check passed, 1 when a check failed, and 2 on
configuration errors.
"""

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.core.config import get_settings
from app.core.logger import setup_logging
from app.schemas.report import ResidualReport
from app.schemas.scenario import ChartName, ScenarioConfig, Suite, load_scenario
from app.services.report_service import ReportWriter
from app.services.study_service import convergence_study, scenario_chart
from app.services.suite_service import SuiteRunner
from octo.exceptions import OctoGaussError
from octo.geometry.charts import sample_points
from octo.geometry.shape import shape_data

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

# Flags that map one-to-one onto scenario fields
SCENARIO_FLAGS = (
    "suite",
    "chart",
    "t0",
    "eps",
    "mode",
    "p",
    "q",
    "a",
    "axis",
    "h",
    "order",
    "nesting",
    "points",
    "containment_samples",
    "quad",
    "delta",
    "seed",
    "steps",
    "output",
)


def _banner(title: str) -> None:
    print("=" * 70)
    print(title)
    print("=" * 70)


def _add_scenario_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="Scenario file (key=value lines)")
    parser.add_argument("--chart", choices=[c.value for c in ChartName], help="Catalog chart")
    parser.add_argument("--t0", type=float, help="Latitude of sphere charts")
    parser.add_argument("--eps", type=float, help="Perturbation amplitude")
    parser.add_argument("--mode", type=int, help="Perturbation frequency")
    parser.add_argument("--p", type=int, help="First torus factor dimension")
    parser.add_argument("--q", type=int, help="Second torus factor dimension")
    parser.add_argument("--a", type=float, help="First torus factor radius")
    parser.add_argument("--axis", type=int, help="Normal axis of a great sphere")
    parser.add_argument("--h", type=float, help="Finite-difference step")
    parser.add_argument("--order", type=int, choices=[2, 4], help="Stencil order")
    parser.add_argument("--nesting", type=float, help="Outer step multiplier")
    parser.add_argument("--points", type=int, help="Sample points per chart")
    parser.add_argument(
        "--containment-samples", dest="containment_samples", type=int, help="Hemisphere samples"
    )
    parser.add_argument("--quad", type=int, help="Trapezoid nodes for symmetrization")
    parser.add_argument("--delta", type=float, help="Singular-set guard")
    parser.add_argument("--seed", type=int, help="Sampling seed")
    parser.add_argument("--steps", type=float, nargs="+", help="Decreasing step ladder")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Verify octonionic Gauss-map identities")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="Run a verification suite")
    verify.add_argument(
        "suite",
        nargs="?",
        choices=[s.value for s in Suite],
        help="Suite to run (taken from --config when omitted)",
    )
    _add_scenario_flags(verify)
    verify.add_argument("--out", dest="output", help="JSON report path")
    verify.add_argument("--csv", help="CSV projection (points, Gram scan or table)")
    verify.add_argument("--shape-csv", dest="shape_csv", help="Shape dump for chart suites")
    verify.set_defaults(handler=cmd_verify)

    study = sub.add_parser("study", help="Fit the convergence order on a step ladder")
    study.add_argument(
        "--suite", choices=[Suite.S7.value, Suite.CP3.value], help="Suite (s7 when unset)"
    )
    _add_scenario_flags(study)
    study.add_argument("--out", dest="table_out", help="Convergence table CSV")
    study.set_defaults(handler=cmd_study)

    table = sub.add_parser("table", help="Export a multiplication table")
    table.add_argument("--level", type=int, default=3, help="Doubling level")
    table.add_argument("--out", default="table.csv", help="Table CSV path")
    table.add_argument("--matrix", help="Comma-separated octonion for a left-multiplication matrix")
    table.add_argument("--matrix-out", dest="matrix_out", default="matrix.csv", help="Matrix CSV")
    table.set_defaults(handler=cmd_table)
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    values = {name: getattr(args, name, None) for name in SCENARIO_FLAGS}
    return {name: value for name, value in values.items() if value is not None}


def _print_report(report: ResidualReport) -> None:
    for check in report.checks:
        mark = "✓" if check.passed else "✗"
        value = "" if check.value is None else f" value={check.value:.3e}"
        threshold = "" if check.threshold is None else f" threshold={check.threshold:.1e}"
        detail = f"  ({check.detail})" if check.detail else ""
        print(f"  {mark} {check.name}{value}{threshold}{detail}")
    for study in report.studies:
        print(f"  {study.label}: order {_fmt(study.order)}, finest {study.finest:.3e}")
        for warning in study.warnings:
            print(f"  ⚠️  {warning}")
    if report.error:
        print(f"✗ {report.error}")


def _fmt(value: Optional[float]) -> str:
    return "n/a" if value is None else f"{value:.3f}"


def _write_projections(
    args: argparse.Namespace,
    config: ScenarioConfig,
    report: ResidualReport,
    runner: SuiteRunner,
    writer: ReportWriter,
) -> None:
    path: Optional[Path] = None
    if args.csv:
        if config.suite in (Suite.S7, Suite.CP3):
            path = writer.write_csv(writer.points_frame(report), args.csv)
        elif config.suite == Suite.HOPF:
            points, gram = runner.gram_scan(config)
            path = writer.write_csv(writer.gram_frame(points, gram), args.csv)
        elif config.suite == Suite.ALGEBRA:
            path = writer.write_csv(writer.table_frame(3), args.csv)
        else:
            print(f"⚠️  Suite '{config.suite.value}' has no CSV projection")
        if path is not None:
            print(f"✓ CSV written to {path}")
    if args.shape_csv:
        if config.chart is None:
            print(f"⚠️  Suite '{config.suite.value}' has no chart to dump")
            return
        chart = scenario_chart(config)
        u = sample_points(chart, config.points, seed=config.seed)
        frame = writer.shape_frame(u, shape_data(chart, u, config.stencil()))
        path = writer.write_csv(frame, args.shape_csv)
        print(f"✓ Shape dump written to {path}")


def cmd_verify(args: argparse.Namespace) -> int:
    _banner(f"OctoGauss Verification: {args.suite or args.config or '(no suite)'}")

    print("\n[1/3] Loading scenario...")
    config = load_scenario(args.config, _overrides(args))
    chart = f", chart {config.chart.value}" if config.chart else ""
    print(f"✓ Suite {config.suite.value}{chart}, seed {config.seed}")

    print("\n[2/3] Running checks...")
    runner = SuiteRunner()
    report = runner.run(config)
    _print_report(report)

    print("\n[3/3] Writing reports...")
    writer = ReportWriter()
    path = writer.write_report(report)
    print(f"✓ Report written to {path}")
    print(f"  sha256 {writer.digest(report)}")
    _write_projections(args, config, report, runner, writer)

    print("\n" + "=" * 70)
    passed = len(report.checks) - len(report.failed_checks)
    print(f"Checks:         {passed}/{len(report.checks)} passed")
    if report.max_residual is not None:
        print(f"Max residual:   {report.max_residual:.3e}")
        print(f"Order:          {_fmt(report.convergence_order)}")
    print(f"Duration:       {report.duration_seconds:.2f} s")
    print("=" * 70)
    if report.passed:
        print("✅ All checks passed")
        return EXIT_PASSED
    print("⚠️  Verification failed")
    return EXIT_FAILED


def cmd_study(args: argparse.Namespace) -> int:
    _banner("OctoGauss Convergence Study")
    overrides = _overrides(args)
    overrides.setdefault("suite", Suite.S7.value)

    print("\n[1/3] Loading scenario...")
    config = load_scenario(args.config, overrides)
    print(f"✓ Suite {config.suite.value} on chart {config.chart.value if config.chart else '-'}")

    print("\n[2/3] Evaluating the step ladder...")
    studies = convergence_study(config, args.steps)
    for study in studies:
        print(f"  {study.label}")
        for row in study.rows:
            print(
                f"    h={row.h:<10g} max residual {row.max_residual:.3e}  "
                f"order {_fmt(row.fitted_order)}"
            )
        print(f"  fitted order {_fmt(study.order)}")
        for warning in study.warnings:
            print(f"  ⚠️  {warning}")

    print("\n[3/3] Writing tables...")
    writer = ReportWriter()
    if args.table_out:
        base = Path(args.table_out)
        for study in studies:
            target = base
            if study.label != "residual":
                target = base.with_name(f"{base.stem}_{study.label}{base.suffix}")
            path = writer.write_csv(writer.convergence_frame(study), target)
            print(f"✓ {study.label} table written to {path}")
    else:
        print("  (no --out given)")

    settings = get_settings()
    threshold = settings.s7_order_threshold
    if config.suite == Suite.CP3:
        threshold = settings.cp3_order_threshold
    converged = any(study.order is not None and study.order >= threshold for study in studies)
    print("\n" + "=" * 70)
    if converged:
        print(f"✅ Observed order meets {threshold}")
        return EXIT_PASSED
    print(f"⚠️  No residual reaches order {threshold}")
    return EXIT_FAILED


def cmd_table(args: argparse.Namespace) -> int:
    _banner(f"OctoGauss Multiplication Table (level {args.level})")
    writer = ReportWriter()
    frame = writer.table_frame(args.level)
    print(f"✓ {len(frame)} basis products written to {writer.write_csv(frame, args.out)}")
    if args.matrix:
        try:
            coeffs = [float(c) for c in args.matrix.split(",")]
        except ValueError as e:
            raise OctoGaussError(
                f"--matrix needs comma-separated numbers, got '{args.matrix}'"
            ) from e
        print(f"✓ Matrix written to {writer.write_matrix(coeffs, args.matrix_out)}")
    return EXIT_PASSED


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments and run a subcommand.

    Returns:
        Process exit status
    """
    args = build_parser().parse_args(argv)
    settings = get_settings()
    setup_logging(settings.log_level, settings.log_file)
    try:
        return args.handler(args)
    except OctoGaussError as e:
        print(f"✗ Configuration error: {e}")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

"""
Report Writing Service

Canonical JSON reports with a SHA-256 digest, and pandas CSV projections
with fixed column orders for plotting elsewhere.
"""

import hashlib
import json
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike

from app.core.config import get_settings
from app.core.logger import get_logger
from app.schemas.report import ConvergenceStudy, ResidualReport
from octo.algebra.cayley_dickson import generate_mult_table, left_mul_matrix
from octo.geometry.shape import ShapeData
from octo.hopf.action import WGram

logger = get_logger(__name__)

PathLike = Union[str, Path]

TABLE_COLUMNS = ["i", "j", "k", "sign"]
GRAM_COLUMNS = ["a0", "a1", "det", "predicted", "rel_err"]
CONVERGENCE_COLUMNS = ["h", "max_residual", "fitted_order"]
POINT_TAIL = ["residual", "residual_alt", "H", "A_norm_sq", "defect", "grad_term"]
SHAPE_TAIL = ["H", "A_norm_sq", "gradH_norm"]


def _u_columns(m: int) -> List[str]:
    return [f"u{k}" for k in range(m)]


class ReportWriter:
    """
    Writes verification reports.

    Relative paths without a directory land in the report directory.
    """

    def __init__(self, report_dir: Optional[PathLike] = None):
        """
        Args:
            report_dir: Directory for default outputs (settings.report_dir when omitted)
        """
        self.report_dir = Path(report_dir or get_settings().report_dir)

    def resolve(self, path: PathLike) -> Path:
        target = Path(path)
        if not target.is_absolute() and target.parent == Path("."):
            target = self.report_dir / target
        target.parent.mkdir(parents=True, exist_ok=True)
        return target

    # ------------------------------------------------------------------
    # JSON

    @staticmethod
    def canonical_json(report: ResidualReport) -> str:
        """Sorted-key JSON of the report, duration excluded."""
        return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"

    @classmethod
    def digest(cls, report: ResidualReport) -> str:
        """SHA-256 of the canonical JSON bytes"""
        return hashlib.sha256(cls.canonical_json(report).encode("utf-8")).hexdigest()

    def write_report(self, report: ResidualReport, path: Optional[PathLike] = None) -> Path:
        """
        Write the canonical JSON report.

        Args:
            report: Suite report
            path: Target file; `<suite>_report.json` in the report directory when omitted

        Returns:
            Path written
        """
        target = self.resolve(path or report.scenario.output or f"{report.suite.value}_report.json")
        target.write_text(self.canonical_json(report), encoding="utf-8")
        logger.info(f"Report written to {target}")
        return target

    # ------------------------------------------------------------------
    # CSV frames

    @staticmethod
    def points_frame(report: ResidualReport) -> pd.DataFrame:
        m = len(report.points[0].u) if report.points else 0
        rows = []
        for record in report.points:
            row = {"index": record.index}
            row.update(dict(zip(_u_columns(m), record.u)))
            row.update({name: getattr(record, name) for name in POINT_TAIL})
            rows.append(row)
        return pd.DataFrame(rows, columns=["index"] + _u_columns(m) + POINT_TAIL)

    @staticmethod
    def table_frame(level: int) -> pd.DataFrame:
        table = generate_mult_table(level)
        return pd.DataFrame(
            [(entry.i, entry.j, entry.k, entry.sign) for entry in table], columns=TABLE_COLUMNS
        )

    @staticmethod
    def matrix_frame(x: ArrayLike) -> pd.DataFrame:
        """The 8x8 left-multiplication matrix of x."""
        return pd.DataFrame(left_mul_matrix(np.asarray(x, dtype=np.float64)))

    @staticmethod
    def gram_frame(points: ArrayLike, gram: WGram) -> pd.DataFrame:
        x = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return pd.DataFrame(
            {
                "a0": x[:, 0],
                "a1": x[:, 1],
                "det": gram.det,
                "predicted": gram.predicted,
                "rel_err": gram.rel_err,
            },
            columns=GRAM_COLUMNS,
        )

    @staticmethod
    def shape_frame(u: ArrayLike, shape: ShapeData) -> pd.DataFrame:
        params = np.atleast_2d(np.asarray(u, dtype=np.float64))
        frame = pd.DataFrame(params, columns=_u_columns(params.shape[1]))
        frame["H"] = shape.H
        frame["A_norm_sq"] = shape.A_norm_sq
        frame["gradH_norm"] = shape.grad_H_norm if shape.grad_H_norm is not None else np.nan
        return frame

    @staticmethod
    def convergence_frame(study: ConvergenceStudy) -> pd.DataFrame:
        return pd.DataFrame([row.model_dump() for row in study.rows], columns=CONVERGENCE_COLUMNS)

    def write_csv(self, frame: pd.DataFrame, path: PathLike, header: bool = True) -> Path:
        target = self.resolve(path)
        frame.to_csv(target, index=False, header=header)
        logger.info(f"CSV written to {target} ({len(frame)} rows)")
        return target

    def write_matrix(self, x: ArrayLike, path: PathLike) -> Path:
        """Matrix8 layout: 8 rows of 8, no header."""
        return self.write_csv(self.matrix_frame(x), path, header=False)


# Global writer instance
_report_writer: Optional[ReportWriter] = None


def get_report_writer() -> ReportWriter:
    """Get or create the report writer singleton"""
    global _report_writer
    if _report_writer is None:
        _report_writer = ReportWriter()
    return _report_writer

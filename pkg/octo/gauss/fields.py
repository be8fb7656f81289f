"""
Vector Fields on S7

Left translation to the identity, translational (Killing) fields built from
octonionic right multiplication, and the Hopf normal form of their matrices.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from octo.algebra.cayley_dickson import conj_array, left_mul_matrix, mul_array, right_mul_matrix
from octo.exceptions import NonTangentError, ZeroFieldError

logger = logging.getLogger(__name__)

TANGENT_TOLERANCE = 1e-12

FieldFn = Callable[[NDArray[np.float64]], NDArray[np.float64]]

# Block rotation X0 and the permutation A with (i) = A X0 A^-1
X0_MATRIX = np.kron(np.eye(4, dtype=int), np.array([[0, 1], [-1, 0]], dtype=int))
HOPF_CONJUGATOR = np.eye(8, dtype=int)[[1, 0, 3, 2, 5, 4, 6, 7]]
X0_MATRIX.setflags(write=False)
HOPF_CONJUGATOR.setflags(write=False)


def _unit_points(x: ArrayLike, tol: float = TANGENT_TOLERANCE) -> NDArray[np.float64]:
    x = np.asarray(x, dtype=np.float64)
    radius = np.linalg.norm(x, axis=-1)
    if np.any(np.abs(radius - 1.0) > tol):
        worst = np.max(np.abs(radius - 1.0)) + 1.0
        raise NonTangentError(f"Point is not on S7: |x| = {worst:.15g}")
    return x


def translate_to_identity(
    x: ArrayLike, w: ArrayLike, tol: float = TANGENT_TOLERANCE
) -> NDArray[np.float64]:
    """
    Gamma_x(w) = x^-1 * w, a linear isometry T_x S7 -> Im O.

    Args:
        x: (..., 8) unit points
        w: (..., 8) tangent vectors at x

    Raises:
        NonTangentError: If x is not unit or w is not orthogonal to x
    """
    x = _unit_points(x, tol)
    w = np.asarray(w, dtype=np.float64)
    radial = np.sum(x * w, axis=-1)
    scale = np.maximum(1.0, np.linalg.norm(w, axis=-1))
    if np.any(np.abs(radial) > tol * scale):
        raise NonTangentError(f"Vector is not tangent: <w, x> = {np.max(np.abs(radial)):.3g}")
    # |x| = 1 so x^-1 = conj(x)
    return mul_array(conj_array(x), w)


@dataclass(frozen=True)
class VectorFieldSpec:
    """
    Tagged evaluable vector field on S7.

    Attributes:
        kind: translational, hopf, w_field, symmetrized or custom
        evaluator: (N, 8) points -> (N, 8) vectors
        matrix: Generating matrix for linear fields
        params: Construction parameters
    """

    kind: str
    evaluator: FieldFn
    matrix: Optional[NDArray[np.float64]] = None
    params: Dict[str, Any] = field(default_factory=dict)

    def __call__(self, x: ArrayLike) -> NDArray[np.float64]:
        return self.evaluator(np.asarray(x, dtype=np.float64))

    def tangency_defect(self, x: ArrayLike) -> float:
        """max |<X(x), x>| over the given points."""
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        return float(np.max(np.abs(np.einsum("pk,pk->p", self(x), x))))

    def check_tangent(self, x: ArrayLike, tol: float = TANGENT_TOLERANCE) -> None:
        defect = self.tangency_defect(x)
        if defect > tol:
            raise NonTangentError(f"Field '{self.kind}' is not tangent to S7: defect {defect:.3g}")


def translational_field(
    v: ArrayLike, x0: ArrayLike, tol: float = TANGENT_TOLERANCE
) -> VectorFieldSpec:
    """
    V_v(x) = x * (x0^-1 * v), the right-translation Killing field with V_v(x0) = v.

    Its generating matrix is the right multiplication by x0^-1 * v, skew
    whenever that octonion is imaginary.
    """
    x0 = np.asarray(x0, dtype=np.float64)
    generator = translate_to_identity(x0, v, tol)
    matrix = right_mul_matrix(generator)
    matrix.setflags(write=False)

    def evaluator(x):
        return mul_array(x, generator)

    return VectorFieldSpec(
        kind="translational",
        evaluator=evaluator,
        matrix=matrix,
        params={"v": np.asarray(v, dtype=np.float64).tolist(), "x0": x0.tolist()},
    )


def linear_field(matrix: ArrayLike, kind: str = "hopf") -> VectorFieldSpec:
    """Field x -> M x for a skew 8x8 matrix M."""
    m = np.array(matrix, dtype=np.float64)
    m.setflags(write=False)
    return VectorFieldSpec(kind=kind, evaluator=lambda x: x @ m.T, matrix=m)


def custom_field(fn: FieldFn, name: str = "custom") -> VectorFieldSpec:
    return VectorFieldSpec(kind="custom", evaluator=fn, params={"name": name})


@dataclass(frozen=True)
class HopfMultiple:
    holds: bool
    scale: float
    skew_defect: float
    square_defect: float


def is_hopf_multiple(field_matrix: ArrayLike, tol: float = 1e-10) -> HopfMultiple:
    """
    Decide whether M = scale * U with U skew and orthogonal, i.e. U^2 = -Id.

    Accepts 8x8 matrices of S7 fields and 4x4 matrices of S3 fields. The scale
    is the Frobenius norm over sqrt(n), which is |v| for R_v.

    Raises:
        ZeroFieldError: If the matrix vanishes
    """
    m = np.asarray(field_matrix, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (4, 8):
        raise ValueError(f"Expected a 4x4 or 8x8 matrix, got shape {m.shape}")
    n = m.shape[0]
    scale = float(np.linalg.norm(m) / np.sqrt(n))
    if scale == 0.0:
        raise ZeroFieldError("The zero field is not a multiple of a Hopf field")
    unit = m / scale
    skew_defect = float(np.max(np.abs(unit + unit.T)))
    square_defect = float(np.max(np.abs(unit @ unit + np.eye(n))))
    holds = skew_defect <= tol and square_defect <= tol
    logger.debug(
        f"Hopf test: scale={scale:.6g}, skew={skew_defect:.2e}, square={square_defect:.2e}"
    )
    return HopfMultiple(
        holds=holds, scale=scale, skew_defect=skew_defect, square_defect=square_defect
    )


def i_matrix() -> NDArray[np.int_]:
    """Left multiplication by e1 as an integer matrix."""
    return np.rint(left_mul_matrix(np.eye(8)[1])).astype(int)


def hopf_conjugator() -> NDArray[np.int_]:
    """The permutation A (an involution, so A^-1 = A)."""
    return HOPF_CONJUGATOR.copy()


def hopf_conjugation_holds() -> bool:
    """(i) == A X0 A^-1 in integer arithmetic."""
    a = HOPF_CONJUGATOR
    return bool(np.array_equal(a @ X0_MATRIX @ a.T, i_matrix()))

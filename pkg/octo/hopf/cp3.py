"""
CP3 Geometry Through Horizontal Lifts

Points of CP3 are Hopf orbits of unit octonions; tangent vectors are
horizontal vectors at a representative, orthogonal to x and i*x. The frame
Z_1..Z_6 is the horizontal projection of W_e2..W_e7, and the Gauss map of a
hypersurface sends the horizontal unit normal to its six Z-coordinates.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from octo.algebra.cayley_dickson import left_mul_matrix
from octo.exceptions import DegenerateChartError, NonTangentError, SingularSetError
from octo.geometry.charts import HypersurfaceChart
from octo.geometry.shape import (
    ShapeData,
    derived_jet,
    flat_metric,
    gradient_from_differential,
    laplacian_from_jets,
    pointwise_shape,
)
from octo.geometry.stencils import StencilSpec
from octo.hopf.action import circle_element, hopf_act, i_times, w_frame

logger = logging.getLogger(__name__)

HORIZONTAL_TOLERANCE = 1e-12
FRAME_SIZE = 6
DEFAULT_DELTA = 0.1
# Fiber angles sampled by the lift contract and the tolerance it must meet
LIFT_ANGLES = np.linspace(0.0, 2.0 * np.pi, 7)
LIFT_TOLERANCE = 1e-10


# ---------------------------------------------------------------------------
# Points and horizontal vectors


@dataclass(frozen=True)
class CPPoint:
    """A point of CP3 given by a unit representative of its Hopf orbit."""

    representative: NDArray[np.float64]

    def __post_init__(self):
        rep = np.array(self.representative, dtype=np.float64)
        if rep.shape != (8,) or abs(np.linalg.norm(rep) - 1.0) > HORIZONTAL_TOLERANCE:
            raise NonTangentError(f"Representative must be a unit vector of R^8, got {rep}")
        rep.setflags(write=False)
        object.__setattr__(self, "representative", rep)

    @property
    def fiber(self) -> NDArray[np.float64]:
        return i_times(self.representative)

    @property
    def a0a1(self) -> float:
        """a0^2 + a1^2, invariant along the orbit."""
        return float(self.representative[0] ** 2 + self.representative[1] ** 2)

    def rotated(self, theta: float) -> CPPoint:
        return CPPoint(hopf_act(theta, self.representative))


@dataclass(frozen=True)
class HorizontalVector:
    base: CPPoint
    vec: NDArray[np.float64]

    def __post_init__(self):
        vec = np.array(self.vec, dtype=np.float64)
        x = self.base.representative
        scale = max(1.0, float(np.linalg.norm(vec)))
        off = max(abs(float(vec @ x)), abs(float(vec @ self.base.fiber)))
        if off > HORIZONTAL_TOLERANCE * scale:
            raise NonTangentError(
                f"Vector is not horizontal at the representative: defect {off:.3g}"
            )
        vec.setflags(write=False)
        object.__setattr__(self, "vec", vec)


def horizontal_part(x: ArrayLike, w: ArrayLike) -> NDArray[np.float64]:
    """w - <w, x> x - <w, i x> i x, batched over the last axis."""
    x = np.asarray(x, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    ix = i_times(x)
    along_x = np.sum(w * x, axis=-1, keepdims=True) * x
    along_ix = np.sum(w * ix, axis=-1, keepdims=True) * ix
    return w - along_x - along_ix


def cp3_horizontal_project(x: ArrayLike, w: ArrayLike) -> HorizontalVector:
    base = CPPoint(np.asarray(x, dtype=np.float64))
    return HorizontalVector(base, horizontal_part(base.representative, w))


# ---------------------------------------------------------------------------
# Z-frame


def guard_singular_set(x: ArrayLike, delta: float = DEFAULT_DELTA) -> None:
    """
    Raises:
        SingularSetError: If a0^2 + a1^2 < delta at any point
    """
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    r2 = x[:, 0] ** 2 + x[:, 1] ** 2
    if np.any(r2 < delta):
        worst = int(np.argmin(r2))
        raise SingularSetError(
            f"Representative {np.round(x[worst], 6).tolist()} has a0^2 + a1^2 = {r2[worst]:.3g} "
            f"< delta = {delta} (det Gram = {r2[worst] ** 4:.3g} < {delta ** 4:.3g})"
        )


def z_frame(x: ArrayLike) -> NDArray[np.float64]:
    """Z_1..Z_6 at the representatives, shape (..., 6, 8)."""
    x = np.asarray(x, dtype=np.float64)
    tail = w_frame(x)[..., 1:, :]
    return horizontal_part(x[..., None, :], tail)


def z_field(n: int, p: CPPoint, delta: Optional[float] = None) -> HorizontalVector:
    """
    Z_n(p), the horizontal part of W_e(n+1) at the representative.

    With delta given the representative must stay out of the singular set.
    """
    if not 1 <= n <= FRAME_SIZE:
        raise ValueError(f"Z-frame index must lie in 1..6, got {n}")
    if delta is not None:
        guard_singular_set(p.representative, delta)
    return HorizontalVector(p, z_frame(p.representative)[n - 1])


@dataclass(frozen=True)
class ZGram:
    """
    Attributes:
        z: (P, 6, 6) Gram matrix of Z_1..Z_6
        w: (P, 6, 6) Gram matrix of W_e2..W_e7
        vertical: (P, 6) components <W_e(n+1)(x), i x>
    """

    z: NDArray[np.float64]
    w: NDArray[np.float64]
    vertical: NDArray[np.float64]

    @property
    def rank_one_gap(self) -> NDArray[np.float64]:
        """max |Gram(Z) - Gram(W) + c c^T| per point."""
        gap = self.z - self.w + np.einsum("pn,pm->pnm", self.vertical, self.vertical)
        return np.max(np.abs(gap), axis=(1, 2))


def z_gram(x: ArrayLike) -> ZGram:
    pts = np.atleast_2d(np.asarray(x, dtype=np.float64))
    w = w_frame(pts)[:, 1:, :]
    z = horizontal_part(pts[:, None, :], w)
    return ZGram(
        z=np.einsum("pnk,pmk->pnm", z, z),
        w=np.einsum("pnk,pmk->pnm", w, w),
        vertical=np.einsum("pnk,pk->pn", w, i_times(pts)),
    )


def cp3_translate(x: ArrayLike, w: ArrayLike) -> NDArray[np.float64]:
    """Gamma_x(w) = (<w, Z_1(x)>, ..., <w, Z_6(x)>) for horizontal w."""
    x = np.asarray(x, dtype=np.float64)
    return np.einsum("...nk,...k->...n", z_frame(x), np.asarray(w, dtype=np.float64))


def z_combination(v: ArrayLike, x: ArrayLike) -> NDArray[np.float64]:
    """v_1 Z_1(x) + ... + v_6 Z_6(x)."""
    return np.einsum("...n,...nk->...k", np.asarray(v, dtype=np.float64), z_frame(x))


def z_inverse_translation(v: ArrayLike, x: ArrayLike) -> NDArray[np.float64]:
    """
    Gamma_x^-1(v): the horizontal vector whose Z-coordinates are v.

    Gram(Z) can drop rank off the singular set (Z_n vanishes where W_e(n+1)
    is vertical), so the coefficients come from the pseudo-inverse.
    """
    frame = z_frame(x)
    gram = np.einsum("...nk,...mk->...nm", frame, frame)
    gram_pinv = np.linalg.pinv(gram, hermitian=True)
    coeffs = np.einsum("...nm,...m->...n", gram_pinv, np.asarray(v, dtype=np.float64))
    return np.einsum("...n,...nk->...k", coeffs, frame)


# ---------------------------------------------------------------------------
# Gauss map and Laplacian identity of lifted hypersurfaces


def _require_lift(chart: HypersurfaceChart, pts: NDArray[np.float64]) -> None:
    """
    The horizontal flag is not trusted: the defining function must vanish on
    e^(i theta) f(u) for every sampled fiber angle.
    """
    if not chart.horizontal:
        raise DegenerateChartError(
            f"Chart '{chart.name}' is not a horizontal lift of a CP3 hypersurface"
        )
    defect = check_lift_invariance(chart, pts, LIFT_ANGLES)
    if defect > LIFT_TOLERANCE:
        raise DegenerateChartError(
            f"Chart '{chart.name}' is not invariant under the Hopf action: "
            f"defect {defect:.3g} > {LIFT_TOLERANCE:.1e}"
        )


def _gamma(point: NDArray[np.float64], normal: NDArray[np.float64]) -> NDArray[np.float64]:
    return np.einsum("pnk,pk->pn", w_frame(point)[:, 1:, :], normal)


@dataclass(frozen=True)
class CP3Gauss:
    """
    Attributes:
        gamma: (P, 6) Z-coordinates of the horizontal unit normal
        coefficients: (P, 6) Gram(Z)^+ gamma, the normal expanded in Z_1..Z_6
        normal: (P, 8) horizontal unit normal
    """

    gamma: NDArray[np.float64]
    coefficients: NDArray[np.float64]
    normal: NDArray[np.float64]


def cp3_gauss_map(
    chart: HypersurfaceChart, u: ArrayLike, stencil: StencilSpec, delta: float = DEFAULT_DELTA
) -> CP3Gauss:
    """
    Raises:
        DegenerateChartError: If the chart is not a horizontal lift
        SingularSetError: If a lift point is within delta of the singular set
    """
    pts = np.atleast_2d(np.asarray(u, dtype=np.float64))
    _require_lift(chart, pts)
    shape = pointwise_shape(chart, pts, stencil)
    guard_singular_set(shape.point, delta)
    gamma = _gamma(shape.point, shape.normal)
    frame = z_frame(shape.point)
    gram = np.einsum("pnk,pmk->pnm", frame, frame)
    coefficients = np.einsum("pnm,pm->pn", np.linalg.pinv(gram, hermitian=True), gamma)
    return CP3Gauss(gamma=gamma, coefficients=coefficients, normal=shape.normal)


@dataclass(frozen=True)
class CP3Residual:
    """
    Point-wise terms of the CP3 Gauss-map Laplacian identity in both sign
    conventions.

    Attributes:
        residual: Delta gamma - 5 Gamma(grad H) - (8 + |A|^2) gamma
        residual_alt: Delta gamma + 5 Gamma(grad H) + (8 + |A|^2) gamma
    """

    u: NDArray[np.float64]
    gamma: NDArray[np.float64]
    laplacian: NDArray[np.float64]
    grad_term: NDArray[np.float64]
    H: NDArray[np.float64]
    A_norm_sq: NDArray[np.float64]
    grad_H_norm: NDArray[np.float64]
    residual: NDArray[np.float64]
    residual_alt: NDArray[np.float64]

    @property
    def residual_norm(self) -> NDArray[np.float64]:
        return np.linalg.norm(self.residual, axis=1)

    @property
    def residual_alt_norm(self) -> NDArray[np.float64]:
        return np.linalg.norm(self.residual_alt, axis=1)


def cp3_laplacian_residual(
    chart: HypersurfaceChart,
    u: ArrayLike,
    stencil: StencilSpec,
    delta: float = DEFAULT_DELTA,
    theta: Optional[float] = None,
) -> CP3Residual:
    """
    Residuals of the CP3 identity computed on the horizontal lift.

    The metric is that of the horizontal partials, h comes from the horizontal
    part of the S7 covariant derivative, and gamma, g and H are differentiated
    together by one outer stencil.

    With theta given the identity is evaluated at the representatives
    e^(i theta) f(u). The stencil evaluations of f are shared with theta = None;
    only points, normals and grad H are moved along the fibers, so g, H and
    |A|^2 agree bit for bit and any difference comes from gamma.
    """
    pts = np.atleast_2d(np.asarray(u, dtype=np.float64))
    _require_lift(chart, pts)
    m = chart.dim
    turn = None if theta is None else left_mul_matrix(circle_element(theta))

    def moved(values: NDArray) -> NDArray:
        return values if turn is None else values @ turn.T

    def quantity(shape: ShapeData, _points: NDArray) -> NDArray:
        gamma = _gamma(moved(shape.point), moved(shape.normal))
        return np.concatenate([gamma, flat_metric(shape), shape.H[:, None]], axis=1)

    shape = pointwise_shape(chart, pts, stencil)
    guard_singular_set(shape.point, delta)

    value, grad, hess = derived_jet(chart, pts, stencil, quantity)
    gamma_slice = slice(0, FRAME_SIZE)
    metric_slice = slice(FRAME_SIZE, FRAME_SIZE + m * m)
    g = value[:, metric_slice].reshape(-1, m, m)
    dg = grad[:, :, metric_slice].reshape(-1, m, m, m)
    laplacian = laplacian_from_jets(
        np.linalg.inv(g), dg, grad[:, :, gamma_slice], hess[:, :, :, gamma_slice]
    )

    gamma = _gamma(moved(shape.point), moved(shape.normal))
    _, ambient, grad_norm = gradient_from_differential(
        shape.g_inv, grad[:, :, -1], shape.frame.partials
    )
    grad_term = cp3_translate(moved(shape.point), moved(ambient))
    curvature = (8.0 + shape.A_norm_sq)[:, None] * gamma

    residual = laplacian - 5.0 * grad_term - curvature
    residual_alt = laplacian + 5.0 * grad_term + curvature
    worst = np.max(np.linalg.norm(residual, axis=1))
    worst_alt = np.max(np.linalg.norm(residual_alt, axis=1))
    logger.debug(
        f"CP3 residual on '{chart.name}': max |r| = {worst:.3e}, max |r'| = {worst_alt:.3e}"
    )
    return CP3Residual(
        u=pts,
        gamma=gamma,
        laplacian=laplacian,
        grad_term=grad_term,
        H=shape.H,
        A_norm_sq=shape.A_norm_sq,
        grad_H_norm=grad_norm,
        residual=residual,
        residual_alt=residual_alt,
    )


# ---------------------------------------------------------------------------
# Lift contract


def check_lift_invariance(chart: HypersurfaceChart, u: ArrayLike, thetas: ArrayLike) -> float:
    """
    max |F(e^(i theta) f(u))| for the chart's defining function F.

    Raises:
        DegenerateChartError: If the chart carries no defining function
    """
    if chart.defining_fn is None:
        raise DegenerateChartError(f"Chart '{chart.name}' has no defining function to test")
    x = chart.map(u)
    worst = 0.0
    for theta in np.atleast_1d(thetas):
        worst = max(worst, float(np.max(np.abs(chart.defining_fn(hopf_act(theta, x))))))
    logger.debug(f"Lift invariance of '{chart.name}': max defect {worst:.3e}")
    return worst


def rotate_representative(chart: HypersurfaceChart, theta: float) -> HypersurfaceChart:
    """The same lift moved along the fibers: u -> e^(i theta) * f(u)."""
    rotation = left_mul_matrix(circle_element(theta))

    def rotate(values):
        return values @ rotation.T

    def map_fn(u):
        return rotate(chart.map_fn(u))

    jet_fn = None
    if chart.jet_fn is not None:

        def jet_fn(u):
            value, d1, d2 = chart.jet_fn(u)
            return rotate(value), rotate(d1), rotate(d2)

    reference_fn = None
    if chart.reference_fn is not None:

        def reference_fn(u):
            return rotate(chart.reference_fn(u))

    return replace(
        chart,
        map_fn=map_fn,
        jet_fn=jet_fn,
        reference_fn=reference_fn,
        params={**chart.params, "theta": theta},
    )

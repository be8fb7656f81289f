"""
Extrinsic Geometry of Chart Patches

Tangent frames, unit normals, fundamental forms, mean curvature and the
Laplace-Beltrami operator, evaluated point-wise from local stencils.

For horizontal charts (unit lifts of CP3 hypersurfaces) every tangent vector
is replaced by its horizontal part, so the quantities are those of the
hypersurface in CP3 under the Riemannian submersion.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from octo.algebra.cayley_dickson import mul_array
from octo.exceptions import DegenerateChartError, NonTangentError
from octo.geometry.charts import AMBIENT_DIM, HypersurfaceChart
from octo.geometry.stencils import StencilSpec, central_jet

logger = logging.getLogger(__name__)

UNIT_TOLERANCE = 1e-10
RANK_TOLERANCE = 1e-8

_E1 = np.eye(AMBIENT_DIM)[1]


def fiber_direction(points: ArrayLike) -> NDArray[np.float64]:
    """i * x, the Hopf fiber direction at x."""
    return mul_array(_E1, np.asarray(points, dtype=np.float64))


@dataclass(frozen=True)
class TangentFrame:
    """
    Batched tangent data at P chart points.

    Attributes:
        point: (P, 8) chart values
        raw_partials: (P, m, 8) first partials of the chart map
        hessians: (P, m, m, 8) second partials of the chart map
        partials: (P, m, 8) tangent vectors (horizontal parts for lifts)
        fiber_weights: (P, m) components of the raw partials along i*x
        metric: (P, m, m) first fundamental form
        metric_inv: (P, m, m)
    """

    point: NDArray[np.float64]
    raw_partials: NDArray[np.float64]
    hessians: NDArray[np.float64]
    partials: NDArray[np.float64]
    fiber_weights: NDArray[np.float64]
    metric: NDArray[np.float64]
    metric_inv: NDArray[np.float64]


@dataclass(frozen=True)
class ShapeData:
    """
    Batched extrinsic data; grad_H fields are filled by shape_data only.

    A_norm_sq is trace(S S), the sum of squared principal curvatures.
    """

    point: NDArray[np.float64]
    normal: NDArray[np.float64]
    g: NDArray[np.float64]
    g_inv: NDArray[np.float64]
    h: NDArray[np.float64]
    S: NDArray[np.float64]
    H: NDArray[np.float64]
    A_norm_sq: NDArray[np.float64]
    frame: TangentFrame
    grad_H: Optional[NDArray[np.float64]] = None
    grad_H_ambient: Optional[NDArray[np.float64]] = None
    grad_H_norm: Optional[NDArray[np.float64]] = None


@dataclass(frozen=True)
class GradientResult:
    coords: NDArray[np.float64]
    ambient: NDArray[np.float64]
    norm: NDArray[np.float64]
    H: NDArray[np.float64]


def _points(u: ArrayLike) -> NDArray[np.float64]:
    return np.atleast_2d(np.asarray(u, dtype=np.float64))


def analytic_inner(chart: HypersurfaceChart, stencil: StencilSpec) -> bool:
    return stencil.analytic and chart.has_jet


def chart_tangent_frame(
    chart: HypersurfaceChart, u: ArrayLike, stencil: StencilSpec
) -> TangentFrame:
    """
    Partials (analytic when allowed, else central differences) and metric.

    Raises:
        NonTangentError: If a chart value is off the unit sphere
        DegenerateChartError: If the tangent vectors lose rank
    """
    pts = _points(u)
    if analytic_inner(chart, stencil):
        point, d1, d2 = chart.jet(pts)
    else:
        point, d1, d2 = central_jet(chart.map, pts, stencil.h_step, stencil.order, chart.domain)

    radius = np.linalg.norm(point, axis=-1)
    if np.any(np.abs(radius - 1.0) > UNIT_TOLERANCE):
        worst = int(np.argmax(np.abs(radius - 1.0)))
        raise NonTangentError(
            f"Chart '{chart.name}' left the unit sphere: |x| = {radius[worst]:.12g}"
        )

    if chart.horizontal:
        ix = fiber_direction(point)
        weights = np.einsum("pmk,pk->pm", d1, ix)
        tangent = d1 - weights[:, :, None] * ix[:, None, :]
    else:
        weights = np.zeros(d1.shape[:2])
        tangent = d1

    sv = np.linalg.svd(tangent, compute_uv=False)
    if np.any(sv[:, -1] < RANK_TOLERANCE):
        worst = int(np.argmin(sv[:, -1]))
        raise DegenerateChartError(
            f"Chart '{chart.name}' Jacobian lost rank at u={pts[worst]}: "
            f"smallest singular value {sv[worst, -1]:.3g}"
        )
    metric = np.einsum("pik,pjk->pij", tangent, tangent)
    return TangentFrame(
        point=point,
        raw_partials=d1,
        hessians=d2,
        partials=tangent,
        fiber_weights=weights,
        metric=metric,
        metric_inv=np.linalg.inv(metric),
    )


def _normal_from_frame(chart: HypersurfaceChart, frame: TangentFrame, pts: NDArray) -> NDArray:
    blocks = [frame.point[:, None, :]]
    if chart.horizontal:
        blocks.append(fiber_direction(frame.point)[:, None, :])
    blocks.append(frame.partials)
    rows = np.concatenate(blocks, axis=1)
    if rows.shape[1] != AMBIENT_DIM - 1:
        raise DegenerateChartError(
            f"Chart '{chart.name}' has codimension {AMBIENT_DIM - rows.shape[1]}, "
            "so its unit normal is ambiguous"
        )
    _, sv, vt = np.linalg.svd(rows)
    if np.any(sv[:, -1] < RANK_TOLERANCE):
        raise DegenerateChartError(f"Ambiguous normal on chart '{chart.name}'")
    normal = vt[:, -1, :]

    reference = chart.reference(pts)
    if reference is not None:
        side = np.einsum("pk,pk->p", normal, reference)
        if np.any(np.abs(side) < RANK_TOLERANCE):
            raise DegenerateChartError(
                f"Reference vector of chart '{chart.name}' is tangent; normal sign undefined"
            )
    else:
        side = np.linalg.det(np.concatenate([rows, normal[:, None, :]], axis=1))
    return normal * (np.sign(side) * chart.orientation)[:, None]


def unit_normal(
    chart: HypersurfaceChart, u: ArrayLike, stencil: StencilSpec
) -> NDArray[np.float64]:
    """
    Unit normal orthogonal to the position, the chart partials and, for lifts,
    the fiber direction i*x. The sign follows the chart's reference vector
    times its orientation.
    """
    pts = _points(u)
    frame = chart_tangent_frame(chart, pts, stencil)
    return _normal_from_frame(chart, frame, pts)


def pointwise_shape(chart: HypersurfaceChart, u: ArrayLike, stencil: StencilSpec) -> ShapeData:
    """Fundamental forms, H and |A|^2 without the gradient of H."""
    pts = _points(u)
    frame = chart_tangent_frame(chart, pts, stencil)
    normal = _normal_from_frame(chart, frame, pts)

    h = np.einsum("pijk,pk->pij", frame.hessians, normal)
    if chart.horizontal:
        # horizontal part of the S7 covariant derivative of the lifted frame
        i_tangent = mul_array(_E1, frame.partials)
        twist = np.einsum("pik,pk->pi", i_tangent, normal)
        lam = frame.fiber_weights
        h = h - lam[:, None, :] * twist[:, :, None] - lam[:, :, None] * twist[:, None, :]
    h = 0.5 * (h + np.swapaxes(h, 1, 2))

    S = frame.metric_inv @ h
    m = chart.dim
    H = np.trace(S, axis1=1, axis2=2) / m
    A_norm_sq = np.einsum("pij,pji->p", S, S)
    return ShapeData(
        point=frame.point,
        normal=normal,
        g=frame.metric,
        g_inv=frame.metric_inv,
        h=h,
        S=S,
        H=H,
        A_norm_sq=A_norm_sq,
        frame=frame,
    )


def derived_jet(
    chart: HypersurfaceChart,
    u: ArrayLike,
    stencil: StencilSpec,
    quantity: Callable[[ShapeData, NDArray[np.float64]], NDArray[np.float64]],
) -> Tuple[NDArray, NDArray, NDArray]:
    """
    Central-difference jet of a point-wise derived quantity.

    The outer step is h with analytic chart partials and h * nesting_factor
    otherwise.

    Args:
        quantity: (ShapeData, points) -> (N, K) array
    """
    step = stencil.outer_step(analytic_inner(chart, stencil))

    def evaluate(points):
        return quantity(pointwise_shape(chart, points, stencil), points)

    return central_jet(evaluate, _points(u), step, stencil.order, chart.domain)


def christoffel(g_inv: NDArray, dg: NDArray) -> NDArray:
    """
    Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij).

    Args:
        g_inv: (P, m, m)
        dg: (P, m, m, m) with dg[p, l, i, j] = d_l g_ij
    """
    first_kind = 0.5 * (
        np.einsum("pijl->pijl", dg) + np.einsum("pjil->pijl", dg) - np.einsum("plij->pijl", dg)
    )
    return np.einsum("pkl,pijl->pkij", g_inv, first_kind)


def laplacian_from_jets(
    g_inv: NDArray, dg: NDArray, dphi: NDArray, d2phi: NDArray
) -> NDArray[np.float64]:
    """
    g^ij (d_i d_j phi - Gamma^k_ij d_k phi) for batched vector-valued phi.

    Args:
        g_inv: (P, m, m)
        dg: (P, m, m, m), dg[p, l, i, j] = d_l g_ij
        dphi: (P, m, K)
        d2phi: (P, m, m, K)
    """
    gamma = christoffel(g_inv, dg)
    corrected = d2phi - np.einsum("pkij,pkc->pijc", gamma, dphi)
    return np.einsum("pij,pijc->pc", g_inv, corrected)


def flat_metric(shape: ShapeData) -> NDArray[np.float64]:
    return shape.g.reshape(shape.g.shape[0], -1)


def gradient_from_differential(
    g_inv: NDArray, dH: NDArray, partials: NDArray
) -> Tuple[NDArray, NDArray, NDArray]:
    """Raise the index of dH; return chart coordinates, ambient vector and norm."""
    coords = np.einsum("pij,pj->pi", g_inv, dH)
    ambient = np.einsum("pi,pik->pk", coords, partials)
    norm = np.sqrt(np.maximum(np.einsum("pi,pi->p", coords, dH), 0.0))
    return coords, ambient, norm


def grad_H(chart: HypersurfaceChart, u: ArrayLike, stencil: StencilSpec) -> GradientResult:
    """
    grad H = g^-1 dH in chart coordinates, pushed forward to R^8.

    dH is a central difference of H using the outer step.
    """
    pts = _points(u)
    value, grad, _ = derived_jet(chart, pts, stencil, lambda s, _: s.H[:, None])
    shape = pointwise_shape(chart, pts, stencil)
    coords, ambient, norm = gradient_from_differential(
        shape.g_inv, grad[:, :, 0], shape.frame.partials
    )
    return GradientResult(coords=coords, ambient=ambient, norm=norm, H=value[:, 0])


def shape_data(chart: HypersurfaceChart, u: ArrayLike, stencil: StencilSpec) -> ShapeData:
    """
    Full ShapeData, gradient of H included.

    Args:
        chart: Hypersurface chart
        u: (m,) or (P, m) parameters
        stencil: Step configuration

    Returns:
        ShapeData with a leading batch axis
    """
    pts = _points(u)
    base = pointwise_shape(chart, pts, stencil)
    gradient = grad_H(chart, pts, stencil)
    return ShapeData(
        point=base.point,
        normal=base.normal,
        g=base.g,
        g_inv=base.g_inv,
        h=base.h,
        S=base.S,
        H=base.H,
        A_norm_sq=base.A_norm_sq,
        frame=base.frame,
        grad_H=gradient.coords,
        grad_H_ambient=gradient.ambient,
        grad_H_norm=gradient.norm,
    )


def principal_curvatures(shape: ShapeData) -> NDArray[np.float64]:
    """Eigenvalues of h w = k g w, ascending, shape (P, m)."""
    return np.stack([scipy.linalg.eigh(h, g, eigvals_only=True) for h, g in zip(shape.h, shape.g)])


def laplace_beltrami(
    chart: HypersurfaceChart,
    u: ArrayLike,
    scalar_fn: Callable[[NDArray[np.float64]], NDArray[np.float64]],
    stencil: StencilSpec,
) -> NDArray[np.float64]:
    """
    Laplace-Beltrami of a function of the chart parameters.

    Christoffel symbols come from central differences of g.

    Args:
        scalar_fn: (N, m) -> (N,) or (N, K)

    Returns:
        (P,) or (P, K) values of the Laplacian
    """
    pts = _points(u)
    m = chart.dim
    scalar_output = []

    def evaluate(points):
        raw = np.asarray(scalar_fn(points), dtype=np.float64)
        scalar_output.append(raw.ndim == 1)
        frame = chart_tangent_frame(chart, points, stencil)
        values = raw.reshape(points.shape[0], -1)
        return np.concatenate([values, frame.metric.reshape(points.shape[0], -1)], axis=1)

    step = stencil.outer_step(analytic_inner(chart, stencil))
    value, grad, hess = central_jet(evaluate, pts, step, stencil.order, chart.domain)
    k = value.shape[1] - m * m
    g = value[:, k:].reshape(-1, m, m)
    dg = grad[:, :, k:].reshape(-1, m, m, m)
    lap = laplacian_from_jets(np.linalg.inv(g), dg, grad[:, :, :k], hess[:, :, :, :k])
    return lap[:, 0] if scalar_output[0] else lap

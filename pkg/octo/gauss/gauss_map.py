"""
Octonionic Gauss Map of Hypersurfaces in S7

gamma(x) = x^-1 * eta(x) lands in the unit sphere of Im O. Its Laplacian is
checked against

    Delta gamma = -6 Gamma_x(grad H) - (6 + |A|^2) gamma

and the tangential part of Delta gamma measures harmonicity.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from octo.algebra.cayley_dickson import conj_array, mul_array
from octo.geometry.charts import AMBIENT_DIM, HypersurfaceChart
from octo.geometry.shape import (
    ShapeData,
    derived_jet,
    flat_metric,
    gradient_from_differential,
    laplacian_from_jets,
    pointwise_shape,
    unit_normal,
)
from octo.geometry.stencils import StencilSpec

logger = logging.getLogger(__name__)


def _gamma(shape: ShapeData) -> NDArray[np.float64]:
    return mul_array(conj_array(shape.point), shape.normal)


def gauss_map(chart: HypersurfaceChart, u: ArrayLike, stencil: StencilSpec) -> NDArray[np.float64]:
    """
    gamma = x^-1 * eta at the chart points.

    Returns:
        (P, 8) unit vectors with vanishing real part
    """
    pts = np.atleast_2d(np.asarray(u, dtype=np.float64))
    x = chart.map(pts)
    eta = unit_normal(chart, pts, stencil)
    return mul_array(conj_array(x), eta)


@dataclass(frozen=True)
class GaussResidual:
    """
    Point-wise terms of the Gauss-map Laplacian identity.

    Attributes:
        u: (P, m) chart parameters
        gamma: (P, 8) Gauss map
        laplacian: (P, 8) Delta gamma
        grad_term: (P, 8) Gamma_x(grad H)
        H: (P,) mean curvature
        A_norm_sq: (P,)
        grad_H_norm: (P,)
        residual: (P, 8) Delta gamma + 6 Gamma(grad H) + (6 + |A|^2) gamma
        defect: (P,) norm of the part of Delta gamma tangent to S6 at gamma
    """

    u: NDArray[np.float64]
    gamma: NDArray[np.float64]
    laplacian: NDArray[np.float64]
    grad_term: NDArray[np.float64]
    H: NDArray[np.float64]
    A_norm_sq: NDArray[np.float64]
    grad_H_norm: NDArray[np.float64]
    residual: NDArray[np.float64]
    defect: NDArray[np.float64]

    @property
    def residual_norm(self) -> NDArray[np.float64]:
        return np.linalg.norm(self.residual, axis=1)

    @property
    def term_magnitudes(self) -> dict:
        """Largest magnitude of each term of the identity."""
        return {
            "laplacian": float(np.max(np.linalg.norm(self.laplacian, axis=1))),
            "grad_term": float(np.max(6.0 * np.linalg.norm(self.grad_term, axis=1))),
            "gamma_term": float(np.max(6.0 + self.A_norm_sq)),
        }


def tangential_part(vectors: NDArray, gamma: NDArray) -> NDArray[np.float64]:
    """v - <v, gamma> gamma, the part tangent to the unit sphere at gamma."""
    return vectors - np.einsum("pk,pk->p", vectors, gamma)[:, None] * gamma


def gauss_laplacian_residual(
    chart: HypersurfaceChart, u: ArrayLike, stencil: StencilSpec
) -> GaussResidual:
    """
    Residual of the Gauss-map Laplacian identity at the chart points.

    gamma, the metric and H are differentiated together by one outer stencil;
    Delta gamma is taken componentwise with Christoffel symbols of g.
    """
    pts = np.atleast_2d(np.asarray(u, dtype=np.float64))
    m = chart.dim

    def quantity(shape: ShapeData, _points: NDArray) -> NDArray:
        return np.concatenate([_gamma(shape), flat_metric(shape), shape.H[:, None]], axis=1)

    value, grad, hess = derived_jet(chart, pts, stencil, quantity)
    gamma_slice = slice(0, AMBIENT_DIM)
    metric_slice = slice(AMBIENT_DIM, AMBIENT_DIM + m * m)

    g = value[:, metric_slice].reshape(-1, m, m)
    dg = grad[:, :, metric_slice].reshape(-1, m, m, m)
    g_inv = np.linalg.inv(g)
    laplacian = laplacian_from_jets(g_inv, dg, grad[:, :, gamma_slice], hess[:, :, :, gamma_slice])

    shape = pointwise_shape(chart, pts, stencil)
    gamma = _gamma(shape)
    _, ambient, grad_norm = gradient_from_differential(
        shape.g_inv, grad[:, :, -1], shape.frame.partials
    )
    grad_term = mul_array(conj_array(shape.point), ambient)

    residual = laplacian + 6.0 * grad_term + (6.0 + shape.A_norm_sq)[:, None] * gamma
    defect = np.linalg.norm(tangential_part(laplacian, gamma), axis=1)
    logger.debug(
        f"Gauss residual on '{chart.name}' at {len(pts)} points: "
        f"max |r| = {np.max(np.linalg.norm(residual, axis=1)):.3e}"
    )
    return GaussResidual(
        u=pts,
        gamma=gamma,
        laplacian=laplacian,
        grad_term=grad_term,
        H=shape.H,
        A_norm_sq=shape.A_norm_sq,
        grad_H_norm=grad_norm,
        residual=residual,
        defect=defect,
    )


def harmonicity_defect(chart: HypersurfaceChart, u: ArrayLike, stencil: StencilSpec) -> float:
    """sup over the samples of |(Delta gamma)^T|; zero exactly for CMC charts."""
    return float(np.max(gauss_laplacian_residual(chart, u, stencil).defect))


def tangential_field_floor(
    chart: HypersurfaceChart, u: ArrayLike, v: ArrayLike, stencil: StencilSpec
) -> float:
    """
    Minimum norm over the samples of the part of x -> x * v tangent to the
    hypersurface. A positive floor witnesses a nowhere-vanishing tangent field.
    """
    pts = np.atleast_2d(np.asarray(u, dtype=np.float64))
    x = chart.map(pts)
    eta = unit_normal(chart, pts, stencil)
    field = mul_array(x, np.asarray(v, dtype=np.float64))
    tangent = (
        field
        - np.einsum("pk,pk->p", field, x)[:, None] * x
        - np.einsum("pk,pk->p", field, eta)[:, None] * eta
    )
    return float(np.min(np.linalg.norm(tangent, axis=1)))

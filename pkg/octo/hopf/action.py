"""
Hopf Action on S7

The circle acts by left multiplication with e^(i theta) = cos(theta) + sin(theta) e1.
Fields are made invariant by averaging over the orbit with the periodic
trapezoid rule, and the invariant fields W_v span the horizontal directions
away from a0 = a1 = 0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from octo.algebra.cayley_dickson import mul_array
from octo.exceptions import NonTangentError
from octo.gauss.fields import VectorFieldSpec

logger = logging.getLogger(__name__)

UNIT_TOLERANCE = 1e-12

_E = np.eye(8)


def circle_element(theta: ArrayLike) -> NDArray[np.float64]:
    """e^(i theta) as octonions, shape theta.shape + (8,)."""
    theta = np.asarray(theta, dtype=np.float64)
    unit = np.zeros(theta.shape + (8,))
    unit[..., 0] = np.cos(theta)
    unit[..., 1] = np.sin(theta)
    return unit


def hopf_act(theta: ArrayLike, x: ArrayLike) -> NDArray[np.float64]:
    """
    e^(i theta) * x, broadcasting theta against the leading axes of x.

    Raises:
        NonTangentError: If x is not a unit vector
    """
    x = np.asarray(x, dtype=np.float64)
    if np.any(np.abs(np.linalg.norm(x, axis=-1) - 1.0) > UNIT_TOLERANCE):
        raise NonTangentError("The Hopf action is applied to points of S7 only")
    return mul_array(circle_element(theta), x)


def i_times(x: ArrayLike) -> NDArray[np.float64]:
    """Left multiplication by e1, the fiber direction of the Hopf fibration."""
    return mul_array(_E[1], np.asarray(x, dtype=np.float64))


@dataclass(frozen=True)
class QuadratureSpec:
    """Uniform trapezoid rule with node_count nodes on [0, 2 pi)."""

    node_count: int = 64

    def __post_init__(self):
        if self.node_count < 8 or self.node_count % 2:
            raise ValueError(f"node_count must be even and >= 8, got {self.node_count}")

    @property
    def nodes(self) -> NDArray[np.float64]:
        return 2.0 * np.pi * np.arange(self.node_count) / self.node_count

    @property
    def weight(self) -> float:
        return 1.0 / self.node_count


def hopf_symmetrize(
    field: VectorFieldSpec, quad: QuadratureSpec = QuadratureSpec()
) -> VectorFieldSpec:
    """
    X^h(x) = 1/(2 pi) int e^(-i theta) * X(e^(i theta) * x) d theta,
    discretized by the trapezoid rule.
    """
    thetas = quad.nodes

    def evaluator(x):
        pts = np.atleast_2d(x)
        orbit = hopf_act(thetas[:, None], pts[None, :, :])
        values = field(orbit.reshape(-1, 8)).reshape(orbit.shape)
        back = mul_array(circle_element(-thetas)[:, None, :], values)
        averaged = back.sum(axis=0) * quad.weight
        return averaged if np.ndim(x) > 1 else averaged[0]

    return VectorFieldSpec(
        kind="symmetrized",
        evaluator=evaluator,
        params={"source": field.kind, "node_count": quad.node_count},
    )


def w_vectors(x: ArrayLike, v: ArrayLike) -> NDArray[np.float64]:
    """W_v(x) = (x * v - i * ((i * x) * v)) / 2, batched over x and v."""
    x = np.asarray(x, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    return 0.5 * (mul_array(x, v) - i_times(mul_array(i_times(x), v)))


def w_field(v: ArrayLike) -> VectorFieldSpec:
    """
    The Hopf-invariant field W_v with W_v(1) = v.

    Raises:
        NonTangentError: If v has a real part
    """
    v = np.array(v, dtype=np.float64)
    if v.shape != (8,) or abs(v[0]) > UNIT_TOLERANCE:
        raise NonTangentError(f"W_v needs v in Im O, got {v}")
    v.setflags(write=False)
    return VectorFieldSpec(
        kind="w_field", evaluator=lambda x: w_vectors(x, v), params={"v": v.tolist()}
    )


def w_frame(x: ArrayLike) -> NDArray[np.float64]:
    """W_e1(x), ..., W_e7(x) stacked as (..., 7, 8)."""
    x = np.asarray(x, dtype=np.float64)
    return w_vectors(x[..., None, :], _E[1:])


@dataclass(frozen=True)
class WGram:
    """
    Gram data of W_e2..W_e7 at a batch of points.

    Attributes:
        gram: (P, 6, 6)
        det: (P,)
        predicted: (P,) (a0^2 + a1^2)^4
        fiber_products: (P, 6) <W_e1(x), W_en(x)> for n = 2..7
    """

    gram: NDArray[np.float64]
    det: NDArray[np.float64]
    predicted: NDArray[np.float64]
    fiber_products: NDArray[np.float64]

    @property
    def rel_err(self) -> NDArray[np.float64]:
        gap = np.abs(self.det - self.predicted)
        positive = self.predicted > 0
        return np.where(positive, gap / np.where(positive, self.predicted, 1.0), gap)


def w_gram(x: ArrayLike) -> WGram:
    """Gram matrix and determinant of W_e2..W_e7 against (a0^2 + a1^2)^4."""
    pts = np.atleast_2d(np.asarray(x, dtype=np.float64))
    frame = w_frame(pts)
    tail = frame[:, 1:, :]
    gram = np.einsum("pnk,pmk->pnm", tail, tail)
    return WGram(
        gram=gram,
        det=np.linalg.det(gram),
        predicted=(pts[:, 0] ** 2 + pts[:, 1] ** 2) ** 4,
        fiber_products=np.einsum("pk,pnk->pn", frame[:, 0, :], tail),
    )


def is_hopf_invariant(field: VectorFieldSpec, x: ArrayLike, thetas: ArrayLike) -> float:
    """max |X(e^(i theta) x) - e^(i theta) X(x)| over the given points and angles."""
    pts = np.atleast_2d(np.asarray(x, dtype=np.float64))
    base = field(pts)
    worst = 0.0
    for theta in np.atleast_1d(thetas):
        moved = field(hopf_act(theta, pts))
        worst = max(worst, float(np.max(np.abs(moved - mul_array(circle_element(theta), base)))))
    return worst

"""
Finite-Difference Stencils

Central-difference jets (value, gradient, Hessian) of batched functions of
chart parameters, with domain checks and periodic wrapping.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from octo.exceptions import StencilDomainError

logger = logging.getLogger(__name__)

# offsets (in steps) and weights of the 1-D central rules
FIRST_DERIVATIVE: Dict[int, Tuple[Tuple[int, ...], Tuple[float, ...]]] = {
    2: ((-1, 1), (-0.5, 0.5)),
    4: ((-2, -1, 1, 2), (1 / 12, -8 / 12, 8 / 12, -1 / 12)),
}
SECOND_DERIVATIVE: Dict[int, Tuple[Tuple[int, ...], Tuple[float, ...]]] = {
    2: ((-1, 0, 1), (1.0, -2.0, 1.0)),
    4: ((-2, -1, 0, 1, 2), (-1 / 12, 16 / 12, -30 / 12, 16 / 12, -1 / 12)),
}


@dataclass(frozen=True)
class StencilSpec:
    """
    Step configuration for chart derivatives.

    Attributes:
        h_step: Step per parameter
        order: Central difference order, 2 or 4
        nesting_factor: Outer step multiplier for derived quantities
        analytic: Use analytic chart partials when the chart has them
    """

    h_step: float = 1e-3
    order: int = 2
    nesting_factor: float = 10.0
    analytic: bool = True

    def __post_init__(self):
        if not self.h_step > 0:
            raise ValueError(f"h_step must be positive, got {self.h_step}")
        if self.order not in FIRST_DERIVATIVE:
            raise ValueError(f"order must be 2 or 4, got {self.order}")
        if self.nesting_factor < 1:
            raise ValueError(f"nesting_factor must be >= 1, got {self.nesting_factor}")

    def with_step(self, h_step: float) -> StencilSpec:
        return replace(self, h_step=h_step)

    def outer_step(self, analytic_inner: bool) -> float:
        """Step for derivatives of derived quantities (H, gamma, g)."""
        return self.h_step if analytic_inner else self.h_step * self.nesting_factor


@dataclass(frozen=True)
class DomainBox:
    """Parameter box; periodic parameters wrap, the others must stay inside."""

    lower: Tuple[float, ...]
    upper: Tuple[float, ...]
    periodic: Tuple[bool, ...]

    @property
    def dim(self) -> int:
        return len(self.lower)

    def prepare(self, points: NDArray[np.float64]) -> NDArray[np.float64]:
        """Wrap periodic coordinates and reject points outside the box."""
        lower = np.asarray(self.lower)
        upper = np.asarray(self.upper)
        periodic = np.asarray(self.periodic, dtype=bool)
        out = np.array(points, dtype=np.float64)
        if periodic.any():
            span = upper[periodic] - lower[periodic]
            wrapped = np.mod(out[..., periodic] - lower[periodic], span)
            out[..., periodic] = lower[periodic] + wrapped
        fixed = ~periodic
        if fixed.any():
            below = out[..., fixed] < lower[fixed]
            above = out[..., fixed] > upper[fixed]
            if below.any() or above.any():
                bad = np.argwhere(below | above)[0]
                coord = int(np.flatnonzero(fixed)[bad[-1]])
                raise StencilDomainError(
                    f"Stencil left the domain in parameter {coord}: "
                    f"{out[tuple(bad[:-1])][coord]:.6g} not in "
                    f"[{lower[coord]:.6g}, {upper[coord]:.6g}]"
                )
        return out


def stencil_plan(
    dim: int, order: int
) -> Tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """
    Offsets and weights of a full second-order central stencil.

    Returns:
        offsets (S, dim) in units of the step, center first;
        gradient weights (dim, S); Hessian weights (dim, dim, S).
        Mixed partials use the outer product of the first-derivative rule.
    """
    first_off, first_w = FIRST_DERIVATIVE[order]
    second_off, second_w = SECOND_DERIVATIVE[order]
    index: Dict[Tuple[int, ...], int] = {}
    offsets: List[Tuple[int, ...]] = []

    def slot(offset: Tuple[int, ...]) -> int:
        if offset not in index:
            index[offset] = len(offsets)
            offsets.append(offset)
        return index[offset]

    def unit(pairs: Sequence[Tuple[int, int]]) -> Tuple[int, ...]:
        vec = [0] * dim
        for axis, step in pairs:
            vec[axis] += step
        return tuple(vec)

    slot(tuple([0] * dim))
    grad_terms: List[List[Tuple[int, float]]] = [[] for _ in range(dim)]
    hess_terms: List[List[List[Tuple[int, float]]]] = [[[] for _ in range(dim)] for _ in range(dim)]
    for a in range(dim):
        for off, w in zip(first_off, first_w):
            grad_terms[a].append((slot(unit([(a, off)])), w))
        for off, w in zip(second_off, second_w):
            hess_terms[a][a].append((slot(unit([(a, off)])), w))
        for b in range(a + 1, dim):
            for off_a, w_a in zip(first_off, first_w):
                for off_b, w_b in zip(first_off, first_w):
                    s = slot(unit([(a, off_a), (b, off_b)]))
                    hess_terms[a][b].append((s, w_a * w_b))
                    hess_terms[b][a].append((s, w_a * w_b))

    size = len(offsets)
    grad_w = np.zeros((dim, size))
    hess_w = np.zeros((dim, dim, size))
    for a in range(dim):
        for s, w in grad_terms[a]:
            grad_w[a, s] += w
        for b in range(dim):
            for s, w in hess_terms[a][b]:
                hess_w[a, b, s] += w
    return np.array(offsets, dtype=np.float64), grad_w, hess_w


def central_jet(
    fn: Callable[[NDArray[np.float64]], NDArray[np.float64]],
    points: ArrayLike,
    step: float,
    order: int = 2,
    domain: Optional[DomainBox] = None,
) -> Tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """
    Value, gradient and Hessian of fn at each point by central differences.

    Args:
        fn: Maps an (N, dim) array to an (N, ...) array
        points: (P, dim) evaluation points
        step: Step per parameter
        order: 2 or 4
        domain: Optional box checked (and wrapped) for every stencil point

    Returns:
        value (P, ...), gradient (P, dim, ...), Hessian (P, dim, dim, ...)
    """
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    n_points, dim = pts.shape
    offsets, grad_w, hess_w = stencil_plan(dim, order)
    cloud = pts[:, None, :] + step * offsets[None, :, :]
    if domain is not None:
        cloud = domain.prepare(cloud)
    flat = fn(cloud.reshape(-1, dim))
    values = flat.reshape((n_points, len(offsets)) + flat.shape[1:])
    logger.debug("Stencil of %d nodes at %d points, step %.3g", len(offsets), n_points, step)
    grad = np.einsum("as,ps...->pa...", grad_w, values) / step
    hess = np.einsum("abs,ps...->pab...", hess_w, values) / step**2
    return values[:, 0], grad, hess

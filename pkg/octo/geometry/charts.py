"""
Hypersurface Charts

Parametrized patches of hypersurfaces in S7 (dimension 6) and unit lifts of
hypersurfaces in CP3 (dimension 5). Catalog charts carry analytic value,
first and second partials built from products of trigonometric factors.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.stats import qmc

from octo.exceptions import DegenerateChartError, EmptySampleError
from octo.geometry.stencils import DomainBox

logger = logging.getLogger(__name__)

Jet = Tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]
ParamMap = Callable[[NDArray[np.float64]], NDArray[np.float64]]

AMBIENT_DIM = 8
PERIOD = 2.0 * np.pi
# Sample range of u_0 on the perturbed sphere
PERTURBED_FIRST_ANGLE = (np.pi / 8, 3 * np.pi / 8)

# factor codes for trigonometric monomials
ONE, COS, SIN = 0, 1, 2


# ---------------------------------------------------------------------------
# Trigonometric monomials


def _factor_jets(
    codes: NDArray[np.int_], u: NDArray[np.float64]
) -> Tuple[NDArray, NDArray, NDArray]:
    """Value, first and second derivative of every factor, shape (N, m, D)."""
    c = np.cos(u)[:, :, None]
    s = np.sin(u)[:, :, None]
    one = np.ones_like(c)
    zero = np.zeros_like(c)
    is_cos = codes[None] == COS
    is_sin = codes[None] == SIN
    f0 = np.where(is_cos, c, np.where(is_sin, s, one))
    f1 = np.where(is_cos, -s, np.where(is_sin, c, zero))
    f2 = np.where(is_cos, -c, np.where(is_sin, -s, zero))
    return f0, f1, f2


def trig_monomial_jet(codes: NDArray[np.int_], coef: NDArray[np.float64], u: ArrayLike) -> Jet:
    """
    Jet of x_c(u) = coef_c * prod_j factor(codes[j, c], u_j).

    Args:
        codes: (m, D) factor codes (ONE, COS, SIN)
        coef: (D,) constant coefficients
        u: (N, m) parameters

    Returns:
        value (N, D), first partials (N, m, D), second partials (N, m, m, D)
    """
    u = np.atleast_2d(np.asarray(u, dtype=np.float64))
    m = codes.shape[0]
    f0, f1, f2 = _factor_jets(codes, u)
    value = coef * np.prod(f0, axis=1)
    d1 = np.empty((u.shape[0], m) + value.shape[1:])
    d2 = np.empty((u.shape[0], m, m) + value.shape[1:])
    for a in range(m):
        fa = f0.copy()
        fa[:, a] = f1[:, a]
        d1[:, a] = coef * np.prod(fa, axis=1)
        faa = f0.copy()
        faa[:, a] = f2[:, a]
        d2[:, a, a] = coef * np.prod(faa, axis=1)
        for b in range(a + 1, m):
            fab = fa.copy()
            fab[:, b] = f1[:, b]
            d2[:, a, b] = d2[:, b, a] = coef * np.prod(fab, axis=1)
    return value, d1, d2


def sphere_codes(k: int) -> NDArray[np.int_]:
    """
    Hyperspherical coordinates of S^k in R^(k+1):
    w_c = sin(t_1)...sin(t_c) cos(t_(c+1)), the last component all sines.
    """
    codes = np.full((k, k + 1), ONE, dtype=int)
    for c in range(k + 1):
        for j in range(k):
            if j < c:
                codes[j, c] = SIN
            elif j == c:
                codes[j, c] = COS
    return codes


def sphere_box(k: int) -> Tuple[DomainBox, Tuple[Tuple[float, ...], Tuple[float, ...]]]:
    """Domain and sample boxes for hyperspherical angles; the last angle is periodic."""
    lower = [0.1] * (k - 1) + [0.0]
    upper = [np.pi - 0.1] * (k - 1) + [PERIOD]
    periodic = [False] * (k - 1) + [True]
    sample_lower = [np.pi / 4] * (k - 1) + [0.0]
    sample_upper = [3 * np.pi / 4] * (k - 1) + [PERIOD]
    return (
        DomainBox(tuple(lower), tuple(upper), tuple(periodic)),
        (tuple(sample_lower), tuple(sample_upper)),
    )


# ---------------------------------------------------------------------------
# Chart type


@dataclass(frozen=True)
class HypersurfaceChart:
    """
    Smooth parametrization of a hypersurface patch of S7, or of a unit lift
    of a CP3 hypersurface when horizontal is set.

    Attributes:
        name: Catalog name
        dim: Number of parameters (6 for S7, 5 for CP3 lifts)
        map_fn: (N, dim) -> (N, 8) unit vectors
        jet_fn: Optional analytic (value, first, second) partials
        domain: Box every stencil point must respect
        sample_box: Box sample points are drawn from
        reference_fn: (N, dim) -> (N, 8) vectors fixing the normal's sign
        orientation: +1 or -1, multiplies the reference choice
        horizontal: Normal is taken orthogonal to the Hopf fiber too
        defining_fn: Optional (N, 8) -> (N,) function vanishing on the lift
        params: Parameters the chart was built from
    """

    name: str
    dim: int
    map_fn: ParamMap
    domain: DomainBox
    sample_box: Tuple[Tuple[float, ...], Tuple[float, ...]]
    jet_fn: Optional[Callable[[NDArray[np.float64]], Jet]] = None
    reference_fn: Optional[ParamMap] = None
    orientation: int = 1
    horizontal: bool = False
    defining_fn: Optional[Callable[[NDArray[np.float64]], NDArray[np.float64]]] = None
    params: Dict[str, Any] = field(default_factory=dict)

    @property
    def has_jet(self) -> bool:
        return self.jet_fn is not None

    def map(self, u: ArrayLike) -> NDArray[np.float64]:
        return self.map_fn(np.atleast_2d(np.asarray(u, dtype=np.float64)))

    def jet(self, u: ArrayLike) -> Jet:
        if self.jet_fn is None:
            raise DegenerateChartError(f"Chart '{self.name}' has no analytic partials")
        return self.jet_fn(np.atleast_2d(np.asarray(u, dtype=np.float64)))

    def reference(self, u: ArrayLike) -> Optional[NDArray[np.float64]]:
        if self.reference_fn is None:
            return None
        return self.reference_fn(np.atleast_2d(np.asarray(u, dtype=np.float64)))

    def flipped(self) -> HypersurfaceChart:
        """Same chart with the opposite normal orientation."""
        return replace(self, orientation=-self.orientation)

    def without_jet(self) -> HypersurfaceChart:
        return replace(self, jet_fn=None)


def _monomial_chart(
    name: str,
    codes: NDArray[np.int_],
    coef: NDArray[np.float64],
    domain: DomainBox,
    sample_box,
    reference_fn: ParamMap,
    params: Dict[str, Any],
    **extra,
) -> HypersurfaceChart:
    codes = np.asarray(codes, dtype=int)
    coef = np.asarray(coef, dtype=np.float64)

    def jet_fn(u):
        return trig_monomial_jet(codes, coef, u)

    def map_fn(u):
        return _monomial_value(codes, coef, u)

    return HypersurfaceChart(
        name=name,
        dim=codes.shape[0],
        map_fn=map_fn,
        jet_fn=jet_fn,
        domain=domain,
        sample_box=sample_box,
        reference_fn=reference_fn,
        params=params,
        **extra,
    )


def _monomial_value(codes: NDArray[np.int_], coef: NDArray[np.float64], u: NDArray[np.float64]):
    f0, _, _ = _factor_jets(codes, np.atleast_2d(u))
    return coef * np.prod(f0, axis=1)


# ---------------------------------------------------------------------------
# Latitude charts: x = cos t(u) 1 + sin t(u) w(u), w in the unit sphere of Im O

ProfileJet = Callable[[NDArray[np.float64]], Tuple[NDArray, NDArray, NDArray]]


def _latitude_chart(
    name: str,
    profile: ProfileJet,
    params: Dict[str, Any],
    first_angle: Optional[Tuple[float, float]] = None,
) -> HypersurfaceChart:
    codes = sphere_codes(6)
    coef = np.ones(7)
    domain, sample_box = sphere_box(6)
    if first_angle is not None:
        lower, upper = sample_box
        sample_box = ((first_angle[0],) + lower[1:], (first_angle[1],) + upper[1:])

    def jet_fn(u):
        w, dw, ddw = trig_monomial_jet(codes, coef, u)
        t, dt, ddt = profile(u)
        ct = np.cos(t)[:, None]
        st = np.sin(t)[:, None]
        n, m = u.shape
        value = np.concatenate([ct, st * w], axis=1)
        d1 = np.empty((n, m, AMBIENT_DIM))
        d1[:, :, 0] = -st * dt
        d1[:, :, 1:] = (ct * dt)[:, :, None] * w[:, None, :] + st[:, :, None] * dw
        d2 = np.empty((n, m, m, AMBIENT_DIM))
        dtdt = dt[:, :, None] * dt[:, None, :]
        d2[..., 0] = -ct[:, :, None] * dtdt - st[:, :, None] * ddt
        radial = -st[:, :, None] * dtdt + ct[:, :, None] * ddt
        cross = dt[:, :, None, None] * dw[:, None, :, :] + dt[:, None, :, None] * dw[:, :, None, :]
        d2[..., 1:] = (
            radial[..., None] * w[:, None, None, :]
            + ct[:, :, None, None] * cross
            + st[:, :, None, None] * ddw
        )
        return value, d1, d2

    def map_fn(u):
        w = _monomial_value(codes, coef, u)
        t = profile(u)[0]
        return np.concatenate([np.cos(t)[:, None], np.sin(t)[:, None] * w], axis=1)

    def reference_fn(u):
        # inward: toward the pole 1 when t < pi/2
        w = _monomial_value(codes, coef, u)
        t = profile(u)[0]
        return np.concatenate([np.sin(t)[:, None], -np.cos(t)[:, None] * w], axis=1)

    return HypersurfaceChart(
        name=name,
        dim=6,
        map_fn=map_fn,
        jet_fn=jet_fn,
        domain=domain,
        sample_box=sample_box,
        reference_fn=reference_fn,
        params=params,
    )


def _constant_profile(t0: float) -> ProfileJet:
    def profile(u):
        n, m = u.shape
        return np.full(n, t0), np.zeros((n, m)), np.zeros((n, m, m))

    return profile


def _cosine_profile(t0: float, eps: float, mode: int) -> ProfileJet:
    def profile(u):
        n, m = u.shape
        theta = u[:, 0]
        t = t0 + eps * np.cos(mode * theta)
        dt = np.zeros((n, m))
        ddt = np.zeros((n, m, m))
        dt[:, 0] = -eps * mode * np.sin(mode * theta)
        ddt[:, 0, 0] = -eps * mode**2 * np.cos(mode * theta)
        return t, dt, ddt

    return profile


def equator() -> HypersurfaceChart:
    """Totally geodesic S6 = S7 cap Im O, unit normal 1."""
    return _latitude_chart("equator", _constant_profile(np.pi / 2), {})


def geodesic_sphere(t0: float = np.pi / 3) -> HypersurfaceChart:
    """Distance sphere of radius t0 about 1; umbilic with curvature cot(t0) inward."""
    if not 0 < t0 < np.pi:
        raise DegenerateChartError(f"t0 must lie in (0, pi), got {t0}")
    return _latitude_chart("geodesic_sphere", _constant_profile(t0), {"t0": t0})


def perturbed_sphere(t0: float = np.pi / 3, eps: float = 0.05, mode: int = 2) -> HypersurfaceChart:
    """
    Latitude t(u) = t0 + eps cos(mode u_0); not CMC for eps != 0.

    mode 1 moves the geodesic sphere along a Jacobi field, so H varies only at
    order eps^2 there. Samples keep u_0 in [pi/8, 3 pi/8], clear of u_0 = pi/2
    where grad H vanishes for even modes.
    """
    if not (0 < t0 - abs(eps) and t0 + abs(eps) < np.pi):
        raise DegenerateChartError(f"Latitude t0 +- eps must stay in (0, pi), got {t0} +- {eps}")
    if mode < 1:
        raise DegenerateChartError(f"Perturbation mode must be at least 1, got {mode}")
    return _latitude_chart(
        "perturbed_sphere",
        _cosine_profile(t0, eps, mode),
        {"t0": t0, "eps": eps, "mode": mode},
        first_angle=PERTURBED_FIRST_ANGLE,
    )


def great_sphere(axis: int = 1) -> HypersurfaceChart:
    """
    Totally geodesic S7 cap e_axis^perp with normal e_axis.

    The sphere coordinates fill the remaining axes with axis 0 last, so the
    point 1 sits at all angles pi/2 whenever axis != 0.
    """
    if not 0 <= axis < AMBIENT_DIM:
        raise DegenerateChartError(f"Axis must lie in [0, 7], got {axis}")
    others = [k for k in range(1, AMBIENT_DIM) if k != axis] + ([0] if axis != 0 else [])
    codes = np.zeros((6, AMBIENT_DIM), dtype=int)
    coef = np.zeros(AMBIENT_DIM)
    codes[:, others] = sphere_codes(6)
    coef[others] = 1.0
    normal = np.zeros(AMBIENT_DIM)
    normal[axis] = 1.0
    domain, sample_box = sphere_box(6)
    return _monomial_chart(
        "great_sphere",
        codes,
        coef,
        domain,
        sample_box,
        reference_fn=lambda u: np.broadcast_to(normal, (np.atleast_2d(u).shape[0], AMBIENT_DIM)),
        params={"axis": axis},
    )


# ---------------------------------------------------------------------------
# Products S^p(a) x S^q(b)


def product_torus(p: int = 3, q: int = 3, a: float = 0.6) -> HypersurfaceChart:
    """
    Clifford-type product S^p(a) x S^q(b) in R^(p+1) + R^(q+1), a^2 + b^2 = 1.

    With the normal (b w_p, -a w_q) the principal curvatures are -b/a (p times)
    and a/b (q times).
    """
    if p < 1 or q < 1 or p + q != 6:
        raise DegenerateChartError(f"Need p, q >= 1 with p + q = 6, got p={p}, q={q}")
    if not 0 < a < 1:
        raise DegenerateChartError(f"Radius a must lie in (0, 1), got {a}")
    b = float(np.sqrt(1.0 - a * a))
    codes = np.zeros((6, AMBIENT_DIM), dtype=int)
    codes[:p, : p + 1] = sphere_codes(p)
    codes[p:, p + 1 :] = sphere_codes(q)
    coef = np.concatenate([np.full(p + 1, a), np.full(q + 1, b)])
    dom_p, box_p = sphere_box(p)
    dom_q, box_q = sphere_box(q)
    domain = DomainBox(
        dom_p.lower + dom_q.lower, dom_p.upper + dom_q.upper, dom_p.periodic + dom_q.periodic
    )
    sample_box = (box_p[0] + box_q[0], box_p[1] + box_q[1])
    ref_coef = np.concatenate([np.full(p + 1, b), np.full(q + 1, -a)])

    def reference_fn(u):
        return _monomial_value(codes, ref_coef, u)

    return _monomial_chart(
        "product_torus", codes, coef, domain, sample_box, reference_fn, {"p": p, "q": q, "a": a}
    )


def product_torus_lift(a: float = 0.6) -> HypersurfaceChart:
    """
    Five-parameter slice of the Hopf-invariant S3(a) x S3(b), a lift of a CP3
    hypersurface.

    Parameters (s, phi, t, psi1, psi2):
        f = (a (cos s, 0, sin s cos phi, sin s sin phi),
             b (cos t cos psi1, cos t sin psi1, sin t cos psi2, sin t sin psi2))
    so a0^2 + a1^2 = a^2 cos^2 s.
    """
    if not 0 < a < 1:
        raise DegenerateChartError(f"Radius a must lie in (0, 1), got {a}")
    b = float(np.sqrt(1.0 - a * a))
    s, phi, t, psi1, psi2 = range(5)
    codes = np.zeros((5, AMBIENT_DIM), dtype=int)
    codes[s, 0] = COS
    codes[s, 2] = codes[s, 3] = SIN
    codes[phi, 2], codes[phi, 3] = COS, SIN
    codes[t, 4] = codes[t, 5] = COS
    codes[t, 6] = codes[t, 7] = SIN
    codes[psi1, 4], codes[psi1, 5] = COS, SIN
    codes[psi2, 6], codes[psi2, 7] = COS, SIN
    coef = np.array([a, 0.0, a, a, b, b, b, b])
    ref_coef = np.array([b, 0.0, b, b, -a, -a, -a, -a])
    domain = DomainBox(
        (0.05, 0.0, 0.05, 0.0, 0.0),
        (1.0, PERIOD, np.pi / 2 - 0.05, PERIOD, PERIOD),
        (False, True, False, True, True),
    )
    sample_box = ((0.3, 0.0, 0.4, 0.0, 0.0), (0.8, PERIOD, 1.2, PERIOD, PERIOD))

    def reference_fn(u):
        return _monomial_value(codes, ref_coef, u)

    def defining_fn(x):
        return np.sum(np.asarray(x)[..., :4] ** 2, axis=-1) - a * a

    return _monomial_chart(
        "product_torus_lift",
        codes,
        coef,
        domain,
        sample_box,
        reference_fn,
        {"a": a},
        horizontal=True,
        defining_fn=defining_fn,
    )


# ---------------------------------------------------------------------------
# Catalog

CHART_BUILDERS: Dict[str, Callable[..., HypersurfaceChart]] = {
    "equator": equator,
    "geodesic_sphere": geodesic_sphere,
    "perturbed_sphere": perturbed_sphere,
    "product_torus": product_torus,
    "product_torus_lift": product_torus_lift,
    "great_sphere": great_sphere,
}


def build_chart(name: str, **params: Any) -> HypersurfaceChart:
    """
    Build a catalog chart by name.

    Raises:
        KeyError: If the name is not in the catalog
    """
    if name not in CHART_BUILDERS:
        raise KeyError(f"Unknown chart '{name}', expected one of {sorted(CHART_BUILDERS)}")
    return CHART_BUILDERS[name](**params)


def sample_points(chart: HypersurfaceChart, n: int, seed: int = 7) -> NDArray[np.float64]:
    """
    n scrambled Sobol points in the chart's sample box.

    A power-of-two block is drawn and truncated so the sequence stays balanced
    and the result is reproducible for a fixed seed.
    """
    if n < 1:
        raise EmptySampleError(f"Need at least one sample point, got {n}")
    sampler = qmc.Sobol(d=chart.dim, scramble=True, seed=seed)
    block = sampler.random_base2(int(np.ceil(np.log2(max(n, 2)))))[:n]
    lower, upper = (np.asarray(v) for v in chart.sample_box)
    return qmc.scale(block, lower, upper)

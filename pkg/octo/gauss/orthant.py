"""
Orthant and Equator Containment of Gauss Images

Sample-level checks that a Gauss image lies in a 2^k-orthant of S6 cut out by
k independent equators, and that a hemisphere containment forces containment
in the equator itself.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from octo.exceptions import EmptySampleError

logger = logging.getLogger(__name__)

IMAGINARY_DIM = 7
INDEPENDENCE_TOLERANCE = 1e-10


def imaginary_part(samples: ArrayLike) -> NDArray[np.float64]:
    """Accept Gauss samples as (N, 8) octonions or (N, 7) imaginary vectors."""
    s = np.atleast_2d(np.asarray(samples, dtype=np.float64))
    if s.shape[1] == IMAGINARY_DIM + 1:
        return s[:, 1:]
    if s.shape[1] != IMAGINARY_DIM:
        raise ValueError(f"Gauss samples must have 7 or 8 components, got {s.shape[1]}")
    return s


@dataclass(frozen=True)
class OrthantSpec:
    """
    k <= 7 independent unit normals in Im O with one sign each.

    Normals are normalized on construction and stored read-only.
    """

    normals: NDArray[np.float64]
    signs: Tuple[int, ...]

    def __post_init__(self):
        normals = np.atleast_2d(np.array(self.normals, dtype=np.float64))
        if normals.shape[1] != IMAGINARY_DIM or not 1 <= normals.shape[0] <= IMAGINARY_DIM:
            raise ValueError(f"Need 1..7 normals in R^7, got shape {normals.shape}")
        if len(self.signs) != normals.shape[0] or any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"Need one sign of +-1 per normal, got {self.signs}")
        normals = normals / np.linalg.norm(normals, axis=1, keepdims=True)
        if np.linalg.svd(normals, compute_uv=False)[-1] <= INDEPENDENCE_TOLERANCE:
            raise ValueError("Orthant normals are linearly dependent")
        normals.setflags(write=False)
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))

    @property
    def k(self) -> int:
        return self.normals.shape[0]


@dataclass(frozen=True)
class OrthantReport:
    minima: Tuple[float, ...]
    maxima: Tuple[float, ...]
    in_orthant: bool
    in_equators: bool
    sample_count: int
    violating_sample: Optional[int] = None
    violating_normal: Optional[int] = None


def orthant_containment(
    samples: ArrayLike,
    spec: OrthantSpec,
    tol: float = 1e-8,
    equator_tol: float = 1e-6,
) -> OrthantReport:
    """
    Sign pattern of <gamma, v_i> over Gauss samples.

    Raises:
        EmptySampleError: If no samples are given
    """
    s = np.asarray(samples, dtype=np.float64)
    if s.size == 0:
        raise EmptySampleError("Orthant containment needs at least one Gauss sample")
    gamma = imaginary_part(s)
    products = gamma @ spec.normals.T
    signed = products * np.asarray(spec.signs)[None, :]

    bad = np.argwhere(signed < -tol)
    violating_sample = violating_normal = None
    if len(bad):
        violating_sample, violating_normal = (int(i) for i in bad[0])
        logger.debug(
            f"Sample {violating_sample} leaves the orthant along normal {violating_normal}: "
            f"{products[violating_sample, violating_normal]:.3e}"
        )
    return OrthantReport(
        minima=tuple(float(v) for v in products.min(axis=0)),
        maxima=tuple(float(v) for v in products.max(axis=0)),
        in_orthant=not len(bad),
        in_equators=bool(np.max(np.abs(products)) <= equator_tol),
        sample_count=len(gamma),
        violating_sample=violating_sample,
        violating_normal=violating_normal,
    )


def scan_directions(n_random: int = 64, seed: int = 7) -> NDArray[np.float64]:
    """+-e1..+-e7 followed by n_random uniform directions of S6."""
    axes = np.eye(IMAGINARY_DIM)
    rng = np.random.default_rng(seed)
    random = rng.standard_normal((n_random, IMAGINARY_DIM))
    random /= np.linalg.norm(random, axis=1, keepdims=True)
    return np.concatenate([axes, -axes, random])


@dataclass(frozen=True)
class HemisphereScan:
    directions: int
    hemispheres: Tuple[int, ...]
    failures: Tuple[int, ...]
    worst_equator_gap: float

    @property
    def holds(self) -> bool:
        return not self.failures


def hemisphere_implies_equator(
    samples: ArrayLike,
    directions: Sequence[ArrayLike],
    tol: float = 1e-8,
    equator_tol: float = 1e-6,
) -> HemisphereScan:
    """
    For every direction v whose closed hemisphere contains all samples
    (min <gamma, v> >= -tol), check max |<gamma, v>| <= equator_tol.
    """
    s = np.asarray(samples, dtype=np.float64)
    if s.size == 0:
        raise EmptySampleError("Hemisphere scan needs at least one Gauss sample")
    gamma = imaginary_part(s)
    dirs = np.atleast_2d(np.asarray(directions, dtype=np.float64))
    products = gamma @ dirs.T

    in_hemisphere = products.min(axis=0) >= -tol
    gaps = np.abs(products).max(axis=0)
    hemispheres = tuple(int(i) for i in np.flatnonzero(in_hemisphere))
    failures = tuple(i for i in hemispheres if gaps[i] > equator_tol)
    worst = float(max((gaps[i] for i in hemispheres), default=0.0))
    if failures:
        logger.warning(
            f"{len(failures)} hemisphere directions are not equators (worst gap {worst:.3e})"
        )
    return HemisphereScan(
        directions=len(dirs), hemispheres=hemispheres, failures=failures, worst_equator_gap=worst
    )

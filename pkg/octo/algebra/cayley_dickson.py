"""
Cayley-Dickson Arithmetic

Recursive doubling R -> C -> H -> O -> S. Elements are coefficient vectors of
length 2^level; every array routine works over leading batch axes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from octo.exceptions import InvalidLevelError, LevelMismatchError, ZeroInverseError

logger = logging.getLogger(__name__)

MAX_LEVEL = 4
ALGEBRA_NAMES = {0: "reals", 1: "complex", 2: "quaternions", 3: "octonions", 4: "sedenions"}


# ---------------------------------------------------------------------------
# Array kernels


def mul_array(x: ArrayLike, y: ArrayLike) -> NDArray[np.float64]:
    """
    Cayley-Dickson product over the last axis.

    (a, b)(c, d) = (a c - conj(d) b, d a + b conj(c)), real product at length 1.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = x.shape[-1]
    if y.shape[-1] != n:
        raise LevelMismatchError(f"Operand lengths differ: {n} != {y.shape[-1]}")
    if n == 1:
        return x * y
    half = n // 2
    a, b = x[..., :half], x[..., half:]
    c, d = y[..., :half], y[..., half:]
    first = mul_array(a, c) - mul_array(conj_array(d), b)
    second = mul_array(d, a) + mul_array(b, conj_array(c))
    return np.concatenate(np.broadcast_arrays(first, second), axis=-1)


def conj_array(x: ArrayLike) -> NDArray[np.float64]:
    """Recursive conjugation conj(a, b) = (conj(a), -b) over the last axis."""
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[-1]
    if n == 1:
        return x.copy()
    half = n // 2
    return np.concatenate([conj_array(x[..., :half]), -x[..., half:]], axis=-1)


def inverse_array(x: ArrayLike) -> NDArray[np.float64]:
    """conj(x) / |x|^2 over the last axis."""
    x = np.asarray(x, dtype=np.float64)
    norm_sq = np.sum(x * x, axis=-1, keepdims=True)
    if np.any(norm_sq == 0.0):
        raise ZeroInverseError("Inverse of the zero element is undefined")
    return conj_array(x) / norm_sq


def level_of(length: int) -> int:
    """Level n with 2^n == length."""
    if length < 1 or length & (length - 1):
        raise InvalidLevelError(f"Coefficient length {length} is not a power of two")
    return length.bit_length() - 1


def basis_array(level: int) -> NDArray[np.float64]:
    """Identity matrix whose rows are e_0 .. e_{2^level - 1}."""
    _check_level(level)
    return np.eye(2**level)


def _check_level(level: int, upper: int = MAX_LEVEL) -> None:
    if level < 0 or level > upper:
        raise InvalidLevelError(f"Level must lie in [0, {upper}], got {level}")


# ---------------------------------------------------------------------------
# Element type


class HypercomplexNumber:
    """
    Element of the Cayley-Dickson algebra at a given level.

    Attributes:
        level: Doubling level n
        coeffs: Read-only coefficient vector of length 2^n
    """

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs: ArrayLike):
        if level < 0:
            raise InvalidLevelError(f"Level must be non-negative, got {level}")
        arr = np.array(coeffs, dtype=np.float64).reshape(-1)
        if arr.shape[0] != 2**level:
            raise InvalidLevelError(
                f"Level {level} needs {2**level} coefficients, got {arr.shape[0]}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("HypercomplexNumber is immutable")

    @classmethod
    def from_coeffs(cls, coeffs: ArrayLike) -> HypercomplexNumber:
        arr = np.asarray(coeffs, dtype=np.float64).reshape(-1)
        return cls(level_of(arr.shape[0]), arr)

    @classmethod
    def basis(cls, level: int, index: int) -> HypercomplexNumber:
        """Basis element e_index."""
        if not 0 <= index < 2**level:
            raise InvalidLevelError(f"Basis index {index} out of range for level {level}")
        c = np.zeros(2**level)
        c[index] = 1.0
        return cls(level, c)

    @classmethod
    def real(cls, level: int, value: float = 1.0) -> HypercomplexNumber:
        c = np.zeros(2**level)
        c[0] = value
        return cls(level, c)

    @property
    def dim(self) -> int:
        return 2**self.level

    @property
    def re(self) -> float:
        return float(self.coeffs[0])

    def _match(self, other: HypercomplexNumber) -> None:
        if self.level != other.level:
            raise LevelMismatchError(f"Level mismatch: {self.level} != {other.level}")

    def __add__(self, other: HypercomplexNumber) -> HypercomplexNumber:
        self._match(other)
        return HypercomplexNumber(self.level, self.coeffs + other.coeffs)

    def __sub__(self, other: HypercomplexNumber) -> HypercomplexNumber:
        self._match(other)
        return HypercomplexNumber(self.level, self.coeffs - other.coeffs)

    def __neg__(self) -> HypercomplexNumber:
        return HypercomplexNumber(self.level, -self.coeffs)

    def __mul__(self, other: Union[HypercomplexNumber, float, int]) -> HypercomplexNumber:
        if isinstance(other, (int, float)):
            return HypercomplexNumber(self.level, self.coeffs * other)
        return cd_multiply(self, other)

    def __rmul__(self, other: Union[float, int]) -> HypercomplexNumber:
        return HypercomplexNumber(self.level, self.coeffs * other)

    def __truediv__(self, scalar: float) -> HypercomplexNumber:
        return HypercomplexNumber(self.level, self.coeffs / scalar)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HypercomplexNumber):
            return NotImplemented
        return self.level == other.level and bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash((self.level, self.coeffs.tobytes()))

    def allclose(self, other: HypercomplexNumber, atol: float = 1e-12) -> bool:
        self._match(other)
        return bool(np.allclose(self.coeffs, other.coeffs, rtol=0.0, atol=atol))

    def __repr__(self) -> str:
        terms = [
            f"{c:+g}" + ("" if k == 0 else f"e{k}")
            for k, c in enumerate(self.coeffs)
            if c != 0.0
        ]
        return f"HypercomplexNumber(level={self.level}, {' '.join(terms) or '0'})"


def cd_multiply(x: HypercomplexNumber, y: HypercomplexNumber) -> HypercomplexNumber:
    """
    Product x*y by the recursive halving formula.

    Raises:
        LevelMismatchError: If the operands live at different levels
    """
    if x.level != y.level:
        raise LevelMismatchError(f"Cannot multiply level {x.level} by level {y.level}")
    return HypercomplexNumber(x.level, mul_array(x.coeffs, y.coeffs))


def cd_conjugate(x: HypercomplexNumber) -> HypercomplexNumber:
    return HypercomplexNumber(x.level, conj_array(x.coeffs))


def cd_norm(x: HypercomplexNumber) -> float:
    return float(np.linalg.norm(x.coeffs))


def cd_inverse(x: HypercomplexNumber) -> HypercomplexNumber:
    """
    conj(x) / |x|^2.

    Raises:
        ZeroInverseError: If x is zero
    """
    return HypercomplexNumber(x.level, inverse_array(x.coeffs))


def re_im_split(x: HypercomplexNumber) -> Tuple[float, HypercomplexNumber]:
    """Return (Re x, Im x) with Im x carrying a zero real coefficient."""
    imag = x.coeffs.copy()
    imag[0] = 0.0
    return float(x.coeffs[0]), HypercomplexNumber(x.level, imag)


def embed(x: HypercomplexNumber, target_level: int) -> HypercomplexNumber:
    """Monomorphism x -> (x, 0) repeated up to target_level."""
    if target_level < x.level:
        raise InvalidLevelError(
            f"Cannot embed level {x.level} into lower level {target_level}"
        )
    coeffs = np.zeros(2**target_level)
    coeffs[: x.dim] = x.coeffs
    return HypercomplexNumber(target_level, coeffs)


# ---------------------------------------------------------------------------
# Multiplication tables


@dataclass(frozen=True)
class BasisProduct:
    """e_i * e_j = sign * e_k"""

    i: int
    j: int
    k: int
    sign: int

    @property
    def label(self) -> str:
        return format_basis_label(self.k, self.sign)


def format_basis_label(k: int, sign: int) -> str:
    body = "1" if k == 0 else f"e{k}"
    return body if sign > 0 else f"-{body}"


def parse_basis_label(label: str) -> Tuple[int, int]:
    """'-e3' -> (3, -1), '1' -> (0, 1)."""
    sign = -1 if label.startswith("-") else 1
    body = label.lstrip("+-")
    return (0 if body == "1" else int(body[1:])), sign


# Row e_i, column e_j holds e_i * e_j.
REFERENCE_OCTONION_TABLE: Tuple[Tuple[str, ...], ...] = (
    ("1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"),
    ("e1", "-1", "e3", "-e2", "e5", "-e4", "-e7", "e6"),
    ("e2", "-e3", "-1", "e1", "e6", "e7", "-e4", "-e5"),
    ("e3", "e2", "-e1", "-1", "e7", "-e6", "e5", "-e4"),
    ("e4", "-e5", "-e6", "-e7", "-1", "e1", "e2", "e3"),
    ("e5", "e4", "-e7", "e6", "-e1", "-1", "-e3", "e2"),
    ("e6", "e7", "e4", "-e5", "-e2", "e3", "-1", "-e1"),
    ("e7", "-e6", "e5", "e4", "-e3", "-e2", "e1", "-1"),
)


@lru_cache(maxsize=None)
def structure_constants(level: int) -> NDArray[np.float64]:
    """
    Read-only tensor C with e_i * e_j = sum_k C[i, j, k] e_k.

    Built once per level from the recursion.
    """
    _check_level(level)
    basis = basis_array(level)
    tensor = mul_array(basis[:, None, :], basis[None, :, :])
    tensor.setflags(write=False)
    logger.debug("Built structure constants for level %d (%d entries)", level, tensor.size)
    return tensor


def table_multiply(x: ArrayLike, y: ArrayLike) -> NDArray[np.float64]:
    """Product through the structure-constant tensor; agrees with mul_array."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape[-1] != y.shape[-1]:
        raise LevelMismatchError(f"Operand lengths differ: {x.shape[-1]} != {y.shape[-1]}")
    tensor = structure_constants(level_of(x.shape[-1]))
    return np.einsum("...i,...j,ijk->...k", x, y, tensor)


def generate_mult_table(level: int) -> List[BasisProduct]:
    """
    All 2^level x 2^level basis products in row-major order.

    Args:
        level: Doubling level, at most 4

    Returns:
        List of BasisProduct entries, each exactly +-e_k
    """
    tensor = structure_constants(level)
    n = tensor.shape[0]
    table = []
    for i in range(n):
        for j in range(n):
            row = tensor[i, j]
            k = int(np.flatnonzero(row)[0])
            table.append(BasisProduct(i=i, j=j, k=k, sign=int(row[k])))
    return table


def table_as_labels(table: Sequence[BasisProduct]) -> Tuple[Tuple[str, ...], ...]:
    """Square grid of labels, the layout of REFERENCE_OCTONION_TABLE."""
    n = int(round(len(table) ** 0.5))
    grid = [["" for _ in range(n)] for _ in range(n)]
    for entry in table:
        grid[entry.i][entry.j] = entry.label
    return tuple(tuple(row) for row in grid)


# ---------------------------------------------------------------------------
# Matrix representations


def _as_coeffs(x: Union[HypercomplexNumber, ArrayLike]) -> NDArray[np.float64]:
    if isinstance(x, HypercomplexNumber):
        return np.asarray(x.coeffs)
    return np.asarray(x, dtype=np.float64)


def left_mul_matrix(x: Union[HypercomplexNumber, ArrayLike]) -> NDArray[np.float64]:
    """
    Matrix of y -> x*y; column j is coeffs(x * e_j).

    Accepts quaternions and octonions, batched over leading axes.
    """
    coeffs = _as_coeffs(x)
    level = level_of(coeffs.shape[-1])
    if level not in (2, 3):
        raise InvalidLevelError(f"Multiplication matrices exist for levels 2 and 3, got {level}")
    basis = basis_array(level)
    cols = mul_array(coeffs[..., None, :], basis)
    return np.swapaxes(cols, -1, -2)


def right_mul_matrix(x: Union[HypercomplexNumber, ArrayLike]) -> NDArray[np.float64]:
    """Matrix of y -> y*x; column j is coeffs(e_j * x)."""
    coeffs = _as_coeffs(x)
    level = level_of(coeffs.shape[-1])
    if level not in (2, 3):
        raise InvalidLevelError(f"Multiplication matrices exist for levels 2 and 3, got {level}")
    basis = basis_array(level)
    cols = mul_array(basis, coeffs[..., None, :])
    return np.swapaxes(cols, -1, -2)


# ---------------------------------------------------------------------------
# Property checks

PROPERTIES = ("commutative", "associative", "alternative", "normed", "division")


@dataclass(frozen=True)
class PropertyVerdict:
    """Outcome of check_property; counterexample is None when the property holds."""

    level: int
    prop: str
    holds: bool
    counterexample: Optional[Tuple[HypercomplexNumber, ...]] = None
    basis_checked: int = 0
    random_checked: int = 0
    max_defect: float = 0.0


@dataclass(frozen=True)
class ZeroDivisorResult:
    """Outcome of the two-term zero-divisor scan."""

    level: int
    found: bool
    x: Optional[HypercomplexNumber] = None
    y: Optional[HypercomplexNumber] = None
    product_norm: float = float("nan")
    searched: int = 0


def _relative_defect(lhs: NDArray, rhs: NDArray, scale: NDArray) -> NDArray:
    return np.linalg.norm(lhs - rhs, axis=-1) / np.maximum(scale, 1.0)


def _wrap(level: int, *arrays: NDArray) -> Tuple[HypercomplexNumber, ...]:
    return tuple(HypercomplexNumber(level, a) for a in arrays)


def _basis_scan(level: int, prop: str) -> Tuple[Optional[Tuple[int, ...]], int]:
    """First failing basis tuple (or None) and the number of tuples scanned."""
    basis = basis_array(level)
    n = basis.shape[0]
    tensor = structure_constants(level)
    if prop == "commutative":
        bad = np.argwhere(np.any(tensor != np.swapaxes(tensor, 0, 1), axis=-1))
        return (tuple(int(v) for v in bad[0]) if len(bad) else None), n * n
    if prop == "associative":
        # left[i, j, k] = (e_i e_j) e_k, right[i, j, k] = e_i (e_j e_k)
        left = mul_array(tensor[:, :, None, :], basis[None, None, :, :])
        right = mul_array(basis[:, None, None, :], tensor[None, :, :, :])
        bad = np.argwhere(np.any(left != right, axis=-1))
        return (tuple(int(v) for v in bad[0]) if len(bad) else None), n**3
    if prop == "alternative":
        sq = mul_array(basis, basis)
        left = mul_array(basis[:, None, :], tensor)
        right = mul_array(sq[:, None, :], basis[None, :, :])
        bad = np.argwhere(np.any(left != right, axis=-1))
        return (tuple(int(v) for v in bad[0]) if len(bad) else None), n * n
    if prop == "normed":
        norms = np.linalg.norm(tensor, axis=-1)
        bad = np.argwhere(norms != 1.0)
        return (tuple(int(v) for v in bad[0]) if len(bad) else None), n * n
    return None, 0


def _random_scan(
    level: int, prop: str, trials: int, rng: np.random.Generator, tol: float
) -> Tuple[Optional[Tuple[NDArray, ...]], float]:
    n = 2**level
    x, y, z = (rng.standard_normal((trials, n)) for _ in range(3))
    nx, ny, nz = (np.linalg.norm(v, axis=-1) for v in (x, y, z))
    if prop == "commutative":
        defect = _relative_defect(mul_array(x, y), mul_array(y, x), nx * ny)
        operands: Tuple[NDArray, ...] = (x, y)
    elif prop == "associative":
        defect = _relative_defect(
            mul_array(mul_array(x, y), z), mul_array(x, mul_array(y, z)), nx * ny * nz
        )
        operands = (x, y, z)
    elif prop == "alternative":
        left = _relative_defect(
            mul_array(x, mul_array(x, y)), mul_array(mul_array(x, x), y), nx * nx * ny
        )
        right = _relative_defect(
            mul_array(mul_array(y, x), x), mul_array(y, mul_array(x, x)), nx * nx * ny
        )
        defect = np.maximum(left, right)
        operands = (x, y)
    else:
        product_norm = np.linalg.norm(mul_array(x, y), axis=-1)
        defect = np.abs(product_norm - nx * ny) / (nx * ny)
        operands = (x, y)
    worst = int(np.argmax(defect))
    if defect[worst] > tol:
        return tuple(o[worst] for o in operands), float(defect[worst])
    return None, float(defect[worst])


def check_property(
    level: int,
    prop: str,
    trials: int = 1_000,
    seed: int = 7,
    tol: float = 1e-12,
) -> PropertyVerdict:
    """
    Decide an algebraic property at a level.

    A basis-level scan runs first; when it finds no witness, random inputs
    confirm the verdict. Division is decided by the zero-divisor scan
    together with the normed check.

    Args:
        level: Doubling level, at most 4
        prop: One of PROPERTIES
        trials: Random inputs for the confirmation pass
        seed: Seed for the random pass
        tol: Relative tolerance on random identities

    Returns:
        PropertyVerdict carrying a counterexample when the property fails
    """
    _check_level(level)
    if prop not in PROPERTIES:
        raise ValueError(f"Unknown property '{prop}', expected one of {PROPERTIES}")

    if prop == "division":
        zero = find_zero_divisor(level)
        if zero.found:
            return PropertyVerdict(
                level=level,
                prop=prop,
                holds=False,
                counterexample=(zero.x, zero.y),
                basis_checked=zero.searched,
                max_defect=1.0,
            )
        normed = check_property(level, "normed", trials=trials, seed=seed, tol=tol)
        return PropertyVerdict(
            level=level,
            prop=prop,
            holds=normed.holds,
            counterexample=normed.counterexample,
            basis_checked=zero.searched,
            random_checked=normed.random_checked,
            max_defect=normed.max_defect,
        )

    witness, scanned = _basis_scan(level, prop)
    basis = basis_array(level)
    if witness is not None:
        logger.debug("%s fails at level %d on basis tuple %s", prop, level, witness)
        return PropertyVerdict(
            level=level,
            prop=prop,
            holds=False,
            counterexample=_wrap(level, *(basis[i] for i in witness[: _arity(prop)])),
            basis_checked=scanned,
            max_defect=1.0,
        )

    rng = np.random.default_rng(seed)
    found, defect = _random_scan(level, prop, trials, rng, tol)
    if found is not None:
        return PropertyVerdict(
            level=level,
            prop=prop,
            holds=False,
            counterexample=_wrap(level, *found),
            basis_checked=scanned,
            random_checked=trials,
            max_defect=defect,
        )
    return PropertyVerdict(
        level=level,
        prop=prop,
        holds=True,
        basis_checked=scanned,
        random_checked=trials,
        max_defect=defect,
    )


def _arity(prop: str) -> int:
    return 3 if prop == "associative" else 2


def two_term_units(level: int) -> NDArray[np.float64]:
    """All (e_i +- e_j)/sqrt(2) with i < j, stacked as rows."""
    n = 2**level
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for sign in (1.0, -1.0):
                v = np.zeros(n)
                v[i] = 1.0
                v[j] = sign
                rows.append(v / np.sqrt(2.0))
    return np.array(rows).reshape(-1, n)


def find_zero_divisor(level: int = 4, tol: float = 1e-12) -> ZeroDivisorResult:
    """
    Search the two-term unit elements for a pair with zero product.

    Returns an explicit not-found result when the search space holds none,
    which is the case for every level below 4.
    """
    _check_level(level)
    candidates = two_term_units(level)
    searched = len(candidates) ** 2
    if searched == 0:
        return ZeroDivisorResult(level=level, found=False, searched=0)
    products = mul_array(candidates[:, None, :], candidates[None, :, :])
    norms = np.linalg.norm(products, axis=-1)
    hits = np.argwhere(norms <= tol)
    logger.debug("Zero-divisor scan at level %d: %d pairs, %d hits", level, searched, len(hits))
    if not len(hits):
        return ZeroDivisorResult(level=level, found=False, searched=searched)
    a, b = (int(v) for v in hits[0])
    return ZeroDivisorResult(
        level=level,
        found=True,
        x=HypercomplexNumber(level, candidates[a]),
        y=HypercomplexNumber(level, candidates[b]),
        product_norm=float(norms[a, b]),
        searched=searched,
    )


def complex_associativity_check(
    a: Union[HypercomplexNumber, complex],
    b: Union[HypercomplexNumber, complex],
    x: HypercomplexNumber,
    tol: float = 1e-13,
) -> bool:
    """
    Check a(bx) = (ab)x and (xa)b = x(ab) for complex a, b embedded at x's level.
    """
    ea, eb = (_embed_complex(c, x.level) for c in (a, b))
    ab = mul_array(ea, eb)
    scale = max(1.0, np.linalg.norm(ea) * np.linalg.norm(eb) * cd_norm(x))
    left = mul_array(ea, mul_array(eb, x.coeffs)) - mul_array(ab, x.coeffs)
    right = mul_array(mul_array(x.coeffs, ea), eb) - mul_array(x.coeffs, ab)
    return bool(max(np.linalg.norm(left), np.linalg.norm(right)) <= tol * scale)


def _embed_complex(c: Union[HypercomplexNumber, complex], level: int) -> NDArray[np.float64]:
    if isinstance(c, HypercomplexNumber):
        if c.level > 1:
            raise InvalidLevelError(f"Expected a complex number, got level {c.level}")
        return embed(c, level).coeffs
    if level < 1:
        raise InvalidLevelError("Complex scalars need level 1 or above")
    out = np.zeros(2**level)
    out[0], out[1] = complex(c).real, complex(c).imag
    return out

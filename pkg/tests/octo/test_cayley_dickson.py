"""
Test Suite for Cayley-Dickson Arithmetic
"""

import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from octo.algebra import (
    REFERENCE_OCTONION_TABLE,
    HypercomplexNumber,
    cd_conjugate,
    cd_inverse,
    cd_multiply,
    cd_norm,
    check_property,
    complex_associativity_check,
    embed,
    find_zero_divisor,
    generate_mult_table,
    left_mul_matrix,
    mul_array,
    re_im_split,
    right_mul_matrix,
    structure_constants,
    table_as_labels,
    table_multiply,
)
from octo.exceptions import InvalidLevelError, LevelMismatchError, ZeroInverseError

coefficient = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


def octonions():
    return arrays(np.float64, 8, elements=coefficient)


def e(level, k):
    return HypercomplexNumber.basis(level, k)


@pytest.fixture
def rng():
    return np.random.default_rng(7)


# ---------------------------------------------------------------------------
# Products and conjugation


def test_octonion_basis_products():
    """Spot entries of the octonion table"""
    assert cd_multiply(e(3, 1), e(3, 2)) == e(3, 3)
    assert cd_multiply(e(3, 4), e(3, 5)) == e(3, 1)
    assert cd_multiply(e(3, 2), e(3, 1)) == -e(3, 3)
    assert cd_multiply(e(3, 7), e(3, 7)) == -e(3, 0)


def test_unit_is_neutral(rng):
    x = HypercomplexNumber(3, rng.standard_normal(8))
    one = HypercomplexNumber.real(3)
    assert cd_multiply(one, x).allclose(x, atol=0.0)
    assert cd_multiply(x, one).allclose(x, atol=0.0)


def test_level_mismatch_rejected():
    with pytest.raises(LevelMismatchError):
        cd_multiply(e(2, 1), e(3, 1))
    with pytest.raises(ValueError):
        mul_array(np.ones(4), np.ones(8))


def test_coefficient_length_checked():
    with pytest.raises(InvalidLevelError):
        HypercomplexNumber(3, np.ones(7))


def test_values_are_immutable():
    x = e(3, 2)
    with pytest.raises(AttributeError):
        x.level = 2
    with pytest.raises(ValueError):
        x.coeffs[0] = 1.0


def test_conjugation_basics():
    assert cd_conjugate(e(3, 3)) == -e(3, 3)
    assert cd_conjugate(HypercomplexNumber.real(3)) == HypercomplexNumber.real(3)


@given(octonions(), octonions())
@settings(max_examples=200, deadline=None)
def test_conjugate_reverses_products(x, y):
    a, b = HypercomplexNumber(3, x), HypercomplexNumber(3, y)
    lhs = cd_conjugate(cd_multiply(a, b))
    rhs = cd_multiply(cd_conjugate(b), cd_conjugate(a))
    scale = max(1.0, np.abs(x).sum() * np.abs(y).sum())
    np.testing.assert_allclose(lhs.coeffs, rhs.coeffs, atol=1e-12 * scale)


@given(octonions())
@settings(max_examples=200, deadline=None)
def test_trace_and_norm_are_real(x):
    xn = HypercomplexNumber(3, x)
    total = xn + cd_conjugate(xn)
    product = cd_multiply(xn, cd_conjugate(xn))
    scale = max(1.0, float(x @ x))
    assert np.all(total.coeffs[1:] == 0.0)
    np.testing.assert_allclose(product.coeffs[1:], 0.0, atol=1e-12 * scale)
    assert product.coeffs[0] == pytest.approx(cd_norm(xn) ** 2, rel=1e-12, abs=1e-300)


def test_norm_and_inverse():
    assert cd_norm(e(3, 5)) == 1.0
    inv = cd_inverse(2 * e(3, 1))
    assert inv.allclose(-0.5 * e(3, 1), atol=0.0)
    with pytest.raises(ZeroInverseError):
        cd_inverse(HypercomplexNumber(3, np.zeros(8)))
    with pytest.raises(ZeroDivisionError):
        cd_inverse(HypercomplexNumber(2, np.zeros(4)))


def test_inverse_on_random_octonions(rng):
    xs = rng.standard_normal((1000, 8))
    for x in xs:
        xn = HypercomplexNumber(3, x)
        assert cd_multiply(xn, cd_inverse(xn)).allclose(HypercomplexNumber.real(3), atol=1e-13)


def test_re_im_split():
    x = HypercomplexNumber(3, np.arange(1.0, 9.0))
    re, im = re_im_split(x)
    assert re == 1.0
    assert im.coeffs[0] == 0.0
    np.testing.assert_array_equal(im.coeffs[1:], x.coeffs[1:])


# ---------------------------------------------------------------------------
# Embedding


def test_embed_basics():
    assert embed(e(1, 1), 3) == e(3, 1)
    assert embed(HypercomplexNumber.real(0), 4) == HypercomplexNumber.real(4)
    with pytest.raises(InvalidLevelError):
        embed(e(3, 1), 2)


def test_embed_is_multiplicative(rng):
    for _ in range(100):
        x = HypercomplexNumber(2, rng.standard_normal(4))
        y = HypercomplexNumber(2, rng.standard_normal(4))
        lhs = embed(cd_multiply(x, y), 3)
        rhs = cd_multiply(embed(x, 3), embed(y, 3))
        assert lhs.allclose(rhs, atol=1e-13)


# ---------------------------------------------------------------------------
# Tables and matrices


def test_octonion_table_matches_reference():
    table = generate_mult_table(3)
    assert len(table) == 64
    assert table_as_labels(table) == REFERENCE_OCTONION_TABLE


def test_complex_and_quaternion_tables():
    complex_table = {(p.i, p.j): (p.k, p.sign) for p in generate_mult_table(1)}
    assert complex_table == {(0, 0): (0, 1), (0, 1): (1, 1), (1, 0): (1, 1), (1, 1): (0, -1)}

    quat = {(p.i, p.j): (p.k, p.sign) for p in generate_mult_table(2)}
    assert quat[(1, 2)] == (3, 1)
    assert quat[(2, 1)] == (3, -1)


@pytest.mark.parametrize("level", [1, 2, 3, 4])
def test_imaginary_basis_anticommutes(level):
    tensor = structure_constants(level)
    n = tensor.shape[0]
    for i in range(1, n):
        for j in range(1, n):
            if i != j:
                np.testing.assert_array_equal(tensor[i, j], -tensor[j, i])


def test_structure_constants_are_read_only():
    with pytest.raises(ValueError):
        structure_constants(3)[0, 0, 0] = 2.0


def test_table_fast_path_agrees(rng):
    x = rng.standard_normal((500, 8))
    y = rng.standard_normal((500, 8))
    np.testing.assert_allclose(table_multiply(x, y), mul_array(x, y), rtol=0, atol=1e-15 * 64)


def test_left_matrix_pattern():
    np.testing.assert_array_equal(left_mul_matrix(HypercomplexNumber.real(3)), np.eye(8))
    m = left_mul_matrix(e(3, 1))
    np.testing.assert_array_equal(m @ e(3, 2).coeffs, e(3, 3).coeffs)

    # Column e2 of the matrix of x reads (-x2, -x3, x0, x1, x6, x7, -x4, -x5)
    x = np.arange(10.0, 18.0)
    col = left_mul_matrix(x)[:, 2]
    expected = np.array([-x[2], -x[3], x[0], x[1], x[6], x[7], -x[4], -x[5]])
    np.testing.assert_array_equal(col, expected)


def test_left_matrix_reproduces_products(rng):
    xs = rng.standard_normal((1000, 8))
    ys = rng.standard_normal((1000, 8))
    mats = left_mul_matrix(xs)
    via_matrix = np.einsum("nij,nj->ni", mats, ys)
    np.testing.assert_allclose(via_matrix, mul_array(xs, ys), atol=1e-12)


@pytest.mark.parametrize("level", [2, 3])
def test_multiplication_matrices_orthogonal_and_skew(level, rng):
    n = 2**level
    for _ in range(50):
        a = rng.standard_normal(n)
        a /= np.linalg.norm(a)
        for build in (left_mul_matrix, right_mul_matrix):
            m = build(a)
            np.testing.assert_allclose(m.T @ m, np.eye(n), atol=1e-13)
        a[0] = 0.0
        for build in (left_mul_matrix, right_mul_matrix):
            m = build(a)
            np.testing.assert_allclose(m + m.T, 0.0, atol=1e-13)


def test_matrix_levels_restricted():
    with pytest.raises(InvalidLevelError):
        left_mul_matrix(np.ones(16))


# ---------------------------------------------------------------------------
# Property checks


def test_associativity_boundary():
    quaternions = check_property(2, "associative")
    assert quaternions.holds
    assert quaternions.basis_checked == 64

    octonions_verdict = check_property(3, "associative")
    assert not octonions_verdict.holds
    x, y, z = octonions_verdict.counterexample
    lhs = cd_multiply(cd_multiply(x, y), z)
    rhs = cd_multiply(x, cd_multiply(y, z))
    assert not lhs.allclose(rhs)


def test_known_associator_witness():
    lhs = cd_multiply(cd_multiply(e(3, 1), e(3, 2)), e(3, 4))
    rhs = cd_multiply(e(3, 1), cd_multiply(e(3, 2), e(3, 4)))
    assert lhs == e(3, 7)
    assert rhs == -e(3, 7)


def test_commutativity_fails_on_quaternions():
    assert check_property(1, "commutative").holds
    verdict = check_property(2, "commutative")
    assert not verdict.holds
    assert len(verdict.counterexample) == 2


@pytest.mark.parametrize("level", [0, 1, 2, 3])
def test_normed_up_to_octonions(level):
    verdict = check_property(level, "normed", trials=10_000)
    assert verdict.holds
    assert verdict.max_defect <= 1e-12


def test_alternative_boundary():
    assert check_property(3, "alternative").holds
    verdict = check_property(4, "alternative")
    assert not verdict.holds
    assert verdict.counterexample is not None


def test_division_boundary():
    assert check_property(3, "division").holds
    verdict = check_property(4, "division")
    assert not verdict.holds
    x, y = verdict.counterexample
    assert np.linalg.norm(cd_multiply(x, y).coeffs) <= 1e-12


def test_unknown_property_rejected():
    with pytest.raises(ValueError):
        check_property(3, "commutativeish")


def test_zero_divisor_search():
    result = find_zero_divisor(4)
    assert result.found
    assert cd_norm(result.x) == pytest.approx(1.0)
    assert cd_norm(result.y) == pytest.approx(1.0)
    assert cd_norm(cd_multiply(result.x, result.y)) < 1e-12

    # (e1 + e12)(e2 + e15) vanishes under this product
    x = (e(4, 1) + e(4, 12)) / np.sqrt(2.0)
    y = (e(4, 2) + e(4, 15)) / np.sqrt(2.0)
    assert cd_norm(cd_multiply(x, y)) < 1e-15


def test_no_zero_divisor_in_octonions():
    result = find_zero_divisor(3)
    assert not result.found
    assert result.searched == 56**2
    assert result.x is None


def test_complex_associativity(rng):
    x = HypercomplexNumber(3, rng.standard_normal(8))
    i = e(1, 1)
    assert complex_associativity_check(i, i, x)
    ii_x = cd_multiply(embed(i, 3), cd_multiply(embed(i, 3), x))
    assert ii_x.allclose(-x, atol=1e-13)
    assert complex_associativity_check(1, 1j, x)

    for _ in range(1000):
        a = complex(*rng.standard_normal(2))
        b = complex(*rng.standard_normal(2))
        x = HypercomplexNumber(3, rng.standard_normal(8))
        assert complex_associativity_check(a, b, x)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

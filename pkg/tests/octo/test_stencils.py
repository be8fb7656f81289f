"""
Test Suite for Finite-Difference Stencils
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from octo.exceptions import StencilDomainError
from octo.geometry.stencils import DomainBox, StencilSpec, central_jet, stencil_plan


def cubic(u):
    return (u[:, 0] ** 2 * u[:, 1] + 3.0 * u[:, 1])[:, None]


def test_plan_sizes():
    offsets, grad_w, hess_w = stencil_plan(6, 2)
    assert offsets.shape == (1 + 12 + 60, 6)
    assert np.all(offsets[0] == 0)
    assert grad_w.shape == (6, 73)
    assert hess_w.shape == (6, 6, 73)
    np.testing.assert_array_equal(hess_w, np.swapaxes(hess_w, 0, 1))

    offsets4, _, _ = stencil_plan(6, 4)
    assert offsets4.shape[0] == 1 + 24 + 15 * 16


def test_second_order_exact_on_low_degree():
    u = np.array([[0.3, -1.2], [1.1, 0.4]])
    value, grad, hess = central_jet(cubic, u, 1e-3)
    np.testing.assert_allclose(value[:, 0], cubic(u)[:, 0])
    np.testing.assert_allclose(grad[:, 0, 0], 2 * u[:, 0] * u[:, 1], atol=1e-8)
    np.testing.assert_allclose(grad[:, 1, 0], u[:, 0] ** 2 + 3.0, atol=1e-8)
    np.testing.assert_allclose(hess[:, 0, 0, 0], 2 * u[:, 1], atol=1e-6)
    np.testing.assert_allclose(hess[:, 0, 1, 0], 2 * u[:, 0], atol=1e-6)
    np.testing.assert_allclose(hess[:, 1, 1, 0], 0.0, atol=1e-6)


def test_fourth_order_beats_second_order():
    def wave(u):
        return np.sin(u[:, 0]) * np.cos(u[:, 1])

    u = np.array([[0.7, 0.2]])
    exact = -np.sin(0.7) * np.cos(0.2)
    errors = {}
    for order in (2, 4):
        _, _, hess = central_jet(wave, u, 1e-2, order=order)
        errors[order] = abs(hess[0, 0, 0] - exact)
    assert errors[4] < errors[2] / 100


def test_domain_rejects_and_wraps():
    box = DomainBox((0.0, 0.0), (1.0, 2 * np.pi), (False, True))
    with pytest.raises(StencilDomainError):
        central_jet(cubic, np.array([[0.0005, 1.0]]), 1e-3, domain=box)

    def periodic_wave(u):
        return np.sin(u[:, 1])[:, None]

    near_edge = np.array([[0.5, 2 * np.pi - 1e-4]])
    _, grad, _ = central_jet(periodic_wave, near_edge, 1e-3, domain=box)
    assert grad[0, 1, 0] == pytest.approx(np.cos(2 * np.pi - 1e-4), abs=1e-6)


def test_stencil_spec_validation():
    with pytest.raises(ValueError):
        StencilSpec(h_step=0.0)
    with pytest.raises(ValueError):
        StencilSpec(order=3)
    spec = StencilSpec(h_step=1e-3, nesting_factor=10.0)
    assert spec.outer_step(True) == 1e-3
    assert spec.outer_step(False) == pytest.approx(1e-2)
    assert spec.with_step(5e-4).h_step == 5e-4


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

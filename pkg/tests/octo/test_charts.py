"""
Test Suite for the Chart Catalog
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from octo.exceptions import DegenerateChartError, EmptySampleError
from octo.geometry.charts import build_chart, great_sphere, product_torus_lift, sample_points
from octo.geometry.stencils import central_jet

CATALOG = [
    ("equator", {}),
    ("geodesic_sphere", {"t0": np.pi / 3}),
    ("perturbed_sphere", {"t0": np.pi / 3, "eps": 0.05, "mode": 1}),
    ("perturbed_sphere", {"t0": np.pi / 3, "eps": 0.05, "mode": 2}),
    ("product_torus", {"p": 3, "q": 3, "a": 0.6}),
    ("product_torus", {"p": 1, "q": 5, "a": 0.5}),
    ("product_torus_lift", {"a": 0.6}),
]


@pytest.mark.parametrize("name,params", CATALOG)
def test_catalog_maps_to_unit_sphere(name, params):
    chart = build_chart(name, **params)
    u = sample_points(chart, 64, seed=1)
    np.testing.assert_allclose(np.linalg.norm(chart.map(u), axis=1), 1.0, atol=1e-12)


@pytest.mark.parametrize("name,params", CATALOG)
def test_analytic_jet_matches_differences(name, params):
    chart = build_chart(name, **params)
    u = sample_points(chart, 8, seed=2)
    value, d1, d2 = chart.jet(u)
    fd_value, fd_d1, fd_d2 = central_jet(chart.map, u, 1e-4, order=2, domain=chart.domain)
    np.testing.assert_allclose(value, fd_value, atol=1e-14)
    np.testing.assert_allclose(d1, fd_d1, atol=1e-7)
    np.testing.assert_allclose(d2, fd_d2, atol=1e-5)


def test_sample_points_reproducible_and_inside_box():
    chart = build_chart("geodesic_sphere", t0=1.0)
    first = sample_points(chart, 20, seed=7)
    second = sample_points(chart, 20, seed=7)
    np.testing.assert_array_equal(first, second)
    lower, upper = (np.asarray(v) for v in chart.sample_box)
    assert first.shape == (20, 6)
    assert np.all(first >= lower) and np.all(first <= upper)
    with pytest.raises(EmptySampleError):
        sample_points(chart, 0)


def test_unknown_chart_and_bad_parameters():
    with pytest.raises(KeyError):
        build_chart("klein_bottle")
    with pytest.raises(DegenerateChartError):
        build_chart("product_torus", p=3, q=2, a=0.6)
    with pytest.raises(DegenerateChartError):
        build_chart("geodesic_sphere", t0=0.0)
    with pytest.raises(DegenerateChartError):
        build_chart("perturbed_sphere", mode=0)


def test_perturbed_samples_avoid_the_equatorial_latitude():
    chart = build_chart("perturbed_sphere")
    u = sample_points(chart, 64, seed=5)
    assert chart.params["mode"] == 2
    assert np.all(u[:, 0] >= np.pi / 8) and np.all(u[:, 0] <= 3 * np.pi / 8)


def test_great_sphere_passes_through_one():
    chart = great_sphere(axis=1)
    x = chart.map(np.full(6, np.pi / 2))
    np.testing.assert_allclose(x[0], np.eye(8)[0], atol=1e-15)
    np.testing.assert_array_equal(chart.reference(np.full(6, np.pi / 2))[0], np.eye(8)[1])


def test_torus_lift_coordinates():
    chart = product_torus_lift(a=0.6)
    u = sample_points(chart, 32, seed=4)
    x = chart.map(u)
    np.testing.assert_allclose(x[:, 0] ** 2 + x[:, 1] ** 2, 0.36 * np.cos(u[:, 0]) ** 2, atol=1e-14)
    np.testing.assert_allclose(chart.defining_fn(x), 0.0, atol=1e-14)
    assert chart.horizontal
    assert chart.dim == 5


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

"""
Test Suite for Orthant Containment
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from octo.exceptions import EmptySampleError
from octo.gauss.gauss_map import gauss_map
from octo.gauss.orthant import (
    OrthantSpec,
    hemisphere_implies_equator,
    orthant_containment,
    scan_directions,
)
from octo.geometry.charts import geodesic_sphere, product_torus, sample_points
from octo.geometry.stencils import StencilSpec

AXES = np.eye(7)


@pytest.fixture(scope="module")
def torus_gauss():
    chart = product_torus(3, 3, 0.6)
    return gauss_map(chart, sample_points(chart, 512, seed=1), StencilSpec())


@pytest.fixture(scope="module")
def sphere_gauss():
    chart = geodesic_sphere(np.pi / 3)
    return gauss_map(chart, sample_points(chart, 512, seed=1), StencilSpec())


def test_spec_validation():
    spec = OrthantSpec(normals=[2 * AXES[0], AXES[1]], signs=(1, -1))
    np.testing.assert_allclose(spec.normals[0], AXES[0])
    assert spec.k == 2
    with pytest.raises(ValueError):
        OrthantSpec(normals=[AXES[0], 3 * AXES[0]], signs=(1, 1))
    with pytest.raises(ValueError):
        OrthantSpec(normals=[AXES[0]], signs=(1, 1))
    with pytest.raises(ValueError):
        OrthantSpec(normals=[AXES[0]], signs=(0,))
    with pytest.raises(ValueError):
        OrthantSpec(normals=[np.ones(8)], signs=(1,))


def test_torus_lies_in_the_equators_of_its_hopf_directions(torus_gauss):
    spec = OrthantSpec(normals=AXES[:3], signs=(1, -1, 1))
    report = orthant_containment(torus_gauss, spec)
    assert report.in_orthant
    assert report.in_equators
    assert report.violating_sample is None
    assert report.sample_count == 512


def test_torus_hemisphere_scan(torus_gauss):
    scan = hemisphere_implies_equator(torus_gauss, scan_directions(n_random=64, seed=2))
    assert scan.holds
    assert {0, 1, 2, 7, 8, 9} <= set(scan.hemispheres)
    assert scan.worst_equator_gap <= 1e-6


def test_geodesic_sphere_has_no_axis_hemisphere(sphere_gauss):
    scan = hemisphere_implies_equator(sphere_gauss, scan_directions(n_random=0))
    assert scan.hemispheres == ()
    assert scan.holds


def test_random_cloud_is_not_contained():
    cloud = np.random.default_rng(3).standard_normal((200, 7))
    cloud /= np.linalg.norm(cloud, axis=1, keepdims=True)
    report = orthant_containment(cloud, OrthantSpec(normals=AXES[:1], signs=(1,)))
    assert not report.in_orthant
    assert not report.in_equators
    assert report.violating_normal == 0
    assert cloud[report.violating_sample, 0] < -1e-8
    assert report.minima[0] < 0 < report.maxima[0]


def test_empty_samples_rejected():
    spec = OrthantSpec(normals=AXES[:1], signs=(1,))
    with pytest.raises(EmptySampleError):
        orthant_containment(np.empty((0, 7)), spec)
    with pytest.raises(EmptySampleError):
        hemisphere_implies_equator(np.empty((0, 8)), AXES)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

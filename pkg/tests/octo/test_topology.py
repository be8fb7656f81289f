"""
Test Suite for Simplicial Complexes
"""

import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from octo.exceptions import InvalidComplexError
from octo.gauss.topology import (
    SimplicialComplex,
    circle,
    euler_characteristic,
    octahedron_boundary,
    product_complex,
    seven_vertex_torus,
)


def test_octahedron():
    octahedron = octahedron_boundary()
    assert octahedron.f_vector() == (6, 12, 8)
    assert euler_characteristic(octahedron) == 2


def test_seven_vertex_torus():
    torus = seven_vertex_torus()
    assert torus.f_vector() == (7, 21, 14)
    assert euler_characteristic(torus) == 0


def test_circle_products():
    assert euler_characteristic(circle(3)) == 0
    square = product_complex(circle(3), circle(3))
    assert square.f_vector() == (9, 27, 18)
    cube = product_complex(square, circle(4))
    assert cube.dimension == 3
    assert euler_characteristic(cube) == 0


def test_product_is_multiplicative():
    sphere = octahedron_boundary()
    assert euler_characteristic(product_complex(sphere, sphere)) == 4
    assert euler_characteristic(product_complex(sphere, circle(5))) == 0


def test_invalid_complexes():
    with pytest.raises(InvalidComplexError):
        SimplicialComplex((((0,), (1,)), ((0, 2),)))
    with pytest.raises(InvalidComplexError):
        SimplicialComplex((((0,), (-1,)),))
    with pytest.raises(InvalidComplexError):
        SimplicialComplex((((0, 1),),))
    with pytest.raises(InvalidComplexError):
        SimplicialComplex.from_facets([(0, -2)])
    with pytest.raises(InvalidComplexError):
        circle(2)


def test_from_facets_closes_under_faces():
    triangle = SimplicialComplex.from_facets([(2, 0, 1)])
    assert triangle.simplices[1] == ((0, 1), (0, 2), (1, 2))
    assert triangle.vertices == (0, 1, 2)
    assert euler_characteristic(triangle) == 1


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

"""
Simplicial Complexes and Euler Characteristic

Abstract simplicial complexes closed under faces, a few standard
triangulations, and the staircase triangulation of products.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from octo.exceptions import InvalidComplexError

logger = logging.getLogger(__name__)

Simplex = Tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    """
    Simplices grouped by dimension, each a sorted tuple of vertex indices.

    Construction validates that vertex indices are non-negative, simplices are
    non-degenerate and every face of every simplex is present.
    """

    simplices: Tuple[Tuple[Simplex, ...], ...]

    def __post_init__(self):
        present: Dict[int, FrozenSet[Simplex]] = {}
        normalized = []
        for dim, layer in enumerate(self.simplices):
            cleaned = []
            for simplex in layer:
                s = tuple(sorted(int(v) for v in simplex))
                if len(s) != dim + 1 or len(set(s)) != len(s):
                    raise InvalidComplexError(
                        f"Simplex {simplex} listed in dimension {dim} is malformed"
                    )
                if s[0] < 0:
                    raise InvalidComplexError(f"Simplex {simplex} has a negative vertex index")
                cleaned.append(s)
            normalized.append(tuple(sorted(set(cleaned))))
            present[dim] = frozenset(cleaned)

        for dim in range(1, len(normalized)):
            for simplex in normalized[dim]:
                for face in itertools.combinations(simplex, dim):
                    if face not in present[dim - 1]:
                        raise InvalidComplexError(f"Face {face} of simplex {simplex} is missing")
        object.__setattr__(self, "simplices", tuple(normalized))

    @classmethod
    def from_facets(cls, facets: Iterable[Sequence[int]]) -> SimplicialComplex:
        """Close a collection of simplices under taking faces."""
        layers: Dict[int, set] = {}
        for facet in facets:
            vertices = tuple(sorted(set(int(v) for v in facet)))
            if not vertices:
                continue
            if vertices[0] < 0:
                raise InvalidComplexError(f"Facet {tuple(facet)} has a negative vertex index")
            for size in range(1, len(vertices) + 1):
                layers.setdefault(size - 1, set()).update(itertools.combinations(vertices, size))
        top = max(layers, default=-1)
        return cls(tuple(tuple(sorted(layers[d])) for d in range(top + 1)))

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(s[0] for s in self.simplices[0]) if self.simplices else ()

    def f_vector(self) -> Tuple[int, ...]:
        return tuple(len(layer) for layer in self.simplices)


def euler_characteristic(complex_: SimplicialComplex) -> int:
    """Alternating sum of simplex counts."""
    return sum((-1) ** d * n for d, n in enumerate(complex_.f_vector()))


# ---------------------------------------------------------------------------
# Standard complexes


def octahedron_boundary() -> SimplicialComplex:
    """Boundary of the octahedron, a triangulated S2 (vertices +-x, +-y, +-z)."""
    facets = [(x, y, z) for x in (0, 1) for y in (2, 3) for z in (4, 5)]
    return SimplicialComplex.from_facets(facets)


def seven_vertex_torus() -> SimplicialComplex:
    """Minimal 7-vertex triangulation of the torus."""
    facets: List[Simplex] = []
    for i in range(7):
        facets.append((i, (i + 1) % 7, (i + 3) % 7))
        facets.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex.from_facets(facets)


def circle(n: int = 3) -> SimplicialComplex:
    """n-gon triangulation of S1."""
    if n < 3:
        raise InvalidComplexError(f"A simplicial circle needs at least 3 vertices, got {n}")
    return SimplicialComplex.from_facets((i, (i + 1) % n) for i in range(n))


def _staircases(p: int, q: int) -> Iterable[List[Tuple[int, int]]]:
    """Monotone lattice paths from (0, 0) to (p, q)."""
    for rights in itertools.combinations(range(p + q), p):
        i = j = 0
        path = [(0, 0)]
        for step in range(p + q):
            if step in rights:
                i += 1
            else:
                j += 1
            path.append((i, j))
        yield path


def product_complex(first: SimplicialComplex, second: SimplicialComplex) -> SimplicialComplex:
    """
    Staircase triangulation of |first| x |second|.

    Vertex (v, w) becomes v * (max(second) + 1) + w. Each product of simplices
    sigma x tau is split into the simplices of monotone lattice paths through
    their sorted vertices.
    """
    if not first.simplices or not second.simplices:
        return SimplicialComplex(())
    stride = max(second.vertices) + 1
    facets = []
    for sigma in itertools.chain.from_iterable(first.simplices):
        for tau in itertools.chain.from_iterable(second.simplices):
            for path in _staircases(len(sigma) - 1, len(tau) - 1):
                facets.append(tuple(sigma[i] * stride + tau[j] for i, j in path))
    product = SimplicialComplex.from_facets(facets)
    logger.debug(f"Product complex f-vector {product.f_vector()}")
    return product

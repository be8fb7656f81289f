"""Gauss map of hypersurfaces in S7, Killing fields and containment checks"""

from octo.gauss.fields import (
    HOPF_CONJUGATOR,
    X0_MATRIX,
    HopfMultiple,
    VectorFieldSpec,
    custom_field,
    hopf_conjugation_holds,
    hopf_conjugator,
    i_matrix,
    is_hopf_multiple,
    linear_field,
    translate_to_identity,
    translational_field,
)
from octo.gauss.gauss_map import (
    GaussResidual,
    gauss_laplacian_residual,
    gauss_map,
    harmonicity_defect,
    tangential_field_floor,
    tangential_part,
)
from octo.gauss.orthant import (
    HemisphereScan,
    OrthantReport,
    OrthantSpec,
    hemisphere_implies_equator,
    orthant_containment,
    scan_directions,
)
from octo.gauss.topology import (
    SimplicialComplex,
    circle,
    euler_characteristic,
    octahedron_boundary,
    product_complex,
    seven_vertex_torus,
)

__all__ = [
    "HOPF_CONJUGATOR",
    "X0_MATRIX",
    "GaussResidual",
    "HemisphereScan",
    "HopfMultiple",
    "OrthantReport",
    "OrthantSpec",
    "SimplicialComplex",
    "VectorFieldSpec",
    "circle",
    "custom_field",
    "euler_characteristic",
    "gauss_laplacian_residual",
    "gauss_map",
    "harmonicity_defect",
    "hemisphere_implies_equator",
    "hopf_conjugation_holds",
    "hopf_conjugator",
    "i_matrix",
    "is_hopf_multiple",
    "linear_field",
    "octahedron_boundary",
    "orthant_containment",
    "product_complex",
    "scan_directions",
    "seven_vertex_torus",
    "tangential_field_floor",
    "tangential_part",
    "translate_to_identity",
    "translational_field",
]

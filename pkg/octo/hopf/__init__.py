"""Hopf action on S7 and the geometry of CP3 through horizontal lifts"""

from octo.hopf.action import (
    QuadratureSpec,
    WGram,
    circle_element,
    hopf_act,
    hopf_symmetrize,
    i_times,
    is_hopf_invariant,
    w_field,
    w_frame,
    w_gram,
    w_vectors,
)
from octo.hopf.cp3 import (
    CP3Gauss,
    CP3Residual,
    CPPoint,
    HorizontalVector,
    ZGram,
    check_lift_invariance,
    cp3_gauss_map,
    cp3_horizontal_project,
    cp3_laplacian_residual,
    cp3_translate,
    guard_singular_set,
    horizontal_part,
    rotate_representative,
    z_combination,
    z_field,
    z_frame,
    z_gram,
    z_inverse_translation,
)

__all__ = [
    "CP3Gauss",
    "CP3Residual",
    "CPPoint",
    "HorizontalVector",
    "QuadratureSpec",
    "WGram",
    "ZGram",
    "check_lift_invariance",
    "circle_element",
    "cp3_gauss_map",
    "cp3_horizontal_project",
    "cp3_laplacian_residual",
    "cp3_translate",
    "guard_singular_set",
    "hopf_act",
    "hopf_symmetrize",
    "horizontal_part",
    "i_times",
    "is_hopf_invariant",
    "rotate_representative",
    "w_field",
    "w_frame",
    "w_gram",
    "w_vectors",
    "z_combination",
    "z_field",
    "z_frame",
    "z_gram",
    "z_inverse_translation",
]

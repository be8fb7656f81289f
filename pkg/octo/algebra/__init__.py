"""Cayley-Dickson algebras up to the sedenions"""

from octo.algebra.cayley_dickson import (
    ALGEBRA_NAMES,
    MAX_LEVEL,
    PROPERTIES,
    REFERENCE_OCTONION_TABLE,
    BasisProduct,
    HypercomplexNumber,
    PropertyVerdict,
    ZeroDivisorResult,
    basis_array,
    cd_conjugate,
    cd_inverse,
    cd_multiply,
    cd_norm,
    check_property,
    complex_associativity_check,
    conj_array,
    embed,
    find_zero_divisor,
    generate_mult_table,
    inverse_array,
    left_mul_matrix,
    level_of,
    mul_array,
    parse_basis_label,
    re_im_split,
    right_mul_matrix,
    structure_constants,
    table_as_labels,
    table_multiply,
)

__all__ = [
    "ALGEBRA_NAMES",
    "MAX_LEVEL",
    "PROPERTIES",
    "REFERENCE_OCTONION_TABLE",
    "BasisProduct",
    "HypercomplexNumber",
    "PropertyVerdict",
    "ZeroDivisorResult",
    "basis_array",
    "cd_conjugate",
    "cd_inverse",
    "cd_multiply",
    "cd_norm",
    "check_property",
    "complex_associativity_check",
    "conj_array",
    "embed",
    "find_zero_divisor",
    "generate_mult_table",
    "inverse_array",
    "left_mul_matrix",
    "level_of",
    "mul_array",
    "parse_basis_label",
    "re_im_split",
    "right_mul_matrix",
    "structure_constants",
    "table_as_labels",
    "table_multiply",
]

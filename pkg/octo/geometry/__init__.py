"""Chart-based extrinsic geometry of hypersurfaces in S7 and CP3"""

from octo.geometry.charts import (
    CHART_BUILDERS,
    HypersurfaceChart,
    build_chart,
    equator,
    geodesic_sphere,
    great_sphere,
    perturbed_sphere,
    product_torus,
    product_torus_lift,
    sample_points,
)
from octo.geometry.shape import (
    GradientResult,
    ShapeData,
    TangentFrame,
    chart_tangent_frame,
    derived_jet,
    fiber_direction,
    grad_H,
    laplace_beltrami,
    laplacian_from_jets,
    pointwise_shape,
    principal_curvatures,
    shape_data,
    unit_normal,
)
from octo.geometry.stencils import DomainBox, StencilSpec, central_jet

__all__ = [
    "CHART_BUILDERS",
    "DomainBox",
    "GradientResult",
    "HypersurfaceChart",
    "ShapeData",
    "StencilSpec",
    "TangentFrame",
    "build_chart",
    "central_jet",
    "chart_tangent_frame",
    "derived_jet",
    "equator",
    "fiber_direction",
    "geodesic_sphere",
    "grad_H",
    "great_sphere",
    "laplace_beltrami",
    "laplacian_from_jets",
    "perturbed_sphere",
    "pointwise_shape",
    "principal_curvatures",
    "product_torus",
    "product_torus_lift",
    "sample_points",
    "shape_data",
    "unit_normal",
]

"""Combinatorial and local-geometric data model."""

from .geometry import (
    ConeChart,
    DegenerateTriangleError,
    dual_edge_length,
    edge_lengths,
    edge_lengths_squared,
    median_lengths,
    median_lengths_squared,
    slant_radius,
)
from .maps import (
    CombinatorialMap,
    MalformedMapError,
    automorphisms,
    canonical_form,
    dumps,
    genus,
    loads,
)
from .ribbon import (
    MetricRibbonGraph,
    WhiteheadError,
    automorphism_orders,
    chern_form_value,
    edge_refinement,
    whitehead_collapse,
    whitehead_expand,
)
from .triangulation import (
    CurvatureAssignment,
    Divisor,
    Triangulation,
    codualize,
    deficit_and_divisor,
    dualize,
    gauss_bonnet_euler_number,
    hex_refine,
)

__all__ = [
    "CombinatorialMap",
    "ConeChart",
    "CurvatureAssignment",
    "DegenerateTriangleError",
    "Divisor",
    "MalformedMapError",
    "MetricRibbonGraph",
    "Triangulation",
    "WhiteheadError",
    "automorphism_orders",
    "automorphisms",
    "canonical_form",
    "chern_form_value",
    "codualize",
    "deficit_and_divisor",
    "dual_edge_length",
    "dualize",
    "dumps",
    "edge_lengths",
    "edge_lengths_squared",
    "edge_refinement",
    "gauss_bonnet_euler_number",
    "genus",
    "hex_refine",
    "loads",
    "median_lengths",
    "median_lengths_squared",
    "slant_radius",
    "whitehead_collapse",
    "whitehead_expand",
]

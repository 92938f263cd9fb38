"""Exact invariants of torus manifolds over simple polytopes with holes."""

from .charpair import (
    CharacteristicPair,
    ValidationReport,
    VertexFrame,
    all_signs,
    is_positive_omniorientation,
    validate,
    validate_pairwise_2d,
    vertex_frame,
)
from .dim4 import (
    HomologyProfile,
    IntersectionData,
    StructureFlags,
    chern_numbers_dim4,
    cw_cell_counts,
    homology_groups,
    intersection_form,
    one_hole_intersection_matrix,
    quasitoric_intersection_form,
    signature_of_matrix,
    structure_flags,
)
from .exactlin import (
    IntMatrix,
    RatVector,
    det_exact,
    kernel_lattice_basis,
    smith_normal_form,
    unimodular_inverse,
)
from .genus import (
    ChiYPolynomial,
    EdgeVectorFrame,
    chi_y,
    edge_vectors,
    find_generic_nu,
    is_generic,
    vertex_index,
)
from .mac import (
    EmbeddingChart,
    KernelData,
    embedding_chart,
    embedding_coordinates,
    freeness_check,
    kernel_data,
)
from .polytope import (
    HalfSpace,
    PolytopeWithHoles,
    SimplePolytope,
    build_polytope,
    build_with_holes,
    edge_directions_at_vertex,
    place_holes,
    polygon_from_vertices,
)

__version__ = "0.1.0"

__all__ = [
    "CharacteristicPair",
    "ChiYPolynomial",
    "EdgeVectorFrame",
    "EmbeddingChart",
    "HalfSpace",
    "HomologyProfile",
    "IntMatrix",
    "IntersectionData",
    "KernelData",
    "PolytopeWithHoles",
    "RatVector",
    "SimplePolytope",
    "StructureFlags",
    "ValidationReport",
    "VertexFrame",
    "all_signs",
    "build_polytope",
    "build_with_holes",
    "chern_numbers_dim4",
    "chi_y",
    "cw_cell_counts",
    "det_exact",
    "edge_directions_at_vertex",
    "edge_vectors",
    "embedding_chart",
    "embedding_coordinates",
    "find_generic_nu",
    "freeness_check",
    "homology_groups",
    "intersection_form",
    "is_generic",
    "is_positive_omniorientation",
    "kernel_data",
    "kernel_lattice_basis",
    "one_hole_intersection_matrix",
    "place_holes",
    "polygon_from_vertices",
    "quasitoric_intersection_form",
    "signature_of_matrix",
    "smith_normal_form",
    "structure_flags",
    "unimodular_inverse",
    "validate",
    "validate_pairwise_2d",
    "vertex_frame",
    "vertex_index",
]

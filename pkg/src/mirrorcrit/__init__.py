"""Critical groups of graphs with a mirror involution.

Exact-arithmetic tooling around the factorization of a symmetric
graph's critical group through the derived plus/minus graphs: the
induced map on critical groups, its 2-torsion kernel and cokernel,
their identification with fixed bicycle spaces, and the 2-power order
formula, all verified against brute-force oracles.
"""

__version__ = "0.1.0"

from .critical import (
    AdjointPair,
    DualityReport,
    PairMorphism,
    bicycle_masks_bruteforce,
    block_pair,
    complete_morphism,
    count_maximal_forests_bruteforce,
    duality_order_check,
    forest_count,
    induced_critical_hom,
    preserves_lattices,
)
from .factorization import (
    FactorizationReport,
    SymmetryMaps,
    build_maps,
    component_linking_cycles,
    g_injection,
    identify_kernel_cokernel,
    induced_f_star,
    induced_ft_star,
    main_theorem_verdict,
    phi_fixed_bicycles,
    psi_fixed_bicycles,
    snake_dimension_report,
    two_torsion_check,
    verify_lattice_preservation,
)
from .graphfile import ParseError, parse, parse_plain, serialize
from .graphs import (
    AXIS_VERTEX,
    Decomposition,
    Edge,
    EdgeVector,
    FIXED,
    InvalidSymmetricGraph,
    LEFT,
    Multigraph,
    RIGHT,
    SymmetricGraph,
)
from .lattice import (
    FpAbelianGroup,
    GroupHom,
    IntMatrix,
    SmithDecomposition,
    integer_kernel,
    integer_rank,
    smith_normal_form,
)
from .modp import ModpMatrix, ModpSubspace, fixed_subspace, kernel, row_space
from .randgraph import random_multigraph, random_symmetric_graph

__all__ = [
    "AXIS_VERTEX",
    "AdjointPair",
    "Decomposition",
    "DualityReport",
    "Edge",
    "EdgeVector",
    "FIXED",
    "FactorizationReport",
    "FpAbelianGroup",
    "GroupHom",
    "IntMatrix",
    "InvalidSymmetricGraph",
    "LEFT",
    "ModpMatrix",
    "ModpSubspace",
    "Multigraph",
    "PairMorphism",
    "ParseError",
    "RIGHT",
    "SmithDecomposition",
    "SymmetricGraph",
    "SymmetryMaps",
    "bicycle_masks_bruteforce",
    "block_pair",
    "build_maps",
    "complete_morphism",
    "component_linking_cycles",
    "count_maximal_forests_bruteforce",
    "duality_order_check",
    "fixed_subspace",
    "forest_count",
    "g_injection",
    "identify_kernel_cokernel",
    "induced_critical_hom",
    "induced_f_star",
    "induced_ft_star",
    "integer_kernel",
    "integer_rank",
    "kernel",
    "main_theorem_verdict",
    "parse",
    "parse_plain",
    "phi_fixed_bicycles",
    "preserves_lattices",
    "psi_fixed_bicycles",
    "random_multigraph",
    "random_symmetric_graph",
    "row_space",
    "serialize",
    "smith_normal_form",
    "snake_dimension_report",
    "two_torsion_check",
    "verify_lattice_preservation",
]

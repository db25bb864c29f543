"""Exact max flows and min cuts on simplicial complexes."""

from .chains import (
    Chain,
    ChainComplexData,
    Cochain,
    ComplexError,
    SimplicialComplex,
    SparseMatrix,
    apply_boundary,
    apply_coboundary,
    boundary_matrix,
    inner_product,
    is_null_homologous,
    kernel_basis,
    rank,
    relative_boundary_matrix,
    smith_normal_form,
    solve_linear,
)
from .embedded import DualGraph, VoidData, VoidError, build_dual, max_flow_shortest_path, min_cut_via_min_cost_flow
from .flows import (
    CutResult,
    FlowNetwork,
    FlowResult,
    NetworkError,
    brute_min_combinatorial_cut,
    find_supporting_cochain,
    make_network,
    max_flow_lp,
    min_cut_lp,
    tu_vertex_integrality_check,
    verify_directed_combinatorial_cut,
    verify_flow,
    verify_gamma_cut,
)
from .ford_fulkerson import (
    AugmentingChain,
    FordFulkersonError,
    ResidualComplex,
    augment,
    find_augmenting_chain,
    half_saturated,
    is_acyclic,
    max_flow_ff,
    repair,
    residual,
)
from .generators import InstanceBundle, gen_graph, gen_hitting_set, gen_md, gen_mdw, gen_octahedron, gen_random
from .lp import LinearProgram, LpSolution, MalformedLpError, feasible_point, solve

__version__ = "0.1.0"

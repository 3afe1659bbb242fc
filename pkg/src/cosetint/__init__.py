"""Coset-intersection toolkit for finite abelian groups.

Decides whether a coset of a subgroup of G^t meets S^t for a subset S of G,
classifies (G, S) pairs as polynomial or NP-complete, and compiles explicit
reduction pipelines from graph 3-coloring for the hard cases.
"""

from .groups import (
    FiniteAbelianGroup,
    GroupElement,
    Homomorphism,
    SubgroupGens,
    smith_normal_form,
    solve_linear_congruence,
    subgroup_membership,
    kernel_of_hom,
    subgroup_intersect,
    quotient_group,
    subgroup_enumerate,
    subgroup_reduce_gens,
    subgroup_abstract,
    standard_gens,
    scaling_hom,
    hom_preimage,
)
from .model import (
    Certificate,
    ProblemInstance,
    SolveResult,
    SubsetS,
    oracle_solve,
    verify_certificate,
    witness_point,
)
from .classify import (
    IN_P,
    NP_COMPLETE,
    Classification,
    classify_affine,
    classify_homogeneous,
    dilation_core,
    find_noncoset_witness,
    is_coset,
)
from .polysolve import solve_affine_coset, solve_homogeneous_core
from .transforms import (
    Graph,
    complete_graph,
    cycle_graph,
    path_graph,
    translate_instance,
    map_instance,
    divideout_lift,
    transform_double,
    phi_fixed_subset,
    p_from_pi,
    pi_from_p,
    gadget_s01,
    gadget_coloring_full,
    kcol_from_3col,
)
from .hardness import (
    CompileError,
    ReductionPipeline,
    apply_pipeline,
    apply_steps_to_instance,
    compile_hardness,
    compile_hardness_P,
    compile_hardness_Pi,
    run_selfcheck,
    verify_trace,
)
from .formats import (
    ParseError,
    format_graph,
    format_group,
    format_instance,
    format_int_line,
    format_pipeline,
    format_subset,
    parse_graph,
    parse_group,
    parse_instance,
    parse_int_line,
    parse_pipeline,
    parse_subset,
)

__all__ = [
    "FiniteAbelianGroup",
    "GroupElement",
    "Homomorphism",
    "SubgroupGens",
    "smith_normal_form",
    "solve_linear_congruence",
    "subgroup_membership",
    "kernel_of_hom",
    "subgroup_intersect",
    "quotient_group",
    "subgroup_enumerate",
    "subgroup_reduce_gens",
    "subgroup_abstract",
    "standard_gens",
    "scaling_hom",
    "hom_preimage",
    "Certificate",
    "ProblemInstance",
    "SolveResult",
    "SubsetS",
    "oracle_solve",
    "verify_certificate",
    "witness_point",
    "IN_P",
    "NP_COMPLETE",
    "Classification",
    "classify_affine",
    "classify_homogeneous",
    "dilation_core",
    "find_noncoset_witness",
    "is_coset",
    "solve_affine_coset",
    "solve_homogeneous_core",
    "Graph",
    "complete_graph",
    "cycle_graph",
    "path_graph",
    "translate_instance",
    "map_instance",
    "divideout_lift",
    "transform_double",
    "phi_fixed_subset",
    "p_from_pi",
    "pi_from_p",
    "gadget_s01",
    "gadget_coloring_full",
    "kcol_from_3col",
    "CompileError",
    "ReductionPipeline",
    "apply_pipeline",
    "apply_steps_to_instance",
    "compile_hardness",
    "compile_hardness_P",
    "compile_hardness_Pi",
    "run_selfcheck",
    "verify_trace",
    "ParseError",
    "format_graph",
    "format_group",
    "format_instance",
    "format_int_line",
    "format_pipeline",
    "format_subset",
    "parse_graph",
    "parse_group",
    "parse_instance",
    "parse_int_line",
    "parse_pipeline",
    "parse_subset",
]

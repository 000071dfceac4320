"""Implicit equations of hypersurfaces parametrized over products of
projective spaces, via graded strands of the complex of Koszul cycles."""

from .complexes import (
    CycleBasis,
    InRegionWarning,
    LinearFormMatrix,
    ProblemInstance,
    StrandAssemblyError,
    ZComplexStrand,
    cycle_basis,
    homology_dim,
    koszul_differential_strand,
    representation_matrix,
    z_complex_strand,
)
from .implicitize import (
    ImplicitResult,
    MinorsRankError,
    PipelineError,
    RankDropReport,
    det_linear_matrix,
    expected_degree_p1p1,
    generic_rank,
    minors_gcd,
    rank_drop_check,
    run_pipeline,
    verify_implicit,
)
from .linalg import QMatrix, Rational, det_rational, nullspace_basis, rank, solve_in_span
from .multipoly import (
    MultiPoly,
    NotMultihomogeneousError,
    PolyParseError,
    PolyRing,
    RingMismatchError,
    divides,
    eval_at,
    exact_div,
    gcd_poly,
    monomial_str,
    multidegree_of,
    normalize_poly,
    parameter_ring,
    parse_poly,
    substitute_targets,
    target_ring,
    try_exact_div,
)
from .problem import ProblemFile, ProblemValidationError, hypersurface_check, load_problem
from .regions import (
    BlockStructure,
    OrthantRegion,
    RegionUnion,
    ascii_region_plot,
    complement_corners,
    corners_closed_form_2blocks,
    describe_region,
    q_alpha,
    region_RB,
    region_RB_via_sigma,
    sigma_B,
    strand_basis,
    strand_dim,
    suggest_nu,
    supp_local_cohomology,
    svg_region_plot,
)

__version__ = "0.1.0"

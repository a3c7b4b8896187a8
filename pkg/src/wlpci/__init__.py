"""Exact verification toolkit for artinian complete intersections in four
variables: Hilbert functions, multiplication-by-linear-form ranks over
GF(p), h-vector constraint enumeration, linkage arithmetic, and
syzygy-bundle stability bookkeeping."""

from __future__ import annotations

__version__ = "0.1.0"

from .exactcore import (
    DEFAULT_PRIME,
    Form,
    GradedMatrix,
    derive_seed,
    kernel_name,
    monomial_basis,
    parse_forms,
    random_form,
    rank,
    read_forms,
    ring_dim,
    span_dim,
    span_matrix,
)
from .hilbert import (
    HilbertFn,
    ci_hilbert,
    comb,
    curve_ideal_hilbert,
    is_o_sequence,
    macaulay_growth,
)
from .hvlab import (
    BettiTable2,
    CandidateTrace,
    HVector,
    apply_socle_lemma,
    davis_split,
    enumerate_candidates,
    fail_by_one_hvector,
    generic_hvector,
    is_decreasing_type,
    kernel_start,
    min_betti_from_h,
    plane_hvectors,
    rule_out,
    seesaw_complete,
)
from .liaison import (
    LinkPlan,
    LinkStep,
    dgo_link,
    hvector_of_betti,
    link_plan,
    mapping_cone_link,
)
from .stability import (
    CONE_CASE_1,
    STABLE_CASE_2,
    ExceptionItem,
    StabilityReport,
    crosscheck_with_wlp,
    exception_report,
    injectivity_lambda,
)
from .wlp import (
    FAILS_BY_MORE_EVIDENCE,
    FAILS_BY_ONE_EVIDENCE,
    INCONCLUSIVE,
    WLP_CERTIFIED,
    CIInstance,
    RankRow,
    WlpReport,
    component_dim,
    duality_check,
    instance_from_forms,
    jacobian_ideal,
    mult_rank,
    random_ci,
    section_hvector,
    wlp_report,
)

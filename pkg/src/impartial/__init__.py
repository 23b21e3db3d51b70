"""Deterministic impartial selection under priors on nomination graphs."""

from .bounds import (
    BinomialSpec,
    BoundReport,
    ComfortZone,
    PreconditionError,
    binom_pmf_log,
    binom_sf,
    chernoff_bounds,
    comfort_zone,
    event_d_lower_bound,
    hazard_ratio,
    hoeffding_bound,
    inverse_chernoff,
    lb_thresholds,
    reverse_chernoff,
    two_node_analysis,
    verify_section5_lemmas,
    verify_tails,
    verify_technical_lemma,
    verify_zone_lemmas,
)
from .experiments import (
    MCEstimate,
    RunConfig,
    SweepRow,
    mc_additive,
    scenario_duplication,
    scenario_example1,
    sweep,
)
from .impartiality import CheckReport, Counterexample, check_exhaustive, check_random, check_structure
from .mechanisms import (
    ApprovalVoting,
    AVDBeats,
    AVDTie,
    ConstantMechanism,
    SelectionOutcome,
    default_node,
    select,
    select_lazy,
)
from .priors import (
    BlockCorrelated,
    Duplicated,
    EdgeMatrix,
    LazySample,
    Popularity,
    SubsetTable,
    Uniform,
    duplicate,
    expected_in_degrees,
    reveal_edge,
    sample_lazy,
    sample_profile,
)
from .profile import (
    NominationProfile,
    additive_gap,
    beats,
    in_degree,
    max_in_degree,
    new_profile,
)

__version__ = "0.1.0"

"""Exact verification of Euler-class crossed homomorphisms for PL circle actions."""

from .cohomology import (
    Cochain,
    H1Class,
    H1Lattice,
    NotACocycle,
    QModule,
    coboundary_witness,
    crossed_hom_violation,
    delta,
    h1_classify,
    is_coboundary,
    is_crossed_hom,
)
from .pipeline import (
    ActionContext,
    GapNotIntegral,
    LiftedKAction,
    VerificationReport,
    compare_lift_offsets,
    verify_scenario,
)
from .plmaps import (
    CIRCLE_IDENTITY,
    IDENTITY,
    BadDomain,
    CirclePL,
    DiscontinuousWrap,
    InvalidPLMap,
    LiftPL,
    NonMonotone,
    compose_all,
    lift_from_breakpoints,
    rotation,
    translation,
)
from .rotation import (
    ExactTau,
    IndeterminateTau,
    TauEnclosure,
    euler_chi,
    euler_chi_int,
    exact_tau,
    tau,
    tau_floor,
    tau_floor_strict,
)
from .scenario import (
    ActionScenario,
    ParseError,
    ValidationError,
    VerifyParams,
    emit_scenario,
    load_scenario,
    parse_scenario,
    scenario_digest,
    validate_scenario,
)
from .words import (
    EPSILON,
    QuotientMap,
    SchreierData,
    UnknownGenerator,
    Word,
    evaluate_circle,
    evaluate_lift,
    format_word,
    parse_word,
    permutation_from_cycles,
)

__version__ = "0.1.0"

__all__ = [
    "ActionContext",
    "ActionScenario",
    "BadDomain",
    "CIRCLE_IDENTITY",
    "CirclePL",
    "Cochain",
    "DiscontinuousWrap",
    "EPSILON",
    "ExactTau",
    "GapNotIntegral",
    "H1Class",
    "H1Lattice",
    "IDENTITY",
    "IndeterminateTau",
    "InvalidPLMap",
    "LiftPL",
    "LiftedKAction",
    "NonMonotone",
    "NotACocycle",
    "ParseError",
    "QModule",
    "QuotientMap",
    "SchreierData",
    "TauEnclosure",
    "UnknownGenerator",
    "ValidationError",
    "VerificationReport",
    "VerifyParams",
    "Word",
    "coboundary_witness",
    "compare_lift_offsets",
    "compose_all",
    "crossed_hom_violation",
    "delta",
    "emit_scenario",
    "euler_chi",
    "euler_chi_int",
    "evaluate_circle",
    "evaluate_lift",
    "exact_tau",
    "format_word",
    "h1_classify",
    "is_coboundary",
    "is_crossed_hom",
    "lift_from_breakpoints",
    "load_scenario",
    "parse_scenario",
    "parse_word",
    "permutation_from_cycles",
    "rotation",
    "scenario_digest",
    "tau",
    "tau_floor",
    "tau_floor_strict",
    "translation",
    "validate_scenario",
    "verify_scenario",
]

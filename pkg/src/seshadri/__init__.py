"""Exact enumeration of possible maximal Seshadri constant values on
surfaces of degree d, driven by the Pell equation q^2 - d*p^2 = 1."""

from .arith import Rat, is_square, isqrt, rat_cmp_sqrt
from .pell import (
    ContinuedFractionExpansion,
    PellSolution,
    cf_sqrt,
    conjecture_bound,
    fundamental_solution,
    nth_solution,
)
from .excset import (
    ALL_FILTER_IDS,
    CandidatePair,
    DegreeReport,
    FilterTrace,
    PipelineBudgetError,
    PipelineConfig,
    StageRecord,
    enumerate_pairs,
    exc_contains,
    exc_set,
    pair_count,
    run_pipeline,
    smooth_values,
)
from .analysis import (
    DegreeClass,
    VerificationReport,
    classify_d,
    conjecture_status,
    verify_main_bqsq,
    verify_p0_1,
    verify_p0_2,
)

__all__ = [
    "Rat",
    "is_square",
    "isqrt",
    "rat_cmp_sqrt",
    "ContinuedFractionExpansion",
    "PellSolution",
    "cf_sqrt",
    "conjecture_bound",
    "fundamental_solution",
    "nth_solution",
    "ALL_FILTER_IDS",
    "CandidatePair",
    "DegreeReport",
    "FilterTrace",
    "PipelineBudgetError",
    "PipelineConfig",
    "StageRecord",
    "enumerate_pairs",
    "exc_contains",
    "exc_set",
    "pair_count",
    "run_pipeline",
    "smooth_values",
    "DegreeClass",
    "VerificationReport",
    "classify_d",
    "conjecture_status",
    "verify_main_bqsq",
    "verify_p0_1",
    "verify_p0_2",
]

"""Numerical toolkit for pluricomplex Green functions, invariant metrics,
and Teichmüller distance on model domains, with verification suites that
compare estimators against closed-form oracles."""

from .discsearch import (
    AnalyticDisc,
    DiscSearchResult,
    SearchConfig,
    evaluate_upsilon,
    find_preimages,
    minimize_disc_functional,
)
from .domains import (
    ModelDomain,
    green_ball,
    green_polydisc,
    kobayashi_distance_ball,
    unit_ball,
    unit_disc,
    unit_polydisc,
)
from .extremality import (
    BeltramiField,
    ExtremalityReport,
    QuadDiffBasis,
    hk_functional,
    is_extremal,
    theorem3_certificate_check,
)
from .hyperbolic import (
    NEG_INF,
    DomainViolation,
    disc_distance,
    eq2_transform,
    green_disc,
    green_halfplane,
)
from .metrics import (
    AzukawaResult,
    KobayashiResult,
    LimitConfig,
    azukawa,
    kobayashi_royden,
    theorem2_check,
)
from .torus import (
    DistanceReport,
    canonical_projection,
    extremal_beltrami,
    lemma2_check,
    teich_distance,
)
from .verify import SUITES, run_suite

__all__ = [
    "AnalyticDisc",
    "AzukawaResult",
    "BeltramiField",
    "DiscSearchResult",
    "DistanceReport",
    "DomainViolation",
    "ExtremalityReport",
    "KobayashiResult",
    "LimitConfig",
    "ModelDomain",
    "NEG_INF",
    "QuadDiffBasis",
    "SUITES",
    "SearchConfig",
    "azukawa",
    "canonical_projection",
    "disc_distance",
    "eq2_transform",
    "evaluate_upsilon",
    "extremal_beltrami",
    "find_preimages",
    "green_ball",
    "green_disc",
    "green_halfplane",
    "green_polydisc",
    "hk_functional",
    "is_extremal",
    "kobayashi_distance_ball",
    "kobayashi_royden",
    "lemma2_check",
    "minimize_disc_functional",
    "run_suite",
    "teich_distance",
    "theorem2_check",
    "theorem3_certificate_check",
    "unit_ball",
    "unit_disc",
    "unit_polydisc",
]

__version__ = "0.1.0"

"""Structural verification: variations, Noether symmetries, morphisms and check suites."""

from .models import (
    Assertion,
    MorphismReport,
    NoetherCandidate,
    ReductionResult,
    SystemMorphism,
    VariationSpace,
    Verdict,
)
from .noether import is_symmetry, momentum, momentum_drift, noether_check, noether_defect
from .reduction import (
    check_morphism,
    identity_morphism,
    morphism_reduction_check,
    pullback_defect,
    time_projection_morphism,
)
from .suites import SUITE_NAMES, SUITES, SuiteOptions, run_suite
from .variational import action_criticality, max_action_criticality, variation_space

__all__ = [
    # Models
    "Assertion",
    "MorphismReport",
    "NoetherCandidate",
    "ReductionResult",
    "SystemMorphism",
    "VariationSpace",
    "Verdict",
    # Variational principle
    "variation_space",
    "action_criticality",
    "max_action_criticality",
    # Noether
    "noether_check",
    "noether_defect",
    "is_symmetry",
    "momentum",
    "momentum_drift",
    # Morphisms
    "pullback_defect",
    "check_morphism",
    "morphism_reduction_check",
    "time_projection_morphism",
    "identity_morphism",
    # Suites
    "SuiteOptions",
    "SUITES",
    "SUITE_NAMES",
    "run_suite",
]

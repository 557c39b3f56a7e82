"""Entropy, mass growth and Bridgeland-metric dynamics of endofunctors of D^b(F)."""
from .catalog import ClosedForm, closed_form_displacement, closed_form_mass_growth, consistency_with_bounds
from .dynamics import (
    AutoEquivalence,
    IsometryReport,
    NotApplicableError,
    act,
    conjugation_invariance_check,
    estimate_displacement,
    exact_report,
    mass_growth_estimate,
    mass_growth_exact,
    random_autoequivalence,
    verify_free_proper,
    verify_metric_bounds,
    verify_quotient_bounds,
)
from .laurent import LaurentMatrix, LaurentPoly, degree_range, is_nilpotent, mat_pow, monomial_matrix
from .perron import (
    NilpotentError,
    asymptotic_slopes,
    check_pl_bounds,
    degree_slopes,
    entropy_at,
    entropy_curve,
    log_spectral_radius,
    spectral_radius,
)
from .semisimple import (
    GradedObject,
    QuotientPoint,
    StabilityCondition,
    bridgeland_distance,
    c_action,
    mass,
    mass_with_parameter,
    quotient_distance,
)

__all__ = [name for name in dir() if not name.startswith("_")]

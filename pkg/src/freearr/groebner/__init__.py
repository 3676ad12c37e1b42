"""Groebner machinery over fields and over the integers."""

from .field import (
    IdealPresentation,
    buchberger_field,
    contains,
    groebner_dicts,
    leading_monomials,
    normal_form,
)
from .integer import (
    StrongGroebnerBasis,
    ZeroDivisorResult,
    ideal_intersection_with_principal,
    is_zero_divisor_prime,
    non_lucky_primes,
    strong_groebner_Z,
)
from .resolution import (
    BettiTable,
    Resolution,
    SyzygyModule,
    betti_numerator,
    consecutive_cancellation_reachable,
    hdim,
    hilbert_numerator,
    minimal_free_resolution,
    minimal_generators,
    minimal_syzygies,
    resolve,
    syzygies,
)

__all__ = [
    "IdealPresentation", "buchberger_field", "contains", "groebner_dicts",
    "leading_monomials", "normal_form", "StrongGroebnerBasis", "ZeroDivisorResult",
    "ideal_intersection_with_principal", "is_zero_divisor_prime", "non_lucky_primes",
    "strong_groebner_Z", "BettiTable", "Resolution", "SyzygyModule", "betti_numerator",
    "consecutive_cancellation_reachable", "hdim", "hilbert_numerator",
    "minimal_free_resolution", "minimal_generators", "minimal_syzygies", "resolve",
    "syzygies",
]

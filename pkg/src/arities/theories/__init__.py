"""Nerves, Segal conditions and generic/free factorisations for Δ, Δ_sym and Θ_com."""

from .commutative import (
    FinCommMonoid,
    NMatrix,
    all_comm_monoids,
    com_factorisation_isomorphism,
    coproduct_check,
    factor_theta_com,
    gamma_nerve,
    gamma_segal_check,
    is_free,
    is_gamma,
    is_generic_com,
    monoid_round_trip,
    recover_monoid,
    theta_com_compose,
)
from .nerves import (
    FinCategory,
    FinGroupoid,
    nerve_cat,
    reconstruct_cat,
    reconstruct_groupoid,
    segal_check,
    sym_nerve,
    sym_segal_check,
)
from .operators import SimplicialOperator, factor_delta, factor_delta_sym, is_delta0
from .presheaf import TruncPresheaf

__all__ = [
    "FinCategory",
    "FinCommMonoid",
    "FinGroupoid",
    "NMatrix",
    "SimplicialOperator",
    "TruncPresheaf",
    "all_comm_monoids",
    "com_factorisation_isomorphism",
    "coproduct_check",
    "factor_delta",
    "factor_delta_sym",
    "factor_theta_com",
    "gamma_nerve",
    "gamma_segal_check",
    "is_delta0",
    "is_free",
    "is_gamma",
    "is_generic_com",
    "monoid_round_trip",
    "nerve_cat",
    "reconstruct_cat",
    "reconstruct_groupoid",
    "recover_monoid",
    "segal_check",
    "sym_nerve",
    "sym_segal_check",
    "theta_com_compose",
]

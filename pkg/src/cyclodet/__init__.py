"""Exact Jacobi-sum and Gauss-sum determinants over prime fields."""

from cyclodet.errors import (
    CyclodetError,
    IntegrityError,
    NonRationalError,
    ParameterError,
    PrecisionError,
)
from cyclodet.fp_base import (
    DivisorPair,
    ExtFieldContext,
    PrimeContext,
    coset_reps,
    make_ext_context,
    make_prime_context,
    trace,
    unit_subgroup,
    valid_pairs,
)
from cyclodet.cyclo_ring import CycInt, as_integer, cyclotomic_poly, embed, exact_div, galois_apply, zeta_pow

__version__ = "0.1.0"

__all__ = [
    "CycInt",
    "CyclodetError",
    "DivisorPair",
    "ExtFieldContext",
    "IntegrityError",
    "NonRationalError",
    "ParameterError",
    "PrecisionError",
    "PrimeContext",
    "as_integer",
    "coset_reps",
    "cyclotomic_poly",
    "embed",
    "exact_div",
    "galois_apply",
    "make_ext_context",
    "make_prime_context",
    "trace",
    "unit_subgroup",
    "valid_pairs",
    "zeta_pow",
]

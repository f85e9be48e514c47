"""Permutation-invariant quantum codes: exact construction and verification."""

from .exact_arith import Radical, RadicalSum, binom_gen, binom_int, sqrt_canonical
from .kl_verifier import verify_deletion, verify_pauli
from .picode import GmdParams, PICode, construct_gmdelta, construct_pr_code

__version__ = "0.1.0"

__all__ = [
    "GmdParams",
    "PICode",
    "Radical",
    "RadicalSum",
    "binom_gen",
    "binom_int",
    "construct_gmdelta",
    "construct_pr_code",
    "sqrt_canonical",
    "verify_deletion",
    "verify_pauli",
]

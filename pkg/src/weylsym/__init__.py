"""Exact arithmetic for symmetric differential operators and the discriminant."""

__version__ = "0.1.0"

from .errors import (ContractViolation, IdentityViolation, NonMonicDenominator, NonPolynomialCoefficient,
                     NotAntisymmetric, NotDivisible, NotSymmetric, NotVectorField, UnknownSuite,
                     VerificationFailed)
from .poly import SIGMA, ZETA, Z, Poly, ZetaPoly, exact_div, residue_at_infinity, vandermonde
from .weyl import WeylElement, apply, classify, commutator, weyl_mul
from .symfun import m_poly, newton_in_sigma, realize, to_sigma
from .discops import (annihilator_generators, decompose_vector_field, dual_pairing, phi,
                      sigma_kernel_dimension, u_pq)
from .w2bridge import (TwistedElement, W2Element, bernstein_witness, delta_factor, lemma_14_8_check,
                       pullback, pushforward, twisted_apply)

__all__ = [
    "ContractViolation",
    "IdentityViolation",
    "NonMonicDenominator",
    "NonPolynomialCoefficient",
    "NotAntisymmetric",
    "NotDivisible",
    "NotSymmetric",
    "NotVectorField",
    "UnknownSuite",
    "VerificationFailed",
    "SIGMA",
    "ZETA",
    "Z",
    "Poly",
    "ZetaPoly",
    "exact_div",
    "residue_at_infinity",
    "vandermonde",
    "WeylElement",
    "apply",
    "classify",
    "commutator",
    "weyl_mul",
    "m_poly",
    "newton_in_sigma",
    "realize",
    "to_sigma",
    "annihilator_generators",
    "decompose_vector_field",
    "dual_pairing",
    "phi",
    "sigma_kernel_dimension",
    "u_pq",
    "TwistedElement",
    "W2Element",
    "bernstein_witness",
    "delta_factor",
    "lemma_14_8_check",
    "pullback",
    "pushforward",
    "twisted_apply",
]

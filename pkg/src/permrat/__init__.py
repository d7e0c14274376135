"""Permutation rational functions over prime fields from elliptic-curve
isogenies, and a factoring-based trapdoor permutation built from them.

The library generates degree-ell rational functions u(x) = num/den over F_p
that permute the projective line, by constructing ell-isogenies whose
kernels contain no nontrivial points over the quadratic extension.  The
trapdoor layer glues two such functions over secret primes p and q into a
permutation of Z/(pq) that is easy to evaluate publicly and easy to invert
only with the factorization.

EXPERIMENTAL - NOT FOR PRODUCTION cryptographic use.
"""

from .ec import Curve, Point, curve_from_j, j_invariant
from .field import FieldContext, FieldElement, is_probable_prime, make_rng
from .generator import (
    GenRequest,
    GenStats,
    PermutationFunction,
    Provenance,
    Unsatisfiable,
    VerifyResult,
    generate,
    kernel_definition_degree,
    verify_exhaustive,
    verify_fast,
)
from .isogeny import IsogenyData, isogeny_from_kernel, velu_oracle, y_map
from .kernelsearch import KernelRecord, algorithm1
from .modpoly import ModularPolynomial, load as load_modular_polynomial
from .poly import Polynomial, QuotientRing, RationalMap
from .trapdoor import (
    FactorFound,
    TrapdoorPrivateKey,
    TrapdoorPublicKey,
    eval_public,
    invert,
    keygen,
    keygen_with_primes,
)

__version__ = "0.1.0"

__all__ = [
    "Curve",
    "FactorFound",
    "FieldContext",
    "FieldElement",
    "GenRequest",
    "GenStats",
    "IsogenyData",
    "KernelRecord",
    "ModularPolynomial",
    "PermutationFunction",
    "Point",
    "Polynomial",
    "Provenance",
    "QuotientRing",
    "RationalMap",
    "TrapdoorPrivateKey",
    "TrapdoorPublicKey",
    "Unsatisfiable",
    "VerifyResult",
    "algorithm1",
    "curve_from_j",
    "eval_public",
    "generate",
    "invert",
    "is_probable_prime",
    "isogeny_from_kernel",
    "j_invariant",
    "kernel_definition_degree",
    "keygen",
    "keygen_with_primes",
    "load_modular_polynomial",
    "make_rng",
    "velu_oracle",
    "verify_exhaustive",
    "verify_fast",
    "y_map",
]

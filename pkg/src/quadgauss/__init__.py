"""Exact and numeric evaluation of normalized quadratic Gauss sums.

``phi(a, b) = a**-0.5 * sum(exp(pi*i*n*n*b/a) for n in range(a))``
"""

from quadgauss.exact_value import ZERO, ComplexApprox, ExactGaussValue
from quadgauss.evaluator import (
    DerivationTrace,
    GaussSumQuery,
    eval_lemma1,
    eval_phi,
    eval_prime_power_odd,
    eval_prime_power_two,
    induction_check,
    reflection_product,
    verify_ls,
)
from quadgauss.modular import (
    BoundExceededError,
    Factorization,
    SqrtCountQuery,
    count_sqrt_closed,
    factorize,
    legendre,
    sylvester_count,
)
from quadgauss.oracle import (
    VerificationReport,
    count_sqrt_brute,
    fourier_check,
    phi_numeric,
    sylvester_brute,
)

__all__ = [
    "ZERO",
    "BoundExceededError",
    "ComplexApprox",
    "DerivationTrace",
    "ExactGaussValue",
    "Factorization",
    "GaussSumQuery",
    "SqrtCountQuery",
    "VerificationReport",
    "count_sqrt_brute",
    "count_sqrt_closed",
    "eval_lemma1",
    "eval_phi",
    "eval_prime_power_odd",
    "eval_prime_power_two",
    "factorize",
    "fourier_check",
    "induction_check",
    "legendre",
    "phi_numeric",
    "reflection_product",
    "sylvester_brute",
    "sylvester_count",
    "verify_ls",
]

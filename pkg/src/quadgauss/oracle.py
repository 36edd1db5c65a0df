"""Brute-force ground truth for the closed forms.

Nothing here uses a closed-form evaluation: sums are summed, counts are counted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from quadgauss.exact_value import EPS, ComplexApprox, ExactGaussValue
from quadgauss.modular import DEFAULT_FACTOR_BOUND, BoundExceededError, is_prime

DEFAULT_SUM_BOUND = 10**6
DEFAULT_COUNT_BOUND = DEFAULT_FACTOR_BOUND
DEFAULT_TOL = 1e-6

_CHUNK = 1 << 20
# Per-term error of cos/sin at an angle computed as r * (pi/a), in units of EPS:
# angle error <= 2*pi*EPS, libm/numpy cos and sin add at most 4 ulp.
_TERM_ERR = 16.0
# numpy's pairwise summation runs 128-element leaves linearly.
_PAIRWISE_LEAF = 128


@dataclass
class StepResult:
    label: str
    lhs: ComplexApprox
    rhs: ComplexApprox
    difference: float
    passed: bool
    exact: bool = False

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "lhs": [self.lhs.re, self.lhs.im, self.lhs.err],
            "rhs": [self.rhs.re, self.rhs.im, self.rhs.err],
            "difference": self.difference,
            "exact": self.exact,
            "passed": self.passed,
        }


@dataclass
class VerificationReport:
    query: str
    lhs: ComplexApprox
    rhs: ComplexApprox
    difference: float
    tol: float
    passed: bool
    exact: Optional[ExactGaussValue] = None
    failed_step: Optional[str] = None
    steps: list[StepResult] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "query": self.query,
            "exact": self.exact.to_json() if self.exact is not None else None,
            "lhs": [self.lhs.re, self.lhs.im, self.lhs.err],
            "rhs": [self.rhs.re, self.rhs.im, self.rhs.err],
            "difference": self.difference,
            "tol": self.tol,
            "passed": self.passed,
            "failed_step": self.failed_step,
            "steps": [s.to_json() for s in self.steps],
        }


def compare(label: str, lhs: ComplexApprox, rhs: ComplexApprox, tol: float) -> StepResult:
    d = lhs.distance(rhs)
    return StepResult(label, lhs, rhs, d, d <= tol + lhs.err + rhs.err)


def _unit_circle_sum(num: np.ndarray, den: int, weights: Optional[np.ndarray] = None):
    """Sum of ``w * exp(pi*i*num/den)`` over one chunk, as (re, im, sum |w|)."""
    theta = num.astype(np.float64) * (math.pi / den)
    c, s = np.cos(theta), np.sin(theta)
    if weights is None:
        return float(np.sum(c)), float(np.sum(s)), float(len(num))
    w = weights.astype(np.float64)
    return float(np.dot(w, c)), float(np.dot(w, s)), float(np.sum(w))


def _summation_err(total_weight: float, count: int) -> float:
    depth = math.ceil(math.log2(max(count, 2))) + _PAIRWISE_LEAF
    return EPS * total_weight * (_TERM_ERR + math.sqrt(2) * depth)


def phi_numeric(a: int, b: int, bound: int = DEFAULT_SUM_BOUND) -> ComplexApprox:
    """``a**-0.5 * sum(exp(pi*i*n*n*b/a) for n in range(a))`` with an error bound.

    ``n*n*b`` is reduced modulo ``2a`` in exact integer arithmetic before it
    becomes an angle, so the angle never exceeds ``2*pi``.
    """
    if a < 1:
        raise ValueError(f"modulus must be positive, got {a}")
    if a > bound:
        raise BoundExceededError(f"modulus {a} exceeds summation bound {bound}")
    return _phi_numeric(a, b % (2 * a))


@lru_cache(maxsize=8192)
def _phi_numeric(a: int, b: int) -> ComplexApprox:
    two_a = 2 * a
    re_parts, im_parts = [], []
    for start in range(0, a, _CHUNK):
        n = np.arange(start, min(a, start + _CHUNK), dtype=np.int64)
        r = (n * n) % two_a
        r = (r * b) % two_a
        re, im, _ = _unit_circle_sum(r, a)
        re_parts.append(re)
        im_parts.append(im)
    re, im = math.fsum(re_parts), math.fsum(im_parts)
    scale = math.sqrt(a)
    err = _summation_err(a, a) + 2 * EPS * math.hypot(re, im) * math.ceil(a / _CHUNK)
    re, im = re / scale, im / scale
    return ComplexApprox(re, im, err / scale * (1 + 4 * EPS) + 4 * EPS * math.hypot(re, im))


def count_sqrt_brute(t: int, m: int, bound: int = DEFAULT_COUNT_BOUND) -> int:
    """Exhaustive count of ``x`` in ``0..m-1`` with ``x*x == t (mod m)``."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if m > bound:
        raise BoundExceededError(f"modulus {m} exceeds counting bound {bound}")
    t %= m
    return sum(1 for x in range(m) if x * x % m == t)


def square_count_table(m: int, bound: int = DEFAULT_COUNT_BOUND) -> np.ndarray:
    """``table[t]`` = number of ``x`` mod ``m`` with ``x*x == t``, for every ``t`` at once."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if m > bound:
        raise BoundExceededError(f"modulus {m} exceeds counting bound {bound}")
    x = np.arange(m, dtype=np.int64)
    return np.bincount((x * x) % m, minlength=m)


def fourier_sum(p: int, k: int, l: int, bound: int = DEFAULT_COUNT_BOUND) -> ComplexApprox:
    """``p**(-k/2) * sum_n #{x: x*x == n} * exp(2*pi*i*n*l/p**k)`` with counted roots."""
    m = p**k
    counts = square_count_table(m, bound)
    n = np.arange(m, dtype=np.int64)
    num = 2 * ((n * (l % m)) % m)
    re, im, weight = _unit_circle_sum(num, m, counts)
    scale = math.sqrt(m)
    err = _summation_err(weight, m) + 2 * EPS * math.hypot(re, im)
    re, im = re / scale, im / scale
    return ComplexApprox(re, im, err / scale * (1 + 4 * EPS) + 4 * EPS * math.hypot(re, im))


def fourier_check(
    p: int, k: int, l: int, tol: float = DEFAULT_TOL, bound: int = DEFAULT_COUNT_BOUND
) -> VerificationReport:
    """Compare the square-count expansion of ``phi(p**k, 2l)`` with direct summation
    and with the closed form."""
    from quadgauss.evaluator import eval_phi

    if not is_prime(p) or k < 1:
        raise ValueError(f"need a prime power, got p={p}, k={k}")
    if l % p == 0:
        raise ValueError(f"l={l} must be prime to p={p}")
    m = p**k
    fourier = fourier_sum(p, k, l, bound)
    direct = phi_numeric(m, 2 * l, bound=max(bound, m))
    exact, _ = eval_phi(m, 2 * l)
    steps = [
        compare("fourier-vs-direct", fourier, direct, tol),
        compare("fourier-vs-closed-form", fourier, exact.to_complex(), tol),
    ]
    failed = next((s.label for s in steps if not s.passed), None)
    return VerificationReport(
        query=f"fourier({p}^{k}, l={l})",
        lhs=fourier,
        rhs=direct,
        difference=steps[0].difference,
        tol=tol,
        passed=failed is None,
        exact=exact,
        failed_step=failed,
        steps=steps,
    )


def sylvester_brute(a: int, b: int, bound: int = DEFAULT_SUM_BOUND * 100) -> int:
    """Count ``(s, t)`` with ``0 <= s < b``, ``0 <= t < a`` and ``a*s + b*t > a*b``."""
    if a < 1 or b < 1 or a % 2 == 0 or b % 2 == 0 or math.gcd(a, b) != 1:
        raise ValueError(f"need coprime odd positive a, b; got {a}, {b}")
    if a * b > bound:
        raise BoundExceededError(f"grid {a}x{b} exceeds bound {bound}")
    grid = np.add.outer(a * np.arange(b, dtype=np.int64), b * np.arange(a, dtype=np.int64))
    return int(np.count_nonzero(grid > a * b))

"""Factorization, Legendre symbols and square-root counting modulo prime powers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

DEFAULT_FACTOR_BOUND = 2**31


class BoundExceededError(ValueError):
    """An input is larger than the configured computation bound."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, k in self.factors:
            if p <= last or k < 1 or not is_prime(p):
                raise ValueError(f"malformed factorization {self.factors}")
            last = p
            prod *= p**k
        if prod != self.value:
            raise ValueError(f"factors multiply to {prod}, not {self.value}")

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def prime_powers(self) -> list[int]:
        return [p**k for p, k in self.factors]


@lru_cache(maxsize=65536)
def _trial_factor(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> Factorization:
    """Trial-division factorization of ``1 <= n <= bound``."""
    if n < 1:
        raise ValueError(f"can only factor positive integers, got {n}")
    if n > bound:
        raise BoundExceededError(f"{n} exceeds factorization bound {bound}")
    return _factorization(n)


@lru_cache(maxsize=65536)
def _factorization(n: int) -> Factorization:
    return Factorization(n, _trial_factor(n))


def prime_power(m: int) -> Optional[tuple[int, int]]:
    """Return ``(p, k)`` when ``m == p**k`` with ``k >= 1``, else None."""
    if m < 2:
        return None
    f = _trial_factor(m)
    return f[0] if len(f) == 1 else None


def valuation(n: int, p: int) -> int:
    """Exponent of ``p`` in ``n``; ``n`` must be nonzero."""
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def legendre(k: int, p: int) -> int:
    """Legendre symbol ``(k/p)`` by Euler's criterion."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"Legendre symbol needs an odd prime, got {p}")
    r = pow(k % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@dataclass(frozen=True)
class SqrtCountQuery:
    """Count ``x`` mod ``prime**exponent`` with ``x*x == target``.

    For ``target != 0`` the target is split as ``unit * prime**power`` with the
    unit prime to ``prime``; both are None for a zero target.
    """

    target: int
    prime: int
    exponent: int
    unit: Optional[int] = None
    power: Optional[int] = None

    @classmethod
    def of(cls, target: int, prime: int, exponent: int) -> SqrtCountQuery:
        if exponent < 1:
            raise ValueError(f"exponent must be >= 1, got {exponent}")
        if not is_prime(prime):
            raise ValueError(f"{prime} is not prime")
        t = target % prime**exponent
        if t == 0:
            return cls(0, prime, exponent)
        i = valuation(t, prime)
        return cls(t, prime, exponent, t // prime**i, i)

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent

    @property
    def is_zero(self) -> bool:
        return self.target == 0


def _count_unit_mod_2(k: int, j: int) -> int:
    # solutions of x^2 = k (k odd) modulo 2^j
    if j == 1:
        return 1
    if j == 2:
        return 2 if k % 4 == 1 else 0
    return 4 if k % 8 == 1 else 0


def count_sqrt_closed(q: SqrtCountQuery) -> int:
    """Closed-form count of square roots of ``q.target`` modulo ``p**j``."""
    p, j = q.prime, q.exponent
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if q.is_zero:
        return p ** (j // 2)
    i, k = q.power, q.unit
    assert i is not None and k is not None and i < j
    if i % 2:
        return 0
    if p == 2:
        return 2 ** (i // 2) * _count_unit_mod_2(k, j - i)
    return p ** (i // 2) * (1 + legendre(k, p))


def sylvester_count(a: int, b: int) -> int:
    """Number of grid points ``(s, t)`` with ``a*s + b*t > a*b``: ``(a-1)(b-1)/2``."""
    if a < 1 or b < 1 or a % 2 == 0 or b % 2 == 0:
        raise ValueError(f"need odd positive a, b; got {a}, {b}")
    if math.gcd(a, b) != 1:
        raise ValueError(f"gcd({a}, {b}) != 1")
    return (a - 1) * (b - 1) // 2

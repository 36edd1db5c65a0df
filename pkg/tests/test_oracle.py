import cmath
import math
import random

import pytest

from quadgauss.exact_value import ComplexApprox
from quadgauss.modular import BoundExceededError
from quadgauss.oracle import (
    count_sqrt_brute,
    fourier_check,
    fourier_sum,
    phi_numeric,
    square_count_table,
    sylvester_brute,
)


def phi_cmath(a, b):
    """Naive summation without angle reduction; fine for small moduli."""
    return sum(cmath.exp(1j * math.pi * n * n * b / a) for n in range(a)) / math.sqrt(a)


def near(z: ComplexApprox, w: complex, tol=1e-12):
    return abs(z.value - w) <= tol + z.err


class TestPhiNumeric:
    def test_examples(self):
        for b in (-7, 0, 3, 10**9):
            z = phi_numeric(1, b)
            assert (z.re, z.im) == (1.0, 0.0)
        assert near(phi_numeric(4, 2), 1 + 1j)
        assert near(phi_numeric(5, 2), 1)

    @pytest.mark.parametrize("a", [1, 2, 3, 7, 12, 25, 64])
    def test_matches_naive_sum(self, a):
        for b in range(-2 * a, 2 * a + 1):
            assert near(phi_numeric(a, b), phi_cmath(a, b), 1e-11)

    def test_error_bound_is_small(self):
        assert phi_numeric(10**6, 2).err < 1e-9

    def test_large_numerators_keep_precision(self):
        # without exact reduction n*n*b would lose all bits at this size
        z = phi_numeric(101, 2 + 202 * 10**15)
        assert near(z, phi_numeric(101, 2).value, 1e-12)

    def test_bound(self):
        with pytest.raises(BoundExceededError):
            phi_numeric(10**6 + 1, 2)
        assert phi_numeric(10, 2, bound=10).err > 0
        with pytest.raises(ValueError):
            phi_numeric(0, 1)

    def test_periodicity(self):
        rng = random.Random(3)
        for a in range(1, 501):
            for b in [rng.randint(-4 * a, 4 * a) for _ in range(4)]:
                x, y = phi_numeric(a, b), phi_numeric(a, b % (2 * a))
                assert x.distance(y) <= 2 * max(x.err, y.err)

    def test_conjugation(self):
        rng = random.Random(4)
        for a in range(1, 501):
            for b in [rng.randint(-4 * a, 4 * a) for _ in range(4)]:
                x, y = phi_numeric(a, -b), phi_numeric(a, b).conj()
                # mirrored angles are rounded independently, so allow the full bound
                assert x.distance(y) <= x.err + y.err


class TestCounting:
    def test_examples(self):
        assert count_sqrt_brute(0, 8) == 2
        assert count_sqrt_brute(1, 8) == 4
        assert count_sqrt_brute(2, 4) == 0
        assert count_sqrt_brute(5, 12) == 0

    def test_table_agrees_with_single_counts(self):
        for m in (1, 2, 9, 12, 16, 35):
            table = square_count_table(m)
            assert [count_sqrt_brute(t, m) for t in range(m)] == list(table)

    def test_bound(self):
        with pytest.raises(BoundExceededError):
            count_sqrt_brute(1, 100, bound=99)


class TestFourier:
    @pytest.mark.parametrize("p, k, l, expected", [
        (3, 2, 1, 1),
        (2, 3, 1, 1 + 1j),
        (5, 1, 2, -1),
    ])
    def test_examples(self, p, k, l, expected):
        report = fourier_check(p, k, l)
        assert report.passed, report.to_json()
        assert near(report.lhs, expected, 1e-9)
        assert near(report.rhs, expected, 1e-9)

    def test_expansion_matches_naive_sum(self):
        for p, k in [(3, 3), (2, 5), (7, 2)]:
            for l in (1, -3):
                assert near(fourier_sum(p, k, l), phi_cmath(p**k, 2 * l), 1e-10)

    def test_all_prime_powers(self):
        powers = [(p, k) for p in range(2, 2049) if all(p % d for d in range(2, int(p**0.5) + 1))
                  for k in range(1, 12) if p**k <= 2048]
        for p, k in powers:
            for l in (1, -1, 3, -3):
                if l % p:
                    assert fourier_check(p, k, l).passed, (p, k, l)

    def test_rejects_multiple_of_p(self):
        with pytest.raises(ValueError):
            fourier_check(3, 2, 6)


class TestSylvesterBrute:
    def test_examples(self):
        assert sylvester_brute(3, 5) == 4
        assert sylvester_brute(1, 7) == 0
        assert sylvester_brute(5, 7) == 12

    def test_against_closed_form(self):
        for a in range(1, 2500, 2):
            for b in range(1, 2500 // a + 1, 2):
                if math.gcd(a, b) == 1:
                    assert sylvester_brute(a, b) == (a - 1) * (b - 1) // 2

    def test_rejects(self):
        with pytest.raises(ValueError):
            sylvester_brute(3, 9)

"""The acceptance criteria as runnable checks.

Shared by ``tests/test_acceptance.py`` and ``quadgauss self-test``.  Each
criterion returns a :class:`CriterionResult`; none of them raise on failure.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from typing import Callable, Iterator

from quadgauss.evaluator import (
    eval_lemma1,
    eval_phi_value,
    eval_prime_power_odd,
    eval_prime_power_two,
    induction_check,
    reflection_product,
    verify_ls,
)
from quadgauss.exact_value import I, ONE, ZERO, ExactGaussValue, Root8
from quadgauss.modular import SqrtCountQuery, count_sqrt_closed, is_prime, sylvester_count
from quadgauss.oracle import (
    compare,
    fourier_check,
    phi_numeric,
    square_count_table,
    sylvester_brute,
)

TOL = 1e-6
LEMMA1_TABLE = {0: Root8(1, 2, 1), 1: ONE, 2: ZERO, 3: I}
PRIME_POWER_LS = (1, -1, 3, -3, 5, 7, 9, -5)
INDUCTION_SEED = 20240611
INDUCTION_BOUND = 10**9


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    cases: int
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        msg = f"[{verdict}] {self.number}. {self.name}: {self.cases} cases in {self.seconds:.1f}s"
        return msg + (f" -- {self.detail}" if self.detail else "")


class _Tally:
    def __init__(self):
        self.cases = 0
        self.failures: list[str] = []

    def check(self, ok: bool, what) -> None:
        self.cases += 1
        if not ok and len(self.failures) < 5:
            self.failures.append(what if isinstance(what, str) else what())
        elif not ok:
            self.failures.append("")

    def result(self, number: int, name: str) -> CriterionResult:
        detail = ""
        if self.failures:
            shown = "; ".join(f for f in self.failures[:5] if f)
            detail = f"{len(self.failures)} failures: {shown}"
        return CriterionResult(number, name, not self.failures, self.cases, detail)


def prime_powers(limit: int, odd_only: bool = False) -> Iterator[tuple[int, int]]:
    for p in range(3 if odd_only else 2, limit + 1):
        if not is_prime(p):
            continue
        k, m = 1, p
        while m <= limit:
            yield p, k
            k, m = k + 1, m * p


def _criterion_prime_powers() -> Iterator[tuple[int, int]]:
    yield from prime_powers(2000, odd_only=True)
    for k in range(1, 12):
        yield 2, k


def residue_table() -> CriterionResult:
    t = _Tally()
    for a in range(1, 10**4 + 1):
        v = eval_lemma1(a)
        t.check(v == LEMMA1_TABLE[a % 4], f"table a={a}")
        t.check(eval_phi_value(a, 2) == v, f"pipeline a={a}")
        s = compare("", v.to_complex(), phi_numeric(a, 2), TOL)
        t.check(s.passed, lambda: f"numeric a={a} diff={s.difference:.2e}")
    return t.result(1, "phi(a, 2) by a mod 4, 1 <= a <= 10^4")


def square_root_counts() -> CriterionResult:
    t = _Tally()
    for p, j in prime_powers(4096):
        m = p**j
        brute = square_count_table(m)
        for r in range(m):
            closed = count_sqrt_closed(SqrtCountQuery.of(r, p, j))
            t.check(closed == brute[r], lambda: f"t={r} mod {p}^{j}: {closed} vs {brute[r]}")
    return t.result(2, "square-root counts mod p^j <= 4096")


def _prime_power_closed(p: int, k: int, l: int) -> ExactGaussValue:
    return eval_prime_power_two(k, l) if p == 2 else eval_prime_power_odd(p, k, l)


def prime_power_values() -> CriterionResult:
    t = _Tally()
    for p, k in _criterion_prime_powers():
        for l in PRIME_POWER_LS:
            if l % p == 0:
                continue
            closed = _prime_power_closed(p, k, l)
            s = compare("", closed.to_complex(), phi_numeric(p**k, 2 * l), TOL)
            t.check(s.passed, lambda: f"closed ({p},{k},{l}) diff={s.difference:.2e}")
            t.check(fourier_check(p, k, l, TOL).passed, f"fourier ({p},{k},{l})")
    return t.result(3, "prime-power closed forms and Fourier expansion")


def reflection() -> CriterionResult:
    t = _Tally()
    two = ExactGaussValue.make(2)
    for p, k in _criterion_prime_powers():
        if p == 2 and k < 3:
            continue
        expected = two if p == 2 else ONE
        for l in PRIME_POWER_LS:
            if l % p == 0:
                continue
            got = reflection_product(p, k, l)
            t.check(got == expected, lambda: f"({p},{k},{l}) -> {got}")
    return t.result(4, "reflection products, exact")


# Numeric cross-check of the splitting rule runs on the pairs with a*b below
# this; the exact comparison covers the whole grid.
SPLIT_NUMERIC_MAX_PRODUCT = 2500


def split_and_scale() -> CriterionResult:
    t = _Tally()
    even_ls = range(-20, 21, 2)
    for a in range(1, 301):
        for b in range(1, 301):
            if math.gcd(a, b) != 1:
                continue
            for l in even_ls:
                whole = eval_phi_value(a * b, l)
                split = eval_phi_value(a, b * l) * eval_phi_value(b, a * l)
                t.check(whole == split, lambda: f"split a={a} b={b} l={l}")
            if a * b > SPLIT_NUMERIC_MAX_PRODUCT:
                continue
            for l in range(-20, 21):
                whole_n = phi_numeric(a * b, l)
                split_n = phi_numeric(a, b * l) * phi_numeric(b, a * l)
                s = compare("", whole_n, split_n, TOL)
                t.check(s.passed, lambda: f"split numeric a={a} b={b} l={l}")
                if l % 2 == 0:
                    s = compare("", eval_phi_value(a * b, l).to_complex(), whole_n, TOL)
                    t.check(s.passed, lambda: f"exact vs numeric a={a} b={b} l={l}")
    for a in range(1, 301):
        for b in range(-20, 21):
            if b == 0:
                continue
            for k in range(1, 21):
                if b % 2 == 0:
                    scaled = eval_phi_value(k * a, k * b)
                    t.check(scaled == eval_phi_value(a, b).scale_sqrt(k), f"scale a={a} b={b} k={k}")
                if a <= 100 and (a % 2 == 0 or b % 2 == 0):
                    lhs = phi_numeric(k * a, k * b)
                    rhs = phi_numeric(a, b) * ExactGaussValue.make(1, k).to_complex()
                    s = compare("", lhs, rhs, TOL)
                    t.check(s.passed, lambda: f"scale numeric a={a} b={b} k={k}")
    return t.result(5, "splitting and scaling rules")


def reciprocity_grid(max_a: int = 200, max_b: int = 200) -> CriterionResult:
    t = _Tally()
    for a in range(1, max_a + 1):
        for b in range(1, max_b + 1):
            r = verify_ls(a, b, TOL)
            t.check(r.passed, lambda: f"a={a} b={b} {r.failed_step} diff={r.difference:.2e}")
    return t.result(6, f"reciprocity relation, 1 <= a <= {max_a}, 1 <= b <= {max_b}")


def induction_tuples(n: int = 100, seed: int = INDUCTION_SEED) -> list[tuple[int, int, int, int]]:
    rng = random.Random(seed)
    primes = [p for p in range(2, 32) if is_prime(p)]
    out = []
    while len(out) < n:
        p = rng.choice(primes)
        k = rng.randint(1, 4)
        a, b = rng.randint(1, 50), rng.randint(1, 50)
        if math.gcd(p, a * b) == 1:
            out.append((a, b, p, k))
    return out


def induction_replay() -> CriterionResult:
    t = _Tally()
    tuples = induction_tuples()
    for a, b, p, k in tuples:
        r = induction_check(a, b, p, k, TOL, bound=INDUCTION_BOUND)
        t.check(r.passed, lambda: f"({a},{b},{p},{k}) {r.failed_step}")
    both = any(p == 2 for _, _, p, _ in tuples) and any(p != 2 for _, _, p, _ in tuples)
    t.check(both, "sample lacks one of the two chains")
    return t.result(7, "induction step replay, 100 random tuples")


def sylvester() -> CriterionResult:
    t = _Tally()
    for a in range(1, 2500, 2):
        for b in range(1, 2500 // a + 1, 2):
            if math.gcd(a, b) != 1:
                continue
            closed, brute = sylvester_count(a, b), sylvester_brute(a, b)
            t.check(closed == brute, lambda: f"a={a} b={b}: {closed} vs {brute}")
    return t.result(8, "lattice count (a-1)(b-1)/2, ab <= 2500")


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: residue_table,
    2: square_root_counts,
    3: prime_power_values,
    4: reflection,
    5: split_and_scale,
    6: reciprocity_grid,
    7: induction_replay,
    8: sylvester,
}


def run_criterion(number: int) -> CriterionResult:
    start = time.perf_counter()
    res = CRITERIA[number]()
    res.seconds = time.perf_counter() - start
    return res


def run_all(echo: Callable[[str], None] = print) -> list[CriterionResult]:
    results = []
    for number in CRITERIA:
        res = run_criterion(number)
        echo(res.line())
        results.append(res)
    return results

"""Closed-form evaluation of ``phi(a, b)`` for even numerators.

The pipeline:

* split the modulus into prime powers, ``phi(qr, l) = phi(q, rl) * phi(r, ql)``
  for coprime ``q, r`` (rule ``split``);
* pull common prime powers out of each piece, ``phi(ka, kb) = sqrt(k) phi(a, b)``
  while the numerator stays even (rule ``scale``);
* finish with the prime-power formulas (``odd-prime-power``, and ``two-power``
  for ``2**3`` up) or a hand-checked ``small-case`` (modulus 1, 2 or 4).

Every application is recorded in a :class:`DerivationTrace` that can be replayed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

from quadgauss.exact_value import (
    I,
    ONE,
    SQRT2,
    ZERO,
    ZETA8,
    ComplexApprox,
    ExactGaussValue,
    Root8,
)
from quadgauss.modular import (
    DEFAULT_FACTOR_BOUND,
    BoundExceededError,
    factorize,
    is_prime,
    legendre,
    valuation,
)
from quadgauss.oracle import (
    DEFAULT_SUM_BOUND,
    DEFAULT_TOL,
    StepResult,
    VerificationReport,
    compare,
    phi_numeric,
)

RULES = ("mod4", "split", "scale", "odd-prime-power", "two-power", "small-case")


@dataclass(frozen=True)
class GaussSumQuery:
    modulus: int
    numerator: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")

    def reduced(self) -> GaussSumQuery:
        return GaussSumQuery(self.modulus, self.numerator % (2 * self.modulus))

    def __str__(self) -> str:
        return f"Φ({self.modulus},{self.numerator})"


@dataclass(frozen=True)
class TraceStep:
    rule: str
    query: GaussSumQuery
    value: ExactGaussValue
    inputs: tuple[int, ...] = ()
    # (p, k, l) for prime-power bases, (scale,) for scale steps
    args: tuple[int, ...] = ()


@dataclass(frozen=True)
class DerivationTrace:
    """Steps in dependency order; the last one produced the result."""

    steps: tuple[TraceStep, ...]

    @property
    def result(self) -> ExactGaussValue:
        return self.steps[-1].value

    def rules(self) -> list[str]:
        return [s.rule for s in self.steps]

    def replay(self) -> ExactGaussValue:
        """Recompute every step from its rule; raise on any disagreement."""
        values: list[ExactGaussValue] = []
        for idx, step in enumerate(self.steps):
            if any(j >= idx for j in step.inputs):
                raise ValueError(f"step {idx} depends on a later step")
            got = _apply_rule(step, [values[j] for j in step.inputs])
            if got != step.value:
                raise ValueError(f"step {idx} ({step.rule} {step.query}) replays to {got}, recorded {step.value}")
            values.append(got)
        return values[-1]

    def render(self) -> list[str]:
        lines = []
        for idx, s in enumerate(self.steps):
            extra = ""
            if s.rule == "split":
                extra = " = " + "·".join(f"[{j}]" for j in s.inputs)
            elif s.rule == "scale":
                extra = f" = √{s.args[0]}·[{s.inputs[0]}]"
            elif s.rule in ("odd-prime-power", "two-power"):
                extra = " with (p,k,l)=({},{},{})".format(*s.args)
            lines.append(f"[{idx}] {s.rule:<15} {s.query} -> {s.value}{extra}")
        return lines


def _apply_rule(step: TraceStep, inputs: list[ExactGaussValue]) -> ExactGaussValue:
    if step.rule == "split":
        out = ONE
        for v in inputs:
            out = out * v
        return out
    if step.rule == "scale":
        return inputs[0].scale_sqrt(step.args[0])
    if step.rule == "odd-prime-power":
        return eval_prime_power_odd(*step.args)
    if step.rule == "two-power":
        return eval_prime_power_two(step.args[1], step.args[2])
    if step.rule == "mod4":
        return eval_lemma1(step.query.modulus)
    if step.rule == "small-case":
        a, b = step.query.modulus, step.query.numerator
        if a == 1:
            return ONE
        return eval_prime_power_two(a.bit_length() - 1, b // 2)
    raise ValueError(f"unknown rule {step.rule!r}")


def eval_lemma1(a: int) -> ExactGaussValue:
    """``phi(a, 2)`` by ``a mod 4``: 1+i, 1, 0, i."""
    if a < 1:
        raise ValueError(f"modulus must be positive, got {a}")
    return (Root8(1, 2, 1), ONE, ZERO, I)[a % 4]


def eval_prime_power_odd(p: int, k: int, l: int) -> ExactGaussValue:
    """``phi(p**k, 2l)`` for an odd prime ``p`` not dividing ``l``."""
    if p < 3 or not is_prime(p) or k < 1:
        raise ValueError(f"need an odd prime power, got p={p}, k={k}")
    if l % p == 0:
        raise ValueError(f"p={p} divides l={l}")
    if k % 2 == 0:
        return ONE
    base = eval_lemma1(p**k)
    return base if legendre(l, p) == 1 else -base


def eval_prime_power_two(k: int, l: int) -> ExactGaussValue:
    """``phi(2**k, 2l)`` for odd ``l``."""
    if k < 1:
        raise ValueError(f"exponent must be >= 1, got {k}")
    if l % 2 == 0:
        raise ValueError(f"l={l} must be odd")
    if k == 1:
        return ZERO
    if k % 2 == 0:
        # 1 + i**l is 1+i or 1-i
        return Root8(1, 2, 1 if l % 4 == 1 else 7)
    return Root8(1, 2, l % 8)


def _base_piece(p: int, k: int, n: int) -> TraceStep:
    # phi(p**k, n) with n even and either k == 0 or p not dividing n/2
    if k == 0:
        return TraceStep("small-case", GaussSumQuery(1, n), ONE)
    m = p**k
    l = n // 2
    q = GaussSumQuery(m, n)
    if p == 2:
        value = eval_prime_power_two(k, l)
        if k >= 3:
            return TraceStep("two-power", q, value, args=(2, k, l))
        return TraceStep("small-case", q, value)
    return TraceStep("odd-prime-power", q, eval_prime_power_odd(p, k, l), args=(p, k, l))


@lru_cache(maxsize=1 << 16)
def _prime_power_piece(p: int, k: int, n: int) -> tuple[TraceStep, ...]:
    """Steps for ``phi(p**k, n)``, ``n`` even and reduced mod ``2*p**k``.

    Inputs are indices local to the returned tuple.
    """
    m = p**k
    if n == 0:
        strip = k
    elif p == 2:
        # keep the numerator even so the scaling rule stays applicable
        strip = min(k, valuation(n, 2) - 1)
    else:
        strip = min(k, valuation(n, p))
    if strip == 0:
        return (_base_piece(p, k, n),)
    s = p**strip
    child = _base_piece(p, k - strip, n // s)
    return child, TraceStep("scale", GaussSumQuery(m, n), child.value.scale_sqrt(s), (0,), (s,))


def _pieces(a: int, b: int) -> list[tuple[TraceStep, ...]]:
    out = []
    for p, k in factorize(a, bound=a):
        m = p**k
        out.append(_prime_power_piece(p, k, b * (a // m) % (2 * m)))
    return out


def eval_phi(a: int, b: int, bound: int = DEFAULT_FACTOR_BOUND) -> tuple[ExactGaussValue, DerivationTrace]:
    """Exact ``phi(a, b)`` for even ``b`` and the trace that produced it."""
    _check_even(a, b, bound)
    b %= 2 * a
    if a == 1:
        trace = DerivationTrace((TraceStep("small-case", GaussSumQuery(1, b), ONE),))
        return ONE, trace
    pieces = _pieces(a, b)
    if len(pieces) == 1:
        trace = DerivationTrace(pieces[0])
        return trace.result, trace
    steps: list[TraceStep] = []
    roots = []
    value = ONE
    for piece in pieces:
        off = len(steps)
        steps.extend(replace(st, inputs=tuple(j + off for j in st.inputs)) for st in piece)
        roots.append(len(steps) - 1)
        value = value * piece[-1].value
    steps.append(TraceStep("split", GaussSumQuery(a, b), value, tuple(roots)))
    return value, DerivationTrace(tuple(steps))


def eval_phi_value(a: int, b: int, bound: int = DEFAULT_FACTOR_BOUND) -> ExactGaussValue:
    """Same value as :func:`eval_phi` without assembling the trace."""
    _check_even(a, b, bound)
    b %= 2 * a
    value = ONE
    for piece in _pieces(a, b):
        value = value * piece[-1].value
    return value


def _check_even(a: int, b: int, bound: int) -> None:
    if a < 1:
        raise ValueError(f"modulus must be positive, got {a}")
    if b % 2:
        raise ValueError(f"closed-form evaluation needs an even numerator, got Φ({a},{b})")
    if a > bound:
        raise BoundExceededError(f"modulus {a} exceeds factorization bound {bound}")


def eval_phi_assuming_ls(a: int, b: int) -> ExactGaussValue:
    """``phi(a, b)`` for even ``a`` and odd ``b`` *assuming* the reciprocity relation.

    Uses ``phi(2c, -d) = phi(d, 2c) / zeta8``.  Flagged ``assumes-LS``: never use it
    to check the relation itself.
    """
    if a % 2 or b % 2 == 0:
        raise ValueError("assumes-LS evaluation needs an even modulus and odd numerator")
    neg = b % (2 * a) - 2 * a  # representative in (-2a, 0)
    return eval_phi_value(-neg, a) / ZETA8


def reflection_product(p: int, k: int, l: int) -> ExactGaussValue:
    """``phi(p**k, 2l) * phi(p**k, -2l)``."""
    if not is_prime(p) or k < 1:
        raise ValueError(f"need a prime power, got p={p}, k={k}")
    if math.gcd(p, l) != 1:
        raise ValueError(f"gcd({p}, {l}) != 1")
    m = p**k
    return eval_phi_value(m, 2 * l) * eval_phi_value(m, -2 * l)


def verify_ls(
    a: int, b: int, tol: float = DEFAULT_TOL, bound: int = DEFAULT_SUM_BOUND
) -> VerificationReport:
    """Check ``phi(a, 2b) == zeta8 * phi(2b, -a)``.

    The left side is evaluated exactly and cross-checked by summation; the
    right side is only ever summed.
    """
    if a < 1 or b < 1:
        raise ValueError(f"need positive a, b; got {a}, {b}")
    exact, _ = eval_phi(a, 2 * b)
    lhs = exact.to_complex()
    rhs = ZETA8.to_complex() * phi_numeric(2 * b, -a, bound)
    steps = [
        compare("lhs-exact-vs-numeric", lhs, phi_numeric(a, 2 * b, bound), tol),
        compare("reciprocity", lhs, rhs, tol),
    ]
    failed = next((s.label for s in steps if not s.passed), None)
    return VerificationReport(
        query=f"LS(a={a}, b={b})",
        lhs=lhs,
        rhs=rhs,
        difference=steps[1].difference,
        tol=tol,
        passed=failed is None,
        exact=exact,
        failed_step=failed,
        steps=steps,
    )


@dataclass(frozen=True)
class _Expr:
    """``const * prod(phi(a, b) ** power)``."""

    const: ExactGaussValue
    terms: tuple[tuple[int, int, int], ...]

    def is_exact(self) -> bool:
        return all(b % 2 == 0 for _, b, _ in self.terms)

    def exact(self) -> ExactGaussValue:
        out = self.const
        for a, b, power in self.terms:
            v = eval_phi_value(a, b, bound=max(a, DEFAULT_FACTOR_BOUND))
            out = out * v if power == 1 else out / v
        return out

    def numeric(self, bound: int) -> ComplexApprox:
        out = self.const.to_complex()
        for a, b, power in self.terms:
            v = phi_numeric(a, b, bound)
            out = out * v if power == 1 else out / v
        return out


def _phi(a: int, b: int, power: int = 1) -> tuple[int, int, int]:
    return (a, b, power)


def _chain_odd(a: int, b: int, p: int, k: int) -> list[tuple[str, _Expr]]:
    q = p**k
    d = _phi(q, 2 * a * b, -1)
    return [
        ("start", _Expr(ONE, (_phi(a, 2 * b * q),))),
        ("split", _Expr(ONE, (_phi(q * a, 2 * b), d))),
        ("induction-hypothesis", _Expr(ZETA8, (_phi(2 * b, -q * a), d))),
        ("split", _Expr(ZETA8, (_phi(2 * b * q, -a), d, _phi(q, -2 * a * b, -1)))),
        ("reflection", _Expr(ZETA8, (_phi(2 * b * q, -a),))),
    ]


def _chain_two(a: int, b: int, k: int) -> list[tuple[str, _Expr]]:
    q1, q2 = 2 ** (k + 1), 2 ** (k + 2)
    d = _phi(q2, 2 * a * b, -1)
    root_i_sqrt2 = ZETA8 * SQRT2
    two = ExactGaussValue.make(2)  # dividing by X/2 multiplies by 2
    return [
        ("start", _Expr(ONE, (_phi(a, q1 * b),))),
        ("split", _Expr(ONE, (_phi(q1 * a, b), _phi(q1, a * b, -1)))),
        ("scale", _Expr(ONE, (_phi(q2 * a, 2 * b), d))),
        ("induction-hypothesis", _Expr(ZETA8, (_phi(2 * b, -q2 * a), d))),
        ("scale", _Expr(root_i_sqrt2, (_phi(b, -q1 * a), d))),
        ("split", _Expr(root_i_sqrt2, (_phi(q1 * b, -a), d, _phi(q1, -a * b, -1)))),
        ("scale", _Expr(ZETA8 * two, (_phi(q1 * b, -a), d, _phi(q2, -2 * a * b, -1)))),
        ("reflection", _Expr(ZETA8, (_phi(q1 * b, -a),))),
    ]


def induction_check(
    a: int, b: int, p: int, k: int, tol: float = DEFAULT_TOL, bound: int = DEFAULT_SUM_BOUND
) -> VerificationReport:
    """Replay the induction step that adds the prime power ``p**k`` to ``b``.

    Consecutive expressions of the chain are compared exactly when every
    Gauss sum in both has an even numerator, numerically otherwise.  The
    reflection factor removed by the last step is always checked exactly.
    """
    if a < 1 or b < 1 or k < 1 or not is_prime(p):
        raise ValueError(f"bad induction query a={a}, b={b}, p={p}, k={k}")
    if math.gcd(p, a * b) != 1:
        raise ValueError(f"p={p} must be prime to a*b={a * b}")
    chain = _chain_two(a, b, k) if p == 2 else _chain_odd(a, b, p, k)

    steps: list[StepResult] = []
    for (_, left), (rule, right) in zip(chain, chain[1:]):
        label = f"{rule}: {_describe(left)} = {_describe(right)}"
        if left.is_exact() and right.is_exact():
            lv, rv = left.exact(), right.exact()
            lc, rc = lv.to_complex(), rv.to_complex()
            steps.append(StepResult(label, lc, rc, lc.distance(rc), lv == rv, exact=True))
        else:
            steps.append(compare(label, left.numeric(bound), right.numeric(bound), tol))

    if p == 2:
        refl, expected = reflection_product(2, k + 2, a * b), ExactGaussValue.make(2)
    else:
        refl, expected = reflection_product(p, k, a * b), ONE
    rc, ec = refl.to_complex(), expected.to_complex()
    steps.append(StepResult(f"reflection instance = {expected}", rc, ec, rc.distance(ec), refl == expected, exact=True))

    first, last = chain[0][1].numeric(bound), chain[-1][1].numeric(bound)
    steps.append(compare("conclusion", first, last, tol))
    failed = next((s.label for s in steps if not s.passed), None)
    return VerificationReport(
        query=f"induction(a={a}, b={b}, p={p}, k={k})",
        lhs=first,
        rhs=last,
        difference=steps[-1].difference,
        tol=tol,
        passed=failed is None,
        exact=None,
        failed_step=failed,
        steps=steps,
    )


def _describe(e: _Expr) -> str:
    num = [f"Φ({a},{b})" for a, b, pw in e.terms if pw == 1]
    den = [f"Φ({a},{b})" for a, b, pw in e.terms if pw == -1]
    body = "·".join(num) or "1"
    if den:
        body += "/(" + "·".join(den) + ")"
    if e.const == ONE:
        return body
    const = str(e.const)
    return f"({const})·{body}" if "+" in const or "-" in const[1:] else f"{const}·{body}"


def phi_exact_or_none(a: int, b: int, bound: int = DEFAULT_FACTOR_BOUND) -> Optional[ExactGaussValue]:
    return eval_phi_value(a, b, bound) if b % 2 == 0 else None

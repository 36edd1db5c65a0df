"""Exact values of the form ``c * sqrt(m) * zeta8**e`` plus zero.

``zeta8 = exp(i*pi/4)``.  ``c`` is a positive ``Fraction``, ``m`` a squarefree
positive integer and ``e`` an octant in ``0..7``.  Every closed form a quadratic
Gauss sum with even numerator takes lives in this set, and the set is closed
under products, quotients, conjugation and multiplication by ``sqrt(k)``.

Values are canonical, so ``==`` on two values is exact complex equality.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

EPS = sys.float_info.epsilon

_HALF_SQRT2 = math.sqrt(0.5)
# (cos, sin) of e*pi/4; odd octants carry the rounded value of sqrt(1/2).
_UNIT = (
    (1.0, 0.0),
    (_HALF_SQRT2, _HALF_SQRT2),
    (0.0, 1.0),
    (-_HALF_SQRT2, _HALF_SQRT2),
    (-1.0, 0.0),
    (-_HALF_SQRT2, -_HALF_SQRT2),
    (0.0, -1.0),
    (_HALF_SQRT2, -_HALF_SQRT2),
)


def squarefree_decompose(m: int) -> tuple[int, int]:
    """Return ``(s, r)`` with ``m == s*s*r`` and ``r`` squarefree."""
    if m < 1:
        raise ValueError(f"radicand must be positive, got {m}")
    s, r = 1, 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                r *= d
        d += 1 if d == 2 else 2
    return s, r * m


@dataclass(frozen=True)
class ComplexApprox:
    """Floating point complex number with an absolute error bound ``err``."""

    re: float
    im: float
    err: float = 0.0

    @classmethod
    def of(cls, z: complex, err: float = 0.0) -> ComplexApprox:
        return cls(z.real, z.imag, err)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def _slack(self, z: complex) -> float:
        # covers rounding of the float operation that produced z
        return 8 * EPS * abs(z)

    def __add__(self, other: ComplexApprox) -> ComplexApprox:
        z = self.value + other.value
        return ComplexApprox(z.real, z.imag, self.err + other.err + self._slack(z))

    def __sub__(self, other: ComplexApprox) -> ComplexApprox:
        z = self.value - other.value
        return ComplexApprox(z.real, z.imag, self.err + other.err + self._slack(z))

    def __mul__(self, other: ComplexApprox) -> ComplexApprox:
        z = self.value * other.value
        err = abs(self) * other.err + abs(other) * self.err + self.err * other.err
        return ComplexApprox(z.real, z.imag, err + self._slack(z))

    def __truediv__(self, other: ComplexApprox) -> ComplexApprox:
        denom = abs(other)
        if denom <= other.err:
            raise ZeroDivisionError("divisor is not bounded away from zero")
        z = self.value / other.value
        err = (self.err + abs(z) * other.err) / (denom - other.err)
        return ComplexApprox(z.real, z.imag, err + 2 * self._slack(z))

    def conj(self) -> ComplexApprox:
        return ComplexApprox(self.re, -self.im, self.err)

    def distance(self, other: ComplexApprox) -> float:
        """Plain ``|self - other|`` ignoring error bounds."""
        return abs(self.value - other.value)

    def close_to(self, other: ComplexApprox, tol: float) -> bool:
        return self.distance(other) <= tol + self.err + other.err


class ExactGaussValue:
    """Common base of :class:`Zero` and :class:`Root8`.

    Use :meth:`make` to build a canonical value from arbitrary ``(c, m, e)``.
    """

    __slots__ = ()

    @staticmethod
    def make(coeff: Rational | int | str, radicand: int = 1, octant: int = 0) -> ExactGaussValue:
        c = Fraction(coeff)
        if c == 0:
            return ZERO
        if radicand < 1:
            raise ValueError(f"radicand must be positive, got {radicand}")
        if c < 0:
            c, octant = -c, octant + 4
        s, r = squarefree_decompose(radicand)
        return _trusted(c * s, r, octant % 8)

    @property
    def is_zero(self) -> bool:
        return isinstance(self, Zero)

    def __mul__(self, other: ExactGaussValue) -> ExactGaussValue:
        return mul(self, other)

    def __truediv__(self, other: ExactGaussValue) -> ExactGaussValue:
        return div(self, other)

    def __neg__(self) -> ExactGaussValue:
        if isinstance(self, Root8):
            return _trusted(self.coeff, self.radicand, (self.octant + 4) % 8)
        return self

    def conj(self) -> ExactGaussValue:
        return conj(self)

    def scale_sqrt(self, k: int) -> ExactGaussValue:
        return scale_sqrt(self, k)

    def to_complex(self) -> ComplexApprox:
        return to_complex(self)

    def abs_squared(self) -> Fraction:
        if isinstance(self, Root8):
            return self.coeff * self.coeff * self.radicand
        return Fraction(0)

    def to_json(self) -> dict:
        if isinstance(self, Root8):
            c = self.coeff
            return {
                "kind": "root8",
                "coeff": f"{c.numerator}/{c.denominator}",
                "radicand": self.radicand,
                "octant": self.octant,
            }
        return {"kind": "zero"}

    @staticmethod
    def from_json(obj: dict) -> ExactGaussValue:
        kind = obj.get("kind")
        if kind == "zero":
            return ZERO
        if kind == "root8":
            value = Root8(Fraction(obj["coeff"]), int(obj["radicand"]), int(obj["octant"]))
            return value
        raise ValueError(f"unknown value kind {kind!r}")


@dataclass(frozen=True)
class Zero(ExactGaussValue):
    __slots__ = ()

    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class Root8(ExactGaussValue):
    """Nonzero value ``coeff * sqrt(radicand) * exp(i*pi*octant/4)``."""

    coeff: Fraction
    radicand: int
    octant: int

    __slots__ = ("coeff", "radicand", "octant")

    def __post_init__(self):
        if not isinstance(self.coeff, Fraction):
            object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.coeff <= 0:
            raise ValueError("coeff must be positive; use ZERO for zero")
        if not 0 <= self.octant < 8:
            raise ValueError(f"octant must lie in 0..7, got {self.octant}")
        if squarefree_decompose(self.radicand)[0] != 1:
            raise ValueError(f"radicand {self.radicand} is not squarefree")

    def __str__(self) -> str:
        if self.octant % 2 == 0:
            mag = _render_magnitude(self.coeff, self.radicand)
            unit = ("", "i", "-", "-i")[self.octant // 2]
            if mag == "1":
                return {"": "1", "-": "-1"}.get(unit, unit)
            sign = "-" if unit.startswith("-") else ""
            return f"{sign}{mag}" + ("*i" if unit.endswith("i") else "")
        # zeta8**e = (+-1 +- i)/sqrt(2); fold the 1/sqrt(2) into the magnitude
        if self.radicand % 2 == 0:
            c, m = self.coeff, self.radicand // 2
        else:
            c, m = self.coeff / 2, self.radicand * 2
        mag = _render_magnitude(c, m)
        pair = {1: "1+i", 3: "-1+i", 5: "-1-i", 7: "1-i"}[self.octant]
        return pair if mag == "1" else f"{mag}*({pair})"


def _trusted(coeff: Fraction, radicand: int, octant: int) -> Root8:
    # skips validation; callers guarantee canonical form
    v = object.__new__(Root8)
    object.__setattr__(v, "coeff", coeff)
    object.__setattr__(v, "radicand", radicand)
    object.__setattr__(v, "octant", octant)
    return v


def _render_magnitude(c: Fraction, m: int) -> str:
    num = "" if c.numerator == 1 and m != 1 else str(c.numerator)
    root = f"√{m}" if m != 1 else ""
    body = f"{num}{root}" or "1"
    return body if c.denominator == 1 else f"{body}/{c.denominator}"


ZERO = Zero()
ONE = Root8(Fraction(1), 1, 0)
I = Root8(Fraction(1), 1, 2)
ZETA8 = Root8(Fraction(1), 1, 1)
SQRT2 = Root8(Fraction(1), 2, 0)


def mul(x: ExactGaussValue, y: ExactGaussValue) -> ExactGaussValue:
    if not isinstance(x, Root8) or not isinstance(y, Root8):
        return ZERO
    g = math.gcd(x.radicand, y.radicand)
    # sqrt(m1)*sqrt(m2) = g*sqrt((m1/g)*(m2/g)); the cofactors are coprime and squarefree
    radicand = (x.radicand // g) * (y.radicand // g)
    return _trusted(x.coeff * y.coeff * g, radicand, (x.octant + y.octant) % 8)


def conj(x: ExactGaussValue) -> ExactGaussValue:
    if isinstance(x, Root8):
        return _trusted(x.coeff, x.radicand, (8 - x.octant) % 8)
    return ZERO


def scale_sqrt(x: ExactGaussValue, k: int) -> ExactGaussValue:
    """Multiply ``x`` by ``sqrt(k)``."""
    if k < 1:
        raise ValueError(f"scale factor must be positive, got {k}")
    s, r = squarefree_decompose(k)
    return mul(x, _trusted(Fraction(s), r, 0))


def div(x: ExactGaussValue, y: ExactGaussValue) -> ExactGaussValue:
    if not isinstance(y, Root8):
        raise ZeroDivisionError("division by the zero Gauss value")
    if not isinstance(x, Root8):
        return ZERO
    prod = mul(x, conj(y))
    assert isinstance(prod, Root8)
    return _trusted(prod.coeff / y.abs_squared(), prod.radicand, prod.octant)


def to_complex(x: ExactGaussValue) -> ComplexApprox:
    if not isinstance(x, Root8):
        return ComplexApprox(0.0, 0.0, 0.0)
    mag = float(x.coeff) * math.sqrt(x.radicand)
    cs, sn = _UNIT[x.octant]
    re, im = mag * cs, mag * sn
    if x.radicand == 1 and x.octant % 2 == 0:
        # value is rational: measure the rounding exactly
        exact = x.coeff * (1 - 2 * (x.octant >= 4))
        got = Fraction(re if x.octant % 4 == 0 else im)
        err = float(abs(got - exact))
        err = err + EPS * err  # float() of the Fraction may round down
    else:
        err = 4 * EPS * mag
    return ComplexApprox(re, im, err)

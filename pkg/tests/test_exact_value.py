import cmath
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quadgauss.exact_value import (
    I,
    ONE,
    ZERO,
    ZETA8,
    ComplexApprox,
    ExactGaussValue,
    Root8,
    conj,
    div,
    mul,
    scale_sqrt,
    squarefree_decompose,
    to_complex,
)


def v(c, m=1, e=0):
    return ExactGaussValue.make(c, m, e)


def as_complex(x):
    z = to_complex(x)
    return complex(z.re, z.im)


values = st.one_of(
    st.just(ZERO),
    st.builds(
        v,
        st.fractions(min_value=Fraction(1, 12), max_value=50, max_denominator=12),
        st.integers(1, 200),
        st.integers(0, 7),
    ),
)


class TestCanonicalForm:
    def test_sqrt8_folds_into_coeff(self):
        assert v(1, 8) == Root8(Fraction(2), 2, 0)

    def test_negative_coeff_rotates(self):
        assert v(-3, 1, 1) == Root8(Fraction(3), 1, 5)

    def test_zero_coeff_is_zero_variant(self):
        assert v(0, 7, 3) is ZERO
        assert ZERO.is_zero and not ONE.is_zero

    def test_named_constants(self):
        assert v(1, 2, 1) == Root8(Fraction(1), 2, 1)
        assert I == Root8(Fraction(1), 1, 2)
        assert ONE == Root8(Fraction(1), 1, 0)

    @pytest.mark.parametrize("bad", [dict(coeff=Fraction(0), radicand=1, octant=0),
                                     dict(coeff=Fraction(1), radicand=4, octant=0),
                                     dict(coeff=Fraction(1), radicand=1, octant=8)])
    def test_direct_construction_validates(self, bad):
        with pytest.raises(ValueError):
            Root8(**bad)

    @given(st.integers(1, 10**5))
    def test_squarefree_decompose(self, m):
        s, r = squarefree_decompose(m)
        assert s * s * r == m
        assert all(r % (d * d) for d in range(2, int(r**0.5) + 1))

    @given(st.integers(1, 30), st.integers(1, 60), st.integers(0, 20))
    def test_non_squarefree_input_matches_canonical(self, c, m, e):
        s, r = squarefree_decompose(m)
        assert v(c, m, e) == v(c * s, r, e)


class TestOperations:
    def test_conjugate_pair_product(self):
        assert mul(v(1, 2, 1), v(1, 2, 7)) == v(2)

    def test_zero_absorbs(self):
        assert mul(ZERO, v(3, 5, 2)) is ZERO
        assert mul(v(3, 5, 2), ZERO) is ZERO

    def test_i_squared(self):
        assert mul(I, I) == v(1, 1, 4)

    def test_conj_examples(self):
        assert conj(v(1, 2, 1)) == v(1, 2, 7)
        assert conj(ONE) == ONE
        assert conj(ZERO) is ZERO

    def test_scale_sqrt_examples(self):
        assert scale_sqrt(I, 2) == v(1, 2, 2)
        assert scale_sqrt(v(1, 2, 1), 2) == v(2, 1, 1)
        assert scale_sqrt(ZERO, 5) is ZERO

    def test_div_examples(self):
        assert div(v(1, 2, 1), v(1, 2, 1)) == ONE
        assert div(ONE, I) == v(1, 1, 6)
        got = div(v(2), v(1, 2, 1))
        assert got == v(1, 2, 7)
        assert abs(as_complex(got) - 2 / (1 + 1j)) < 1e-15

    def test_div_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            div(ONE, ZERO)

    def test_to_complex_examples(self):
        z = to_complex(v(1, 2, 1))
        assert abs(z.re - 1) <= 1e-12 and abs(z.im - 1) <= 1e-12 and z.err <= 1e-12
        assert to_complex(ZERO) == ComplexApprox(0.0, 0.0, 0.0)
        z = to_complex(I)
        assert (z.re, z.im) == (0.0, 1.0) and z.err <= 1e-15

    def test_str(self):
        assert str(I) == "i"
        assert str(v(1, 2, 1)) == "1+i"
        assert str(v(1, 2, 7)) == "1-i"
        assert str(v(1, 1, 4)) == "-1"
        assert str(v(1, 2, 2)) == "√2*i"
        assert str(v(Fraction(1, 2), 3, 0)) == "√3/2"
        assert str(ZERO) == "0"


class TestAlgebraProperties:
    @given(values, values, values)
    def test_mul_associative(self, x, y, z):
        assert mul(mul(x, y), z) == mul(x, mul(y, z))

    @given(values, values)
    def test_mul_commutative(self, x, y):
        assert mul(x, y) == mul(y, x)

    @given(values)
    def test_conj_involution(self, x):
        assert conj(conj(x)) == x

    @given(values, values)
    def test_conj_distributes(self, x, y):
        assert conj(mul(x, y)) == mul(conj(x), conj(y))

    @given(values)
    def test_norm_is_real(self, x):
        n = mul(x, conj(x))
        if x.is_zero:
            assert n is ZERO
        else:
            assert n.octant == 0
            assert n == v(x.coeff**2 * x.radicand)

    @given(values, st.integers(1, 50), st.integers(1, 50))
    def test_scale_sqrt_composes(self, x, j, k):
        assert scale_sqrt(scale_sqrt(x, j), k) == scale_sqrt(x, j * k)

    @given(values, values)
    def test_numeric_shadow_of_product(self, x, y):
        assert to_complex(mul(x, y)).close_to(to_complex(x) * to_complex(y), 0.0)

    @given(values, values.filter(lambda y: not y.is_zero))
    def test_div_inverts_mul(self, x, y):
        assert mul(div(x, y), y) == x

    @given(values)
    def test_json_round_trip(self, x):
        text = json.dumps(x.to_json())
        assert ExactGaussValue.from_json(json.loads(text)) == x


def test_equality_agrees_with_numeric_equality():
    rng = random.Random(7)

    def sample():
        if rng.random() < 0.05:
            return ZERO
        return v(Fraction(rng.randint(1, 4), rng.randint(1, 3)), rng.randint(1, 12), rng.randint(0, 7))

    for _ in range(10**4):
        x, y = sample(), sample()
        numeric_equal = to_complex(x).close_to(to_complex(y), 0.0)
        assert (x == y) == numeric_equal, (x, y)


def test_json_encoding_shape():
    assert ZERO.to_json() == {"kind": "zero"}
    assert v(Fraction(3, 2), 5, 3).to_json() == {"kind": "root8", "coeff": "3/2", "radicand": 5, "octant": 3}
    assert ExactGaussValue.from_json({"kind": "root8", "coeff": "2", "radicand": 2, "octant": 1}) == v(2, 2, 1)
    with pytest.raises(ValueError):
        ExactGaussValue.from_json({"kind": "cyclotomic"})


def test_complex_approx_division_bound():
    x = ComplexApprox(1.0, 2.0, 1e-10)
    y = ComplexApprox(0.5, -0.25, 1e-10)
    q = x / y
    assert abs(q.value - (1 + 2j) / (0.5 - 0.25j)) <= q.err
    with pytest.raises(ZeroDivisionError):
        x / ComplexApprox(0.0, 0.0, 1e-12)


def test_zeta8_is_principal_root_of_i():
    assert abs(as_complex(ZETA8) - cmath.exp(1j * cmath.pi / 4)) < 1e-15
    assert mul(ZETA8, ZETA8) == I

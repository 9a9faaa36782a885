from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quasinv.exact.field import (
    Field, FieldSyntaxError, NotPrime, ZeroInverse, rational_reconstruction, scalar_inverse,
)
from quasinv.exact.param import PARAMS, ParamPoly, binomial_param, binomial_rational
from quasinv.exact.series import TruncatedSeries

SMALL_PRIMES = [2, 3, 5, 7, 101, 2147483647]


@st.composite
def field_elements(draw, field: Field):
    if field.p is None:
        num = draw(st.integers(min_value=-50, max_value=50))
        den = draw(st.integers(min_value=1, max_value=20))
        return Fraction(num, den)
    return draw(st.integers(min_value=0, max_value=field.p - 1))


@st.composite
def fields(draw):
    p = draw(st.sampled_from([None] + SMALL_PRIMES))
    return Field(p)


def test_field_tokens():
    assert Field.parse("q") == Field.rationals()
    assert Field.parse("QQ").is_rational
    assert Field.parse("fp:7") == Field.prime(7)
    assert Field.prime(7).token == "fp:7"
    assert Field.rationals().token == "q"
    assert str(Field.prime(5)) == "F_5"
    assert Field.prime(13).characteristic == 13
    assert Field.rationals().characteristic == 0


def test_field_rejects_bad_input():
    with pytest.raises(NotPrime):
        Field.prime(9)
    with pytest.raises(NotPrime):
        Field.parse("fp:1")
    with pytest.raises(FieldSyntaxError):
        Field.parse("fp:x")
    with pytest.raises(FieldSyntaxError):
        Field.parse("reals")


def test_word_sized_bound():
    assert Field.prime(2147483647).word_sized
    assert not Field.prime(2147483659).word_sized
    assert not Field.rationals().word_sized


def test_coerce_fraction_into_prime_field():
    F7 = Field.prime(7)
    assert F7.coerce(Fraction(1, 2)) == 4
    assert F7.coerce(-1) == 6
    with pytest.raises(ZeroInverse):
        F7.coerce(Fraction(1, 7))


def test_inverse_of_zero():
    with pytest.raises(ZeroInverse):
        scalar_inverse(0, Field.prime(5))
    with pytest.raises(ZeroInverse):
        Field.rationals().inv(Fraction(0))


@given(st.data())
def test_field_axioms(data):
    field = data.draw(fields())
    a = data.draw(field_elements(field))
    b = data.draw(field_elements(field))
    c = data.draw(field_elements(field))
    assert field.add(a, b) == field.add(b, a)
    assert field.mul(a, b) == field.mul(b, a)
    assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
    assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
    assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))
    assert field.add(a, field.neg(a)) == field.zero()
    assert field.mul(a, field.one()) == field.normalize(a)
    if not field.is_zero(a):
        assert field.mul(a, field.inv(a)) == field.one()


@given(
    st.integers(min_value=-1000, max_value=1000),
    st.integers(min_value=1, max_value=1000),
)
def test_rational_reconstruction_recovers_small_fractions(num, den):
    modulus = 2147483647 * 2147483629
    target = Fraction(num, den)
    residue = target.numerator * pow(target.denominator, -1, modulus) % modulus
    assert rational_reconstruction(residue, modulus) == target


def test_rational_reconstruction_bounds():
    assert rational_reconstruction(50, 101) == Fraction(-1, 2)
    # no r/s with |r|, |s| <= 7 is congruent to 10 mod 101
    assert rational_reconstruction(10, 101) is None


def test_param_poly_arithmetic():
    z = ParamPoly.var("z")
    w = ParamPoly.var("w")
    e = (z + 1) * (z - 1)
    assert e == z ** 2 - 1
    assert (z * w).parameters() == {"z", "w"}
    assert (z * w + z).degree() == 2
    assert ParamPoly.const(3).is_constant()
    assert ParamPoly.const(3) == 3
    assert (2 - z) + z == 2
    assert e.evaluate({"z": 3}) == 8
    assert str(z ** 2 - z / 2 + 1) == "z^2-1/2*z+1"
    assert not ParamPoly()


@given(st.integers(min_value=-12, max_value=12), st.integers(min_value=0, max_value=8))
def test_binomial_param_specializes(top, j):
    z = ParamPoly.var("z")
    assert binomial_param(z, j).evaluate({"z": top}) == binomial_rational(top, j)


def test_binomial_rational_values():
    assert binomial_rational(5, 2) == 10
    assert binomial_rational(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert binomial_rational(-1, 3) == -1


def test_param_ring_interface():
    assert PARAMS.is_zero(PARAMS.zero())
    assert PARAMS.coerce(Fraction(1, 3)) == Fraction(1, 3)
    assert PARAMS.format(ParamPoly.var("z") + 1) == "z+1"


def test_geometric_inverse_cancels_binomial_factor():
    for h in range(1, 6):
        prod = TruncatedSeries.geometric_inverse(h, 20) * TruncatedSeries.binomial_factor(h, 20)
        assert prod == TruncatedSeries.one(20)


def test_series_shift():
    s = TruncatedSeries.of([1, 2, 3], 5)
    assert s.shift(2).coeffs == tuple(Fraction(c) for c in (0, 0, 1, 2, 3))
    assert s.shift(2).shift(-2) == TruncatedSeries.of([1, 2, 3], 3)
    with pytest.raises(ValueError):
        s.shift(-1)


def test_series_integrality():
    s = TruncatedSeries.of([Fraction(1, 2), 1], 3)
    assert not s.is_integral()
    assert s.scale(2).is_integral()
    assert s.scale(2).integer_coeffs() == [1, 2, 0]

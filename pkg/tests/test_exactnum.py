from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hallforge.exactnum import Scalar, v_pow

Q = 2

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(lambda a, b: Scalar(a, b, Q), rationals, rationals)


def test_v_pow_small_values():
    assert v_pow(2, 3) == 3
    assert v_pow(0, 5) == 1
    half = v_pow(-1, 4)
    assert half == Fraction(1, 2)
    assert half.b == 0


def test_perfect_square_is_folded():
    value = Scalar(Fraction(1), Fraction(1), 4)
    assert value.a == 3
    assert value.b == 0
    assert value.is_rational()


def test_difference_of_squares():
    assert Scalar(1, 1, 2) * Scalar(1, -1, 2) == -1


def test_inverse_of_root_is_rationalized():
    for q in (2, 3, 5):
        assert Scalar(0, 1, q).inverse() == Scalar(0, Fraction(1, q), q)


def test_mixed_sum():
    total = Scalar(Fraction(1, 2), 0, 2) + Scalar(Fraction(1, 3), 1, 2)
    assert total == Scalar(Fraction(5, 6), 1, 2)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        Scalar.zero(3).inverse()
    with pytest.raises(ZeroDivisionError):
        Scalar.one(3) / 0


def test_mixing_fields_is_rejected():
    with pytest.raises(ValueError):
        Scalar.one(2) + Scalar.one(3)


def test_json_form_uses_rational_strings():
    value = v_pow(3, 2) / 3
    assert value.to_json() == {"a": "0/1", "b": "2/3"}
    assert Scalar.from_json(value.to_json(), 2) == value


@given(scalars, scalars, scalars)
def test_multiplication_is_associative(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(scalars, scalars, scalars)
def test_multiplication_distributes(x, y, z):
    assert x * (y + z) == x * y + x * z


@given(scalars)
def test_nonzero_elements_are_invertible(x):
    if x.is_zero():
        return
    assert x * x.inverse() == 1


@given(st.integers(min_value=-12, max_value=12), st.integers(min_value=-12, max_value=12), st.sampled_from([2, 3, 4]))
def test_v_power_law(k1, k2, q):
    assert v_pow(k1, q) * v_pow(k2, q) == v_pow(k1 + k2, q)

"""Exact arithmetic in Z[L] and Z(L): canonical forms, field axioms, evaluation."""

import random
from fractions import Fraction

import pytest

from arcint.errors import PoleError, ZeroDenominatorError
from arcint.exact import LPolynomial, RationalFunctionL


def rf(num, den=1):
    return RationalFunctionL(LPolynomial(num), LPolynomial(den))


def test_normalize_already_canonical():
    r = rf((0, 1), (1, 1))  # L/(L+1)
    assert r.num_coeffs() == [0, 1]
    assert r.den_coeffs() == [1, 1]


def test_normalize_cancels_common_factor():
    r = rf((0, -1, 1), (-1, 1))  # (L^2-L)/(L-1) = L
    assert r == rf((0, 1))
    assert r.den_coeffs() == [1]


def test_normalize_reduces_content():
    r = rf((2, 2), (4,))  # (2L+2)/4 = (L+1)/2
    assert r.num_coeffs() == [1, 1]
    assert r.den_coeffs() == [2]


def test_normalize_sign_of_denominator():
    r = rf((0, 1), (-1, -1))
    assert r.den_coeffs() == [1, 1]
    assert r.num_coeffs() == [0, -1]


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDenominatorError):
        rf((1,), ())


def test_mul_squares_paper_value():
    v = rf((0, 1), (1, 1))
    assert v * v == rf((0, 0, 1), (1, 2, 1))  # L^2/(L+1)^2


def test_add_zero_is_identity():
    x = rf((3, 0, 1), (1, 2))
    assert x + RationalFunctionL.zero() == x


def test_reduced_quotient_of_inverse_power_expression():
    # (1 - L^-1)(1 - L^-1 + L^-2) / ((1 + L^-1)(1 - L^-5)); the reduced
    # form was computed by clearing powers of L by hand and dividing out
    # L^5 - 1 = (L - 1)(L^4 + L^3 + L^2 + L + 1).
    li = RationalFunctionL.l_power(-1)
    num = (1 - li) * (1 - li + li * li)
    den = (1 + li) * (1 - RationalFunctionL.l_power(-5))
    r = num / den
    assert r == rf((0, 0, 0, 1, -1, 1), (1, 2, 2, 2, 2, 1))
    # cross-check by evaluating both expressions at L = 7 as exact rationals
    assert r.eval_at(7) == num.eval_at(7) / den.eval_at(7)


def test_eval_examples():
    assert rf((0, 1), (1, 1)).eval_at(3) == Fraction(3, 4)
    assert rf((0, 0, 1), (1, 2, 1)).eval_at(5) == Fraction(25, 36)


def test_eval_at_pole():
    r = rf((1,), (1, 1))  # 1/(L+1)
    with pytest.raises(PoleError):
        r.eval_at(-1)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        rf((1,)) / RationalFunctionL.zero()


def _random_rf(rng):
    while True:
        num = [rng.randint(-4, 4) for _ in range(rng.randint(1, 4))]
        den = [rng.randint(-4, 4) for _ in range(rng.randint(1, 4))]
        if any(den):
            return rf(tuple(num), tuple(den))


def test_field_axioms_random():
    rng = random.Random(20240817)
    one = RationalFunctionL.one()
    zero = RationalFunctionL.zero()
    for _ in range(120):
        a, b, c = (_random_rf(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + zero == a
        assert a * one == a
        assert a + (-a) == zero
        if not a.is_zero:
            assert a * (one / a) == one


def test_eval_is_multiplicative_random():
    rng = random.Random(7)
    for _ in range(80):
        a, b = _random_rf(rng), _random_rf(rng)
        for q in (2, 3, 5, 11):
            try:
                va, vb, vab = a.eval_at(q), b.eval_at(q), (a * b).eval_at(q)
            except PoleError:
                continue
            assert vab == va * vb


def test_l_power_negative():
    assert RationalFunctionL.l_power(-2) == rf((1,), (0, 0, 1))
    assert RationalFunctionL.l_power(3) == rf((0, 0, 0, 1))


def test_structural_equality_is_semantic():
    a = rf((0, 2, 2), (2, 2))  # 2L(L+1) / 2(L+1) = L
    assert a == rf((0, 1))
    assert hash(a) == hash(rf((0, 1)))

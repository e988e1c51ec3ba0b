"""Finite field construction, root counting, distinct-degree decomposition."""

import itertools

import pytest

from arcint.errors import ArcintError, BudgetError, SeparabilityError
from arcint.finitefield import (ZeroDimClass, count_roots, degree_multiset,
                                fq_construct, find_irreducible)


def brute_first_irreducible_quadratic(p):
    """Independent oracle: a monic quadratic over F_p is irreducible iff it
    has no root; scan candidates in the same counting order."""
    for m in range(p * p):
        c0, c1 = m % p, (m // p) % p
        if all((x * x + c1 * x + c0) % p for x in range(p)):
            return (c0, c1, 1)
    raise AssertionError


def test_modulus_degenerate_degree_one():
    f = fq_construct(2, 1)
    assert f.modulus == (0, 1)  # X itself; elements are constants
    assert f.q == 2


def test_modulus_first_irreducible_f9():
    assert find_irreducible(3, 2) == brute_first_irreducible_quadratic(3) == (1, 0, 1)


def test_modulus_only_irreducible_f4():
    assert find_irreducible(2, 2) == (1, 1, 1)
    # brute force: it is the only monic irreducible quadratic over F_2
    irreducibles = [
        (c0, c1, 1)
        for c0 in range(2) for c1 in range(2)
        if all((x * x + c1 * x + c0) % 2 for x in range(2))
    ]
    assert irreducibles == [(1, 1, 1)]


def test_construction_deterministic():
    a = fq_construct(3, 2)
    b = fq_construct(3, 2)
    assert a is b and a.modulus == (1, 0, 1)


def test_not_prime_rejected():
    with pytest.raises(ArcintError):
        fq_construct(6, 1)


def test_budget():
    with pytest.raises(BudgetError):
        fq_construct(2, 30)


def test_field_axioms_small():
    for (p, i) in [(2, 2), (3, 2), (5, 1)]:
        f = fq_construct(p, i)
        elems = list(f.elements())
        for a, b in itertools.product(elems, repeat=2):
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
        for a in elems:
            assert f.add(a, f.neg(a)) == 0
            assert f.mul(a, 1) == a
            if a:
                assert f.mul(a, f.inv(a)) == 1
        for a, b, c in itertools.product(elems[: min(len(elems), 4)], repeat=3):
            assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_count_roots_x2_plus_1():
    assert count_roots([1, 0, 1], fq_construct(3, 1)) == 0
    assert count_roots([1, 0, 1], fq_construct(3, 2)) == 2
    assert count_roots([1, 0, 1], fq_construct(5, 1)) == 2  # 2^2 = 3^2 = -1 mod 5


def test_count_roots_brute_agreement():
    polys = [[1, 0, 1], [1, 1, 1], [2, 0, 0, 1], [1, 3, 1, 1], [6, 1]]
    for coeffs in polys:
        for (p, i) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1)]:
            f = fq_construct(p, i)
            if not any(c % p for c in coeffs):
                continue
            brute = 0
            for x in f.elements():
                acc = 0
                for c in reversed(coeffs):
                    acc = f.add(f.mul(acc, x), f.from_int(c))
                if acc == 0:
                    brute += 1
            assert count_roots(coeffs, f) == brute, (coeffs, p, i)


def test_degree_multiset_examples():
    assert degree_multiset([1, 0, 1], 3) == ZeroDimClass({2: 1})
    assert degree_multiset([1, 0, 1], 5) == ZeroDimClass({1: 2})


def test_degree_multiset_char2_square():
    with pytest.raises(SeparabilityError):
        degree_multiset([1, 0, 1], 2)  # (X+1)^2 mod 2


def test_degree_multiset_constant():
    with pytest.raises(SeparabilityError):
        degree_multiset([5], 3)


def test_degree_multiset_point_count_matches_count_roots():
    # whenever f mod p is separable, counting roots over F_{p^i} must equal
    # the weighted divisor sum of the degree multiset
    polys = [[1, 0, 1], [1, 1, 1], [2, 3, 0, 1], [1, 1, 0, 0, 1], [3, 1]]
    for coeffs in polys:
        for p in (2, 3, 5):
            try:
                cls = degree_multiset(coeffs, p)
            except SeparabilityError:
                continue
            for i in (1, 2, 3):
                if p**i > 600:
                    continue
                f = fq_construct(p, i)
                assert count_roots(coeffs, f) == cls.point_count(i)


def test_degree_multiset_total_degree():
    cls = degree_multiset([1, 1, 0, 0, 1], 3)  # degree 4, separable mod 3
    assert cls.total_degree() == 4

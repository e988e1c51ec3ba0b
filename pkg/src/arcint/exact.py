"""Exact arithmetic in Z[L] and Z(L).

Every motivic integral computed by this package is an element of Z(L), the
field of rational functions in the Lefschetz class L (the class of the
affine line).  This module provides the two value types: univariate integer
polynomials in L, and their quotients in canonical reduced form.  There is
no floating point anywhere; evaluation returns fractions.Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import InternalError, PoleError, ZeroDenominatorError


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _content(coeffs):
    c = 0
    for a in coeffs:
        c = gcd(c, abs(a))
    return c


def _primitive(coeffs):
    c = _content(coeffs)
    if c <= 1:
        return tuple(coeffs)
    return tuple(a // c for a in coeffs)


def _pseudo_rem(u, v):
    """Remainder of u by v up to scaling by powers of lc(v); integer only."""
    u = list(u)
    dv = len(v) - 1
    lv = v[-1]
    while len(u) - 1 >= dv and u:
        shift = len(u) - 1 - dv
        lead = u[-1]
        u = [lv * c for c in u]
        for j, cv in enumerate(v):
            u[shift + j] -= lead * cv
        while u and u[-1] == 0:
            u.pop()
    return tuple(u)


def _poly_gcd(a, b):
    """Primitive gcd over Z of two coefficient tuples, positive leading."""
    a = _primitive(_trim(a))
    b = _primitive(_trim(b))
    while b:
        a, b = b, _primitive(_pseudo_rem(a, b))
    if a and a[-1] < 0:
        a = tuple(-c for c in a)
    return a if a else (1,)


def _exact_div(a, b):
    """Quotient a/b in Z[L]; the division must be exact."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ()
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        raise InternalError("inexact polynomial division (degree)")
    lb = b[-1]
    r = list(a)
    q = [0] * (da - db + 1)
    for i in range(da, db - 1, -1):
        c = r[i]
        if c == 0:
            continue
        if c % lb != 0:
            raise InternalError("inexact polynomial division (coefficient)")
        t = c // lb
        q[i - db] = t
        for j, cv in enumerate(b):
            r[i - db + j] -= t * cv
    if any(r):
        raise InternalError("inexact polynomial division (remainder)")
    return _trim(q)


def _poly_str(coeffs, var="L"):
    if not coeffs:
        return "0"
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        if e == 0:
            mono = str(abs(c))
        else:
            mono = var if e == 1 else f"{var}^{e}"
            if abs(c) != 1:
                mono = f"{abs(c)}*{mono}"
        if not parts:
            parts.append(mono if c > 0 else f"-{mono}")
        else:
            parts.append(f"+ {mono}" if c > 0 else f"- {mono}")
    return " ".join(parts)


class LPolynomial:
    """Integer polynomial in L, stored dense with no trailing zeros.

    The zero polynomial is the empty tuple.  Instances are immutable and
    hashable, so they can key memo tables.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, LPolynomial):
            object.__setattr__(self, "coeffs", coeffs.coeffs)
            return
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("LPolynomial is immutable")

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def l_power(cls, e):
        if e < 0:
            raise ValueError("use RationalFunctionL for negative powers")
        return cls((0,) * e + (1,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def content(self):
        return _content(self.coeffs)

    def __add__(self, other):
        other = LPolynomial(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return LPolynomial(a)

    __radd__ = __add__

    def __neg__(self):
        return LPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-LPolynomial(other))

    def __rsub__(self, other):
        return LPolynomial(other) + (-self)

    def __mul__(self, other):
        other = LPolynomial(other)
        if self.is_zero or other.is_zero:
            return LPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return LPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        r = LPolynomial.one()
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def evaluate(self, x):
        """Horner evaluation; x may be int or Fraction, result Fraction."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, int):
            other = LPolynomial(other)
        return isinstance(other, LPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("LPolynomial", self.coeffs))

    def __repr__(self):
        return _poly_str(self.coeffs)


_ONE = (1,)


class RationalFunctionL:
    """Element of Z(L) in canonical reduced form.

    Canonical means: numerator and denominator have constant gcd over Q,
    the gcd of all their integer coefficients taken together is 1, and the
    leading coefficient of the denominator is positive.  Structural
    equality then coincides with equality in the field.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = LPolynomial(num)
        den = LPolynomial(den)
        if den.is_zero:
            raise ZeroDenominatorError("zero denominator in Z(L)")
        if num.is_zero:
            object.__setattr__(self, "num", LPolynomial.zero())
            object.__setattr__(self, "den", LPolynomial.one())
            return
        g = _poly_gcd(num.coeffs, den.coeffs)
        ncoeffs = _exact_div(num.coeffs, g)
        dcoeffs = _exact_div(den.coeffs, g)
        c = gcd(_content(ncoeffs), _content(dcoeffs))
        if c > 1:
            ncoeffs = tuple(a // c for a in ncoeffs)
            dcoeffs = tuple(a // c for a in dcoeffs)
        if dcoeffs[-1] < 0:
            ncoeffs = tuple(-a for a in ncoeffs)
            dcoeffs = tuple(-a for a in dcoeffs)
        object.__setattr__(self, "num", LPolynomial(ncoeffs))
        object.__setattr__(self, "den", LPolynomial(dcoeffs))

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunctionL is immutable")

    @classmethod
    def zero(cls):
        return cls(0)

    @classmethod
    def one(cls):
        return cls(1)

    @classmethod
    def l_power(cls, e):
        """L**e for any integer e, negative powers allowed."""
        if e >= 0:
            return cls(LPolynomial.l_power(e))
        return cls(1, LPolynomial.l_power(-e))

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_one(self):
        return self.num == LPolynomial.one() and self.den == LPolynomial.one()

    def __add__(self, other):
        other = _coerce(other)
        return RationalFunctionL(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionL(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        return RationalFunctionL(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero in Z(L)")
        return RationalFunctionL(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, e):
        if e < 0:
            return RationalFunctionL.one() / self ** (-e)
        r = RationalFunctionL.one()
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def eval_at(self, q):
        """Exact value at L = q; q may be int or Fraction."""
        q = Fraction(q)
        d = self.den.evaluate(q)
        if d == 0:
            raise PoleError(f"pole at L = {q}")
        return self.num.evaluate(q) / d

    def num_coeffs(self):
        return list(self.num.coeffs)

    def den_coeffs(self):
        return list(self.den.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, LPolynomial)):
            other = RationalFunctionL(other)
        return (
            isinstance(other, RationalFunctionL)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash(("RationalFunctionL", self.num.coeffs, self.den.coeffs))

    def __repr__(self):
        if self.den == LPolynomial.one():
            return _poly_str(self.num.coeffs)
        return f"({_poly_str(self.num.coeffs)}) / ({_poly_str(self.den.coeffs)})"


def _coerce(x):
    if isinstance(x, RationalFunctionL):
        return x
    if isinstance(x, (int, LPolynomial)):
        return RationalFunctionL(x)
    raise TypeError(f"cannot coerce {type(x).__name__} into Z(L)")


#: The generator L as a rational function, convenient for building formulas.
L = RationalFunctionL(LPolynomial.l_power(1))


def factorize(n):
    """Prime factorization of |n| by trial division, as a sorted list.

    Only used on small determinants and pivots collected while doing exact
    linear algebra; not a general purpose factoring routine.
    """
    n = abs(n)
    out = []
    if n < 2:
        return out
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return sorted(set(out))


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True

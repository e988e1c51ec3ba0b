"""Classes of hyperplane-arrangement strata as polynomials in L.

A stratum is cut out inside affine n-space by requiring a set of linear
forms to vanish and another set not to vanish.  Its class in the
Grothendieck ring is a polynomial in L, computed by deletion-restriction:

    [{l_i != 0, i <= m}] = [{l_i != 0, i < m}] - [{l_i|_U != 0, i < m}]

with U the kernel of the last form, and base case L^d for the empty
arrangement in dimension d.  A brute-force point counter over small finite
fields serves as the independent oracle.

Generic mode treats coefficients over Q and reports the set of bad primes,
every prime that could change the answer mod p: divisors of elimination
pivots, of contents of (restricted) forms, and of the 2x2 minor gcds of
form pairs that stay independent over Q but could collapse mod p.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ArcintError, BudgetError
from .exact import LPolynomial, factorize, is_prime
from .finitefield import fq_construct
from . import linalg

ENUMERATION_BUDGET = 10_000_000

GENERIC = "generic"


@dataclass(frozen=True)
class LinearForm:
    """Integer-coefficient linear form; coeffs[i] multiplies variable i."""

    coeffs: tuple

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    @property
    def n(self):
        return len(self.coeffs)

    @property
    def is_zero(self):
        return not any(self.coeffs)

    def content(self):
        return linalg.row_content(self.coeffs)

    def sign_normalized(self):
        return LinearForm(linalg.sign_normalized(self.coeffs))

    def primitive(self, bad=None):
        return LinearForm(
            linalg.sign_normalized(linalg.primitive_row(self.coeffs, bad)))

    def restrict(self, basis):
        """Coefficients of the form restricted to span(basis)."""
        return LinearForm(
            tuple(sum(c * v for c, v in zip(self.coeffs, vec)) for vec in basis))

    def support(self):
        return tuple(i for i, c in enumerate(self.coeffs) if c)

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = f"x{i + 1}" if abs(c) == 1 else f"{abs(c)}*x{i + 1}"
            if not parts:
                parts.append(mono if c > 0 else f"-{mono}")
            else:
                parts.append(f"+{mono}" if c > 0 else f"-{mono}")
        return "".join(parts) if parts else "0"


@dataclass(frozen=True)
class StratumSpec:
    """Stratum data: dimension, vanishing forms, non-vanishing forms.

    field_mode is either the string "generic" (coefficients over Q, with a
    reported bad-prime set) or a prime p (everything mod p).
    """

    n: int
    eq_forms: tuple
    neq_forms: tuple
    field_mode: object = GENERIC

    def __init__(self, n, eq_forms=(), neq_forms=(), field_mode=GENERIC):
        eq = tuple(f if isinstance(f, LinearForm) else LinearForm(f) for f in eq_forms)
        neq = tuple(f if isinstance(f, LinearForm) else LinearForm(f) for f in neq_forms)
        for f in eq + neq:
            if f.n != n:
                raise ArcintError(f"form {f} does not live in dimension {n}")
        if field_mode != GENERIC and not is_prime(field_mode):
            raise ArcintError("field_mode must be 'generic' or a prime")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "eq_forms", eq)
        object.__setattr__(self, "neq_forms", neq)
        object.__setattr__(self, "field_mode", field_mode)


@dataclass(frozen=True)
class StratumClass:
    """Result of stratum_class: the polynomial and its certificate."""

    poly: LPolynomial
    bad_primes: frozenset
    dim_kernel: int


def _normalize_p(form, p):
    """Scale so the first nonzero coefficient is 1 mod p; None if zero."""
    coeffs = tuple(c % p for c in form.coeffs)
    lead = next((c for c in coeffs if c), None)
    if lead is None:
        return None
    inv = pow(lead, p - 2, p)
    return tuple((c * inv) % p for c in coeffs)


def kernel_restrict(spec):
    """Intersect the kernels of the vanishing forms and restrict to them.

    Returns a new StratumSpec with empty eq_forms, living in dimension
    dim(U); restricted non-vanishing forms are expressed in coordinates of
    a deterministic basis of U.
    """
    new_spec, _bad, _zero = _kernel_restrict_impl(spec)
    return new_spec


def _kernel_restrict_impl(spec):
    bad = set()
    p = None if spec.field_mode == GENERIC else spec.field_mode
    rows = [f.coeffs for f in spec.eq_forms]
    if p is None:
        for f in spec.eq_forms + spec.neq_forms:
            c = f.content()
            if c > 1:
                bad.update(factorize(c))
        basis = linalg.kernel_q(rows, spec.n, bad)
    else:
        basis = linalg.kernel_p(rows, spec.n, p)
    restricted = []
    hit_zero = False
    for f in spec.neq_forms:
        g = f.restrict(basis)
        if p is not None:
            g = LinearForm(tuple(c % p for c in g.coeffs))
        if g.is_zero:
            hit_zero = True
        restricted.append(g)
    new_spec = StratumSpec(len(basis), (), tuple(restricted), spec.field_mode)
    return new_spec, bad, hit_zero


_CLASS_MEMO = {}


def clear_caches():
    _CLASS_MEMO.clear()


def _dedupe(forms, p, bad):
    """Drop proportional duplicates; record pair-collapse primes."""
    out = []
    if p is None:
        normalized = []
        for f in forms:
            g = f.primitive(bad)
            if g.coeffs not in normalized:
                normalized.append(g.coeffs)
        if bad is not None:
            for a, b in itertools.combinations(normalized, 2):
                bad.update(linalg.pair_collapse_primes(a, b))
        out = normalized
    else:
        seen = []
        for f in forms:
            g = _normalize_p(f, p)
            if g is None:
                raise ArcintError("zero form in arrangement")
            if g not in seen:
                seen.append(g)
        out = seen
    return sorted(out)


def _arrangement_class(forms, dim, p, bad):
    """Class of {all forms nonzero} in affine space of dimension dim.

    forms: sorted tuple of normalized coefficient tuples, pairwise
    non-proportional, none zero.
    """
    key = (dim, p, tuple(forms))
    hit = _CLASS_MEMO.get(key)
    if hit is not None:
        poly, cached_bad = hit
        if bad is not None:
            bad.update(cached_bad)
        return poly
    local_bad = set()
    if not forms:
        poly = LPolynomial.l_power(dim)
    else:
        rest = list(forms[:-1])
        last = forms[-1]
        deletion = _arrangement_class(tuple(rest), dim, p, local_bad)
        if p is None:
            basis = linalg.kernel_q([last], dim, local_bad)
        else:
            basis = linalg.kernel_p([last], dim, p)
        restricted = []
        empty = False
        for coeffs in rest:
            g = LinearForm(coeffs).restrict(basis)
            if p is not None:
                g = LinearForm(tuple(c % p for c in g.coeffs))
            if g.is_zero:
                empty = True
                break
            restricted.append(g)
        if empty:
            restr_class = LPolynomial.zero()
        else:
            deduped = _dedupe(restricted, p, local_bad)
            restr_class = _arrangement_class(tuple(deduped), dim - 1, p, local_bad)
        poly = deletion - restr_class
    _CLASS_MEMO[key] = (poly, frozenset(local_bad))
    if bad is not None:
        bad.update(local_bad)
    return poly


def stratum_class(spec):
    """Class of the stratum as a StratumClass (polynomial + bad primes)."""
    p = None if spec.field_mode == GENERIC else spec.field_mode
    reduced, bad, hit_zero = _kernel_restrict_impl(spec)
    if hit_zero:
        return StratumClass(LPolynomial.zero(), frozenset(bad), reduced.n)
    if reduced.n == 0 and reduced.neq_forms:
        return StratumClass(LPolynomial.zero(), frozenset(bad), 0)
    deduped = _dedupe(reduced.neq_forms, p, bad) if reduced.neq_forms else []
    poly = _arrangement_class(tuple(deduped), reduced.n, p, bad)
    return StratumClass(poly, frozenset(bad), reduced.n)


def count_stratum_points(spec, q):
    """Exhaustive point count of the stratum over F_q (q = p^i)."""
    factors = factorize(q)
    if len(factors) != 1:
        raise ArcintError(f"{q} is not a prime power")
    p = factors[0]
    i = 1
    t = q
    while t > p:
        t //= p
        i += 1
    if q**spec.n > ENUMERATION_BUDGET:
        raise BudgetError(f"{q}^{spec.n} points exceed the enumeration budget")
    if i == 1:
        eq = [tuple(c % p for c in f.coeffs) for f in spec.eq_forms]
        neq = [tuple(c % p for c in f.coeffs) for f in spec.neq_forms]
        count = 0
        for point in itertools.product(range(p), repeat=spec.n):
            if any(sum(c * x for c, x in zip(f, point)) % p for f in eq):
                continue
            if any(sum(c * x for c, x in zip(f, point)) % p == 0 for f in neq):
                continue
            count += 1
        return count
    field = fq_construct(p, i)
    eq = [tuple(field.from_int(c) for c in f.coeffs) for f in spec.eq_forms]
    neq = [tuple(field.from_int(c) for c in f.coeffs) for f in spec.neq_forms]

    def dot(f, point):
        acc = 0
        for c, x in zip(f, point):
            acc = field.add(acc, field.mul(c, x))
        return acc

    count = 0
    for point in itertools.product(range(q), repeat=spec.n):
        if any(dot(f, point) for f in eq):
            continue
        if any(dot(f, point) == 0 for f in neq):
            continue
        count += 1
    return count

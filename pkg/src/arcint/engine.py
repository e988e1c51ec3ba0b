"""Motivic integration of absolute values of products of linear forms.

Two algorithms compute I(S) = integral of |prod l_i| over the arc space of
affine n-space, both returning exact elements of Z(L):

* the stratified recursion: condition on which forms vanish modulo the
  uniformizer; each stratum contributes its arrangement class times a power
  of L times a smaller integral, and the all-vanishing stratum is absorbed
  into the left-hand side, which stays invertible.  Valid for arbitrary
  forms in equal characteristic; in mixed characteristic for forms in at
  most two variables with coefficients lifting multiplicatively (integer
  coefficients 0, 1, -1), and at residue characteristic 2 only for
  coordinate differences x_i - x_j.

* the general-forms algorithm: works for arbitrary integer forms at all
  but finitely many residue characteristics; it tracks an explicit
  bad-prime set (determinants of the changes of basis it performs) instead
  of a structural validity condition, integrating over regions cut out by
  vanishing constraints and eliminating non-vanishing conditions by
  inclusion-exclusion.

Validity is always reported, never enforced: the engine computes the
equal-characteristic answer for any input and attaches the caveats, since
the whole point of the bad-prime machinery is that the formula genuinely
fails at the excluded primes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .arrangements import GENERIC, LinearForm, StratumSpec, stratum_class
from .errors import ArcintError, InternalError, SingularMatrixError
from .exact import LPolynomial, RationalFunctionL, factorize
from .finitefield import ZeroDimClass, degree_multiset
from . import linalg


@dataclass(frozen=True)
class FormProduct:
    """Multiset of nonzero linear forms in n variables, the integrand.

    Forms are stored sign-normalized (first nonzero coefficient positive,
    which never changes the absolute value) and sorted, so equal multisets
    compare and hash equal.
    """

    n: int
    forms: tuple

    def __init__(self, n, forms):
        normalized = []
        for f in forms:
            f = f if isinstance(f, LinearForm) else LinearForm(f)
            if f.n != n:
                raise ArcintError(f"form {f} does not live in dimension {n}")
            if f.is_zero:
                raise ArcintError("zero form in a form product")
            normalized.append(f.sign_normalized())
        normalized.sort(key=lambda f: f.coeffs)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "forms", tuple(normalized))

    @property
    def degree(self):
        return len(self.forms)

    def key(self):
        return (self.n, tuple(f.coeffs for f in self.forms))

    def __repr__(self):
        inner = ", ".join(map(repr, self.forms))
        return f"FormProduct(n={self.n}, [{inner}])"


MIXED_ALL = "all"
MIXED_ODD = "odd"
MIXED_OUTSIDE_BAD = "outside_bad_primes"
MIXED_UNKNOWN = "unknown"

BULLET_DIFFERENCE = "coordinate_difference"
BULLET_UNIT_PAIR = "two_unit_coefficients"
BULLET_GENERAL = "general"


@dataclass(frozen=True)
class ValidityReport:
    """Where the computed formula is certified to specialize correctly.

    equal_char: the equal-characteristic series setting, always fine for
    products of linear forms.  mixed_char grades the Witt-vector setting:
    "all" primes, all "odd" primes, primes "outside_bad_primes", or
    "unknown" (no certificate from this computation).  rationale lists the
    classification of each form.
    """

    equal_char: bool
    mixed_char: str
    bad_primes: frozenset
    rationale: tuple

    def admits_prime(self, p):
        if self.mixed_char == MIXED_ALL:
            return p not in self.bad_primes
        if self.mixed_char == MIXED_ODD:
            return p != 2 and p not in self.bad_primes
        if self.mixed_char == MIXED_OUTSIDE_BAD:
            return p not in self.bad_primes
        return False

    def as_dict(self):
        return {
            "equal_char": self.equal_char,
            "mixed_char": self.mixed_char,
            "bad_primes": sorted(self.bad_primes),
            "rationale": [dict(r) for r in self.rationale],
        }


@dataclass(frozen=True)
class MotivicResult:
    value: RationalFunctionL
    validity: ValidityReport
    method: str
    trace: tuple = None


def _classify_form(f):
    nz = [c for c in f.coeffs if c]
    if len(nz) == 2 and sorted(nz) == [-1, 1]:
        return BULLET_DIFFERENCE
    if len(nz) <= 2 and all(abs(c) == 1 for c in nz):
        return BULLET_UNIT_PAIR
    return BULLET_GENERAL


def classify_validity(fp):
    """Per-form validity bullets and the resulting mixed-characteristic grade.

    Coefficients 0, 1, -1 are exactly the integers that are multiplicative
    lifts at every odd prime; at p = 2 only coordinate differences are
    covered, and anything else is conservatively left to the bad-prime
    algorithm.
    """
    rationale = []
    bullets = set()
    for f in fp.forms:
        b = _classify_form(f)
        bullets.add(b)
        rationale.append((("form", repr(f)), ("bullet", b)))
    if bullets <= {BULLET_DIFFERENCE}:
        grade = MIXED_ALL
    elif bullets <= {BULLET_DIFFERENCE, BULLET_UNIT_PAIR}:
        grade = MIXED_ODD
    else:
        grade = MIXED_UNKNOWN
    return ValidityReport(True, grade, frozenset(), tuple(rationale))


# ---------------------------------------------------------------------------
# separation of variables


def _blocks(form_coeffs, n):
    """Connected components of the variable-form incidence graph.

    Returns a list of (renumbered form tuples, block dimension); variables
    appearing in no form are dropped (each contributes a factor 1).
    """
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for f in form_coeffs:
        sup = [i for i, c in enumerate(f) if c]
        for i in sup[1:]:
            parent[find(i)] = find(sup[0])
    groups = {}
    for f in form_coeffs:
        sup = [i for i, c in enumerate(f) if c]
        root = find(sup[0])
        groups.setdefault(root, []).append(f)
    out = []
    for root in sorted(groups, key=lambda r: min(
            i for f in groups[r] for i, c in enumerate(f) if c)):
        used = sorted({i for f in groups[root] for i, c in enumerate(f) if c})
        index = {v: j for j, v in enumerate(used)}
        renumbered = tuple(sorted(
            tuple(f[v] if v in index else 0 for v in used) for f in groups[root]))
        out.append((renumbered, len(used)))
    return out


def separate_variables(fp):
    """Split a product into independent blocks on disjoint variables."""
    return [FormProduct(dim, forms) for forms, dim in _blocks(
        [f.coeffs for f in fp.forms], fp.n)]


# ---------------------------------------------------------------------------
# the stratified recursion

_PRODUCT_MEMO = {}
_NODES = {}


@dataclass(frozen=True)
class RecursionNode:
    """One memoized recursion step, kept so the defining identity can be
    re-checked: lhs_factor * value - sum(terms) must be exactly zero."""

    forms: tuple
    n: int
    lhs_factor: RationalFunctionL
    terms: tuple
    value: RationalFunctionL
    children: tuple


def clear_caches():
    _PRODUCT_MEMO.clear()
    _NODES.clear()
    _GENERAL_MEMO.clear()


def recursion_nodes():
    """All memoized recursion nodes computed so far."""
    return list(_NODES.values())


def _integral(form_coeffs, n):
    """Value and bad primes for the integral of |prod forms| in dim n."""
    if not form_coeffs:
        return RationalFunctionL.one(), frozenset()
    blocks = _blocks(form_coeffs, n)
    if len(blocks) == 1 and blocks[0][1] == n:
        return _recursion_block(blocks[0][0], n)
    value = RationalFunctionL.one()
    bad = set()
    for forms, dim in blocks:
        v, b = _recursion_block(forms, dim)
        value = value * v
        bad.update(b)
    return value, frozenset(bad)


def _recursion_block(forms, n):
    """One connected block with no dead variables; forms canonical."""
    key = (n, forms)
    hit = _PRODUCT_MEMO.get(key)
    if hit is not None:
        return hit
    s = len(forms)
    bad = set()
    total = RationalFunctionL.zero()
    terms = []
    children = []
    for mask in range(2**s - 1):
        t_forms = tuple(forms[i] for i in range(s) if mask >> i & 1)
        rest = tuple(forms[i] for i in range(s) if not mask >> i & 1)
        eq = sorted(set(t_forms))
        neq = sorted(set(rest))
        if set(eq) & set(neq):
            continue
        sc = stratum_class(StratumSpec(n, eq, neq, GENERIC))
        bad.update(sc.bad_primes)
        if sc.poly.is_zero:
            continue
        sub_value, sub_bad = _integral(tuple(sorted(t_forms)), n)
        bad.update(sub_bad)
        term = (RationalFunctionL(sc.poly)
                * RationalFunctionL.l_power(-(len(t_forms) + n))
                * sub_value)
        terms.append(term)
        children.append(tuple(sorted(t_forms)))
        total = total + term
    hs = stratum_class(StratumSpec(n, sorted(set(forms)), (), GENERIC))
    bad.update(hs.bad_primes)
    lhs = RationalFunctionL.one() - (
        RationalFunctionL(hs.poly) * RationalFunctionL.l_power(-(s + n)))
    if lhs.is_zero:
        raise InternalError("vanishing left-hand factor in the recursion")
    value = total / lhs
    result = (value, frozenset(bad))
    _PRODUCT_MEMO[key] = result
    _NODES[key] = RecursionNode(forms, n, lhs, tuple(terms), value, tuple(children))
    return result


def integrate_product(fp, with_trace=False):
    """Integral of |prod l_i| by the stratified recursion.

    Works symbolically for any input; the attached validity report says
    for which residue characteristics the mixed-characteristic
    specialization is certified.
    """
    blocks = _blocks([f.coeffs for f in fp.forms], fp.n)
    value, bad = _integral(tuple(f.coeffs for f in fp.forms), fp.n)
    base = classify_validity(fp)
    validity = ValidityReport(True, base.mixed_char, frozenset(bad), base.rationale)
    method = "product-split" if len(blocks) > 1 else "strata"
    trace = _collect_trace(fp) if with_trace else None
    return MotivicResult(value, validity, method, trace)


def _collect_trace(fp):
    out = []
    seen = set()
    stack = []
    for forms, dim in _blocks([f.coeffs for f in fp.forms], fp.n):
        stack.append((dim, forms))
    while stack:
        key = stack.pop()
        if key in seen or key not in _NODES:
            continue
        seen.add(key)
        node = _NODES[key]
        out.append({
            "forms": [list(f) for f in node.forms],
            "dim": node.n,
            "value_num": list(node.value.num.coeffs),
            "value_den": list(node.value.den.coeffs),
        })
        for child in node.children:
            for forms, dim in _blocks(list(child), node.n):
                stack.append((dim, forms))
    return tuple(out)


def conditioned_term(fp, t_indices):
    """Contribution of one stratum: arrangement class of {forms in T vanish,
    the rest do not} times L^(-|T|-n) times the integral over T."""
    t_indices = sorted(set(t_indices))
    t_forms = tuple(fp.forms[i].coeffs for i in t_indices)
    rest = tuple(f.coeffs for i, f in enumerate(fp.forms) if i not in t_indices)
    eq = sorted(set(t_forms))
    neq = sorted(set(rest))
    if set(eq) & set(neq):
        return RationalFunctionL.zero()
    sc = stratum_class(StratumSpec(fp.n, eq, neq, GENERIC))
    if sc.poly.is_zero:
        return RationalFunctionL.zero()
    sub_value, _ = _integral(tuple(sorted(t_forms)), fp.n)
    return (RationalFunctionL(sc.poly)
            * RationalFunctionL.l_power(-(len(t_forms) + fp.n))
            * sub_value)


def uniformizer_scale_term(fp):
    """Integral over the region where every coordinate has positive order.

    For a homogeneous integrand of degree s in n variables this is
    L^(-s-n) times the full integral.
    """
    value, _ = _integral(tuple(f.coeffs for f in fp.forms), fp.n)
    return RationalFunctionL.l_power(-(fp.degree + fp.n)) * value


def change_of_variables(fp, matrix):
    """Compose every form with an integer matrix (x -> x M).

    Returns the transformed product and the set of primes dividing the
    determinant or any stripped content; outside those primes the integral
    is unchanged.
    """
    m = [list(map(int, row)) for row in matrix]
    if len(m) != fp.n or any(len(r) != fp.n for r in m):
        raise ArcintError("matrix size does not match the dimension")
    d = linalg.det_int(m)
    if d == 0:
        raise SingularMatrixError("change of variables must be invertible over Q")
    bad = set(factorize(d))
    new_forms = []
    for f in fp.forms:
        coeffs = tuple(sum(m[i][j] * f.coeffs[j] for j in range(fp.n))
                       for i in range(fp.n))
        new_forms.append(LinearForm(linalg.primitive_row(coeffs, bad)))
    return FormProduct(fp.n, new_forms), frozenset(bad)


# ---------------------------------------------------------------------------
# the general-forms algorithm

_GENERAL_MEMO = {}


def _canonical_constraints(cons, bad):
    out = set()
    for c in cons:
        row = linalg.sign_normalized(linalg.primitive_row(tuple(c), bad))
        if any(row):
            out.add(row)
    return tuple(sorted(out))


def _lex_first_basis(rows, n, bad):
    for combo in itertools.combinations(range(len(rows)), n):
        d = linalg.det_int([rows[i] for i in combo])
        if d != 0:
            bad.update(factorize(d))
            return combo
    raise InternalError("no nonsingular subset in a full-rank family")


def _general(forms, cons, n):
    """Integral of |prod forms| over {constraints vanish mod uniformizer}.

    forms: canonical multiset of coefficient tuples (with content), cons:
    canonical set of primitive constraint rows.  Returns (value, bad
    primes).
    """
    key = (forms, cons, n)
    hit = _GENERAL_MEMO.get(key)
    if hit is not None:
        return hit
    bad = set()
    for f in forms:
        c = linalg.row_content(f)
        if c > 1:
            bad.update(factorize(c))
    distinct_rows = []
    for row in forms + cons:
        row = linalg.sign_normalized(linalg.primitive_row(row, bad))
        if row not in distinct_rows:
            distinct_rows.append(row)

    # kernel reduction: split off the common kernel of all forms and
    # constraints; the integral over that factor is 1.
    kernel = linalg.kernel_q(distinct_rows, n, bad)
    if kernel:
        r = n - len(kernel)
        selection = None
        for combo in itertools.combinations(range(n), r):
            m = [[1 if j == c else 0 for j in range(n)] for c in combo]
            m += [list(v) for v in kernel]
            d = linalg.det_int(m)
            if d != 0:
                selection = combo
                bad.update(factorize(d))
                break
        if selection is None:
            raise InternalError("kernel completion failed")
        new_forms = tuple(sorted(
            linalg.sign_normalized(tuple(f[j] for j in selection)) for f in forms))
        new_cons = _canonical_constraints(
            [tuple(c[j] for j in selection) for c in cons], bad)
        value, sub_bad = _general(new_forms, new_cons, r)
        bad.update(sub_bad)
        result = (value, frozenset(bad))
        _GENERAL_MEMO[key] = result
        return result

    s = len(forms)
    if s == 0:
        if n == 0:
            result = (RationalFunctionL.one(), frozenset(bad))
        else:
            # constraints have full rank: the region is where every
            # coordinate has positive order, of measure L^(-n)
            _lex_first_basis(list(cons), n, bad)
            result = (RationalFunctionL.l_power(-n), frozenset(bad))
        _GENERAL_MEMO[key] = result
        return result

    strata = RationalFunctionL.zero()
    for mask in range(2**s - 1):
        t_forms = tuple(sorted(forms[i] for i in range(s) if mask >> i & 1))
        rest_idx = [i for i in range(s) if not mask >> i & 1]
        # eliminate the non-vanishing conditions by inclusion-exclusion
        for sub in range(2 ** len(rest_idx)):
            extra = [forms[rest_idx[j]] for j in range(len(rest_idx)) if sub >> j & 1]
            parity = -1 if bin(sub).count("1") % 2 else 1
            cset = _canonical_constraints(
                list(cons) + list(t_forms) + extra, bad)
            v, b = _general(t_forms, cset, n)
            bad.update(b)
            strata = strata + v * parity

    ordered = [linalg.sign_normalized(linalg.primitive_row(f, bad))
               for f in dict.fromkeys(forms)]
    ordered += [c for c in cons if c not in ordered]
    _lex_first_basis(ordered, n, bad)
    if cons:
        full, b = _general(forms, (), n)
        bad.update(b)
        value = RationalFunctionL.l_power(-(n + s)) * full + strata
    else:
        denom = RationalFunctionL.one() - RationalFunctionL.l_power(-(s + n))
        if denom.is_zero:
            raise InternalError("vanishing denominator in the general algorithm")
        value = strata / denom
    result = (value, frozenset(bad))
    _GENERAL_MEMO[key] = result
    return result


def integrate_general(fp, constraints=()):
    """Integral of |prod l_i| over {given constraints vanish}, for arbitrary
    integer forms, certified outside an explicit bad-prime set."""
    bad = set()
    cons = _canonical_constraints(
        [c.coeffs if isinstance(c, LinearForm) else tuple(c) for c in constraints],
        bad)
    forms = tuple(f.coeffs for f in fp.forms)
    value, b = _general(forms, cons, fp.n)
    bad.update(b)
    rationale = tuple(
        (("form", repr(f)), ("bullet", BULLET_GENERAL)) for f in fp.forms)
    validity = ValidityReport(True, MIXED_OUTSIDE_BAD, frozenset(bad), rationale)
    return MotivicResult(value, validity, "general")


# ---------------------------------------------------------------------------
# one-variable integrals and cylinder measures


@dataclass(frozen=True)
class OneVarResult:
    """Integral of |f| for one-variable f with separable reduction.

    The value is 1 - [C]/(L+1) where C is the zero locus of f mod p, a
    zero-dimensional class remembered by its degree multiset.  Evaluation
    at q = p^i counts points of C over F_q.
    """

    cls: ZeroDimClass
    p: int

    def eval_at(self, i):
        q = self.p**i
        return 1 - Fraction(self.cls.point_count(i), q + 1)

    def as_rational_function(self):
        """The value as an element of Z(L); only when C is a sum of
        rational points, i.e. every irreducible factor is linear."""
        if set(self.cls.counts) - {1}:
            raise ArcintError(
                "class is not a polynomial in L; use eval_at instead")
        c = self.cls.counts.get(1, 0)
        return RationalFunctionL(LPolynomial((1 - c, 1)), LPolynomial((1, 1)))

    def __repr__(self):
        return f"1 - [C]/(L+1) with C = {self.cls}"


def integrate_onevar(f, p):
    """One-variable integral; requires f mod p separable and non-constant."""
    return OneVarResult(degree_multiset(f, p), p)


@dataclass(frozen=True)
class NewtonMeasure:
    """Measure of {ord f >= level} for separable one-variable f: the class
    of the residue zero locus times L^(-level)."""

    cls: object
    p: int
    level: int

    def eval_at(self, i):
        if self.level == 0:
            return Fraction(1)
        q = self.p**i
        return Fraction(self.cls.point_count(i), q**self.level)

    def __repr__(self):
        if self.level == 0:
            return "1"
        return f"[{self.cls}] * L^-{self.level}"


def newton_measure(f, p, level):
    """Measure of the cylinder {ord f >= level}, exact for every level >= 1
    thanks to unique lifting of simple residue roots."""
    if level < 0:
        raise ArcintError("level must be >= 0")
    if level == 0:
        return NewtonMeasure(None, p, 0)
    return NewtonMeasure(degree_multiset(f, p), p, level)

"""Brute-force integration over truncated discrete valuation rings.

Ground truth for every symbolic result.  Three residue-ring models share
one enumeration path:

* Z/p^k            (the p-adic integers truncated at depth k)
* W_k(F_q)         (truncated Witt vectors, exercising the witt module)
* F_q[t]/(t^k)     (the equal-characteristic series setting, carry-free)

The integral of |prod forms| over ring^n is enclosed in an exact rational
bracket: every residue class either determines the order of every form
(contributing measure * q^-sigma to both bounds) or leaves some order
undetermined at depth k, in which case the class contributes 0 to the
lower bound and its worst case q^-(sigma + undetermined*k) to the upper
bound.  The geometric tail makes the width at most q^-k.

Enumeration is row-major over coordinate residues in chunks; sums are
integer-exact, so chunk order never matters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ArcintError, BudgetError
from .exact import LPolynomial, factorize
from .finitefield import fq_construct
from .witt import witt_context

ENUMERATION_BUDGET = 10_000_000
TABLE_BUDGET = 1_000_000


@dataclass(frozen=True)
class Bracket:
    """Exact rational enclosure of a truncated integral."""

    lower: Fraction
    upper: Fraction
    depth: int
    q: int

    @property
    def width(self):
        return self.upper - self.lower

    def contains(self, x):
        return self.lower <= Fraction(x) <= self.upper


# ---------------------------------------------------------------------------
# residue rings


class ZpkRing:
    """Z/p^k with codes 0..p^k-1."""

    def __init__(self, p, k):
        self.p = p
        self.q = p
        self.k = k
        self.size = p**k
        if self.size * self.size > TABLE_BUDGET:
            raise BudgetError(f"residue ring of size {self.size} too large to tabulate")
        size = self.size
        self.add_table = [[(a + b) % size for b in range(size)] for a in range(size)]
        ords = []
        for a in range(size):
            if a == 0:
                ords.append(k)
                continue
            o = 0
            while a % p == 0:
                a //= p
                o += 1
            ords.append(o)
        self.ord_of = ords

    def from_int(self, n):
        return n % self.size

    def scalar_row(self, c):
        return [(c * v) % self.size for v in range(self.size)]

    def mul(self, a, b):
        return (a * b) % self.size


class WittRing:
    """W_k(F_q) with codes encoding coordinate tuples in base q.

    All arithmetic comes from the structure polynomials reduced mod p, so
    agreement with ZpkRing at q = p is a genuine cross-check of the ghost
    solve.
    """

    def __init__(self, p, i, k):
        self.field = fq_construct(p, i)
        self.ctx = witt_context(p, k)
        self.p = p
        self.q = self.field.q
        self.k = k
        self.size = self.q**k
        if self.size * self.size > TABLE_BUDGET:
            raise BudgetError(f"residue ring of size {self.size} too large to tabulate")
        self._decode = [self._decode_code(c) for c in range(self.size)]
        sums, prods, _ = self.ctx.modp_polys()
        self._sum_polys = [self._compile(f) for f in sums]
        self._prod_polys = [self._compile(f) for f in prods]
        maxexp = 1
        for f in sums + prods:
            for exps in f.terms:
                maxexp = max(maxexp, max(exps))
        fld = self.field
        self._pow = [[1] * (maxexp + 1) for _ in range(self.q)]
        for x in range(self.q):
            row = self._pow[x]
            for e in range(1, maxexp + 1):
                row[e] = fld.mul(row[e - 1], x) if e > 1 else x
        self.add_table = self._build_table(self._sum_polys)
        self._mul_table = None
        self.ord_of = [next((j for j, d in enumerate(dec) if d), k)
                       for dec in self._decode]

    def _decode_code(self, c):
        digits = []
        for _ in range(self.k):
            digits.append(c % self.q)
            c //= self.q
        return tuple(digits)

    def _encode(self, digits):
        c = 0
        for d in reversed(digits):
            c = c * self.q + d
        return c

    @staticmethod
    def _compile(poly):
        return [(tuple((i, e) for i, e in enumerate(exps) if e), c)
                for exps, c in poly.terms.items()]

    def _eval_polys(self, polys, values):
        fld = self.field
        powers = self._pow
        out = []
        for terms in polys:
            acc = 0
            for exps, coeff in terms:
                t = coeff  # coefficients live in 0..p-1, already field codes
                for idx, e in exps:
                    t = fld.mul(t, powers[values[idx]][e])
                acc = fld.add(acc, t)
            out.append(acc)
        return out

    def _build_table(self, polys):
        size = self.size
        table = [[0] * size for _ in range(size)]
        for a in range(size):
            da = self._decode[a]
            row = table[a]
            for b in range(a + 1):
                code = self._encode(self._eval_polys(polys, da + self._decode[b]))
                row[b] = code
                table[b][a] = code
        return table

    @property
    def mul_table(self):
        if self._mul_table is None:
            self._mul_table = self._build_table(self._prod_polys)
        return self._mul_table

    def from_int(self, n):
        coords = self.ctx.int_coordinates(n)
        return self._encode([self.field.from_int(c) for c in coords])

    def scalar_row(self, c):
        dc = self._decode[c]
        return [self._encode(self._eval_polys(self._prod_polys, dc + self._decode[v]))
                for v in range(self.size)]

    def mul(self, a, b):
        return self._encode(
            self._eval_polys(self._prod_polys, self._decode[a] + self._decode[b]))


class SeriesRing:
    """F_q[t]/(t^k) with the same code layout as WittRing, carry-free."""

    def __init__(self, p, i, k):
        self.field = fq_construct(p, i)
        self.p = p
        self.q = self.field.q
        self.k = k
        self.size = self.q**k
        if self.size * self.size > TABLE_BUDGET:
            raise BudgetError(f"residue ring of size {self.size} too large to tabulate")
        self._decode = [self._decode_code(c) for c in range(self.size)]
        fld = self.field
        size = self.size
        self.add_table = [
            [self._encode([fld.add(x, y) for x, y in zip(self._decode[a], self._decode[b])])
             for b in range(size)]
            for a in range(size)
        ]
        self.ord_of = [next((j for j, d in enumerate(dec) if d), k)
                       for dec in self._decode]

    def _decode_code(self, c):
        digits = []
        for _ in range(self.k):
            digits.append(c % self.q)
            c //= self.q
        return tuple(digits)

    def _encode(self, digits):
        c = 0
        for d in reversed(digits):
            c = c * self.q + d
        return c

    def from_int(self, n):
        return self.field.from_int(n)

    def mul(self, a, b):
        fld = self.field
        da, db = self._decode[a], self._decode[b]
        out = [0] * self.k
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if i + j >= self.k:
                        break
                    if y:
                        out[i + j] = fld.add(out[i + j], fld.mul(x, y))
        return self._encode(out)

    def scalar_row(self, c):
        return [self.mul(c, v) for v in range(self.size)]


_RING_CACHE = {}


def _ring(kind, p, i, k):
    key = (kind, p, i, k)
    ring = _RING_CACHE.get(key)
    if ring is None:
        if kind == "zp":
            ring = ZpkRing(p, k)
        elif kind == "wq":
            ring = WittRing(p, i, k)
        else:
            ring = SeriesRing(p, i, k)
        _RING_CACHE[key] = ring
    return ring


# ---------------------------------------------------------------------------
# the shared enumeration core


def _encoded_order_table(ring, s):
    """enc(ord) folded through the addition table.

    Per-form order data is packed so that a plain integer sum over forms
    decodes to (sum of determined orders, number of undetermined forms):
    determined order o encodes as o*(s+1), undetermined as k*(s+1)+1.
    """
    k = ring.k
    enc = [o * (s + 1) if o < k else k * (s + 1) + 1 for o in ring.ord_of]
    return [[enc[v] for v in row] for row in ring.add_table]


def _accumulate(ring, coeff_rows, n, s, chunk=None):
    """Histogram over residue classes of the packed (sigma, u) code.

    coeff_rows[f][j] maps a coordinate code to the contribution of
    coordinate j to form f.  `chunk` optionally restricts the outermost
    coordinate to a range, for chunked runs.
    """
    size = ring.size
    add = ring.add_table
    encadd = _encoded_order_table(ring, s)
    hist = [0] * (s * (ring.k * (s + 1) + 1) + 2)
    zero = (0,) * s

    def scan(level, partials):
        cons = [coeff_rows[f][level] for f in range(s)]
        domain = chunk if (level == 0 and chunk is not None) else range(size)
        if level == n - 1:
            rows = [encadd[partials[f]] for f in range(s)]
            if s == 1:
                r0, c0 = rows[0], cons[0]
                for v in domain:
                    hist[r0[c0[v]]] += 1
            elif s == 2:
                r0, r1 = rows
                c0, c1 = cons
                for v in domain:
                    hist[r0[c0[v]] + r1[c1[v]]] += 1
            elif s == 3:
                r0, r1, r2 = rows
                c0, c1, c2 = cons
                for v in domain:
                    hist[r0[c0[v]] + r1[c1[v]] + r2[c2[v]]] += 1
            else:
                rng = range(s)
                for v in domain:
                    hist[sum(rows[f][cons[f][v]] for f in rng)] += 1
        else:
            for v in domain:
                scan(level + 1,
                     tuple(add[partials[f]][cons[f][v]] for f in range(s)))

    scan(0, zero)
    return hist


def _bracket_from_hist(hist, ring, n, s):
    q, k = ring.q, ring.k
    smax = s * k
    lower_num = 0
    gap_num = 0
    for code, cnt in enumerate(hist):
        if not cnt:
            continue
        u = code % (s + 1)
        sigma = code // (s + 1) - u * k
        if u == 0:
            lower_num += cnt * q ** (smax - sigma)
        else:
            gap_num += cnt * q ** (smax - sigma - u * k)
    denom = q ** (k * n + smax)
    return Bracket(Fraction(lower_num, denom),
                   Fraction(lower_num + gap_num, denom), k, q)


def _bracket(ring, fp):
    n, s = fp.n, fp.degree
    if ring.size**n > ENUMERATION_BUDGET:
        raise BudgetError(
            f"enumerating {ring.size}^{n} residue classes exceeds the budget")
    if s == 0:
        return Bracket(Fraction(1), Fraction(1), ring.k, ring.q)
    coeff_rows = [
        [ring.scalar_row(ring.from_int(c)) for c in f.coeffs]
        for f in fp.forms
    ]
    hist = _accumulate(ring, coeff_rows, n, s)
    return _bracket_from_hist(hist, ring, n, s)


def padic_bracket_zp(fp, p, k):
    """Bracket for the integral over (Z/p^k-truncated) p-adic n-space."""
    return _bracket(_ring("zp", p, 1, k), fp)


def padic_bracket_wq(fp, p, i, k):
    """Bracket over W_k(F_q)^n, q = p^i, via genuine Witt arithmetic.

    At i = 1 the result is identical, fraction for fraction, to
    padic_bracket_zp; that equality cross-validates the structure
    polynomials.
    """
    return _bracket(_ring("wq", p, i, k), fp)


def equalchar_bracket(fp, q, k):
    """Bracket over (F_q[t]/t^k)^n, the equal-characteristic setting."""
    factors = factorize(q)
    if len(factors) != 1:
        raise ArcintError(f"{q} is not a prime power")
    p = factors[0]
    i = 0
    t = q
    while t > 1:
        t //= p
        i += 1
    return _bracket(_ring("eq", p, i, k), fp)


# ---------------------------------------------------------------------------
# cylinder counting


def _poly_terms(f):
    """Normalize a polynomial argument to (coeff, exponent tuple) pairs."""
    if isinstance(f, LPolynomial):
        return [(c, (e,)) for e, c in enumerate(f.coeffs) if c], 1
    if isinstance(f, dict):
        nvars = len(next(iter(f)))
        return [(c, tuple(e)) for e, c in f.items() if c], nvars
    coeffs = list(f)
    return [(c, (e,)) for e, c in enumerate(coeffs) if c], 1


def cylinder_count(f, p, i, m, level=None):
    """Points x in W_level(F_q)^d with ord f(x) >= m (f(x) = 0 in W_m).

    `level` >= m is the truncation depth of the enumeration and defaults
    to m; the count scales by q^(d*(level-m')) when the condition is stable,
    which is exactly what unique root lifting predicts for separable
    one-variable f.  The cylinder measure is count * q^(-level*d).
    """
    if level is None:
        level = m
    if level < m or m < 0:
        raise ArcintError("need 0 <= m <= level")
    ring = _ring("wq", p, i, max(level, 1))
    terms, d = _poly_terms(f)
    if ring.size**d > ENUMERATION_BUDGET:
        raise BudgetError("cylinder enumeration exceeds the budget")
    coeff_codes = [(ring.from_int(c), exps) for c, exps in terms]
    mul = ring.mul
    add = ring.add_table
    count = 0
    if m == 0:
        return ring.size**d
    import itertools as _it

    for point in _it.product(range(ring.size), repeat=d):
        acc = 0
        for code, exps in coeff_codes:
            t = code
            for idx, e in enumerate(exps):
                for _ in range(e):
                    t = mul(t, point[idx])
            acc = add[acc][t]
        if ring.ord_of[acc] >= m:
            count += 1
    return count

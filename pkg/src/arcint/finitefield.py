"""Finite fields F_{p^i} and point counting for zero-dimensional classes.

Field elements are integer codes 0 .. q-1 encoding residue polynomials in
base p (little endian digits).  Construction finds the modulus by
exhaustive search in a fixed counting order, so repeated construction is
reproducible.  Small add/mul tables make the codes cheap to use inside the
brute-force enumeration loops elsewhere in the package.
"""

from __future__ import annotations

from .errors import ArcintError, BudgetError, SeparabilityError
from .exact import LPolynomial, is_prime

DEFAULT_FIELD_BUDGET = 1024


# ---------------------------------------------------------------------------
# polynomials over F_p as little-endian int tuples


def _ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for j, y in enumerate(m):
            a[shift + j] = (a[shift + j] - c * y) % p
        while a and a[-1] == 0:
            a.pop()
    return tuple(a)


def _pmonic(a, p):
    inv = pow(a[-1], p - 2, p)
    return tuple((c * inv) % p for c in a)


def _pgcd(a, b, p):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return _pmonic(a, p) if a else ()

def _pderiv(a, p):
    return _ptrim(tuple((i * c) % p for i, c in enumerate(a)))[1:] if len(a) > 1 else ()


def _ppow_xq(e, modulus, p):
    """X**e mod modulus over F_p by square and multiply on the exponent."""
    result = (0, 1) if len(modulus) > 2 else _pmod((0, 1), modulus, p)
    result = _pmod(result, modulus, p)
    base = result
    # compute X^e: start from X and square along the bits of e
    acc = (1,)
    while e:
        if e & 1:
            acc = _pmod(_pmul(acc, base, p), modulus, p)
        base = _pmod(_pmul(base, base, p), modulus, p)
        e >>= 1
    return acc


def _deriv_gcd_is_constant(f, p):
    d = _pderiv(f, p)
    if not d:
        return False
    return len(_pgcd(f, d, p)) == 1


def _is_irreducible(f, p):
    """Irreducibility of a monic f over F_p, degree >= 1."""
    deg = len(f) - 1
    if deg == 1:
        return True
    # X^(p^deg) must reduce to X, and for every prime r | deg the map
    # X^(p^(deg/r)) - X must be coprime to f.
    xq = _ppow_xq(p**deg, f, p)
    if _ptrim(tuple((c - (1 if i == 1 else 0)) % p for i, c in enumerate(
            list(xq) + [0] * max(0, 2 - len(xq))))):
        return False
    r = 2
    rest = deg
    checked = set()
    while r * r <= rest:
        if rest % r == 0:
            checked.add(r)
            while rest % r == 0:
                rest //= r
        r += 1
    if rest > 1:
        checked.add(rest)
    for r in checked:
        h = _ppow_xq(p ** (deg // r), f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(_ptrim(diff), f, p)
        if len(g) != 1:
            return False
    return True


def find_irreducible(p, i):
    """Lex-first monic irreducible of degree i over F_p.

    Candidates are X^i + c_{i-1} X^{i-1} + ... + c_0 ordered by the integer
    sum(c_j p^j); the first irreducible one wins.  For i = 1 this yields
    the polynomial X itself.
    """
    for m in range(p**i):
        coeffs = []
        t = m
        for _ in range(i):
            coeffs.append(t % p)
            t //= p
        f = tuple(coeffs) + (1,)
        if _is_irreducible(f, p):
            return f
    raise ArcintError(f"no irreducible polynomial of degree {i} over F_{p}")


class FqField:
    """The field with q = p^i elements, elements encoded as ints 0..q-1.

    Code c encodes the residue polynomial sum(digit_j(c) X^j) with digits
    of c in base p.  Addition and multiplication are table lookups.
    """

    def __init__(self, p, i, max_size=DEFAULT_FIELD_BUDGET):
        if not is_prime(p):
            raise ArcintError(f"{p} is not prime")
        if i < 1:
            raise ArcintError("extension degree must be >= 1")
        q = p**i
        if q > max_size:
            raise BudgetError(f"field size {q} exceeds budget {max_size}")
        self.p = p
        self.i = i
        self.q = q
        self.modulus = find_irreducible(p, i)
        self._build_tables()

    def _decode(self, c):
        digits = []
        for _ in range(self.i):
            digits.append(c % self.p)
            c //= self.p
        return _ptrim(digits)

    def _encode(self, poly):
        c = 0
        for d in reversed(poly):
            c = c * self.p + d
        return c

    def _build_tables(self):
        p, q = self.p, self.q
        polys = [self._decode(c) for c in range(q)]
        self.add_table = [
            [self._encode(_ptrim([( (polys[a][k] if k < len(polys[a]) else 0)
                                   + (polys[b][k] if k < len(polys[b]) else 0)) % p
                                  for k in range(self.i)]))
             for b in range(q)]
            for a in range(q)
        ]
        self.mul_table = [
            [self._encode(_pmod(_pmul(polys[a], polys[b], p), self.modulus, p))
             for b in range(q)]
            for a in range(q)
        ]
        self.neg_table = [self._encode(tuple((-c) % p for c in polys[a]))
                          for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            row = self.mul_table[a]
            for b in range(1, q):
                if row[b] == 1:
                    inv[a] = b
                    break
        self.inv_table = inv

    # element operations on codes
    def add(self, a, b):
        return self.add_table[a][b]

    def sub(self, a, b):
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self.inv_table[a]

    def pow(self, a, e):
        r = 1
        b = a
        while e:
            if e & 1:
                r = self.mul_table[r][b]
            b = self.mul_table[b][b]
            e >>= 1
        return r

    def from_int(self, n):
        return n % self.p

    def elements(self):
        return range(self.q)

    def __eq__(self, other):
        return (isinstance(other, FqField)
                and (self.p, self.i, self.modulus) == (other.p, other.i, other.modulus))

    def __hash__(self):
        return hash(("FqField", self.p, self.i, self.modulus))

    def __repr__(self):
        return f"F_{self.p}^{self.i} (modulus {list(self.modulus)})"


_FIELD_CACHE = {}


def fq_construct(p, i, max_size=DEFAULT_FIELD_BUDGET):
    """Deterministic construction of F_{p^i}; repeated calls share tables."""
    key = (p, i)
    field = _FIELD_CACHE.get(key)
    if field is None:
        field = FqField(p, i, max_size=max_size)
        _FIELD_CACHE[key] = field
    return field


class ZeroDimClass:
    """Class of Spec F_p[X]/(f) for separable f, by irreducible degrees.

    Stored as a map degree -> number of irreducible factors of that degree.
    Knowing only the degrees determines every point count: over F_{p^i}
    the class has sum(d * count(d) for d | i) points.
    """

    def __init__(self, counts):
        self.counts = {int(d): int(c) for d, c in counts.items() if c}
        for d, c in self.counts.items():
            if d < 1 or c < 1:
                raise ArcintError("invalid degree multiset")

    def total_degree(self):
        return sum(d * c for d, c in self.counts.items())

    def point_count(self, i):
        """Number of points over F_{p^i}."""
        return sum(d * c for d, c in self.counts.items() if i % d == 0)

    def __eq__(self, other):
        return isinstance(other, ZeroDimClass) and self.counts == other.counts

    def __hash__(self):
        return hash(("ZeroDimClass", tuple(sorted(self.counts.items()))))

    def __repr__(self):
        return f"ZeroDimClass({self.counts})"


def _coeffs_of(f):
    if isinstance(f, LPolynomial):
        return f.coeffs
    return tuple(f)


def count_roots(f, field):
    """Distinct roots of (f mod p) in the given F_{p^i}.

    Computed as deg gcd(X^q - X mod fbar, fbar) over F_p, which needs no
    factorization and no field arithmetic beyond the prime subfield.
    """
    p, q = field.p, field.q
    fbar = _ptrim(tuple(c % p for c in _coeffs_of(f)))
    if not fbar:
        raise ArcintError("polynomial vanishes mod p")
    if len(fbar) == 1:
        return 0
    xq = _ppow_xq(q, fbar, p)
    diff = list(xq) + [0] * max(0, 2 - len(xq))
    diff[1] = (diff[1] - 1) % p
    diff = _ptrim(diff)
    if not diff:
        return len(fbar) - 1
    g = _pgcd(diff, fbar, p)
    return len(g) - 1


def degree_multiset(f, p):
    """Distinct-degree decomposition of f mod p, for separable reductions.

    Iterates gcd(X^(p^j) - X, remaining) for j = 1, 2, ...; each gcd splits
    off the product of all irreducible factors of degree exactly j, whose
    count is deg/j.  Raises SeparabilityError naming the violated
    hypothesis when f mod p is constant or inseparable.
    """
    fbar = _ptrim(tuple(c % p for c in _coeffs_of(f)))
    if not fbar or len(fbar) == 1:
        raise SeparabilityError("reduction mod p is constant")
    if not _deriv_gcd_is_constant(fbar, p):
        raise SeparabilityError("reduction mod p is inseparable")
    g = _pmonic(fbar, p)
    counts = {}
    j = 1
    w = (0, 1)  # X^(p^j) mod g, maintained incrementally
    w = _pmod(w, g, p)
    while len(g) - 1 >= 1:
        if 2 * j > len(g) - 1:
            counts[len(g) - 1] = counts.get(len(g) - 1, 0) + 1
            break
        w = _ppow_xq(p**j, g, p) if j == 1 else _pmod(_ppow_frob(w, p, g), g, p)
        diff = list(w) + [0] * max(0, 2 - len(w))
        diff[1] = (diff[1] - 1) % p
        diff = _ptrim(diff)
        d = _pgcd(diff, g, p) if diff else g
        if len(d) - 1 > 0:
            counts[j] = (len(d) - 1) // j
            g = _pdivexact(g, d, p)
            w = _pmod(w, g, p) if len(g) > 1 else ()
        j += 1
    return ZeroDimClass(counts)


def _ppow_frob(w, p, modulus):
    """w^p mod modulus."""
    acc = (1,)
    base = w
    e = p
    while e:
        if e & 1:
            acc = _pmod(_pmul(acc, base, p), modulus, p)
        base = _pmod(_pmul(base, base, p), modulus, p)
        e >>= 1
    return acc


def _pdivexact(a, b, p):
    """a / b over F_p, exact."""
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    inv_lead = pow(b[-1], p - 2, p)
    for i in range(len(a) - 1, len(b) - 2, -1):
        c = (a[i] * inv_lead) % p
        out[i - (len(b) - 1)] = c
        if c:
            for j, y in enumerate(b):
                a[i - (len(b) - 1) + j] = (a[i - (len(b) - 1) + j] - c * y) % p
    if any(a):
        raise ArcintError("inexact division over F_p")
    return _ptrim(out)

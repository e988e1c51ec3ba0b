"""Exact linear algebra over Q and over F_p for linear forms.

Everything here works on small integer matrices (rows = forms).  The
rational-mode routines record, into a caller-supplied set, every prime that
could make the mod-p computation diverge from the rational one: primes
dividing pivot entries and primes dividing contents stripped from rows.
Outside those primes the echelon structure over F_p matches the one over Q.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import SingularMatrixError
from .exact import factorize


def row_content(row):
    c = 0
    for a in row:
        c = gcd(c, abs(a))
    return c


def primitive_row(row, bad=None):
    """Divide an integer row by its content; record the content's primes."""
    c = row_content(row)
    if c <= 1:
        return tuple(row)
    if bad is not None:
        bad.update(factorize(c))
    return tuple(a // c for a in row)


def sign_normalized(row):
    for a in row:
        if a:
            return tuple(row) if a > 0 else tuple(-x for x in row)
    return tuple(row)


def echelon_q(rows, n, bad=None):
    """Integer row echelon over Q with first-nonzero row-major pivoting.

    Returns (pivot_cols, reduced_rows).  Rows are kept integral by cross
    multiplication and content reduction; pivot values and stripped
    contents feed the bad-prime set when one is supplied.
    """
    work = [primitive_row(r, bad) for r in rows if any(r)]
    pivots = []
    reduced = []
    col = 0
    while col < n and work:
        pivot_row = None
        for r in work:
            if r[col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            col += 1
            continue
        work.remove(pivot_row)
        pv = pivot_row[col]
        if bad is not None:
            bad.update(factorize(pv))
        nxt = []
        for r in work:
            if r[col] != 0:
                r = tuple(pv * a - r[col] * b for a, b in zip(r, pivot_row))
                if any(r):
                    r = primitive_row(r, bad)
                else:
                    continue
            nxt.append(r)
        work = nxt
        pivots.append(col)
        reduced.append(pivot_row)
        col += 1
    return pivots, reduced


def kernel_q(rows, n, bad=None):
    """Primitive integer basis of the right kernel {x : row . x = 0}."""
    pivots, reduced = echelon_q(rows, n, bad)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            col = pivots[i]
            row = reduced[i]
            s = sum(Fraction(row[j]) * x[j] for j in range(col + 1, n))
            x[col] = -s / row[col]
        den = 1
        for v in x:
            den = den * v.denominator // gcd(den, v.denominator)
        vec = tuple(int(v * den) for v in x)
        basis.append(primitive_row(vec, bad))
    return basis


def rank_q(rows, n):
    pivots, _ = echelon_q(rows, n, None)
    return len(pivots)


def echelon_p(rows, n, p):
    """Row echelon over F_p, same pivoting scheme."""
    work = []
    for r in rows:
        r = tuple(a % p for a in r)
        if any(r):
            work.append(r)
    pivots = []
    reduced = []
    col = 0
    while col < n and work:
        pivot_row = None
        for r in work:
            if r[col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            col += 1
            continue
        work.remove(pivot_row)
        inv = pow(pivot_row[col], p - 2, p)
        pivot_row = tuple((a * inv) % p for a in pivot_row)
        nxt = []
        for r in work:
            if r[col] != 0:
                c = r[col]
                r = tuple((a - c * b) % p for a, b in zip(r, pivot_row))
                if not any(r):
                    continue
            nxt.append(r)
        work = nxt
        pivots.append(col)
        reduced.append(pivot_row)
        col += 1
    return pivots, reduced


def kernel_p(rows, n, p):
    pivots, reduced = echelon_p(rows, n, p)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for i in range(len(pivots) - 1, -1, -1):
            col = pivots[i]
            row = reduced[i]
            s = sum(row[j] * x[j] for j in range(col + 1, n)) % p
            x[col] = (-s * pow(row[col], p - 2, p)) % p
        basis.append(tuple(x))
    return basis


def det_int(matrix):
    """Determinant of a square integer matrix by fraction-free elimination."""
    m = [list(r) for r in matrix]
    n = len(m)
    if any(len(r) != n for r in m):
        raise SingularMatrixError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for i in range(n - 1):
        if m[i][i] == 0:
            swap = next((r for r in range(i + 1, n) if m[r][i] != 0), None)
            if swap is None:
                return 0
            m[i], m[swap] = m[swap], m[i]
            sign = -sign
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
            m[r][i] = 0
        prev = m[i][i]
    return sign * m[n - 1][n - 1] if n else 1


def pair_collapse_primes(a, b):
    """Primes at which two Q-independent integer rows become proportional.

    These divide every 2x2 minor; the gcd of the minors collects them.
    Returns an empty list when the rows are proportional over Q already.
    """
    g = 0
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(g, abs(a[i] * b[j] - a[j] * b[i]))
    if g == 0:
        return []
    return factorize(g)

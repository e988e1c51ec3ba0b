"""Sparse multivariate polynomials over Z or F_p.

Terms are stored as a dict from exponent tuples (fixed length = number of
variables) to nonzero integer coefficients.  When a modulus p is set the
coefficients live in 0..p-1 and arithmetic reduces mod p.  This is the
representation used for Witt structure polynomials and for the universal
coordinate polynomials of polynomial maps on Witt vectors.
"""

from __future__ import annotations

from .errors import InternalError


class MultiPoly:
    __slots__ = ("nvars", "modulus", "terms")

    def __init__(self, nvars, terms=None, modulus=None):
        self.nvars = nvars
        self.modulus = modulus
        clean = {}
        if terms:
            for exps, c in terms.items():
                if modulus is not None:
                    c = c % modulus
                if c:
                    if len(exps) != nvars:
                        raise InternalError("exponent vector length mismatch")
                    clean[tuple(exps)] = c
        self.terms = clean

    # constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars, modulus=None):
        return cls(nvars, {}, modulus)

    @classmethod
    def constant(cls, nvars, c, modulus=None):
        return cls(nvars, {(0,) * nvars: c}, modulus)

    @classmethod
    def variable(cls, nvars, index, modulus=None):
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1}, modulus)

    # predicates -------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if self.nvars != other.nvars or self.modulus != other.modulus:
            raise InternalError("mixed polynomial domains")

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.nvars, other, self.modulus)
        self._check(other)
        out = dict(self.terms)
        m = self.modulus
        for exps, c in other.terms.items():
            v = out.get(exps, 0) + c
            if m is not None:
                v %= m
            if v:
                out[exps] = v
            else:
                out.pop(exps, None)
        return MultiPoly(self.nvars, out, m)

    __radd__ = __add__

    def __neg__(self):
        m = self.modulus
        if m is None:
            return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()}, m)
        return MultiPoly(self.nvars, {e: (-c) % m for e, c in self.terms.items()}, m)

    def __sub__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.nvars, other, self.modulus)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        out = {}
        m = self.modulus
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if m is not None:
                    v %= m
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return MultiPoly(self.nvars, out, m)

    __rmul__ = __mul__

    def scale(self, c):
        m = self.modulus
        if m is not None:
            c %= m
        if c == 0:
            return MultiPoly.zero(self.nvars, m)
        out = {}
        for e, v in self.terms.items():
            w = v * c
            if m is not None:
                w %= m
            if w:
                out[e] = w
        return MultiPoly(self.nvars, out, m)

    def __pow__(self, e):
        if e < 0:
            raise InternalError("negative polynomial power")
        result = MultiPoly.constant(self.nvars, 1, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def divexact_int(self, d):
        """Divide every coefficient by the integer d; must be exact."""
        if self.modulus is not None:
            raise InternalError("exact integer division needs Z coefficients")
        out = {}
        for e, c in self.terms.items():
            if c % d != 0:
                raise InternalError(
                    f"inexact division by {d} while solving ghost equations")
            out[e] = c // d
        return MultiPoly(self.nvars, out, None)

    # structure --------------------------------------------------------

    def reduce_mod(self, p):
        return MultiPoly(self.nvars, self.terms, p)

    def map_variables(self, mapping, new_nvars):
        """Reindex variables; mapping[i] is the new index of variable i."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * new_nvars
            for i, ei in enumerate(e):
                if ei:
                    ne[mapping[i]] += ei
            key = tuple(ne)
            out[key] = out.get(key, 0) + c
        return MultiPoly(new_nvars, out, self.modulus)

    def substitute(self, index, replacement):
        """Substitute a polynomial for variable `index`."""
        self._check(replacement)
        acc = MultiPoly.zero(self.nvars, self.modulus)
        powers = {0: MultiPoly.constant(self.nvars, 1, self.modulus)}
        for e, c in self.terms.items():
            k = e[index]
            if k not in powers:
                powers[k] = replacement**k
            rest = list(e)
            rest[index] = 0
            mono = MultiPoly(self.nvars, {tuple(rest): c}, self.modulus)
            acc = acc + mono * powers[k]
        return acc

    def evaluate(self, ring, values, power_cache=None):
        """Evaluate over an arbitrary coefficient ring.

        `values` holds one ring element per variable; `power_cache` may be
        shared across evaluations on the same values to avoid recomputing
        element powers.
        """
        if power_cache is None:
            power_cache = [dict() for _ in range(self.nvars)]
        acc = ring.zero()
        for exps, coeff in self.terms.items():
            term = ring.from_int(coeff)
            for i, e in enumerate(exps):
                if e:
                    cache = power_cache[i]
                    v = cache.get(e)
                    if v is None:
                        v = _ring_pow(ring, values[i], e)
                        cache[e] = v
                    term = ring.mul(term, v)
            acc = ring.add(acc, term)
        return acc

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other):
        return (isinstance(other, MultiPoly)
                and self.nvars == other.nvars
                and self.modulus == other.modulus
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, self.modulus, tuple(sorted(self.terms.items()))))

    def dump(self):
        """Plain-text sparse form: one 'e1 e2 ... : coeff' line per monomial."""
        lines = []
        for exps in sorted(self.terms):
            lines.append(" ".join(map(str, exps)) + f" : {self.terms[exps]}")
        return "\n".join(lines)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            c = self.terms[exps]
            mono = "*".join(
                f"v{i}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exps) if e
            )
            if mono:
                parts.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                parts.append(str(c))
        return " + ".join(parts)


def _ring_pow(ring, x, e):
    r = ring.one()
    b = x
    while e:
        if e & 1:
            r = ring.mul(r, b)
        b = ring.mul(b, b) if e > 1 else b
        e >>= 1
    return r

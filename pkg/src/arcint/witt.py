"""Truncated p-typical Witt vectors over arbitrary commutative rings.

The ring structure on length-k vectors is carried by universal structure
polynomials S_m (sum) and P_m (product) with integer coefficients,
obtained by solving the ghost equations

    W_m(S_0..S_m) = W_m(X) + W_m(Y),   W_m(P_0..P_m) = W_m(X) * W_m(Y),

where W_m(Z) = sum(p^i * Z_i^(p^(m-i)) for i <= m).  Each step divides by
p^m; that division being exact over Z certifies correctness, so an inexact
division aborts instead of reducing mod p.

Beyond the ring operations this module provides the shift operator V
(Verschiebung), the multiplicative section R (Teichmuller lift), the
coordinatewise p-th power F (Frobenius, characteristic p only), order of
vanishing, evaluation of polynomials on Witt vectors, and the universal
coordinate polynomials of an integer polynomial map.
"""

from __future__ import annotations

import threading

from .errors import ArcintError, BudgetError, ContextMismatchError, InternalError
from .exact import is_prime
from .finitefield import FqField, fq_construct
from .multipoly import MultiPoly, _ring_pow

MAX_LENGTH = 5
MAX_PRIME = 7


# ---------------------------------------------------------------------------
# coefficient rings


class IntegerRing:
    """Plain Z; elements are Python ints."""

    char = 0

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, e):
        return a**e

    def is_zero(self, a):
        return a == 0

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("IntegerRing")

    def __repr__(self):
        return "Z"


class FieldRing:
    """Adapter putting an FqField behind the coefficient-ring interface."""

    def __init__(self, field: FqField):
        self.field = field
        self.char = field.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return self.field.from_int(n)

    def add(self, a, b):
        return self.field.add(a, b)

    def sub(self, a, b):
        return self.field.sub(a, b)

    def neg(self, a):
        return self.field.neg(a)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def pow(self, a, e):
        return self.field.pow(a, e)

    def is_zero(self, a):
        return a == 0

    def __eq__(self, other):
        return isinstance(other, FieldRing) and self.field == other.field

    def __hash__(self):
        return hash(("FieldRing", self.field))

    def __repr__(self):
        return repr(self.field)


class PolyRing:
    """Multivariate polynomials over Z or F_p as a coefficient ring."""

    def __init__(self, nvars, modulus=None):
        self.nvars = nvars
        self.modulus = modulus
        self.char = modulus if modulus is not None else 0

    def zero(self):
        return MultiPoly.zero(self.nvars, self.modulus)

    def one(self):
        return MultiPoly.constant(self.nvars, 1, self.modulus)

    def from_int(self, n):
        return MultiPoly.constant(self.nvars, n, self.modulus)

    def variable(self, i):
        return MultiPoly.variable(self.nvars, i, self.modulus)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, e):
        return a**e

    def is_zero(self, a):
        return a.is_zero

    def __eq__(self, other):
        return (isinstance(other, PolyRing)
                and (self.nvars, self.modulus) == (other.nvars, other.modulus))

    def __hash__(self):
        return hash(("PolyRing", self.nvars, self.modulus))

    def __repr__(self):
        base = "Z" if self.modulus is None else f"F_{self.modulus}"
        return f"{base}[{self.nvars} vars]"


# ---------------------------------------------------------------------------
# context: structure polynomials for a fixed (p, k)


class WittContext:
    """Structure polynomials and integer images for one (prime, length)."""

    def __init__(self, p, k):
        if not is_prime(p):
            raise ArcintError(f"{p} is not prime")
        if k < 1:
            raise ArcintError("length must be >= 1")
        if k > MAX_LENGTH or p > MAX_PRIME:
            raise BudgetError(
                f"context (p={p}, k={k}) outside the supported envelope "
                f"(k <= {MAX_LENGTH}, p <= {MAX_PRIME})")
        self.p = p
        self.k = k
        self.sum_polys = []   # in 2k vars: X_0..X_{k-1}, Y_0..Y_{k-1}
        self.prod_polys = []
        self.neg_polys = []   # in k vars: X_0..X_{k-1}
        self._solve_ghost_equations()
        self._modp = None
        self._int_images = {}
        self._lock = threading.Lock()

    # --- construction

    def _ghost(self, coords, m):
        """W_m of symbolic coordinates (list of MultiPoly)."""
        p = self.p
        acc = MultiPoly.zero(coords[0].nvars)
        for i in range(m + 1):
            acc = acc + (coords[i] ** (p ** (m - i))).scale(p**i)
        return acc

    def _solve_ghost_equations(self):
        p, k = self.p, self.k
        nv2 = 2 * k
        xs = [MultiPoly.variable(nv2, i) for i in range(k)]
        ys = [MultiPoly.variable(nv2, k + i) for i in range(k)]
        for m in range(k):
            target_sum = self._ghost(xs, m) + self._ghost(ys, m)
            target_prod = self._ghost(xs, m) * self._ghost(ys, m)
            for i in range(m):
                target_sum = target_sum - (self.sum_polys[i] ** (p ** (m - i))).scale(p**i)
                target_prod = target_prod - (self.prod_polys[i] ** (p ** (m - i))).scale(p**i)
            self.sum_polys.append(target_sum.divexact_int(p**m))
            self.prod_polys.append(target_prod.divexact_int(p**m))
        nxs = [MultiPoly.variable(k, i) for i in range(k)]
        for m in range(k):
            target = -self._ghost(nxs, m)
            for i in range(m):
                target = target - (self.neg_polys[i] ** (p ** (m - i))).scale(p**i)
            self.neg_polys.append(target.divexact_int(p**m))

    # --- derived data

    def modp_polys(self):
        """Structure polynomials reduced mod p, for characteristic-p rings."""
        if self._modp is None:
            p = self.p
            self._modp = (
                [f.reduce_mod(p) for f in self.sum_polys],
                [f.reduce_mod(p) for f in self.prod_polys],
                [f.reduce_mod(p) for f in self.neg_polys],
            )
        return self._modp

    def int_coordinates(self, n):
        """Witt coordinates over Z of the integer n (ghost all equal n)."""
        coords = self._int_images.get(n)
        if coords is None:
            p = self.p
            out = []
            for m in range(self.k):
                t = n - sum(p**i * out[i] ** (p ** (m - i)) for i in range(m))
                if t % p**m != 0:
                    raise InternalError("inexact division in integer Witt image")
                out.append(t // p**m)
            coords = tuple(out)
            self._int_images[n] = coords
        return coords

    def ghost_of(self, coeffs):
        """Integer ghost components of integer coordinates; for testing."""
        p = self.p
        return tuple(
            sum(p**i * coeffs[i] ** (p ** (m - i)) for i in range(m + 1))
            for m in range(self.k)
        )

    def dump_structure_polys(self):
        """Plain-text dump for cross-checking against other systems."""
        lines = []
        for name, polys in (("S", self.sum_polys), ("P", self.prod_polys),
                            ("N", self.neg_polys)):
            for m, f in enumerate(polys):
                lines.append(f"# {name}_{m} (p={self.p})")
                lines.append(f.dump())
        return "\n".join(lines)

    def __repr__(self):
        return f"WittContext(p={self.p}, k={self.k})"


_CONTEXTS = {}
_CONTEXT_LOCK = threading.Lock()


def witt_context(p, k):
    """Shared context for (p, k); built once, concurrent reads are safe."""
    key = (p, k)
    ctx = _CONTEXTS.get(key)
    if ctx is None:
        with _CONTEXT_LOCK:
            ctx = _CONTEXTS.get(key)
            if ctx is None:
                ctx = WittContext(p, k)
                _CONTEXTS[key] = ctx
    return ctx


# ---------------------------------------------------------------------------
# vectors


class WittVector:
    """Length-k Witt vector with coefficients in an arbitrary ring."""

    __slots__ = ("ctx", "ring", "coeffs")

    def __init__(self, ctx, ring, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != ctx.k:
            raise ContextMismatchError(
                f"expected {ctx.k} coordinates, got {len(coeffs)}")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("WittVector is immutable")

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ctx, ring):
        return cls(ctx, ring, (ring.zero(),) * ctx.k)

    @classmethod
    def one(cls, ctx, ring):
        return cls(ctx, ring, (ring.one(),) + (ring.zero(),) * (ctx.k - 1))

    @classmethod
    def teichmuller(cls, ctx, ring, c):
        """The multiplicative lift (c, 0, ..., 0)."""
        return cls(ctx, ring, (c,) + (ring.zero(),) * (ctx.k - 1))

    @classmethod
    def from_int(cls, ctx, ring, n):
        coords = ctx.int_coordinates(n)
        return cls(ctx, ring, tuple(ring.from_int(c) for c in coords))

    # helpers --------------------------------------------------------------

    def _compat(self, other):
        if self.ctx is not other.ctx and (self.ctx.p, self.ctx.k) != (other.ctx.p, other.ctx.k):
            raise ContextMismatchError("mixed Witt contexts")
        if self.ring != other.ring:
            raise ContextMismatchError("mixed coefficient rings")

    def _structure(self, which):
        if self.ring.char == self.ctx.p:
            return self.ctx.modp_polys()[which]
        return (self.ctx.sum_polys, self.ctx.prod_polys, self.ctx.neg_polys)[which]

    def _eval_pair(self, polys, other):
        values = self.coeffs + other.coeffs
        cache = [dict() for _ in values]
        return WittVector(
            self.ctx, self.ring,
            tuple(f.evaluate(self.ring, values, cache) for f in polys))

    # ring operations --------------------------------------------------

    def __add__(self, other):
        self._compat(other)
        return self._eval_pair(self._structure(0), other)

    def __mul__(self, other):
        self._compat(other)
        return self._eval_pair(self._structure(1), other)

    def __neg__(self):
        polys = self._structure(2)
        cache = [dict() for _ in self.coeffs]
        return WittVector(
            self.ctx, self.ring,
            tuple(f.evaluate(self.ring, self.coeffs, cache) for f in polys))

    def __sub__(self, other):
        return self + (-other)

    def __pow__(self, e):
        if e < 0:
            raise ArcintError("negative power of a Witt vector")
        r = WittVector.one(self.ctx, self.ring)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b if e > 1 else b
            e >>= 1
        return r

    def mul_int(self, n):
        """n * a by repeated addition (n >= 0) or via negation."""
        if n < 0:
            return (-self).mul_int(-n)
        acc = WittVector.zero(self.ctx, self.ring)
        add = self
        while n:
            if n & 1:
                acc = acc + add
            add = add + add if n > 1 else add
            n >>= 1
        return acc

    # operators ----------------------------------------------------------

    def verschiebung(self):
        """Shift coordinates right, dropping the last."""
        return WittVector(
            self.ctx, self.ring,
            (self.ring.zero(),) + self.coeffs[:-1])

    def frobenius(self):
        """Coordinatewise p-th power; needs characteristic p coefficients."""
        if self.ring.char != self.ctx.p:
            raise ArcintError(
                "Frobenius needs a coefficient ring of characteristic p")
        p = self.ctx.p
        return WittVector(
            self.ctx, self.ring,
            tuple(self.ring.pow(c, p) for c in self.coeffs))

    def ord(self):
        """Index of the first nonzero coordinate; k when all vanish.

        Meaningful as a valuation when the coefficient ring is an integral
        domain of characteristic p.
        """
        for i, c in enumerate(self.coeffs):
            if not self.ring.is_zero(c):
                return i
        return self.ctx.k

    def ghost(self):
        """Ghost components, computed in the coefficient ring."""
        p = self.ctx.p
        out = []
        for m in range(self.ctx.k):
            acc = self.ring.zero()
            for i in range(m + 1):
                t = self.ring.mul(
                    self.ring.from_int(p**i),
                    _ring_pow(self.ring, self.coeffs[i], p ** (m - i)))
                acc = self.ring.add(acc, t)
            out.append(acc)
        return tuple(out)

    def __eq__(self, other):
        return (isinstance(other, WittVector)
                and (self.ctx.p, self.ctx.k) == (other.ctx.p, other.ctx.k)
                and self.ring == other.ring
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.k, self.coeffs))

    def __repr__(self):
        return "(" + ", ".join(map(str, self.coeffs)) + ")"


def witt_eval_poly(terms, args):
    """Evaluate a polynomial with WittVector coefficients on Witt vectors.

    `terms` is a sequence of (coefficient, exponent tuple) pairs; the
    exponent tuples index into `args`.  All vectors must share context and
    ring.
    """
    if not args:
        raise ArcintError("need at least one argument vector")
    ctx, ring = args[0].ctx, args[0].ring
    acc = WittVector.zero(ctx, ring)
    for coeff, exps in terms:
        term = coeff
        for i, e in enumerate(exps):
            if e:
                term = term * args[i] ** e
        acc = acc + term
    return acc


def universal_coordinate_polys(int_terms, nvars, p, depth):
    """Coordinate polynomials of an integer polynomial map on Witt vectors.

    `int_terms` is a sequence of (integer coefficient, exponent tuple)
    pairs describing f in `nvars` variables.  The result is the list
    [f_0, ..., f_{depth-1}] of polynomials over F_p in the coordinate
    variables X_{i,j} (variable i, layer j), flattened as index i*depth+j,
    such that evaluating f on Witt vectors coordinatewise yields exactly
    these coordinates.
    """
    ctx = witt_context(p, depth)
    ring = PolyRing(nvars * depth, modulus=p)
    args = [
        WittVector(ctx, ring,
                   tuple(ring.variable(i * depth + j) for j in range(depth)))
        for i in range(nvars)
    ]
    terms = [(WittVector.from_int(ctx, ring, c), tuple(e)) for c, e in int_terms]
    value = witt_eval_poly(terms, args)
    return list(value.coeffs)

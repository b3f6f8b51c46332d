"""Realized finite rings with vectorized arithmetic over canonical indices.

Every element of a ring of order ``n`` is an integer index in ``range(n)``.
Composite constructions use a little-endian mixed-radix layout: the first
component is the least significant digit.  All arithmetic methods accept
Python ints or numpy integer arrays (broadcasting like numpy) so that
exhaustive scans run as array operations.
"""
from __future__ import annotations

import functools
import math
from functools import cached_property

import numpy as np

from . import limits
from .expr import (
    GaloisField,
    Matrix,
    MoritaZero,
    Product,
    RingDescriptor,
    Triangular,
    TrivialExt,
    Truncated,
    ZMod,
    descriptor_order,
    parse_ring_expr,
    prime_power,
    render,
)
from .literals import LiteralError, Poly, format_literal, parse_literal

__all__ = [
    "Ring",
    "RingBuildError",
    "build_ring",
    "ring",
    "CornerRing",
    "QuotientRing",
    "corner_ring",
    "generalized_matrix_view",
    "assemble_matrix_view",
    "check_axioms",
]

TABLE_LIMIT = 1024
_CHUNK = 1 << 22

# fixed moduli for the non-prime fields, low-order coefficient first
GF_MODULI = {4: (1, 1, 1), 8: (1, 1, 0, 1), 9: (1, 0, 1)}


class RingBuildError(ValueError):
    pass


def _as_index(x):
    return np.asarray(x, dtype=np.int64)


def _out(r):
    r = np.asarray(r)
    return int(r) if r.ndim == 0 else r


class Ring:
    """Base class: subclasses provide ``_add_s``, ``_neg_s`` and ``_mul_s``."""

    descriptor: RingDescriptor | None = None
    order: int
    one: int
    zero = 0

    @property
    def name(self) -> str:
        return render(self.descriptor) if self.descriptor is not None else self._name

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} order={self.order}>"

    def __hash__(self) -> int:
        return id(self)

    def __eq__(self, other) -> bool:
        return self is other

    # -- raw arithmetic ---------------------------------------------------
    @cached_property
    def _tables(self):
        if self.order > TABLE_LIMIT:
            return None
        idx = np.arange(self.order, dtype=np.int64)
        return (
            np.asarray(self._add_s(idx[:, None], idx[None, :]), dtype=np.int64),
            np.asarray(self._neg_s(idx), dtype=np.int64),
            np.asarray(self._mul_s(idx[:, None], idx[None, :]), dtype=np.int64),
        )

    def _add(self, a, b):
        t = self._tables
        return t[0][a, b] if t is not None else self._add_s(a, b)

    def _neg(self, a):
        t = self._tables
        return t[1][a] if t is not None else self._neg_s(a)

    def _mul(self, a, b):
        t = self._tables
        return t[2][a, b] if t is not None else self._mul_s(a, b)

    def _sub(self, a, b):
        return self._add(a, self._neg(b))

    # -- public arithmetic -------------------------------------------------
    def add(self, a, b):
        return _out(self._add(_as_index(a), _as_index(b)))

    def neg(self, a):
        return _out(self._neg(_as_index(a)))

    def sub(self, a, b):
        return _out(self._sub(_as_index(a), _as_index(b)))

    def mul(self, a, b):
        return _out(self._mul(_as_index(a), _as_index(b)))

    def pow(self, a, k: int):
        if k < 1:
            raise ValueError("exponent must be >= 1")
        a = _as_index(a)
        result = None
        base = a
        while k:
            if k & 1:
                result = base if result is None else self._mul(result, base)
            k >>= 1
            if k:
                base = self._mul(base, base)
        return _out(result)

    def times(self, k: int, a):
        """The additive multiple k·a (k may be negative)."""
        a = _as_index(a)
        if k < 0:
            k, a = -k, self._neg(a)
        acc = np.zeros_like(a)
        base = a
        while k:
            if k & 1:
                acc = self._add(acc, base)
            k >>= 1
            if k:
                base = self._add(base, base)
        return _out(acc)

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    @cached_property
    def characteristic(self) -> int:
        k, x = 1, self.one
        while x != self.zero:
            x = int(self._add(x, self.one))
            k += 1
        return k

    @property
    def is_commutative(self) -> bool:
        return self._commutative

    @cached_property
    def _commutative(self) -> bool:
        limits.require(self.order, "pair_budget", "commutativity scan")
        a = self.elements()
        for start in range(0, self.order, max(1, _CHUNK // self.order)):
            blk = a[start:start + max(1, _CHUNK // self.order)]
            if not np.array_equal(self._mul(blk[:, None], a[None, :]), self._mul(a[None, :], blk[:, None])):
                return False
        return True

    # -- literals ----------------------------------------------------------
    def to_struct(self, i: int):
        raise NotImplementedError

    def from_struct(self, obj) -> int:
        raise NotImplementedError

    def format(self, i) -> str:
        return format_literal(self.to_struct(int(i)))

    def parse(self, text: str) -> int:
        return self.from_struct(parse_literal(text))

    # -- units and nilpotents ---------------------------------------------
    def _inverse_s(self, a):
        return self._inverse_generic(a)

    def _inverse_generic(self, a):
        """Scan for b with ab = 1; returns -1 where a is not a unit."""
        limits.require(self.order, "pair_budget", f"generic inverse scan in {self.name}")
        a = np.asarray(a, dtype=np.int64)
        flat = a.ravel()
        out = np.full(flat.shape, -1, dtype=np.int64)
        allx = self.elements()
        step = max(1, _CHUNK // self.order)
        for start in range(0, flat.size, step):
            blk = flat[start:start + step]
            prods = self._mul(blk[:, None], allx[None, :])
            hit = prods == self.one
            found = hit.any(axis=1)
            first = hit.argmax(axis=1)
            out[start:start + step] = np.where(found, first, -1)
        return out.reshape(a.shape)

    def inverses(self, a) -> np.ndarray:
        """Two-sided inverses of ``a`` (array), ``-1`` marking non-units."""
        a = np.asarray(a, dtype=np.int64)
        inv = np.asarray(self._inverse_s(a), dtype=np.int64)
        ok = inv >= 0
        if ok.any():
            x, y = a[ok], inv[ok]
            # finite rings are Dedekind-finite; a failure here is a bug
            assert np.all(self._mul(x, y) == self.one), f"right inverse check failed in {self.name}"
            assert np.all(self._mul(y, x) == self.one), f"left inverse check failed in {self.name}"
        return inv

    def inverse(self, a: int) -> int | None:
        inv = int(self.inverses(np.asarray([a]))[0])
        return None if inv < 0 else inv

    @cached_property
    def nil_steps(self) -> int:
        # a^(2^s) with 2^s >= |R| decides nilpotency
        return max(1, math.ceil(math.log2(self.order)))

    def _nilpotent_s(self, a):
        x = np.asarray(a, dtype=np.int64)
        for _ in range(self.nil_steps):
            x = self._mul(x, x)
        return x == self.zero

    def nilpotent_mask(self, a) -> np.ndarray:
        return np.asarray(self._nilpotent_s(np.asarray(a, dtype=np.int64)), dtype=bool)

    def nilpotency_index(self, a: int) -> int | None:
        """Least k with a^k = 0, or None; found by bisection on the exponent."""
        if not bool(self.nilpotent_mask(np.asarray([a]))[0]):
            return None
        lo, hi = 1, 1 << self.nil_steps
        while lo < hi:
            mid = (lo + hi) // 2
            if self.pow(a, mid) == self.zero:
                hi = mid
            else:
                lo = mid + 1
        return lo

    # -- structure hooks for fast radical rules ---------------------------
    def jacobson_structural(self) -> np.ndarray | None:
        """Membership mask of J(R) from a structural rule, or None."""
        return None


# ---------------------------------------------------------------------------
# base rings


class ZModRing(Ring):
    def __init__(self, n: int, descriptor=None):
        self.n = n
        self.order = n
        self.one = 1 % n
        self.descriptor = descriptor if descriptor is not None else ZMod(n)

    _tables = None

    def _add_s(self, a, b):
        return (a + b) % self.n

    def _neg_s(self, a):
        return (-a) % self.n

    def _mul_s(self, a, b):
        return (a * b) % self.n

    _commutative = True

    @cached_property
    def _inv_table(self) -> np.ndarray:
        out = np.full(self.n, -1, dtype=np.int64)
        for x in range(self.n):
            if math.gcd(x, self.n) == 1:
                out[x] = pow(x, -1, self.n)
        return out

    def _inverse_s(self, a):
        return self._inv_table[a]

    def to_struct(self, i):
        return int(i)

    def from_struct(self, obj):
        if not isinstance(obj, int):
            raise LiteralError(f"{self.name} expects an integer literal, got {format_literal(obj)}")
        return obj % self.n

    def jacobson_structural(self):
        rad = 1
        m, p = self.n, 2
        while m > 1:
            if m % p == 0:
                rad *= p
                while m % p == 0:
                    m //= p
            p += 1
        return self.elements() % rad == 0


class TableRing(Ring):
    """A ring given by explicit operation tables (used for GF(4), GF(8), GF(9))."""

    def __init__(self, add, neg, mul, one, descriptor=None, name=""):
        self._t = (np.asarray(add), np.asarray(neg), np.asarray(mul))
        self.order = len(neg)
        self.one = one
        self.descriptor = descriptor
        self._name = name

    @property
    def _tables(self):
        return self._t

    def _add_s(self, a, b):
        return self._t[0][a, b]

    def _neg_s(self, a):
        return self._t[1][a]

    def _mul_s(self, a, b):
        return self._t[2][a, b]

    def to_struct(self, i):
        return int(i)

    def from_struct(self, obj):
        if not isinstance(obj, int) or not 0 <= obj < self.order:
            raise LiteralError(f"{self.name} expects an element index in 0..{self.order - 1}")
        return obj


def _galois_field(q: int) -> Ring:
    p, k = prime_power(q)
    if k == 1:
        return ZModRing(p, descriptor=GaloisField(q))
    if q not in GF_MODULI:
        raise RingBuildError(f"GF({q}) is not supported; available non-prime fields: 4, 8, 9")
    modulus = GF_MODULI[q]

    def digits(x):
        return [(x // p**i) % p for i in range(k)]

    def undigits(ds):
        return sum(int(d) * p**i for i, d in enumerate(ds))

    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    neg = np.zeros(q, dtype=np.int64)
    for x in range(q):
        dx = digits(x)
        neg[x] = undigits([(-d) % p for d in dx])
        for y in range(q):
            dy = digits(y)
            add[x, y] = undigits([(s + t) % p for s, t in zip(dx, dy)])
            prod = [0] * (2 * k - 1)
            for i, s in enumerate(dx):
                for j, t in enumerate(dy):
                    prod[i + j] += s * t
            # reduce by the monic modulus from the top degree down
            for deg in range(2 * k - 2, k - 1, -1):
                c = prod[deg] % p
                if c:
                    for i, mc in enumerate(modulus):
                        prod[deg - k + i] -= c * mc
            mul[x, y] = undigits([c % p for c in prod[:k]])
    field = TableRing(add, neg, mul, one=1, descriptor=GaloisField(q))
    field._commutative = True
    inv = np.full(q, -1, dtype=np.int64)
    for x in range(1, q):
        inv[x] = int(np.argmax(mul[x] == 1))
    field._inverse_s = lambda a, _inv=inv: _inv[a]
    field.jacobson_structural = lambda: np.arange(q) == 0
    return field


# ---------------------------------------------------------------------------
# composite rings


class TupleRing(Ring):
    """Rings whose additive group is a direct sum of component rings."""

    def _setup(self, comps: list[Ring]):
        self.comps = comps
        self.radix = [c.order for c in comps]
        self.place = []
        p = 1
        for r in self.radix:
            self.place.append(p)
            p *= r
        self.order = p

    def decode(self, a) -> list:
        a = np.asarray(a, dtype=np.int64)
        return [(a // pl) % r for pl, r in zip(self.place, self.radix)]

    def encode(self, parts) -> np.ndarray:
        out = None
        for x, pl in zip(parts, self.place):
            term = np.asarray(x, dtype=np.int64) * pl
            out = term if out is None else out + term
        return out

    def _add_s(self, a, b):
        A, B = self.decode(a), self.decode(b)
        return self.encode([c._add(x, y) for c, x, y in zip(self.comps, A, B)])

    def _neg_s(self, a):
        return self.encode([c._neg(x) for c, x in zip(self.comps, self.decode(a))])

    def _parts_of(self, i: int) -> list[int]:
        return [int(x) for x in self.decode(i)]

    # Neumann-series inverse for rings split as (diagonal) + (nilpotent ideal)
    def _diag_split(self, parts):
        """Return (diagonal component indices, nil bound); subclasses override."""
        raise NotImplementedError

    def _neumann_inverse(self, a):
        a = np.asarray(a, dtype=np.int64)
        parts = self.decode(a)
        diag_idx, bound = self._diag_split(parts)
        dparts = [np.zeros_like(a) for _ in self.comps]
        iparts = [np.zeros_like(a) for _ in self.comps]
        ok = np.ones(a.shape, dtype=bool)
        for i in diag_idx:
            dparts[i] = parts[i]
            inv = self.comps[i]._inverse_s(parts[i])
            ok &= inv >= 0
            iparts[i] = np.where(inv >= 0, inv, 0)
        d = self.encode(dparts)
        dinv = self.encode(iparts)
        m = self._mul(dinv, self._sub(a, d))
        neg_m = self._neg(m)
        term = np.full(a.shape, self.one, dtype=np.int64)
        total = term
        for _ in range(bound - 1):
            term = self._mul(term, neg_m)
            total = self._add(total, term)
        inv = self._mul(total, dinv)
        return np.where(ok, inv, -1)

    def _diag_nilpotent(self, a):
        parts = self.decode(a)
        diag_idx, _ = self._diag_split(parts)
        mask = np.ones(np.shape(a), dtype=bool)
        for i in diag_idx:
            mask &= self.comps[i].nilpotent_mask(parts[i])
        return mask


class ProductRing(TupleRing):
    def __init__(self, factors: list[Ring], descriptor=None):
        self._setup(factors)
        self.one = int(self.encode([f.one for f in factors]))
        self.descriptor = descriptor

    def _mul_s(self, a, b):
        A, B = self.decode(a), self.decode(b)
        return self.encode([c._mul(x, y) for c, x, y in zip(self.comps, A, B)])

    @cached_property
    def _commutative(self):
        return all(f.is_commutative for f in self.comps)

    def _inverse_s(self, a):
        parts = self.decode(a)
        invs = [c._inverse_s(x) for c, x in zip(self.comps, parts)]
        ok = np.ones(np.shape(a), dtype=bool)
        for v in invs:
            ok &= v >= 0
        return np.where(ok, self.encode([np.where(v >= 0, v, 0) for v in invs]), -1)

    def _nilpotent_s(self, a):
        mask = np.ones(np.shape(a), dtype=bool)
        for c, x in zip(self.comps, self.decode(a)):
            mask &= c.nilpotent_mask(x)
        return mask

    def to_struct(self, i):
        return tuple(c.to_struct(x) for c, x in zip(self.comps, self._parts_of(i)))

    def from_struct(self, obj):
        if not isinstance(obj, tuple) or len(obj) != len(self.comps):
            raise LiteralError(f"{self.name} expects a {len(self.comps)}-tuple")
        return int(self.encode([c.from_struct(x) for c, x in zip(self.comps, obj)]))

    def jacobson_structural(self):
        masks = [c.jacobson_structural() for c in self.comps]
        if any(m is None for m in masks):
            return None
        parts = self.decode(self.elements())
        out = np.ones(self.order, dtype=bool)
        for m, x in zip(masks, parts):
            out &= m[x]
        return out


class MatrixRing(TupleRing):
    def __init__(self, k: int, inner: Ring, descriptor=None):
        self.k = k
        self.inner = inner
        self._setup([inner] * (k * k))
        self.one = int(self.encode([inner.one if i == j else 0 for i in range(k) for j in range(k)]))
        self.descriptor = descriptor

    def entry(self, i, j):
        return i * self.k + j

    def _mul_s(self, a, b):
        A, B = self.decode(a), self.decode(b)
        k, R = self.k, self.inner
        out = []
        for i in range(k):
            for j in range(k):
                acc = R._mul(A[i * k], B[j])
                for l in range(1, k):
                    acc = R._add(acc, R._mul(A[i * k + l], B[l * k + j]))
                out.append(acc)
        return self.encode(out)

    @cached_property
    def _commutative(self):
        return self.k == 1 and self.inner.is_commutative

    def _det(self, M):
        R = self.inner
        n = len(M)
        if n == 1:
            return M[0][0]
        acc = None
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            term = R._mul(M[0][j], self._det(minor))
            if j % 2:
                term = R._neg(term)
            acc = term if acc is None else R._add(acc, term)
        return acc

    def _inverse_s(self, a):
        R, k = self.inner, self.k
        if not R.is_commutative:
            return self._inverse_generic(a)
        parts = self.decode(a)
        M = [[parts[i * k + j] for j in range(k)] for i in range(k)]
        det = self._det(M)
        dinv = R._inverse_s(det)
        ok = dinv >= 0
        dinv = np.where(ok, dinv, 0)
        if k == 1:
            return np.where(ok, self.encode([dinv]), -1)
        adj = [None] * (k * k)
        for i in range(k):
            for j in range(k):
                minor = [row[:j] + row[j + 1:] for r, row in enumerate(M) if r != i]
                c = self._det(minor)
                if (i + j) % 2:
                    c = R._neg(c)
                adj[j * k + i] = R._mul(dinv, c)
        return np.where(ok, self.encode(adj), -1)

    def to_struct(self, i):
        p = self._parts_of(i)
        R, k = self.inner, self.k
        return [[R.to_struct(p[r * k + c]) for c in range(k)] for r in range(k)]

    def from_struct(self, obj):
        k = self.k
        if not isinstance(obj, list) or len(obj) != k or any(not isinstance(r, list) or len(r) != k for r in obj):
            raise LiteralError(f"{self.name} expects a {k}x{k} row list")
        return int(self.encode([self.inner.from_struct(x) for row in obj for x in row]))

    def jacobson_structural(self):
        m = self.inner.jacobson_structural()
        if m is None:
            return None
        out = np.ones(self.order, dtype=bool)
        for x in self.decode(self.elements()):
            out &= m[x]
        return out


class TriangularRing(TupleRing):
    def __init__(self, k: int, inner: Ring, descriptor=None):
        self.k = k
        self.inner = inner
        self.cells = [(i, j) for i in range(k) for j in range(i, k)]
        self.pos = {c: n for n, c in enumerate(self.cells)}
        self._setup([inner] * len(self.cells))
        self.one = int(self.encode([inner.one if i == j else 0 for i, j in self.cells]))
        self.descriptor = descriptor

    def _mul_s(self, a, b):
        A, B = self.decode(a), self.decode(b)
        R, pos = self.inner, self.pos
        out = []
        for i, j in self.cells:
            acc = None
            for l in range(i, j + 1):
                t = R._mul(A[pos[i, l]], B[pos[l, j]])
                acc = t if acc is None else R._add(acc, t)
            out.append(acc)
        return self.encode(out)

    @cached_property
    def _commutative(self):
        return self.k == 1 and self.inner.is_commutative

    def _diag_split(self, parts):
        return [self.pos[i, i] for i in range(self.k)], self.k

    def _inverse_s(self, a):
        return self._neumann_inverse(a)

    def _nilpotent_s(self, a):
        return self._diag_nilpotent(a)

    def diagonal(self, i: int) -> list[int]:
        p = self._parts_of(i)
        return [p[self.pos[r, r]] for r in range(self.k)]

    def to_struct(self, i):
        p = self._parts_of(i)
        R = self.inner
        zero = R.to_struct(0)
        return [[R.to_struct(p[self.pos[r, c]]) if c >= r else zero for c in range(self.k)] for r in range(self.k)]

    def from_struct(self, obj):
        k, R = self.k, self.inner
        if not isinstance(obj, list) or len(obj) != k or any(not isinstance(r, list) or len(r) != k for r in obj):
            raise LiteralError(f"{self.name} expects a {k}x{k} row list")
        for r in range(k):
            for c in range(r):
                if R.from_struct(obj[r][c]) != 0:
                    raise LiteralError(f"{self.name}: entry ({r},{c}) below the diagonal must be zero")
        return int(self.encode([R.from_struct(obj[i][j]) for i, j in self.cells]))

    def jacobson_structural(self):
        m = self.inner.jacobson_structural()
        if m is None:
            return None
        parts = self.decode(self.elements())
        out = np.ones(self.order, dtype=bool)
        for r in range(self.k):
            out &= m[parts[self.pos[r, r]]]
        return out


class TruncatedRing(TupleRing):
    """R[x]/(x^n) as coefficient vectors; x is central."""

    def __init__(self, inner: Ring, n: int, descriptor=None):
        self.inner = inner
        self.n = n
        self._setup([inner] * n)
        self.one = int(self.encode([inner.one] + [0] * (n - 1)))
        self.descriptor = descriptor

    def _mul_s(self, a, b):
        A, B = self.decode(a), self.decode(b)
        R = self.inner
        out = []
        for d in range(self.n):
            acc = None
            for i in range(d + 1):
                t = R._mul(A[i], B[d - i])
                acc = t if acc is None else R._add(acc, t)
            out.append(acc)
        return self.encode(out)

    @cached_property
    def _commutative(self):
        return self.inner.is_commutative

    def _diag_split(self, parts):
        return [0], self.n

    def _inverse_s(self, a):
        return self._neumann_inverse(a)

    def _nilpotent_s(self, a):
        return self._diag_nilpotent(a)

    def monomial(self, degree: int, coeff: int | None = None) -> int:
        parts = [0] * self.n
        parts[degree] = self.inner.one if coeff is None else coeff
        return int(self.encode(parts))

    def to_struct(self, i):
        return Poly(self.inner.to_struct(x) for x in self._parts_of(i))

    def from_struct(self, obj):
        if isinstance(obj, int):
            obj = Poly([obj])
        if not isinstance(obj, Poly) or len(obj.coeffs) > self.n:
            raise LiteralError(f"{self.name} expects poly[c0,...] with at most {self.n} coefficients")
        cs = [self.inner.from_struct(c) for c in obj.coeffs]
        return int(self.encode(cs + [0] * (self.n - len(cs))))

    def jacobson_structural(self):
        m = self.inner.jacobson_structural()
        if m is None:
            return None
        return m[self.decode(self.elements())[0]]


class TrivialExtRing(TupleRing):
    """R ∝ R^m: pairs (r, v) with (r,v)(r',v') = (rr', rv' + vr')."""

    def __init__(self, inner: Ring, m: int, descriptor=None):
        self.inner = inner
        self.m = m
        self._setup([inner] * (m + 1))
        self.one = int(self.encode([inner.one] + [0] * m))
        self.descriptor = descriptor

    def _mul_s(self, a, b):
        A, B = self.decode(a), self.decode(b)
        R = self.inner
        out = [R._mul(A[0], B[0])]
        for i in range(1, self.m + 1):
            out.append(R._add(R._mul(A[0], B[i]), R._mul(A[i], B[0])))
        return self.encode(out)

    @cached_property
    def _commutative(self):
        return self.inner.is_commutative

    def _diag_split(self, parts):
        return [0], 2

    def _inverse_s(self, a):
        return self._neumann_inverse(a)

    def _nilpotent_s(self, a):
        return self._diag_nilpotent(a)

    def to_struct(self, i):
        p = self._parts_of(i)
        R = self.inner
        return (R.to_struct(p[0]), [R.to_struct(x) for x in p[1:]])

    def from_struct(self, obj):
        if not (isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[1], list) and len(obj[1]) == self.m):
            raise LiteralError(f"{self.name} expects (r,[v1,...,v{self.m}])")
        R = self.inner
        return int(self.encode([R.from_struct(obj[0])] + [R.from_struct(x) for x in obj[1]]))

    def jacobson_structural(self):
        m = self.inner.jacobson_structural()
        if m is None:
            return None
        return m[self.decode(self.elements())[0]]


class MoritaZeroRing(TupleRing):
    """[[S, S^m], [S^n, S]] with both pairings zero."""

    def __init__(self, inner: Ring, m: int, n: int, descriptor=None):
        self.inner = inner
        self.m, self.n = m, n
        self._setup([inner] * (2 + m + n))
        self.a_pos, self.b_pos = 0, 1 + m + n
        self.x_pos = list(range(1, 1 + m))
        self.y_pos = list(range(1 + m, 1 + m + n))
        self.one = int(self.encode([inner.one] + [0] * (m + n) + [inner.one]))
        self.descriptor = descriptor

    def _mul_s(self, a, b):
        A, B = self.decode(a), self.decode(b)
        R = self.inner
        out = [None] * len(self.comps)
        out[self.a_pos] = R._mul(A[self.a_pos], B[self.a_pos])
        out[self.b_pos] = R._mul(A[self.b_pos], B[self.b_pos])
        for p in self.x_pos:
            out[p] = R._add(R._mul(A[self.a_pos], B[p]), R._mul(A[p], B[self.b_pos]))
        for p in self.y_pos:
            out[p] = R._add(R._mul(A[p], B[self.a_pos]), R._mul(A[self.b_pos], B[p]))
        return self.encode(out)

    @cached_property
    def _commutative(self):
        return self.m == 0 and self.n == 0 and self.inner.is_commutative

    def _diag_split(self, parts):
        return [self.a_pos, self.b_pos], 2

    def _inverse_s(self, a):
        return self._neumann_inverse(a)

    def _nilpotent_s(self, a):
        return self._diag_nilpotent(a)

    @property
    def corner_idempotent(self) -> int:
        """diag(1, 0)."""
        parts = [0] * len(self.comps)
        parts[self.a_pos] = self.inner.one
        return int(self.encode(parts))

    def to_struct(self, i):
        p = self._parts_of(i)
        R = self.inner
        return (
            R.to_struct(p[self.a_pos]),
            [R.to_struct(p[q]) for q in self.x_pos],
            [R.to_struct(p[q]) for q in self.y_pos],
            R.to_struct(p[self.b_pos]),
        )

    def from_struct(self, obj):
        if not (
            isinstance(obj, tuple)
            and len(obj) == 4
            and isinstance(obj[1], list)
            and isinstance(obj[2], list)
            and len(obj[1]) == self.m
            and len(obj[2]) == self.n
        ):
            raise LiteralError(f"{self.name} expects (a,[x1..x{self.m}],[y1..y{self.n}],b)")
        R = self.inner
        parts = [0] * len(self.comps)
        parts[self.a_pos] = R.from_struct(obj[0])
        parts[self.b_pos] = R.from_struct(obj[3])
        for q, v in zip(self.x_pos, obj[1]):
            parts[q] = R.from_struct(v)
        for q, v in zip(self.y_pos, obj[2]):
            parts[q] = R.from_struct(v)
        return int(self.encode(parts))

    def jacobson_structural(self):
        m = self.inner.jacobson_structural()
        if m is None:
            return None
        parts = self.decode(self.elements())
        return m[parts[self.a_pos]] & m[parts[self.b_pos]]


# ---------------------------------------------------------------------------
# derived rings


class _Subquotient(Ring):
    """A ring carried by representatives ``reps`` of a parent ring."""

    def __init__(self, parent: Ring, reps: np.ndarray, label: np.ndarray, one_parent: int, name: str):
        if len(reps) < 2:
            raise RingBuildError(f"{name} is the zero ring")
        self.parent = parent
        self.reps = np.asarray(reps, dtype=np.int64)
        self.label = np.asarray(label, dtype=np.int64)
        self.order = len(self.reps)
        self.one = int(self.label[one_parent])
        self.zero = int(self.label[parent.zero])
        self._name = name
        assert self.zero == 0

    def _add_s(self, a, b):
        return self.label[self.parent._add(self.reps[a], self.reps[b])]

    def _neg_s(self, a):
        return self.label[self.parent._neg(self.reps[a])]

    def _mul_s(self, a, b):
        return self.label[self.parent._mul(self.reps[a], self.reps[b])]

    def to_struct(self, i):
        return self.parent.to_struct(int(self.reps[i]))

    def from_struct(self, obj):
        lab = int(self.label[self.parent.from_struct(obj)])
        if lab < 0:
            raise LiteralError(f"{format_literal(obj)} is not an element of {self.name}")
        return lab


class CornerRing(_Subquotient):
    """eRe with identity e; ``include`` and ``retract`` connect it to R."""

    def __init__(self, parent: Ring, e: int):
        allx = parent.elements()
        image = parent._mul(parent._mul(e, allx), e)
        reps = np.unique(image)
        label = np.full(parent.order, -1, dtype=np.int64)
        label[reps] = np.arange(len(reps))
        self.e = e
        super().__init__(parent, reps, label, e, f"corner({parent.name}, {parent.format(e)})")

    def include(self, i):
        return _out(self.reps[np.asarray(i)])

    def retract(self, x):
        x = np.asarray(x, dtype=np.int64)
        p = self.parent
        return _out(self.label[p._mul(p._mul(self.e, x), self.e)])


class QuotientRing(_Subquotient):
    """R/I with least-index coset representatives."""

    def __init__(self, parent: Ring, ideal_elements: np.ndarray, name: str | None = None):
        I = np.asarray(ideal_elements, dtype=np.int64)
        allx = parent.elements()
        mins = np.empty(parent.order, dtype=np.int64)
        step = max(1, _CHUNK // max(1, len(I)))
        for start in range(0, parent.order, step):
            blk = allx[start:start + step]
            mins[start:start + step] = parent._add(blk[:, None], I[None, :]).min(axis=1)
        reps = np.unique(mins)
        label = np.searchsorted(reps, mins)
        self.ideal = I
        super().__init__(parent, reps, label, parent.one, name or f"{parent.name}/I")

    def project(self, x):
        return _out(self.label[np.asarray(x, dtype=np.int64)])

    def section(self, i):
        return _out(self.reps[np.asarray(i, dtype=np.int64)])


# ---------------------------------------------------------------------------


def _realize(d: RingDescriptor) -> Ring:
    if isinstance(d, ZMod):
        return ZModRing(d.n)
    if isinstance(d, GaloisField):
        return _galois_field(d.q)
    if isinstance(d, Matrix):
        return MatrixRing(d.k, _cached(d.inner), descriptor=d)
    if isinstance(d, Triangular):
        return TriangularRing(d.k, _cached(d.inner), descriptor=d)
    if isinstance(d, Product):
        return ProductRing([_cached(f) for f in d.factors], descriptor=d)
    if isinstance(d, Truncated):
        return TruncatedRing(_cached(d.inner), d.n, descriptor=d)
    if isinstance(d, TrivialExt):
        return TrivialExtRing(_cached(d.inner), d.m, descriptor=d)
    if isinstance(d, MoritaZero):
        return MoritaZeroRing(_cached(d.inner), d.m, d.n, descriptor=d)
    raise TypeError(f"not a ring descriptor: {d!r}")


@functools.lru_cache(maxsize=128)
def _cached(d: RingDescriptor) -> Ring:
    return _realize(d)


def build_ring(d: RingDescriptor | str) -> Ring:
    """Realize a descriptor (or expression text), enforcing the max-order guard."""
    if isinstance(d, str):
        d = parse_ring_expr(d)
    n = descriptor_order(d)
    cap = limits.current().max_order
    if n > cap:
        raise limits.BudgetExceeded(f"{render(d)} has order {n}, above max-order {cap}")
    return _cached(d)


ring = build_ring


def corner_ring(R: Ring, e: int) -> CornerRing:
    if R.mul(e, e) != e:
        raise ValueError(f"{R.format(e)} is not idempotent in {R.name}")
    return CornerRing(R, e)


def generalized_matrix_view(R: Ring, e: int, a: int) -> tuple[int, int, int, int]:
    """Peirce components (eae, eaf, fae, faf) with f = 1 - e."""
    if R.mul(e, e) != e:
        raise ValueError(f"{R.format(e)} is not idempotent in {R.name}")
    f = R.sub(R.one, e)
    m = R.mul
    return m(m(e, a), e), m(m(e, a), f), m(m(f, a), e), m(m(f, a), f)


def assemble_matrix_view(R: Ring, parts) -> int:
    acc = R.zero
    for p in parts:
        acc = R.add(acc, p)
    return acc


def check_axioms(R: Ring, samples: int = 1000, seed: int = 0) -> bool:
    """Ring axioms: exhaustive over all triples for order <= 64, sampled otherwise."""
    if R.order <= 64:
        x = R.elements()
        a, b, c = np.meshgrid(x, x, x, indexing="ij")
        a, b, c = a.ravel(), b.ravel(), c.ravel()
    else:
        rng = np.random.default_rng(seed)
        a, b, c = (rng.integers(0, R.order, samples) for _ in range(3))
    add, mul, neg = R._add, R._mul, R._neg
    checks = [
        np.array_equal(add(add(a, b), c), add(a, add(b, c))),
        np.array_equal(add(a, b), add(b, a)),
        np.all(add(a, R.zero) == a),
        np.all(add(a, neg(a)) == R.zero),
        np.array_equal(mul(mul(a, b), c), mul(a, mul(b, c))),
        np.array_equal(mul(a, add(b, c)), add(mul(a, b), mul(a, c))),
        np.array_equal(mul(add(a, b), c), add(mul(a, c), mul(b, c))),
        np.all(mul(a, R.one) == a),
        np.all(mul(R.one, a) == a),
        R.zero != R.one,
    ]
    return bool(all(checks))

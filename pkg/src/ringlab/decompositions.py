"""Searching, constructing, verifying and lifting element decompositions.

A decomposition of ``a`` is a witness ``a = s·e + u + w`` with ``e``
idempotent, ``u`` a unit, ``w`` nilpotent and ``s`` a sign; which parts are
present depends on the kind.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import limits
from .analysis import SpecialSets, periodic_exponents, special_sets
from .ideals import Ideal, is_nil_ideal, nil_index
from .rings import QuotientRing, Ring, corner_ring, generalized_matrix_view

__all__ = [
    "Kind",
    "Decomposition",
    "DecompositionError",
    "verify_decomposition",
    "find_decomposition",
    "decomposable_mask",
    "nil_clean_to_precious",
    "find_periodic_witness",
    "periodic_to_precious",
    "PeirceResult",
    "peirce_assemble",
    "lift_idempotent_mod_nil",
    "lift_decomposition_mod_nil",
]


class DecompositionError(ValueError):
    pass


class Kind(str, Enum):
    CLEAN = "clean"
    WEAKLY_CLEAN = "weakly-clean"
    NIL_CLEAN = "nil-clean"
    WEAKLY_NIL_CLEAN = "weakly-nil-clean"
    PRECIOUS = "precious"
    WEAKLY_PRECIOUS = "weakly-precious"

    @property
    def weak(self) -> bool:
        return self.value.startswith("weakly")

    @property
    def has_unit(self) -> bool:
        return self in (Kind.CLEAN, Kind.WEAKLY_CLEAN, Kind.PRECIOUS, Kind.WEAKLY_PRECIOUS)

    @property
    def has_nilpotent(self) -> bool:
        return self in (Kind.NIL_CLEAN, Kind.WEAKLY_NIL_CLEAN, Kind.PRECIOUS, Kind.WEAKLY_PRECIOUS)

    @property
    def signs(self) -> tuple[int, ...]:
        return (1, -1) if self.weak else (1,)

    @classmethod
    def parse(cls, text: str) -> "Kind":
        t = text.strip().lower().replace("_", "-").replace(" ", "-")
        for k in cls:
            if t in (k.value, k.value.replace("-", ""), k.name.lower()):
                return k
        raise ValueError(f"unknown decomposition kind {text!r}")


@dataclass(frozen=True)
class Decomposition:
    kind: Kind
    sign: int
    e: int
    u: int | None = None
    w: int | None = None

    def total(self, R: Ring) -> int:
        acc = self.e if self.sign == 1 else R.neg(self.e)
        for part in (self.u, self.w):
            if part is not None:
                acc = R.add(acc, part)
        return acc

    def to_json(self, R: Ring) -> dict:
        fmt = lambda x: None if x is None else R.format(x)
        return {"kind": self.kind.value, "sign": self.sign, "e": fmt(self.e), "u": fmt(self.u), "w": fmt(self.w)}


def verify_decomposition(R: Ring, a: int, d: Decomposition) -> tuple[bool, str]:
    """Check every invariant of ``d`` against ``a``; returns (ok, reason)."""
    for name in ("e", "u", "w"):
        v = getattr(d, name)
        if v is not None and not 0 <= v < R.order:
            raise DecompositionError(f"{name}={v} is not an element of {R.name}")
    if d.sign not in (1, -1):
        return False, f"sign {d.sign} is not +1 or -1"
    if d.sign == -1 and not d.kind.weak:
        return False, f"{d.kind.value} decompositions use sign +1"
    if d.kind.has_unit != (d.u is not None):
        return False, f"{d.kind.value} {'needs' if d.kind.has_unit else 'forbids'} a unit part"
    if d.kind.has_nilpotent != (d.w is not None):
        return False, f"{d.kind.value} {'needs' if d.kind.has_nilpotent else 'forbids'} a nilpotent part"
    if R.mul(d.e, d.e) != d.e:
        return False, f"e={R.format(d.e)} is not idempotent"
    if d.u is not None and R.inverse(d.u) is None:
        return False, f"u={R.format(d.u)} is not a unit"
    if d.w is not None and R.nilpotency_index(d.w) is None:
        return False, f"w={R.format(d.w)} is not nilpotent"
    s = d.total(R)
    if s != a:
        return False, f"parts sum to {R.format(s)}, not {R.format(a)}"
    return True, "ok"


def _signed(R: Ring, sign: int, e):
    return e if sign == 1 else R._neg(e)


def find_decomposition(R: Ring, a: int, kind: Kind | str, sets: SpecialSets | None = None) -> Decomposition | None:
    """First witness in the fixed search order, or None if none exists.

    Order: sign +1 before -1, idempotents ascending, then the inner part
    ascending.  For precious kinds the inner loop runs over whichever of
    N, U is smaller (N on ties).
    """
    kind = Kind(kind) if not isinstance(kind, Kind) else kind
    sets = sets or special_sets(R)
    idem = sets.idempotents
    a = int(a)
    for sign in kind.signs:
        resid = R._sub(a, _signed(R, sign, idem))
        if kind is Kind.CLEAN or kind is Kind.WEAKLY_CLEAN:
            hits = np.flatnonzero(sets.unit_mask[resid])
            if len(hits):
                i = hits[0]
                return Decomposition(kind, sign, int(idem[i]), u=int(resid[i]))
        elif kind is Kind.NIL_CLEAN or kind is Kind.WEAKLY_NIL_CLEAN:
            hits = np.flatnonzero(sets.nil_mask[resid])
            if len(hits):
                i = hits[0]
                return Decomposition(kind, sign, int(idem[i]), w=int(resid[i]))
        else:
            nil, units = sets.nilpotents, sets.units
            inner_is_nil = len(nil) <= len(units)
            inner = nil if inner_is_nil else units
            test = sets.unit_mask if inner_is_nil else sets.nil_mask
            other = R._sub(resid[:, None], inner[None, :])
            ok = test[other]
            rows = np.flatnonzero(ok.any(axis=1))
            if len(rows):
                i = rows[0]
                j = int(np.argmax(ok[i]))
                x, y = int(inner[j]), int(other[i, j])
                u, w = (y, x) if inner_is_nil else (x, y)
                return Decomposition(kind, sign, int(idem[i]), u=u, w=w)
    return None


def _unit_plus_nil(R: Ring, sets: SpecialSets) -> np.ndarray:
    """Mask of U + N, memoized on the ring."""
    memo = R.__dict__.setdefault("_analysis", {})
    if "U+N" not in memo:
        units, nil = sets.units, sets.nilpotents
        small, big_mask = (nil, sets.unit_mask) if len(nil) <= len(units) else (units, sets.nil_mask)
        budget = limits.current().pair_budget
        if len(small) * R.order > budget * budget:
            raise limits.BudgetExceeded(
                f"U + N for {R.name} needs {len(small)} x {R.order} sums, above pair-budget {budget}^2"
            )
        allx = R.elements()
        mask = np.zeros(R.order, dtype=bool)
        for x in small:
            mask |= big_mask[R._sub(allx, x)]
        mask.setflags(write=False)
        memo["U+N"] = mask
    return memo["U+N"]


def decomposable_mask(R: Ring, kind: Kind | str, sets: SpecialSets | None = None, elements=None) -> np.ndarray:
    """Which of ``elements`` (default: all of R) admit a ``kind`` decomposition."""
    kind = Kind(kind) if not isinstance(kind, Kind) else kind
    sets = sets or special_sets(R)
    xs = R.elements() if elements is None else np.asarray(elements, dtype=np.int64)
    covered = np.zeros(len(xs), dtype=bool)
    if kind.has_unit and kind.has_nilpotent:
        # a is precious iff a - s·e lies in U + N
        target = _unit_plus_nil(R, sets)
    else:
        target = sets.unit_mask if kind.has_unit else sets.nil_mask
    for sign in kind.signs:
        for e in sets.idempotents:
            covered |= target[R._sub(xs, _signed(R, sign, int(e)))]
    return covered


# ---------------------------------------------------------------------------
# constructive rewrites


def nil_clean_to_precious(R: Ring, a: int, e: int, w: int) -> Decomposition:
    """a = e + w  ->  a = (1 - e) + (2e - 1) + w, where (2e - 1)^2 = 1."""
    if R.mul(e, e) != e:
        raise DecompositionError(f"{R.format(e)} is not idempotent")
    if R.nilpotency_index(w) is None:
        raise DecompositionError(f"{R.format(w)} is not nilpotent")
    if R.add(e, w) != a:
        raise DecompositionError("a != e + w")
    u = R.sub(R.add(e, e), R.one)
    assert R.mul(u, u) == R.one
    return Decomposition(Kind.PRECIOUS, 1, R.sub(R.one, e), u=u, w=w)


def find_periodic_witness(R: Ring, a: int) -> tuple[int, int] | None:
    """Least p (and least m >= 2) with p = p^m and a - p nilpotent."""
    periods = periodic_exponents(R)
    nil = special_sets(R).nil_mask
    cand = (periods > 0) & nil[R._sub(int(a), R.elements())]
    hits = np.flatnonzero(cand)
    if not len(hits):
        return None
    p = int(hits[0])
    return p, int(periods[p])


def periodic_to_precious(R: Ring, a: int, p: int, m: int) -> Decomposition:
    """Precious decomposition from a = p + w with p = p^m.

    For k = m - 1 >= 2 this uses e = 1 - p^k and u = p - 1 + p^k, whose
    inverse p^(k-1) - 1 + p^k is checked on both sides.
    """
    k = m - 1
    if k < 1 or R.pow(p, k + 1) != p:
        raise DecompositionError(f"{R.format(p)} != {R.format(p)}^{m}")
    w = R.sub(a, p)
    if R.nilpotency_index(w) is None:
        raise DecompositionError(f"a - p = {R.format(w)} is not nilpotent")
    if k == 1:
        return nil_clean_to_precious(R, a, p, w)
    pk = R.pow(p, k)
    e = R.sub(R.one, pk)
    u = R.add(R.sub(p, R.one), pk)
    uinv = R.add(R.sub(R.pow(p, k - 1), R.one), pk)
    if R.mul(e, e) != e:
        raise DecompositionError("1 - p^k is not idempotent")
    if R.mul(u, uinv) != R.one or R.mul(uinv, u) != R.one:
        raise DecompositionError("closed-form inverse failed")
    return Decomposition(Kind.PRECIOUS, 1, e, u=u, w=w)


# ---------------------------------------------------------------------------
# Peirce assembly


@dataclass(frozen=True)
class PeirceResult:
    decomposition: Decomposition
    schur: int  # d - c·u^{-1}·b in fRf
    left: int  # 1 - c·u^{-1}
    right: int  # 1 - u^{-1}·b
    diag: int  # u + v, the block diagonal left·U·right must equal
    unit: int  # U before any sign flip

    def certified(self, R: Ring) -> bool:
        return R.mul(R.mul(self.left, self.unit), self.right) == self.diag


def peirce_assemble(R: Ring, e: int, a: int, corner_dec: Decomposition) -> PeirceResult:
    """Assemble a (weakly) precious decomposition of ``a`` from its corner.

    ``corner_dec`` decomposes e·a·e inside eRe (elements given as indices of
    R).  Sign -1 is handled by assembling for -a and negating every part.
    """
    if corner_dec.u is None or corner_dec.w is None:
        raise DecompositionError("corner decomposition must carry unit and nilpotent parts")
    eRe = corner_ring(R, e)
    ae, b, c, d = generalized_matrix_view(R, e, a)
    sign = corner_dec.sign
    if sign == -1:
        ae, b, c, d = (R.neg(x) for x in (ae, b, c, d))
        fe, u, w = corner_dec.e, R.neg(corner_dec.u), R.neg(corner_dec.w)
    else:
        fe, u, w = corner_dec.e, corner_dec.u, corner_dec.w
    # the corner decomposition must live in eRe and sum to the corner of ±a
    for x in (fe, u, w):
        if eRe.label[x] < 0:
            raise DecompositionError(f"{R.format(x)} is not in eRe")
    if eRe.mul(eRe.label[fe], eRe.label[fe]) != eRe.label[fe]:
        raise DecompositionError("corner idempotent is not idempotent in eRe")
    uinv_c = eRe.inverse(int(eRe.label[u]))
    if uinv_c is None:
        raise DecompositionError("corner unit is not a unit of eRe")
    if eRe.nilpotency_index(int(eRe.label[w])) is None:
        raise DecompositionError("corner nilpotent is not nilpotent")
    if R.add(R.add(fe, u), w) != ae:
        raise DecompositionError("corner decomposition does not sum to e·a·e")
    uinv = eRe.include(uinv_c)

    f = R.sub(R.one, e)
    fRf = corner_ring(R, f)
    cub = R.mul(R.mul(c, uinv), b)
    schur = R.sub(d, cub)
    low = find_decomposition(fRf, int(fRf.label[schur]), Kind.PRECIOUS)
    if low is None:
        raise DecompositionError("the Schur complement has no precious decomposition in fRf")
    g, v, z = (fRf.include(x) for x in (low.e, low.u, low.w))

    E = R.add(fe, g)
    U = R.add(R.add(R.add(u, b), c), R.add(v, cub))
    W = R.add(w, z)
    left = R.sub(R.one, R.mul(c, uinv))
    right = R.sub(R.one, R.mul(uinv, b))
    diag = R.add(u, v)
    if sign == -1:
        dec = Decomposition(Kind.WEAKLY_PRECIOUS, -1, E, u=R.neg(U), w=R.neg(W))
    else:
        dec = Decomposition(Kind.PRECIOUS, 1, E, u=U, w=W)
    return PeirceResult(dec, schur, left, right, diag, U)


# ---------------------------------------------------------------------------
# lifting modulo nil ideals


def lift_idempotent_mod_nil(R: Ring, I: Ideal, x: int, return_trace: bool = False):
    """Lift x (idempotent modulo the nil ideal I) via x <- 3x^2 - 2x^3."""
    if not is_nil_ideal(I):
        raise DecompositionError("ideal is not nil")
    if R.sub(R.mul(x, x), x) not in I:
        raise DecompositionError(f"{R.format(x)} is not idempotent modulo I")
    bound = math.ceil(math.log2(nil_index(I))) + 1
    trace = [x]
    cur = x
    steps = 0
    while R.mul(cur, cur) != cur:
        if steps >= bound:
            raise DecompositionError("idempotent lifting did not terminate within its bound")
        sq = R.mul(cur, cur)
        cur = R.sub(R.times(3, sq), R.times(2, R.mul(sq, cur)))
        trace.append(cur)
        steps += 1
    assert R.sub(cur, x) in I
    return (cur, trace) if return_trace else cur


def lift_decomposition_mod_nil(R: Ring, Q: QuotientRing, I: Ideal, a: int, dbar: Decomposition) -> Decomposition:
    """Lift a decomposition of the image of ``a`` in Q = R/I back to R."""
    if not is_nil_ideal(I):
        raise DecompositionError("ideal is not nil")
    abar = Q.project(a)
    ok, why = verify_decomposition(Q, abar, dbar)
    if not ok:
        raise DecompositionError(f"quotient decomposition invalid: {why}")
    e = lift_idempotent_mod_nil(R, I, Q.section(dbar.e))
    se = e if dbar.sign == 1 else R.neg(e)
    rest = R.sub(a, se)
    if dbar.u is not None and dbar.w is not None:
        u = Q.section(dbar.u)
        w = R.sub(rest, u)
        out = Decomposition(dbar.kind, dbar.sign, e, u=u, w=w)
    elif dbar.u is not None:
        out = Decomposition(dbar.kind, dbar.sign, e, u=rest)
    else:
        out = Decomposition(dbar.kind, dbar.sign, e, w=rest)
    ok, why = verify_decomposition(R, a, out)
    if not ok:
        raise DecompositionError(f"lifted decomposition failed verification: {why}")
    return out

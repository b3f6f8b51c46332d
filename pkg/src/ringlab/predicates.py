"""Ring-level properties, each decided exhaustively with a least-index witness."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import limits
from .analysis import (
    _sandwich,
    jacobson_radical,
    periodic_exponents,
    prime_radical,
    special_sets,
)
from .decompositions import Kind, decomposable_mask
from .ideals import maximal_left_ideals, maximal_right_ideals
from .rings import Ring

__all__ = ["PredicateResult", "ring_is", "covers_id_u_n", "PREDICATES", "check_property"]

_CHUNK = 1 << 22


@dataclass(frozen=True)
class PredicateResult:
    value: bool
    witness: tuple[int, ...] | None = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.value


TRUE = PredicateResult(True)


def _fail(*witness, note: str = "") -> PredicateResult:
    return PredicateResult(False, tuple(int(w) for w in witness), note)


def _first_false(mask: np.ndarray, note: str = "") -> PredicateResult:
    bad = np.flatnonzero(~mask)
    return TRUE if not len(bad) else _fail(bad[0], note=note)


def _rows(R: Ring, cand: np.ndarray):
    """Yield consecutive blocks of ``cand`` sized for pairwise scans."""
    step = max(1, _CHUNK // R.order)
    for start in range(0, len(cand), step):
        yield cand[start:start + step]


def ring_is(R: Ring, kind: Kind | str) -> PredicateResult:
    """Every element decomposes; scans ascending blocks and stops at the first failure."""
    kind = Kind.parse(kind) if isinstance(kind, str) else kind
    sets = special_sets(R)
    allx = R.elements()
    step = max(1, _CHUNK // max(1, 2 * len(sets.idempotents)))
    for start in range(0, R.order, step):
        blk = allx[start:start + step]
        ok = decomposable_mask(R, kind, sets, blk)
        if not ok.all():
            return _fail(blk[np.argmin(ok)], note=f"not {kind.value}")
    return TRUE


def covers_id_u_n(R: Ring) -> PredicateResult:
    """Every element is very idempotent, a unit or nilpotent."""
    s = special_sets(R)
    return _first_false(s.idem_mask | s.neg_idem_mask | s.unit_mask | s.nil_mask)


def covers_id_u(R: Ring) -> PredicateResult:
    """Every element is a unit or very idempotent (no nilpotent part)."""
    s = special_sets(R)
    return _first_false(s.idem_mask | s.neg_idem_mask | s.unit_mask)


def is_commutative(R: Ring) -> PredicateResult:
    limits.require(R.order, "pair_budget", "commutativity")
    allx = R.elements()
    for blk in _rows(R, allx):
        diff = R._mul(blk[:, None], allx[None, :]) != R._mul(allx[None, :], blk[:, None])
        if diff.any():
            i, j = np.argwhere(diff)[0]
            return _fail(blk[i], allx[j])
    return TRUE


def is_boolean(R: Ring) -> PredicateResult:
    return _first_false(special_sets(R).idem_mask, note="not idempotent")


def is_abelian(R: Ring) -> PredicateResult:
    allx = R.elements()
    for e in special_sets(R).idempotents:
        diff = R._mul(e, allx) != R._mul(allx, e)
        if diff.any():
            return _fail(e, allx[np.argmax(diff)], note="noncentral idempotent")
    return TRUE


def is_local(R: Ring) -> PredicateResult:
    """Non-units form an ideal; in a finite ring, a or 1 - a is always a unit."""
    u = special_sets(R).unit_mask
    return _first_false(u | u[R._sub(R.one, R.elements())])


def is_division(R: Ring) -> PredicateResult:
    u = special_sets(R).unit_mask.copy()
    u[R.zero] = True
    return _first_false(u, note="nonzero non-unit")


def is_connected(R: Ring) -> PredicateResult:
    idem = special_sets(R).idempotents
    extra = idem[(idem != R.zero) & (idem != R.one)]
    return TRUE if not len(extra) else _fail(extra[0], note="nontrivial idempotent")


def is_semiprime(R: Ring) -> PredicateResult:
    """No a != 0 with aRa = 0."""
    limits.require(R.order, "pair_budget", "semiprime scan")
    cand = R.elements()[1:]
    for blk in _rows(R, cand):
        dead = (_sandwich(R, blk) == R.zero).all(axis=1)
        if dead.any():
            return _fail(blk[np.argmax(dead)], note="aRa = 0")
    return TRUE


def is_exchange(R: Ring) -> PredicateResult:
    """For each a some idempotent e in aR has 1 - e in (1 - a)R."""
    limits.require(R.order, "pair_budget", "exchange scan")
    idem = special_sets(R).idempotents
    allx = R.elements()
    one_minus_idem = R._sub(R.one, idem)
    for a in allx:
        in_aR = np.zeros(R.order, dtype=bool)
        in_aR[R._mul(a, allx)] = True
        in_baR = np.zeros(R.order, dtype=bool)
        in_baR[R._mul(R._sub(R.one, a), allx)] = True
        if not (in_aR[idem] & in_baR[one_minus_idem]).any():
            return _fail(a)
    return TRUE


def is_2_primal(R: Ring) -> PredicateResult:
    """Every nilpotent element is strongly nilpotent."""
    p = np.zeros(R.order, dtype=bool)
    p[prime_radical(R)] = True
    return _first_false(p | ~special_sets(R).nil_mask, note="nilpotent, not strongly nilpotent")


def is_nil_semicommutative(R: Ring) -> PredicateResult:
    """For nilpotent a, b: ab = 0 implies aRb = 0."""
    limits.require(R.order, "pair_budget", "nil-semicommutative scan")
    nil = special_sets(R).nilpotents
    allx = R.elements()
    for a in nil:
        zero_b = nil[R._mul(a, nil) == R.zero]
        if not len(zero_b):
            continue
        arb = R._mul(R._mul(a, allx)[None, :], zero_b[:, None])
        bad = (arb != R.zero).any(axis=1)
        if bad.any():
            return _fail(a, zero_b[np.argmax(bad)], note="ab = 0 but aRb != 0")
    return TRUE


def is_quasi_duo(R: Ring, side: str = "right") -> PredicateResult:
    """Every maximal right (or left) ideal is two-sided."""
    maxes = maximal_right_ideals(R) if side == "right" else maximal_left_ideals(R)
    allx = R.elements()
    for I in maxes:
        x = I.array
        m = I.mask
        other = R._mul(allx[:, None], x[None, :]) if side == "right" else R._mul(x[:, None], allx[None, :])
        if not m[other].all():
            return PredicateResult(False, I.elements, note=f"maximal {side} ideal is not two-sided")
    return TRUE


def is_weakly_periodic(R: Ring) -> PredicateResult:
    """Every a is p + w with p = p^m (m >= 2) and w nilpotent."""
    periodic = np.flatnonzero(periodic_exponents(R) > 0)
    nil = special_sets(R).nil_mask
    allx = R.elements()
    covered = np.zeros(R.order, dtype=bool)
    for p in periodic:
        covered |= nil[R._sub(allx, p)]
    return _first_false(covered)


def is_regular_mask(R: Ring) -> np.ndarray:
    """Mask of von Neumann regular elements (axa = a for some x)."""
    limits.require(R.order, "pair_budget", "regularity scan")
    out = np.zeros(R.order, dtype=bool)
    allx = R.elements()
    for blk in _rows(R, allx):
        out[blk] = (_sandwich(R, blk) == blk[:, None]).any(axis=1)
    return out


def is_nj(R: Ring) -> PredicateResult:
    """Every a is regular or has 1 - a a unit."""
    u = special_sets(R).unit_mask
    return _first_false(is_regular_mask(R) | u[R._sub(R.one, R.elements())])


def is_reduced(R: Ring) -> PredicateResult:
    nil = special_sets(R).nil_mask.copy()
    nil[R.zero] = False
    bad = np.flatnonzero(nil)
    return TRUE if not len(bad) else _fail(bad[0], note="nonzero nilpotent")


def is_nil_jacobson(R: Ring) -> PredicateResult:
    J = jacobson_radical(R)
    nil = special_sets(R).nil_mask
    bad = J[~nil[J]]
    return TRUE if not len(bad) else _fail(bad[0], note="non-nilpotent radical element")


PREDICATES = {
    "clean": lambda R: ring_is(R, Kind.CLEAN),
    "weakly-clean": lambda R: ring_is(R, Kind.WEAKLY_CLEAN),
    "nil-clean": lambda R: ring_is(R, Kind.NIL_CLEAN),
    "weakly-nil-clean": lambda R: ring_is(R, Kind.WEAKLY_NIL_CLEAN),
    "precious": lambda R: ring_is(R, Kind.PRECIOUS),
    "weakly-precious": lambda R: ring_is(R, Kind.WEAKLY_PRECIOUS),
    "covers-id-u-n": covers_id_u_n,
    "covers-id-u": covers_id_u,
    "commutative": is_commutative,
    "boolean": is_boolean,
    "abelian": is_abelian,
    "local": is_local,
    "division": is_division,
    "connected": is_connected,
    "semiprime": is_semiprime,
    "exchange": is_exchange,
    "2-primal": is_2_primal,
    "nil-semicommutative": is_nil_semicommutative,
    "quasi-duo": is_quasi_duo,
    "left-quasi-duo": lambda R: is_quasi_duo(R, "left"),
    "weakly-periodic": is_weakly_periodic,
    "nj": is_nj,
    "reduced": is_reduced,
    "nil-jacobson": is_nil_jacobson,
}


def check_property(R: Ring, name: str) -> PredicateResult:
    try:
        fn = PREDICATES[name]
    except KeyError:
        raise ValueError(f"unknown property {name!r}; choose from {', '.join(sorted(PREDICATES))}") from None
    return fn(R)

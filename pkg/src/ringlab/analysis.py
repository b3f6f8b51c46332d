"""Element classification and the structural sets Id, -Id, U, N, J, J*, P."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import limits
from .ideals import maximal_ideals, maximal_right_ideals
from .rings import Ring

__all__ = [
    "SpecialSets",
    "special_sets",
    "is_idempotent",
    "is_very_idempotent",
    "is_unit",
    "is_nilpotent",
    "jacobson_radical",
    "jacobson_quasi_regular",
    "jacobson_lattice",
    "jstar_radical",
    "is_strongly_nilpotent",
    "prime_radical",
    "periodic_exponents",
]

_CHUNK = 1 << 22


@dataclass(frozen=True, eq=False)
class SpecialSets:
    """Membership masks plus sorted index arrays for Id, -Id, U and N."""

    ring: Ring
    idem_mask: np.ndarray
    neg_idem_mask: np.ndarray
    unit_mask: np.ndarray
    nil_mask: np.ndarray
    inverse: np.ndarray

    @property
    def idempotents(self) -> np.ndarray:
        return np.flatnonzero(self.idem_mask)

    @property
    def neg_idempotents(self) -> np.ndarray:
        return np.flatnonzero(self.neg_idem_mask)

    @property
    def units(self) -> np.ndarray:
        return np.flatnonzero(self.unit_mask)

    @property
    def nilpotents(self) -> np.ndarray:
        return np.flatnonzero(self.nil_mask)


def _memo(R: Ring) -> dict:
    m = R.__dict__.get("_analysis")
    if m is None:
        m = R.__dict__["_analysis"] = {}
    return m


def compute_special_sets(R: Ring) -> SpecialSets:
    limits.require(R.order, "max_order", "special sets")
    x = R.elements()
    sq = R._mul(x, x)
    idem = sq == x
    # -a idempotent  <=>  a^2 = -a
    neg_idem = sq == R._neg(x)
    inv = R.inverses(x)
    nil = R.nilpotent_mask(x)
    for arr in (idem, neg_idem, inv, nil):
        arr.setflags(write=False)
    return SpecialSets(R, idem, neg_idem, inv >= 0, nil, inv)


def special_sets(R: Ring) -> SpecialSets:
    memo = _memo(R)
    if "sets" not in memo:
        memo["sets"] = compute_special_sets(R)
    return memo["sets"]


def install_special_sets(R: Ring, sets: SpecialSets) -> None:
    """Seed the memo (used by the on-disk cache)."""
    _memo(R)["sets"] = sets


def is_idempotent(R: Ring, a: int) -> bool:
    return R.mul(a, a) == a


def is_very_idempotent(R: Ring, a: int) -> int | None:
    """Sign s in {+1, -1} with s·a idempotent (preferring +1), else None."""
    if is_idempotent(R, a):
        return 1
    if is_idempotent(R, R.neg(a)):
        return -1
    return None


def is_unit(R: Ring, a: int) -> int | None:
    """The two-sided inverse of ``a`` or None."""
    return R.inverse(a)


def is_nilpotent(R: Ring, a: int) -> int | None:
    """Nilpotency index of ``a`` or None."""
    return R.nilpotency_index(a)


# ---------------------------------------------------------------------------
# Jacobson radical


def jacobson_quasi_regular(R: Ring) -> np.ndarray:
    """Mask of x with 1 - r·x a unit for every r."""
    limits.require(R.order, "pair_budget", "quasi-regularity scan")
    unit = special_sets(R).unit_mask
    allx = R.elements()
    out = np.zeros(R.order, dtype=bool)
    # J consists of non-units, apart from the zero ring
    cand = np.flatnonzero(~unit)
    step = max(1, _CHUNK // R.order)
    for start in range(0, len(cand), step):
        blk = cand[start:start + step]
        vals = R._sub(R.one, R._mul(allx[None, :], blk[:, None]))
        out[blk] = unit[vals].all(axis=1)
    return out


def jacobson_lattice(R: Ring) -> np.ndarray:
    """Mask of the intersection of all maximal right ideals."""
    out = np.ones(R.order, dtype=bool)
    for I in maximal_right_ideals(R):
        out &= I.mask
    return out


def jacobson_radical(R: Ring, method: str = "auto") -> np.ndarray:
    """Sorted indices of J(R).

    ``method`` is one of ``auto`` (structural rule if one applies, otherwise
    quasi-regularity), ``structural``, ``quasi`` or ``lattice``.
    """
    memo = _memo(R)
    key = f"J:{method}"
    if key not in memo:
        if method == "structural":
            mask = R.jacobson_structural()
            if mask is None:
                raise limits.BudgetExceeded(f"no structural radical rule for {R.name}")
        elif method == "quasi":
            mask = jacobson_quasi_regular(R)
        elif method == "lattice":
            mask = jacobson_lattice(R)
        elif method == "auto":
            mask = R.jacobson_structural()
            if mask is None:
                mask = jacobson_quasi_regular(R)
        else:
            raise ValueError(f"unknown method {method!r}")
        memo[key] = np.flatnonzero(mask)
    return memo[key]


def jstar_radical(R: Ring) -> np.ndarray:
    """Intersection of the maximal two-sided ideals."""
    out = np.ones(R.order, dtype=bool)
    for I in maximal_ideals(R):
        out &= I.mask
    return np.flatnonzero(out)


# ---------------------------------------------------------------------------
# prime radical


def _sandwich(R: Ring, a) -> np.ndarray:
    """Rows of a·r·a over all r for each a in ``a``."""
    a = np.asarray(a, dtype=np.int64)
    allx = R.elements()
    return R._mul(R._mul(a[:, None], allx[None, :]), a[:, None])


def _strongly_nilpotent_mask(R: Ring) -> np.ndarray:
    memo = _memo(R)
    if "P" in memo:
        return memo["P"]
    limits.require(R.order, "pair_budget", "strong nilpotency graph")
    nil = special_sets(R).nil_mask
    # only nilpotent elements can be strongly nilpotent
    cand = np.flatnonzero(nil & (R.elements() != R.zero))
    succ = {}
    step = max(1, _CHUNK // R.order)
    for start in range(0, len(cand), step):
        blk = cand[start:start + step]
        rows = _sandwich(R, blk)
        for a, row in zip(blk, rows):
            s = np.unique(row)
            succ[int(a)] = s[s != R.zero]
    good = np.zeros(R.order, dtype=bool)
    good[R.zero] = True
    # least fixpoint: a is good once every successor in aRa is good
    changed = True
    while changed:
        changed = False
        for a, s in succ.items():
            if not good[a] and good[s].all():
                good[a] = True
                changed = True
    good.setflags(write=False)
    memo["P"] = good
    return good


def is_strongly_nilpotent(R: Ring, a: int) -> bool:
    """Every sequence a, a1 in aRa, a2 in a1Ra1, ... reaches 0."""
    if R.order <= limits.current().pair_budget:
        return bool(_strongly_nilpotent_mask(R)[a])
    # depth-first search for a reachable cycle
    state: dict[int, int] = {}
    stack = [(int(a), None)]
    while stack:
        x, it = stack[-1]
        if it is None:
            if x == R.zero or state.get(x) == 2:
                stack.pop()
                continue
            state[x] = 1
            row = np.unique(_sandwich(R, [x])[0])
            it = iter(int(y) for y in row if y != R.zero)
            stack[-1] = (x, it)
        nxt = next(it, None)
        if nxt is None:
            state[x] = 2
            stack.pop()
        elif state.get(nxt) == 1:
            return False
        elif state.get(nxt) != 2:
            stack.append((nxt, None))
    return True


def prime_radical(R: Ring) -> np.ndarray:
    """P(R) as the set of strongly nilpotent elements (0 included)."""
    return np.flatnonzero(_strongly_nilpotent_mask(R))


# ---------------------------------------------------------------------------


def periodic_exponents(R: Ring) -> np.ndarray:
    """For each p, the least m >= 2 with p^m = p, or 0 when none exists."""
    memo = _memo(R)
    if "periodic" in memo:
        return memo["periodic"]
    limits.require(R.order, "pair_budget", "periodicity scan")
    x = R.elements()
    out = np.zeros(R.order, dtype=np.int64)
    cur = x
    # powers of p enter their cycle within |R| steps
    for m in range(2, R.order + 2):
        cur = R._mul(cur, x)
        hit = (cur == x) & (out == 0)
        out[hit] = m
        if out.all():
            break
    out.setflags(write=False)
    memo["periodic"] = out
    return out

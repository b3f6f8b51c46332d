"""Ideals of finite rings: closure, quotients and the ideal lattice."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import limits
from .rings import QuotientRing, Ring

__all__ = [
    "Side",
    "Ideal",
    "ideal_generated_by",
    "ideal_from_mask",
    "quotient_ring",
    "is_nil_ideal",
    "nil_index",
    "all_ideals",
    "maximal_ideals",
    "maximal_right_ideals",
    "maximal_left_ideals",
]


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    TWO_SIDED = "two-sided"


@dataclass(frozen=True, eq=False)
class Ideal:
    ring: Ring
    side: Side
    elements: tuple[int, ...]
    generators: tuple[int, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def __eq__(self, other) -> bool:
        return isinstance(other, Ideal) and self.ring is other.ring and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((id(self.ring), self.elements))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64)

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.ring.order, dtype=bool)
        m[list(self.elements)] = True
        return m

    def is_proper(self) -> bool:
        return len(self.elements) < self.ring.order

    def is_closed(self) -> bool:
        """Zero, additive closure and absorption on the declared side(s)."""
        R, x = self.ring, self.array
        m = self.mask
        if not m[R.zero] or not m[R._add(x[:, None], x[None, :])].all() or not m[R._neg(x)].all():
            return False
        allx = R.elements()
        if self.side in (Side.LEFT, Side.TWO_SIDED) and not m[R._mul(allx[:, None], x[None, :])].all():
            return False
        if self.side in (Side.RIGHT, Side.TWO_SIDED) and not m[R._mul(x[:, None], allx[None, :])].all():
            return False
        return True


def ideal_from_mask(R: Ring, mask, side: Side = Side.TWO_SIDED, generators=()) -> Ideal:
    idx = np.flatnonzero(np.asarray(mask, dtype=bool))
    return Ideal(R, Side(side), tuple(int(i) for i in idx), tuple(int(g) for g in generators))


def _additive_closure(R: Ring, mask: np.ndarray) -> np.ndarray:
    mask = mask.copy()
    mask[R.zero] = True
    while True:
        x = np.flatnonzero(mask)
        new = np.zeros_like(mask)
        new[R._add(x[:, None], x[None, :]).ravel()] = True
        new |= mask
        if new.sum() == mask.sum():
            return mask
        mask = new


def _absorb(R: Ring, mask: np.ndarray, side: Side) -> np.ndarray:
    x = np.flatnonzero(mask)
    allx = R.elements()
    out = mask.copy()
    if side in (Side.LEFT, Side.TWO_SIDED):
        out[R._mul(allx[:, None], x[None, :]).ravel()] = True
    if side in (Side.RIGHT, Side.TWO_SIDED):
        out[R._mul(x[:, None], allx[None, :]).ravel()] = True
    return out


def ideal_generated_by(R: Ring, gens, side: Side | str = Side.TWO_SIDED) -> Ideal:
    """Least ideal of the given side containing ``gens``.

    Alternates additive-subgroup closure with multiplication sweeps until
    nothing new appears.
    """
    side = Side(side)
    gens = [int(g) for g in gens]
    if not gens:
        raise ValueError("ideal_generated_by needs at least one generator")
    limits.require(R.order, "pair_budget", "ideal closure")
    mask = np.zeros(R.order, dtype=bool)
    mask[gens] = True
    while True:
        mask = _additive_closure(R, mask)
        grown = _absorb(R, mask, side)
        if grown.sum() == mask.sum():
            return ideal_from_mask(R, mask, side, gens)
        mask = grown


def quotient_ring(R: Ring, I: Ideal) -> QuotientRing:
    if I.ring is not R:
        raise ValueError("ideal belongs to a different ring")
    if I.side is not Side.TWO_SIDED:
        # a one-sided ideal may still happen to be two-sided; accept only if verified
        if not Ideal(R, Side.TWO_SIDED, I.elements).is_closed():
            raise ValueError("quotient_ring needs a two-sided ideal")
    gens = ",".join(R.format(g) for g in I.generators) if I.generators else f"|I|={len(I)}"
    return QuotientRing(R, I.array, name=f"{R.name}/({gens})")


def is_nil_ideal(I: Ideal) -> bool:
    return bool(I.ring.nilpotent_mask(I.array).all())


def nil_index(I: Ideal) -> int | None:
    """Least n with x^n = 0 for every x in I (None if I is not nil)."""
    if not is_nil_ideal(I):
        return None
    return max(I.ring.nilpotency_index(int(x)) for x in I.elements)


# ---------------------------------------------------------------------------
# lattice enumeration


def _principal(R: Ring, a: int, side: Side) -> np.ndarray:
    allx = R.elements()
    mask = np.zeros(R.order, dtype=bool)
    if side is Side.RIGHT:
        mask[R._mul(a, allx)] = True
    elif side is Side.LEFT:
        mask[R._mul(allx, a)] = True
    else:
        return ideal_generated_by(R, [a], Side.TWO_SIDED).mask
    return mask


def _sum(R: Ring, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    x, y = np.flatnonzero(a), np.flatnonzero(b)
    out = np.zeros(R.order, dtype=bool)
    out[R._add(x[:, None], y[None, :]).ravel()] = True
    return out


def all_ideals(R: Ring, side: Side | str = Side.RIGHT) -> list[Ideal]:
    """Every ideal of the given side, as sums of principal ones.

    Each ideal of a finite ring is a finite sum of principal ideals, so
    closing the principal set under sums enumerates the whole lattice.
    """
    side = Side(side)
    limits.require(R.order, "lattice_budget", f"{side.value} ideal lattice")
    cache = _lattice_cache(R)
    if side in cache:
        return cache[side]
    principals: dict[bytes, np.ndarray] = {}
    for a in range(R.order):
        m = _principal(R, a, side)
        principals.setdefault(m.tobytes(), m)
    pr = list(principals.values())
    seen = dict(principals)
    queue = list(pr)
    while queue:
        cur = queue.pop()
        for p in pr:
            if not (p & ~cur).any():
                continue
            s = _sum(R, cur, p)
            key = s.tobytes()
            if key not in seen:
                seen[key] = s
                queue.append(s)
    ideals = sorted((ideal_from_mask(R, m, side) for m in seen.values()), key=lambda I: I.elements)
    cache[side] = ideals
    return ideals


def _lattice_cache(R: Ring) -> dict:
    c = R.__dict__.get("_lattice")
    if c is None:
        c = R.__dict__["_lattice"] = {}
    return c


def _maximal(R: Ring, side: Side) -> list[Ideal]:
    proper = [I for I in all_ideals(R, side) if I.is_proper()]
    masks = [I.mask for I in proper]
    out = []
    for i, I in enumerate(proper):
        mi = masks[i]
        if not any(j != i and len(proper[j]) > len(I) and not (mi & ~masks[j]).any() for j in range(len(proper))):
            out.append(I)
    return out


def maximal_ideals(R: Ring) -> list[Ideal]:
    return _maximal(R, Side.TWO_SIDED)


def maximal_right_ideals(R: Ring) -> list[Ideal]:
    return _maximal(R, Side.RIGHT)


def maximal_left_ideals(R: Ring) -> list[Ideal]:
    return _maximal(R, Side.LEFT)

"""Resource guards shared by every exhaustive computation."""
from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace

__all__ = ["Limits", "BudgetExceeded", "current", "using", "require"]


class BudgetExceeded(RuntimeError):
    """An exhaustive computation would exceed its configured budget."""


@dataclass(frozen=True)
class Limits:
    # largest ring that may be realized and scanned linearly
    max_order: int = 1 << 20
    # largest ring for O(n^2) scans (quasi-regularity, aRa, generic inverses)
    pair_budget: int = 8192
    # largest ring whose right-ideal lattice may be enumerated
    lattice_budget: int = 256

    def __post_init__(self):
        for name in ("max_order", "pair_budget", "lattice_budget"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


_LIMITS: contextvars.ContextVar[Limits] = contextvars.ContextVar("ringlab_limits", default=Limits())


def current() -> Limits:
    return _LIMITS.get()


@contextlib.contextmanager
def using(limits: Limits | None = None, **overrides):
    """Temporarily replace the active limits."""
    new = replace(limits or current(), **overrides)
    token = _LIMITS.set(new)
    try:
        yield new
    finally:
        _LIMITS.reset(token)


def require(order: int, budget: str, what: str) -> None:
    cap = getattr(current(), budget)
    if order > cap:
        raise BudgetExceeded(f"{what}: ring order {order} exceeds {budget}={cap}")

"""Deliberately naive reference implementations used to cross-check the engine.

Nothing here touches numpy arrays or the engine's classifiers: arithmetic is
either plain integer/list arithmetic, or scalar calls to a ring's ``add``,
``neg`` and ``mul`` collected into Python tables.
"""
from __future__ import annotations

from math import gcd


class NaiveRing:
    """Python-list tables plus loop-based classifiers for a small ring."""

    def __init__(self, R):
        n = R.order
        self.n = n
        self.one = R.one
        self.add = [[R.add(a, b) for b in range(n)] for a in range(n)]
        self.mul = [[R.mul(a, b) for b in range(n)] for a in range(n)]
        self.neg = [R.neg(a) for a in range(n)]
        self.sub = [[self.add[a][self.neg[b]] for b in range(n)] for a in range(n)]

    def idempotents(self) -> set[int]:
        return {e for e in range(self.n) if self.mul[e][e] == e}

    def units(self) -> set[int]:
        out = set()
        for u in range(self.n):
            row = self.mul[u]
            for v in range(self.n):
                if row[v] == self.one and self.mul[v][u] == self.one:
                    out.add(u)
                    break
        return out

    def nilpotents(self) -> set[int]:
        out = set()
        for w in range(self.n):
            p = w
            for _ in range(self.n):
                if p == 0:
                    out.add(w)
                    break
                p = self.mul[p][w]
        return out

    def decomposable(self, kind: str) -> list[bool]:
        """Triple loop over (a, e, u) or double loop over (a, e)."""
        idem = sorted(self.idempotents())
        units = self.units()
        nil = self.nilpotents()
        signs = (1, -1) if kind.startswith("weakly") else (1,)
        base = kind.removeprefix("weakly-")
        out = []
        for a in range(self.n):
            found = False
            for s in signs:
                for e in idem:
                    se = e if s == 1 else self.neg[e]
                    r = self.sub[a][se]
                    if base == "clean":
                        found = r in units
                    elif base == "nil-clean":
                        found = r in nil
                    else:
                        found = any(self.sub[r][u] in nil for u in units)
                    if found:
                        break
                if found:
                    break
            out.append(found)
        return out


def zm_covers(m: int) -> tuple[bool, int | None]:
    """Every a in Z_m is ±idempotent, a unit or nilpotent; least counterexample."""
    for a in range(m):
        sq = a * a % m
        if sq == a or sq == (-a) % m or gcd(a, m) == 1:
            continue
        p, nil = a, False
        for _ in range(m):
            if p == 0:
                nil = True
                break
            p = p * a % m
        if not nil:
            return False, a
    return True, None


def is_prime_power(m: int) -> bool:
    p = next(d for d in range(2, m + 1) if m % d == 0)
    while m % p == 0:
        m //= p
    return m == 1


def mat_mul(A, B, m):
    k = len(A)
    return [[sum(A[i][t] * B[t][j] for t in range(k)) % m for j in range(k)] for i in range(k)]


def mat_add(A, B, m):
    return [[(x + y) % m for x, y in zip(r, s)] for r, s in zip(A, B)]


def poly_mul_trunc(f, g, n, m):
    out = [0] * n
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            if i + j < n:
                out[i + j] = (out[i + j] + a * b) % m
    return out


def nil_index_naive(mul, x, zero=0, limit=10_000):
    p, k = x, 1
    while p != zero:
        p = mul(p, x)
        k += 1
        if k > limit:
            return None
    return k

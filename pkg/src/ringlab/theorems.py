"""Registry of executable checks, one per finitely checkable claim.

Each check takes a JSON-able parameter dict naming its ring instance(s) and
returns an :class:`Outcome`; :func:`run_check` wraps it in a
:class:`TheoremReport`.  Reports never carry timing in their JSON form so
that repeated runs serialize to identical bytes.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import limits
from .analysis import (
    jacobson_radical,
    jstar_radical,
    prime_radical,
    special_sets,
)
from .catalog import SMALL
from .decompositions import (
    Decomposition,
    DecompositionError,
    Kind,
    decomposable_mask,
    find_decomposition,
    find_periodic_witness,
    lift_decomposition_mod_nil,
    nil_clean_to_precious,
    peirce_assemble,
    periodic_to_precious,
    verify_decomposition,
)
from .expr import Matrix, Product, Triangular, TrivialExt, Truncated, ZMod, parse_ring_expr, render
from .ideals import Side, ideal_from_mask, ideal_generated_by, is_nil_ideal, maximal_ideals, quotient_ring
from .predicates import (
    covers_id_u,
    covers_id_u_n,
    is_2_primal,
    is_abelian,
    is_commutative,
    is_division,
    is_exchange,
    is_nil_semicommutative,
    is_nj,
    is_quasi_duo,
    is_semiprime,
    ring_is,
)
from .rings import Ring, build_ring, corner_ring

__all__ = ["TheoremCheck", "TheoremReport", "Outcome", "REGISTRY", "run_check", "run_all"]


@dataclass
class Outcome:
    passed: bool
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)


@dataclass(frozen=True)
class TheoremCheck:
    id: str
    description: str
    covers: tuple[str, ...]
    params: dict  # parameter name -> short type description
    defaults: tuple[dict, ...]
    fn: Callable[[dict], Outcome]


@dataclass
class TheoremReport:
    id: str
    params: dict
    verdict: str  # pass | fail | skipped
    witnesses: list
    details: dict
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "params": self.params,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "details": self.details,
        }


REGISTRY: dict[str, TheoremCheck] = {}


def _register(id, description, covers, params, defaults):
    def deco(fn):
        REGISTRY[id] = TheoremCheck(id, description, tuple(covers), params, tuple(defaults), fn)
        return fn

    return deco


# ---------------------------------------------------------------------------
# helpers

ALL_KINDS = tuple(Kind)


def _verdicts(R: Ring, kinds=ALL_KINDS) -> dict[str, bool]:
    return {k.value: ring_is(R, k).value for k in kinds}


def _fmt(R: Ring, xs) -> list[str]:
    return [R.format(int(x)) for x in xs]


def _elements_of(R: Ring, literals) -> list[int]:
    return [R.parse(t) for t in literals]


def _matrices_over(M: Ring, entries: np.ndarray) -> np.ndarray:
    """All matrices of the matrix ring ``M`` whose entries lie in ``entries``."""
    k2 = len(M.comps)
    grids = np.meshgrid(*([entries] * k2), indexing="ij")
    return M.encode([g.ravel() for g in grids])


def _matrix_radical_nil(R: Ring, n: int) -> bool:
    """Is M_n(J(R)) a nil ring?"""
    J = jacobson_radical(R)
    if n == 1:
        return bool(R.nilpotent_mask(J).all())
    M = build_ring(Matrix(n, R.descriptor))
    limits.require(len(J) ** (n * n), "max_order", "M_n(J) enumeration")
    return bool(M.nilpotent_mask(_matrices_over(M, J)).all())


def _modulo_radical_boolean(R: Ring) -> bool:
    """R/J is Boolean iff a^2 - a lies in J for every a."""
    J = np.zeros(R.order, dtype=bool)
    J[jacobson_radical(R)] = True
    x = R.elements()
    return bool(J[R._sub(R._mul(x, x), x)].all())


def _count_maximal(R: Ring) -> int:
    """Number of maximal ideals of a commutative ring.

    Within the lattice budget this enumerates them; otherwise it uses that a
    finite commutative ring is a product of 2^k-idempotent local factors.
    """
    if R.order <= limits.current().lattice_budget:
        return len(maximal_ideals(R))
    return int(round(math.log2(len(special_sets(R).idempotents))))


def _noncentral_idempotents(R: Ring) -> np.ndarray:
    allx = R.elements()
    idem = special_sets(R).idempotents
    keep = [e for e in idem if (R._mul(e, allx) != R._mul(allx, e)).any()]
    return np.asarray(keep, dtype=np.int64)


# ---------------------------------------------------------------------------
# section-one definitions and the first example


@_register(
    "E2.1",
    "Definitions of Id, -Id, U, N and the six kinds on sample rings; the displayed "
    "precious decomposition of (A, -A) read modulo 101; the nil-clean to precious rewrite.",
    ["defs", "E2.1"],
    {"part": "defs | pair | rewrite", "ring": "ring expression (defs, rewrite)"},
    [
        {"part": "pair"},
        {"part": "defs", "ring": "Z6"},
        {"part": "defs", "ring": "M2(Z2)"},
        {"part": "defs", "ring": "T2(Z3)"},
        {"part": "rewrite", "ring": "Z3"},
        {"part": "rewrite", "ring": "M2(Z2)"},
        {"part": "rewrite", "ring": "trunc(Z2,3)"},
    ],
)
def _e21(p: dict) -> Outcome:
    part = p["part"]
    if part == "pair":
        return _example_pair(p.get("modulus", 101))
    R = build_ring(p["ring"])
    if part == "defs":
        return _definitions(R)
    if part == "rewrite":
        return _rewrite(R)
    raise ValueError(f"unknown part {part!r}")


EXAMPLE_PAIR = {
    "a": "([[3,9],[-7,-2]],[[-3,-9],[7,2]])",
    "e": "([[1,0],[7,0]],[[1,0],[6,0]])",
    "u": "([[-1,0],[-13,1]],[[-1,0],[0,-1]])",
    "w": "([[3,9],[-1,-3]],[[-3,-9],[1,3]])",
}


def _example_pair(modulus: int) -> Outcome:
    # the pair lives in M2(Z) x M2(Z); its image modulo a prime is checked element-wise only
    expr = f"M2(Z{modulus}) x M2(Z{modulus})"
    with limits.using(max_order=max(limits.current().max_order, modulus ** 8)):
        R = build_ring(expr)
        a, e, u, w = (R.parse(EXAMPLE_PAIR[k]) for k in ("a", "e", "u", "w"))
        flags = {
            "e_idempotent": R.mul(e, e) == e,
            "u_unit": R.inverse(u) is not None,
            "w_nilpotent": R.nilpotency_index(w) is not None,
            "sum": R.add(R.add(e, u), w) == a,
        }
        ok_p, why_p = verify_decomposition(R, a, Decomposition(Kind.PRECIOUS, 1, e, u, w))
        ok_wp, why_wp = verify_decomposition(R, a, Decomposition(Kind.WEAKLY_PRECIOUS, 1, e, u, w))
    details = {"ring": expr, **flags, "precious": ok_p, "weakly_precious": ok_wp}
    passed = all(flags.values()) and ok_p and ok_wp
    return Outcome(passed, [] if passed else [why_p, why_wp], details)


def _definitions(R: Ring) -> Outcome:
    """Search results, masks and verifier agree element by element."""
    s = special_sets(R)
    bad = []
    for a in range(R.order):
        neg = R.neg(a)
        vi = bool(s.idem_mask[a] or s.idem_mask[neg])
        if vi != bool(s.idem_mask[a] or s.neg_idem_mask[a]):
            bad.append({"element": R.format(a), "issue": "very idempotent mismatch"})
    for kind in ALL_KINDS:
        mask = decomposable_mask(R, kind)
        for a in range(R.order):
            d = find_decomposition(R, a, kind)
            if (d is not None) != bool(mask[a]):
                bad.append({"element": R.format(a), "kind": kind.value, "issue": "search/mask disagree"})
            elif d is not None and not verify_decomposition(R, a, d)[0]:
                bad.append({"element": R.format(a), "kind": kind.value, "issue": "witness fails"})
    details = {
        "ring": R.name,
        "order": R.order,
        "idempotents": len(s.idempotents),
        "units": len(s.units),
        "nilpotents": len(s.nilpotents),
        "ring_is": _verdicts(R),
    }
    return Outcome(not bad, bad[:5], details)


def _rewrite(R: Ring) -> Outcome:
    bad = []
    nil_clean = precious_only = 0
    for a in range(R.order):
        d = find_decomposition(R, a, Kind.NIL_CLEAN)
        if d is None:
            if find_decomposition(R, a, Kind.PRECIOUS) is not None:
                precious_only += 1
            continue
        nil_clean += 1
        p = nil_clean_to_precious(R, a, d.e, d.w)
        if not verify_decomposition(R, a, p)[0]:
            bad.append(R.format(a))
    details = {"ring": R.name, "nil_clean_elements": nil_clean, "precious_not_nil_clean": precious_only}
    if R.name == "Z3":
        # -1 is precious without being nil-clean
        m1 = R.neg(R.one)
        details["minus_one_nil_clean"] = find_decomposition(R, m1, Kind.NIL_CLEAN) is not None
        details["minus_one_precious"] = find_decomposition(R, m1, Kind.PRECIOUS) is not None
        if details["minus_one_nil_clean"] or not details["minus_one_precious"]:
            bad.append(R.format(m1))
    return Outcome(not bad, bad, details)


# ---------------------------------------------------------------------------
# nil ideals, power series and the prime radical


def _agreement(R: Ring, Q: Ring, kinds=ALL_KINDS) -> tuple[dict, dict, list]:
    vr, vq = _verdicts(R, kinds), _verdicts(Q, kinds)
    diff = [k for k in vr if vr[k] != vq[k]]
    return vr, vq, diff


@_register(
    "L2.2",
    "Modulo a nil ideal I every kind's ring verdict agrees between R and R/I, and each "
    "decomposition of a coset lifts to R and projects back to itself.",
    ["L2.2"],
    {"ring": "ring expression", "ideal": "list of generator literals (two-sided)"},
    [
        {"ring": "Z8", "ideal": ["2"]},
        {"ring": "trunc(Z2,3)", "ideal": ["poly[0,1]"]},
        {"ring": "trunc(Z3,2)", "ideal": ["poly[0,1]"]},
    ],
)
def _l22(p: dict) -> Outcome:
    R = build_ring(p["ring"])
    I = ideal_generated_by(R, _elements_of(R, p["ideal"]), Side.TWO_SIDED)
    if not is_nil_ideal(I):
        return Outcome(False, ["ideal is not nil"], {"ring": R.name})
    Q = quotient_ring(R, I)
    vr, vq, diff = _agreement(R, Q)
    bad = [f"{k} differs" for k in diff]
    for kind in ALL_KINDS:
        for a in range(R.order):
            qa = int(Q.project(a))
            dbar = find_decomposition(Q, qa, kind)
            if dbar is None:
                if find_decomposition(R, a, kind) is not None:
                    bad.append(f"{R.format(a)} is {kind.value} but its image is not")
                continue
            d = lift_decomposition_mod_nil(R, Q, I, a, dbar)
            back = (int(Q.project(d.e)), None if d.u is None else int(Q.project(d.u)), None if d.w is None else int(Q.project(d.w)))
            if back != (dbar.e, dbar.u, dbar.w):
                bad.append(f"lift of {R.format(a)} ({kind.value}) does not project back")
    details = {"ring": R.name, "ideal_order": len(I), "quotient_order": Q.order, "ring_is": vr, "quotient_is": vq}
    return Outcome(not bad, bad[:5], details)


@_register(
    "T2.3",
    "R and its truncated power-series ring R[x]/(x^n) are weakly precious together "
    "(all six kinds compared).",
    ["T2.3"],
    {"base": "ring expression", "n": "truncation degree >= 2"},
    [{"base": b, "n": n} for b in ("Z2", "Z3", "Z4", "Z6") for n in (2, 3)],
)
def _t23(p: dict) -> Outcome:
    base = parse_ring_expr(p["base"])
    R, S = build_ring(base), build_ring(Truncated(base, int(p["n"])))
    vr, vs, diff = _agreement(R, S)
    return Outcome(not diff, diff, {"ring": R.name, "truncated": S.name, "ring_is": vr, "truncated_is": vs})


@_register(
    "L2.4",
    "P(R), computed as the strongly nilpotent elements, is a nil two-sided ideal and "
    "R, R/P(R) agree on every kind.",
    ["L2.4", "prime-radical"],
    {"ring": "ring expression"},
    [
        {"ring": e}
        for e in (
            "Z8", "Z12", "T2(Z2)", "T3(Z2)", "M2(Z2)", "M2(Z4)", "trunc(Z2,3)",
            "morita0(Z2,1,1)", "trivext(T2(Z2),1)", "M2(Z2) x Z2",
        )
    ],
)
def _l24(p: dict) -> Outcome:
    R = build_ring(p["ring"])
    P = prime_radical(R)
    mask = np.zeros(R.order, dtype=bool)
    mask[P] = True
    I = ideal_from_mask(R, mask, Side.TWO_SIDED)
    details = {"ring": R.name, "prime_radical": _fmt(R, P)}
    if not I.is_closed() or not is_nil_ideal(I):
        return Outcome(False, ["P(R) is not a nil two-sided ideal"], details)
    Q = quotient_ring(R, I)
    vr, vq, diff = _agreement(R, Q)
    details.update(quotient_order=Q.order, ring_is=vr, quotient_is=vq)
    return Outcome(not diff, diff, details)


# ---------------------------------------------------------------------------
# degenerate consistency checks


@_register(
    "T2.5",
    "consistency (finite-degenerate): under the 2-primal, nil-semicommutative or "
    "quasi-duo hypothesis, weakly precious, weakly clean and weakly clean modulo P(R) coincide.",
    ["T2.5", "C2.6", "P2.7"],
    {"ring": "ring expression"},
    [
        {"ring": e}
        for e in (
            "Z6", "Z12", "T2(Z2)", "M2(Z2)", "trunc(Z3,2)", "Z3 x Z3 x Z3",
            "morita0(Z2,1,1)", "GF(4) x Z3", "T3(Z2)",
        )
    ],
)
def _t25(p: dict) -> Outcome:
    R = build_ring(p["ring"])
    hyp = {
        "2-primal": is_2_primal(R).value,
        "nil-semicommutative": is_nil_semicommutative(R).value,
        "right-quasi-duo": is_quasi_duo(R, "right").value,
        "left-quasi-duo": is_quasi_duo(R, "left").value,
    }
    P = prime_radical(R)
    mask = np.zeros(R.order, dtype=bool)
    mask[P] = True
    Q = quotient_ring(R, ideal_from_mask(R, mask))
    conc = {
        "weakly_precious": ring_is(R, Kind.WEAKLY_PRECIOUS).value,
        "weakly_clean": ring_is(R, Kind.WEAKLY_CLEAN).value,
        "quotient_weakly_clean": ring_is(Q, Kind.WEAKLY_CLEAN).value,
    }
    agree = len(set(conc.values())) == 1
    passed = agree or not any(hyp.values())
    details = {"ring": R.name, "hypotheses": hyp, "conclusions": conc, "vacuous": not any(hyp.values())}
    return Outcome(passed, [] if passed else [f"{k}={v}" for k, v in conc.items()], details)


@_register(
    "T2.9",
    "consistency (finite-degenerate): a product is weakly precious exactly when every "
    "factor is and at most one is not precious; the componentwise assembly of a weakly "
    "precious and a precious decomposition is verified for every element.",
    ["L2.8", "T2.9"],
    {"factors": "list of ring expressions"},
    [
        {"factors": ["Z3", "Z3"]},
        {"factors": ["Z2", "Z3", "Z5"]},
        {"factors": ["M2(Z2)", "Z3"]},
        {"factors": ["T2(Z2)", "trunc(Z3,2)"]},
    ],
)
def _t29(p: dict) -> Outcome:
    descs = [parse_ring_expr(f) for f in p["factors"]]
    parts = [build_ring(d) for d in descs]
    R = build_ring(Product(tuple(descs)))
    wp = ring_is(R, Kind.WEAKLY_PRECIOUS).value
    fw = [ring_is(S, Kind.WEAKLY_PRECIOUS).value for S in parts]
    fp = [ring_is(S, Kind.PRECIOUS).value for S in parts]
    predicted = all(fw) and sum(not x for x in fp) <= 1
    bad = [] if wp == predicted else [f"product weakly precious={wp}, predicted {predicted}"]
    # componentwise assembly: head weakly precious, tail precious with the head's sign
    for a in range(R.order):
        comps = [int(c) for c in R.decode(a)]
        head = find_decomposition(parts[0], comps[0], Kind.WEAKLY_PRECIOUS)
        if head is None:
            bad.append(f"no weakly precious head for {R.format(a)}")
            break
        es, us, ws = [head.e], [head.u], [head.w]
        for S, x in zip(parts[1:], comps[1:]):
            tgt = x if head.sign == 1 else S.neg(x)
            d = find_decomposition(S, tgt, Kind.PRECIOUS)
            if d is None:
                bad.append(f"no precious tail for {R.format(a)}")
                break
            u, w = (d.u, d.w) if head.sign == 1 else (S.neg(d.u), S.neg(d.w))
            es.append(d.e), us.append(u), ws.append(w)
        else:
            dec = Decomposition(Kind.WEAKLY_PRECIOUS, head.sign, *(int(R.encode(v)) for v in (es, us, ws)))
            if not verify_decomposition(R, a, dec)[0]:
                bad.append(f"assembly fails at {R.format(a)}")
    details = {"ring": R.name, "weakly_precious": wp, "factor_weakly_precious": fw, "factor_precious": fp}
    return Outcome(not bad, bad[:5], details)


# ---------------------------------------------------------------------------
# Peirce assembly, Morita contexts, matrices, triangular rings


def _corner_idempotent(R: Ring, literal: str | None) -> int:
    if literal is not None:
        return R.parse(literal)
    if hasattr(R, "corner_idempotent"):
        return R.corner_idempotent
    k = R.k
    return R.parse("[" + ",".join("[" + ",".join("1" if i == j == 0 else "0" for j in range(k)) + "]" for i in range(k)) + "]")


def sample_elements(R: Ring, count: int, seed: int) -> list[int]:
    rng = np.random.default_rng(seed)
    if count >= R.order:
        return list(range(R.order))
    return sorted(int(x) for x in rng.choice(R.order, size=count, replace=False))


@_register(
    "L2.11",
    "Peirce assembly with e = diag(1,0): from a decomposition of eae in eRe and a precious "
    "decomposition of the Schur complement in fRf, the assembled decomposition verifies and "
    "(1 - cu^-1) U (1 - u^-1 b) equals diag(u, v).",
    ["L2.11", "L2.13"],
    {"ring": "ring expression", "e": "idempotent literal (optional)", "samples": "int", "seed": "int"},
    [
        {"ring": "M2(Z4)", "samples": 200, "seed": 7},
        {"ring": "M2(Z9)", "samples": 200, "seed": 7},
        {"ring": "morita0(Z4,1,1)", "samples": 200, "seed": 7},
    ],
)
def _l211(p: dict) -> Outcome:
    R = build_ring(p["ring"])
    e = _corner_idempotent(R, p.get("e"))
    eRe = corner_ring(R, e)
    bad = []
    elems = sample_elements(R, int(p.get("samples", 200)), int(p.get("seed", 0)))
    for a in elems:
        corner = int(eRe.label[R.mul(R.mul(e, a), e)])
        cd = find_decomposition(eRe, corner, Kind.WEAKLY_PRECIOUS)
        if cd is None:
            bad.append(f"corner of {R.format(a)} has no decomposition")
            continue
        lift = lambda x: None if x is None else int(eRe.include(x))
        cd = Decomposition(cd.kind, cd.sign, lift(cd.e), lift(cd.u), lift(cd.w))
        res = peirce_assemble(R, e, a, cd)
        if not verify_decomposition(R, a, res.decomposition)[0] or not res.certified(R):
            bad.append(R.format(a))
    details = {"ring": R.name, "e": R.format(e), "elements": len(elems), "failures": len(bad)}
    return Outcome(not bad, bad[:5], details)


@_register(
    "T2.14",
    "Morita contexts with zero pairings over precious corners, and full matrix rings over "
    "precious rings, are precious (and weakly precious).",
    ["T2.12", "T2.14", "C2.15"],
    {"ring": "ring expression"},
    [
        {"ring": e}
        for e in (
            "M2(Z2)", "M2(Z3)", "M2(Z4)", "M2(GF(4))", "M3(Z2)", "M2(Z6)",
            "morita0(Z2,1,1)", "morita0(Z3,1,1)", "morita0(Z4,1,1)", "morita0(Z2,2,1)",
        )
    ],
)
def _t214(p: dict) -> Outcome:
    R = build_ring(p["ring"])
    v = _verdicts(R, (Kind.PRECIOUS, Kind.WEAKLY_PRECIOUS))
    r = ring_is(R, Kind.PRECIOUS)
    return Outcome(all(v.values()), [] if r.value else _fmt(R, r.witness), {"ring": R.name, "ring_is": v})


@_register(
    "T2.16",
    "R is precious iff T_k(R) is (weakly) precious; a triangular matrix is a unit or "
    "nilpotent exactly when its diagonal entries are, and an idempotent has idempotent diagonal.",
    ["T2.16"],
    {"base": "ring expression", "k": "size >= 2", "diagonal": "bool, run the exhaustive diagonal criterion"},
    [
        {"base": "Z2", "k": 2, "diagonal": False},
        {"base": "Z3", "k": 2, "diagonal": False},
        {"base": "Z6", "k": 2, "diagonal": False},
        {"base": "Z2", "k": 3, "diagonal": True},
        {"base": "Z4", "k": 2, "diagonal": True},
        {"base": "GF(4)", "k": 2, "diagonal": False},
    ],
)
def _t216(p: dict) -> Outcome:
    base = parse_ring_expr(p["base"])
    R, T = build_ring(base), build_ring(Triangular(int(p["k"]), base))
    vr = ring_is(R, Kind.PRECIOUS).value
    vt = _verdicts(T, (Kind.PRECIOUS, Kind.WEAKLY_PRECIOUS))
    bad = [] if vr == vt["precious"] == vt["weakly-precious"] else ["verdicts differ"]
    details = {"ring": R.name, "triangular": T.name, "ring_precious": vr, "triangular_is": vt}
    if p.get("diagonal"):
        sT, sR = special_sets(T), special_sets(R)
        diag = np.stack([T.decode(T.elements())[q] for q in (T.pos[i, i] for i in range(T.k))], axis=0)
        for name, tm, rm in (("unit", sT.unit_mask, sR.unit_mask), ("nilpotent", sT.nil_mask, sR.nil_mask)):
            crit = rm[diag].all(axis=0)
            if not np.array_equal(crit, tm):
                bad.append(f"{name} diagonal criterion fails at {T.format(int(np.argmax(crit != tm)))}")
        crit = sR.idem_mask[diag].all(axis=0)
        if (sT.idem_mask & ~crit).any():
            bad.append("idempotent with non-idempotent diagonal")
        details["diagonal_checked"] = T.order
    return Outcome(not bad, bad, details)


@_register(
    "C2.17",
    "Every element is p + w with p = p^m and w nilpotent, and the closed-form precious "
    "decomposition e = 1 - p^k, u = p - 1 + p^k verifies with its inverse checked on both sides.",
    ["C2.17"],
    {"ring": "ring expression"},
    [{"ring": e} for e in SMALL],
)
def _c217(p: dict) -> Outcome:
    R = build_ring(p["ring"])
    bad = []
    exps: set[int] = set()
    for a in range(R.order):
        wit = find_periodic_witness(R, a)
        if wit is None:
            bad.append(R.format(a))
            continue
        try:
            d = periodic_to_precious(R, a, *wit)
        except DecompositionError:
            bad.append(R.format(a))
            continue
        if not verify_decomposition(R, a, d)[0]:
            bad.append(R.format(a))
        exps.add(wit[1])
    return Outcome(not bad, bad[:5], {"ring": R.name, "exponents": sorted(exps)})


@_register(
    "TRIVEXT",
    "The trivial extension R ∝ R^m is (weakly) precious iff R is, element by element "
    "through the projection onto R.",
    ["TRIVEXT"],
    {"base": "ring expression", "m": "module rank"},
    [
        {"base": "Z2", "m": 1},
        {"base": "Z3", "m": 2},
        {"base": "Z4", "m": 1},
        {"base": "T2(Z2)", "m": 1},
        {"base": "M2(Z2)", "m": 1},
    ],
)
def _trivext(p: dict) -> Outcome:
    base = parse_ring_expr(p["base"])
    R, S = build_ring(base), build_ring(TrivialExt(base, int(p["m"])))
    bad = []
    proj = S.decode(S.elements())[0]
    for kind in (Kind.PRECIOUS, Kind.WEAKLY_PRECIOUS):
        ms, mr = decomposable_mask(S, kind), decomposable_mask(R, kind)
        if not np.array_equal(ms, mr[proj]):
            bad.append(f"{kind.value} disagrees at {S.format(int(np.argmax(ms != mr[proj])))}")
    v = {"ring_is": _verdicts(R, (Kind.PRECIOUS, Kind.WEAKLY_PRECIOUS)),
         "extension_is": _verdicts(S, (Kind.PRECIOUS, Kind.WEAKLY_PRECIOUS))}
    if v["ring_is"] != v["extension_is"]:
        bad.append("ring verdicts differ")
    return Outcome(not bad, bad, {"ring": R.name, "extension": S.name, **v})


# ---------------------------------------------------------------------------
# weakly clean and nil-clean rings


@_register(
    "T3.1",
    "A commutative ring with at most three maximal ideals, 2 a unit and J nil is weakly "
    "clean (Z_105, Z_315 and Z_11025 as finite analogs).",
    ["T3.1", "E3.3-analog"],
    {"ring": "ring expression"},
    [{"ring": "Z105"}, {"ring": "Z315"}, {"ring": "Z11025"}],
)
def _t31(p: dict) -> Outcome:
    R = build_ring(p["ring"])
    J = jacobson_radical(R)
    hyp = {
        "commutative": R.is_commutative,
        "maximal_ideals": _count_maximal(R),
        "two_is_unit": R.inverse(R.times(2, R.one)) is not None,
        "radical_nil": bool(R.nilpotent_mask(J).all()),
    }
    holds = hyp["commutative"] and hyp["maximal_ideals"] <= 3 and hyp["two_is_unit"] and hyp["radical_nil"]
    r = ring_is(R, Kind.WEAKLY_CLEAN)
    details = {"ring": R.name, "hypotheses": hyp, "weakly_clean": r.value}
    if not holds:
        return Outcome(False, ["hypotheses not satisfied by instance"], details)
    return Outcome(r.value, [] if r.value else _fmt(R, r.witness), details)


ABELIAN_EXCHANGE = ("Z12", "Z18", "Z30", "trunc(Z2,3)", "trivext(Z3,2)", "trivext(Z4,1)", "GF(4) x Z3", "Z2 x Z2 x Z2")


def _abelian_exchange(R: Ring) -> dict:
    return {"abelian": is_abelian(R).value, "exchange": is_exchange(R).value}


@_register(
    "L3.4",
    "In an abelian exchange ring the two-sided ideal generated by x is R exactly when x is a unit.",
    ["L3.4"],
    {"ring": "ring expression"},
    [{"ring": e} for e in ABELIAN_EXCHANGE],
)
def _l34(p: dict) -> Outcome:
    R = build_ring(p["ring"])
    hyp = _abelian_exchange(R)
    if not all(hyp.values()):
        return Outcome(False, ["hypotheses not satisfied by instance"], {"ring": R.name, **hyp})
    units = special_sets(R).unit_mask
    bad = []
    for x in range(R.order):
        full = len(ideal_generated_by(R, [x], Side.TWO_SIDED)) == R.order
        if full != bool(units[x]):
            bad.append(R.format(x))
    return Outcome(not bad, bad[:5], {"ring": R.name, **hyp})


@_register(
    "L3.5",
    "In an abelian exchange ring J*(R) = J(R).",
    ["L3.5"],
    {"ring": "ring expression"},
    [{"ring": e} for e in ABELIAN_EXCHANGE],
)
def _l35(p: dict) -> Outcome:
    R = build_ring(p["ring"])
    hyp = _abelian_exchange(R)
    J, Js = jacobson_radical(R), jstar_radical(R)
    details = {"ring": R.name, **hyp, "J": _fmt(R, J), "J_star": _fmt(R, Js)}
    if not all(hyp.values()):
        return Outcome(False, ["hypotheses not satisfied by instance"], details)
    same = np.array_equal(J, Js)
    return Outcome(same, [] if same else ["J != J*"], details)


def _is_connected(R: Ring) -> bool:
    return len(special_sets(R).idempotents) == 2


@_register(
    "L3.6",
    "For R without nontrivial idempotents, M_n(R) is nil-clean iff |R/J| = 2 and M_n(J) is nil; "
    "trivext(K,2) realizes K[x,y]/(x,y)^2.",
    ["L3.6", "E3.7"],
    {"ring": "ring expression", "n": "matrix size"},
    [{"ring": e, "n": n} for e in ("Z4", "Z8", "Z9", "GF(4)", "trivext(Z2,1)", "trivext(Z2,2)", "trivext(Z3,2)") for n in (1, 2)],
)
def _l36(p: dict) -> Outcome:
    desc = parse_ring_expr(p["ring"])
    n = int(p["n"])
    R = build_ring(desc)
    if not _is_connected(R):
        return Outcome(False, ["ring has nontrivial idempotents"], {"ring": R.name})
    M = R if n == 1 else build_ring(Matrix(n, desc))
    nc = ring_is(M, Kind.NIL_CLEAN)
    residue = R.order // len(jacobson_radical(R))
    nil = _matrix_radical_nil(R, n)
    predicted = residue == 2 and nil
    details = {"ring": R.name, "n": n, "nil_clean": nc.value, "residue_order": residue,
               "matrix_radical_nil": nil, "predicted": predicted}
    ok = nc.value == predicted
    wit = [] if nc.value or not ok else _fmt(M, nc.witness)
    return Outcome(ok, wit if not ok else [], details)


ABELIAN_SMALL = (
    "Z2", "Z3", "Z4", "Z6", "Z8", "Z9", "Z12", "GF(4)", "Z2 x Z2", "Z4 x Z2",
    "Z3 x Z2", "trunc(Z2,3)", "trivext(Z2,1)", "trivext(Z3,2)",
)


@_register(
    "T3.8",
    "For abelian R: M_n(R) nil-clean iff R/J Boolean and M_n(J) nil; for commutative R "
    "also iff a - a^2 is nilpotent for all a.",
    ["T3.8", "C3.9"],
    {"ring": "ring expression", "n": "matrix size"},
    [{"ring": e, "n": n} for e in ABELIAN_SMALL for n in (1, 2)],
)
def _t38(p: dict) -> Outcome:
    desc = parse_ring_expr(p["ring"])
    n = int(p["n"])
    R = build_ring(desc)
    if not is_abelian(R).value:
        return Outcome(False, ["ring is not abelian"], {"ring": R.name})
    M = R if n == 1 else build_ring(Matrix(n, desc))
    lhs = ring_is(M, Kind.NIL_CLEAN).value
    rhs = _modulo_radical_boolean(R) and _matrix_radical_nil(R, n)
    details = {"ring": R.name, "n": n, "nil_clean": lhs, "boolean_mod_radical_and_nil": rhs}
    ok = lhs == rhs
    if is_commutative(R).value:
        x = R.elements()
        third = bool(R.nilpotent_mask(R._sub(x, R._mul(x, x))).all())
        details["a_minus_a2_nilpotent"] = third
        ok = ok and third == lhs
    return Outcome(ok, [] if ok else ["equivalence broken"], details)


@_register(
    "C3.10",
    "A commutative ring is nil-clean iff M_n(R) is.",
    ["C3.10"],
    {"ring": "ring expression", "n": "matrix size"},
    [{"ring": e, "n": 2} for e in ("Z2", "Z3", "Z4", "Z5", "Z6", "Z8", "Z9", "GF(4)", "Z2 x Z2", "trunc(Z2,2)", "trivext(Z2,1)")],
)
def _c310(p: dict) -> Outcome:
    desc = parse_ring_expr(p["ring"])
    R = build_ring(desc)
    if not is_commutative(R).value:
        return Outcome(False, ["ring is not commutative"], {"ring": R.name})
    M = build_ring(Matrix(int(p["n"]), desc))
    a, b = ring_is(R, Kind.NIL_CLEAN).value, ring_is(M, Kind.NIL_CLEAN).value
    return Outcome(a == b, [] if a == b else ["verdicts differ"], {"ring": R.name, "nil_clean": a, "matrix_nil_clean": b})


def _is_power_of_two(m: int) -> bool:
    return m >= 2 and m & (m - 1) == 0


@_register(
    "C3.11",
    "M_n(Z_m) is nil-clean iff m is a power of 2.",
    ["C3.11"],
    {"n": "matrix size", "m": "modulus"},
    [{"n": n, "m": m} for n in (1, 2) for m in range(2, 10)],
)
def _c311(p: dict) -> Outcome:
    n, m = int(p["n"]), int(p["m"])
    d = ZMod(m) if n == 1 else Matrix(n, ZMod(m))
    R = build_ring(d)
    r = ring_is(R, Kind.NIL_CLEAN)
    expected = _is_power_of_two(m)
    details = {"ring": render(d), "nil_clean": r.value, "expected": expected}
    wit = [] if r.value else _fmt(R, r.witness)
    return Outcome(r.value == expected, wit if r.value != expected else [], {**details, "witness": wit})


# ---------------------------------------------------------------------------
# rings made of very idempotents, units and nilpotents


def _coverage_outcome(R: Ring, result, expect: bool, extra: dict) -> Outcome:
    wit = [] if result.value else _fmt(R, result.witness)
    details = {"ring": R.name, "value": result.value, "expected": expect, "witness": wit, **extra}
    ok = result.value == expect
    return Outcome(ok, [] if ok else (wit or ["unexpectedly true"]), details)


def _paper_witness(R: Ring, literal: str | None, covered_by) -> dict:
    if literal is None:
        return {}
    x = R.parse(literal)
    return {"checked_witness": literal, "checked_witness_covered": bool(covered_by[x])}


@_register(
    "L4.1",
    "R = U ∪ Id ∪ -Id holds exactly on Boolean rings, division rings, Z3 x Z3 and Z3 x Boolean.",
    ["L4.1"],
    {"ring": "ring expression", "expect": "predicted verdict", "witness": "literal expected to be uncovered (optional)"},
    [{"ring": e, "expect": True} for e in ("Z2", "Z2 x Z2", "Z2 x Z2 x Z2", "GF(4)", "GF(8)", "Z3", "Z5", "Z7", "GF(9)", "Z3 x Z3", "Z3 x Z2", "Z3 x Z2 x Z2")]
    + [{"ring": "Z3 x Z3 x Z2", "expect": False, "witness": "(1,-1,0)"}, {"ring": "Z3 x Z3 x Z3", "expect": False, "witness": "(1,-1,0)"}]
    + [{"ring": e, "expect": False} for e in ("Z4", "GF(4) x Z2", "Z5 x Z2", "M2(Z2)")],
)
def _l41(p: dict) -> Outcome:
    R = build_ring(p["ring"])
    s = special_sets(R)
    covered = s.idem_mask | s.neg_idem_mask | s.unit_mask
    extra = _paper_witness(R, p.get("witness"), covered)
    out = _coverage_outcome(R, covers_id_u(R), bool(p["expect"]), extra)
    if extra and extra["checked_witness_covered"]:
        out.passed = False
    return out


@_register(
    "T4.3",
    "On abelian rings, coverage by very idempotents, units and nilpotents holds exactly for "
    "Z3, Boolean rings, Z3 x Z3, Z3 x Boolean and local rings with nil radical.",
    ["L4.2", "T4.3"],
    {"ring": "ring expression", "expect": "predicted verdict"},
    [{"ring": e, "expect": True} for e in ("Z3", "Z2 x Z2", "Z2 x Z2 x Z2", "Z3 x Z3", "Z3 x Z2", "Z3 x Z2 x Z2", "Z4", "Z8", "Z9", "Z25", "trunc(Z2,3)", "trivext(Z3,2)", "GF(4)", "GF(9)")]
    + [{"ring": e, "expect": False} for e in ("Z10", "Z12", "Z15", "Z3 x Z3 x Z3", "Z3 x Z3 x Z2", "GF(4) x Z2", "Z4 x Z2", "Z5 x Z2")],
)
def _t43(p: dict) -> Outcome:
    R = build_ring(p["ring"])
    ab = is_abelian(R).value
    if not ab:
        return Outcome(False, ["ring is not abelian"], {"ring": R.name})
    return _coverage_outcome(R, covers_id_u_n(R), bool(p["expect"]), {})


@_register(
    "L4.5",
    "When R is covered by very idempotents, units and nilpotents, every corner eRe at a "
    "noncentral idempotent is a division ring of order 2 or 3.",
    ["L4.4", "L4.5"],
    {"ring": "ring expression"},
    [{"ring": e} for e in ("M2(Z2)", "M2(Z3)", "T2(Z2)", "T2(Z3)", "morita0(Z2,1,1)", "morita0(Z3,1,1)", "morita0(Z2,2,1)", "morita0(Z3,1,0)")],
)
def _l45(p: dict) -> Outcome:
    R = build_ring(p["ring"])
    cov = covers_id_u_n(R).value
    details = {"ring": R.name, "covered": cov}
    if not cov:
        return Outcome(False, ["ring is not covered"], details)
    bad = []
    orders = set()
    nc = _noncentral_idempotents(R)
    for e in nc:
        C = corner_ring(R, int(e))
        orders.add(C.order)
        if not is_division(C).value or C.order not in (2, 3):
            bad.append(R.format(int(e)))
    details.update(noncentral_idempotents=len(nc), corner_orders=sorted(orders))
    return Outcome(not bad, bad[:5], details)


@_register(
    "T4.8",
    "Coverage by very idempotents, units and nilpotents: positive and negative witnesses, with "
    "the semiprime (order 16 or 81) and non-semiprime (NJ) side conditions on nonabelian positives.",
    ["T4.6", "T4.7", "T4.8"],
    {"ring": "ring expression", "expect": "predicted verdict", "witness": "literal expected to be uncovered (optional)"},
    [{"ring": e, "expect": True} for e in (
        "M2(Z2)", "M2(Z3)", "morita0(Z2,1,1)", "morita0(Z2,2,1)", "morita0(Z3,1,1)", "T2(Z2)", "T2(Z3)",
        "Z3", "Z4", "Z5", "Z8", "Z9", "Z25", "Z27", "GF(4)", "GF(8)", "GF(9)",
        "Z2 x Z2 x Z2", "Z3 x Z3", "Z3 x Z2 x Z2",
    )]
    + [{"ring": e, "expect": False} for e in ("Z10", "Z12", "M2(Z4)")]
    + [{"ring": "Z3 x Z3 x Z3", "expect": False, "witness": "(1,-1,0)"}],
)
def _t48(p: dict) -> Outcome:
    R = build_ring(p["ring"])
    s = special_sets(R)
    covered = s.idem_mask | s.neg_idem_mask | s.unit_mask | s.nil_mask
    extra = _paper_witness(R, p.get("witness"), covered)
    res = covers_id_u_n(R)
    ok_side = True
    if res.value and not is_abelian(R).value:
        semi = is_semiprime(R).value
        extra["nonabelian"] = True
        extra["semiprime"] = semi
        if semi:
            ok_side = R.order in (16, 81)
        else:
            extra["nj"] = is_nj(R).value
            ok_side = extra["nj"]
    out = _coverage_outcome(R, res, bool(p["expect"]), extra)
    if not ok_side or (extra.get("checked_witness_covered")):
        out.passed = False
    return out


# ---------------------------------------------------------------------------
# running


def _report(id: str, params: dict, outcome: Outcome | None, seconds: float, skipped: str | None = None) -> TheoremReport:
    if outcome is None:
        return TheoremReport(id, params, "skipped", [], {"reason": skipped}, seconds)
    verdict = "pass" if outcome.passed else "fail"
    wit = list(outcome.witnesses)
    if verdict == "fail" and not wit:
        wit = ["(no element witness)"]
    return TheoremReport(id, params, verdict, wit, outcome.details, seconds)


def run_check(id: str, params: dict | None = None) -> TheoremReport:
    try:
        check = REGISTRY[id]
    except KeyError:
        raise KeyError(f"unknown check {id!r}") from None
    params = dict(check.defaults[0] if params is None else params)
    t0 = time.perf_counter()
    try:
        out = check.fn(params)
    except limits.BudgetExceeded as exc:
        return _report(id, params, None, time.perf_counter() - t0, skipped=f"budget: {exc}")
    return _report(id, params, out, time.perf_counter() - t0)


def jobs_for(ids=None) -> list[tuple[str, dict]]:
    ids = list(REGISTRY) if ids is None else list(ids)
    out = []
    for i in ids:
        if i not in REGISTRY:
            raise KeyError(f"unknown check {i!r}")
        out.extend((i, dict(p)) for p in REGISTRY[i].defaults)
    return out


def _worker(args):
    lim, id, params = args
    with limits.using(lim):
        return run_check(id, params)


def run_all(ids=None, jobs: int = 1) -> list[TheoremReport]:
    """Run every default instance of ``ids`` (all checks by default) in registry order."""
    tasks = jobs_for(ids)
    if jobs <= 1 or len(tasks) <= 1:
        return [run_check(i, p) for i, p in tasks]
    lim = limits.current()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_worker, [(lim, i, p) for i, p in tasks]))

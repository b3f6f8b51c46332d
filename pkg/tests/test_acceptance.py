"""The eleven acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line; the lines are repeated in the pytest
terminal summary under "acceptance criteria".
"""
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from oracles import NaiveRing, is_prime_power, zm_covers
from ringlab import limits
from ringlab.analysis import jacobson_radical, special_sets
from ringlab.catalog import CONNECTED, small_catalog
from ringlab.decompositions import (
    Decomposition,
    Kind,
    find_decomposition,
    find_periodic_witness,
    lift_idempotent_mod_nil,
    peirce_assemble,
    periodic_to_precious,
    verify_decomposition,
)
from ringlab.expr import Matrix, parse_ring_expr
from ringlab.ideals import Side, ideal_generated_by, nil_index, quotient_ring
from ringlab.predicates import covers_id_u_n, is_division, ring_is
from ringlab.rings import build_ring, corner_ring
from ringlab.theorems import _noncentral_idempotents, sample_elements


def test_criterion_01_matrix_nil_clean_over_zm(acceptance_line):
    t0 = time.perf_counter()
    got = {}
    for n in (1, 2):
        for m in range(2, 10):
            R = build_ring(f"Z{m}" if n == 1 else f"M2(Z{m})")
            got[n, m] = ring_is(R, Kind.NIL_CLEAN).value
    elapsed = time.perf_counter() - t0
    expected = {(n, m): m in (2, 4, 8) for n in (1, 2) for m in range(2, 10)}
    hits = sum(got[k] == expected[k] for k in expected)
    ok = hits == 16 and elapsed < 60
    acceptance_line(1, ok, "nil-clean(M_n(Z_m)) iff m in {2,4,8}", f"{hits}/16 in {elapsed:.2f}s")
    assert ok


def test_criterion_02_zm_coverage_classification(acceptance_line):
    mismatches = []
    for m in range(2, 31):
        oracle, owit = zm_covers(m)
        res = covers_id_u_n(build_ring(f"Z{m}"))
        predicted = is_prime_power(m) or m == 6
        wit = None if res.witness is None else res.witness[0]
        if not (res.value == oracle == predicted and wit == owit):
            mismatches.append(m)
    acceptance_line(2, not mismatches, "covers_id_u_n(Z_m), m in [2,30]", f"{29 - len(mismatches)}/29")
    assert not mismatches


def test_criterion_03_example_pair_decomposition(acceptance_line):
    with limits.using(max_order=101 ** 8):
        R = build_ring("M2(Z101) x M2(Z101)")
        a = R.parse("([[3,9],[-7,-2]],[[-3,-9],[7,2]])")
        minus_first = R.parse("([[-3,-9],[7,2]],[[3,9],[-7,-2]])")
        e = R.parse("([[1,0],[7,0]],[[1,0],[6,0]])")
        u = R.parse("([[-1,0],[-13,1]],[[-1,0],[0,-1]])")
        w = R.parse("([[3,9],[-1,-3]],[[-3,-9],[1,3]])")
        flags = [
            R.mul(e, e) == e,
            R.mul(u, R.inverse(u)) == R.one == R.mul(R.inverse(u), u),
            R.nilpotency_index(w) == 2,
            R.add(R.add(e, u), w) == a,
            R.neg(a) == minus_first,
        ]
        ok_dec = verify_decomposition(R, a, Decomposition(Kind.PRECIOUS, 1, e, u, w))[0]
    ok = all(flags) and ok_dec
    acceptance_line(3, ok, "(A,-A) = E + U + W in M2(Z101) x M2(Z101)", f"flags={flags}")
    assert ok


CATALOG = small_catalog(256)


def test_criterion_04_search_matches_naive_oracle(acceptance_line):
    disagreements = []
    checked = 0
    for expr in CATALOG:
        R = build_ring(expr)
        naive = NaiveRing(R)
        for kind in Kind:
            ref = naive.decomposable(kind.value)
            for a in range(R.order):
                d = find_decomposition(R, a, kind)
                checked += 1
                if (d is not None) != ref[a]:
                    disagreements.append((expr, kind.value, a))
                elif d is not None and not verify_decomposition(R, a, d)[0]:
                    disagreements.append((expr, kind.value, a, "invalid"))
    ok = not disagreements
    acceptance_line(4, ok, "find_decomposition vs naive triple loop", f"{checked - len(disagreements)}/{checked} over {len(CATALOG)} rings")
    assert ok, disagreements[:5]


def test_criterion_05_radical_three_ways(acceptance_line):
    bad = []
    n = 0
    for expr in CATALOG:
        R = build_ring(expr)
        if R.order > limits.current().lattice_budget:
            continue
        n += 1
        q = jacobson_radical(R, "quasi")
        lat = jacobson_radical(R, "lattice")
        st = jacobson_radical(R, "structural")
        if not (np.array_equal(q, lat) and np.array_equal(q, st)):
            bad.append(expr)
    ok = not bad and n == len(CATALOG)
    acceptance_line(5, ok, "J by quasi-regularity = maximal right ideals = structural rule", f"{n - len(bad)}/{n} rings")
    assert ok, bad


def test_criterion_06_periodic_precious_construction(acceptance_line):
    failures = []
    total = 0
    for expr in CATALOG:
        R = build_ring(expr)
        for a in range(R.order):
            total += 1
            wit = find_periodic_witness(R, a)
            if wit is None:
                failures.append((expr, a))
                continue
            p, m = wit
            d = periodic_to_precious(R, a, p, m)
            ok = verify_decomposition(R, a, d)[0]
            k = m - 1
            if k >= 2:
                pk = R.pow(p, k)
                inv = R.add(R.sub(R.pow(p, k - 1), R.one), pk)
                ok = ok and R.mul(d.u, inv) == R.one and R.mul(inv, d.u) == R.one
            if not ok:
                failures.append((expr, a))
    ok = not failures
    acceptance_line(6, ok, "periodic witness -> precious decomposition on every element", f"{total - len(failures)}/{total}")
    assert ok, failures[:5]


def test_criterion_07_peirce_assembly(acceptance_line):
    bad = []
    total = 0
    for expr in ("M2(Z4)", "M2(Z9)"):
        R = build_ring(expr)
        e = R.parse("[[1,0],[0,0]]")
        f = R.sub(R.one, e)
        eRe = corner_ring(R, e)
        for a in sample_elements(R, 200, seed=2024):
            total += 1
            corner = int(eRe.label[R.mul(R.mul(e, a), e)])
            cd = find_decomposition(eRe, corner, Kind.PRECIOUS)
            cd = Decomposition(cd.kind, cd.sign, *(int(eRe.include(x)) for x in (cd.e, cd.u, cd.w)))
            res = peirce_assemble(R, e, a, cd)
            conj = R.mul(R.mul(res.left, res.unit), res.right)
            block_diag = R.mul(R.mul(e, conj), f) == 0 and R.mul(R.mul(f, conj), e) == 0
            ok = (
                verify_decomposition(R, a, res.decomposition)[0]
                and res.certified(R)
                and conj == res.diag
                and block_diag
                and R.inverse(res.left) is not None
                and R.inverse(res.right) is not None
            )
            if not ok:
                bad.append((expr, a))
    ok = not bad and total == 400
    acceptance_line(7, ok, "Peirce assembly with e = diag(1,0)", f"{total - len(bad)}/{total}")
    assert ok, bad[:5]


def _matrix_radical_nil(R, n):
    J = jacobson_radical(R)
    if n == 1:
        return bool(R.nilpotent_mask(J).all())
    M = build_ring(Matrix(n, R.descriptor))
    grids = np.meshgrid(*([J] * (n * n)), indexing="ij")
    return bool(M.nilpotent_mask(M.encode([g.ravel() for g in grids])).all())


def test_criterion_08_connected_matrix_nil_clean(acceptance_line):
    expected = {
        "Z4": True, "Z8": True, "Z9": False, "GF(4)": False,
        "trivext(Z2,1)": True, "trivext(Z2,2)": True, "trivext(Z3,2)": False,
    }
    assert set(expected) == set(CONNECTED)
    t0 = time.perf_counter()
    bad = []
    for expr in CONNECTED:
        R = build_ring(expr)
        assert len(special_sets(R).idempotents) == 2
        J = jacobson_radical(R)
        residue_two = R.order // len(J) == 2
        x = R.elements()
        jm = np.zeros(R.order, dtype=bool)
        jm[J] = True
        boolean_mod_j = bool(jm[R._sub(R._mul(x, x), x)].all())
        for n in (1, 2):
            M = R if n == 1 else build_ring(Matrix(n, parse_ring_expr(expr)))
            nc = ring_is(M, Kind.NIL_CLEAN).value
            nil = _matrix_radical_nil(R, n)
            if not (nc == expected[expr] == (residue_two and nil) == (boolean_mod_j and nil)):
                bad.append((expr, n))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 300
    acceptance_line(8, ok, "connected catalog: nil-clean(M_n(R)) iff |R/J| = 2 and M_n(J) nil", f"14 cases in {elapsed:.1f}s")
    assert ok, bad


def test_criterion_09_idempotent_lifting(acceptance_line):
    bad = []
    count = 0
    for expr, gen in (("Z8", "2"), ("trunc(Z2,5)", "poly[0,1]")):
        R = build_ring(expr)
        I = ideal_generated_by(R, [R.parse(gen)], Side.TWO_SIDED)
        Q = quotient_ring(R, I)
        bound = math.ceil(math.log2(nil_index(I))) + 1
        lifted_classes = set()
        for x in range(R.order):
            if R.sub(R.mul(x, x), x) not in I:
                continue
            count += 1
            f, trace = lift_idempotent_mod_nil(R, I, x, return_trace=True)
            if not (R.mul(f, f) == f and R.sub(f, x) in I and len(trace) - 1 <= bound):
                bad.append((expr, x))
            lifted_classes.add(int(Q.project(x)))
        quotient_idems = {int(i) for i in special_sets(Q).idempotents}
        if lifted_classes != quotient_idems:
            bad.append((expr, "classes"))
    ok = not bad
    acceptance_line(9, ok, "idempotents lift modulo nil ideals within ceil(log2 index)+1 steps", f"{count} elements")
    assert ok, bad


def test_criterion_10_coverage_witnesses(acceptance_line):
    bad = []
    for expr in ("M2(Z2)", "M2(Z3)", "morita0(Z2,1,1)", "morita0(Z3,1,1)", "T2(Z2)"):
        R = build_ring(expr)
        if not covers_id_u_n(R).value:
            bad.append(expr)
            continue
        for e in _noncentral_idempotents(R):
            C = corner_ring(R, int(e))
            if C.order not in (2, 3) or not is_division(C).value:
                bad.append((expr, R.format(int(e))))
    negatives = {"Z10": "2", "Z12": "2", "M2(Z4)": "[[1,2],[1,0]]", "Z3 x Z3 x Z3": "(2,1,0)"}
    for expr, wit in negatives.items():
        R = build_ring(expr)
        res = covers_id_u_n(R)
        if res.value or R.format(res.witness[0]) != wit:
            bad.append(expr)
    R = build_ring("Z3 x Z3 x Z3")
    s = special_sets(R)
    x = R.parse("(1,-1,0)")
    if s.idem_mask[x] or s.neg_idem_mask[x] or s.unit_mask[x] or s.nil_mask[x]:
        bad.append("(1,-1,0)")
    ok = not bad
    acceptance_line(10, ok, "coverage positives, recorded negative witnesses, corners of order 2 or 3")
    assert ok, bad


@pytest.mark.slow
def test_criterion_11_verify_all_is_deterministic(acceptance_line, tmp_path):
    outs = []
    for jobs in (1, 1, 1, 4):
        cmd = [sys.executable, "-m", "ringlab", "verify", "all", "--jobs", str(jobs), "--cache-dir", str(tmp_path / "c")]
        proc = subprocess.run(cmd, capture_output=True, check=False)
        assert proc.returncode == 0, proc.stderr.decode()
        outs.append(proc.stdout)
    ok = all(o == outs[0] for o in outs) and len(outs[0]) > 0
    acceptance_line(11, ok, "verify all byte-identical over 3 runs and --jobs 1/4", f"{len(outs[0])} bytes")
    assert ok

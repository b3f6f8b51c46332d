import pytest
from hypothesis import given
from hypothesis import strategies as st

from ringlab import limits
from ringlab.analysis import special_sets
from ringlab.catalog import SMALL
from ringlab.decompositions import (
    Decomposition,
    DecompositionError,
    Kind,
    decomposable_mask,
    find_decomposition,
    find_periodic_witness,
    lift_decomposition_mod_nil,
    lift_idempotent_mod_nil,
    nil_clean_to_precious,
    peirce_assemble,
    periodic_to_precious,
    verify_decomposition,
)
from ringlab.ideals import ideal_generated_by, nil_index, quotient_ring
from ringlab.rings import build_ring, generalized_matrix_view

RINGS = [e for e in SMALL if build_ring(e).order <= 128]


@given(st.sampled_from(RINGS), st.sampled_from(list(Kind)), st.data())
def test_found_decompositions_verify(expr, kind, data):
    R = build_ring(expr)
    a = data.draw(st.integers(0, R.order - 1))
    d = find_decomposition(R, a, kind)
    assert (d is not None) == bool(decomposable_mask(R, kind, elements=[a])[0])
    if d is not None:
        assert verify_decomposition(R, a, d) == (True, "ok")
        assert d.kind is kind


def test_search_order_prefers_sign_plus_then_least_idempotent():
    R = build_ring("Z6")
    d = find_decomposition(R, 0, Kind.WEAKLY_CLEAN)
    assert d.sign == 1 and d.e == 1 and d.u == 5
    assert find_decomposition(R, 0, Kind.CLEAN) == Decomposition(Kind.CLEAN, 1, 1, u=5)


def test_z3_is_precious_but_not_nil_clean():
    R = build_ring("Z3")
    assert find_decomposition(R, 2, Kind.NIL_CLEAN) is None
    assert find_decomposition(R, 2, Kind.PRECIOUS) == Decomposition(Kind.PRECIOUS, 1, 0, u=2, w=0)
    # -1 = -1 + 0 is weakly nil-clean
    assert find_decomposition(R, 2, Kind.WEAKLY_NIL_CLEAN).sign == -1


def test_example_pair_component_verifies():
    with limits.using(max_order=101 ** 4):
        R = build_ring("M2(Z101)")
        d = Decomposition(
            Kind.PRECIOUS, 1, R.parse("[[1,0],[7,0]]"), u=R.parse("[[-1,0],[-13,1]]"), w=R.parse("[[3,9],[-1,-3]]")
        )
        assert verify_decomposition(R, R.parse("[[3,9],[-7,-2]]"), d) == (True, "ok")
        assert R.nilpotency_index(d.w) == 2


@pytest.mark.parametrize(
    "d, reason",
    [
        (Decomposition(Kind.NIL_CLEAN, 1, 0, w=0), "parts sum to 0, not 1"),
        (Decomposition(Kind.CLEAN, -1, 1, u=1), "clean decompositions use sign +1"),
        (Decomposition(Kind.CLEAN, 1, 1), "clean needs a unit part"),
        (Decomposition(Kind.NIL_CLEAN, 1, 1, u=1, w=0), "nil-clean forbids a unit part"),
        (Decomposition(Kind.CLEAN, 1, 2, u=1), "e=2 is not idempotent"),
        (Decomposition(Kind.CLEAN, 1, 0, u=2), "u=2 is not a unit"),
        (Decomposition(Kind.NIL_CLEAN, 1, 0, w=3), "w=3 is not nilpotent"),
    ],
)
def test_verify_reports_the_failing_invariant(d, reason):
    assert verify_decomposition(build_ring("Z6"), 1, d) == (False, reason)


def test_verify_rejects_foreign_indices():
    with pytest.raises(DecompositionError):
        verify_decomposition(build_ring("Z6"), 1, Decomposition(Kind.CLEAN, 1, 9, u=1))


def test_kind_parse():
    assert Kind.parse("Weakly_Nil Clean") is Kind.WEAKLY_NIL_CLEAN
    assert Kind.parse("nilclean") is Kind.NIL_CLEAN
    with pytest.raises(ValueError):
        Kind.parse("tidy")


@pytest.mark.parametrize("a, e, w, expect", [(0, 0, 0, (1, 3, 0)), (1, 1, 0, (0, 1, 0)), (3, 1, 2, (0, 1, 2))])
def test_nil_clean_rewrite_in_z4(a, e, w, expect):
    R = build_ring("Z4")
    d = nil_clean_to_precious(R, a, e, w)
    assert (d.e, d.u, d.w) == expect
    assert verify_decomposition(R, a, d)[0]


def test_nil_clean_rewrite_rejects_bad_input():
    R = build_ring("Z4")
    with pytest.raises(DecompositionError):
        nil_clean_to_precious(R, 3, 2, 1)


@pytest.mark.parametrize("ring, a, expect", [("Z7", 2, (2, 4)), ("Z4", 2, (0, 2)), ("Z6", 0, (0, 2))])
def test_periodic_witness(ring, a, expect):
    assert find_periodic_witness(build_ring(ring), a) == expect


def test_periodic_rewrite_closed_form():
    R = build_ring("Z7")
    d = periodic_to_precious(R, 2, 2, 4)
    assert (d.e, d.u, d.w) == (0, 2, 0) and R.mul(2, 4) == 1
    assert periodic_to_precious(R, 1, 1, 2) == Decomposition(Kind.PRECIOUS, 1, 0, u=1, w=0)
    with pytest.raises(DecompositionError):
        periodic_to_precious(R, 2, 2, 3)


@pytest.mark.parametrize("expr", ["Z12", "M2(Z2)", "trivext(Z3,2)", "T2(Z3)", "GF(9)"])
def test_periodic_route_covers_every_element(expr):
    R = build_ring(expr)
    for a in range(R.order):
        p, m = find_periodic_witness(R, a)
        assert verify_decomposition(R, a, periodic_to_precious(R, a, p, m))[0]


def test_matrix_view_splits_the_example():
    R = build_ring("M2(Z2)")
    e, a = R.parse("[[1,0],[0,0]]"), R.parse("[[1,1],[1,0]]")
    view = generalized_matrix_view(R, e, a)
    assert [R.format(x) for x in view] == ["[[1,0],[0,0]]", "[[0,1],[0,0]]", "[[0,0],[1,0]]", "[[0,0],[0,0]]"]


def test_peirce_assembly_example():
    R = build_ring("M2(Z2)")
    e, a = R.parse("[[1,0],[0,0]]"), R.parse("[[1,1],[1,0]]")
    res = peirce_assemble(R, e, a, Decomposition(Kind.PRECIOUS, 1, R.zero, u=e, w=R.zero))
    assert R.format(res.schur) == "[[0,0],[0,1]]"
    d = res.decomposition
    assert (d.e, R.format(d.u), d.w) == (R.zero, "[[1,1],[1,0]]", R.zero)
    assert res.certified(R) and verify_decomposition(R, a, d)[0]


def test_peirce_assembly_at_the_idempotent_itself():
    R = build_ring("M2(Z3)")
    e = R.parse("[[1,0],[0,0]]")
    res = peirce_assemble(R, e, e, Decomposition(Kind.PRECIOUS, 1, R.zero, u=e, w=R.zero))
    assert res.schur == R.zero
    assert verify_decomposition(R, e, res.decomposition)[0] and res.certified(R)


def test_peirce_assembly_rejects_a_corner_that_does_not_sum():
    R = build_ring("M2(Z2)")
    e = R.parse("[[1,0],[0,0]]")
    with pytest.raises(DecompositionError):
        peirce_assemble(R, e, R.one, Decomposition(Kind.PRECIOUS, 1, e, u=e, w=R.zero))


def test_idempotent_lift_trace_in_z8():
    R = build_ring("Z8")
    I = ideal_generated_by(R, [2])
    f, trace = lift_idempotent_mod_nil(R, I, 3, return_trace=True)
    assert trace == [3, 5, 1] and f == 1
    assert lift_idempotent_mod_nil(R, I, 1) == 1


@pytest.mark.parametrize("expr, gen", [("trunc(Z2,5)", "poly[0,1]"), ("trunc(Z4,3)", "poly[2,1]"), ("trivext(Z8,1)", "(2,[1])")])
def test_lift_defect_shrinks_each_step(expr, gen):
    R = build_ring(expr)
    I = ideal_generated_by(R, [R.parse(gen)])
    for x in range(R.order):
        if R.sub(R.mul(x, x), x) not in I:
            continue
        f, trace = lift_idempotent_mod_nil(R, I, x, return_trace=True)
        defects = [R.nilpotency_index(R.sub(R.mul(y, y), y)) for y in trace]
        assert all(b < a for a, b in zip(defects, defects[1:]))
        assert defects[-1] == 1 and R.sub(f, x) in I
        assert len(trace) - 1 <= nil_index(I).bit_length()


def test_lift_rejects_non_nil_ideal():
    R = build_ring("Z6")
    with pytest.raises(DecompositionError):
        lift_idempotent_mod_nil(R, ideal_generated_by(R, [2]), 1)


@pytest.mark.parametrize("expr, gen", [("trunc(Z3,2)", "poly[0,1]"), ("trivext(Z3,2)", "(0,[1,0])"), ("Z9", "3")])
def test_decompositions_lift_from_the_quotient(expr, gen):
    R = build_ring(expr)
    I = ideal_generated_by(R, [R.parse(gen)])
    Q = quotient_ring(R, I)
    for kind in (Kind.PRECIOUS, Kind.CLEAN, Kind.WEAKLY_NIL_CLEAN):
        for a in range(R.order):
            dbar = find_decomposition(Q, Q.project(a), kind)
            if dbar is None:
                continue
            d = lift_decomposition_mod_nil(R, Q, I, a, dbar)
            assert Q.project(d.e) == dbar.e and d.sign == dbar.sign


def test_lift_through_zero_ideal_is_verbatim():
    R = build_ring("Z5")
    I = ideal_generated_by(R, [0])
    Q = quotient_ring(R, I)
    d = find_decomposition(Q, 3, Kind.PRECIOUS)
    assert lift_decomposition_mod_nil(R, Q, I, 3, d) == d


def test_masks_accept_an_explicit_sets_bundle():
    R = build_ring("T2(Z2)")
    sets = special_sets(R)
    assert decomposable_mask(R, Kind.NIL_CLEAN, sets).all()
    assert decomposable_mask(R, "clean", sets, elements=[0, 5]).tolist() == [True, True]

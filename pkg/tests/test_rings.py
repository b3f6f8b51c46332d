import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import mat_add, mat_mul, nil_index_naive, poly_mul_trunc
from ringlab import limits
from ringlab.catalog import SMALL
from ringlab.ideals import Side, ideal_generated_by, quotient_ring
from ringlab.literals import LiteralError
from ringlab.rings import RingBuildError, build_ring, check_axioms, corner_ring


@pytest.mark.parametrize("expr", SMALL)
def test_catalog_axioms_and_literals(expr):
    R = build_ring(expr)
    assert check_axioms(R)
    assert [R.parse(R.format(a)) for a in range(R.order)] == list(range(R.order))


@pytest.mark.parametrize("expr", ["M2(Z101) x Z7", "M3(Z5)", "T4(Z3)", "morita0(Z5,2,2)", "trunc(M2(Z3),3)"])
def test_sampled_axioms_on_larger_rings(expr):
    with limits.using(max_order=10**12):
        assert check_axioms(build_ring(expr), samples=2000, seed=3)


@given(st.integers(2, 60), st.integers(0, 10**6), st.integers(0, 10**6))
def test_zmod_matches_integers(n, x, y):
    R = build_ring(f"Z{n}")
    a, b = x % n, y % n
    assert R.add(a, b) == (a + b) % n
    assert R.mul(a, b) == a * b % n
    assert R.neg(a) == -a % n
    assert R.characteristic == n


matrices = st.integers(2, 6).flatmap(
    lambda m: st.tuples(
        st.just(m),
        st.lists(st.lists(st.integers(0, m - 1), min_size=2, max_size=2), min_size=2, max_size=2),
        st.lists(st.lists(st.integers(0, m - 1), min_size=2, max_size=2), min_size=2, max_size=2),
    )
)


@given(matrices)
def test_matrix_ring_matches_list_arithmetic(args):
    m, A, B = args
    R = build_ring(f"M2(Z{m})")
    a, b = R.from_struct(A), R.from_struct(B)
    assert R.to_struct(R.mul(a, b)) == mat_mul(A, B, m)
    assert R.to_struct(R.add(a, b)) == mat_add(A, B, m)


@given(st.integers(2, 5), st.integers(2, 4), st.data())
def test_truncated_matches_polynomials(m, n, data):
    R = build_ring(f"trunc(Z{m},{n})")
    f = data.draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    g = data.draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    a, b = (R.parse("poly[" + ",".join(map(str, c)) + "]") for c in (f, g))
    assert list(R.to_struct(R.mul(a, b)).coeffs) == poly_mul_trunc(f, g, n, m)


def test_triangular_matches_full_matrices():
    T = build_ring("T3(Z2)")
    for a, b in itertools.product(range(T.order), repeat=2):
        A, B = T.to_struct(a), T.to_struct(b)
        if (a * 7 + b) % 11:
            continue  # a fixed sixth of the pairs keeps this quick
        assert T.to_struct(T.mul(a, b)) == mat_mul(A, B, 2)


def test_trivial_extension_rule():
    R = build_ring("trivext(Z4,2)")
    for a, b in [(5, 17), (3, 60), (33, 22), (63, 63)]:
        (r, v), (s, w) = R.to_struct(a), R.to_struct(b)
        rs = r * s % 4
        mix = [(r * y + x * s) % 4 for x, y in zip(v, w)]
        assert R.to_struct(R.mul(a, b)) == (rs, mix)


def test_morita_zero_pairings():
    R = build_ring("morita0(Z3,1,1)")
    for a, b in itertools.product(range(0, 81, 7), range(0, 81, 5)):
        (p, x, y, q), (p2, x2, y2, q2) = R.to_struct(a), R.to_struct(b)
        expect = (
            p * p2 % 3,
            [(p * x2[0] + x[0] * q2) % 3],
            [(y[0] * p2 + q * y2[0]) % 3],
            q * q2 % 3,
        )
        assert R.to_struct(R.mul(a, b)) == expect


def test_product_is_componentwise():
    R = build_ring("Z3 x Z4 x Z5")
    a, b = R.parse("(2,3,4)"), R.parse("(2,2,3)")
    assert R.format(R.mul(a, b)) == "(1,2,2)"
    assert R.format(R.add(a, b)) == "(1,1,2)"
    assert R.characteristic == 60


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
def test_galois_fields_are_fields(q):
    F = build_ring(f"GF({q})")
    assert F.order == q and F.is_commutative
    assert all(F.inverse(a) is not None for a in range(1, q))
    # the multiplicative group is cyclic
    orders = []
    for a in range(1, q):
        k, p = 1, a
        while p != F.one:
            p = F.mul(p, a)
            k += 1
        orders.append(k)
    assert max(orders) == q - 1


@pytest.mark.parametrize("q", [16, 25, 27])
def test_unsupported_field_sizes(q):
    with pytest.raises(RingBuildError):
        build_ring(f"GF({q})")


def test_gf4_multiplication():
    F = build_ring("GF(4)")
    # x * x = x + 1 with x = 2, x + 1 = 3
    assert F.mul(2, 2) == 3 and F.mul(2, 3) == 1 and F.add(2, 3) == 1


UNIT_RINGS = SMALL + ("M2(T2(Z2))", "M3(Z2)", "M2(Z6)", "T3(Z4)", "morita0(GF(4),1,2)", "trunc(M2(Z2),2)")


@pytest.mark.parametrize("expr", UNIT_RINGS)
def test_fast_unit_paths_match_generic_search(expr):
    R = build_ring(expr)
    x = R.elements()
    fast = R.inverses(x)
    generic = R._inverse_generic(x)
    assert np.array_equal(fast >= 0, generic >= 0)
    units = np.flatnonzero(fast >= 0)
    assert np.all(R._mul(units, fast[units]) == R.one)
    assert np.all(R._mul(fast[units], units) == R.one)


@pytest.mark.parametrize("expr", SMALL[::3] + ("M2(T2(Z2))", "T3(Z4)"))
def test_nilpotency_matches_naive_iteration(expr):
    R = build_ring(expr)
    mask = R.nilpotent_mask(R.elements())
    picks = range(R.order) if R.order <= 256 else np.random.default_rng(5).choice(R.order, 60, replace=False)
    for a in map(int, picks):
        k = nil_index_naive(R.mul, a, limit=R.order + 1)
        assert bool(mask[a]) == (k is not None)
        assert R.nilpotency_index(a) == k


def test_corner_ring():
    R = build_ring("M2(Z3)")
    e = R.parse("[[1,0],[0,0]]")
    C = corner_ring(R, e)
    assert C.order == 3 and check_axioms(C)
    assert R.format(C.include(C.one)) == "[[1,0],[0,0]]"
    with pytest.raises(ValueError):
        corner_ring(R, R.parse("[[2,0],[0,0]]"))


def test_quotient_is_a_ring_homomorphic_image():
    R = build_ring("Z12")
    I = ideal_generated_by(R, [4], Side.TWO_SIDED)
    Q = quotient_ring(R, I)
    assert Q.order == 4 and check_axioms(Q)
    for a, b in itertools.product(range(12), repeat=2):
        assert Q.project(R.mul(a, b)) == Q.mul(Q.project(a), Q.project(b))
        assert Q.project(R.add(a, b)) == Q.add(Q.project(a), Q.project(b))


def test_quotient_by_everything_is_rejected():
    R = build_ring("Z6")
    with pytest.raises(RingBuildError):
        quotient_ring(R, ideal_generated_by(R, [1]))


def test_max_order_guard():
    with limits.using(max_order=100):
        with pytest.raises(limits.BudgetExceeded):
            build_ring("M2(Z4)")
        assert build_ring("Z97").order == 97


def test_bad_literals_are_rejected():
    R = build_ring("M2(Z2)")
    for text in ("(1,2)", "[[1,0]]", "poly[1]"):
        with pytest.raises(LiteralError):
            R.parse(text)
    assert build_ring("Z3").parse("-1") == 2

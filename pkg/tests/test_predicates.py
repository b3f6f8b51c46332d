import pytest

from ringlab import limits
from ringlab.analysis import is_very_idempotent, special_sets
from ringlab.catalog import CONNECTED, SMALL
from ringlab.ideals import all_ideals, maximal_right_ideals
from ringlab.predicates import PREDICATES, check_property, covers_id_u_n, ring_is
from ringlab.rings import build_ring


def test_z3_nil_clean_witness():
    r = ring_is(build_ring("Z3"), "nil-clean")
    assert not r and r.witness == (2,)


@pytest.mark.parametrize("expr, kind", [("M2(Z2)", "nil-clean"), ("Z2", "clean"), ("Z3", "precious"), ("Z3", "weakly-nil-clean")])
def test_positive_ring_kinds(expr, kind):
    assert ring_is(build_ring(expr), kind)


@pytest.mark.parametrize(
    "expr, value, witness",
    [("Z10", False, "2"), ("morita0(Z2,1,1)", True, None), ("Z3 x Z3 x Z3", False, "(2,1,0)")],
)
def test_coverage_by_id_u_n(expr, value, witness):
    R = build_ring(expr)
    r = covers_id_u_n(R)
    assert r.value is value
    assert (r.witness and R.format(r.witness[0])) == witness


def test_z3_cubed_named_element_is_also_uncovered():
    R = build_ring("Z3 x Z3 x Z3")
    x = R.parse("(1,-1,0)")
    assert is_very_idempotent(R, x) is None and R.inverse(x) is None and R.nilpotency_index(x) is None


def test_structural_examples():
    M = build_ring("M2(Z2)")
    r = check_property(M, "abelian")
    assert not r and M.format(r.witness[0]) == "[[1,0],[0,0]]"
    r = check_property(M, "2-primal")
    assert not r and M.format(r.witness[0]) == "[[0,1],[0,0]]"
    assert check_property(build_ring("Z2"), "boolean")
    assert check_property(build_ring("Z4"), "nj")


def test_semiprime_witness_is_least_annihilated_element():
    R = build_ring("M2(Z4)")
    r = check_property(R, "semiprime")
    assert not r and R.format(r.witness[0]) == "[[2,0],[0,0]]"
    # 2I is killed as well
    two = R.parse("[[2,0],[0,2]]")
    assert all(R.mul(R.mul(two, x), two) == R.zero for x in range(R.order))


def test_quasi_duo_witness_is_a_maximal_right_ideal():
    R = build_ring("M2(Z2)")
    r = check_property(R, "quasi-duo")
    assert not r
    assert [R.format(x) for x in r.witness] == ["[[0,0],[0,0]]", "[[1,0],[0,0]]", "[[0,1],[0,0]]", "[[1,1],[0,0]]"]
    assert any(I.elements == r.witness for I in maximal_right_ideals(R))
    assert not check_property(R, "left-quasi-duo")


def test_quasi_duo_on_triangular_rings():
    assert check_property(build_ring("T2(Z2)"), "quasi-duo")
    assert check_property(build_ring("T2(Z2)"), "left-quasi-duo")


def test_nil_semicommutative_fails_on_matrices():
    R = build_ring("M2(Z2)")
    r = check_property(R, "nil-semicommutative")
    a, b = r.witness
    assert R.mul(a, b) == R.zero and any(R.mul(R.mul(a, x), b) != R.zero for x in range(R.order))


def test_unknown_property():
    with pytest.raises(ValueError, match="unknown property"):
        check_property(build_ring("Z2"), "tall")


def test_budget_guard():
    with limits.using(pair_budget=16):
        with pytest.raises(limits.BudgetExceeded):
            check_property(build_ring("M2(Z2) x Z2"), "semiprime")


def brute_local(R):
    """Exactly one maximal right ideal, read off the lattice."""
    return len(maximal_right_ideals(R)) == 1


IMPLIES = [
    ("clean", "weakly-clean"),
    ("weakly-clean", "weakly-precious"),
    ("nil-clean", "weakly-nil-clean"),
    ("weakly-nil-clean", "weakly-precious"),
    ("clean", "precious"),
    ("nil-clean", "precious"),
    ("precious", "weakly-precious"),
    ("division", "local"),
    ("local", "connected"),
    ("boolean", "covers-id-u-n"),
    ("reduced", "semiprime"),
    ("boolean", "commutative"),
]


@pytest.mark.parametrize("expr", SMALL)
def test_catalog_invariants(expr):
    R = build_ring(expr)
    value = {name: bool(fn(R)) for name, fn in PREDICATES.items()}
    for p, q in IMPLIES:
        assert not value[p] or value[q], f"{p} without {q}"
    assert value["weakly-periodic"]
    # finite rings are clean
    assert value["clean"] and value["exchange"]
    if value["boolean"]:
        assert all(is_very_idempotent(R, a) is not None for a in range(R.order))
    if R.order <= 64:
        assert value["local"] == brute_local(R)
    # witnesses are the least failing element
    S = special_sets(R)
    uncovered = [a for a in range(R.order) if not S.unit_mask[a] and is_very_idempotent(R, a) is None]
    r = PREDICATES["covers-id-u"](R)
    assert r.witness == (tuple(uncovered[:1]) or None)
    nonzero_nil = [int(a) for a in S.nilpotents if a != R.zero]
    assert PREDICATES["reduced"](R).witness == (tuple(nonzero_nil[:1]) or None)


@pytest.mark.parametrize("expr", CONNECTED)
def test_connected_catalog(expr):
    R = build_ring(expr)
    assert check_property(R, "connected")
    assert len(special_sets(R).idempotents) == 2


def test_two_sided_lattice_of_division_ring():
    F = build_ring("GF(8)")
    assert check_property(F, "division") and len(all_ideals(F, "two-sided")) == 2

import random
from collections import Counter

import pytest

from liecount.fields import field_of_order
from liecount.gl import all_matrices, borel, chevalley, constant_table, full
from liecount.roots import SimpleType, build
from liecount.selection import (
    AdmissibleCollection,
    admissible_check,
    arrangement_check,
    arrangement_trials,
    collection_from_global,
    construct_xi,
    coregular_check,
    coweight_orbit_bound,
    cycle_type,
    fourier_check,
    is_coregular_collection,
    m_bound,
    perm_sign,
    permutations,
    random_arrangement,
    regular_check,
    search_admissible,
    van_sum_check,
    verify_selection,
    xi_gl2,
)

T = SimpleType.parse


def test_permutations():
    assert len(permutations(3)) == 6
    assert Counter(cycle_type(w) for w in permutations(4)) == {(1, 1, 1, 1): 1, (2, 1, 1): 6, (2, 2): 3, (3, 1): 8, (4,): 6}
    assert sum(perm_sign(w) for w in permutations(4)) == 0


def test_coregular_check():
    F5 = field_of_order(5)
    assert coregular_check([1, 4], F5) == (True, None)
    assert coregular_check([0, 0], F5) == (False, (1,))
    assert coregular_check([1, 1, 3], F5) == (True, None)
    assert coregular_check([1, 2, 3], F5)[0] is False  # sum is 1
    ok, J = coregular_check([1, 4, 2, 3], F5)
    assert not ok and J is not None
    assert regular_check([1, 2, 3]) and not regular_check([1, 1, 3])


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_xi_gl2_is_selection(q):
    F = field_of_order(q)
    xi = xi_gl2(F)
    rep = verify_selection(xi, 2, q, extra=[borel(F, 2), full(F, 2)])
    assert rep.passed, rep.to_json()
    assert rep.details["checked"][-2:] == ["borel", "full"]


def test_constant_is_not_selection():
    F = field_of_order(5)
    rep = verify_selection(constant_table(F, 2), 2, 5)
    assert not rep.passed and "toral (1,1),(1,1)" == rep.witness["subalgebra"]
    assert rep.residual == "25"


@pytest.mark.parametrize("n, q", [(1, 2), (1, 3), (2, 2), (2, 3), (2, 5), (3, 2)])
def test_van_sum(n, q):
    assert van_sum_check(n, q).passed


def test_van_sum_hand_values():
    F = field_of_order(2)
    hist = Counter(chevalley(F, A) for A in all_matrices(F, 2))
    assert hist[(0, 0)] == 4 and sum(hist.values()) == 16


@pytest.mark.parametrize("n, q", [(1, 5), (2, 5), (2, 7), (3, 7)])
def test_search_construct_verify(n, q):
    coll = search_admissible(n, q, seed=0)
    assert coll is not None
    assert admissible_check(coll).passed
    assert is_coregular_collection(coll)
    xi = construct_xi(coll)
    assert xi.denominator == {1: 1, 2: 2, 3: 6}[n]
    assert verify_selection(xi, n, q).passed


def test_search_is_deterministic():
    a = search_admissible(2, 5, seed=3)
    b = search_admissible(2, 5, seed=3)
    assert a.to_json() == b.to_json()


def test_trivial_collection_n1():
    coll = search_admissible(1, 3)
    xi = construct_xi(coll)
    assert all(xi.equals_integer((a,), 1) for a in range(3))


def test_regular_search():
    coll = search_admissible(2, 7, require_regular=True)
    assert coll is not None and all(regular_check(list(c)) for c in coll.coeffs.values())


def test_inconsistent_collection_fails():
    coll = search_admissible(2, 5)
    s = coll.splitting
    swap = (1, 0)
    bad = dict(coll.coeffs)
    one = s.E.one()
    bad[swap] = (one, one)  # nonzero on scalars, while the identity entry vanishes there
    rep = admissible_check(AdmissibleCollection(s, bad))
    assert not rep.passed and rep.witness is not None


def test_collection_from_global_is_admissible():
    F = field_of_order(3)
    coll = collection_from_global(F, 2, [(1, 2), (2, 1)])
    assert coll.equivariance_defects() == []
    assert admissible_check(coll).passed


def test_arrangement_examples():
    F = field_of_order(3)
    lam = [1, 0, 0, 0]
    assert arrangement_check(F, [[]], lam).passed
    rep = arrangement_check(F, [[], [[1, 0, 0, 0]]], lam)
    assert rep.passed and rep.details["rhs"] == 0
    rep = arrangement_check(F, [[], [[1, 0, 0, 0]], [[1, 1, 0, 0]]], lam)
    assert rep.passed and rep.details["rhs"] == -1


def test_arrangement_preconditions():
    F = field_of_order(3)
    with pytest.raises(ValueError):
        arrangement_check(F, [[[1, 0, 0, 0]]], [1, 0, 0, 0])
    with pytest.raises(ValueError):
        arrangement_check(F, [[], [[0, 1, 0, 0]]], [1, 0, 0, 0])
    with pytest.raises(ValueError):
        arrangement_check(F, [[], [[1, 0, 0, 0], [0, 1, 0, 0]], [[1, 0, 0, 0], [0, 0, 1, 0]]], [1, 1, 1, 0])


@pytest.mark.parametrize("q", [3, 5])
def test_arrangement_random(q):
    assert arrangement_trials(q, trials=10, seed=q).passed


def test_random_arrangement_is_closed():
    F = field_of_order(5)
    family, lam = random_arrangement(F, 4, random.Random(1))
    assert family[0] == []
    assert arrangement_check(F, family, lam).passed


def test_fourier_laws():
    assert fourier_check(2, 3, trials=3).passed
    assert fourier_check(1, 5, trials=5).passed


def test_m_bound():
    assert m_bound(build([T("A1")])) == ({1: 1}, 2)
    assert m_bound(build([T("A1"), T("A1")]))[0] == {1: 8, 2: 1}
    M, q = m_bound(build([T("F4")]))
    assert set(M) == {1, 2, 3, 4} and M[4] == 1
    assert sum(m / q**i for i, m in M.items()) < 1


def test_coweight_orbit_bound():
    assert coweight_orbit_bound(build([T("A1")])) == 2
    assert coweight_orbit_bound(build([T("A2")])) == 6
    assert coweight_orbit_bound(build([T("G2")])) == 12


def test_report_json_keys():
    rep = van_sum_check(2, 2)
    assert set(rep.to_json()) == {"identity", "params", "pass", "witness", "residual"}

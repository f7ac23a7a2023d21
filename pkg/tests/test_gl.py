import itertools
import math
import random
from collections import Counter

import pytest

from liecount.fields import CycInt, field_of_order
from liecount.gl import (
    FunctionTable,
    all_matrices,
    borel,
    cartan_tw,
    charpoly,
    chevalley,
    chevalley_points,
    chi_w_fiber_count,
    constant_table,
    fiber_histogram,
    finite_FT,
    full,
    negate_point,
    poly_from_roots,
    relevant_toral_reps,
    subalgebra_integral,
    zero_matrix,
)


def test_chevalley_examples():
    F = field_of_order(5)
    assert chevalley(F, zero_matrix(2)) == (0, 0)
    # x^2 - 3x + 2 over F5: constant 2, linear -3 = 2
    assert chevalley(F, ((1, 0), (0, 2))) == (2, 2)
    assert poly_from_roots(F, [1, 2]) == (2, 2)


def test_charpoly_cayley_hamilton():
    F = field_of_order(7)
    rng = random.Random(1)
    from liecount.gl import mat_mul

    for _ in range(20):
        n = rng.randint(1, 4)
        A = tuple(tuple(rng.randrange(7) for _ in range(n)) for _ in range(n))
        c = charpoly(F, A)  # highest degree first
        acc = zero_matrix(n)
        for coeff in c:
            acc = mat_mul(F, acc, A)
            acc = tuple(tuple(F.add(acc[i][j], coeff if i == j else 0) for j in range(n)) for i in range(n))
        assert acc == zero_matrix(n)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_chevalley_fibers_over_all_matrices(q):
    F = field_of_order(q)
    hist = Counter(chevalley(F, A) for A in all_matrices(F, 2))
    assert sum(hist.values()) == q**4
    assert set(hist) == set(chevalley_points(F, 2))


@pytest.mark.parametrize("q", [3, 5, 4])
def test_fiber_counts(q):
    F = field_of_order(q)
    split = cartan_tw(F, 2, (1, 1))
    nonsplit = cartan_tw(F, 2, (2,))
    assert chi_w_fiber_count(split, poly_from_roots(F, [0, 0])) == 1
    assert chi_w_fiber_count(split, poly_from_roots(F, [1, 2 % q if q > 2 else 0])) == 2
    assert sum(fiber_histogram(split).values()) == q**2
    assert sum(fiber_histogram(nonsplit).values()) == q**2
    irreducible = [a for a in chevalley_points(F, 2) if a not in fiber_histogram(split)]
    assert irreducible and all(chi_w_fiber_count(nonsplit, a) == 2 for a in irreducible)


@pytest.mark.parametrize("q, n", [(3, 2), (2, 3), (3, 3)])
def test_weyl_weighted_fiber_sum(q, n):
    """sum over cycle types, weighted by class size, of fiber counts is n! at every point."""
    F = field_of_order(q)
    from liecount.selection import cycle_type, permutations

    types = Counter(cycle_type(w) for w in permutations(n))
    for a in chevalley_points(F, n):
        total = sum(size * chi_w_fiber_count(cartan_tw(F, n, t), a) for t, size in types.items())
        assert total == math.factorial(n)


def test_cartan_values_are_rational():
    F = field_of_order(3)
    emb = cartan_tw(F, 3, (2, 1))
    for xs in emb.points():
        a = emb.chi(xs)
        assert len(a) == 3 and all(0 <= c < 3 for c in a)


def test_relevant_toral_reps():
    F = field_of_order(3)
    assert [h.label for h in relevant_toral_reps(F, 1)] == ["z"]
    reps2 = relevant_toral_reps(F, 2)
    assert len(reps2) == 3 and reps2[0].is_center
    assert sorted(h.descriptor for h in reps2) == sorted([((1, 2),), ((1, 1), (1, 1)), ((2, 1),)])
    reps3 = relevant_toral_reps(F, 3)
    assert sorted(h.descriptor for h in reps3) == sorted(
        [((1, 3),), ((1, 2), (1, 1)), ((1, 1), (1, 1), (1, 1)), ((2, 1), (1, 1)), ((3, 1),)]
    )


@pytest.mark.parametrize("q", [3, 4, 5])
def test_integral_of_constant(q):
    F = field_of_order(q)
    one = constant_table(F, 2)
    for h in relevant_toral_reps(F, 2) + [borel(F, 2), full(F, 2)]:
        assert subalgebra_integral(F, h, one).numerator == CycInt.integer(F.p, q**h.dim)


def _delta0(F, n):
    return FunctionTable("g", F.p, {(0,) * (n * n): CycInt.integer(F.p, 1)})


@pytest.mark.parametrize("q", [2, 3])
def test_fourier_basics(q):
    F = field_of_order(q)
    n = 2
    ft = finite_FT(F, n, _delta0(F, n))
    pts = list(itertools.product(range(q), repeat=4))
    assert all(ft.numerator(u) == CycInt.integer(F.p, 1) for u in pts)
    ones = FunctionTable("g", F.p, {v: CycInt.integer(F.p, 1) for v in pts})
    ft = finite_FT(F, n, ones)
    assert ft.numerator((0,) * 4) == CycInt.integer(F.p, q**4)
    assert all(ft.numerator(u).is_zero() for u in pts[1:])
    assert negate_point(F, (1, 0, 2, 0)) == tuple(F.neg(x) for x in (1, 0, 2, 0))


def test_function_table_json_roundtrip():
    F = field_of_order(3)
    t = FunctionTable("c", 3, {(1, 2): CycInt(3, (1, -1)), (0, 0): CycInt(3, (2, 0))}, 2)
    back = FunctionTable.from_json(t.to_json())
    assert back.values == t.values and back.denominator == 2 and back.domain == "c"

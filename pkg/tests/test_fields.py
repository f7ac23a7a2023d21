import random

import pytest

from liecount.caps import CapExceeded
from liecount.fields import (
    CycInt,
    ExtField,
    character_sum,
    coset_character,
    field_of_order,
    intersect,
    make_field,
    nullspace,
    prime_power,
    psi,
    rank,
    span_elements,
)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 25, 27]


def test_moduli():
    assert make_field(3).modulus == (0, 1)
    assert make_field(3, 2).modulus == (1, 0, 1)  # x^2 + 1
    assert make_field(2, 3).modulus == (1, 1, 0, 1)  # x^3 + x + 1


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    with pytest.raises(ValueError):
        prime_power(12)
    with pytest.raises(ValueError):
        field_of_order(6)


def test_caps():
    with pytest.raises(CapExceeded):
        make_field(103)
    with pytest.raises(CapExceeded):
        make_field(2, 7)


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms(q):
    F = field_of_order(q)
    els = list(F.elements)
    assert len(els) == q
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    g = F.generator
    assert len({F.power(g, e) for e in range(q - 1)}) == q - 1
    rng = random.Random(q)
    for _ in range(100):
        a, b, c = (rng.randrange(q) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


@pytest.mark.parametrize("q", ORDERS)
def test_frobenius_is_automorphism(q):
    F = field_of_order(q)
    rng = random.Random(q)
    for _ in range(50):
        a, b = rng.randrange(q), rng.randrange(q)
        assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
        assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    for a in range(F.p):
        assert F.frobenius(F.from_int(a)) == F.from_int(a)


def test_cyclotomic_relations():
    for p in [2, 3, 5, 7]:
        total = CycInt.zero(p)
        for j in range(p):
            total = total + CycInt.zeta(p, j)
        assert total.is_zero()
        assert CycInt.zeta(p) * CycInt.zeta(p, p - 1) == CycInt.integer(p, 1)
    with pytest.raises(ValueError):
        CycInt.zeta(3) + CycInt.zeta(5)


@pytest.mark.parametrize("q", ORDERS)
def test_psi(q):
    F = field_of_order(q)
    assert psi(F, 0) == CycInt.integer(F.p, 1)
    assert character_sum(F, F.elements).is_zero()
    kernel = [x for x in F.elements if psi(F, x) == CycInt.integer(F.p, 1)]
    assert len(kernel) == q // F.p
    rng = random.Random(q)
    for _ in range(30):
        a, b = rng.randrange(q), rng.randrange(q)
        assert psi(F, F.add(a, b)) == psi(F, a) * psi(F, b)


def test_psi_trace_in_f9():
    F = make_field(3, 2)
    for x in F.elements:
        assert F.trace(x) == F.digits(F.add(x, F.frobenius(x)))[0]
        assert psi(F, x) == CycInt.zeta(3, F.trace(x))


@pytest.mark.parametrize("q", [3, 5, 4])
def test_coset_character(q):
    F = field_of_order(q)
    E = ExtField(F, 2)
    for a in F.elements:
        assert coset_character(E, E.embed(a)) == CycInt.integer(F.p, 1)
    total = CycInt.zero(F.p)
    for x in E.elements():
        total = total + coset_character(E, x)
    assert total.is_zero()
    beta = (0, 1)
    assert coset_character(E, beta) == CycInt.zeta(F.p, F.trace(1))


@pytest.mark.parametrize("q, d", [(2, 3), (3, 2), (3, 3), (4, 2), (5, 2)])
def test_extension_field(q, d):
    F = field_of_order(q)
    E = ExtField(F, d)
    assert E.size == q**d
    rng = random.Random(q * d)
    for _ in range(30):
        x = tuple(rng.randrange(q) for _ in range(d))
        y = tuple(rng.randrange(q) for _ in range(d))
        assert E.frobenius(E.mul(x, y)) == E.mul(E.frobenius(x), E.frobenius(y))
        assert E.frobenius(x, d) == x
        assert E.in_base(E.embed(E.trace(x)))
        if any(x):
            assert E.mul(x, E.inv(x)) == E.one()
    fixed = [x for x in E.elements() if E.frobenius(x) == x]
    assert len(fixed) == q


def test_linear_algebra():
    F = field_of_order(5)
    A = [[1, 2, 3], [2, 4, 0]]
    ns = nullspace(F, A, 3)
    assert len(ns) == 1
    assert all(sum(F.mul(a, b) for a, b in zip(row, ns[0])) % 5 == 0 for row in A)
    assert rank(F, A) == 2
    U = [[1, 0, 0], [0, 1, 0]]
    V = [[0, 1, 0], [0, 0, 1]]
    I = intersect(F, U, V)
    assert len(I) == 1 and rank(F, I + [[0, 1, 0]]) == 1
    assert len(list(span_elements(F, U, 3))) == 25

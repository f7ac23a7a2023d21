from fractions import Fraction

import pytest

from liecount.caps import CapExceeded
from liecount.roots import (
    RootSystem,
    SimpleType,
    affine_diagram,
    build,
    classify,
    enumerate_weyl,
    fundamental_coweights,
    graded_trace,
    poly_eval,
    signed_trace_average,
    weyl_orbit,
)

T = SimpleType.parse


def rs_of(*names):
    return build([T(n) for n in names])


@pytest.mark.parametrize("name, count", [("A1", 2), ("A2", 6), ("B3", 18), ("C3", 18), ("D4", 24), ("G2", 12), ("F4", 48), ("E6", 72), ("E7", 126), ("E8", 240)])
def test_root_counts(name, count):
    rs = rs_of(name)
    assert len(rs.roots) == count == T(name).root_count
    assert rs.num_positive == count // 2


def test_weyl_order_from_degrees():
    assert rs_of("E8").weyl_order == 696729600
    assert rs_of("F4").weyl_order == 2 * 6 * 8 * 12


@pytest.mark.parametrize("name, order", [("A2", 6), ("B3", 48), ("G2", 12), ("F4", 1152)])
def test_enumerate_weyl(name, order):
    W = enumerate_weyl(rs_of(name))
    assert W.order == order == rs_of(name).weyl_order
    # number of elements of each length matches the Poincare polynomial
    assert max(W.lengths) == rs_of(name).num_positive


def test_enumerate_weyl_cap():
    with pytest.raises(CapExceeded):
        enumerate_weyl(rs_of("E8"), cap=10**6)


def test_classify():
    rs = rs_of("G2")
    assert classify(rs, rs.roots) == (T("G2"),)
    rs = rs_of("B3")
    short = [r for r in rs.roots if not rs.is_long(r)]
    assert classify(rs, short) == (T("A1"),) * 3
    long_ = [r for r in rs.roots if rs.is_long(r)]
    assert classify(rs, long_) == (T("D3"),) or classify(rs, long_) == (T("A3"),)


def test_classify_rejects_non_closed():
    rs = rs_of("A2")
    with pytest.raises(ValueError):
        classify(rs, [rs.roots[0], rs.roots[1]])


def test_affine_marks():
    assert affine_diagram(rs_of("A1")).components[0].marks == (1, 1)
    assert sorted(affine_diagram(rs_of("G2")).components[0].marks) == [1, 2, 3]
    assert affine_diagram(rs_of("C3")).components[0].marks == (1, 2, 2, 1)
    assert sorted(affine_diagram(rs_of("E8")).components[0].marks) == [1, 2, 2, 3, 3, 4, 4, 5, 6]
    for name in ["A3", "B4", "C4", "D5", "E6", "E7", "E8", "F4", "G2"]:
        comp = affine_diagram(rs_of(name)).components[0]
        # sum of marks is the Coxeter number
        assert sum(comp.marks) == rs_of(name).num_positive * 2 // rs_of(name).rank


def test_affine_node_deletion():
    comp = affine_diagram(rs_of("E6")).components[0]
    results = {comp.delete(k) for k in comp.nodes}
    assert (T("A2"),) * 3 in results
    assert (T("E6"),) in results
    comp = affine_diagram(rs_of("C2")).components[0]
    middle = comp.marks.index(2)
    assert comp.delete(middle) == (T("A1"), T("A1"))


def test_graded_trace_a1():
    rs = rs_of("A1")
    W = enumerate_weyl(rs)
    traces = sorted(graded_trace(w, rs) for w in W.elements)
    assert traces == [[1, -1], [1, 1]]


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_graded_trace_identity_is_poincare(name):
    rs = rs_of(name)
    W = enumerate_weyl(rs)
    ident = graded_trace(W.elements[0], rs)
    assert poly_eval(ident, 1) == rs.weyl_order
    # Lefschetz: at q = -1... the trace at q=1 equals |W| only for the identity
    assert all(poly_eval(graded_trace(w, rs), 1) == 0 for w in W.elements[1:])


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "G2"])
def test_signed_trace_average(name):
    rs = rs_of(name)
    assert signed_trace_average(rs) == [0] * rs.num_positive + [1]


def test_fundamental_coweights():
    assert fundamental_coweights(rs_of("A1")) == [(Fraction(1, 2),)]
    assert fundamental_coweights(rs_of("A2")) == [(Fraction(2, 3), Fraction(1, 3)), (Fraction(1, 3), Fraction(2, 3))]


def test_weyl_orbits():
    assert weyl_orbit((0, 0), rs_of("A2")) == {(0, 0)}
    assert len(weyl_orbit(fundamental_coweights(rs_of("A2"))[0], rs_of("A2"))) == 3
    for v in fundamental_coweights(rs_of("G2")):
        assert len(weyl_orbit(v, rs_of("G2"))) == 6


def test_product_system():
    rs = rs_of("A1", "G2")
    assert rs.rank == 3 and len(rs.roots) == 14
    assert len(rs.components) == 2


def test_simple_type_validation():
    with pytest.raises(ValueError):
        SimpleType("E", 5)
    with pytest.raises(ValueError):
        SimpleType("B", 1)
    with pytest.raises(ValueError):
        T("X3")

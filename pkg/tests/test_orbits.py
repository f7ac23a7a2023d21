import pytest

from liecount.orbits import distinct_part_count, distinguished_count, nilpotent_orbits, partitions
from liecount.roots import SimpleType

T = SimpleType.parse


def test_nilpotent_orbits():
    assert sorted(p.parts for p, _ in nilpotent_orbits(T("A1")).entries) == [(1, 1), (2,)]
    assert nilpotent_orbits(T("A1")).count == 2
    c2 = nilpotent_orbits(T("C2"))
    assert sorted(p.parts for p, _ in c2.entries) == sorted([(4,), (2, 2), (2, 1, 1), (1, 1, 1, 1)])
    assert nilpotent_orbits(T("D4")).count == 12
    with pytest.raises(ValueError):
        nilpotent_orbits(T("G2"))


@pytest.mark.parametrize("n", range(1, 8))
def test_type_a_orbits_are_partitions(n):
    assert nilpotent_orbits(SimpleType("A", n)).count == sum(1 for _ in partitions(n + 1))


@pytest.mark.parametrize(
    "name, count", [("A7", 1), ("E8", 11), ("C3", 2), ("G2", 2), ("F4", 4), ("E6", 3), ("E7", 6), ("B2", 1), ("C2", 1), ("D4", 2), ("D8", 5)]
)
def test_distinguished_count(name, count):
    assert distinguished_count(T(name)) == count


def test_distinguished_classical_matches_enumeration():
    for t in [T("B3"), T("B4"), T("C4"), T("D5"), T("D6")]:
        assert distinguished_count(t) == len(nilpotent_orbits(t).distinguished)


def test_distinct_part_count():
    assert distinct_part_count(0) == 1
    assert distinct_part_count(8, "odd") == 2
    assert distinct_part_count(5) == 3
    assert [distinct_part_count(n) for n in range(7)] == [1, 1, 1, 2, 2, 3, 4]
    # Euler: distinct parts = odd parts
    for n in range(30):
        odd = sum(1 for p in partitions(n) if all(x % 2 for x in p))
        assert distinct_part_count(n) == odd

"""Nilpotent orbits of classical Lie algebras by partitions, and distinguished counts."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .roots import SimpleType

# distinguished nilpotent orbits of the exceptional types
EXCEPTIONAL_DISTINGUISHED = {"G2": 2, "F4": 4, "E6": 3, "E7": 6, "E8": 11}


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.parts) or list(self.parts) != sorted(self.parts, reverse=True):
            raise ValueError("partition parts must be positive and weakly decreasing")

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"

    def multiplicity(self, part: int) -> int:
        return self.parts.count(part)

    @property
    def has_distinct_parts(self) -> bool:
        return len(set(self.parts)) == len(self.parts)


@dataclass(frozen=True)
class OrbitList:
    entries: tuple[tuple[Partition, bool], ...]  # (partition, doubled)

    @property
    def count(self) -> int:
        return sum(2 if doubled else 1 for _, doubled in self.entries)

    @property
    def distinguished(self) -> tuple[Partition, ...]:
        return tuple(p for p, _ in self.entries if p.has_distinct_parts)


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """All partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def _even_mult(parts: tuple[int, ...], parity: int) -> bool:
    return all(parts.count(p) % 2 == 0 for p in set(parts) if p % 2 == parity)


def nilpotent_orbits(t: SimpleType) -> OrbitList:
    f, n = t.family, t.rank
    if f == "A":
        entries = [(Partition(p), False) for p in partitions(n + 1)]
    elif f == "B":
        entries = [(Partition(p), False) for p in partitions(2 * n + 1) if _even_mult(p, 0)]
    elif f == "C":
        entries = [(Partition(p), False) for p in partitions(2 * n) if _even_mult(p, 1)]
    elif f == "D":
        entries = [
            (Partition(p), all(x % 2 == 0 for x in p))
            for p in partitions(2 * n)
            if _even_mult(p, 0)
        ]
    else:
        raise ValueError(f"nilpotent orbits by partitions need a classical type, got {t}")
    return OrbitList(tuple(entries))


@lru_cache(maxsize=None)
def distinct_part_count(n: int, parity: str | None = None) -> int:
    """Partitions of n into distinct parts, optionally all 'odd' or all 'even'."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if parity not in (None, "odd", "even"):
        raise ValueError("parity must be None, 'odd' or 'even'")
    allowed = [k for k in range(1, n + 1) if parity is None or k % 2 == (1 if parity == "odd" else 0)]
    ways = [1] + [0] * n
    for k in allowed:
        for s in range(n, k - 1, -1):
            ways[s] += ways[s - k]
    return ways[n]


def distinguished_count(t: SimpleType) -> int:
    f, n = t.family, t.rank
    if f == "A":
        return 1
    if f == "B":
        return distinct_part_count(2 * n + 1, "odd")
    if f == "C":
        return distinct_part_count(n)
    if f == "D":
        return distinct_part_count(2 * n, "odd")
    return EXCEPTIONAL_DISTINGUISHED[str(t)]

"""Truncated integer power series and the partition generating functions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

DEFAULT_ORDER = 64

FAMILIES = ("B/D-n0", "BD-n1", "BD-n2", "C-n0", "C-n1", "C-n2")


@dataclass(frozen=True)
class TruncSeries:
    """c_0 + c_1 t + ... + c_N t^N modulo t^(N+1)."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], order: int) -> "TruncSeries":
        c = list(coeffs)[: order + 1]
        return cls(tuple(c + [0] * (order + 1 - len(c))))

    @classmethod
    def constant(cls, value: int, order: int) -> "TruncSeries":
        return cls.from_coeffs([value], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def _check(self, other: "TruncSeries") -> None:
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def _lift(self, other) -> "TruncSeries":
        if isinstance(other, int):
            return TruncSeries.constant(other, self.order)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        return TruncSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncSeries(tuple(other * a for a in self.coeffs))
        self._check(other)
        N = self.order
        out = [0] * (N + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(N + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncSeries(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "TruncSeries":
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise ValueError("series inversion needs a unit constant term")
        N = self.order
        out = [0] * (N + 1)
        out[0] = c0
        for n in range(1, N + 1):
            s = sum(self.coeffs[k] * out[n - k] for k in range(1, n + 1))
            out[n] = -s * c0
        return TruncSeries(tuple(out))

    def even_part(self) -> "TruncSeries":
        return TruncSeries(tuple(c if i % 2 == 0 else 0 for i, c in enumerate(self.coeffs)))

    def odd_part(self) -> "TruncSeries":
        return TruncSeries(tuple(c if i % 2 else 0 for i, c in enumerate(self.coeffs)))

    def coefficient(self, n: int) -> int:
        return coefficient(self, n)


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def coefficient(s: TruncSeries, n: int) -> int:
    if not 0 <= n <= s.order:
        raise IndexError(f"coefficient {n} outside 0..{s.order}")
    return s.coeffs[n]


def product_generator(exponents: Iterable[int], order: int) -> TruncSeries:
    """prod (1 + t^e) over the given positive exponents, truncated at ``order``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    c = [1] + [0] * order
    for e in exponents:
        if e <= 0:
            raise ValueError("exponents must be positive")
        for s in range(order, e - 1, -1):
            c[s] += c[s - e]
    return TruncSeries(tuple(c))


def progression(start: int, step: int, order: int) -> range:
    return range(start, order + 1, step)


@lru_cache(maxsize=None)
def f_BD(order: int = DEFAULT_ORDER) -> TruncSeries:
    return product_generator(progression(1, 2, order), order)


def f_B(order: int = DEFAULT_ORDER) -> TruncSeries:
    return f_BD(order).odd_part()


def f_D(order: int = DEFAULT_ORDER) -> TruncSeries:
    return f_BD(order).even_part()


@lru_cache(maxsize=None)
def f_C(order: int = DEFAULT_ORDER) -> TruncSeries:
    return product_generator(progression(1, 1, order), order)


@lru_cache(maxsize=None)
def family_series(family: str, order: int = DEFAULT_ORDER) -> TruncSeries:
    """The displayed generating function for a family, with no corrections."""
    if family == "B/D-n0":
        return f_BD(order)
    if family == "BD-n1":
        return (1 + f_BD(order)) * (1 + f_D(order)) - 4
    if family == "BD-n2":
        bd, d = f_BD(order), f_D(order)
        return bd * d**3 + 3 * d**2 + 3 * (bd + 1) * d + bd - 11
    if family == "C-n0":
        return f_C(order)
    if family == "C-n1":
        return f_C(order) ** 2
    if family == "C-n2":
        return f_C(order) ** 4
    raise ValueError(f"unknown series family {family!r}; choose from {', '.join(FAMILIES)}")


def to_csv_rows(s: TruncSeries) -> list[tuple[int, int]]:
    return list(enumerate(s.coeffs))


def odd_part_generator(order: int) -> TruncSeries:
    """prod 1/(1 - t^(2n-1)), by series inversion."""
    out = TruncSeries.constant(1, order)
    for e in progression(1, 2, order):
        out = out * TruncSeries.from_coeffs([1] + [0] * (e - 1) + [-1], order).inverse()
    return out


def coefficients(s: TruncSeries, indices: Sequence[int]) -> list[int]:
    return [coefficient(s, n) for n in indices]

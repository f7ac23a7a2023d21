"""Exact integer-matrix and lattice arithmetic.

Matrices are lists of rows of Python ints (arbitrary precision).  The Smith
normal form here drives every fundamental-group computation in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

IntMatrix = list[list[int]]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == S`` with ``S`` diagonal and ``d1 | d2 | ...``."""

    U: tuple[tuple[int, ...], ...]
    S: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0))]


@dataclass(frozen=True)
class AbelianInvariants:
    """Finite abelian group Z/f1 x ... x Z/fk x Z^free_rank, with f_i | f_{i+1}."""

    factors: tuple[int, ...]
    free_rank: int = 0

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for f in self.factors:
            out *= f
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.factors and not self.free_rank

    def __str__(self) -> str:
        parts = [f"Z/{f}" for f in self.factors] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "1"


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def determinant(M: Sequence[Sequence[int | Fraction]]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                for k in range(c, n):
                    A[r][k] -= f * A[c][k]
    return det


def inverse(M: Sequence[Sequence[int | Fraction]]) -> list[list[Fraction]]:
    """Exact inverse over Q; raises ValueError on a singular matrix."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def _pivot(A: IntMatrix, t: int) -> tuple[int, int] | None:
    # minimal nonzero |entry| in the trailing block, ties broken by (row, col)
    best = None
    for i in range(t, len(A)):
        for j in range(t, len(A[0])):
            v = abs(A[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form by row/column gcd elimination."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(map(int, row)) for row in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in A:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            p = _pivot(A, t)
            if p is None:
                break
            i, j = p
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            d = A[t][t]
            dirty = False
            for r in range(t + 1, m):
                if A[r][t]:
                    add_row(r, t, -(A[r][t] // d))
                    dirty |= A[r][t] != 0
            for c in range(t + 1, n):
                if A[t][c]:
                    add_col(c, t, -(A[t][c] // d))
                    dirty |= A[t][c] != 0
            if dirty:
                continue
            bad = next(
                ((r, c) for r in range(t + 1, m) for c in range(t + 1, n) if A[r][c] % d),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if _pivot(A, t) is None:
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]

    freeze = lambda X: tuple(tuple(r) for r in X)  # noqa: E731
    return SmithDecomposition(freeze(U), freeze(A), freeze(V))


def quotient_invariants(sublattice_generators: Sequence[Sequence[int]], ambient_rank: int) -> AbelianInvariants:
    """Invariant factors of Z^r modulo the span of the generators."""
    gens = [list(map(int, g)) for g in sublattice_generators]
    for g in gens:
        if len(g) != ambient_rank:
            raise ValueError("generator length does not match ambient rank")
    if not gens:
        return AbelianInvariants((), ambient_rank)
    diag = [d for d in smith_normal_form(gens).diagonal if d]
    return AbelianInvariants(tuple(d for d in diag if d > 1), ambient_rank - len(diag))


def lattice_basis(generators: Sequence[Sequence[int | Fraction]]) -> list[list[Fraction]]:
    """A Z-basis of the (rational) lattice spanned by the generators."""
    gens = [[Fraction(x) for x in g] for g in generators]
    if not gens:
        return []
    den = lcm(*(x.denominator for g in gens for x in g))
    scaled = [[int(x * den) for x in g] for g in gens]
    snf = smith_normal_form(scaled)
    rank = sum(1 for d in snf.diagonal if d)
    rows = matmul(snf.U, scaled)[:rank]
    return [[Fraction(x, den) for x in row] for row in rows]


def lattice_member(v: Sequence[int | Fraction], basis: Sequence[Sequence[int | Fraction]]) -> bool:
    """True iff v is an integer combination of the basis vectors."""
    v = [Fraction(x) for x in v]
    if not basis:
        return all(x == 0 for x in v)
    B = [[Fraction(x) for x in b] for b in basis]
    if any(len(b) != len(v) for b in B):
        raise ValueError("dimension mismatch")
    den = lcm(*(x.denominator for row in B + [v] for x in row))
    Bi = [[int(x * den) for x in row] for row in B]
    vi = [int(x * den) for x in v]
    snf = smith_normal_form(Bi)
    # v = c B  <=>  v V = c' S  with c' = c U^{-1} integral
    w = [sum(vi[k] * snf.V[k][j] for k in range(len(vi))) for j in range(len(vi))]
    diag = snf.diagonal
    for j, x in enumerate(w):
        d = diag[j] if j < len(diag) else 0
        if d == 0:
            if x != 0:
                return False
        elif x % d:
            return False
    return True

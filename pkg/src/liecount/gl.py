"""gl_n over F_q: Chevalley map, Cartan subalgebras, toral representatives,
subalgebra integrals and the finite Fourier transform.

Matrices are tuples of rows of field elements (ints, see :mod:`fields`).
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from . import caps
from .fields import CycInt, ExtField, FqSpec, make_field, psi, span_basis, span_elements

GlMatrix = tuple[tuple[int, ...], ...]
ChevalleyPoint = tuple[int, ...]

MAX_TORAL_RANK = 4


def zero_matrix(n: int) -> GlMatrix:
    return tuple((0,) * n for _ in range(n))


def scalar_matrix(F: FqSpec, n: int, c: int) -> GlMatrix:
    return tuple(tuple(c if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(F: FqSpec, A: GlMatrix, B: GlMatrix) -> GlMatrix:
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(len(B[0])):
            acc = 0
            for k in range(len(B)):
                if A[i][k] and B[k][j]:
                    acc = F.add(acc, F.mul(A[i][k], B[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def flatten(A: GlMatrix) -> tuple[int, ...]:
    return tuple(x for row in A for x in row)


def unflatten(v: Sequence[int], n: int) -> GlMatrix:
    return tuple(tuple(v[i * n : (i + 1) * n]) for i in range(n))


def charpoly(F: FqSpec, A: GlMatrix) -> list[int]:
    """det(T - A), highest degree first, by Berkowitz's division-free method."""
    n = len(A)
    if n == 0:
        return [1]
    add, mul, neg = F.add, F.mul, F.neg
    vect = [1, neg(A[0][0])]
    for r in range(1, n):
        R = A[r][:r]
        Ccol = [A[i][r] for i in range(r)]
        t = [1, neg(A[r][r])]
        col = Ccol
        for _ in range(r):
            s = 0
            for a, b in zip(R, col):
                if a and b:
                    s = add(s, mul(a, b))
            t.append(neg(s))
            # col <- A_sub * col
            col = [
                _dot(F, A[i][:r], col)
                for i in range(r)
            ]
        new = []
        for i in range(r + 2):
            acc = 0
            for j in range(max(0, i - len(t) + 1), min(i, r) + 1):
                if t[i - j] and vect[j]:
                    acc = add(acc, mul(t[i - j], vect[j]))
            new.append(acc)
        vect = new
    return vect


def _dot(F: FqSpec, a, b) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


def chevalley(F: FqSpec, A: GlMatrix) -> ChevalleyPoint:
    """(c_0, ..., c_{n-1}) with det(T - A) = T^n + c_{n-1} T^{n-1} + ... + c_0."""
    return tuple(reversed(charpoly(F, A)[1:]))


def poly_from_roots(F: FqSpec, roots: Iterable[int]) -> ChevalleyPoint:
    c = [1]  # low degree first
    for r in roots:
        nr = F.neg(r)
        out = [0] * (len(c) + 1)
        for i, a in enumerate(c):
            out[i] = F.add(out[i], F.mul(a, nr))
            out[i + 1] = F.add(out[i + 1], a)
        c = out
    return tuple(c[:-1])


def chevalley_points(F: FqSpec, n: int) -> Iterator[ChevalleyPoint]:
    return itertools.product(range(F.q), repeat=n)


def all_matrices(F: FqSpec, n: int, cap: int | None = None) -> Iterator[GlMatrix]:
    caps.check(F.q ** (n * n), caps.enumeration_cap(cap), f"gl_{n}(F_{F.q}) enumeration")
    for v in itertools.product(range(F.q), repeat=n * n):
        yield unflatten(v, n)


# Cartan subalgebras t_w


@dataclass(frozen=True)
class CartanEmbedding:
    F: FqSpec
    cycle_type: tuple[int, ...]
    blocks: tuple[ExtField, ...]

    @property
    def n(self) -> int:
        return sum(self.cycle_type)

    def embed(self, xs: Sequence[Sequence[int]]) -> GlMatrix:
        n = self.n
        M = [[0] * n for _ in range(n)]
        off = 0
        for E, x in zip(self.blocks, xs):
            B = E.mult_matrix(tuple(x))
            for i in range(E.d):
                for j in range(E.d):
                    M[off + i][off + j] = B[i][j]
            off += E.d
        return tuple(tuple(r) for r in M)

    def points(self, cap: int | None = None) -> Iterator[tuple]:
        caps.check(self.F.q**self.n, caps.enumeration_cap(cap), "Cartan subalgebra enumeration")
        return itertools.product(*(list(E.elements()) for E in self.blocks))

    def chi(self, xs) -> ChevalleyPoint:
        return chevalley(self.F, self.embed(xs))

    def basis(self) -> list[GlMatrix]:
        out = []
        for k, E in enumerate(self.blocks):
            for j in range(E.d):
                xs = [E.zero() for E in self.blocks]
                xs[k] = tuple(int(i == j) for i in range(E.d))
                out.append(self.embed(xs))
        return out


@lru_cache(maxsize=None)
def _ext(F: FqSpec, d: int) -> ExtField:
    return ExtField(F, d)


def cartan_tw(F: FqSpec, n: int, cycle_type: Sequence[int]) -> CartanEmbedding:
    ct = tuple(sorted(cycle_type, reverse=True))
    if sum(ct) != n or any(d < 1 for d in ct):
        raise ValueError(f"cycle type {ct} is not a partition of {n}")
    return CartanEmbedding(F, ct, tuple(_ext(F, d) for d in ct))


@lru_cache(maxsize=None)
def fiber_histogram(emb: CartanEmbedding) -> Counter:
    """Counts #{x in t_w : chi(x) = a} for every a."""
    return Counter(emb.chi(x) for x in emb.points())


def chi_w_fiber_count(emb: CartanEmbedding, a: Sequence[int]) -> int:
    return fiber_histogram(emb)[tuple(a)]


# Subalgebras


@dataclass(frozen=True)
class SubalgebraSpec:
    label: str
    basis: tuple[GlMatrix, ...]
    descriptor: tuple[tuple[int, int], ...] | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_center(self) -> bool:
        return self.descriptor is not None and len(self.descriptor) == 1 and self.descriptor[0][0] == 1


def _descriptors(n: int) -> list[tuple[tuple[int, int], ...]]:
    pieces = sorted(((d, m) for d in range(1, n + 1) for m in range(1, n + 1) if d * m <= n), reverse=True)
    out = []

    def rec(rest, start, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for idx in range(start, len(pieces)):
            d, m = pieces[idx]
            if d * m <= rest:
                rec(rest - d * m, idx, acc + [(d, m)])

    rec(n, 0, [])
    return out


def toral_subalgebra(F: FqSpec, descriptor: Sequence[tuple[int, int]]) -> SubalgebraSpec:
    """prod F_{q^d} with each factor acting diagonally on m copies of itself."""
    desc = tuple(sorted(descriptor, reverse=True))
    n = sum(d * m for d, m in desc)
    basis = []
    off = 0
    for d, m in desc:
        E = _ext(F, d)
        for j in range(d):
            B = E.mult_matrix(tuple(int(i == j) for i in range(d)))
            M = [[0] * n for _ in range(n)]
            for copy in range(m):
                o = off + copy * d
                for a in range(d):
                    for b in range(d):
                        M[o + a][o + b] = B[a][b]
            basis.append(tuple(tuple(r) for r in M))
        off += d * m
    label = "z" if len(desc) == 1 and desc[0][0] == 1 else "toral " + ",".join(f"({d},{m})" for d, m in desc)
    return SubalgebraSpec(label, tuple(basis), desc)


def relevant_toral_reps(F: FqSpec, n: int) -> list[SubalgebraSpec]:
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_TORAL_RANK:
        raise caps.CapExceeded(f"relevant toral representatives limited to n <= {MAX_TORAL_RANK}")
    reps = [toral_subalgebra(F, desc) for desc in _descriptors(n)]
    return sorted(reps, key=lambda h: (not h.is_center, h.dim, h.descriptor))


def borel(F: FqSpec, n: int) -> SubalgebraSpec:
    basis = []
    for i in range(n):
        for j in range(i, n):
            basis.append(tuple(tuple(int((a, b) == (i, j)) for b in range(n)) for a in range(n)))
    return SubalgebraSpec("borel", tuple(basis))


def full(F: FqSpec, n: int) -> SubalgebraSpec:
    basis = [tuple(tuple(int((a, b) == (i, j)) for b in range(n)) for a in range(n)) for i in range(n) for j in range(n)]
    return SubalgebraSpec("full", tuple(basis))


def subalgebra_elements(F: FqSpec, h: SubalgebraSpec, cap: int | None = None) -> Iterator[GlMatrix]:
    n = len(h.basis[0]) if h.basis else 0
    rows = span_basis(F, [flatten(b) for b in h.basis])
    if len(rows) != len(h.basis):
        raise ValueError("subalgebra basis is not linearly independent")
    for v in span_elements(F, rows, n * n, cap):
        yield unflatten(v, n)


# Function tables


@dataclass
class FunctionTable:
    """Values num(point) / denominator with num in Z[zeta_p]; missing points are 0."""

    domain: str  # "c", "g" or "g*"
    p: int
    values: dict = field(default_factory=dict)
    denominator: int = 1

    def numerator(self, point) -> CycInt:
        return self.values.get(tuple(point), CycInt.zero(self.p))

    def equals_integer(self, point, n: int) -> bool:
        return self.numerator(point) == CycInt.integer(self.p, n * self.denominator)

    def to_json(self) -> dict:
        return {
            "domain": self.domain,
            "p": self.p,
            "denominator": self.denominator,
            "values": {json.dumps(list(k)): list(v.coeffs) for k, v in sorted(self.values.items()) if not v.is_zero()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "FunctionTable":
        p = data["p"]
        vals = {tuple(json.loads(k)): CycInt(p, tuple(v)) for k, v in data["values"].items()}
        return cls(data["domain"], p, vals, data["denominator"])


@dataclass(frozen=True)
class ScaledCyc:
    """numerator / denominator with an exact cyclotomic numerator."""

    numerator: CycInt
    denominator: int = 1

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __str__(self) -> str:
        return str(self.numerator) if self.denominator == 1 else f"({self.numerator})/{self.denominator}"


def subalgebra_integral(F: FqSpec, h: SubalgebraSpec, f: FunctionTable, cap: int | None = None) -> ScaledCyc:
    """sum over x in h of f(chi(x)), exactly."""
    if f.domain != "c":
        raise ValueError("subalgebra integrals take functions on the Chevalley base")
    hist = Counter(chevalley(F, x) for x in subalgebra_elements(F, h, cap))
    total = CycInt.zero(f.p)
    for a, cnt in hist.items():
        v = f.numerator(a)
        if not v.is_zero():
            total = total + v * cnt
    return ScaledCyc(total, f.denominator)


def constant_table(F: FqSpec, n: int, value: int = 1) -> FunctionTable:
    return FunctionTable("c", F.p, {a: CycInt.integer(F.p, value) for a in chevalley_points(F, n)})


# Finite Fourier transform on gl_n (identified with its dual by the trace form)


def trace_pairing(F: FqSpec, u: Sequence[int], v: Sequence[int], n: int) -> int:
    """tr(u v) for flattened n x n matrices."""
    acc = 0
    for i in range(n):
        for j in range(n):
            a, b = u[i * n + j], v[j * n + i]
            if a and b:
                acc = F.add(acc, F.mul(a, b))
    return acc


def finite_FT(F: FqSpec, n: int, f: FunctionTable, cap: int | None = None) -> FunctionTable:
    """FT(f)(u) = sum_v f(v) psi(tr(u v))."""
    caps.check(F.q ** (2 * n * n), caps.enumeration_cap(cap), "Fourier transform pair enumeration")
    points = list(itertools.product(range(F.q), repeat=n * n))
    support = [(v, f.values[v]) for v in points if v in f.values and not f.values[v].is_zero()]
    out = {}
    for u in points:
        acc = CycInt.zero(F.p)
        for v, val in support:
            acc = acc + val.rotate(F.trace(trace_pairing(F, u, v, n)))
        if not acc.is_zero():
            out[u] = acc
    target = "g*" if f.domain == "g" else "g"
    return FunctionTable(target, F.p, out, f.denominator)


def negate_point(F: FqSpec, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(F.neg(x) for x in v)


def pullback(F: FqSpec, n: int, f: FunctionTable, cap: int | None = None) -> FunctionTable:
    """chi^* f as a table on gl_n(F_q)."""
    out = {}
    for A in all_matrices(F, n, cap):
        val = f.numerator(chevalley(F, A))
        if not val.is_zero():
            out[flatten(A)] = val
    return FunctionTable("g", f.p, out, f.denominator)

"""Root systems, affine diagrams and Weyl groups in coroot coordinates.

Conventions used throughout the package:

* ``cartan[i][j] = <alpha_i, alpha_j^vee>``.
* A coweight ``x`` is a vector in the basis of simple coroots, so
  ``<alpha_i, x> = sum_j cartan[i][j] * x[j]``.
* A root is stored by its coefficients in the simple roots; its pairing
  vector (values on the simple coroots) turns ``<alpha, x>`` into a dot
  product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import caps
from .lattice import inverse

Vector = tuple[Fraction, ...]
Root = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_EXCEPTIONAL = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family in _MIN_RANK:
            if self.rank < _MIN_RANK[self.family]:
                raise ValueError(f"invalid rank {self.rank} for type {self.family}")
        elif self.family in _EXCEPTIONAL:
            if self.rank not in _EXCEPTIONAL[self.family]:
                raise ValueError(f"invalid rank {self.rank} for type {self.family}")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "SimpleType":
        text = text.strip()
        return cls(text[0].upper(), int(text[1:]))

    @property
    def degrees(self) -> tuple[int, ...]:
        f, n = self.family, self.rank
        if f == "A":
            return tuple(range(2, n + 2))
        if f in "BC":
            return tuple(range(2, 2 * n + 1, 2))
        if f == "D":
            return tuple(sorted(list(range(2, 2 * n - 1, 2)) + [n]))
        return {
            ("E", 6): (2, 5, 6, 8, 9, 12),
            ("E", 7): (2, 6, 8, 10, 12, 14, 18),
            ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
            ("F", 4): (2, 6, 8, 12),
            ("G", 2): (2, 6),
        }[(f, n)]

    @property
    def weyl_order(self) -> int:
        out = 1
        for d in self.degrees:
            out *= d
        return out

    @property
    def root_count(self) -> int:
        # |Phi| = rank * Coxeter number
        return self.rank * max(self.degrees)


def type_label(types: Iterable[SimpleType]) -> str:
    types = sorted(types)
    return "+".join(str(t) for t in types) if types else "trivial"


# Standard (Bourbaki) realizations; the Cartan matrix is read off them.


def _e(n: int, i: int, c=1) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return v


def _simple_root_vectors(t: SimpleType) -> list[list[Fraction]]:
    f, n = t.family, t.rank
    h = Fraction(1, 2)
    if f == "A":
        return [[a - b for a, b in zip(_e(n + 1, i), _e(n + 1, i + 1))] for i in range(n)]
    if f in "BCD":
        out = [[a - b for a, b in zip(_e(n, i), _e(n, i + 1))] for i in range(n - 1)]
        if f == "B":
            out.append(_e(n, n - 1))
        elif f == "C":
            out.append(_e(n, n - 1, 2))
        else:
            out.append([a + b for a, b in zip(_e(n, n - 2), _e(n, n - 1))])
        return out
    if f == "G":
        return [[Fraction(1), Fraction(-1), Fraction(0)], [Fraction(-2), Fraction(1), Fraction(1)]]
    if f == "F":
        return [
            [0, 1, -1, 0],
            [0, 0, 1, -1],
            [0, 0, 0, 1],
            [h, -h, -h, -h],
        ]
    e8 = [
        [h, -h, -h, -h, -h, -h, -h, h],
        _e(8, 0, 1)[:1] + [Fraction(1)] + [Fraction(0)] * 6,
        [Fraction(-1), Fraction(1)] + [Fraction(0)] * 6,
    ]
    for i in range(1, 6):
        e8.append([a - b for a, b in zip(_e(8, i + 1), _e(8, i))])
    return e8[:n]


def _dot(u, v) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def simple_cartan(t: SimpleType) -> list[list[int]]:
    vecs = _simple_root_vectors(t)
    out = []
    for a in vecs:
        row = []
        for b in vecs:
            val = 2 * _dot(a, b) / _dot(b, b)
            assert val.denominator == 1
            row.append(int(val))
        out.append(row)
    return out


def block_cartan(types: Sequence[SimpleType]) -> list[list[int]]:
    r = sum(t.rank for t in types)
    C = [[0] * r for _ in range(r)]
    off = 0
    for t in types:
        block = simple_cartan(t)
        for i, row in enumerate(block):
            for j, v in enumerate(row):
                C[off + i][off + j] = v
        off += t.rank
    return C


# Diagram classification


def _components(C: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    r = len(C)
    seen: set[int] = set()
    comps = []
    for s in range(r):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(r):
                if j != i and C[i][j] != 0 and j not in seen:
                    seen.add(j)
                    stack.append(j)
        comps.append(tuple(sorted(comp)))
    return comps


def classify_component(C: Sequence[Sequence[int]], nodes: Sequence[int]) -> SimpleType:
    """Identify a connected Cartan matrix by the shape of its Dynkin graph."""
    nodes = list(nodes)
    r = len(nodes)
    if r == 1:
        return SimpleType("A", 1)
    nbrs = {i: [j for j in nodes if j != i and C[i][j] != 0] for i in nodes}
    edges = {(i, j) for i in nodes for j in nbrs[i] if i < j}
    if len(edges) != r - 1:
        raise ValueError("Dynkin graph is not a tree: not a finite root system")
    mult = {e: C[e[0]][e[1]] * C[e[1]][e[0]] for e in edges}
    if any(m not in (1, 2, 3) for m in mult.values()):
        raise ValueError("invalid bond in Cartan matrix")
    degree = {i: len(nbrs[i]) for i in nodes}
    if any(m == 3 for m in mult.values()):
        if r != 2:
            raise ValueError("triple bond outside rank 2")
        return SimpleType("G", 2)
    doubles = [e for e, m in mult.items() if m == 2]
    if doubles:
        if len(doubles) > 1 or max(degree.values()) > 2:
            raise ValueError("not a finite root system")
        if r == 2:
            return SimpleType("C", 2)
        i, j = doubles[0]
        if degree[i] == 2 and degree[j] == 2:
            if r != 4:
                raise ValueError("interior double bond outside F4")
            return SimpleType("F", 4)
        end, mid = (i, j) if degree[i] == 1 else (j, i)
        # <alpha_mid, alpha_end^vee> = -2 exactly when alpha_end is short
        return SimpleType("B", r) if C[mid][end] == -2 else SimpleType("C", r)
    branch = [i for i in nodes if degree[i] >= 3]
    if not branch:
        return SimpleType("A", r)
    if len(branch) > 1 or degree[branch[0]] != 3:
        raise ValueError("not a finite root system")
    b = branch[0]
    arms = []
    for start in nbrs[b]:
        length, prev, cur = 1, b, start
        while degree[cur] == 2:
            nxt = next(j for j in nbrs[cur] if j != prev)
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return SimpleType("D", r)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return SimpleType("E", r)
    raise ValueError("not a finite root system")


def classify_cartan(C: Sequence[Sequence[int]]) -> tuple[SimpleType, ...]:
    return tuple(sorted(classify_component(C, comp) for comp in _components(C)))


# Integer polynomials in q, lowest degree first.


def _pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pdivexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    while len(den) > 1 and den[-1] == 0:
        den = den[:-1]
    if den[0] not in (1, -1):
        raise ValueError("denominator must have unit constant term")
    # power-series division, then check the remainder vanishes
    n = len(num) - len(den) + 1
    out = []
    for k in range(max(n, 0)):
        c = num[k] * den[0]
        out.append(c)
        for j, d in enumerate(den):
            num[k + j] -= c * d
    if any(num):
        raise ArithmeticError("polynomial division is not exact")
    return out


def _charpoly(M: Sequence[Sequence[int]]) -> list[int]:
    """Coefficients c_0..c_n of det(lambda*I - M) (Faddeev-LeVerrier)."""
    n = len(M)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        prev = coeffs[n - k + 1]
        Mk = [[sum(M[i][l] * Mk[l][j] for l in range(n)) + (prev if i == j else 0) for j in range(n)] for i in range(n)]
        tr = sum(sum(M[i][l] * Mk[l][i] for l in range(n)) for i in range(n))
        coeffs[n - k] = -tr / k
    assert all(c.denominator == 1 for c in coeffs)
    return [int(c) for c in coeffs]


class RootSystem:
    """A (reducible) crystallographic root system given by its Cartan matrix."""

    def __init__(self, cartan: Sequence[Sequence[int]], types: Sequence[SimpleType] | None = None):
        self.cartan: Matrix = tuple(tuple(int(x) for x in row) for row in cartan)
        self.rank = len(self.cartan)
        self.components = tuple(_components(self.cartan))
        found = [classify_component(self.cartan, comp) for comp in self.components]
        if types is not None:
            types = list(types)
            if len(types) != len(found) or any(
                t.rank != f.rank or (t.family != f.family and {t.family, f.family} not in ({"B", "C"}, {"A", "D"}))
                for t, f in zip(types, found)
            ):
                raise ValueError("declared types do not match the Cartan matrix")
            found = types
        self.component_types: tuple[SimpleType, ...] = tuple(found)
        self.types: tuple[SimpleType, ...] = tuple(sorted(found))
        self._half_lengths = self._symmetrize()

    def __repr__(self) -> str:
        return f"RootSystem({type_label(self.types)})"

    @classmethod
    def build(cls, types: Iterable[SimpleType | str]) -> "RootSystem":
        ts = [t if isinstance(t, SimpleType) else SimpleType.parse(t) for t in types]
        return cls(block_cartan(ts), ts)

    def _symmetrize(self) -> tuple[Fraction, ...]:
        # l_i = (alpha_i, alpha_i)/2, normalized so each component's first node has 1
        C = self.cartan
        ell: dict[int, Fraction] = {}
        for comp in self.components:
            ell[comp[0]] = Fraction(1)
            stack = [comp[0]]
            while stack:
                i = stack.pop()
                for j in comp:
                    if j != i and C[i][j] and j not in ell:
                        ell[j] = Fraction(C[j][i]) * ell[i] / C[i][j]
                        stack.append(j)
        return tuple(ell[i] for i in range(self.rank))

    # roots

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        """All roots, positive ones first, each sorted by (height, coefficients)."""
        C, r = self.cartan, self.rank
        simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        found = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(r):
                    k = sum(beta[l] * C[l][i] for l in range(r))
                    if k:
                        gamma = tuple(b - k * int(j == i) for j, b in enumerate(beta))
                        if gamma not in found:
                            found.add(gamma)
                            nxt.append(gamma)
            frontier = nxt
        pos = sorted((b for b in found if all(x >= 0 for x in b)), key=lambda b: (sum(b), b))
        neg = [tuple(-x for x in b) for b in pos]
        if len(pos) + len(neg) != len(found):
            raise ArithmeticError("root closure produced mixed-sign vectors")
        return tuple(pos) + tuple(neg)

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        return self.roots[: len(self.roots) // 2]

    @cached_property
    def root_set(self) -> frozenset[Root]:
        return frozenset(self.roots)

    def pairing(self, root: Root) -> tuple[int, ...]:
        """Values of the root on the simple coroots."""
        C, r = self.cartan, self.rank
        return tuple(sum(root[i] * C[i][j] for i in range(r)) for j in range(r))

    def pair(self, root: Root, x: Sequence[Fraction]) -> Fraction:
        return sum((a * b for a, b in zip(self.pairing(root), x)), Fraction(0))

    def root_half_length(self, root: Root) -> Fraction:
        C, ell, r = self.cartan, self._half_lengths, self.rank
        return sum(
            (Fraction(root[i] * root[j] * C[i][j]) * ell[j] for i in range(r) for j in range(r) if root[i] and root[j]),
            Fraction(0),
        ) / 2

    def coroot(self, root: Root) -> tuple[int, ...]:
        """The coroot of ``root`` in simple-coroot coordinates."""
        la = self.root_half_length(root)
        out = []
        for c, l in zip(root, self._half_lengths):
            v = c * l / la
            assert v.denominator == 1
            out.append(int(v))
        return tuple(out)

    def is_long(self, root: Root) -> bool:
        comp = next(c for c in self.components if any(root[i] for i in c))
        longest = max(self._half_lengths[i] for i in comp)
        return self.root_half_length(root) == longest

    def highest_root(self, component: int) -> Root:
        comp = set(self.components[component])
        return max(
            (b for b in self.positive_roots if all(i in comp for i, x in enumerate(b) if x)),
            key=lambda b: (sum(b), b),
        )

    def component_of(self, index: int) -> int:
        return next(k for k, comp in enumerate(self.components) if index in comp)

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(d for t in self.component_types for d in t.degrees)

    @property
    def weyl_order(self) -> int:
        out = 1
        for t in self.types:
            out *= t.weyl_order
        return out

    # Weyl group action on coweights

    def reflect(self, i: int, x: Sequence[Fraction]) -> Vector:
        k = sum((c * v for c, v in zip(self.cartan[i], x)), Fraction(0))
        return tuple(v - k if j == i else v for j, v in enumerate(x))

    def simple_reflection_matrix(self, i: int) -> Matrix:
        r = self.rank
        return tuple(
            tuple(int(a == b) - (self.cartan[i][b] if a == i else 0) for b in range(r)) for a in range(r)
        )


def build(types: Iterable[SimpleType | str]) -> RootSystem:
    return RootSystem.build(types)


def simple_subsystem(rs: RootSystem, roots: Iterable[Root]) -> list[Root]:
    """The simple roots of a closed subsystem, w.r.t. the positivity of ``rs``."""
    sub = set(roots)
    pos = [b for b in rs.positive_roots if b in sub]
    pos_set = set(pos)
    simple = []
    for b in pos:
        decomposable = any(
            tuple(x - y for x, y in zip(b, a)) in pos_set for a in pos if a != b and sum(a) < sum(b)
        )
        if not decomposable:
            simple.append(b)
    return simple


def subsystem_cartan(rs: RootSystem, simple: Sequence[Root]) -> list[list[int]]:
    cor = [rs.coroot(b) for b in simple]
    return [[sum(a * c for a, c in zip(rs.pairing(bi), cj)) for cj in cor] for bi in simple]


def classify(rs: RootSystem, roots: Iterable[Root]) -> tuple[SimpleType, ...]:
    """Isomorphism type of a root subsystem of ``rs``."""
    sub = set(roots)
    if not sub:
        return ()
    if not sub <= rs.root_set:
        raise ValueError("input contains vectors that are not roots")
    for b in sub:
        if tuple(-x for x in b) not in sub:
            raise ValueError("input not closed under negation: not a root subsystem")
    for a in sub:
        cor = rs.coroot(a)
        for b in sub:
            k = sum(x * y for x, y in zip(rs.pairing(b), cor))
            if tuple(x - k * y for x, y in zip(b, a)) not in sub:
                raise ValueError("input not closed under its reflections: not a root subsystem")
    simple = simple_subsystem(rs, sub)
    return classify_cartan(subsystem_cartan(rs, simple))


# Affine diagrams


@dataclass(frozen=True)
class AffineComponent:
    type: SimpleType
    simple_indices: tuple[int, ...]  # global index of local node k is simple_indices[k - 1]
    marks: tuple[int, ...]  # marks[0] = 1 is the affine node
    edges: tuple[tuple[int, int], ...]
    cartan: tuple[tuple[int, ...], ...]  # extended Cartan matrix on local nodes

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(range(len(self.marks)))

    def delete(self, node: int) -> tuple[SimpleType, ...]:
        keep = [k for k in self.nodes if k != node]
        sub = [[self.cartan[i][j] for j in keep] for i in keep]
        return classify_cartan(sub)


@dataclass(frozen=True)
class AffineDiagram:
    components: tuple[AffineComponent, ...]


def affine_diagram(rs: RootSystem) -> AffineDiagram:
    comps = []
    for k, idx in enumerate(rs.components):
        theta = rs.highest_root(k)
        a_theta = rs.pairing(theta)
        theta_v = rs.coroot(theta)
        marks = (1,) + tuple(theta[i] for i in idx)
        local = (None,) + idx
        m = len(local)
        ext = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(m):
                gi, gj = local[i], local[j]
                if gi is None and gj is None:
                    ext[i][j] = 2
                elif gi is None:
                    ext[i][j] = -a_theta[gj]
                elif gj is None:
                    ext[i][j] = -sum(rs.cartan[gi][l] * theta_v[l] for l in range(rs.rank))
                else:
                    ext[i][j] = rs.cartan[gi][gj]
        edges = tuple((i, j) for i in range(m) for j in range(i + 1, m) if ext[i][j] or ext[j][i])
        comps.append(AffineComponent(rs.component_types[k], idx, marks, edges, tuple(map(tuple, ext))))
    return AffineDiagram(tuple(comps))


# Weyl groups


@dataclass(frozen=True)
class WeylGroup:
    elements: tuple[Matrix, ...]
    lengths: tuple[int, ...]
    generators: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict[Matrix, int]:
        return {w: i for i, w in enumerate(self.elements)}

    def sign(self, k: int) -> int:
        return -1 if self.lengths[k] % 2 else 1


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n = len(B)
    return tuple(tuple(sum(A[i][l] * B[l][j] for l in range(n)) for j in range(len(B[0]))) for i in range(len(A)))


def enumerate_weyl(rs: RootSystem, cap: int | None = None) -> WeylGroup:
    """All Weyl group elements as integer matrices on coroot coordinates (BFS order)."""
    cap = caps.weyl_cap(cap)
    if cap <= 0:
        raise ValueError("cap must be positive")
    if rs.weyl_order > cap:
        raise caps.CapExceeded(f"order exceeds cap: |W| = {rs.weyl_order} > {cap}")
    C, r = rs.cartan, rs.rank
    ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    seen = {ident: 0}
    elements, lengths = [ident], [0]
    frontier = [ident]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for w in frontier:
            for i in range(r):
                # s_i * w only changes row i
                row = tuple(w[i][j] - sum(C[i][l] * w[l][j] for l in range(r)) for j in range(r))
                v = w[:i] + (row,) + w[i + 1 :]
                if v not in seen:
                    seen[v] = len(elements)
                    elements.append(v)
                    lengths.append(depth)
                    nxt.append(v)
        frontier = nxt
    return WeylGroup(tuple(elements), tuple(lengths), tuple(range(r)))


def graded_trace(w: Matrix, rs: RootSystem) -> list[int]:
    """sum_i q^i tr(w | H^{2i}(flag variety)) as coefficients in q, low degree first."""
    num = [1]
    for d in rs.degrees:
        num = _pmul(num, [1] + [0] * (d - 1) + [-1])
    r = len(w)
    c = _charpoly(w)
    den = [c[r - m] for m in range(r + 1)]  # det(1 - q w)
    out = _pdivexact(num, den)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def poly_eval(coeffs: Sequence[int], q: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * q + c
    return acc


def fundamental_coweights(rs: RootSystem) -> list[Vector]:
    """varpi_j^vee in coroot coordinates: columns of the inverse Cartan matrix."""
    inv = inverse(rs.cartan)
    return [tuple(inv[i][j] for i in range(rs.rank)) for j in range(rs.rank)]


def weyl_orbit(v: Sequence[Fraction | int], rs: RootSystem, cap: int | None = None) -> set[Vector]:
    cap = caps.weyl_cap(cap)
    start = tuple(Fraction(x) for x in v)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(rs.rank):
                y = rs.reflect(i, x)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise caps.CapExceeded(f"orbit size exceeds cap {cap}")
                    nxt.append(y)
        frontier = nxt
    return seen


def signed_trace_average(rs: RootSystem, cap: int | None = None) -> list[int]:
    """(1/|W|) sum_w sgn(w) graded_trace(w) as exact polynomial coefficients; equals q^N."""
    W = enumerate_weyl(rs, cap)
    total: list[int] = []
    for k, w in enumerate(W.elements):
        tr = graded_trace(w, rs)
        total += [0] * (len(tr) - len(total))
        for i, c in enumerate(tr):
            total[i] += W.sign(k) * c
    if any(c % W.order for c in total):
        raise ArithmeticError("signed trace sum is not divisible by |W|")
    out = [c // W.order for c in total]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out

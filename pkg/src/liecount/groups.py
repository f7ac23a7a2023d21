"""Semisimple group data: a root system plus a cocharacter lattice.

A group is a pair ``(rs, Y)`` where ``Y`` is given by a basis of rational
row vectors in simple-coroot coordinates with ``Q^vee <= Y <= P^vee``.
Group names follow a small grammar, see :func:`make_group`.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .lattice import AbelianInvariants, inverse, lattice_basis, quotient_invariants
from .roots import (
    RootSystem,
    SimpleType,
    block_cartan,
    fundamental_coweights,
    simple_subsystem,
    subsystem_cartan,
    type_label,
)

Vector = tuple[Fraction, ...]

REDUCTION_CAP = 10**6


class GroupParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


@dataclass(frozen=True)
class Atom:
    """One named factor of a product expression."""

    name: str
    types: tuple[SimpleType, ...]
    # (n, m) when the factor is SL(n)/mu(m) (PGL(n) is m = n)
    sl_quotient: tuple[int, int] | None = None


@dataclass(frozen=True)
class GroupDatum:
    rs: RootSystem
    Y: tuple[Vector, ...]
    name: str = ""
    atoms: tuple[Atom, ...] = field(default=(), compare=False)

    def __post_init__(self):
        r = self.rs.rank
        if len(self.Y) != r or any(len(y) != r for y in self.Y):
            raise ValueError("Y basis must be a square matrix of the rank")
        inv = inverse(self.Y)
        if any(x.denominator != 1 for row in inv for x in row):
            raise ValueError("Y does not contain the coroot lattice")
        for row in self.rs.cartan:
            for y in self.Y:
                if sum((a * b for a, b in zip(row, y)), Fraction(0)).denominator != 1:
                    raise ValueError("Y is not contained in the coweight lattice")

    def __str__(self) -> str:
        return self.name or type_label(self.rs.types)

    @property
    def rank(self) -> int:
        return self.rs.rank

    @property
    def types(self) -> tuple[SimpleType, ...]:
        return self.rs.types

    def pi1(self) -> AbelianInvariants:
        return pi1(self)

    @property
    def is_simply_connected(self) -> bool:
        return pi1(self).is_trivial


def pi1(G: GroupDatum) -> AbelianInvariants:
    """Invariant factors of Y / Q^vee."""
    # coordinates of the simple coroots in the Y basis are the rows of Y^{-1}
    inv = inverse(G.Y)
    return quotient_invariants([[int(x) for x in row] for row in inv], G.rank)


# Name grammar


def _sl_extra(n: int, m: int) -> list[Vector]:
    # Y = Q^vee + Z (n/m) varpi_1^vee inside A_{n-1}
    rs = RootSystem.build([SimpleType("A", n - 1)])
    w1 = fundamental_coweights(rs)[0]
    return [tuple((n // m) * x for x in w1)]


def _all_coweights(types: Sequence[SimpleType]) -> list[Vector]:
    return fundamental_coweights(RootSystem.build(types))


def _atom(kind: str, n: int, m: int | None, text: str, pos: int) -> tuple[Atom, list[Vector]]:
    """Types and extra Y generators (local coordinates) for one atom."""

    def bad(msg):
        raise GroupParseError(msg, text, pos)

    A = lambda k: SimpleType("A", k)  # noqa: E731
    if kind == "SL":
        if n < 2:
            bad(f"SL({n}) has invalid rank")
        m = m or 1
        if m < 1 or n % m:
            bad(f"mu({m}) is not a subgroup of the center of SL({n})")
        name = f"SL({n})" if m == 1 else f"SL({n})/mu({m})"
        return Atom(name, (A(n - 1),), (n, m)), (_sl_extra(n, m) if m > 1 else [])
    if m is not None:
        bad("only SL(n) admits a /mu(m) quotient")
    if kind == "PGL":
        if n < 2:
            bad(f"PGL({n}) has invalid rank")
        return Atom(f"PGL({n})", (A(n - 1),), (n, n)), _all_coweights([A(n - 1)])
    if kind == "Sp":
        if n < 2 or n % 2:
            bad(f"Sp({n}) needs an even argument >= 2")
        t = A(1) if n == 2 else SimpleType("C", n // 2)
        return Atom(f"Sp({n})", (t,), (2, 1) if n == 2 else None), []
    if kind == "Spin":
        if n < 3:
            bad(f"Spin({n}) needs n >= 3")
        if n == 3:
            return Atom("Spin(3)", (A(1),), (2, 1)), []
        if n == 4:
            return Atom("Spin(4)", (A(1), A(1))), []
        if n == 6:
            return Atom("Spin(6)", (A(3),), (4, 1)), []
        t = SimpleType("B", n // 2) if n % 2 else SimpleType("D", n // 2)
        return Atom(f"Spin({n})", (t,)), []
    if kind == "SO":
        if n < 3:
            bad(f"SO({n}) needs n >= 3")
        if n == 3:
            return Atom("SO(3)", (A(1),), (2, 2)), _all_coweights([A(1)])
        if n == 4:
            half = Fraction(1, 2)
            return Atom("SO(4)", (A(1), A(1))), [(half, half)]
        if n == 6:
            return Atom("SO(6)", (A(3),), (4, 2)), _sl_extra(4, 2)
        if n % 2:
            t = SimpleType("B", n // 2)
            return Atom(f"SO({n})", (t,)), _all_coweights([t])
        t = SimpleType("D", n // 2)
        return Atom(f"SO({n})", (t,)), _all_coweights([t])[:1]
    raise AssertionError(kind)


_CLASSICAL = re.compile(r"(SL|PGL|Spin|SO|Sp)\(\s*(\d+)\s*\)(?:\s*/\s*mu\(\s*(\d+)\s*\))?")
_BARE = re.compile(r"([A-G])(\d+)(ad)?")
_CLASSICAL_HEAD = re.compile(r"(SL|PGL|Spin|SO|Sp)\(")


def _classical_diagnostic(text: str, pos: int) -> GroupParseError:
    """Locate the first malformed token of a classical name such as 'SL(3' or 'SL(4)/mu('."""
    i = _CLASSICAL_HEAD.match(text, pos).end()
    for want, pattern in (("an integer", r"\s*\d+"), ("')'", r"\s*\)"), (None, r"\s*/\s*mu\("), ("an integer", r"\s*\d+"), ("')'", r"\s*\)")):
        m = re.compile(pattern).match(text, i)
        if m is None:
            return GroupParseError(f"expected {want or 'mu(m)'}", text, i)
        i = m.end()
    return GroupParseError("malformed group name", text, pos)


def _parse_atom(text: str, pos: int) -> tuple[Atom, list[Vector], int]:
    m = _CLASSICAL.match(text, pos)
    if m and text[m.end():].lstrip().startswith("/"):
        raise _classical_diagnostic(text, pos)
    if m:
        kind, n, mu = m.group(1), int(m.group(2)), m.group(3)
        atom, extra = _atom(kind, n, int(mu) if mu else None, text, pos)
        return atom, extra, m.end()
    if _CLASSICAL_HEAD.match(text, pos):
        raise _classical_diagnostic(text, pos)
    m = _BARE.match(text, pos)
    if m:
        try:
            t = SimpleType(m.group(1), int(m.group(2)))
        except ValueError as exc:
            raise GroupParseError(str(exc), text, pos) from None
        adjoint = bool(m.group(3))
        sl = None
        if t.family == "A":
            sl = (t.rank + 1, t.rank + 1 if adjoint else 1)
        extra = _all_coweights([t]) if adjoint else []
        return Atom(m.group(0), (t,), sl), extra, m.end()
    raise GroupParseError("expected a group name", text, pos)


def parse_group(text: str) -> list[tuple[Atom, list[Vector]]]:
    out = []
    pos = 0
    n = len(text)

    def skip(p):
        while p < n and text[p].isspace():
            p += 1
        return p

    pos = skip(pos)
    if pos == n:
        raise GroupParseError("empty group expression", text, pos)
    while True:
        atom, extra, pos = _parse_atom(text, pos)
        out.append((atom, extra))
        pos = skip(pos)
        if pos == n:
            return out
        if text[pos] not in "x×*":
            raise GroupParseError("expected 'x' between factors", text, pos)
        pos = skip(pos + 1)


def make_group(expr: str) -> GroupDatum:
    """Build a group from an expression such as ``"SL(4)/mu(2) x G2"``."""
    parts = parse_group(expr)
    types: list[SimpleType] = []
    gens: list[list[Fraction]] = []
    offsets = []
    off = 0
    for atom, _ in parts:
        offsets.append(off)
        types.extend(atom.types)
        off += sum(t.rank for t in atom.types)
    r = off
    for i in range(r):
        gens.append([Fraction(int(i == j)) for j in range(r)])
    for (atom, extra), o in zip(parts, offsets):
        for v in extra:
            row = [Fraction(0)] * r
            row[o : o + len(v)] = v
            gens.append(row)
    Y = tuple(tuple(row) for row in lattice_basis(gens)) if r else ()
    rs = RootSystem(block_cartan(types), types)
    name = " x ".join(a.name for a, _ in parts)
    return GroupDatum(rs, Y, name, tuple(a for a, _ in parts))


# Alcove geometry


@dataclass(frozen=True)
class AlcoveVertex:
    x: Vector
    nodes: tuple[int, ...]  # chosen affine-diagram node per component, 0 = affine node

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.x) + ")"


@dataclass(frozen=True)
class IsolatedClass:
    orbit: tuple[AlcoveVertex, ...]
    representative: AlcoveVertex

    @property
    def orbit_size(self) -> int:
        return len(self.orbit)


def alcove_vertices(G: GroupDatum) -> list[AlcoveVertex]:
    rs = G.rs
    cow = fundamental_coweights(rs)
    choices = []
    for k, comp in enumerate(rs.components):
        theta = rs.highest_root(k)
        opts = [(0, None)] + [(local + 1, (i, theta[i])) for local, i in enumerate(comp)]
        choices.append(opts)
    out = []
    for combo in itertools.product(*choices):
        x = [Fraction(0)] * rs.rank
        for _, pick in combo:
            if pick is not None:
                i, mark = pick
                x = [a + b / mark for a, b in zip(x, cow[i])]
        out.append(AlcoveVertex(tuple(x), tuple(node for node, _ in combo)))
    return out


def _dot(a, x) -> Fraction:
    return sum((c * v for c, v in zip(a, x) if c), Fraction(0))


def reduce_to_alcove(x: Sequence[Fraction | int], G: GroupDatum | RootSystem) -> Vector:
    """The fundamental-alcove point in the affine Weyl orbit of x."""
    rs = G.rs if isinstance(G, GroupDatum) else G
    x = [Fraction(v) for v in x]
    C = rs.cartan
    highest = [(rs.pairing(rs.highest_root(k)), rs.coroot(rs.highest_root(k))) for k in range(len(rs.components))]
    for _ in range(REDUCTION_CAP):
        moved = False
        for i in range(rs.rank):
            k = _dot(C[i], x)
            if k < 0:
                x[i] -= k
                moved = True
        if moved:
            continue
        for a, cor in highest:
            k = _dot(a, x) - 1
            if k > 0:
                x = [v - k * c for v, c in zip(x, cor)]
                moved = True
        if not moved:
            return tuple(x)
    raise RuntimeError("alcove reduction did not terminate")


@dataclass(frozen=True)
class OmegaAction:
    vertices: tuple[AlcoveVertex, ...]
    generators: tuple[tuple[int, ...], ...]  # permutations of vertex indices

    def orbits(self) -> list[list[int]]:
        parent = list(range(len(self.vertices)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for perm in self.generators:
            for i, j in enumerate(perm):
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for i in range(len(self.vertices)):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())


def omega_action(G: GroupDatum) -> OmegaAction:
    verts = alcove_vertices(G)
    index = {v.x: i for i, v in enumerate(verts)}
    gens = []
    for y in G.Y:
        if all(c.denominator == 1 for c in y):
            continue  # already in the coroot lattice
        perm = []
        for v in verts:
            img = reduce_to_alcove([a + b for a, b in zip(v.x, y)], G)
            if img not in index:
                raise AssertionError("translate of a vertex reduced to a non-vertex")
            perm.append(index[img])
        gens.append(tuple(perm))
    return OmegaAction(tuple(verts), tuple(gens))


def isolated_classes(G: GroupDatum) -> list[IsolatedClass]:
    act = omega_action(G)
    out = []
    for orb in act.orbits():
        vs = tuple(act.vertices[i] for i in orb)
        out.append(IsolatedClass(vs, vs[0]))
    return out


def centralizer(G: GroupDatum, v: AlcoveVertex | Sequence[Fraction]) -> GroupDatum:
    """Connected centralizer of exp(x): roots integral on x, same Y."""
    x = v.x if isinstance(v, AlcoveVertex) else tuple(Fraction(c) for c in v)
    rs = G.rs
    if all(c == 0 for c in x):
        return G
    sub = [b for b in rs.roots if _dot(rs.pairing(b), x).denominator == 1]
    simple = simple_subsystem(rs, sub)
    if len(simple) != rs.rank:
        raise AssertionError("centralizer of an alcove vertex must have full rank")
    C = subsystem_cartan(rs, simple)
    # group the new simple roots by component, components sorted by type
    tmp = RootSystem(C)
    order = sorted(range(len(tmp.components)), key=lambda k: (tmp.component_types[k], tmp.components[k]))
    perm = [i for k in order for i in tmp.components[k]]
    simple = [simple[i] for i in perm]
    C = [[C[i][j] for j in perm] for i in perm]
    new_rs = RootSystem(C)
    B = [rs.coroot(b) for b in simple]
    Binv = inverse(B)
    Y = tuple(tuple(sum((y[k] * Binv[k][j] for k in range(rs.rank)), Fraction(0)) for j in range(rs.rank)) for y in G.Y)
    return GroupDatum(new_rs, Y)

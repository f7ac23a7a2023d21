"""The n0 / n1 / n2 recursion over isolated classes, closed forms and comparisons."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from . import series
from .groups import GroupDatum, centralizer, isolated_classes, make_group
from .orbits import distinguished_count
from .roots import type_label

UNAVAILABLE = "unavailable"
UNAVAILABLE_REASON = (
    "n2 summed over all components is only determined here for simply connected groups "
    "and SL(n)/mu(m); the general construction of the relevant subgroups is conjectural"
)


def _group(G: GroupDatum | str) -> GroupDatum:
    return make_group(G) if isinstance(G, str) else G


def n0(G: GroupDatum | str) -> int:
    G = _group(G)
    out = 1
    for t in G.types:
        out *= distinguished_count(t)
    return out


def n1(G: GroupDatum | str) -> int:
    G = _group(G)
    return sum(n0(centralizer(G, c.representative)) for c in isolated_classes(G))


@dataclass
class ClassContribution:
    vertex: tuple
    orbit_size: int
    type: str
    pi1: str
    n0: int
    n1: int

    def to_json(self) -> dict:
        return {
            "vertex": [str(v) for v in self.vertex],
            "orbit_size": self.orbit_size,
            "type": self.type,
            "pi1": self.pi1,
            "n0": self.n0,
            "n1": self.n1,
        }


@dataclass
class CountReport:
    group: str
    n0: int
    n1: int
    n2_at_1: int
    n2_total: int | str
    classes: list[ClassContribution] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "n0": self.n0,
            "n1": self.n1,
            "n2_at_1": self.n2_at_1,
            "n2_total": self.n2_total,
            "classes": [c.to_json() for c in self.classes],
            "notes": list(self.notes),
        }


def _breakdown(G: GroupDatum) -> list[ClassContribution]:
    out = []
    for c in isolated_classes(G):
        H = centralizer(G, c.representative)
        out.append(
            ClassContribution(
                vertex=c.representative.x,
                orbit_size=c.orbit_size,
                type=type_label(H.types),
                pi1=str(H.pi1()),
                n0=n0(H),
                n1=n1(H),
            )
        )
    return out


def n2_total(G: GroupDatum | str, at_identity: int | None = None) -> int | str:
    G = _group(G)
    if G.is_simply_connected:
        return at_identity if at_identity is not None else n2_at_identity(G).n2_at_1
    if len(G.atoms) == 1 and G.atoms[0].sl_quotient is not None:
        n, m = G.atoms[0].sl_quotient
        return n * n // m
    return UNAVAILABLE


def n2_at_identity(G: GroupDatum | str) -> CountReport:
    G = _group(G)
    classes = _breakdown(G)
    total = sum(c.n1 for c in classes)
    # n1 is the same sum with n0 in place of n1
    report = CountReport(
        group=str(G),
        n0=n0(G),
        n1=sum(c.n0 for c in classes),
        n2_at_1=total,
        n2_total=UNAVAILABLE,
    )
    report.classes = classes
    report.n2_total = n2_total(G, total)
    if report.n2_total == UNAVAILABLE:
        report.notes.append(UNAVAILABLE_REASON)
    report.notes.append(f"pi1 = {G.pi1()}; {len(classes)} isolated classes")
    return report


count = n2_at_identity


def dims(G: GroupDatum | str, genus: int) -> tuple[int, int, int]:
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    G = _group(G)
    dim_b = G.rs.num_positive
    dim_g = len(G.rs.roots) + G.rank
    return dim_g, dim_b, (genus - 1) * dim_g + dim_b


# Comparison with the generating functions


@dataclass(frozen=True)
class ComparisonRow:
    n: int
    k: int
    recursion: int
    series: int

    @property
    def match(self) -> bool:
        return self.recursion == self.series


def _family_group(family: str, n: int) -> GroupDatum:
    if family == "Spin":
        return make_group(f"Spin({n})")
    if family == "Sp":
        return make_group(f"Sp({2 * n})")
    raise ValueError(f"unknown family {family!r}; choose Spin or Sp")


def recursion_values(G: GroupDatum) -> tuple[int, int, int]:
    rep = n2_at_identity(G)
    return rep.n0, rep.n1, rep.n2_at_1


def compare_pipelines(family: str, ns: Iterable[int], order: int = series.DEFAULT_ORDER) -> list[ComparisonRow]:
    """Recursion vs generating-function coefficients for n_0, n_1, n_2."""
    ns = list(ns)
    if family == "Spin":
        names = ("B/D-n0", "BD-n1", "BD-n2")
        index = lambda n: n  # noqa: E731
    elif family == "Sp":
        names = ("C-n0", "C-n1", "C-n2")
        index = lambda n: n  # noqa: E731
    else:
        raise ValueError(f"unknown family {family!r}; choose Spin or Sp")
    if ns and max(ns) > order:
        raise ValueError(f"range exceeds the series truncation order {order}")
    rows = []
    for n in ns:
        rec = recursion_values(_family_group(family, n))
        for k in range(3):
            ser = series.coefficient(series.family_series(names[k], order), index(n))
            rows.append(ComparisonRow(n, k, rec[k], ser))
    return rows

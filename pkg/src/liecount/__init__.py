"""Exact counts of distinguished and isolated data for semisimple groups, and
finite-field checks of selection-function identities for gl_n."""

__version__ = "0.1.0"

from .caps import CapExceeded
from .counting import CountReport, compare_pipelines, dims, n0, n1, n2_at_identity, n2_total
from .groups import GroupDatum, GroupParseError, make_group
from .roots import RootSystem, SimpleType, build

__all__ = [
    "CapExceeded",
    "CountReport",
    "GroupDatum",
    "GroupParseError",
    "RootSystem",
    "SimpleType",
    "build",
    "compare_pipelines",
    "dims",
    "make_group",
    "n0",
    "n1",
    "n2_at_identity",
    "n2_total",
]

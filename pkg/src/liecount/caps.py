"""Enumeration caps shared by every brute-force routine.

``LIECOUNT_CAP`` in the environment replaces all default caps at once.
"""

from __future__ import annotations

import os

WEYL_CAP = 4_000_000
ENUMERATION_CAP = 10**8
MAX_PRIME = 101
MAX_DEGREE = 6


class CapExceeded(RuntimeError):
    """Raised when an enumeration would exceed its configured cap."""


def _env_cap() -> int | None:
    raw = os.environ.get("LIECOUNT_CAP")
    if not raw:
        return None
    try:
        value = int(float(raw))
    except ValueError:
        raise ValueError(f"LIECOUNT_CAP must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError("LIECOUNT_CAP must be positive")
    return value


def weyl_cap(cap: int | None = None) -> int:
    return cap if cap is not None else (_env_cap() or WEYL_CAP)


def enumeration_cap(cap: int | None = None) -> int:
    return cap if cap is not None else (_env_cap() or ENUMERATION_CAP)


def check(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise CapExceeded(f"{what}: size {size} exceeds cap {cap}")

"""Enumeration caps.

Exact tables over S_k and over pair partitions of {0..2l-1} grow like k! and
(2l-1)!!, so every enumerating entry point takes a cap and refuses to run past
it.  The defaults below may be overridden per call, or globally through the
environment (the CLI reads HAARSYM_MAX_K / HAARSYM_MAX_L at startup).
"""

from __future__ import annotations

import os

from .errors import SizeCapError

DEFAULT_MAX_K = 8   # symmetric group S_k enumeration
DEFAULT_MAX_L = 5   # pair partitions of a 2l-element set


def max_k() -> int:
    return int(os.environ.get("HAARSYM_MAX_K", DEFAULT_MAX_K))


def max_l() -> int:
    return int(os.environ.get("HAARSYM_MAX_L", DEFAULT_MAX_L))


def check_k(k: int, cap: int | None = None) -> None:
    limit = max_k() if cap is None else cap
    if k > limit:
        raise SizeCapError(
            f"k={k} exceeds the symmetric-group cap {limit} "
            f"(HAARSYM_MAX_K, or pass cap=)"
        )


def check_l(l: int, cap: int | None = None) -> None:
    limit = max_l() if cap is None else cap
    if l > limit:
        raise SizeCapError(
            f"l={l} exceeds the pair-partition cap {limit} "
            f"(HAARSYM_MAX_L, or pass cap=)"
        )

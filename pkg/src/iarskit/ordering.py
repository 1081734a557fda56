"""Shared total order for state and action identifiers.

Every set in this package is iterated and serialized in this order so that
all outputs are reproducible byte-for-byte.
"""

from __future__ import annotations

import re
from typing import Iterable

_CHUNKS = re.compile(r"\d+|\D+")


def natural_key(identifier: str) -> tuple:
    """Sort key that orders embedded integers numerically (e2 < e10)."""
    key = []
    for chunk in _CHUNKS.findall(identifier):
        if chunk.isdigit():
            key.append((0, int(chunk), ""))
        else:
            key.append((1, 0, chunk))
    return tuple(key)


def ordered(identifiers: Iterable[str]) -> list[str]:
    """Identifiers sorted by the canonical order."""
    return sorted(identifiers, key=natural_key)


def set_key(identifiers: Iterable[str]) -> tuple:
    """Sort key for a *set* of identifiers (element-wise canonical order)."""
    return tuple(natural_key(i) for i in ordered(identifiers))


def joined(identifiers: Iterable[str], sep: str = "+") -> str:
    """Canonical single-string form of a set of identifiers."""
    return sep.join(ordered(identifiers))

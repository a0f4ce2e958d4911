"""Enumeration caps, overridable via the GG_LAB_CAPS environment variable.

Format: comma-separated ``name=value`` pairs, e.g.
``GG_LAB_CAPS=subgroupoid_arrows=30,exhaustive_dim=8``.
"""

from __future__ import annotations

import os

DEFAULT_CAPS = {
    "subgroupoid_arrows": 24,  # subset walk guard for subgroupoid enumeration
    "exhaustive_dim": 6,  # exhaustive subalgebra enumeration above this is pool-restricted
}


def caps() -> dict[str, int]:
    out = dict(DEFAULT_CAPS)
    raw = os.environ.get("GG_LAB_CAPS", "").strip()
    if not raw:
        return out
    for part in raw.split(","):
        if not part.strip():
            continue
        name, _, value = part.partition("=")
        name = name.strip()
        if name not in out:
            raise ValueError(f"unknown cap {name!r} in GG_LAB_CAPS")
        out[name] = int(value)
    return out

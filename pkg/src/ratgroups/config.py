"""Runtime limits and output options, overridable from the environment."""

from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_CAP = 2_000_000
DEFAULT_DIXON_CAP = 3000


@dataclass(frozen=True)
class Config:
    cap: int = DEFAULT_CAP          # enumeration cap (number of elements)
    dixon_cap: int = DEFAULT_DIXON_CAP  # largest order handed to the eigenvalue method
    cache_dir: str | None = None    # character table cache directory
    fmt: str = "text"               # "text" | "machine"


def from_env() -> Config:
    """Environment defaults; explicit CLI flags take precedence over these."""
    return Config(
        cap=int(os.environ.get("RATGROUPS_CAP", DEFAULT_CAP)),
        dixon_cap=int(os.environ.get("RATGROUPS_DIXON_CAP", DEFAULT_DIXON_CAP)),
        cache_dir=os.environ.get("RATGROUPS_CACHE_DIR"),
        fmt=os.environ.get("RATGROUPS_FORMAT", "text"),
    )

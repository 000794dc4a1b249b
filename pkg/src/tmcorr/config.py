"""Resource budgets and environment-driven settings."""

from __future__ import annotations

import os

PREFIX_CAP_ENV = "TMCORR_PREFIX_CAP"
MEMO_PATH_ENV = "TMCORR_MEMO"

DEFAULT_PREFIX_CAP = 1 << 26
DEFAULT_MAX_ORDER = 8
DEFAULT_MAX_DEPTH = 24
DEFAULT_CUBE_BUDGET = 1 << 24


class BudgetExceeded(ValueError):
    """A request would exceed a configured resource cap."""


def prefix_cap() -> int:
    raw = os.environ.get(PREFIX_CAP_ENV)
    if raw is None:
        return DEFAULT_PREFIX_CAP
    return int(raw)


def memo_path() -> str | None:
    return os.environ.get(MEMO_PATH_ENV) or None

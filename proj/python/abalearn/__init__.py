"""Learning assumption-based argumentation frameworks."""

from ._aba import (
    AbaError,
    BudgetExceeded,
    Framework,
    ParseError,
    ValidationError,
    cross_check,
    entails,
    learn,
    replay,
    stable_extensions,
    to_lp,
)

__all__ = [
    "AbaError",
    "BudgetExceeded",
    "Framework",
    "ParseError",
    "ValidationError",
    "cross_check",
    "entails",
    "learn",
    "replay",
    "stable_extensions",
    "to_lp",
]

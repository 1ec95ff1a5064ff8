"""Top-k high-utility sequential pattern mining."""

from ._core import (
    Database,
    DivisionByZero,
    ParseError,
    Pattern,
    initial_threshold,
    mine,
    oracle,
    pattern_utility,
    seu,
    sssr,
    swu,
)

__all__ = [
    "Database",
    "DivisionByZero",
    "ParseError",
    "Pattern",
    "initial_threshold",
    "mine",
    "oracle",
    "pattern_utility",
    "seu",
    "sssr",
    "swu",
]

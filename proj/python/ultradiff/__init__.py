"""Exact difference calculus over F_p((X))."""

from ._core import (
    Error,
    PrecisionError,
    c2_blowup,
    check,
    counterexample,
    dd,
    eval,
    gauss_expand,
    holder,
    run,
    valuation,
)

__all__ = [
    "Error",
    "PrecisionError",
    "c2_blowup",
    "check",
    "counterexample",
    "dd",
    "eval",
    "gauss_expand",
    "holder",
    "run",
    "valuation",
]

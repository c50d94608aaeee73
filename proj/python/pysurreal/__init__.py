"""Exact surreal-number kernel."""

from ._core import (
    Budget,
    KernelError,
    Session,
    Surreal,
    check_t1,
    cos,
    delta_path,
    development,
    exp,
    g,
    h,
    log,
    oz_floor,
    sign_expansion,
    simplest_dyadic_between,
    sin,
)

__all__ = [
    "Budget",
    "KernelError",
    "Session",
    "Surreal",
    "check_t1",
    "cos",
    "delta_path",
    "development",
    "exp",
    "g",
    "h",
    "log",
    "oz_floor",
    "sign_expansion",
    "simplest_dyadic_between",
    "sin",
]

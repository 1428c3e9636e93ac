"""Dual-mode scalars: exact ``Fraction`` or binary ``float``.

Integers and ``"num/den"`` strings are promoted to ``Fraction``. Mixing the
two modes inside one operation raises :class:`ModeError`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"


class ModeError(TypeError):
    """Exact and float operands were combined."""


def as_scalar(value) -> Scalar:
    if isinstance(value, bool):
        raise TypeError("bool is not a probability scalar")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        if math.isnan(value):
            raise ValueError("NaN is not a valid scalar")
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    # numpy scalars and friends
    if hasattr(value, "dtype"):
        kind = value.dtype.kind
        if kind in "iu":
            return Fraction(int(value))
        if kind == "f":
            return as_scalar(float(value))
    raise TypeError(f"cannot interpret {value!r} as a scalar")


def parse_scalar(text: str) -> Scalar:
    text = text.strip()
    if "/" in text or text.lstrip("+-").isdigit():
        return Fraction(text)
    return float(text)


def mode_of(value: Scalar) -> str:
    return EXACT if isinstance(value, Fraction) else FLOAT


def common_mode(values: Iterable[Scalar]) -> str | None:
    """The shared mode of ``values`` (``None`` for an empty iterable)."""
    mode = None
    for v in values:
        m = mode_of(v)
        if mode is None:
            mode = m
        elif m != mode:
            raise ModeError("cannot mix exact and float scalars")
    return mode


def one(mode: str) -> Scalar:
    return Fraction(1) if mode == EXACT else 1.0


def zero(mode: str) -> Scalar:
    return Fraction(0) if mode == EXACT else 0.0


def to_float(value: Scalar) -> float:
    return float(value)


def format_scalar(value: Scalar) -> str | float:
    """JSON-ready form: ``"num/den"`` for rationals, the float otherwise."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return float(value)


def format_float(value: float) -> str:
    return format(float(value), ".17g")

"""Shared numeric-mode helpers.

Two value domains coexist throughout the package: exact rationals
(int / fractions.Fraction) for certification runs, and 64-bit floats for
large randomized sweeps.  Comparisons are exact in the rational domain and
tolerance-aware in the float domain; the tolerance is relative with an
absolute floor so that values near zero do not produce spurious failures.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Value = Union[int, float, Fraction]

REL_TOL = 1e-9
ABS_TOL = 1e-12


def is_exact(x: Value) -> bool:
    """True for values supporting exact comparison (int or Fraction)."""
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def all_exact(xs: Iterable[Value]) -> bool:
    return all(is_exact(x) for x in xs)


def slack(*xs: Value) -> float:
    """Comparison slack scaled to the magnitudes involved."""
    scale = max((abs(float(x)) for x in xs), default=0.0)
    return max(ABS_TOL, REL_TOL * scale)


def geq(x: Value, y: Value) -> bool:
    """x >= y, exact for rationals, within tolerance otherwise."""
    if is_exact(x) and is_exact(y):
        return x >= y
    return float(x) - float(y) >= -slack(x, y)


def close(x: Value, y: Value) -> bool:
    """x == y, exact for rationals, within tolerance otherwise."""
    if is_exact(x) and is_exact(y):
        return x == y
    return abs(float(x) - float(y)) <= slack(x, y)


def argmax_ties(values: Sequence[Value]) -> list[int]:
    """Indices attaining the maximum.

    Exact values tie only on equality; floats tie within the relative
    tolerance of the maximum.
    """
    if not values:
        raise ValueError("argmax of empty sequence")
    best = max(values)
    if all_exact(values):
        return [i for i, v in enumerate(values) if v == best]
    cut = float(best) - slack(best)
    return [i for i, v in enumerate(values) if float(v) >= cut]


def stable_sum(terms: Sequence[Value]) -> Value:
    """Order-stable summation: plain sum of exact terms, fsum of floats."""
    if all_exact(terms):
        return sum(terms)
    return math.fsum(float(t) for t in terms)


def power(base: Value, expo: Value) -> Value:
    """base**expo with the convention 0**a := 0 for a > 0.

    Stays exact when both operands are rational and the exponent is an
    integer; otherwise falls back to float arithmetic.
    """
    if base == 0:
        if expo > 0:
            return 0
        if expo == 0:
            return 1
        raise ZeroDivisionError("0 cannot be raised to a negative power")
    if is_exact(base):
        if isinstance(expo, int):
            return base ** expo
        if isinstance(expo, Fraction) and expo.denominator == 1:
            return base ** expo.numerator
    return float(base) ** float(expo)


def parse_value(raw: object) -> Value:
    """JSON scalar to number; strings parse as exact rationals ("3/4")."""
    if isinstance(raw, bool):
        raise ValueError(f"expected a number, got {raw!r}")
    if isinstance(raw, (int, float)):
        return raw
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {raw!r}") from exc
    raise ValueError(f"expected a number, got {raw!r}")


def format_value(x: Value) -> object:
    """Number to JSON scalar; Fractions serialize as "num/den" strings."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return x.numerator
        return f"{x.numerator}/{x.denominator}"
    return x

"""Closed-form tower counts for 2x4 bricks, evaluated exactly.

All arithmetic runs over exact rationals; the published closed forms involve
negative powers of 46 and 2 near the lower end of their domains, yet always
produce integers there.  A non-integral result signals a broken constant and
raises instead of rounding.
"""

from __future__ import annotations

from fractions import Fraction

from .geometry import BrickShape


class FormulaIntegralityError(ArithmeticError):
    """A count formula produced a non-integer on its stated domain."""


def _require_int(value: Fraction, label: str) -> int:
    if value.denominator != 1:
        raise FormulaIntegralityError(f"{label} evaluated to non-integer {value}")
    return value.numerator


def one_on_one_ways(shape: BrickShape) -> int:
    """Number of ways to attach one brick on top of another."""
    b, w = shape.b, shape.w
    if b == w:
        return (2 * b - 1) ** 2
    return (2 * b - 1) * (2 * w - 1) + (b + w - 1) ** 2


def crude_counts(shape: BrickShape, n: int) -> int:
    """Tower-style lower bound P**(n-1) on the anchored count, P the one-on-one count."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return one_on_one_ways(shape) ** (n - 1)


def tower_full_height(n: int) -> int:
    """Count of 2x4 buildings of n bricks in n layers: (46**(n-1) + 2**(n-1)) / 2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _require_int(Fraction(46 ** (n - 1) + 2 ** (n - 1), 2), "tower_full_height")


def tower_one_less(n: int) -> int:
    """Count of 2x4 buildings of n bricks in n-1 layers, valid for n >= 3."""
    if n < 3:
        raise ValueError("defined for n >= 3")
    value = (Fraction(46) ** (n - 4) * (-89115 + 37065 * n)
             + Fraction(2) ** (n - 4) * (-8 + 16 * n))
    return _require_int(value, "tower_one_less")


def tower_two_less(n: int, misprinted: bool = False) -> int:
    """Count of 2x4 buildings of n bricks in n-2 layers, valid for n >= 5.

    The quadratic term of the short-power part reads 256*n**2; a misprinted
    variant with a linear 256*n circulates and is kept behind the
    ``misprinted`` flag purely so the discrepancy against exhaustive
    enumeration (3840 at n = 6) stays demonstrable.
    """
    if n < 5:
        raise ValueError("defined for n >= 5")
    quad = 256 * n if misprinted else 256 * n * n
    value = (Fraction(2) ** (n - 7) * (1785 - 825 * n + quad)
             + Fraction(46) ** (n - 7) * (-918674675 - 5330182078 * n + 1373814225 * n * n))
    return _require_int(value, "tower_two_less")

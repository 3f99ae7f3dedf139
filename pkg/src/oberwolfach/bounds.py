"""Closed-form bounds and the target split, in exact arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable


class InvalidLength(ValueError):
    pass


@dataclass(frozen=True)
class StructureBounds:
    L: tuple[int, ...]
    b: int
    b0: int
    b1: Fraction
    B: int
    y0: int


@dataclass(frozen=True)
class TargetSplit:
    y: int
    epsilon: int
    x: int
    delta: int


def _lengths(L: Iterable[int]) -> tuple[int, ...]:
    L = tuple(sorted(int(l) for l in L))
    if not L:
        raise InvalidLength("empty list of cycle lengths")
    bad = [l for l in L if l < 3]
    if bad:
        raise InvalidLength(f"cycle lengths must be >= 3, got {bad}")
    return L


def structure_bounds(L: Iterable[int]) -> StructureBounds:
    L = _lengths(L)
    even = [l for l in L if l % 2 == 0]
    odd = [l for l in L if l % 2 == 1]
    b = sum(L)
    b0 = 2 * len(even) * (max(even, default=0) + 3)
    # |L_1| = 0 gives 7**-1; keep it exact
    b1 = Fraction(7) ** (len(odd) - 1) * (2 * max(odd, default=0) + 1)
    B = 6 * b0 + 7 * b1 + 29
    y0 = 3 * b + 24 * b0 + 28 * b1 + 119
    assert B.denominator == 1 and y0.denominator == 1
    return StructureBounds(L, b, b0, b1, int(B), int(y0))


def epsilon_of(y: int, b: int) -> int:
    return 1 if (y + b) % 2 else 2


def split_target(y: int, L: Iterable[int]) -> TargetSplit:
    """Pick (epsilon, x, delta) with y = 2x + 3b - epsilon - 2*delta.

    delta = 0 selects the plain halving route, delta = 1 the route that
    dissolves one factor through the matching property.
    """
    b = sum(_lengths(L))
    eps = epsilon_of(y, b)
    delta = 0 if (y + b - eps) % 4 == 0 else 1
    twice = y + eps - 3 * b
    x = twice // 2 + delta
    assert twice % 2 == 0
    return TargetSplit(y, eps, x, delta)


def min_split_x(L: Iterable[int]) -> int:
    """12*b0 + 14*b1 + 61, the value of f at the bound."""
    sb = structure_bounds(L)
    v = 12 * sb.b0 + 14 * sb.b1 + 61
    assert v.denominator == 1
    return int(v)


TABLE_PAIRS = (
    [(3, l2) for l2 in range(4, 10)] + [(4, l2) for l2 in range(5, 10)],
    [(5, l2) for l2 in range(6, 10)] + [(6, l2) for l2 in range(7, 10)]
    + [(7, 8), (7, 9), (8, 9)],
)


def bound_tables() -> list[list[tuple[int, int, int]]]:
    """The two tables of (y_bar, l1, l2) for 3 <= l1 < l2 <= 9, split as published."""
    return [[(structure_bounds(p).y0, *p) for p in pairs] for pairs in TABLE_PAIRS]

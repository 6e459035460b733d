"""Bounded/unbounded queries and conservative rounding onto the reference scales.

A query ``(x >=? y)`` is rounded by moving the candidate ``x`` down and the
challenger ``y`` up to the nearest reference values. Criteria where ``x`` wins
without any reference value in between become wildcards.
"""

from __future__ import annotations

import enum
from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .model import STAR, Alternative, ReferenceScale


class UnboundedQueryError(ValueError):
    """Rounding was requested for a query that is unbounded by P."""


class ScaleError(ValueError):
    """A value or scale does not fit the requested operation."""


@dataclass(frozen=True)
class Query:
    x: Alternative
    y: Alternative

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ValueError("query sides have different lengths")
        for i, (a, b) in enumerate(zip(self.x, self.y)):
            if (a is STAR) != (b is STAR):
                raise ValueError(f"wildcard on one side only (criterion {i + 1})")

    def reversed(self) -> "Query":
        return Query(self.y, self.x)


@dataclass(frozen=True)
class RoundedQuery:
    x_low: Alternative
    y_high: Alternative

    def as_query(self) -> Query:
        return Query(self.x_low, self.y_high)


class Unbounded(enum.Enum):
    ESCAPES_SCALE = "escapes-scale"
    EMPTY_SCALE = "empty-scale"


def unbounded_criteria(q: Query, scales: ReferenceScale) -> list:
    """``(i, reason)`` for every criterion that makes the query unbounded."""
    out = []
    for i, (xi, yi) in enumerate(zip(q.x, q.y)):
        if xi is STAR or not yi > xi:
            continue
        levels = scales[i]
        if not levels:
            out.append((i, Unbounded.EMPTY_SCALE))
        elif yi > levels[-1] or xi < levels[0]:
            out.append((i, Unbounded.ESCAPES_SCALE))
    return out


def is_bounded(q: Query, scales: ReferenceScale) -> bool:
    return not unbounded_criteria(q, scales)


def _round_pair(xi, yi, levels):
    if xi is STAR:
        return STAR, STAR
    if xi >= yi:
        # any reference value inside [y_i, x_i]?
        lo = bisect_left(levels, yi)
        if lo >= len(levels) or levels[lo] > xi:
            return STAR, STAR
    below = bisect_right(levels, xi)
    above = bisect_left(levels, yi)
    if below == 0 or above == len(levels):
        raise UnboundedQueryError("query escapes the reference scale")
    return levels[below - 1], levels[above]


def round_query(q: Query, scales: ReferenceScale) -> RoundedQuery:
    """Round ``x`` down and ``y`` up onto the reference scales."""
    if not is_bounded(q, scales):
        raise UnboundedQueryError("cannot round a query unbounded by P")
    pairs = [_round_pair(xi, yi, scales[i]) for i, (xi, yi) in enumerate(zip(q.x, q.y))]
    return RoundedQuery(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))


class Argument(enum.Enum):
    STRONG_FOR_X = "strong-for-x"
    WEAK_FOR_X = "weak-for-x"
    NEUTRAL = "neutral"
    WEAK_FOR_Y = "weak-for-y"
    STRONG_FOR_Y = "strong-for-y"

    @property
    def coefficient(self):
        """Covector coefficient; ``None`` for strong-for-y, where necessity is impossible."""
        return {
            Argument.STRONG_FOR_X: 1,
            Argument.WEAK_FOR_X: 0,
            Argument.NEUTRAL: 0,
            Argument.WEAK_FOR_Y: -1,
            Argument.STRONG_FOR_Y: None,
        }[self]


def classify_argument_binary(xi, yi, levels) -> Argument:
    """Five-way classification of one criterion on a binary scale ``(bottom, top)``."""
    if len(levels) != 2:
        raise ScaleError(f"binary scale expected, got {len(levels)} levels")
    bottom, top = levels
    if xi >= top and bottom >= yi:
        return Argument.STRONG_FOR_X
    if xi == yi:
        return Argument.NEUTRAL
    if xi > yi:
        return Argument.WEAK_FOR_X
    if yi > top or xi < bottom:
        return Argument.STRONG_FOR_Y
    return Argument.WEAK_FOR_Y

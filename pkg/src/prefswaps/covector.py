"""Integer covectors over the elementary-preference slots ``(i, k)``.

Slot ``(i, k)`` stands for the utility increment between the ``k``-th and
``k+1``-th reference values of criterion ``i``. The utility difference between
two alternatives on the reference scales is the covector dotted with the
vector of increments, so chaining queries adds covectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .model import STAR, Alternative, Instance, ReferenceScale
from .rounding import Query, ScaleError, UnboundedQueryError, is_bounded


@dataclass(frozen=True)
class IndexSet:
    """Lexicographically ordered slots ``(i, k)``, ``0 <= k < p_i - 1`` (0-based)."""

    sizes: tuple  # p_i per criterion

    @classmethod
    def from_scales(cls, scales: ReferenceScale) -> "IndexSet":
        return cls(scales.sizes)

    @property
    def slots(self) -> tuple:
        return tuple((i, k) for i, p in enumerate(self.sizes) for k in range(max(p - 1, 0)))

    @property
    def offsets(self) -> tuple:
        out, acc = [], 0
        for p in self.sizes:
            out.append(acc)
            acc += max(p - 1, 0)
        return tuple(out)

    def __len__(self):
        return sum(max(p - 1, 0) for p in self.sizes)

    def position(self, i: int, k: int) -> int:
        if not 0 <= k < self.sizes[i] - 1:
            raise IndexError(f"no slot ({i}, {k})")
        return self.offsets[i] + k

    def is_binary(self) -> bool:
        return all(p <= 2 for p in self.sizes)


@dataclass(frozen=True)
class Covector:
    index: IndexSet
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != len(self.index):
            raise ValueError("coefficient count does not match the index set")

    @classmethod
    def zero(cls, index: IndexSet) -> "Covector":
        return cls(index, (0,) * len(index))

    @classmethod
    def elementary(cls, index: IndexSet, i: int, k: int) -> "Covector":
        """The one-hot dominance covector of slot ``(i, k)``."""
        c = [0] * len(index)
        c[index.position(i, k)] = 1
        return cls(index, tuple(c))

    def __add__(self, other: "Covector") -> "Covector":
        return covector_sum(self, other)

    def __neg__(self) -> "Covector":
        return Covector(self.index, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Covector") -> "Covector":
        return self + (-other)

    def __mul__(self, factor) -> "Covector":
        return Covector(self.index, tuple(factor * c for c in self.coeffs))

    __rmul__ = __mul__

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, pos):
        return self.coeffs[pos]

    def dot(self, w: Sequence) -> object:
        return sum(c * wk for c, wk in zip(self.coeffs, w))

    def is_dominance(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def criterion_coeffs(self, i: int) -> tuple:
        start = self.index.offsets[i]
        return self.coeffs[start:start + max(self.index.sizes[i] - 1, 0)]

    def dominance_terms(self) -> list:
        """Elementary covectors summing to this one (only for ``{0,1}`` coefficients)."""
        if any(c not in (0, 1) for c in self.coeffs):
            raise ValueError("not a dominance covector")
        return [
            Covector.elementary(self.index, i, k)
            for (i, k), c in zip(self.index.slots, self.coeffs)
            if c
        ]


def covector_sum(c1: Covector, c2: Covector) -> Covector:
    if c1.index != c2.index:
        raise ValueError("covectors over different index sets")
    return Covector(c1.index, tuple(a + b for a, b in zip(c1.coeffs, c2.coeffs)))


def _level(levels, v, i):
    try:
        return levels.index(v)
    except ValueError:
        raise ScaleError(f"value {v} is not on the reference scale of criterion {i + 1}") from None


def covector_of(x: Alternative, y: Alternative, scales: ReferenceScale) -> Covector:
    """Covector of ``(x >=? y)`` for alternatives on the reference scales."""
    index = IndexSet.from_scales(scales)
    coeffs = []
    for i, (xi, yi) in enumerate(zip(x, y)):
        width = max(index.sizes[i] - 1, 0)
        if (xi is STAR) != (yi is STAR):
            raise ScaleError(f"wildcard on one side only (criterion {i + 1})")
        if xi is STAR:
            coeffs.extend([0] * width)
            continue
        a, b = _level(scales[i], xi, i), _level(scales[i], yi, i)
        for k in range(width):
            if b <= k < a:
                coeffs.append(1)
            elif a <= k < b:
                coeffs.append(-1)
            else:
                coeffs.append(0)
    return Covector(index, tuple(coeffs))


def covector_of_rounded_query(q: Query, scales: ReferenceScale) -> Covector:
    """Covector of the rounded query, read straight off ``x`` and ``y``.

    A slot counts +1 when its interval lies inside ``[y_i, x_i]`` and -1 when
    it meets the open liability ``]x_i, y_i[``.
    """
    if not is_bounded(q, scales):
        raise UnboundedQueryError("query is unbounded by P")
    coeffs = []
    for i, (xi, yi) in enumerate(zip(q.x, q.y)):
        coeffs.extend(rounded_slot_coeffs(xi, yi, scales[i]))
    return Covector(IndexSet.from_scales(scales), tuple(coeffs))


def rounded_slot_coeffs(xi, yi, levels) -> tuple:
    """Slot coefficients of one criterion of a bounded query."""
    out = []
    for lo, hi in zip(levels, levels[1:]):
        if xi is STAR:
            out.append(0)
        elif yi <= lo and hi <= xi:
            out.append(1)
        elif xi < yi and lo < yi and hi > xi:
            out.append(-1)
        else:
            out.append(0)
    return tuple(out)


def statement_covectors(instance: Instance) -> list:
    return [covector_of(s.better, s.worse, instance.scales) for s in instance.statements]


def argument_partition(c: Covector) -> tuple:
    """``(positive, negative, neutral)`` criterion sets of a binary-scale covector."""
    if not c.index.is_binary():
        raise ScaleError("argument partition needs binary reference scales")
    pos, neg, neu = set(), set(), set()
    for i, p in enumerate(c.index.sizes):
        v = c.coeffs[c.index.offsets[i]] if p == 2 else 0
        (pos if v > 0 else neg if v < 0 else neu).add(i)
    return frozenset(pos), frozenset(neg), frozenset(neu)


def _sign(c):
    return "+" if c > 0 else "-" if c < 0 else "0"


def dump_covector(c: Covector, instance: Instance) -> str:
    """One line per criterion: each slot interval with its coefficient."""
    lines = []
    scales = instance.scales
    for i, crit in enumerate(instance.criteria):
        levels = scales[i]
        parts = []
        for k, coef in enumerate(c.criterion_coeffs(i)):
            lo, hi = crit.decode(levels[k]), crit.decode(levels[k + 1])
            parts.append(f"[{lo}, {hi}]:{_sign(coef) if abs(coef) <= 1 else coef}")
        lines.append(f"{crit.name}: " + ("  ".join(parts) if parts else "(no slots)"))
    return "\n".join(lines)

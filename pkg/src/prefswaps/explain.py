"""Explanations as chains of dominance steps and preference swaps.

On binary reference scales an order-2 swap reduces to a directed edge
``i -> j`` between criteria ("raising i from bottom to top compensates
lowering j"). A necessary statement has an explanation made of such swaps
exactly when its negative arguments can be matched injectively to positive
arguments along these edges, which is what :func:`find_explanation` checks.
For general scales, :func:`shortest_explanation_search` runs a breadth-first
search over the augmented grid of values.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .covector import Covector, IndexSet, argument_partition
from .model import STAR, Alternative, Instance, dominates, make_instance
from .necessity import Reasoner
from .rounding import Query, ScaleError, round_query, unbounded_criteria

DOMINANCE = "dominance"
SWAP = "swap"


class BudgetExceeded(RuntimeError):
    """The search visited more states than its budget allows."""


@dataclass(frozen=True)
class SwapRelation:
    """Necessary order-2 swaps ``i -> j`` between criteria (0-based indices)."""

    n: int
    edges: frozenset
    names: tuple = ()

    def __contains__(self, edge):
        return edge in self.edges

    def __len__(self):
        return len(self.edges)

    def successors(self, i) -> list:
        return sorted(j for a, j in self.edges if a == i)

    def named_edges(self) -> list:
        return sorted((self.names[i], self.names[j]) for i, j in self.edges)

    def is_transitive(self) -> bool:
        return all(
            (i, k) in self.edges
            for i, j in self.edges
            for j2, k in self.edges
            if j == j2 and i != k
        )

    def to_dot(self) -> str:
        lines = ["digraph delta2 {", "  rankdir=LR;"]
        for i in range(self.n):
            lines.append(f'  c{i} [label="{self.names[i]}", shape=box, style=rounded];')
        for i, j in sorted(self.edges):
            lines.append(f"  c{i} -> c{j};")
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class Step:
    source: Alternative
    target: Alternative
    kind: str
    criteria: tuple = ()  # changed criteria (0-based)

    @property
    def order(self) -> int:
        return len(self.criteria)


@dataclass
class Explanation:
    steps: list
    matching: Optional[dict] = None

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def swap_count(self) -> int:
        return sum(1 for s in self.steps if s.kind == SWAP)

    @property
    def alternatives(self) -> list:
        if not self.steps:
            return []
        return [self.steps[0].source] + [s.target for s in self.steps]

    def render(self, instance: Instance) -> str:
        alts = self.alternatives
        lines = [f"  {instance.format(alts[0])}"]
        for s in self.steps:
            changed = ", ".join(instance.criteria[i].name for i in s.criteria)
            tag = "D " if s.kind == DOMINANCE else f"S{s.order}"
            lines.append(f"{tag} {instance.format(s.target)}   [{changed}]")
        return "\n".join(lines)


def make_step(source: Alternative, target: Alternative) -> Step:
    changed = tuple(i for i, (a, b) in enumerate(zip(source, target)) if a != b)
    kind = DOMINANCE if dominates(source, target) else SWAP
    return Step(tuple(source), tuple(target), kind, changed)


def _require_binary(instance: Instance):
    if not instance.scales.is_binary():
        raise ScaleError("binary reference scales required (at most two levels per criterion)")


def swap_target(index: IndexSet, i: int, j: int) -> Covector:
    """Covector of the abbreviated swap ``({i} >= {j})`` on binary scales."""
    c = [0] * len(index)
    c[index.position(i, 0)] = 1
    c[index.position(j, 0)] = -1
    return Covector(index, tuple(c))


def delta2_graph(instance: Instance, reasoner: Optional[Reasoner] = None) -> SwapRelation:
    """All necessary order-2 swaps between criteria carrying two reference levels."""
    _require_binary(instance)
    reasoner = reasoner or Reasoner(instance)
    sizes = instance.scales.sizes
    active = [i for i in range(instance.n) if sizes[i] == 2]
    edges = set()
    for i in active:
        for j in active:
            if i != j and reasoner.certificate(swap_target(reasoner.index, i, j)) is not None:
                edges.add((i, j))
    return SwapRelation(instance.n, frozenset(edges), tuple(c.name for c in instance.criteria))


def maximum_matching(left: Sequence, adjacency: Callable[[object], Iterable]) -> dict:
    """Maximum bipartite matching by augmenting paths; returns ``{left: right}``.

    Left vertices are processed in the given order and their neighbours in
    the order ``adjacency`` yields them, which makes the result deterministic.
    """
    owner: dict = {}

    def augment(u, seen):
        for v in adjacency(u):
            if v in seen:
                continue
            seen.add(v)
            if v not in owner or augment(owner[v], seen):
                owner[v] = u
                return True
        return False

    for u in left:
        augment(u, set())
    return {u: v for v, u in owner.items()}


def find_explanation(q: Query, instance: Instance, reasoner: Optional[Reasoner] = None) -> Optional[dict]:
    """Match every negative argument of ``q`` to a stronger positive one.

    Returns ``{negative criterion: positive criterion}`` covering all negative
    arguments, or ``None`` when ``q`` is not necessary or no such matching
    exists.
    """
    _require_binary(instance)
    reasoner = reasoner or Reasoner(instance)
    result = reasoner.check(q.x, q.y)
    if not result.bounded:
        return None
    pos, neg, _ = argument_partition(result.covector)
    if len(pos) < len(neg):
        return None
    if not result.necessary:
        return None
    index = reasoner.index
    graph = {
        j: [i for i in sorted(pos) if reasoner.certificate(swap_target(index, i, j)) is not None]
        for j in sorted(neg)
    }
    phi = maximum_matching(sorted(neg), lambda j: graph[j])
    if len(phi) < len(neg):
        return None
    return phi


def _order_for(phi: dict, order) -> list:
    if order is None or order == "index":
        return sorted(phi)
    if order == "strongest-first":
        # no strength model: index order
        return sorted(phi)
    order = list(order)
    if len(set(order)) != len(order) or not set(order) <= set(phi):
        raise ValueError("order must list distinct negative arguments")
    return order + sorted(set(phi) - set(order))


def render_sequence(q: Query, instance: Instance, phi: dict, policy: str = "shortest", order=None) -> Explanation:
    """Turn a matching into a chain of alternatives.

    ``shortest`` builds every term from the attributes of ``x`` and ``y`` and
    merges any leftover dominance into one final step. ``reference`` starts
    with a dominance step down to the rounded candidate, walks the swaps on
    reference values and closes with a dominance step from the rounded
    challenger. ``order`` lists the negative arguments in swap order.
    """
    scales = instance.scales
    rounded = round_query(q, scales)
    _, neg, _ = argument_partition(Reasoner(instance).check(q.x, q.y).covector)
    if set(phi) != set(neg):
        raise ValueError("matching does not cover the negative arguments")
    seq_order = _order_for(phi, order)

    if policy == "shortest":
        start, finish = list(q.x), list(q.y)
    elif policy == "reference":
        # wildcard criteria keep x's value until the final dominance step
        start = [xl if xl is not STAR else xi for xl, xi in zip(rounded.x_low, q.x)]
        finish = [yh if yh is not STAR else xi for yh, xi in zip(rounded.y_high, q.x)]
    else:
        raise ValueError(f"unknown policy {policy!r}")

    chain = [tuple(q.x)]
    if tuple(start) != chain[-1]:
        chain.append(tuple(start))
    current = list(start)
    for j in seq_order:
        i = phi[j]
        current[i], current[j] = finish[i], finish[j]
        chain.append(tuple(current))
    if chain[-1] != tuple(q.y):
        chain.append(tuple(q.y))
    steps = [make_step(a, b) for a, b in zip(chain, chain[1:])]
    return Explanation(steps, dict(phi))


def explain(q: Query, instance: Instance, policy: str = "shortest", order=None) -> Optional[Explanation]:
    """Matching-based explanation on binary scales, or ``None``."""
    reasoner = Reasoner(instance)
    phi = find_explanation(q, instance, reasoner)
    if phi is None:
        return None
    return render_sequence(q, instance, phi, policy, order)


def augmented_grid(q: Query, instance: Instance) -> list:
    """Per criterion, the reference values plus the query's own values, ascending."""
    grid = []
    for i, levels in enumerate(instance.scales.levels):
        vals = set(levels)
        for v in (q.x[i], q.y[i]):
            if v is not STAR:
                vals.add(v)
        grid.append(sorted(vals))
    return grid


def shortest_explanation_search(
    q: Query,
    instance: Instance,
    max_order: int = 2,
    step_budget: int = 200_000,
    reasoner: Optional[Reasoner] = None,
) -> Optional[Explanation]:
    """Minimum-step explanation by breadth-first search over the augmented grid.

    Edges are Pareto dominance moves (any number of criteria at once) and
    necessary statements changing at most ``max_order`` criteria. Returns
    ``None`` when ``y`` is unreachable; raises :class:`BudgetExceeded` when
    more than ``step_budget`` states would be expanded.
    """
    if any(v is STAR for v in q.x) or any(v is STAR for v in q.y):
        raise ValueError("queries must not contain wildcards")
    reasoner = reasoner or Reasoner(instance)
    x, y = tuple(q.x), tuple(q.y)
    if x == y:
        return Explanation([])
    if not reasoner.is_necessary(x, y):
        return None
    grid = augmented_grid(q, instance)
    n = instance.n

    def neighbours(s):
        seen = set()
        # low-order moves, necessity decided on the rounded covector
        for size in range(1, max_order + 1):
            for crits in itertools.combinations(range(n), size):
                choices = [[v for v in grid[i] if v != s[i]] for i in crits]
                for vals in itertools.product(*choices):
                    t = list(s)
                    for i, v in zip(crits, vals):
                        t[i] = v
                    t = tuple(t)
                    if dominates(s, t) or reasoner.is_necessary(s, t):
                        seen.add(t)
                        yield t
        # wider dominance moves
        lower = [[v for v in grid[i] if v <= s[i]] for i in range(n)]
        for t in itertools.product(*lower):
            if t != s and t not in seen:
                yield t

    parent = {x: None}
    frontier = deque([x])
    expanded = 0
    while frontier:
        s = frontier.popleft()
        expanded += 1
        if expanded > step_budget:
            raise BudgetExceeded(f"more than {step_budget} states expanded")
        for t in neighbours(s):
            if t in parent:
                continue
            parent[t] = s
            if t == y:
                chain = [y]
                while parent[chain[-1]] is not None:
                    chain.append(parent[chain[-1]])
                chain.reverse()
                return Explanation([make_step(a, b) for a, b in zip(chain, chain[1:])])
            frontier.append(t)
    return None


def worst_case_instance(p: int):
    """Three-criterion instance whose shortest order-2 explanation takes ``2p`` swaps.

    Returns ``(instance, x, y)`` with ``x = (0, 0, 0)`` and ``y = (2p, -p, -p)``.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    statements = []
    for j in range(p):
        statements.append(((2 * j, -j, "*"), (2 * j + 1, -j - 1, "*"), f"a{j}"))
    for j in range(p):
        statements.append(((2 * j + 1, "*", -j), (2 * j + 2, "*", -j - 1), f"b{j}"))
    instance = make_instance(
        ["X1", "X2", "X3"],
        statements,
        alternatives={"x": (0, 0, 0), "y": (2 * p, -p, -p)},
    )
    return instance, instance.alternatives["x"], instance.alternatives["y"]


def necessary_graph_dot(instance: Instance, reasoner: Optional[Reasoner] = None) -> str:
    """DOT drawing of the necessary relation over the binary reference grid.

    Only covering edges are drawn (no edge implied by two others). Styles:
    double for Pareto dominance, dotted for statements of P, plain for the
    remaining necessary preferences.
    """
    _require_binary(instance)
    reasoner = reasoner or Reasoner(instance)
    levels = instance.scales.levels
    axes = [lv if lv else (None,) for lv in levels]
    states = list(itertools.product(*axes))
    n = len(states)
    rel = [[False] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if a != b:
                rel[a][b] = reasoner.is_necessary(_fill(states[a]), _fill(states[b]))
    stated = {(s.better, s.worse) for s in instance.statements}

    def name(s):
        parts = []
        for c, v in zip(instance.criteria, s):
            parts.append("*" if v is None else str(c.decode(v)))
        return "(" + ", ".join(parts) + ")"

    lines = ["digraph necessary {", "  rankdir=TB;"]
    for a, s in enumerate(states):
        lines.append(f'  s{a} [label="{name(s)}", shape=box, style=rounded];')
    for a in range(n):
        for b in range(n):
            if not rel[a][b] or rel[b][a]:
                continue
            if any(rel[a][c] and rel[c][b] and not rel[c][a] and not rel[b][c]
                   for c in range(n) if c not in (a, b)):
                continue
            sa, sb = _fill(states[a]), _fill(states[b])
            if dominates(sa, sb):
                style = "style=bold, color=\"black:black\""
            elif any(_matches(sa, sb, p) for p in stated):
                style = "style=dotted"
            else:
                style = "style=solid"
            lines.append(f"  s{a} -> s{b} [{style}];")
    lines.append("}")
    return "\n".join(lines)


def _fill(state):
    return tuple(Fraction(0) if v is None else v for v in state)


def _matches(a, b, statement) -> bool:
    better, worse = statement
    for ai, bi, pi, qi in zip(a, b, better, worse):
        if pi is STAR:
            if ai != bi:
                return False
        elif (ai, bi) != (pi, qi):
            return False
    return True

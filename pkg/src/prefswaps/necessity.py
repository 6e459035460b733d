"""Necessary preference as cone membership, with certificates and two oracles.

``x`` is necessarily preferred to ``y`` when the query is bounded and the
covector of the rounded query is a nonnegative combination of the statement
covectors and the elementary dominance covectors. Membership is decided by an
exact phase-one simplex over :class:`fractions.Fraction` with Bland's rule,
so degenerate pivots on the {-1, 0, 1} matrices cannot cycle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .covector import (
    Covector,
    IndexSet,
    covector_of_rounded_query,
    rounded_slot_coeffs,
    statement_covectors,
)
from .model import Instance
from .rounding import (
    Query,
    RoundedQuery,
    UnboundedQueryError,
    round_query,
    unbounded_criteria,
)


@dataclass(frozen=True)
class ConeSystem:
    """Generators (statements of P first, then the dominance slots) and a target."""

    generators: tuple
    target: Covector
    n_statements: int = 0
    labels: tuple = ()

    def __post_init__(self):
        for g in self.generators:
            if g.index != self.target.index:
                raise ValueError("generators and target live on different index sets")

    @classmethod
    def for_instance(cls, instance: Instance, target: Covector) -> "ConeSystem":
        return cls.from_statements(
            statement_covectors(instance), target, [s.label for s in instance.statements]
        )

    @classmethod
    def from_statements(cls, statements: Sequence[Covector], target: Covector, labels=()):
        index = target.index
        dominance = [Covector.elementary(index, i, k) for i, k in index.slots]
        labels = tuple(labels) or tuple(f"p{j + 1}" for j in range(len(statements)))
        return cls(tuple(statements) + tuple(dominance), target, len(statements), labels)


@dataclass(frozen=True)
class IntegerCertificate:
    r: int
    ell: tuple
    m: tuple

    def verify(self, system: ConeSystem) -> bool:
        lhs = [self.r * t for t in system.target]
        rhs = _combine(system.generators, self.ell + self.m, len(system.target))
        return self.r > 0 and all(v >= 0 for v in self.ell + self.m) and lhs == rhs


@dataclass(frozen=True)
class Certificate:
    lam: tuple  # per statement of P
    mu: tuple  # per dominance slot

    @property
    def coefficients(self) -> tuple:
        return self.lam + self.mu

    def verify(self, system: ConeSystem) -> bool:
        if any(c < 0 for c in self.coefficients):
            return False
        if len(self.coefficients) != len(system.generators):
            return False
        combo = _combine(system.generators, self.coefficients, len(system.target))
        return combo == list(system.target.coeffs)

    def integer_form(self) -> IntegerCertificate:
        r = 1
        for c in self.coefficients:
            r = math.lcm(r, Fraction(c).denominator)
        return IntegerCertificate(
            r,
            tuple(int(c * r) for c in self.lam),
            tuple(int(c * r) for c in self.mu),
        )

    def to_dict(self, system: ConeSystem, instance: Optional[Instance] = None) -> dict:
        slots = system.target.index.slots
        return {
            "lambda": {lab: _rat(c) for lab, c in zip(system.labels, self.lam) if c},
            "mu": {_slot_name(s, instance): _rat(c) for s, c in zip(slots, self.mu) if c},
        }

    def to_text(self, system: ConeSystem, instance: Optional[Instance] = None) -> str:
        d = self.to_dict(system, instance)
        lines = [f"lambda[{k}] = {v}" for k, v in d["lambda"].items()]
        lines += [f"mu[{k}] = {v}" for k, v in d["mu"].items()]
        return "\n".join(lines) if lines else "(all coefficients zero)"


def _rat(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _slot_name(slot, instance):
    i, k = slot
    if instance is None:
        return f"{i + 1}:{k + 1}"
    return f"{instance.criteria[i].name}:{k + 1}"


def _combine(generators, coefficients, width) -> list:
    out = [0] * width
    for g, c in zip(generators, coefficients):
        if c:
            for pos, v in enumerate(g.coeffs):
                out[pos] += c * v
    return out


def solve_nonnegative(columns: Sequence[Sequence], b: Sequence) -> Optional[list]:
    """Find ``z >= 0`` with ``sum_j z_j columns[j] == b`` exactly, or ``None``.

    Phase one of the simplex method: one artificial variable per row, minimize
    their sum, Bland's smallest-index rule for entering and leaving variables.
    """
    m = len(b)
    g = len(columns)
    if m == 0:
        return [Fraction(0)] * g
    # entries stay plain ints until a pivot divides them
    rows = []
    for r in range(m):
        sign = -1 if b[r] < 0 else 1
        row = [sign * columns[j][r] for j in range(g)]
        row += [1 if a == r else 0 for a in range(m)]
        row.append(sign * b[r])
        rows.append(row)
    basis = [g + r for r in range(m)]
    width = g + m
    # reduced costs of the phase-one objective (sum of artificials)
    cost = [0] * (width + 1)
    for row in rows:
        for j in range(width + 1):
            cost[j] -= row[j]
    for r in range(m):
        cost[g + r] += 1

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        leaving, best = None, None
        for r in range(m):
            a = rows[r][entering]
            if a > 0:
                ratio = Fraction(rows[r][-1]) / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leaving]):
                    leaving, best = r, ratio
        if leaving is None:  # cannot happen: phase-one objective is bounded below
            raise RuntimeError("phase-one simplex reported unbounded")
        piv = Fraction(rows[leaving][entering])
        prow = [v / piv if v else 0 for v in rows[leaving]]
        rows[leaving] = prow
        support = [j for j, v in enumerate(prow) if v]
        for r in range(m):
            f = rows[r][entering]
            if r != leaving and f:
                row = rows[r]
                for j in support:
                    row[j] -= f * prow[j]
        f = cost[entering]
        for j in support:
            cost[j] -= f * prow[j]
        basis[leaving] = entering

    if -cost[-1] != 0:
        return None
    z = [Fraction(0)] * g
    for r, var in enumerate(basis):
        if var < g:
            z[var] = Fraction(rows[r][-1])
    return z


def cone_membership(system: ConeSystem) -> Optional[Certificate]:
    """Exact certificate that the target lies in the cone of the generators, or ``None``."""
    z = solve_nonnegative([g.coeffs for g in system.generators], system.target.coeffs)
    if z is None:
        return None
    cert = Certificate(tuple(z[: system.n_statements]), tuple(z[system.n_statements:]))
    if not cert.verify(system):
        raise RuntimeError("simplex produced an invalid certificate")
    return cert


@dataclass
class NecessityResult:
    query: Query
    unbounded: list
    rounded: Optional[RoundedQuery] = None
    covector: Optional[Covector] = None
    system: Optional[ConeSystem] = None
    certificate: Optional[Certificate] = None

    @property
    def bounded(self) -> bool:
        return not self.unbounded

    @property
    def necessary(self) -> bool:
        return self.certificate is not None

    def __bool__(self):
        return self.necessary


class Reasoner:
    """Necessity checks against one instance, memoized on the rounded covector.

    Necessity of a bounded query depends only on its rounded covector, so a
    single cache serves every query whose rounding agrees.
    """

    def __init__(self, instance: Instance):
        self.instance = instance
        self.scales = instance.scales
        self.index = IndexSet.from_scales(self.scales)
        self.statements = statement_covectors(instance)
        self.labels = tuple(s.label for s in instance.statements)
        self._memo: dict = {}
        self._pieces: dict = {}

    def system(self, target: Covector) -> ConeSystem:
        return ConeSystem.from_statements(self.statements, target, self.labels)

    def certificate(self, target: Covector) -> Optional[Certificate]:
        key = target.coeffs
        if key not in self._memo:
            if target.is_dominance():
                # monotonicity alone: mu = target
                cert = Certificate((Fraction(0),) * len(self.statements),
                                   tuple(Fraction(c) for c in target.coeffs))
            else:
                cert = cone_membership(self.system(target))
            self._memo[key] = cert
        return self._memo[key]

    def check(self, x, y) -> NecessityResult:
        q = Query(tuple(x), tuple(y))
        reasons = unbounded_criteria(q, self.scales)
        result = NecessityResult(q, reasons)
        if reasons:
            return result
        result.rounded = round_query(q, self.scales)
        result.covector = covector_of_rounded_query(q, self.scales)
        result.system = self.system(result.covector)
        result.certificate = self.certificate(result.covector)
        return result

    def _piece(self, i, xi, yi):
        # per-criterion slice of the rounded covector, None when unbounded there
        key = (i, xi, yi)
        if key not in self._pieces:
            q = Query((xi,), (yi,))
            levels = self.scales[i]
            if unbounded_criteria(q, type(self.scales)((levels,))):
                self._pieces[key] = None
            else:
                self._pieces[key] = rounded_slot_coeffs(xi, yi, levels)
        return self._pieces[key]

    def is_necessary(self, x, y) -> bool:
        if len(x) != len(y):
            raise ValueError("alternatives over different criteria")
        coeffs = ()
        for i, (xi, yi) in enumerate(zip(x, y)):
            piece = self._piece(i, xi, yi)
            if piece is None:
                return False
            coeffs += piece
        return self.certificate(Covector(self.index, coeffs)) is not None

    @property
    def cache_size(self) -> int:
        return len(self._memo)


def necessity(q: Query, instance: Instance) -> NecessityResult:
    return Reasoner(instance).check(q.x, q.y)


def is_necessary(q: Query, instance: Instance) -> bool:
    return Reasoner(instance).is_necessary(q.x, q.y)


def ilp_oracle(target: Covector, system: ConeSystem, bound: int = 6) -> Optional[IntegerCertificate]:
    """Exhaustive search for ``r * target = sum ell p + sum m d`` with entries in ``[0, bound]``.

    The dominance multipliers ``m`` are forced by ``r`` and ``ell``, so only
    ``r`` and ``ell`` are enumerated; ``m`` must land in ``[0, bound]``.
    Candidates are tried by ``r``, then total ``ell``, then lexicographically.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    p = system.n_statements
    if p > 5 or len(target) > 8:
        raise ValueError("ilp_oracle is limited to |P| <= 5 and |I| <= 8")
    if target.index != system.target.index:
        raise ValueError("target and system live on different index sets")
    stmt = np.array([g.coeffs for g in system.generators[:p]], dtype=np.int64).reshape(p, len(target))
    t = np.array(target.coeffs, dtype=np.int64)
    if p:
        combos = np.array(list(itertools.product(range(bound + 1), repeat=p)), dtype=np.int64)
    else:
        combos = np.zeros((1, 0), dtype=np.int64)
    order = np.lexsort(tuple(combos[:, j] for j in reversed(range(p))) + (combos.sum(axis=1),))
    combos = combos[order]
    reached = combos @ stmt
    for r in range(1, bound + 1):
        m = r * t - reached
        ok = np.all((m >= 0) & (m <= bound), axis=1)
        hits = np.flatnonzero(ok)
        if hits.size:
            h = hits[0]
            return IntegerCertificate(r, tuple(int(v) for v in combos[h]), tuple(int(v) for v in m[h]))
    return None


def sampling_falsifier(q: Query, instance: Instance, trials: int = 10_000, seed: int = 0):
    """Search for increments ``w >= 0`` compatible with P but with ``sigma . w < 0``.

    Returns the first such ``w`` (a tuple of Fractions), which disproves
    necessity, or ``None``. Samples mix dense and sparse integer vectors.
    """
    scales = instance.scales
    if unbounded_criteria(q, scales):
        raise UnboundedQueryError("falsifier needs a bounded query")
    sigma = covector_of_rounded_query(q, scales)
    width = len(sigma)
    if width == 0:
        return None
    stmt = np.array([c.coeffs for c in statement_covectors(instance)], dtype=np.int64).reshape(-1, width)
    s = np.array(sigma.coeffs, dtype=np.int64)
    rng = np.random.default_rng(seed)
    done = 0
    while done < trials:
        batch = min(2048, trials - done)
        w = rng.integers(0, 11, size=(batch, width))
        keep = rng.random((batch, width)) < rng.uniform(0.2, 1.0, size=(batch, 1))
        w = np.where(keep, w, 0)
        compatible = np.all(w @ stmt.T >= 0, axis=1) if len(stmt) else np.ones(batch, bool)
        bad = compatible & (w @ s < 0)
        hits = np.flatnonzero(bad)
        if hits.size:
            return tuple(Fraction(int(v)) for v in w[hits[0]])
        done += batch
    return None

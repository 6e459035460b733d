"""Domain types: criteria, alternatives, preference statements and instances.

Every attribute is numeric and increasing. Ordered label domains (``no gym`` <
``gym``) are mapped to the integers ``0, 1, ...`` at ingestion, and costs are
expected to be supplied already negated. A wildcard (``STAR``, stored as
``None``) stands for a common, unspecified value on both sides of a statement.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, Mapping, Optional, Sequence

STAR = None
WILDCARD_TOKEN = "*"

Value = Optional[Fraction]
Alternative = tuple  # tuple[Value, ...], one entry per criterion


class InstanceError(ValueError):
    """Raised when an instance document or its contents are invalid."""


@dataclass(frozen=True)
class Criterion:
    id: int
    name: str
    labels: Optional[tuple] = None  # ascending labels, or None for numeric

    def __post_init__(self):
        if self.labels is not None:
            if len(self.labels) < 2 or len(set(self.labels)) != len(self.labels):
                raise InstanceError(
                    f"criterion {self.name!r}: label domain needs >= 2 distinct labels"
                )

    @property
    def is_numeric(self) -> bool:
        return self.labels is None

    def encode(self, raw: Any) -> Value:
        """Map a raw document value (number, label, numeric string, ``"*"``) to the engine value."""
        if raw is STAR or raw == WILDCARD_TOKEN:
            return STAR
        if self.labels is not None:
            if isinstance(raw, str) and raw in self.labels:
                return Fraction(self.labels.index(raw))
            raise InstanceError(
                f"value {raw!r} outside the label domain of criterion {self.name!r}"
            )
        if isinstance(raw, bool):
            raise InstanceError(f"boolean value {raw!r} on numeric criterion {self.name!r}")
        if isinstance(raw, (int, Fraction, Decimal)):
            return Fraction(raw)
        if isinstance(raw, float):
            return Fraction(Decimal(repr(raw)))
        if isinstance(raw, str):
            try:
                return Fraction(raw.strip())
            except (ValueError, ZeroDivisionError):
                pass
        raise InstanceError(f"value {raw!r} is not a number for criterion {self.name!r}")

    def decode(self, value: Value) -> Any:
        """Inverse of :meth:`encode` for display and serialization."""
        if value is STAR:
            return WILDCARD_TOKEN
        if self.labels is not None:
            if value.denominator == 1 and 0 <= value < len(self.labels):
                return self.labels[int(value)]
            return str(value)
        if value.denominator == 1:
            return int(value)
        return str(value)


@dataclass(frozen=True)
class PreferenceStatement:
    better: Alternative
    worse: Alternative
    label: str = ""

    def __post_init__(self):
        if len(self.better) != len(self.worse):
            raise InstanceError("statement sides have different lengths")
        for i, (a, b) in enumerate(zip(self.better, self.worse)):
            if (a is STAR) != (b is STAR):
                raise InstanceError(
                    f"wildcard mismatch on criterion {i + 1} in statement {self.label or '?'}"
                )


@dataclass(frozen=True)
class ReferenceScale:
    """Per-criterion ascending reference values, built from the values used in P."""

    levels: tuple  # tuple[tuple[Fraction, ...], ...]

    def __len__(self):
        return len(self.levels)

    def __getitem__(self, i):
        return self.levels[i]

    @property
    def sizes(self) -> tuple:
        return tuple(len(v) for v in self.levels)

    def is_binary(self) -> bool:
        """True when no criterion carries more than two reference levels."""
        return all(len(v) <= 2 for v in self.levels)


@dataclass(frozen=True)
class Instance:
    criteria: tuple
    alternatives: Mapping[str, Alternative] = field(default_factory=dict)
    statements: tuple = ()

    def __post_init__(self):
        names = [c.name for c in self.criteria]
        if len(set(names)) != len(names):
            raise InstanceError("criterion names must be unique")
        if [c.id for c in self.criteria] != list(range(1, len(self.criteria) + 1)):
            raise InstanceError("criterion ids must be 1..n")
        n = len(self.criteria)
        for name, alt in self.alternatives.items():
            if len(alt) != n:
                raise InstanceError(f"alternative {name!r} has {len(alt)} values, expected {n}")
        for s in self.statements:
            if len(s.better) != n:
                raise InstanceError(f"statement {s.label or '?'} does not match the criteria")

    @property
    def n(self) -> int:
        return len(self.criteria)

    @cached_property
    def scales(self) -> ReferenceScale:
        return build_reference_scales(self)

    def criterion_index(self, name_or_id) -> int:
        """0-based index of a criterion given by name or 1-based id."""
        for idx, c in enumerate(self.criteria):
            if c.name == name_or_id or c.id == name_or_id:
                return idx
        raise InstanceError(f"unknown criterion {name_or_id!r}")

    def resolve(self, spec) -> Alternative:
        """Resolve an alternative given by name, raw sequence or comma-separated text."""
        if isinstance(spec, str):
            if spec in self.alternatives:
                return self.alternatives[spec]
            if "," not in spec and self.n > 1:
                raise InstanceError(f"unknown alternative {spec!r}")
            spec = [tok.strip() for tok in spec.split(",")]
        if len(spec) != self.n:
            raise InstanceError(f"alternative has {len(spec)} values, expected {self.n}")
        return tuple(c.encode(v) for c, v in zip(self.criteria, spec))

    def format(self, alt: Alternative) -> str:
        return "(" + ", ".join(str(c.decode(v)) for c, v in zip(self.criteria, alt)) + ")"

    def raw(self, alt: Alternative) -> list:
        return [c.decode(v) for c, v in zip(self.criteria, alt)]


def build_reference_scales(instance: Instance) -> ReferenceScale:
    """Sorted distinct non-wildcard values of the statements, per criterion."""
    levels = []
    for i in range(instance.n):
        values = set()
        for s in instance.statements:
            for v in (s.better[i], s.worse[i]):
                if v is not STAR:
                    values.add(v)
        levels.append(tuple(sorted(values)))
    return ReferenceScale(tuple(levels))


def dominates(x: Alternative, y: Alternative) -> bool:
    """Pareto dominance: ``x_i >= y_i`` on every criterion."""
    if len(x) != len(y):
        raise ValueError("alternatives over different criteria")
    if any(v is STAR for v in x) or any(v is STAR for v in y):
        raise ValueError("dominance is undefined on wildcard values")
    return all(a >= b for a, b in zip(x, y))


def _criterion_from_doc(idx: int, doc: Any) -> Criterion:
    if not isinstance(doc, Mapping) or "name" not in doc:
        raise InstanceError(f"criterion #{idx + 1} must be an object with a name")
    domain = doc.get("domain", {"kind": "numeric"})
    kind = domain.get("kind") if isinstance(domain, Mapping) else None
    if kind == "numeric":
        return Criterion(idx + 1, str(doc["name"]))
    if kind == "labels":
        ascending = domain.get("ascending")
        if not isinstance(ascending, list):
            raise InstanceError(f"criterion {doc['name']!r}: labels need an 'ascending' list")
        return Criterion(idx + 1, str(doc["name"]), tuple(str(a) for a in ascending))
    raise InstanceError(f"criterion {doc['name']!r}: unknown domain {domain!r}")


def instance_from_dict(doc: Mapping) -> Instance:
    if not isinstance(doc, Mapping):
        raise InstanceError("instance document must be a JSON object")
    if "criteria" not in doc or not isinstance(doc["criteria"], list):
        raise InstanceError("instance document needs a 'criteria' array")
    criteria = tuple(_criterion_from_doc(i, c) for i, c in enumerate(doc["criteria"]))
    n = len(criteria)

    def encode(raw, where):
        if not isinstance(raw, list) or len(raw) != n:
            raise InstanceError(f"{where}: expected an array of {n} values")
        return tuple(c.encode(v) for c, v in zip(criteria, raw))

    alternatives = {}
    for name, raw in (doc.get("alternatives") or {}).items():
        alternatives[str(name)] = encode(raw, f"alternative {name!r}")

    statements = []
    for k, st in enumerate(doc.get("statements") or []):
        if not isinstance(st, Mapping) or "better" not in st or "worse" not in st:
            raise InstanceError(f"statement #{k + 1} needs 'better' and 'worse'")
        sides = []
        names = []
        for key in ("better", "worse"):
            ref = st[key]
            if isinstance(ref, str):
                if ref not in alternatives:
                    raise InstanceError(f"statement #{k + 1}: unknown alternative {ref!r}")
                sides.append(alternatives[ref])
                names.append(ref)
            else:
                sides.append(encode(ref, f"statement #{k + 1} {key}"))
                names.append(None)
        label = st.get("label") or (
            f"{names[0]}>={names[1]}" if all(names) else f"p{k + 1}"
        )
        statements.append(PreferenceStatement(sides[0], sides[1], str(label)))
    return Instance(criteria, alternatives, tuple(statements))


def parse_instance(source: str) -> Instance:
    """Parse an instance document (JSON text); all numbers are read as exact decimals."""
    try:
        doc = json.loads(source, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed document: {exc}") from exc
    return instance_from_dict(doc)


def load_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def instance_to_dict(instance: Instance) -> dict:
    """Document form of an instance; non-integer rationals are written as ``"p/q"`` strings."""
    criteria = []
    for c in instance.criteria:
        if c.is_numeric:
            criteria.append({"name": c.name, "domain": {"kind": "numeric"}})
        else:
            criteria.append(
                {"name": c.name, "domain": {"kind": "labels", "ascending": list(c.labels)}}
            )
    by_value = {alt: name for name, alt in instance.alternatives.items()}
    statements = []
    for s in instance.statements:
        entry = {
            "better": by_value.get(s.better) or instance.raw(s.better),
            "worse": by_value.get(s.worse) or instance.raw(s.worse),
        }
        if s.label:
            entry["label"] = s.label
        statements.append(entry)
    return {
        "criteria": criteria,
        "alternatives": {k: instance.raw(v) for k, v in instance.alternatives.items()},
        "statements": statements,
    }


def dump_instance(instance: Instance) -> str:
    return json.dumps(instance_to_dict(instance), indent=2, ensure_ascii=False)


def make_instance(
    names: Sequence[str],
    statements: Iterable[tuple],
    alternatives: Optional[Mapping[str, Sequence]] = None,
    labels: Optional[Mapping[str, Sequence[str]]] = None,
) -> Instance:
    """Build an instance programmatically from raw values (``"*"`` or ``None`` for wildcards)."""
    labels = labels or {}
    criteria = tuple(
        Criterion(i + 1, name, tuple(labels[name]) if name in labels else None)
        for i, name in enumerate(names)
    )

    def enc(raw):
        return tuple(c.encode(v) for c, v in zip(criteria, raw))

    alts = {k: enc(v) for k, v in (alternatives or {}).items()}
    stmts = []
    for k, st in enumerate(statements):
        better, worse = st[0], st[1]
        label = st[2] if len(st) > 2 else f"p{k + 1}"
        better = alts[better] if isinstance(better, str) else enc(better)
        worse = alts[worse] if isinstance(worse, str) else enc(worse)
        stmts.append(PreferenceStatement(better, worse, label))
    return Instance(criteria, alts, tuple(stmts))


"""World model for referential labeling games.

An attribute schema fixes the categorical features of the world and their
values. A concept is a single feature-value pair; a labeling rule is a
conjunction of concepts with at most one value per feature. Objects are
complete assignments of one value per feature, and a turn pairs a rule with
target objects that satisfy it and distractors that do not.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from random import Random

import numpy as np

__all__ = [
    "DataError",
    "Concept",
    "AttributeSchema",
    "LabelingRule",
    "ObjectInstance",
    "Turn",
    "BUILTIN_SCHEMAS",
    "build_schema",
    "enumerate_rules",
    "rule_satisfies",
    "sample_turn",
    "encode_object",
    "encode_rule",
]


class DataError(ValueError):
    """Malformed schema or corpus data (bad documents, unknown names)."""


@dataclass(frozen=True, order=True)
class Concept:
    """A feature-value pair, the atomic unit of the labeling language."""

    feature: str
    value: str

    def __str__(self) -> str:
        return f"{self.feature}:{self.value}"


@dataclass(frozen=True)
class AttributeSchema:
    """Ordered categorical features together with their admissible values."""

    attributes: tuple[tuple[str, tuple[str, ...]], ...]
    name: str = "custom"

    def __post_init__(self) -> None:
        if not self.attributes:
            raise DataError("schema needs at least one attribute")
        seen: set[str] = set()
        for attr, values in self.attributes:
            if attr in seen:
                raise DataError(f"duplicate attribute name {attr!r}")
            seen.add(attr)
            if len(values) < 2:
                raise DataError(
                    f"attribute {attr!r} needs at least 2 values, got {len(values)}"
                )
            if len(set(values)) != len(values):
                raise DataError(f"attribute {attr!r} repeats a value")

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @property
    def attribute_names(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.attributes)

    @property
    def concepts(self) -> tuple[Concept, ...]:
        """All feature-value pairs in schema order."""
        return tuple(Concept(a, v) for a, values in self.attributes for v in values)

    @property
    def n_concepts(self) -> int:
        return sum(len(values) for _, values in self.attributes)

    def values_of(self, feature: str) -> tuple[str, ...]:
        for attr, values in self.attributes:
            if attr == feature:
                return values
        raise DataError(f"unknown feature {feature!r}")

    def concept_positions(self) -> dict[Concept, int]:
        """Concept -> index map following schema order; build once per hot loop."""
        return {c: i for i, c in enumerate(self.concepts)}


@dataclass(frozen=True)
class LabelingRule:
    """Conjunction of concepts, at most one per feature.

    Concept order is irrelevant to rule identity; concepts are stored sorted
    so equal rules compare and hash equal.
    """

    concepts: tuple[Concept, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted(set(self.concepts)))
        if not ordered:
            raise DataError("a rule needs at least one concept")
        features = [c.feature for c in ordered]
        if len(set(features)) != len(features):
            raise DataError("a conjunction cannot constrain one feature twice")
        object.__setattr__(self, "concepts", ordered)

    def __len__(self) -> int:
        return len(self.concepts)

    def __str__(self) -> str:
        return " & ".join(str(c) for c in self.concepts)


@dataclass(frozen=True)
class ObjectInstance:
    """Complete assignment of one value to every schema feature."""

    assignment: dict[str, str]


@dataclass(frozen=True)
class Turn:
    """One game round: a rule, objects obeying it, and objects violating it."""

    rule: LabelingRule
    targets: tuple[ObjectInstance, ...]
    distractors: tuple[ObjectInstance, ...]


BUILTIN_SCHEMAS: dict[str, tuple[tuple[str, tuple[str, ...]], ...]] = {
    "shape": (
        ("shape", ("circle", "ellipse", "square", "rectangle", "triangle")),
        ("color", ("red", "blue", "green", "yellow", "white", "gray")),
        ("x-pos", ("left", "middle", "right")),
        ("y-pos", ("top", "center", "bottom")),
    ),
    "thing": tuple(
        (f"f{i + 1}", tuple(f"v{j + 1}" for j in range(10))) for i in range(5)
    ),
}


def build_schema(source: str | dict) -> AttributeSchema:
    """Build a schema from a built-in name or a parsed schema document.

    The document form is ``{"attributes": [{"name": ..., "values": [...]},
    ...]}``; the built-ins ``shape`` and ``thing`` are selectable by name.
    """
    if isinstance(source, str):
        if source not in BUILTIN_SCHEMAS:
            raise DataError(f"unknown built-in schema {source!r}")
        return AttributeSchema(BUILTIN_SCHEMAS[source], name=source)
    if not isinstance(source, dict) or "attributes" not in source:
        raise DataError("schema document must be an object with an 'attributes' list")
    entries = source["attributes"]
    if not isinstance(entries, list):
        raise DataError("'attributes' must be a list")
    attrs = []
    for entry in entries:
        if (
            not isinstance(entry, dict)
            or not isinstance(entry.get("name"), str)
            or not isinstance(entry.get("values"), list)
            or not all(isinstance(v, str) for v in entry["values"])
        ):
            raise DataError(
                "each attribute needs a 'name' string and a 'values' list of strings"
            )
        attrs.append((entry["name"], tuple(entry["values"])))
    return AttributeSchema(tuple(attrs))


@lru_cache(maxsize=32)
def _enumerate_rules(schema: AttributeSchema, length: int) -> tuple[LabelingRule, ...]:
    rules = []
    for subset in itertools.combinations(range(schema.n_attributes), length):
        names = [schema.attributes[i][0] for i in subset]
        value_lists = [schema.attributes[i][1] for i in subset]
        for combo in itertools.product(*value_lists):
            rules.append(
                LabelingRule(tuple(Concept(n, v) for n, v in zip(names, combo)))
            )
    return tuple(rules)


def enumerate_rules(schema: AttributeSchema, length: int) -> list[LabelingRule]:
    """All rules over `length` distinct features, one value each.

    Order is deterministic: lexicographic in feature index, then value index.
    """
    if not 1 <= length <= schema.n_attributes:
        raise ValueError(
            f"rule length must be in [1, {schema.n_attributes}], got {length}"
        )
    return list(_enumerate_rules(schema, length))


def rule_satisfies(rule: LabelingRule, obj: ObjectInstance) -> bool:
    """True iff the object carries every value the rule demands."""
    return all(obj.assignment.get(c.feature) == c.value for c in rule.concepts)


def sample_turn(
    schema: AttributeSchema,
    rule: LabelingRule,
    n_targets: int,
    n_distractors: int,
    rng: Random,
) -> Turn:
    """Sample a turn: targets uniform among rule-satisfying objects,
    distractors uniform among the rest. Deterministic given the stream."""
    if n_targets < 1 or n_distractors < 1:
        raise ValueError("need at least one target and one distractor")
    fixed = {c.feature: c.value for c in rule.concepts}
    for c in rule.concepts:
        if c.value not in schema.values_of(c.feature):
            raise DataError(f"rule concept {c} not in schema")

    targets = []
    for _ in range(n_targets):
        assignment = {}
        for attr, values in schema.attributes:
            if attr in fixed:
                assignment[attr] = fixed[attr]
            else:
                assignment[attr] = rng.choice(values)
        targets.append(ObjectInstance(assignment))

    # A non-empty rule over >=2-valued features never covers the whole world,
    # so rejection sampling below terminates.
    assert rule.concepts, "cannot sample distractors for an unconstrained rule"
    distractors: list[ObjectInstance] = []
    while len(distractors) < n_distractors:
        obj = ObjectInstance(
            {attr: rng.choice(values) for attr, values in schema.attributes}
        )
        if not rule_satisfies(rule, obj):
            distractors.append(obj)

    return Turn(rule, tuple(targets), tuple(distractors))


def encode_object(schema: AttributeSchema, obj: ObjectInstance) -> np.ndarray:
    """Concatenated one-hot blocks, one block per attribute."""
    if len(obj.assignment) != schema.n_attributes:
        raise DataError("object must assign exactly the schema features")
    vec = np.zeros(schema.n_concepts, dtype=np.float64)
    offset = 0
    for attr, values in schema.attributes:
        value = obj.assignment.get(attr)
        if value is None or value not in values:
            raise DataError(f"object has no valid value for feature {attr!r}")
        vec[offset + values.index(value)] = 1.0
        offset += len(values)
    return vec


def encode_rule(schema: AttributeSchema, rule: LabelingRule) -> np.ndarray:
    """Multi-hot vector over the schema's concept vocabulary."""
    positions = schema.concept_positions()
    vec = np.zeros(schema.n_concepts, dtype=np.float64)
    for c in rule.concepts:
        if c not in positions:
            raise DataError(f"rule concept {c} not in schema")
        vec[positions[c]] = 1.0
    return vec

"""Shared builders and independent oracles for the test suite."""

from __future__ import annotations

import itertools
from random import Random

import numpy as np

from cbmeval import (
    AttributeSchema,
    Concept,
    Corpus,
    CorpusRecord,
    LabelingRule,
)


def rule(*pairs: tuple[str, str]) -> LabelingRule:
    return LabelingRule(tuple(Concept(f, v) for f, v in pairs))


def mini_schema() -> AttributeSchema:
    return AttributeSchema((("color", ("blue", "red")), ("shape", ("triangle", "square"))))


def demo_corpus() -> Corpus:
    """Two turns over the mini schema: [w1,w2] for blue-triangle and
    [w2,w3] for red-triangle."""
    return Corpus(
        mini_schema(),
        (
            CorpusRecord(0, ("w1", "w2"), rule(("color", "blue"), ("shape", "triangle"))),
            CorpusRecord(1, ("w2", "w3"), rule(("color", "red"), ("shape", "triangle"))),
        ),
    )


def single_feature_schema(n_values: int = 4) -> AttributeSchema:
    return AttributeSchema((("f", tuple(f"v{i}" for i in range(n_values))),))


def random_schema(rng: Random, max_attrs: int = 3, max_values: int = 4) -> AttributeSchema:
    n_attrs = rng.randint(1, max_attrs)
    return AttributeSchema(
        tuple(
            (f"a{i}", tuple(f"v{j}" for j in range(rng.randint(2, max_values))))
            for i in range(n_attrs)
        )
    )


def random_corpus(rng: Random, n_records: int | None = None) -> Corpus:
    """Corpora with adversarial shapes: duplicate words inside messages,
    messages shorter or longer than their phrases, shared vocabulary."""
    schema = random_schema(rng)
    n = n_records if n_records is not None else rng.randint(1, 30)
    vocab = [f"t{i}" for i in range(rng.randint(1, 8))]
    records = []
    for i in range(n):
        length = rng.randint(1, schema.n_attributes)
        features = rng.sample(range(schema.n_attributes), length)
        concepts = tuple(
            Concept(schema.attributes[f][0], rng.choice(schema.attributes[f][1]))
            for f in features
        )
        message = tuple(rng.choice(vocab) for _ in range(rng.randint(1, 4)))
        records.append(CorpusRecord(i, message, LabelingRule(concepts)))
    return Corpus(schema, tuple(records))


def brute_force_best_match(weights: list[list[int]]) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Enumerate every partial matching over positive cells; return the
    maximum score and, among maximizers, the lexicographically smallest
    sorted pair set."""
    n_rows = len(weights)
    n_cols = len(weights[0]) if n_rows else 0
    best_score = 0
    best_pairs: tuple[tuple[int, int], ...] = ()

    def recurse(i: int, used: frozenset[int], pairs: list[tuple[int, int]], score: int) -> None:
        nonlocal best_score, best_pairs
        if i == n_rows:
            key = tuple(sorted(pairs))
            if score > best_score or (score == best_score and key < best_pairs):
                best_score, best_pairs = score, key
            return
        recurse(i + 1, used, pairs, score)
        for j in range(n_cols):
            if j in used or weights[i][j] <= 0:
                continue
            pairs.append((i, j))
            recurse(i + 1, used | {j}, pairs, score + weights[i][j])
            pairs.pop()

    recurse(0, frozenset(), [], 0)
    return best_score, best_pairs


def greedy_matching_weight(weights: list[list[int]]) -> int:
    """Heaviest-edge-first greedy matching; a lower bound for the optimum."""
    edges = sorted(
        (
            (weights[i][j], i, j)
            for i in range(len(weights))
            for j in range(len(weights[0]))
            if weights[i][j] > 0
        ),
        key=lambda e: (-e[0], e[1], e[2]),
    )
    used_rows: set[int] = set()
    used_cols: set[int] = set()
    total = 0
    for w, i, j in edges:
        if i in used_rows or j in used_cols:
            continue
        used_rows.add(i)
        used_cols.add(j)
        total += w
    return total


def enumerate_rules_by_vocab_subsets(schema: AttributeSchema, length: int) -> set[tuple]:
    """Independent rule enumeration: walk all subsets of the concept
    vocabulary and keep the valid conjunctions of the requested length.
    Only viable for tiny schemas."""
    vocab = schema.concepts
    found = set()
    for subset in itertools.combinations(vocab, length):
        features = [c.feature for c in subset]
        if len(set(features)) == length:
            found.add(tuple(sorted(subset)))
    return found


def permutation_emi(counts: np.ndarray, n_draws: int, seed: int) -> tuple[float, float]:
    """Monte-Carlo expected mutual information under the permutation model.

    Returns (mean, standard error of the mean).
    """
    counts = np.asarray(counts)
    n_rows, n_cols = counts.shape
    row_labels = []
    col_labels = []
    for i in range(n_rows):
        for j in range(n_cols):
            row_labels.extend([i] * int(counts[i, j]))
            col_labels.extend([j] * int(counts[i, j]))
    rows = np.array(row_labels)
    cols = np.array(col_labels)
    total = rows.size
    gen = np.random.default_rng(seed)
    perms = gen.permuted(np.tile(cols, (n_draws, 1)), axis=1)
    codes = rows[None, :] * n_cols + perms
    offsets = np.arange(n_draws)[:, None] * (n_rows * n_cols)
    flat = np.bincount((codes + offsets).ravel(), minlength=n_draws * n_rows * n_cols)
    tables = flat.reshape(n_draws, n_rows, n_cols).astype(np.float64)
    a = tables.sum(axis=2, keepdims=True)
    b = tables.sum(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(
            tables > 0,
            (tables / total) * (np.log(total * tables) - np.log(a) - np.log(b)),
            0.0,
        )
    draws = terms.sum(axis=(1, 2))
    return float(draws.mean()), float(draws.std(ddof=1) / np.sqrt(n_draws))

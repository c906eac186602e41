"""Word-concept co-occurrence graph and exact maximum-weight matching.

Edge weights are integer co-occurrence counts and stay integers through the
whole solve; no floating point enters the solver. Among maximum-weight
matchings the returned one has the lexicographically smallest set of
positive (word index, concept index) pairs, so translation maps are
reproducible across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Corpus
from .world import Concept

__all__ = [
    "BipartiteGraph",
    "TranslationMap",
    "build_graph",
    "max_weight_matching",
    "cbm_lower_bound",
]


@dataclass(frozen=True, eq=False)
class BipartiteGraph:
    """Dense word x concept count matrix.

    Word nodes are in first-appearance order; concept nodes cover the whole
    schema vocabulary in schema order, co-occurring or not.
    """

    words: tuple[str, ...]
    concepts: tuple[Concept, ...]
    weights: np.ndarray  # shape (len(words), len(concepts)), int64, >= 0

    @property
    def total_weight(self) -> int:
        return int(self.weights.sum())

    @property
    def max_edge_weight(self) -> int:
        return int(self.weights.max()) if self.weights.size else 0


@dataclass(frozen=True)
class TranslationMap:
    """One-to-one best match: the human-readable outcome of the evaluation."""

    pairs: tuple[tuple[str, Concept, int], ...]
    unmatched_words: frozenset[str]
    unmatched_concepts: frozenset[Concept]
    bm_score: int

    def word_to_concept(self) -> dict[str, Concept]:
        return {word: concept for word, concept, _ in self.pairs}


def build_graph(corpus: Corpus) -> BipartiteGraph:
    """Accumulate co-occurrence counts over message x phrase products.

    Every occurrence of a word in a record's message adds 1 to that word's
    edge with every concept of the record's phrase; duplicate occurrences
    accumulate.
    """
    if not corpus.records:
        raise ValueError("empty corpus")
    word_index: dict[str, int] = {}
    for r in corpus.records:
        for w in r.message:
            if w not in word_index:
                word_index[w] = len(word_index)
    concepts = corpus.schema.concepts
    positions = corpus.schema.concept_positions()
    weights = np.zeros((len(word_index), len(concepts)), dtype=np.int64)
    for r in corpus.records:
        cols = [positions[c] for c in r.phrase.concepts]
        for w in r.message:
            row = word_index[w]
            for col in cols:
                weights[row, col] += 1
    return BipartiteGraph(tuple(word_index), concepts, weights)


def _solve_square(cost: list[list[int]]) -> tuple[list[int], list[int], list[int]]:
    """Minimum-cost perfect assignment on a square integer matrix.

    Shortest-augmenting-path method with potentials. Returns (row_of_col,
    u, v) where column j is matched to row row_of_col[j] and the potentials
    satisfy u[i] + v[j] <= cost[i][j] with equality on matched cells.
    """
    n = len(cost)
    big = sum(abs(c) for row in cost for c in row) + 1
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)  # p[j]: 1-based row matched to column j; 0 = free
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [big] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = big
            j1 = 0
            row = cost[i0 - 1]
            ui0 = u[i0]
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = row[j - 1] - ui0 - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    row_of_col = [p[j] - 1 for j in range(1, n + 1)]
    return row_of_col, u[1:], v[1:]


def max_weight_matching(graph: BipartiteGraph) -> TranslationMap:
    """Exact maximum-weight one-to-one matching.

    Zero-weight pairings are never reported. Among equally heavy matchings
    the positive pair set that is lexicographically smallest in (word index,
    concept index) wins: every optimal matching uses only reduced-cost-tight
    cells, so a greedy row-major sweep over tight positive cells can keep a
    cell exactly when the current matching can be rerouted around it.
    """
    n_rows = len(graph.words)
    n_cols = len(graph.concepts)
    if n_rows == 0 or n_cols == 0:
        raise ValueError("empty graph")
    w = graph.weights.tolist()
    n = max(n_rows, n_cols)
    cost = [
        [-(w[i][j]) if i < n_rows and j < n_cols else 0 for j in range(n)]
        for i in range(n)
    ]
    row_of_col, u, v = _solve_square(cost)
    col_of_row = [0] * n
    for j, i in enumerate(row_of_col):
        col_of_row[i] = j
    optimum = sum(
        w[i][j]
        for j, i in enumerate(row_of_col)
        if i < n_rows and j < n_cols and w[i][j] > 0
    )

    # Cells usable by *some* optimal matching are exactly the tight ones.
    tight_cols = [
        [j for j in range(n) if u[i] + v[j] == cost[i][j]] for i in range(n)
    ]

    forced_cols = [False] * n

    def reroute(i: int, j: int) -> bool:
        # Force (i, j) into the matching if a perfect matching on tight,
        # unforced cells still exists; otherwise leave everything untouched.
        # Forced pairs stay fixed because the search never enters their
        # columns (and hence never reaches their rows).
        jj = col_of_row[i]
        ii = row_of_col[j]
        col_of_row[i] = j
        row_of_col[j] = i
        # Alternating path from the freed row `ii` to the freed column `jj`.
        visited = [False] * n
        stack = [(ii, iter(tight_cols[ii]))]
        parent_row: dict[int, int] = {}
        found = False
        while stack:
            r, cols = stack[-1]
            for c in cols:
                if visited[c] or forced_cols[c] or c == j:
                    continue
                visited[c] = True
                parent_row[c] = r
                if c == jj:
                    found = True
                    break
                stack.append((row_of_col[c], iter(tight_cols[row_of_col[c]])))
                break
            else:
                stack.pop()
                continue
            if found:
                break
        if not found:
            col_of_row[i] = jj
            row_of_col[j] = ii
            return False
        # Flip the path: walk back from jj to ii re-matching along it.
        c = jj
        while True:
            r = parent_row[c]
            old = col_of_row[r]
            col_of_row[r] = c
            row_of_col[c] = r
            if r == ii:
                break
            c = old
        return True

    pairs: list[tuple[int, int]] = []
    for i in range(n_rows):
        row_w = w[i]
        for j in tight_cols[i]:
            if j >= n_cols or row_w[j] <= 0 or forced_cols[j]:
                continue
            if col_of_row[i] == j or reroute(i, j):
                forced_cols[j] = True
                pairs.append((i, j))
                break

    bm = sum(w[i][j] for i, j in pairs)
    assert bm == optimum, "tie canonicalization changed the matching score"

    matched_words = {graph.words[i] for i, _ in pairs}
    matched_concepts = {graph.concepts[j] for _, j in pairs}
    return TranslationMap(
        pairs=tuple((graph.words[i], graph.concepts[j], w[i][j]) for i, j in pairs),
        unmatched_words=frozenset(graph.words) - matched_words,
        unmatched_concepts=frozenset(graph.concepts) - matched_concepts,
        bm_score=bm,
    )


def cbm_lower_bound(graph: BipartiteGraph, q: int) -> float:
    """Best-match score of the heaviest single edge, normalized by q."""
    if q <= 0:
        raise ValueError(f"q must be positive, got {q}")
    return graph.max_edge_weight / q

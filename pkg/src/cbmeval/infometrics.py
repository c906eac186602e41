"""Entropy, mutual information, and chance-adjusted agreement between the
message partition and the phrase partition of a corpus.

All quantities are in nats. The chance adjustment uses the exact expected
mutual information under the fixed-marginal permutation (hypergeometric)
model, computed in closed form with a cumulative log-factorial table.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus
from .world import LabelingRule

__all__ = [
    "ContingencyTable",
    "contingency",
    "entropy",
    "conditional_entropy",
    "mutual_information",
    "expected_mi",
    "ami",
]


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """Joint counts of (unique message, unique phrase) over records."""

    messages: tuple[tuple[str, ...], ...]
    phrases: tuple[LabelingRule, ...]
    counts: np.ndarray  # shape (len(messages), len(phrases)), int64

    @property
    def row_sums(self) -> list[int]:
        return [int(x) for x in self.counts.sum(axis=1)]

    @property
    def col_sums(self) -> list[int]:
        return [int(x) for x in self.counts.sum(axis=0)]

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def contingency(corpus: Corpus) -> ContingencyTable:
    """Row/column labels appear in first-appearance order."""
    if not corpus.records:
        raise ValueError("empty corpus")
    rows: dict[tuple[str, ...], int] = {}
    cols: dict[LabelingRule, int] = {}
    cells: Counter[tuple[int, int]] = Counter()
    for r in corpus.records:
        i = rows.setdefault(r.message, len(rows))
        j = cols.setdefault(r.phrase, len(cols))
        cells[i, j] += 1
    counts = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for (i, j), n in cells.items():
        counts[i, j] = n
    return ContingencyTable(tuple(rows), tuple(cols), counts)


def entropy(counts) -> float:
    """Plug-in Shannon entropy in nats; zero counts contribute nothing."""
    values = [int(c) for c in counts]
    if any(c < 0 for c in values):
        raise ValueError("negative count")
    total = sum(values)
    if total <= 0:
        raise ValueError("entropy needs a positive total count")
    return math.log(total) - sum(c * math.log(c) for c in values if c > 0) / total


def mutual_information(table: ContingencyTable) -> float:
    """I(M, L) = sum (n/N) ln(N n / (a b)) over non-zero cells."""
    counts = table.counts
    total = table.total
    if total <= 0:
        raise ValueError("empty table")
    rows, cols = np.nonzero(counts)
    n = counts[rows, cols].astype(np.float64)
    a = counts.sum(axis=1).astype(np.float64)[rows]
    b = counts.sum(axis=0).astype(np.float64)[cols]
    value = float(np.sum((n / total) * (np.log(total * n) - np.log(a) - np.log(b))))
    return max(value, 0.0)


def conditional_entropy(table: ContingencyTable) -> float:
    """H(M | L) = H(M, L) - H(L)."""
    joint = [int(x) for x in table.counts.ravel() if x > 0]
    return entropy(joint) - entropy(table.col_sums)


def expected_mi(table: ContingencyTable) -> float:
    """Exact E[I] over all tables with these marginals under the
    permutation model.

    Cells contribute independently given their (row sum, column sum), so
    terms are grouped by distinct marginal values and weighted by
    multiplicity; the feasible cell values run from max(1, a+b-N) to
    min(a, b). Hypergeometric probabilities come from a cumulative
    log-factorial table, which is exact summation at small integers.
    """
    a_counts = Counter(table.row_sums)
    b_counts = Counter(table.col_sums)
    total = table.total
    if total <= 0:
        raise ValueError("empty table")
    logfact = [0.0] * (total + 1)
    for k in range(2, total + 1):
        logfact[k] = logfact[k - 1] + math.log(k)
    log_total = math.log(total)
    value = 0.0
    for a in sorted(a_counts):
        for b in sorted(b_counts):
            multiplicity = a_counts[a] * b_counts[b]
            lo = max(1, a + b - total)
            hi = min(a, b)
            cell = 0.0
            for nij in range(lo, hi + 1):
                log_prob = (
                    logfact[a]
                    + logfact[b]
                    + logfact[total - a]
                    + logfact[total - b]
                    - logfact[total]
                    - logfact[nij]
                    - logfact[a - nij]
                    - logfact[b - nij]
                    - logfact[total - a - b + nij]
                )
                cell += (
                    (nij / total)
                    * (log_total + math.log(nij) - math.log(a) - math.log(b))
                    * math.exp(log_prob)
                )
            value += multiplicity * cell
    return max(value, 0.0)


def _is_diagonal_permutation(counts: np.ndarray) -> bool:
    nonzero = counts > 0
    return bool(
        np.all(nonzero.sum(axis=1) == 1) and np.all(nonzero.sum(axis=0) == 1)
    )


def ami(table: ContingencyTable) -> float:
    """Adjusted mutual information, max-normalized:
    (I - E[I]) / (max(H(M), H(L)) - E[I]).

    When the two clusterings are identical as partitions of the records
    (the table is a permutation of a diagonal matrix) the value is exactly
    1.0 and is returned without touching floating-point cancellation. A
    degenerate denominator otherwise yields 0.0.
    """
    if _is_diagonal_permutation(table.counts):
        return 1.0
    h_m = entropy(table.row_sums)
    h_l = entropy(table.col_sums)
    h_max = max(h_m, h_l)
    if h_max == 0.0:
        return 0.0
    i = mutual_information(table)
    e = expected_mi(table)
    denominator = h_max - e
    if denominator <= 0.0:
        return 0.0
    return (i - e) / denominator

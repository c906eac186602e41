"""Topographic similarity: rank correlation between message-space and
meaning-space pairwise distances.

Message distance is token-level Levenshtein; meaning distance is the
negative cosine between rule encodings (the encoder is a parameter, rule
multi-hot by default). Both pair lists are in row-major i<j order, and the
pairwise kernel is vectorized over pairs grouped by length so corpora of a
few thousand messages stay fast.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .corpus import Corpus
from .world import AttributeSchema, LabelingRule, encode_rule

__all__ = ["THREADS_ENV", "PairwiseLists", "levenshtein", "pairwise_lists", "spearman", "topsim"]

THREADS_ENV = "CBMEVAL_THREADS"


def levenshtein(a: Sequence[str], b: Sequence[str]) -> int:
    """Token-level edit distance with unit insert/delete/substitute costs."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, token_a in enumerate(a, start=1):
        cur = [i]
        for j, token_b in enumerate(b, start=1):
            cur.append(
                min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (token_a != token_b))
            )
        prev = cur
    return prev[-1]


@dataclass(frozen=True, eq=False)
class PairwiseLists:
    """Aligned distance lists over all record pairs i < j, row-major."""

    edit: np.ndarray  # int32
    ncos: np.ndarray  # float64


def _threads(explicit: int | None) -> int:
    if explicit is not None:
        return max(1, int(explicit))
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return 1


def _edit_block(tok_a: np.ndarray, tok_b: np.ndarray) -> np.ndarray:
    """Levenshtein DP vectorized across a block of same-length pairs."""
    m, p = tok_a.shape
    q = tok_b.shape[1]
    prev = np.broadcast_to(np.arange(q + 1, dtype=np.int32), (m, q + 1)).copy()
    for i in range(1, p + 1):
        cur = np.empty_like(prev)
        cur[:, 0] = i
        step = prev[:, :-1] + (tok_a[:, i - 1][:, None] != tok_b)
        np.minimum(step, prev[:, 1:] + 1, out=step)
        for j in range(1, q + 1):
            cur[:, j] = np.minimum(step[:, j - 1], cur[:, j - 1] + 1)
        prev = cur
    return prev[:, q]


def _pairwise_edit(messages: list[tuple[str, ...]], threads: int) -> np.ndarray:
    n = len(messages)
    lengths = np.fromiter((len(m) for m in messages), dtype=np.int64, count=n)
    max_len = int(lengths.max())
    vocabulary: dict[str, int] = {}
    tokens = np.zeros((n, max_len), dtype=np.int32)
    for i, message in enumerate(messages):
        for k, token in enumerate(message):
            if token not in vocabulary:
                vocabulary[token] = len(vocabulary) + 1
            tokens[i, k] = vocabulary[token]

    left, right = np.triu_indices(n, k=1)
    out = np.zeros(left.shape[0], dtype=np.int32)
    keys = lengths[left] * (max_len + 1) + lengths[right]
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    boundaries = np.flatnonzero(np.diff(sorted_keys)) + 1
    starts = np.concatenate(([0], boundaries))
    stops = np.concatenate((boundaries, [sorted_keys.size]))

    def solve(idx: np.ndarray) -> None:
        p = int(lengths[left[idx[0]]])
        q = int(lengths[right[idx[0]]])
        out[idx] = _edit_block(tokens[left[idx], :p], tokens[right[idx], :q])

    work: list[np.ndarray] = []
    for lo, hi in zip(starts, stops):
        idx = order[lo:hi]
        if threads > 1 and idx.size > 4 * threads:
            work.extend(np.array_split(idx, threads))
        else:
            work.append(idx)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(solve, work))
    else:
        for idx in work:
            solve(idx)
    return out


def pairwise_lists(
    corpus: Corpus,
    schema: AttributeSchema | None = None,
    encoder: Callable[[AttributeSchema, LabelingRule], np.ndarray] = encode_rule,
    threads: int | None = None,
) -> PairwiseLists:
    if len(corpus.records) < 2:
        raise ValueError("pairwise distances need at least 2 records")
    schema = schema if schema is not None else corpus.schema
    messages = [r.message for r in corpus.records]
    edit = _pairwise_edit(messages, threads=_threads(threads))
    encoded = np.stack([encoder(schema, r.phrase) for r in corpus.records])
    norms = np.linalg.norm(encoded, axis=1)
    sims = (encoded @ encoded.T) / np.outer(norms, norms)
    left, right = np.triu_indices(len(messages), k=1)
    return PairwiseLists(edit=edit, ncos=-sims[left, right])


def _average_ranks(x: np.ndarray) -> np.ndarray:
    ordered = np.sort(x)
    lo = np.searchsorted(ordered, x, side="left")
    hi = np.searchsorted(ordered, x, side="right")
    return (lo + hi + 1) / 2.0


def spearman(xs, ys) -> float:
    """Pearson correlation of average ranks (ties get their mean rank)."""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.ndim != 1 or x.shape != y.shape:
        raise ValueError("spearman needs two equal-length 1-d lists")
    if x.size < 2:
        raise ValueError("spearman needs at least 2 entries")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise ValueError("rank correlation is undefined for a constant list")
    rx = _average_ranks(x)
    ry = _average_ranks(y)
    rx -= rx.mean()
    ry -= ry.mean()
    return float((rx @ ry) / math.sqrt((rx @ rx) * (ry @ ry)))


def topsim(
    corpus: Corpus,
    schema: AttributeSchema | None = None,
    encoder: Callable[[AttributeSchema, LabelingRule], np.ndarray] = encode_rule,
    threads: int | None = None,
) -> float:
    """Spearman correlation of edit distances vs negative cosine
    similarities; positive values mean topographic alignment."""
    lists = pairwise_lists(corpus, schema, encoder, threads)
    return spearman(lists.edit, lists.ncos)

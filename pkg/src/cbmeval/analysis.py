"""Dataset-size sensitivity sweeps and side-by-side report comparison."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .assignment import build_graph, max_weight_matching
from .cbm import cbm_report
from .corpus import Corpus

__all__ = ["SensitivitySeries", "sensitivity_sweep", "compare"]


@dataclass(frozen=True)
class SensitivitySeries:
    """Best-match scores over growing prefixes and over disjoint segments.

    Chunking follows corpus record order; callers shuffle beforehand if they
    want randomized chunks. Records past the last full chunk are ignored.
    """

    chunk_size: int
    accumulated: tuple[tuple[int, float], ...]  # (n_samples, cbm)
    segmented: tuple[tuple[int, float], ...]  # (segment index, cbm)
    std_accumulated: float
    std_segmented: float


def _cbm_score(corpus: Corpus) -> float:
    graph = build_graph(corpus)
    translation = max_weight_matching(graph)
    return cbm_report(corpus, translation, graph).cbm


def sensitivity_sweep(corpus: Corpus, chunk_size: int) -> SensitivitySeries:
    """Each point re-runs the full graph -> match -> score pipeline."""
    if chunk_size < 1:
        raise ValueError(f"chunk size must be >= 1, got {chunk_size}")
    n_chunks = len(corpus.records) // chunk_size
    if n_chunks < 2:
        raise ValueError(
            f"corpus has {len(corpus.records)} records; "
            f"need at least {2 * chunk_size} for chunk size {chunk_size}"
        )
    accumulated = tuple(
        (k * chunk_size, _cbm_score(corpus.subcorpus(0, k * chunk_size)))
        for k in range(1, n_chunks + 1)
    )
    segmented = tuple(
        (k, _cbm_score(corpus.subcorpus(k * chunk_size, (k + 1) * chunk_size)))
        for k in range(n_chunks)
    )
    return SensitivitySeries(
        chunk_size=chunk_size,
        accumulated=accumulated,
        segmented=segmented,
        std_accumulated=float(np.std([score for _, score in accumulated])),
        std_segmented=float(np.std([score for _, score in segmented])),
    )


def compare(reports: Sequence) -> tuple[dict, ...]:
    """Align reports into comparison rows; absent metrics become None."""
    from .report import comparison_row  # local import: report builds on analysis types

    if not reports:
        raise ValueError("need at least one report")
    return tuple(comparison_row(r) for r in reports)

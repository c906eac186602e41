"""Evaluation reports: assembly, canonical JSON, DOT export, text tables.

Reports are self-contained (stats plus provenance embedded) so comparisons
need no corpus access. JSON serialization is canonical: fixed key order,
reals printed with 6 decimal digits, byte-stable across runs and platforms.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import infometrics
from .assignment import BipartiteGraph, TranslationMap, build_graph, max_weight_matching
from .cbm import CbmReport, cbm_report
from .corpus import Corpus, CorpusStats, corpus_stats, read_corpus
from .topsim import topsim

__all__ = [
    "TOOL_VERSION",
    "METRICS",
    "Provenance",
    "AmiReport",
    "EvalReport",
    "evaluate",
    "evaluate_file",
    "canonical_json",
    "to_json",
    "to_dot",
    "to_table",
    "comparison_row",
    "comparison_row_from_obj",
    "COMPARE_COLUMNS",
]

TOOL_VERSION = "0.1.0"
METRICS = frozenset({"cbm", "ami", "topsim"})


@dataclass(frozen=True)
class Provenance:
    schema: str
    corpus: str
    tool_version: str = TOOL_VERSION
    seed: int = 0


@dataclass(frozen=True)
class AmiReport:
    ami: float
    h_messages: float
    h_phrases: float
    h_messages_given_phrases: float
    mutual_information: float


@dataclass(frozen=True, eq=False)
class EvalReport:
    provenance: Provenance
    stats: CorpusStats
    cbm: CbmReport | None = None
    translation: TranslationMap | None = None
    ami: AmiReport | None = None
    topsim: float | None = None


def evaluate(
    corpus: Corpus,
    metrics: Iterable[str] = METRICS,
    provenance: Provenance | None = None,
) -> EvalReport:
    """Run the selected metrics over a corpus.

    TopSim is omitted (not an error) when the corpus is too small for pair
    distances or when a distance list is constant, since the rank
    correlation is undefined there.
    """
    selected = frozenset(metrics)
    unknown = selected - METRICS
    if unknown:
        raise ValueError(f"unknown metrics: {', '.join(sorted(unknown))}")
    if provenance is None:
        provenance = Provenance(schema=corpus.schema.name, corpus="<memory>")
    stats = corpus_stats(corpus)
    cbm_part = translation = ami_part = None
    topsim_value = None
    if "cbm" in selected:
        graph = build_graph(corpus)
        translation = max_weight_matching(graph)
        cbm_part = cbm_report(corpus, translation, graph)
    if "ami" in selected:
        table = infometrics.contingency(corpus)
        ami_part = AmiReport(
            ami=infometrics.ami(table),
            h_messages=infometrics.entropy(table.row_sums),
            h_phrases=infometrics.entropy(table.col_sums),
            h_messages_given_phrases=infometrics.conditional_entropy(table),
            mutual_information=infometrics.mutual_information(table),
        )
    if "topsim" in selected and len(corpus.records) >= 2:
        try:
            topsim_value = topsim(corpus)
        except ValueError:
            topsim_value = None
    return EvalReport(provenance, stats, cbm_part, translation, ami_part, topsim_value)


def evaluate_file(
    path: str | os.PathLike,
    metrics: Iterable[str] = METRICS,
    seed: int = 0,
) -> EvalReport:
    """Evaluate a JSONL corpus file with CLI-equivalent provenance."""
    schema, corpus = read_corpus(path)
    provenance = Provenance(schema=schema.name, corpus=os.fspath(path), seed=seed)
    return evaluate(corpus, metrics, provenance)


# --- canonical JSON ---------------------------------------------------------


def _emit(value, out: list[str]) -> None:
    if isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, dict):
        out.append("{")
        for k, item in enumerate(value.items()):
            if k:
                out.append(",")
            key, val = item
            _emit_string(key, out)
            out.append(":")
            _emit(val, out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for k, item in enumerate(value):
            if k:
                out.append(",")
            _emit(item, out)
        out.append("]")
    elif isinstance(value, str):
        _emit_string(value, out)
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"cannot serialize non-finite real {value!r}")
        if value == 0.0:  # avoid "-0.000000"
            value = 0.0
        out.append(f"{value:.6f}")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\b": "\\b",
    "\f": "\\f",
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
}


def _emit_string(text: str, out: list[str]) -> None:
    out.append('"')
    for ch in text:
        if ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif ch < " ":
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')


def canonical_json(value) -> str:
    """Dict/list/scalar structure -> canonical text, newline-terminated."""
    out: list[str] = []
    _emit(value, out)
    out.append("\n")
    return "".join(out)


def _translation_obj(translation: TranslationMap) -> dict:
    pairs = sorted(
        translation.pairs, key=lambda p: (p[0], p[1].feature, p[1].value)
    )
    return {
        "pairs": [
            {"word": w, "feature": c.feature, "value": c.value, "weight": weight}
            for w, c, weight in pairs
        ],
        "unmatched_words": sorted(translation.unmatched_words),
        "unmatched_concepts": [
            {"feature": c.feature, "value": c.value}
            for c in sorted(translation.unmatched_concepts)
        ],
        "bm_score": translation.bm_score,
    }


def report_obj(report: EvalReport) -> dict:
    """Plain ordered structure mirroring the report; absent parts omitted."""
    stats = report.stats
    obj: dict = {
        "provenance": {
            "schema": report.provenance.schema,
            "corpus": report.provenance.corpus,
            "tool_version": report.provenance.tool_version,
            "seed": report.provenance.seed,
        },
        "corpus_stats": {
            "unique_concepts": stats.unique_concepts,
            "unique_phrases": stats.unique_phrases,
            "unique_words": stats.unique_words,
            "unique_messages": stats.unique_messages,
            "total_word_occurrences": stats.total_word_occurrences,
            "total_concept_occurrences": stats.total_concept_occurrences,
        },
    }
    if report.cbm is not None:
        c = report.cbm
        obj["cbm"] = {
            "cbm": c.cbm,
            "amb": c.amb,
            "para": c.para,
            "unm": c.unm,
            "precision": c.precision,
            "recall": c.recall,
            "good_count": c.good_count,
            "amb_count": c.amb_count,
            "para_count": c.para_count,
            "covered_concept_occurrences": c.covered_concept_occurrences,
            "q": c.q,
            "total_words": c.total_words,
            "total_concepts": c.total_concepts,
            "lower_bound": c.lower_bound,
        }
    if report.translation is not None:
        obj["translation"] = _translation_obj(report.translation)
    if report.ami is not None:
        a = report.ami
        obj["ami"] = {
            "ami": a.ami,
            "h_messages": a.h_messages,
            "h_phrases": a.h_phrases,
            "h_messages_given_phrases": a.h_messages_given_phrases,
            "mutual_information": a.mutual_information,
        }
    if report.topsim is not None:
        obj["topsim"] = report.topsim
    return obj


def to_json(report: EvalReport) -> str:
    return canonical_json(report_obj(report))


# --- DOT export -------------------------------------------------------------


def _dot_id(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(translation: TranslationMap, graph: BipartiteGraph) -> str:
    """Bipartite translation graph: words on one rank, concepts on the
    other, matched edges labeled with their weight, unmatched nodes bare."""
    word_ids = [_dot_id(f"w:{w}") for w in graph.words]
    concept_ids = [_dot_id(f"c:{c}") for c in graph.concepts]
    lines = ["graph translation {", "  rankdir=TB;"]
    for w, node in zip(graph.words, word_ids):
        lines.append(f"  {node} [shape=box,label={_dot_id(w)}];")
    for c, node in zip(graph.concepts, concept_ids):
        lines.append(f"  {node} [shape=ellipse,label={_dot_id(str(c))}];")
    lines.append("  { rank=same; " + " ".join(f"{n};" for n in word_ids) + " }")
    lines.append("  { rank=same; " + " ".join(f"{n};" for n in concept_ids) + " }")
    word_pos = {w: i for i, w in enumerate(graph.words)}
    concept_pos = {c: j for j, c in enumerate(graph.concepts)}
    edges = sorted(translation.pairs, key=lambda p: (word_pos[p[0]], concept_pos[p[1]]))
    for w, c, weight in edges:
        lines.append(
            f"  {_dot_id(f'w:{w}')} -- {_dot_id(f'c:{c}')} [label={_dot_id(str(weight))}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- comparison table -------------------------------------------------------

COMPARE_COLUMNS = (
    "corpus",
    "Cons",
    "Phrs",
    "#w",
    "#m",
    "TopSim",
    "AMI",
    "CBM",
    "Amb",
    "Para",
    "Unm",
    "Prc",
    "Rcl",
)


def comparison_row(report: EvalReport) -> dict:
    stats = report.stats
    cbm = report.cbm
    return {
        "corpus": report.provenance.corpus,
        "Cons": stats.unique_concepts,
        "Phrs": stats.unique_phrases,
        "#w": stats.unique_words,
        "#m": stats.unique_messages,
        "TopSim": report.topsim,
        "AMI": report.ami.ami if report.ami is not None else None,
        "CBM": cbm.cbm if cbm is not None else None,
        "Amb": cbm.amb if cbm is not None else None,
        "Para": cbm.para if cbm is not None else None,
        "Unm": cbm.unm if cbm is not None else None,
        "Prc": cbm.precision if cbm is not None else None,
        "Rcl": cbm.recall if cbm is not None else None,
    }


def comparison_row_from_obj(obj: dict) -> dict:
    """Comparison row from a parsed report JSON object."""
    stats = obj.get("corpus_stats", {})
    cbm = obj.get("cbm", {})
    ami_part = obj.get("ami", {})
    return {
        "corpus": obj.get("provenance", {}).get("corpus", "?"),
        "Cons": stats.get("unique_concepts"),
        "Phrs": stats.get("unique_phrases"),
        "#w": stats.get("unique_words"),
        "#m": stats.get("unique_messages"),
        "TopSim": obj.get("topsim"),
        "AMI": ami_part.get("ami"),
        "CBM": cbm.get("cbm"),
        "Amb": cbm.get("amb"),
        "Para": cbm.get("para"),
        "Unm": cbm.get("unm"),
        "Prc": cbm.get("precision"),
        "Rcl": cbm.get("recall"),
    }


_MAX_LABEL = 42


def to_table(arg) -> str:
    """Fixed-width table over comparison rows (or one report); numeric
    cells show 2 decimals, absent cells an em dash."""
    if isinstance(arg, EvalReport):
        rows = [comparison_row(arg)]
    elif isinstance(arg, dict):
        rows = [arg]
    else:
        rows = list(arg)
        for row in rows:
            if isinstance(row, EvalReport):
                raise TypeError("pass reports through compare() first")

    def label(text: str) -> str:
        return text if len(text) <= _MAX_LABEL else "…" + text[-(_MAX_LABEL - 1):]

    def cell(value) -> str:
        if value is None:
            return "—"
        if isinstance(value, int):
            return str(value)
        return f"{value:.2f}"

    table = [
        [label(str(row.get("corpus", "?")))]
        + [cell(row.get(col)) for col in COMPARE_COLUMNS[1:]]
        for row in rows
    ]
    headers = list(COMPARE_COLUMNS)
    widths = [
        max(len(headers[k]), *(len(r[k]) for r in table)) for k in range(len(headers))
    ]
    def fmt(parts: Sequence[str]) -> str:
        first = parts[0].ljust(widths[0])
        rest = [p.rjust(w) for p, w in zip(parts[1:], widths[1:])]
        return "  ".join([first] + rest).rstrip()

    out = [fmt(headers), fmt(["-" * w for w in widths])]
    out.extend(fmt(r) for r in table)
    return "\n".join(out)

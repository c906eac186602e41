"""Thin research-facing binding over the cbmeval toolkit.

Two verbs, mirroring the command line exactly: `generate` writes a corpus
file byte-identical to `cbmeval generate` with the same arguments, and
`evaluate` returns the report as native mappings, value-equal to the JSON
that `cbmeval eval` emits (and byte-identical when written via `out_path`).
Errors surface as the underlying toolkit's exceptions.
"""

from __future__ import annotations

import json
import os
from random import Random
from typing import Iterable

from cbmeval import (
    BUILTIN_SCHEMAS,
    DataError,
    build_schema,
    evaluate_file,
    generate_corpus,
    parse_sender,
    to_json,
    write_corpus,
)
from cbmeval.corpus import atomic_write_text

__all__ = ["evaluate", "generate"]
__version__ = "0.1.0"


def _resolve_schema(selector: str):
    if selector in BUILTIN_SCHEMAS:
        return build_schema(selector)
    try:
        with open(selector, encoding="utf-8") as fh:
            document = json.load(fh)
    except json.JSONDecodeError as err:
        raise DataError(f"{selector}: invalid schema JSON: {err.msg}") from None
    return build_schema(document)


def evaluate(
    corpus_path: str | os.PathLike,
    metrics: Iterable[str] | None = None,
    seed: int = 0,
    out_path: str | os.PathLike | None = None,
) -> dict:
    """Score a corpus file; returns the parsed canonical report.

    The result is value-equal to the CLI's report JSON for the same flags;
    passing `out_path` additionally writes that JSON byte-for-byte.
    """
    report = evaluate_file(
        corpus_path,
        metrics if metrics is not None else ("cbm", "ami", "topsim"),
        seed=seed,
    )
    text = to_json(report)
    if out_path is not None:
        atomic_write_text(out_path, text)
    return json.loads(text)


def generate(
    schema: str,
    sender: str,
    rule_length: int,
    n_samples: int,
    seed: int,
    out_path: str | os.PathLike,
) -> str:
    """Write a synthetic corpus; byte-identical to the CLI with the same
    arguments. Returns the corpus path."""
    resolved = _resolve_schema(schema)
    model = parse_sender(sender)
    corpus = generate_corpus(resolved, model, rule_length, n_samples, Random(seed))
    write_corpus(corpus, out_path)
    return os.fspath(out_path)

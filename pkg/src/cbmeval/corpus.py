"""Corpus data model, JSONL persistence, and distinct-count statistics.

A corpus is a sequence of (message, phrase) records over one schema. The
on-disk format is JSONL: the first line carries the schema (inline or as a
built-in reference), every following line one record.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass

from .world import (
    BUILTIN_SCHEMAS,
    AttributeSchema,
    Concept,
    DataError,
    LabelingRule,
    build_schema,
)

__all__ = [
    "CorpusRecord",
    "Corpus",
    "CorpusStats",
    "read_corpus",
    "write_corpus",
    "corpus_stats",
    "atomic_write_text",
]


@dataclass(frozen=True)
class CorpusRecord:
    """One turn's transcript: an id, the emitted message, the gold phrase."""

    id: int
    message: tuple[str, ...]
    phrase: LabelingRule

    def __post_init__(self) -> None:
        if self.id < 0:
            raise DataError(f"record id must be non-negative, got {self.id}")
        if not self.message:
            raise DataError(f"record {self.id}: empty message")
        for token in self.message:
            if not token or any(ch.isspace() for ch in token):
                raise DataError(f"record {self.id}: bad word token {token!r}")


@dataclass(frozen=True)
class Corpus:
    schema: AttributeSchema
    records: tuple[CorpusRecord, ...]

    def __post_init__(self) -> None:
        ids = [r.id for r in self.records]
        if len(set(ids)) != len(ids):
            raise DataError("duplicate record ids")
        allowed = set(self.schema.concepts)
        for r in self.records:
            for c in r.phrase.concepts:
                if c not in allowed:
                    raise DataError(f"record {r.id}: concept {c} not in schema")

    def __len__(self) -> int:
        return len(self.records)

    def subcorpus(self, start: int, stop: int) -> "Corpus":
        return Corpus(self.schema, self.records[start:stop])


@dataclass(frozen=True)
class CorpusStats:
    """Distinct counts and occurrence totals.

    `unique_concepts` is the schema's concept vocabulary (the concepts the
    labeling language can express); the other uniques are exact distinct
    counts over the records. Message identity is the exact token sequence,
    phrase identity the concept set.
    """

    unique_concepts: int
    unique_phrases: int
    unique_words: int
    unique_messages: int
    total_word_occurrences: int
    total_concept_occurrences: int


def corpus_stats(corpus: Corpus) -> CorpusStats:
    if not corpus.records:
        raise ValueError("empty corpus")
    words: set[str] = set()
    messages: set[tuple[str, ...]] = set()
    phrases: set[LabelingRule] = set()
    total_words = 0
    total_concepts = 0
    for r in corpus.records:
        words.update(r.message)
        messages.add(r.message)
        phrases.add(r.phrase)
        total_words += len(r.message)
        total_concepts += len(r.phrase.concepts)
    return CorpusStats(
        unique_concepts=corpus.schema.n_concepts,
        unique_phrases=len(phrases),
        unique_words=len(words),
        unique_messages=len(messages),
        total_word_occurrences=total_words,
        total_concept_occurrences=total_concepts,
    )


def atomic_write_text(path: str | os.PathLike, text: str) -> None:
    """Write via a temp file and rename, so failures never leave partial output."""
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp.", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _schema_header_obj(schema: AttributeSchema) -> dict:
    if BUILTIN_SCHEMAS.get(schema.name) == schema.attributes:
        return {"builtin": schema.name}
    return {
        "attributes": [
            {"name": attr, "values": list(values)} for attr, values in schema.attributes
        ]
    }


def write_corpus(corpus: Corpus, path: str | os.PathLike) -> None:
    """Serialize to JSONL; byte-identical output for equal corpora."""
    positions = corpus.schema.concept_positions()
    lines = [
        json.dumps(
            {"schema": _schema_header_obj(corpus.schema)},
            ensure_ascii=False,
            separators=(",", ":"),
        )
    ]
    for r in corpus.records:
        phrase = [
            {"feature": c.feature, "value": c.value}
            for c in sorted(r.phrase.concepts, key=positions.__getitem__)
        ]
        lines.append(
            json.dumps(
                {"id": r.id, "message": list(r.message), "phrase": phrase},
                ensure_ascii=False,
                separators=(",", ":"),
            )
        )
    atomic_write_text(path, "\n".join(lines) + "\n")


def _parse_line(path: str, lineno: int, text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise DataError(f"{path}:{lineno}: invalid JSON: {err.msg}") from None


def read_corpus(path: str | os.PathLike) -> tuple[AttributeSchema, Corpus]:
    """Parse a JSONL corpus; errors carry 1-based line numbers."""
    path = os.fspath(path)
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].strip():
        raise DataError(f"{path}: no header line")

    header = _parse_line(path, 1, lines[0])
    if not isinstance(header, dict) or "schema" not in header:
        raise DataError(f"{path}:1: header line must carry a schema")
    ref = header["schema"]
    try:
        if isinstance(ref, dict) and "builtin" in ref:
            schema = build_schema(ref["builtin"])
        else:
            schema = build_schema(ref)
    except DataError as err:
        raise DataError(f"{path}:1: {err}") from None

    allowed = set(schema.concepts)
    seen_ids: set[int] = set()
    records = []
    for lineno, text in enumerate(lines[1:], start=2):
        if not text.strip():
            raise DataError(f"{path}:{lineno}: blank line inside corpus")
        obj = _parse_line(path, lineno, text)
        if not isinstance(obj, dict):
            raise DataError(f"{path}:{lineno}: record must be an object")
        rec_id = obj.get("id")
        if not isinstance(rec_id, int) or isinstance(rec_id, bool):
            raise DataError(f"{path}:{lineno}: 'id' must be an integer")
        if rec_id in seen_ids:
            raise DataError(f"{path}:{lineno}: duplicate id {rec_id}")
        seen_ids.add(rec_id)

        message = obj.get("message")
        if not isinstance(message, list) or not message:
            raise DataError(f"{path}:{lineno}: 'message' must be a non-empty list")
        # integer word ids are accepted and treated as text
        tokens = []
        for tok in message:
            if isinstance(tok, bool) or not isinstance(tok, (str, int)):
                raise DataError(f"{path}:{lineno}: bad word token {tok!r}")
            tokens.append(tok if isinstance(tok, str) else str(tok))

        phrase = obj.get("phrase")
        if not isinstance(phrase, list) or not phrase:
            raise DataError(f"{path}:{lineno}: 'phrase' must be a non-empty list")
        concepts = []
        for pair in phrase:
            if (
                not isinstance(pair, dict)
                or not isinstance(pair.get("feature"), str)
                or not isinstance(pair.get("value"), str)
            ):
                raise DataError(
                    f"{path}:{lineno}: phrase entries need 'feature' and 'value' strings"
                )
            concept = Concept(pair["feature"], pair["value"])
            if concept not in allowed:
                raise DataError(
                    f"{path}:{lineno}: unknown concept "
                    f"{concept.feature}:{concept.value}"
                )
            concepts.append(concept)
        try:
            record = CorpusRecord(rec_id, tuple(tokens), LabelingRule(tuple(concepts)))
        except DataError as err:
            raise DataError(f"{path}:{lineno}: {err}") from None
        records.append(record)

    return schema, Corpus(schema, tuple(records))

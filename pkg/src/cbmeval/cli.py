"""Command-line interface: generate, eval, sensitivity, compare.

Stdout carries only machine-readable or tabular payload; diagnostics go to
stderr. Exit codes: 0 success, 1 usage error, 2 data error. Output files are
written atomically (temp file + rename), so failures never leave partial
artifacts.
"""

from __future__ import annotations

import argparse
import json
import sys
from random import Random

from . import analysis, report, senders
from .corpus import atomic_write_text, read_corpus, write_corpus
from .world import BUILTIN_SCHEMAS, DataError, build_schema
from .assignment import build_graph

__all__ = ["main"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); usage errors are 1
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="cbmeval",
        description="Evaluate the compositionality of emergent-communication corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="write a synthetic corpus as JSONL")
    gen.add_argument(
        "--schema",
        required=True,
        help="built-in name (shape, thing) or path to a schema JSON document",
    )
    gen.add_argument(
        "--sender",
        required=True,
        help="perfect | synonym:K | ambiguous:G | random:V | noisy:EPS,"
        " with optional ',shuffled'",
    )
    gen.add_argument("--rule-len", type=int, required=True, help="concepts per rule")
    gen.add_argument("--samples", type=int, required=True, help="number of records")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output corpus path")
    gen.set_defaults(func=_cmd_generate)

    ev = sub.add_parser("eval", help="score a corpus and emit a report")
    ev.add_argument("--corpus", required=True, help="corpus JSONL path")
    ev.add_argument(
        "--metrics",
        default="cbm,ami,topsim",
        help="comma-separated subset of cbm,ami,topsim (default: all)",
    )
    ev.add_argument("--out", help="report JSON path; JSON goes to stdout if omitted")
    ev.add_argument("--dot", help="also write the translation graph as DOT")
    ev.add_argument("--seed", type=int, default=0, help="echoed into provenance")
    ev.set_defaults(func=_cmd_eval)

    sens = sub.add_parser("sensitivity", help="best-match score vs dataset size")
    sens.add_argument("--corpus", required=True)
    sens.add_argument("--chunk", type=int, default=100, help="records per chunk")
    sens.add_argument("--out", help="series JSON path; stdout if omitted")
    sens.set_defaults(func=_cmd_sensitivity)

    cmp_ = sub.add_parser("compare", help="tabulate several report JSON files")
    cmp_.add_argument("reports", nargs="+", help="report JSON paths")
    cmp_.set_defaults(func=_cmd_compare)

    return parser


def _load_schema(selector: str):
    if selector in BUILTIN_SCHEMAS:
        return build_schema(selector)
    try:
        with open(selector, encoding="utf-8") as fh:
            document = json.load(fh)
    except json.JSONDecodeError as err:
        raise DataError(f"{selector}: invalid schema JSON: {err.msg}") from None
    return build_schema(document)


def _parse_metrics(text: str) -> frozenset[str]:
    names = frozenset(part.strip() for part in text.split(",") if part.strip())
    if not names:
        raise UsageError("--metrics must select at least one of cbm,ami,topsim")
    unknown = names - report.METRICS
    if unknown:
        raise UsageError(f"unknown metrics: {', '.join(sorted(unknown))}")
    return names


def _cmd_generate(args) -> int:
    schema = _load_schema(args.schema)
    try:
        model = senders.parse_sender(args.sender)
    except ValueError as err:
        raise UsageError(str(err)) from None
    if not 1 <= args.rule_len <= schema.n_attributes:
        raise UsageError(
            f"--rule-len must be in [1, {schema.n_attributes}] for this schema"
        )
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    corpus = senders.generate_corpus(
        schema, model, args.rule_len, args.samples, Random(args.seed)
    )
    write_corpus(corpus, args.out)
    return 0


def _cmd_eval(args) -> int:
    metrics = _parse_metrics(args.metrics)
    if args.dot and "cbm" not in metrics:
        raise UsageError("--dot needs the cbm metric")
    schema, corpus = read_corpus(args.corpus)
    if not corpus.records:
        raise DataError(f"{args.corpus}: corpus has no records")
    provenance = report.Provenance(
        schema=schema.name, corpus=args.corpus, seed=args.seed
    )
    result = report.evaluate(corpus, metrics, provenance)
    text = report.to_json(result)
    if args.out:
        atomic_write_text(args.out, text)
        sys.stdout.write(report.to_table(result) + "\n")
    else:
        sys.stdout.write(text)
    if args.dot:
        graph = build_graph(corpus)
        atomic_write_text(args.dot, report.to_dot(result.translation, graph))
    return 0


def _cmd_sensitivity(args) -> int:
    schema, corpus = read_corpus(args.corpus)
    if not corpus.records:
        raise DataError(f"{args.corpus}: corpus has no records")
    try:
        series = analysis.sensitivity_sweep(corpus, args.chunk)
    except ValueError as err:
        raise UsageError(str(err)) from None
    obj = {
        "chunk_size": series.chunk_size,
        "accumulated": [{"n": n, "cbm": score} for n, score in series.accumulated],
        "segmented": [
            {"segment": k, "cbm": score} for k, score in series.segmented
        ],
        "std_accumulated": series.std_accumulated,
        "std_segmented": series.std_segmented,
    }
    text = report.canonical_json(obj)
    if args.out:
        atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_compare(args) -> int:
    rows = []
    for path in args.reports:
        with open(path, encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as err:
                raise DataError(f"{path}: invalid report JSON: {err.msg}") from None
        rows.append(report.comparison_row_from_obj(obj))
    sys.stdout.write(report.to_table(rows) + "\n")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as err:
        print(f"cbmeval: error: {err}", file=sys.stderr)
        return 1
    except (DataError, FileNotFoundError, IsADirectoryError, PermissionError) as err:
        print(f"cbmeval: error: {err}", file=sys.stderr)
        return 2
    except SystemExit as err:  # argparse --help
        code = err.code
        return int(code) if code is not None else 0


if __name__ == "__main__":
    sys.exit(main())

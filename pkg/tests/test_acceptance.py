"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Statistical criteria use fixed seeds, so every run is identical.
"""

import math
import time
from random import Random

import numpy as np
import pytest

from cbmeval import (
    BipartiteGraph,
    Concept,
    build_graph,
    build_schema,
    cbm_report,
    corpus_stats,
    enumerate_rules,
    expected_mi,
    generate_corpus,
    max_weight_matching,
    parse_sender,
    sensitivity_sweep,
    topsim,
)
from cbmeval.infometrics import ContingencyTable, ami, contingency

import helpers

_module_start = time.monotonic()


def check(name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {name}: {status}{suffix}")
    assert ok, f"{name}{suffix}"


def test_worked_example_two_turns(demo_corpus):
    start = time.monotonic()
    graph = build_graph(demo_corpus)
    translation = max_weight_matching(graph)
    report = cbm_report(demo_corpus, translation, graph)
    elapsed = time.monotonic() - start
    pairs = {(w, str(c)) for w, c, _ in translation.pairs}
    check(
        "worked-example translation",
        pairs == {("w1", "color:blue"), ("w2", "shape:triangle"), ("w3", "color:red")},
        f"pairs={sorted(pairs)}",
    )
    check("worked-example bm_score", translation.bm_score == 4)
    check("worked-example cbm", report.cbm == 1.0)
    check("worked-example runtime", elapsed < 1.0, f"{elapsed:.3f}s")


def test_rule_space_counts():
    shape = build_schema("shape")
    thing = build_schema("thing")
    check("rule-counts shape l=1", len(enumerate_rules(shape, 1)) == 17)
    check("rule-counts shape l=4", len(enumerate_rules(shape, 4)) == 270)
    check("rule-counts thing l=1", len(enumerate_rules(thing, 1)) == 50)


def test_perfect_sender_suite():
    start = time.monotonic()
    for name, max_len in (("shape", 4), ("thing", 5)):
        schema = build_schema(name)
        for rule_length in (1, max_len):
            for order in ("", ",shuffled"):
                label = f"{name} l={rule_length}{order or ',canonical'}"
                corpus = generate_corpus(
                    schema,
                    parse_sender("perfect" + order),
                    rule_length,
                    1000,
                    Random(11),
                )
                graph = build_graph(corpus)
                translation = max_weight_matching(graph)
                report = cbm_report(corpus, translation, graph)
                check(
                    f"perfect {label} scores",
                    report.cbm == 1.0
                    and report.amb == 0.0
                    and report.para == 0.0
                    and report.unm == 0.0
                    and report.precision == 1.0
                    and report.recall == 1.0,
                    f"cbm={report.cbm} amb={report.amb} para={report.para} "
                    f"unm={report.unm} prc={report.precision} rcl={report.recall}",
                )
                if not order:
                    value = ami(contingency(corpus))
                    check(f"perfect {label} ami", value == 1.0, f"ami={value}")
                if rule_length == 1 and not order:
                    stats = corpus_stats(corpus)
                    check(
                        f"perfect {label} coverage",
                        stats.unique_phrases == schema.n_concepts,
                    )
                    ts = topsim(corpus)
                    check(
                        f"perfect {label} topsim",
                        abs(ts - 1.0) <= 1e-9,
                        f"topsim={ts}",
                    )
    elapsed = time.monotonic() - start
    check("perfect-suite runtime", elapsed < 30.0, f"{elapsed:.1f}s")


def test_random_sender_suite():
    start = time.monotonic()
    schema = build_schema("shape")
    for seed in range(10):
        corpus = generate_corpus(schema, parse_sender("random:26"), 2, 1000, Random(seed))
        value = ami(contingency(corpus))
        check(f"random seed={seed} |ami|", abs(value) <= 0.05, f"ami={value:.4f}")
        ts = topsim(corpus)
        check(f"random seed={seed} |topsim|", abs(ts) <= 0.1, f"topsim={ts:.4f}")
        graph = build_graph(corpus)
        report = cbm_report(corpus, max_weight_matching(graph), graph)
        check(
            f"random seed={seed} cbm>=lower-bound",
            report.cbm >= report.lower_bound,
            f"cbm={report.cbm:.4f} lb={report.lower_bound:.4f}",
        )
    elapsed = time.monotonic() - start
    check("random-suite runtime", elapsed < 60.0, f"{elapsed:.1f}s")


def test_matching_against_brute_force():
    rng = Random(2024)
    mismatches = 0
    for _ in range(200):
        n_rows = rng.randint(1, 6)
        n_cols = rng.randint(1, 6)
        weights = [
            [rng.choice((0, 0, 1, 2, 3, 5, 9)) for _ in range(n_cols)]
            for _ in range(n_rows)
        ]
        graph = BipartiteGraph(
            tuple(f"w{i}" for i in range(n_rows)),
            tuple(Concept("f", f"v{j}") for j in range(n_cols)),
            np.array(weights, dtype=np.int64),
        )
        score, _ = helpers.brute_force_best_match(weights)
        if max_weight_matching(graph).bm_score != score:
            mismatches += 1
    check("matching oracle 200 graphs", mismatches == 0, f"mismatches={mismatches}")


def test_expected_mi_oracle():
    rng = Random(99)
    failures = 0
    for _ in range(20):
        while True:
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 4)
            counts = np.array(
                [[rng.randint(0, 3) for _ in range(cols)] for _ in range(rows)]
            )
            if 0 < counts.sum() <= 20 and counts.sum(axis=1).all() and counts.sum(axis=0).all():
                break
        table = ContingencyTable((), (), counts.astype(np.int64))
        closed = expected_mi(table)
        mean, se = helpers.permutation_emi(counts, 20000, seed=7)
        if abs(closed - mean) > 3 * max(se, 1e-12):
            failures += 1
    check("emi monte-carlo 20 tables", failures == 0, f"failures={failures}")


def test_expected_mi_analytic_case():
    # Stated expectation: EMI = ln(2)/2 for marginals (1,1) x (1,1).
    # Both permutations of two distinct records produce a permutation
    # matrix, whose mutual information is ln 2 either way, so the
    # enumeration oracle puts the expectation at ln 2; the stated value is
    # not attainable by any correct implementation.
    table = ContingencyTable(
        (("m0",), ("m1",)),
        (helpers.rule(("f", "a")), helpers.rule(("f", "b"))),
        np.array([[1, 0], [0, 1]], dtype=np.int64),
    )
    closed = expected_mi(table)
    stated = math.log(2) / 2
    check(
        "emi analytic (1,1)x(1,1) as stated",
        closed == pytest.approx(stated, abs=1e-12),
        f"computed={closed:.6f} stated={stated:.6f} enumeration-oracle={math.log(2):.6f}",
    )


def test_partition_identities():
    failures = []
    for seed in range(100):
        corpus = helpers.random_corpus(Random(seed))
        graph = build_graph(corpus)
        translation = max_weight_matching(graph)
        report = cbm_report(corpus, translation, graph)
        exact = (
            report.good_count + report.amb_count + report.para_count
            == report.total_words
        )
        ratio = abs(
            (report.cbm + report.amb + report.para) - report.total_words / report.q
        )
        cross = abs(
            report.precision * report.total_words
            - report.recall * report.total_concepts
        )
        if not exact or ratio > 1e-12 or cross > 1e-12:
            failures.append(seed)
    check("partition identities 100 corpora", not failures, f"failed seeds={failures}")


def test_size_sensitivity_stabilization():
    start = time.monotonic()
    schema = build_schema("thing")
    corpus = generate_corpus(schema, parse_sender("ambiguous:2"), 1, 1800, Random(0))
    series = sensitivity_sweep(corpus, 100)
    final = series.accumulated[-1][1]
    mean_segmented = sum(s for _, s in series.segmented) / len(series.segmented)
    tail = [score for n, score in series.accumulated if n >= 500]
    spread = max(tail) - min(tail)
    elapsed = time.monotonic() - start
    check(
        "sensitivity segmented >= accumulated",
        mean_segmented >= final,
        f"segmented-mean={mean_segmented:.4f} final={final:.4f}",
    )
    check("sensitivity stabilizes past 500", spread < 0.05, f"spread={spread:.4f}")
    check("sensitivity runtime", elapsed < 60.0, f"{elapsed:.1f}s")


def test_pairwise_performance():
    schema = build_schema("thing")
    corpus = generate_corpus(schema, parse_sender("random:26"), 5, 2000, Random(3))
    start = time.monotonic()
    topsim(corpus)
    elapsed = time.monotonic() - start
    check("topsim 2000 messages under 10s", elapsed < 10.0, f"{elapsed:.2f}s")


def test_total_runtime():
    elapsed = time.monotonic() - _module_start
    check("acceptance suite under 5 minutes", elapsed < 300.0, f"{elapsed:.1f}s")

from random import Random

import pytest

from cbmeval import (
    build_graph,
    cbm_report,
    compare,
    evaluate,
    generate_corpus,
    max_weight_matching,
    parse_sender,
    sensitivity_sweep,
    to_table,
)

import helpers


def whole_corpus_cbm(corpus):
    graph = build_graph(corpus)
    translation = max_weight_matching(graph)
    return cbm_report(corpus, translation, graph).cbm


class TestSensitivity:
    def test_perfect_sender_flat_series(self, shape_schema):
        corpus = generate_corpus(shape_schema, parse_sender("perfect"), 1, 400, Random(0))
        series = sensitivity_sweep(corpus, 100)
        assert all(score == 1.0 for _, score in series.accumulated)
        assert all(score == 1.0 for _, score in series.segmented)
        assert series.std_accumulated == 0.0
        assert series.std_segmented == 0.0

    def test_segmented_inflation(self, thing_schema):
        corpus = generate_corpus(
            thing_schema, parse_sender("ambiguous:2"), 1, 1800, Random(0)
        )
        series = sensitivity_sweep(corpus, 100)
        assert len(series.accumulated) == 18
        assert len(series.segmented) == 18
        final = series.accumulated[-1][1]
        mean_segmented = sum(s for _, s in series.segmented) / len(series.segmented)
        assert mean_segmented >= final

    def test_accumulated_stabilizes(self, thing_schema):
        corpus = generate_corpus(
            thing_schema, parse_sender("ambiguous:2"), 1, 1800, Random(0)
        )
        series = sensitivity_sweep(corpus, 100)
        tail = [score for n, score in series.accumulated if n >= 500]
        assert max(tail) - min(tail) < 0.05

    def test_repeat_runs_identical(self):
        corpus = helpers.random_corpus(Random(15), n_records=40)
        assert sensitivity_sweep(corpus, 10) == sensitivity_sweep(corpus, 10)

    def test_final_point_equals_whole_corpus(self):
        corpus = helpers.random_corpus(Random(16), n_records=60)
        series = sensitivity_sweep(corpus, 20)
        assert series.accumulated[-1] == (60, whole_corpus_cbm(corpus))

    def test_sample_counts_step_by_chunk(self):
        corpus = helpers.random_corpus(Random(17), n_records=50)
        series = sensitivity_sweep(corpus, 10)
        assert [n for n, _ in series.accumulated] == [10, 20, 30, 40, 50]
        assert [k for k, _ in series.segmented] == [0, 1, 2, 3, 4]

    def test_too_small_corpus_rejected(self):
        corpus = helpers.random_corpus(Random(18), n_records=15)
        with pytest.raises(ValueError):
            sensitivity_sweep(corpus, 10)


class TestCompare:
    def test_single_report(self, demo_corpus):
        rows = compare([evaluate(demo_corpus)])
        assert len(rows) == 1
        assert rows[0]["CBM"] == 1.0
        assert rows[0]["Cons"] == 4

    def test_rows_keep_order(self, demo_corpus, shape_schema):
        other = generate_corpus(shape_schema, parse_sender("random:5"), 1, 50, Random(2))
        a = evaluate(demo_corpus)
        b = evaluate(other)
        rows = compare([a, b])
        assert rows[0]["Cons"] == 4
        assert rows[1]["Cons"] == 17

    def test_missing_metric_renders_dash(self, demo_corpus):
        report = evaluate(demo_corpus, metrics={"cbm"})
        rows = compare([report])
        assert rows[0]["AMI"] is None
        assert "—" in to_table(rows)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            compare([])

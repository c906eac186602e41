"""Per-occurrence verdicts and the normalized best-match score.

Every word occurrence in every record gets exactly one verdict against the
translation map: good (its matched concept is in the record's phrase),
ambiguous (matched elsewhere), or paraphrase (not matched at all). Summing
good verdicts recovers the matching score, so cbm = bm_score / q.
"""

from __future__ import annotations

from dataclasses import dataclass

from .assignment import BipartiteGraph, TranslationMap, build_graph, cbm_lower_bound
from .corpus import Corpus, CorpusRecord
from .world import Concept

__all__ = ["GOOD", "AMBIGUOUS", "PARAPHRASE", "CbmReport", "classify_record", "cbm_report"]

GOOD = "good"
AMBIGUOUS = "ambiguous"
PARAPHRASE = "paraphrase"


@dataclass(frozen=True)
class CbmReport:
    """Best-match score plus its diagnostic rates.

    q normalizes by sum(max(message length, phrase length)) over records;
    good + ambiguous + paraphrase counts partition the word occurrences.
    Records whose message is shorter than their phrase inflate q without
    earning verdicts, which deliberately pushes cbm + amb + para below 1.
    """

    cbm: float
    amb: float
    para: float
    unm: float
    precision: float
    recall: float
    good_count: int
    amb_count: int
    para_count: int
    covered_concept_occurrences: int
    q: int
    total_words: int
    total_concepts: int
    lower_bound: float


def classify_record(
    record: CorpusRecord, translation: TranslationMap
) -> tuple[tuple[str, ...], frozenset[Concept]]:
    """Verdict per word occurrence and the phrase concepts covered.

    Repeated words each earn their own verdict; nothing is consumed. Words
    absent from the translation (including words never seen by it) are
    paraphrases.
    """
    mapping = translation.word_to_concept()
    phrase = set(record.phrase.concepts)
    verdicts = []
    covered = set()
    for token in record.message:
        concept = mapping.get(token)
        if concept is None:
            verdicts.append(PARAPHRASE)
        elif concept in phrase:
            verdicts.append(GOOD)
            covered.add(concept)
        else:
            verdicts.append(AMBIGUOUS)
    return tuple(verdicts), frozenset(covered)


def cbm_report(
    corpus: Corpus,
    translation: TranslationMap,
    graph: BipartiteGraph | None = None,
) -> CbmReport:
    """Aggregate verdicts into rates; `graph` is rebuilt when not supplied."""
    if not corpus.records:
        raise ValueError("empty corpus")
    mapping = translation.word_to_concept()
    unmatched = translation.unmatched_concepts
    good = amb = para = 0
    covered_occurrences = 0
    unmatched_occurrences = 0
    total_words = total_concepts = q = 0
    for record in corpus.records:
        phrase = set(record.phrase.concepts)
        m = len(record.message)
        l = len(record.phrase.concepts)
        total_words += m
        total_concepts += l
        q += max(m, l)
        covered = set()
        for token in record.message:
            concept = mapping.get(token)
            if concept is None:
                para += 1
            elif concept in phrase:
                good += 1
                covered.add(concept)
            else:
                amb += 1
        covered_occurrences += len(covered)
        for concept in record.phrase.concepts:
            if concept in unmatched:
                unmatched_occurrences += 1
    if graph is None:
        graph = build_graph(corpus)
    return CbmReport(
        cbm=good / q,
        amb=amb / q,
        para=para / q,
        unm=unmatched_occurrences / total_concepts,
        precision=covered_occurrences / total_words,
        recall=covered_occurrences / total_concepts,
        good_count=good,
        amb_count=amb,
        para_count=para,
        covered_concept_occurrences=covered_occurrences,
        q=q,
        total_words=total_words,
        total_concepts=total_concepts,
        lower_bound=cbm_lower_bound(graph, q),
    )

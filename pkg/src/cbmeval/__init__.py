"""Compositionality evaluation for emergent-communication corpora.

The toolkit scores (message, phrase) corpora with the concept best-match
score and its ambiguity / paraphrase / unmatched-concept diagnostics,
alongside adjusted mutual information and topographic similarity, and ships
synthetic senders whose expected scores are known by construction.
"""

from .analysis import SensitivitySeries, compare, sensitivity_sweep
from .assignment import (
    BipartiteGraph,
    TranslationMap,
    build_graph,
    cbm_lower_bound,
    max_weight_matching,
)
from .cbm import AMBIGUOUS, GOOD, PARAPHRASE, CbmReport, cbm_report, classify_record
from .corpus import (
    Corpus,
    CorpusRecord,
    CorpusStats,
    corpus_stats,
    read_corpus,
    write_corpus,
)
from .infometrics import (
    ContingencyTable,
    ami,
    conditional_entropy,
    contingency,
    entropy,
    expected_mi,
    mutual_information,
)
from .report import (
    METRICS,
    TOOL_VERSION,
    AmiReport,
    EvalReport,
    Provenance,
    canonical_json,
    evaluate,
    evaluate_file,
    to_dot,
    to_json,
    to_table,
)
from .senders import SenderModel, build_lexicon, generate_corpus, parse_sender
from .topsim import PairwiseLists, levenshtein, pairwise_lists, spearman, topsim
from .world import (
    BUILTIN_SCHEMAS,
    AttributeSchema,
    Concept,
    DataError,
    LabelingRule,
    ObjectInstance,
    Turn,
    build_schema,
    encode_object,
    encode_rule,
    enumerate_rules,
    rule_satisfies,
    sample_turn,
)

__version__ = TOOL_VERSION

__all__ = [
    "__version__",
    "AMBIGUOUS",
    "AmiReport",
    "AttributeSchema",
    "BUILTIN_SCHEMAS",
    "BipartiteGraph",
    "CbmReport",
    "Concept",
    "ContingencyTable",
    "Corpus",
    "CorpusRecord",
    "CorpusStats",
    "DataError",
    "EvalReport",
    "GOOD",
    "LabelingRule",
    "METRICS",
    "ObjectInstance",
    "PARAPHRASE",
    "PairwiseLists",
    "Provenance",
    "SenderModel",
    "SensitivitySeries",
    "TOOL_VERSION",
    "TranslationMap",
    "Turn",
    "ami",
    "build_graph",
    "build_lexicon",
    "build_schema",
    "canonical_json",
    "cbm_lower_bound",
    "cbm_report",
    "classify_record",
    "compare",
    "conditional_entropy",
    "contingency",
    "corpus_stats",
    "encode_object",
    "encode_rule",
    "entropy",
    "enumerate_rules",
    "evaluate",
    "evaluate_file",
    "expected_mi",
    "generate_corpus",
    "levenshtein",
    "max_weight_matching",
    "mutual_information",
    "pairwise_lists",
    "parse_sender",
    "read_corpus",
    "rule_satisfies",
    "sample_turn",
    "sensitivity_sweep",
    "spearman",
    "to_dot",
    "to_json",
    "to_table",
    "topsim",
    "write_corpus",
]

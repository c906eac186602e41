"""Synthetic sender models with controllable compositionality.

These senders stand in for trained agents: each ties messages to labeling
rules through a known construction, so the score a metric *should* produce
is known in advance (a perfect sender is exactly decodable, an ambiguous one
shares words between concepts, a random one carries no signal, ...).
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .corpus import Corpus, CorpusRecord
from .world import AttributeSchema, Concept, enumerate_rules

__all__ = ["SenderModel", "parse_sender", "build_lexicon", "generate_corpus"]

KINDS = ("perfect", "synonym", "ambiguous", "random", "noisy")


@dataclass(frozen=True)
class SenderModel:
    """Sender family plus its parameter.

    kind: perfect | synonym (k words per concept) | ambiguous (g concepts per
    word) | random (uniform words) | noisy (perfect with corruption).
    Words appear in schema concept order unless `shuffled`.
    """

    kind: str
    synonyms: int | None = None
    group_size: int | None = None
    vocab_size: int | None = None
    noise: float | None = None
    shuffled: bool = False

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown sender kind {self.kind!r}")
        if self.kind == "synonym" and (self.synonyms is None or self.synonyms < 2):
            raise ValueError("synonym sender needs k >= 2")
        if self.kind == "ambiguous" and (self.group_size is None or self.group_size < 2):
            raise ValueError("ambiguous sender needs g >= 2")
        if self.kind == "random" and (self.vocab_size is None or self.vocab_size < 1):
            raise ValueError("random sender needs vocab size >= 1")
        if self.kind == "noisy" and (self.noise is None or not 0.0 < self.noise < 1.0):
            raise ValueError("noisy sender needs 0 < eps < 1")


_GRAMMAR = "perfect | synonym:K | ambiguous:G | random:V | noisy:EPS, optionally ',shuffled'"


def parse_sender(text: str) -> SenderModel:
    """Parse the model selection grammar used on the command line."""
    body = text.strip()
    shuffled = False
    if body.endswith(",shuffled"):
        shuffled = True
        body = body[: -len(",shuffled")]
    kind, sep, arg = body.partition(":")
    if kind == "perfect" and not sep:
        return SenderModel("perfect", shuffled=shuffled)
    try:
        if kind == "synonym":
            return SenderModel("synonym", synonyms=int(arg), shuffled=shuffled)
        if kind == "ambiguous":
            return SenderModel("ambiguous", group_size=int(arg), shuffled=shuffled)
        if kind == "random":
            return SenderModel("random", vocab_size=int(arg), shuffled=shuffled)
        if kind == "noisy":
            return SenderModel("noisy", noise=float(arg), shuffled=shuffled)
    except ValueError as err:
        raise ValueError(f"bad sender model {text!r}: {err}") from None
    raise ValueError(f"bad sender model {text!r}; expected {_GRAMMAR}")


def build_lexicon(schema: AttributeSchema, model: SenderModel) -> dict[Concept, tuple[str, ...]]:
    """Concept -> synonym-list map realizing the sender's word supply."""
    concepts = schema.concepts
    if model.kind in ("perfect", "noisy"):
        return {c: (f"w{i}",) for i, c in enumerate(concepts)}
    if model.kind == "synonym":
        k = model.synonyms
        return {c: tuple(f"w{i}_{j}" for j in range(k)) for i, c in enumerate(concepts)}
    if model.kind == "ambiguous":
        g = model.group_size
        return {c: (f"w{i // g}",) for i, c in enumerate(concepts)}
    raise ValueError(f"sender kind {model.kind!r} has no lexicon")


def generate_corpus(
    schema: AttributeSchema,
    model: SenderModel,
    rule_length: int,
    n_samples: int,
    rng: Random,
) -> Corpus:
    """Sample `n_samples` records: a uniform rule, then the model's message.

    Messages have exactly `rule_length` words. Deterministic given the
    random stream.
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    rules = enumerate_rules(schema, rule_length)
    positions = schema.concept_positions()
    lexicon = None if model.kind == "random" else build_lexicon(schema, model)
    if model.kind == "noisy":
        vocabulary = [words[0] for words in (lexicon[c] for c in schema.concepts)]

    records = []
    for i in range(n_samples):
        rule = rules[rng.randrange(len(rules))]
        ordered = sorted(rule.concepts, key=positions.__getitem__)
        if model.kind == "random":
            words = [f"w{rng.randrange(model.vocab_size)}" for _ in ordered]
        elif model.kind == "synonym":
            words = [rng.choice(lexicon[c]) for c in ordered]
        else:
            words = [lexicon[c][0] for c in ordered]
            if model.kind == "noisy":
                words = [
                    rng.choice(vocabulary) if rng.random() < model.noise else w
                    for w in words
                ]
        if model.shuffled:
            rng.shuffle(words)
        records.append(CorpusRecord(i, tuple(words), rule))
    return Corpus(schema, tuple(records))

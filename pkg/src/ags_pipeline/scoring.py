"""Generality scoring: logistic smoothing, word and sentence aggregation.

A word's generality is the mean, over the other dialects, of a logistically
smoothed version of its minimum distance to any aligned counterpart from
that dialect. Sentence scores take the harmonic mean of the k lowest word
scores, so one highly specific word drags the whole sentence down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .alignment import AlignmentAggregate, normalized_distance
from .corpus import MultiLabelSentence
from .distance import IndelConfig
from .errors import PipelineError


@dataclass(frozen=True)
class AgsConfig:
    t: float = 0.5                      # distance threshold
    s: float = 20.0                     # logistic steepness
    k: int = 2                          # sentence aggregation window
    missing_dialect_delta: float = 1.0  # distance charged when a dialect has no counterpart
    include_self_dialect: bool = False
    epsilon: float = 1e-4               # harmonic-mean clamp
    exclude_missing_dialects: bool = False  # drop no-counterpart dialects from the mean

    def __post_init__(self) -> None:
        if not 0.0 < self.t < 1.0:
            raise ValueError("t must be in (0, 1)")
        if self.s <= 0:
            raise ValueError("s must be positive")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0.0 <= self.missing_dialect_delta <= 1.0:
            raise ValueError("missing_dialect_delta must be in [0, 1]")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")


@dataclass(frozen=True)
class WordAgs:
    word: str
    dialect: str
    deltas: dict[str, float]
    ags: float


@dataclass(frozen=True)
class SentenceAgs:
    sentence_id: str
    word_scores: tuple[float, ...]
    k_used: int
    value: float


def smooth(d: float, cfg: AgsConfig) -> float:
    """Logistic soft threshold: near 1 well below t, near 0 well above."""
    exponent = -cfg.s * (cfg.t - d)
    if exponent > 700.0:  # exp would overflow; the limit is 0
        return 0.0
    return 1.0 / (1.0 + math.exp(exponent))


def ags_from_deltas(
    deltas: dict[str, float | None],
    cfg: AgsConfig,
) -> float:
    """Mean smoothed value over the dialect map; None marks a missing dialect.

    An empty map (no other dialect to compare against, or every dialect
    excluded) falls back to the missing-dialect rule.
    """
    values = []
    for delta in deltas.values():
        if delta is None:
            if cfg.exclude_missing_dialects:
                continue
            delta = cfg.missing_dialect_delta
        values.append(smooth(delta, cfg))
    if not values:
        values = [smooth(cfg.missing_dialect_delta, cfg)]
    return sum(values) / len(values)


def word_ags(
    word: str,
    dialect: str,
    agg: AlignmentAggregate,
    model,
    cfg: AgsConfig = AgsConfig(),
    costs: IndelConfig = IndelConfig(),
    memo: dict | None = None,
) -> WordAgs:
    """Word-level generality from aggregated alignments.

    delta_e is the minimum normalized distance to any counterpart from
    dialect e; dialects with no real counterpart get
    cfg.missing_dialect_delta.
    """
    if (word, dialect) not in agg:
        raise PipelineError(f"word {word!r} has no aggregation entry in {dialect}")
    by_dialect = agg.counterparts(word, dialect)
    others = [e for e in agg.dialects if e != dialect]
    raw_deltas: dict[str, float | None] = {}
    for other in others:
        surfaces = [s for s in by_dialect.get(other, ()) if s is not None]
        if not surfaces:
            raw_deltas[other] = None
        else:
            raw_deltas[other] = min(
                normalized_distance(word, dialect, s, other, model, costs, memo)
                for s in surfaces
            )
    if cfg.include_self_dialect:
        raw_deltas[dialect] = normalized_distance(
            word, dialect, word, dialect, model, costs, memo
        )
    value = ags_from_deltas(raw_deltas, cfg)
    deltas = {
        e: (cfg.missing_dialect_delta if d is None else d) for e, d in raw_deltas.items()
    }
    return WordAgs(word=word, dialect=dialect, deltas=deltas, ags=value)


def sentence_ags(scores: list[float], cfg: AgsConfig = AgsConfig()) -> float:
    """Harmonic mean of the k lowest word scores, clamped away from zero."""
    if not scores:
        raise ValueError("scores must be non-empty")
    k_used = min(cfg.k, len(scores))
    lowest = sorted(scores)[:k_used]
    return k_used / sum(1.0 / max(g, cfg.epsilon) for g in lowest)


def mean_sentence_ags(scores: list[float]) -> float:
    """Plain arithmetic mean over all word scores."""
    if not scores:
        raise ValueError("scores must be non-empty")
    return sum(scores) / len(scores)


def aggregate_sentence(scores: list[float], mode: str, cfg: AgsConfig) -> float:
    if mode == "harmonic-k":
        return sentence_ags(scores, cfg)
    if mode == "mean":
        return mean_sentence_ags(scores)
    raise ValueError(f"unknown sentence aggregation {mode!r}")


def multilabel_sentence_ags(item: MultiLabelSentence) -> float:
    """Ratio of valid dialect labels to the total dialect count."""
    return len(item.valid_dialects) / item.total_dialects


def lookup_baseline(word: str, table: dict[str, float], default: float = 0.5) -> float:
    """Dictionary-lookup baseline; out-of-vocabulary words get the default."""
    return table.get(word, default)

"""Marked-example construction from the annotation pipeline's JSON lines.

Each training example is a sentence with one target word wrapped in a
reserved marker token on each side, paired with that word's generality
score. The marker never appears in corpus text; sentences that do contain
it are rejected with a warning.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

logger = logging.getLogger(__name__)

MARKER = "[TGT]"


@dataclass(frozen=True)
class MarkedExample:
    sentence_id: str
    dialect: str
    token_index: int
    text_with_markers: str
    target_ags: float

    def __post_init__(self) -> None:
        if self.text_with_markers.split().count(MARKER) != 2:
            raise ValueError("example must contain the marker exactly twice")
        if not 0.0 <= self.target_ags <= 1.0:
            raise ValueError("target must be in [0, 1]")


def mark_tokens(tokens: list[str], target_index: int) -> str:
    if not 0 <= target_index < len(tokens):
        raise IndexError(f"target index {target_index} out of range")
    marked = (
        tokens[:target_index]
        + [MARKER, tokens[target_index], MARKER]
        + tokens[target_index + 1:]
    )
    return " ".join(marked)


def strip_markers(text_with_markers: str) -> str:
    """Inverse of mark_tokens: drop the two marker tokens."""
    return " ".join(t for t in text_with_markers.split() if t != MARKER)


def make_examples(annotated_path: str | Path) -> list[MarkedExample]:
    """One example per (sentence, token) pair of an annotated corpus."""
    examples: list[MarkedExample] = []
    rejected = 0
    with open(annotated_path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            record = json.loads(line)
            tokens = record["tokens"]
            if MARKER in tokens:
                rejected += 1
                logger.warning(
                    "sentence %s (%s) contains the marker literal; skipped",
                    record["sentence_id"],
                    record["dialect"],
                )
                continue
            for i, score in enumerate(record["token_ags"]):
                examples.append(
                    MarkedExample(
                        sentence_id=record["sentence_id"],
                        dialect=record["dialect"],
                        token_index=i,
                        text_with_markers=mark_tokens(tokens, i),
                        target_ags=float(score),
                    )
                )
    if rejected:
        logger.warning("rejected %d sentences containing the marker", rejected)
    return examples


def save_examples(examples: list[MarkedExample], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for ex in examples:
            fh.write(
                f"{ex.sentence_id}\t{ex.dialect}\t{ex.token_index}\t"
                f"{ex.target_ags!r}\t{ex.text_with_markers}\n"
            )


def load_examples(path: str | Path) -> list[MarkedExample]:
    examples = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 5:
                raise ValueError(f"examples file line {lineno}: expected 5 columns")
            sid, dialect, idx, target, text = cols
            examples.append(
                MarkedExample(sid, dialect, int(idx), text, float(target))
            )
    return examples

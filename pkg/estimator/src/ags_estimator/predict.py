"""Inference over saved artifacts, single words or whole annotated files."""

from __future__ import annotations

import json
from pathlib import Path

import torch

from .data import mark_tokens
from .model import Vocab, build_model, encode_batch


class Regressor:
    """A trained artifact loaded for deterministic evaluation."""

    def __init__(self, directory: str | Path):
        directory = Path(directory)
        config = json.loads((directory / "config.json").read_text(encoding="utf-8"))
        self.vocab = Vocab.load(directory / "vocab.json")
        self.model = build_model(config["base_model"], len(self.vocab), config["dim"])
        self.model.load_state_dict(
            torch.load(directory / "model.pt", weights_only=True)
        )
        self.model.eval()

    def predict_marked(self, texts: list[str]) -> list[float]:
        if not texts:
            return []
        with torch.no_grad():
            ids, marker_pos = encode_batch(self.vocab, texts, self.model.max_len)
            values = self.model(ids, marker_pos)
        return [float(min(1.0, max(0.0, v))) for v in values]

    def predict(self, sentence: str, target_index: int) -> float:
        """Score one word in context; the sentence is whitespace-tokenized."""
        tokens = sentence.split()
        return self.predict_marked([mark_tokens(tokens, target_index)])[0]


def predict_annotated(
    regressor: Regressor,
    annotated_path: str | Path,
    out_path: str | Path,
    batch_size: int = 256,
) -> int:
    """Score every token of an annotated JSON-lines corpus.

    Writes `sentence_id<TAB>token_index<TAB>pred` rows, consumable by the
    pipeline's score-sentence and evaluate commands. Returns the row count.
    """
    records = []
    with open(annotated_path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                records.append(json.loads(line))
    ids = [r["sentence_id"] for r in records]
    multi = len(set(ids)) != len(ids)  # several dialects share a sentence id

    rows: list[tuple[str, int]] = []
    texts: list[str] = []
    for record in records:
        sid = (
            f"{record['sentence_id']}|{record['dialect']}"
            if multi
            else record["sentence_id"]
        )
        tokens = record["tokens"]
        for i in range(len(tokens)):
            rows.append((sid, i))
            texts.append(mark_tokens(tokens, i))

    written = 0
    with open(out_path, "w", encoding="utf-8") as fh:
        for start in range(0, len(texts), batch_size):
            values = regressor.predict_marked(texts[start : start + batch_size])
            for (sid, idx), value in zip(rows[start : start + batch_size], values):
                fh.write(f"{sid}\t{idx}\t{value!r}\n")
                written += 1
    return written

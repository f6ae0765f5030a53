"""Small trainable regressors over marked sentences.

Two presets are available through ``build_model``:

* ``tiny-transformer`` — embeddings + 2 encoder layers; the regression
  head reads the representation at the first marker position.
* ``bow`` — mean pooled embeddings of the marked sentence through an MLP.

Both end in a sigmoid, so predictions live in [0, 1] by construction.
"""

from __future__ import annotations

import json
from pathlib import Path

import torch
from torch import nn

from .data import MARKER

PAD, UNK = "[PAD]", "[UNK]"

PRESETS = ("tiny-transformer", "bow")


class Vocab:
    def __init__(self, tokens: list[str]):
        self.itos = [PAD, UNK, MARKER] + sorted(set(tokens) - {MARKER})
        self.stoi = {t: i for i, t in enumerate(self.itos)}

    def __len__(self) -> int:
        return len(self.itos)

    def encode(self, text: str) -> list[int]:
        unk = self.stoi[UNK]
        return [self.stoi.get(t, unk) for t in text.split()]

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.itos, ensure_ascii=False), encoding="utf-8"
        )

    @classmethod
    def load(cls, path: str | Path) -> "Vocab":
        vocab = cls([])
        vocab.itos = json.loads(Path(path).read_text(encoding="utf-8"))
        vocab.stoi = {t: i for i, t in enumerate(vocab.itos)}
        return vocab

    @classmethod
    def from_texts(cls, texts: list[str]) -> "Vocab":
        tokens: list[str] = []
        for text in texts:
            tokens.extend(text.split())
        return cls(tokens)


class TinyTransformerRegressor(nn.Module):
    def __init__(self, vocab_size: int, dim: int = 64, max_len: int = 256):
        super().__init__()
        self.embed = nn.Embedding(vocab_size, dim, padding_idx=0)
        self.pos = nn.Embedding(max_len, dim)
        layer = nn.TransformerEncoderLayer(
            d_model=dim, nhead=4, dim_feedforward=128, dropout=0.0,
            batch_first=True,
        )
        self.encoder = nn.TransformerEncoder(
            layer, num_layers=2, enable_nested_tensor=False
        )
        self.head = nn.Linear(dim, 1)
        self.max_len = max_len

    def forward(self, ids: torch.Tensor, marker_pos: torch.Tensor) -> torch.Tensor:
        positions = torch.arange(ids.size(1), device=ids.device).unsqueeze(0)
        x = self.embed(ids) + self.pos(positions)
        mask = ids.eq(0)
        x = self.encoder(x, src_key_padding_mask=mask)
        target = x[torch.arange(ids.size(0), device=ids.device), marker_pos]
        return torch.sigmoid(self.head(target)).squeeze(-1)


class BagOfEmbeddingsRegressor(nn.Module):
    def __init__(self, vocab_size: int, dim: int = 64, max_len: int = 256):
        super().__init__()
        self.embed = nn.Embedding(vocab_size, dim, padding_idx=0)
        self.mlp = nn.Sequential(nn.Linear(dim, dim), nn.ReLU(), nn.Linear(dim, 1))
        self.max_len = max_len

    def forward(self, ids: torch.Tensor, marker_pos: torch.Tensor) -> torch.Tensor:
        x = self.embed(ids)
        keep = ids.ne(0).unsqueeze(-1)
        pooled = (x * keep).sum(1) / keep.sum(1).clamp(min=1)
        return torch.sigmoid(self.mlp(pooled)).squeeze(-1)


def build_model(base_model: str, vocab_size: int, dim: int = 64) -> nn.Module:
    if base_model == "tiny-transformer":
        return TinyTransformerRegressor(vocab_size, dim)
    if base_model == "bow":
        return BagOfEmbeddingsRegressor(vocab_size, dim)
    raise ValueError(
        f"unknown base model {base_model!r}; available presets: {', '.join(PRESETS)}"
    )


def encode_batch(
    vocab: Vocab, texts: list[str], max_len: int
) -> tuple[torch.Tensor, torch.Tensor]:
    """Pad-encode texts and locate the first marker token in each."""
    marker_id = vocab.stoi[MARKER]
    encoded = [vocab.encode(t)[:max_len] for t in texts]
    width = max(len(e) for e in encoded)
    ids = torch.zeros(len(encoded), width, dtype=torch.long)
    marker_pos = torch.zeros(len(encoded), dtype=torch.long)
    for row, e in enumerate(encoded):
        ids[row, : len(e)] = torch.tensor(e)
        marker_pos[row] = e.index(marker_id) if marker_id in e else 0
    return ids, marker_pos

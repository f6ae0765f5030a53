"""Training loop: MSE regression with linear LR decay and early stopping."""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass
from pathlib import Path

import torch
from torch import nn

from .data import MarkedExample
from .model import Vocab, build_model, encode_batch


@dataclass(frozen=True)
class TrainConfig:
    batch_size: int = 32
    lr: float = 4e-5
    max_steps: int = 10_000
    eval_every: int = 50
    patience: int = 10          # evaluations without improvement before stopping
    seed: int = 42
    val_fraction: float = 0.1
    dim: int = 64

    def __post_init__(self) -> None:
        for name in ("batch_size", "lr", "max_steps", "eval_every", "patience", "dim"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 < self.val_fraction < 1.0:
            raise ValueError("val_fraction must be in (0, 1)")


def split_by_sentence(
    examples: list[MarkedExample], val_fraction: float, seed: int
) -> tuple[list[MarkedExample], list[MarkedExample]]:
    """Hold out whole sentences, so no sentence leaks tokens across the split."""
    ids = sorted({(e.sentence_id, e.dialect) for e in examples})
    rng = random.Random(seed)
    rng.shuffle(ids)
    n_val = max(1, int(len(ids) * val_fraction))
    val_ids = set(ids[:n_val])
    train = [e for e in examples if (e.sentence_id, e.dialect) not in val_ids]
    val = [e for e in examples if (e.sentence_id, e.dialect) in val_ids]
    if not train:
        train, val = val, []
    return train, val


def _mse(model: nn.Module, vocab: Vocab, batch: list[MarkedExample]) -> torch.Tensor:
    ids, marker_pos = encode_batch(vocab, [e.text_with_markers for e in batch], model.max_len)
    targets = torch.tensor([e.target_ags for e in batch], dtype=torch.float32)
    return nn.functional.mse_loss(model(ids, marker_pos), targets)


def train(
    examples: list[MarkedExample],
    base_model: str = "tiny-transformer",
    cfg: TrainConfig = TrainConfig(),
    out_dir: str | Path = "artifact",
) -> Path:
    """Fit a regressor and save the best-validation checkpoint.

    The artifact directory holds model.pt, vocab.json, config.json, and
    loss_log.tsv (step, train_mse, val_mse per evaluation).
    """
    if not examples:
        raise ValueError("no training examples")
    for e in examples:
        if not 0.0 <= e.target_ags <= 1.0:
            raise ValueError(f"target out of range: {e.target_ags}")

    torch.manual_seed(cfg.seed)
    train_set, val_set = split_by_sentence(examples, cfg.val_fraction, cfg.seed)
    vocab = Vocab.from_texts([e.text_with_markers for e in train_set])
    model = build_model(base_model, len(vocab), cfg.dim)
    optimizer = torch.optim.AdamW(model.parameters(), lr=cfg.lr)
    # linear decay to zero, no warmup
    scheduler = torch.optim.lr_scheduler.LambdaLR(
        optimizer, lambda step: max(0.0, 1.0 - step / cfg.max_steps)
    )

    rng = random.Random(cfg.seed)
    order = list(range(len(train_set)))
    log: list[tuple[int, float, float]] = []
    best_val = float("inf")
    best_state = {k: v.clone() for k, v in model.state_dict().items()}
    stale = 0
    cursor = len(order)  # forces a shuffle on the first batch

    running_sum, running_n = 0.0, 0
    for step in range(1, cfg.max_steps + 1):
        if cursor >= len(order):
            rng.shuffle(order)
            cursor = 0
        batch = [train_set[i] for i in order[cursor : cursor + cfg.batch_size]]
        cursor += cfg.batch_size

        model.train()
        loss = _mse(model, vocab, batch)
        optimizer.zero_grad()
        loss.backward()
        optimizer.step()
        scheduler.step()
        running_sum += loss.detach().item()
        running_n += 1

        if step % cfg.eval_every == 0 or step == cfg.max_steps:
            model.eval()
            with torch.no_grad():
                val_mse = (
                    float(_mse(model, vocab, val_set))
                    if val_set
                    else loss.detach().item()
                )
            log.append((step, running_sum / running_n, val_mse))
            running_sum, running_n = 0.0, 0
            if val_mse < best_val - 1e-6:
                best_val = val_mse
                best_state = {k: v.clone() for k, v in model.state_dict().items()}
                stale = 0
            else:
                stale += 1
                if stale >= cfg.patience:
                    break

    model.load_state_dict(best_state)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    torch.save(model.state_dict(), out / "model.pt")
    vocab.save(out / "vocab.json")
    (out / "config.json").write_text(
        json.dumps(
            {"base_model": base_model, "vocab_size": len(vocab), **asdict(cfg)},
            indent=2,
            sort_keys=True,
        )
        + "\n",
        encoding="utf-8",
    )
    with open(out / "loss_log.tsv", "w", encoding="utf-8") as fh:
        for step, train_mse, val_mse in log:
            fh.write(f"{step}\t{train_mse!r}\t{val_mse!r}\n")
    return out

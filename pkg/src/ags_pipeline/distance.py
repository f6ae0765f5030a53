"""Weighted Levenshtein distance with etymology-aware substitution costs.

Any object exposing ``cost_between(CharContext, CharContext) -> float`` can
drive the DP, so tests can plug in arbitrary cost models.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .etymology import CharContext, EtymologyModel

_SUB, _DEL, _INS = 0, 1, 2  # tie-break preference order for the edit script


@dataclass(frozen=True)
class IndelConfig:
    indel_cost: float = 1.0

    def __post_init__(self) -> None:
        if self.indel_cost <= 0:
            raise ValueError("indel_cost must be positive")


@dataclass(frozen=True)
class EditOp:
    op: str                      # "sub" | "del" | "ins"
    x_char: str | None
    y_char: str | None
    cost: float
    best_etymology: tuple[str, str, str, str] | None = None


@dataclass(frozen=True)
class DistanceResult:
    raw: float
    normalized: float
    ops: tuple[EditOp, ...]


def distance(
    x: str,
    d_x: str,
    y: str,
    d_y: str,
    model,
    costs: IndelConfig = IndelConfig(),
    with_etymologies: bool = False,
) -> DistanceResult:
    """Minimum-cost edit distance between two words from two dialects.

    ``normalized`` divides the raw cost by max(len(x), len(y)) and clamps to
    [0, 1]. Tie-breaking prefers substitution, then deletion, then insertion.
    """
    if not x or not y:
        raise ValueError("both words must be non-empty")
    n, m = len(x), len(y)
    indel = costs.indel_cost

    sub_cost = _SubCache(model, d_x, d_y)
    cost = [[0.0] * (m + 1) for _ in range(n + 1)]
    op = [[_DEL] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        cost[i][0] = i * indel
        op[i][0] = _DEL
    for j in range(1, m + 1):
        cost[0][j] = j * indel
        op[0][j] = _INS
    for i in range(1, n + 1):
        row = cost[i]
        prev = cost[i - 1]
        xc = x[i - 1]
        for j in range(1, m + 1):
            candidates = (
                (prev[j - 1] + sub_cost.get(xc, y[j - 1]), _SUB),
                (prev[j] + indel, _DEL),
                (row[j - 1] + indel, _INS),
            )
            best, which = candidates[0]
            for c, o in candidates[1:]:
                if c < best:
                    best, which = c, o
            row[j], op[i][j] = best, which

    ops: list[EditOp] = []
    i, j = n, m
    while i > 0 or j > 0:
        o = op[i][j]
        if i > 0 and j > 0 and o == _SUB:
            xc, yc = x[i - 1], y[j - 1]
            best = None
            if with_etymologies and isinstance(model, EtymologyModel):
                best = model.best_etymology(
                    CharContext(xc, d_x), CharContext(yc, d_y)
                )
            ops.append(EditOp("sub", xc, yc, sub_cost.get(xc, yc), best))
            i, j = i - 1, j - 1
        elif i > 0 and (o == _DEL or j == 0):
            ops.append(EditOp("del", x[i - 1], None, indel))
            i -= 1
        else:
            ops.append(EditOp("ins", None, y[j - 1], indel))
            j -= 1
    raw = cost[n][m]
    return DistanceResult(
        raw=raw,
        normalized=min(1.0, raw / max(n, m)),
        ops=tuple(reversed(ops)),
    )


class _SubCache:
    """Per-call memo of substitution costs for one dialect pair."""

    def __init__(self, model, d_x: str, d_y: str):
        self._model = model
        self._d_x = d_x
        self._d_y = d_y
        self._memo: dict[tuple[str, str], float] = {}

    def get(self, xc: str, yc: str) -> float:
        key = (xc, yc)
        value = self._memo.get(key)
        if value is None:
            value = self._model.cost_between(
                CharContext(xc, self._d_x), CharContext(yc, self._d_y)
            )
            self._memo[key] = value
        return value


def distance_matrix(
    words: list[tuple[str, str]],
    model,
    costs: IndelConfig = IndelConfig(),
) -> np.ndarray:
    """Symmetric matrix of normalized distances over (word, dialect) pairs."""
    if not words:
        raise ValueError("word list must be non-empty")
    size = len(words)
    matrix = np.zeros((size, size))
    for i, (wi, di) in enumerate(words):
        for j in range(i, size):
            wj, dj = words[j]
            value = distance(wi, di, wj, dj, model, costs).normalized
            matrix[i, j] = value
            matrix[j, i] = value
    return matrix


def dump_edit_scripts(
    pairs: list[tuple[str, str, str, str]],
    model,
    path: str | Path,
    costs: IndelConfig = IndelConfig(),
) -> None:
    """Debug dump: one JSON line per (x, d_x, y, d_y) pair with its edit script."""
    with open(path, "w", encoding="utf-8") as fh:
        for x, d_x, y, d_y in pairs:
            result = distance(x, d_x, y, d_y, model, costs, with_etymologies=True)
            record = {
                "x": x,
                "d_x": d_x,
                "y": y,
                "d_y": d_y,
                "raw": result.raw,
                "normalized": result.normalized,
                "ops": [
                    {
                        "op": op.op,
                        "x": op.x_char,
                        "y": op.y_char,
                        "cost": op.cost,
                        "etymology": list(op.best_etymology) if op.best_etymology else None,
                    }
                    for op in result.ops
                ],
            }
            fh.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")

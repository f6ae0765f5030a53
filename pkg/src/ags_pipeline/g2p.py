"""Grapheme-to-phoneme Levenshtein alignment guided by the phoneme inventory.

Aligning a normalized spelling to its phoneme sequence yields the
(grapheme, phoneme) pairs that feed every probability table downstream.
Unwritten vowels surface as phoneme insertions paired with GAP.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .corpus import CaphiInventory, LexiconEntry, RawSpellingPair
from .errors import ParseError

GAP = "<GAP>"
POOLED = "<ALL>"

# CAPHI-style vowel symbols; insertions of these cost less than consonants
# so unwritten short/long vowels align as (GAP, vowel) pairs.
DEFAULT_VOWELS = frozenset(
    ["a", "aa", "i", "ii", "u", "uu", "e", "ee", "o", "oo"]
)

_SUB, _INS, _DEL = 0, 1, 2  # tie-break preference order


@dataclass(frozen=True)
class G2PPair:
    grapheme: str  # symbol or GAP
    phoneme: str   # symbol or GAP

    def __post_init__(self) -> None:
        if self.grapheme == GAP and self.phoneme == GAP:
            raise ValueError("at most one side of a pair may be GAP")


@dataclass(frozen=True)
class G2PAlignment:
    entry: LexiconEntry | None
    pairs: tuple[G2PPair, ...]

    @property
    def graphemes(self) -> tuple[str, ...]:
        return tuple(p.grapheme for p in self.pairs if p.grapheme != GAP)

    @property
    def phonemes(self) -> tuple[str, ...]:
        return tuple(p.phoneme for p in self.pairs if p.phoneme != GAP)


def g2p_cost(
    coda: str,
    caphi: tuple[str, ...],
    inventory: CaphiInventory,
    vowels: frozenset[str] = DEFAULT_VOWELS,
) -> float:
    """Minimum alignment cost only (no backtrace)."""
    return _align(coda, caphi, inventory, vowels)[0]


def align_g2p(
    coda: str,
    caphi: tuple[str, ...],
    inventory: CaphiInventory,
    vowels: frozenset[str] = DEFAULT_VOWELS,
    entry: LexiconEntry | None = None,
) -> G2PAlignment:
    """One minimum-cost grapheme/phoneme alignment.

    Costs: inventory-compatible pair 0, other substitution 1, indel 1,
    vowel-phoneme insertion 0.5. Ties prefer substitution, then insertion,
    then deletion, which makes the result deterministic.
    """
    if not coda or not caphi:
        raise ValueError("both sequences must be non-empty")
    _, pairs = _align(coda, caphi, inventory, vowels)
    return G2PAlignment(entry=entry, pairs=pairs)


def _align(
    coda: str,
    caphi: tuple[str, ...],
    inventory: CaphiInventory,
    vowels: frozenset[str],
) -> tuple[float, tuple[G2PPair, ...]]:
    n, m = len(coda), len(caphi)

    def ins_cost(ph: str) -> float:
        return 0.5 if ph in vowels else 1.0

    cost = [[0.0] * (m + 1) for _ in range(n + 1)]
    op = [[_DEL] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        cost[i][0] = cost[i - 1][0] + 1.0
        op[i][0] = _DEL
    for j in range(1, m + 1):
        cost[0][j] = cost[0][j - 1] + ins_cost(caphi[j - 1])
        op[0][j] = _INS
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            sub = 0.0 if inventory.compatible(coda[i - 1], caphi[j - 1]) else 1.0
            candidates = (
                (cost[i - 1][j - 1] + sub, _SUB),
                (cost[i][j - 1] + ins_cost(caphi[j - 1]), _INS),
                (cost[i - 1][j] + 1.0, _DEL),
            )
            best, which = candidates[0]
            for c, o in candidates[1:]:
                if c < best:
                    best, which = c, o
            cost[i][j], op[i][j] = best, which

    pairs: list[G2PPair] = []
    i, j = n, m
    while i > 0 or j > 0:
        o = op[i][j]
        if i > 0 and j > 0 and o == _SUB:
            pairs.append(G2PPair(coda[i - 1], caphi[j - 1]))
            i, j = i - 1, j - 1
        elif j > 0 and (o == _INS or i == 0):
            pairs.append(G2PPair(GAP, caphi[j - 1]))
            j -= 1
        else:
            pairs.append(G2PPair(coda[i - 1], GAP))
            i -= 1
    return cost[n][m], tuple(reversed(pairs))


class G2PCountTable:
    """Joint (grapheme, phoneme) counts per dialect, GAP events included."""

    def __init__(self, phonemes: frozenset[str] = frozenset()):
        self.phonemes = phonemes  # declared support, never includes GAP
        self.counts: Counter[tuple[str, str, str]] = Counter()

    def add(self, dialect: str, grapheme: str, phoneme: str, n: int = 1) -> None:
        self.counts[(dialect, grapheme, phoneme)] += n

    def __add__(self, other: "G2PCountTable") -> "G2PCountTable":
        merged = G2PCountTable(self.phonemes | other.phonemes)
        merged.counts = self.counts + other.counts
        return merged

    def total(self) -> int:
        return sum(self.counts.values())

    def dialects(self) -> tuple[str, ...]:
        return tuple(sorted({d for d, _, _ in self.counts}))

    def pooled(self) -> Counter[tuple[str, str]]:
        pooled: Counter[tuple[str, str]] = Counter()
        for (_, g, p), n in self.counts.items():
            pooled[(g, p)] += n
        return pooled

    def graphemes(self) -> frozenset[str]:
        return frozenset(g for _, g, _ in self.counts if g != GAP)

    def observed_phonemes(self) -> frozenset[str]:
        return frozenset(p for _, _, p in self.counts if p != GAP)

    def to_tsv(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for (d, g, p), n in sorted(self.counts.items()):
                fh.write(f"{d}\t{g}\t{p}\t{n}\n")

    @classmethod
    def from_tsv(cls, path: str | Path, phonemes: frozenset[str] = frozenset()) -> "G2PCountTable":
        table = cls(phonemes)
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                cols = line.split("\t")
                if len(cols) != 4:
                    raise ParseError(f"count table line {lineno}: expected 4 columns")
                try:
                    table.add(cols[0], cols[1], cols[2], int(cols[3]))
                except ValueError:
                    raise ParseError(f"count table line {lineno}: bad count {cols[3]!r}") from None
        if not phonemes:
            table.phonemes = table.observed_phonemes()
        return table


def collect_g2p_counts(
    lexicon: list[LexiconEntry],
    inventory: CaphiInventory,
    vowels: frozenset[str] = DEFAULT_VOWELS,
) -> G2PCountTable:
    """Align every entry and accumulate per-dialect joint counts."""
    table = G2PCountTable(inventory.phonemes)
    for entry in lexicon:
        alignment = align_g2p(entry.coda, entry.caphi, inventory, vowels, entry)
        for pair in alignment.pairs:
            table.add(entry.dialect, pair.grapheme, pair.phoneme)
    return table


def collect_raw_counts(
    pairs: list[RawSpellingPair],
    inventory: CaphiInventory,
    vowels: frozenset[str] = DEFAULT_VOWELS,
) -> G2PCountTable:
    """Counts over (raw grapheme, phoneme) pairs from unnormalized spellings."""
    table = G2PCountTable(inventory.phonemes)
    for pair in pairs:
        alignment = align_g2p(pair.raw, pair.caphi, inventory, vowels)
        for g2p_pair in alignment.pairs:
            table.add(pair.dialect, g2p_pair.grapheme, g2p_pair.phoneme)
    return table

"""Corpus, lexicon, and phoneme-inventory data types plus their TSV loaders.

File layouts (UTF-8, tab-separated):

* corpus:      ``sentence_id<TAB>dialect<TAB>text``
* lexicon:     ``concept_id<TAB>dialect<TAB>coda<TAB>caphi`` (caphi space-separated)
* inventory:   ``phoneme<TAB>grapheme<TAB>is_default(0|1)``
* multi-label: ``text<TAB>comma-separated valid dialect codes<TAB>n``
* raw pairs:   ``dialect<TAB>raw<TAB>coda<TAB>caphi`` (caphi space-separated)

All loaders apply Unicode NFC normalization and return immutable structures
that are safe to share across workers.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError, ValidationError

MSA = "MSA"

_ALEF_YA_FOLD = str.maketrans({"أ": "ا", "إ": "ا", "آ": "ا", "ٱ": "ا", "ى": "ي"})


@dataclass(frozen=True)
class Token:
    surface: str
    index: int


@dataclass(frozen=True)
class Sentence:
    sentence_id: str
    dialect: str
    raw_text: str
    tokens: tuple[Token, ...]


@dataclass(frozen=True)
class ParallelBucket:
    """All translations of one sentence id, at most one per dialect."""

    sentence_id: str
    sentences: dict[str, Sentence]

    def has_anchor(self, anchor: str = MSA) -> bool:
        return anchor in self.sentences


@dataclass(frozen=True)
class ParallelCorpus:
    buckets: tuple[ParallelBucket, ...]
    dialects: tuple[str, ...]  # sorted, fixed at load time

    def __len__(self) -> int:
        return len(self.buckets)


@dataclass(frozen=True)
class LexiconEntry:
    concept_id: str
    dialect: str
    coda: str                 # grapheme sequence, one char per grapheme
    caphi: tuple[str, ...]    # phoneme symbols, possibly multi-char


@dataclass(frozen=True)
class RawSpellingPair:
    """An unnormalized spelling paired with its normalized form and phonemes."""

    dialect: str
    raw: str
    coda: str
    caphi: tuple[str, ...]


@dataclass(frozen=True)
class MultiLabelSentence:
    text: str
    valid_dialects: frozenset[str]
    total_dialects: int

    def __post_init__(self) -> None:
        if not 1 <= len(self.valid_dialects) <= self.total_dialects:
            raise ValidationError(
                f"need 1 <= |valid_dialects| <= n, got {len(self.valid_dialects)} of "
                f"{self.total_dialects}"
            )


class CaphiInventory:
    """Phoneme/grapheme inventory with per-phoneme default grapheme mappings."""

    def __init__(self, rows: list[tuple[str, str, bool]]):
        self._default: dict[str, str] = {}
        self._compatible: dict[str, set[str]] = {}
        self._by_grapheme: dict[str, set[str]] = {}
        seen: set[tuple[str, str]] = set()
        for phoneme, grapheme, is_default in rows:
            if (phoneme, grapheme) in seen:
                raise ValidationError(f"duplicate inventory mapping ({phoneme}, {grapheme})")
            seen.add((phoneme, grapheme))
            if is_default:
                if phoneme in self._default:
                    raise ValidationError(f"phoneme {phoneme!r} has multiple default graphemes")
                self._default[phoneme] = grapheme
            self._compatible.setdefault(phoneme, set()).add(grapheme)
            self._by_grapheme.setdefault(grapheme, set()).add(phoneme)
        missing = sorted(set(self._compatible) - set(self._default))
        if missing:
            raise ValidationError(f"phonemes without a default grapheme: {missing}")

    @property
    def phonemes(self) -> frozenset[str]:
        return frozenset(self._compatible)

    @property
    def graphemes(self) -> frozenset[str]:
        return frozenset(self._by_grapheme)

    def default_grapheme(self, phoneme: str) -> str:
        return self._default[phoneme]

    def compatible(self, grapheme: str, phoneme: str) -> bool:
        return grapheme in self._compatible.get(phoneme, ())

    def phonemes_for(self, grapheme: str) -> frozenset[str]:
        """All phonemes the inventory allows this grapheme to realize."""
        return frozenset(self._by_grapheme.get(grapheme, ()))

    def default_phonemes_for(self, grapheme: str) -> frozenset[str]:
        """Phonemes whose default grapheme is this grapheme."""
        return frozenset(p for p, g in self._default.items() if g == grapheme)


def normalize_text(text: str, fold_alef_ya: bool = False) -> str:
    out = unicodedata.normalize("NFC", text)
    if fold_alef_ya:
        out = out.translate(_ALEF_YA_FOLD)
    return out


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def _detach_punct(chunk: str) -> list[str]:
    lead: list[str] = []
    trail: list[str] = []
    while len(chunk) > 1 and _is_punct(chunk[0]):
        lead.append(chunk[0])
        chunk = chunk[1:]
    while len(chunk) > 1 and _is_punct(chunk[-1]):
        trail.append(chunk[-1])
        chunk = chunk[:-1]
    return lead + [chunk] + trail[::-1]


def tokenize(raw_text: str, fold_alef_ya: bool = False) -> list[Token]:
    """Whitespace split plus detachment of leading/trailing punctuation.

    Deterministic and idempotent: re-tokenizing the joined surfaces yields
    the same surfaces. Each detached punctuation character becomes its own
    token.
    """
    text = normalize_text(raw_text, fold_alef_ya)
    surfaces: list[str] = []
    for chunk in text.split():
        surfaces.extend(_detach_punct(chunk))
    return [Token(surface, i) for i, surface in enumerate(surfaces)]


def _read_rows(path: str | Path, n_cols: int, what: str):
    """Yield (line_number, columns) for every non-empty line."""
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != n_cols:
                raise ParseError(
                    f"{what} line {lineno}: expected {n_cols} columns, got {len(cols)}"
                )
            yield lineno, cols


def load_parallel_corpus(
    path: str | Path,
    allowed_dialects: set[str] | None = None,
    fold_alef_ya: bool = False,
) -> ParallelCorpus:
    """Load a sentence-aligned corpus, grouping rows into per-id buckets.

    Bucket order follows first appearance of each sentence id. When
    ``allowed_dialects`` is given, rows with other dialect codes fail
    validation.
    """
    buckets: dict[str, dict[str, Sentence]] = {}
    dialects: set[str] = set()
    for lineno, (sid, dialect, text) in _read_rows(path, 3, "corpus"):
        if not sid or not dialect:
            raise ValidationError(f"corpus line {lineno}: empty sentence id or dialect")
        if allowed_dialects is not None and dialect not in allowed_dialects:
            raise ValidationError(f"corpus line {lineno}: unknown dialect code {dialect!r}")
        text = normalize_text(text, fold_alef_ya)
        sentences = buckets.setdefault(sid, {})
        if dialect in sentences:
            raise ValidationError(f"corpus line {lineno}: duplicate ({sid}, {dialect})")
        sentences[dialect] = Sentence(
            sid, dialect, text, tuple(tokenize(text, fold_alef_ya))
        )
        dialects.add(dialect)
    return ParallelCorpus(
        buckets=tuple(ParallelBucket(sid, sents) for sid, sents in buckets.items()),
        dialects=tuple(sorted(dialects)),
    )


def dump_parallel_corpus(corpus: ParallelCorpus, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for bucket in corpus.buckets:
            for dialect in sorted(bucket.sentences):
                sent = bucket.sentences[dialect]
                fh.write(f"{bucket.sentence_id}\t{dialect}\t{sent.raw_text}\n")


def load_caphi_table(path: str | Path) -> CaphiInventory:
    rows = []
    for lineno, (phoneme, grapheme, flag) in _read_rows(path, 3, "inventory"):
        if flag not in ("0", "1"):
            raise ParseError(f"inventory line {lineno}: is_default must be 0 or 1")
        if not phoneme or not grapheme:
            raise ValidationError(f"inventory line {lineno}: empty phoneme or grapheme")
        rows.append((phoneme, normalize_text(grapheme), flag == "1"))
    return CaphiInventory(rows)


def load_lexicon(path: str | Path, inventory: CaphiInventory) -> list[LexiconEntry]:
    entries = []
    for lineno, (concept, dialect, coda, caphi) in _read_rows(path, 4, "lexicon"):
        coda = normalize_text(coda)
        phonemes = tuple(caphi.split())
        if not coda or not phonemes:
            raise ValidationError(f"lexicon line {lineno}: empty coda or caphi")
        unknown = [p for p in phonemes if p not in inventory.phonemes]
        if unknown:
            raise ValidationError(
                f"lexicon line {lineno}: phoneme(s) {unknown} not in inventory"
            )
        entries.append(LexiconEntry(concept, dialect, coda, phonemes))
    return entries


def load_raw_pairs(path: str | Path, inventory: CaphiInventory) -> list[RawSpellingPair]:
    pairs = []
    for lineno, (dialect, raw, coda, caphi) in _read_rows(path, 4, "raw pairs"):
        raw = normalize_text(raw)
        coda = normalize_text(coda)
        phonemes = tuple(caphi.split())
        if not raw or not phonemes:
            raise ValidationError(f"raw pairs line {lineno}: empty raw or caphi")
        unknown = [p for p in phonemes if p not in inventory.phonemes]
        if unknown:
            raise ValidationError(
                f"raw pairs line {lineno}: phoneme(s) {unknown} not in inventory"
            )
        pairs.append(RawSpellingPair(dialect, raw, coda, phonemes))
    return pairs


def load_multilabel(path: str | Path) -> list[MultiLabelSentence]:
    items = []
    for lineno, (text, labels, n) in _read_rows(path, 3, "multi-label"):
        try:
            total = int(n)
        except ValueError:
            raise ParseError(f"multi-label line {lineno}: n must be an integer") from None
        if total <= 0:
            raise ValidationError(f"multi-label line {lineno}: n must be positive")
        valid = frozenset(code.strip() for code in labels.split(",") if code.strip())
        if not valid:
            raise ValidationError(f"multi-label line {lineno}: no valid dialect codes")
        if len(valid) > total:
            raise ValidationError(
                f"multi-label line {lineno}: {len(valid)} labels exceed n={total}"
            )
        items.append(MultiLabelSentence(normalize_text(text), valid, total))
    return items

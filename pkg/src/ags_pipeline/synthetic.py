"""Deterministic synthetic fixtures shaped like the real inputs.

Real corpora in this domain are licensed, so the generator fabricates a
six-dialect parallel corpus, lexicon, phoneme inventory, raw-spelling
pairs, and a multi-label file with the same shapes: shared roots spelled
etymologically, per-dialect phonology, phonetic respellings in the raw
text, and dialect-specific vocabulary mixed in.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

DIALECTS = ("MSA", "BEI", "CAI", "DOH", "RAB", "TUN")

_CONSONANTS = "قلبجدرسكتمنعحفهوي"

# MSA realization of each letter, plus per-dialect overrides.
_BASE_PHONEME = {
    "ق": "q", "ل": "l", "ب": "b", "ج": "j", "د": "d", "ر": "r", "س": "s",
    "ك": "k", "ت": "t", "م": "m", "ن": "n", "ع": "3", "ح": "7", "ف": "f",
    "ه": "h", "و": "w", "ي": "y", "ا": "aa", "أ": "2", "ء": "2",
}
_DIALECT_PHONEME = {
    "BEI": {"ق": "2"},
    "CAI": {"ق": "2", "ج": "g"},
    "DOH": {"ق": "g", "ج": "y"},
    "TUN": {"ق": "g"},
    "RAB": {},
    "MSA": {},
}
# Phonetic respelling applied to raw corpus text and raw-pairs files.
_RAW_SPELLING = {
    "BEI": {"ق": "أ"},
    "CAI": {"ق": "أ"},
    "DOH": {"ج": "ي"},
    "TUN": {},
    "RAB": {},
    "MSA": {},
}

_VOWELS = ("a", "i", "u")

# MSA-only particles: never aligned, they give MSA its share of specific words.
_MSA_PARTICLES = ("قد", "سوف", "إن", "لقد")

_INVENTORY_ROWS = [
    ("q", "ق", 1),
    ("2", "ء", 1), ("2", "أ", 0), ("2", "ق", 0), ("2", "ا", 0),
    ("g", "ق", 1), ("g", "ج", 0),
    ("j", "ج", 1),
    ("dj", "ج", 1),
    ("y", "ي", 1), ("y", "ج", 0),
    ("l", "ل", 1), ("b", "ب", 1), ("d", "د", 1), ("r", "ر", 1),
    ("s", "س", 1), ("k", "ك", 1), ("t", "ت", 1), ("m", "م", 1),
    ("n", "ن", 1), ("3", "ع", 1), ("7", "ح", 1), ("f", "ف", 1),
    ("h", "ه", 1), ("w", "و", 1), ("p", "ب", 1),
    ("a", "ا", 1), ("aa", "ا", 1), ("i", "ي", 1), ("ii", "ي", 1),
    ("u", "و", 1), ("uu", "و", 1), ("e", "ي", 1), ("ee", "ي", 1),
    ("o", "و", 1), ("oo", "و", 1),
]


@dataclass(frozen=True)
class FixturePaths:
    corpus: Path
    lexicon: Path
    inventory: Path
    raw_pairs: Path
    multilabel: Path


def _respell(word: str, dialect: str) -> str:
    table = _RAW_SPELLING[dialect]
    return "".join(table.get(ch, ch) for ch in word)


def _caphi(word: str, dialect: str, vowel: str, slot: int) -> str:
    phoneme_map = dict(_BASE_PHONEME, **_DIALECT_PHONEME[dialect])
    phonemes = [phoneme_map[ch] for ch in word]
    if len(phonemes) > 1:
        phonemes.insert(min(slot, len(phonemes) - 1), vowel)
    return " ".join(phonemes)


class _Concept:
    def __init__(self, concept_id: str, rng: random.Random):
        self.concept_id = concept_id
        length = rng.randint(2, 5)
        self.msa_word = "".join(rng.choice(_CONSONANTS) for _ in range(length))
        self.vowel = rng.choice(_VOWELS)
        self.slot = rng.randint(1, max(1, length - 1))
        self.forms: dict[str, str] = {}
        for dialect in DIALECTS:
            if dialect != "MSA" and rng.random() < 0.3:
                alt_len = rng.randint(2, 5)
                self.forms[dialect] = "".join(
                    rng.choice(_CONSONANTS) for _ in range(alt_len)
                )
            else:
                self.forms[dialect] = self.msa_word

    def coda(self, dialect: str) -> str:
        return self.forms[dialect]

    def surface(self, dialect: str) -> str:
        return _respell(self.forms[dialect], dialect)

    def caphi(self, dialect: str) -> str:
        return _caphi(self.forms[dialect], dialect, self.vowel, self.slot)


def write_inventory(path: Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for phoneme, grapheme, default in _INVENTORY_ROWS:
            fh.write(f"{phoneme}\t{grapheme}\t{default}\n")


def generate_fixtures(
    outdir: str | Path,
    n_buckets: int = 2000,
    n_concepts: int = 48,
    n_lexicon_concepts: int = 400,
    n_multilabel: int = 60,
    seed: int = 42,
) -> FixturePaths:
    """Write the full fixture family into outdir and return the paths.

    The lexicon covers many more concepts than the corpus uses, like its
    real counterpart, so per-character counts dominate the smoothing mass.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    pool = [
        _Concept(f"c{i:03d}", rng) for i in range(max(n_concepts, n_lexicon_concepts))
    ]
    concepts = pool[:n_concepts]

    paths = FixturePaths(
        corpus=outdir / "corpus.tsv",
        lexicon=outdir / "lexicon.tsv",
        inventory=outdir / "inventory.tsv",
        raw_pairs=outdir / "raw_pairs.tsv",
        multilabel=outdir / "multilabel.tsv",
    )
    write_inventory(paths.inventory)

    with open(paths.lexicon, "w", encoding="utf-8") as fh:
        for concept in pool:
            for dialect in DIALECTS:
                fh.write(
                    f"{concept.concept_id}\t{dialect}\t{concept.coda(dialect)}\t"
                    f"{concept.caphi(dialect)}\n"
                )

    with open(paths.raw_pairs, "w", encoding="utf-8") as fh:
        for concept in pool:
            for dialect in DIALECTS:
                raw = concept.surface(dialect)
                if raw != concept.coda(dialect):
                    fh.write(
                        f"{dialect}\t{raw}\t{concept.coda(dialect)}\t"
                        f"{concept.caphi(dialect)}\n"
                    )

    with open(paths.corpus, "w", encoding="utf-8") as fh:
        for b in range(n_buckets):
            sid = f"b{b:05d}"
            picked = rng.sample(concepts, rng.randint(3, 5))
            conjunction = rng.random() < 0.25
            period = rng.random() < 0.3
            drop = rng.choice(DIALECTS[1:]) if rng.random() < 0.03 else None
            drop_msa = rng.random() < 0.01
            for dialect in DIALECTS:
                if dialect == drop or (dialect == "MSA" and drop_msa):
                    continue
                words = [c.surface(dialect) for c in picked]
                if conjunction and len(words) > 1:
                    words[1] = "و" + words[1]
                if dialect == "MSA" and rng.random() < 0.4:
                    words.insert(0, rng.choice(_MSA_PARTICLES))
                text = " ".join(words) + ("." if period else "")
                fh.write(f"{sid}\t{dialect}\t{text}\n")

    with open(paths.multilabel, "w", encoding="utf-8") as fh:
        labels = [f"D{i:02d}" for i in range(11)]
        for _ in range(n_multilabel):
            n_valid = rng.randint(1, 11)
            valid = rng.sample(labels, n_valid)
            text = " ".join(
                rng.choice(concepts).surface("MSA") for _ in range(rng.randint(3, 6))
            )
            fh.write(f"{text}\t{','.join(sorted(valid))}\t11\n")

    return paths


def main(argv: list[str] | None = None) -> int:
    import argparse

    parser = argparse.ArgumentParser(description="generate synthetic pipeline fixtures")
    parser.add_argument("outdir")
    parser.add_argument("--buckets", type=int, default=2000)
    parser.add_argument("--concepts", type=int, default=48)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args(argv)
    paths = generate_fixtures(
        args.outdir, n_buckets=args.buckets, n_concepts=args.concepts, seed=args.seed
    )
    for name in ("corpus", "lexicon", "inventory", "raw_pairs", "multilabel"):
        print(getattr(paths, name))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

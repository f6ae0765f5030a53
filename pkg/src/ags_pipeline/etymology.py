"""Etymology-aware substitution costs for cross-dialect character pairs.

Three estimated components drive the model: phoneme-given-etymon and
phoneme-given-orthography conditionals, plus a heuristic detector for
etymology-preserving spellings. Composing them gives, for any observed
character in a dialect, a posterior over its underlying etymological
character; the substitution cost of two characters is one minus the
probability that they share an etymon.
"""

from __future__ import annotations

import json
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import CaphiInventory, LexiconEntry, RawSpellingPair
from .errors import ParseError, PipelineError
from .g2p import (
    DEFAULT_VOWELS,
    GAP,
    POOLED,
    G2PCountTable,
    align_g2p,
    collect_g2p_counts,
    collect_raw_counts,
)

logger = logging.getLogger(__name__)

PH_GIVEN_ET = "PH_GIVEN_ET"
PH_GIVEN_OR = "PH_GIVEN_OR"
ET_GIVEN_PH = "ET_GIVEN_PH"
ETYM_SPELLING = "ETYM_SPELLING"


@dataclass
class ProbTable:
    """Smoothed conditional probability table with pooled-dialect fallback.

    For the distribution kinds, ``dialect_entries`` maps
    ``(condition, dialect)`` to a full distribution over ``support``.
    For ETYM_SPELLING it maps ``(grapheme, phoneme, dialect)`` to a single
    probability that the spelling is etymological.
    """

    kind: str
    alpha: float
    support: tuple[str, ...]
    dialect_entries: dict
    pooled_entries: dict
    flagged_counts: Counter | None = None  # ETYM_SPELLING only, pooled (et, ph)
    pair_counts: Counter | None = None     # ETYM_SPELLING only, pooled (et, ph)

    def distribution(self, condition: str, dialect: str) -> dict[str, float] | None:
        """Conditional distribution, falling back dialect -> pooled -> uniform.

        Returns None when the condition is unseen and alpha is 0 (no smoothed
        mass to spread).
        """
        dist = self.dialect_entries.get((condition, dialect))
        if dist is not None:
            return dist
        dist = self.pooled_entries.get(condition)
        if dist is not None:
            return dist
        if self.alpha > 0 and self.support:
            u = 1.0 / len(self.support)
            return {sym: u for sym in self.support}
        return None

    def probability(self, grapheme: str, phoneme: str, dialect: str) -> float:
        """ETYM_SPELLING lookup: P(et = or | or, ph, d)."""
        value = self.dialect_entries.get((grapheme, phoneme, dialect))
        if value is not None:
            return value
        value = self.pooled_entries.get((grapheme, phoneme))
        if value is not None:
            return value
        return 0.5 if self.alpha > 0 else 0.0

    def conditions(self) -> frozenset[str]:
        if self.kind == ETYM_SPELLING:
            raise PipelineError("ETYM_SPELLING has composite keys")
        return frozenset(c for c, _ in self.dialect_entries) | frozenset(self.pooled_entries)

    def all_distributions(self):
        """Yield every stored distribution (for hygiene checks)."""
        yield from self.dialect_entries.values()
        yield from self.pooled_entries.values()


def _conditional(
    joint: dict[str, Counter],
    support: tuple[str, ...],
    alpha: float,
) -> dict[str, dict[str, float]]:
    out: dict[str, dict[str, float]] = {}
    denom_extra = alpha * len(support)
    for cond, counter in joint.items():
        total = sum(counter.values())
        out[cond] = {
            sym: (counter.get(sym, 0) + alpha) / (total + denom_extra) for sym in support
        }
    return out


def _estimate(
    counts: G2PCountTable,
    kind: str,
    condition_side: str,
    alpha: float,
) -> ProbTable:
    """Shared estimator: conditionals from joint counts, GAP pairs excluded."""
    by_dialect: dict[str, dict[str, Counter]] = defaultdict(lambda: defaultdict(Counter))
    pooled: dict[str, Counter] = defaultdict(Counter)
    outcome_set: set[str] = set()
    for (d, g, p), n in counts.counts.items():
        if g == GAP or p == GAP:
            continue
        cond, outcome = (g, p) if condition_side == "grapheme" else (p, g)
        by_dialect[d][cond][outcome] += n
        pooled[cond][outcome] += n
        outcome_set.add(outcome)
    if not pooled:
        raise PipelineError(f"no training data for {kind}")
    if condition_side == "grapheme":
        support = tuple(sorted(counts.phonemes | outcome_set))
    else:
        support = tuple(sorted(counts.graphemes()))
    dialect_entries: dict = {}
    for d, joint in sorted(by_dialect.items()):
        for cond, dist in _conditional(joint, support, alpha).items():
            dialect_entries[(cond, d)] = dist
    return ProbTable(
        kind=kind,
        alpha=alpha,
        support=support,
        dialect_entries=dialect_entries,
        pooled_entries=_conditional(pooled, support, alpha),
    )


def estimate_ph_given_et(counts: G2PCountTable, alpha: float = 0.1) -> ProbTable:
    """P(phoneme | etymon, dialect) from normalized-spelling alignments."""
    return _estimate(counts, PH_GIVEN_ET, "grapheme", alpha)


def estimate_ph_given_or(
    lexicon_counts: G2PCountTable,
    raw_counts: G2PCountTable | None = None,
    alpha: float = 0.1,
) -> ProbTable:
    """P(phoneme | orthographic char, dialect); raw-spelling counts are added
    to the normalized ones when available."""
    combined = lexicon_counts if raw_counts is None else lexicon_counts + raw_counts
    return _estimate(combined, PH_GIVEN_OR, "grapheme", alpha)


def estimate_et_given_ph(counts: G2PCountTable, alpha: float = 0.1) -> ProbTable:
    """P(etymon | phoneme, dialect): the same joint counts read backwards."""
    return _estimate(counts, ET_GIVEN_PH, "phoneme", alpha)


def detect_etymological_spellings(
    lexicon: list[LexiconEntry],
    inventory: CaphiInventory,
    alpha: float = 0.1,
    vowels: frozenset[str] = DEFAULT_VOWELS,
) -> ProbTable:
    """Estimate P(et = or | or, ph, d) via the default/non-default heuristic.

    Entries are grouped by identical normalized spelling. Within a group, a
    grapheme whose realizations span both a default phoneme (one whose
    inventory default grapheme is that grapheme) and a non-default one is
    taken to be spelled etymologically; every realization of that grapheme
    in the group is then flagged.
    """
    groups: dict[str, list[LexiconEntry]] = defaultdict(list)
    for entry in lexicon:
        groups[entry.coda].append(entry)

    flagged: Counter = Counter()   # (or, ph, dialect)
    total: Counter = Counter()
    flagged_pooled: Counter = Counter()  # (et, ph), the reporting counts
    total_pooled: Counter = Counter()

    for entries in groups.values():
        aligned = [
            (e, align_g2p(e.coda, e.caphi, inventory, vowels, e)) for e in entries
        ]
        phonemes_of: dict[str, set[str]] = defaultdict(set)
        for _, alignment in aligned:
            for pair in alignment.pairs:
                if pair.grapheme != GAP and pair.phoneme != GAP:
                    phonemes_of[pair.grapheme].add(pair.phoneme)
        group_flagged = set()
        for grapheme, realized in phonemes_of.items():
            defaults = inventory.default_phonemes_for(grapheme)
            if len(realized) >= 2 and (realized & defaults) and (realized - defaults):
                group_flagged.add(grapheme)
        for entry, alignment in aligned:
            for pair in alignment.pairs:
                if pair.grapheme == GAP or pair.phoneme == GAP:
                    continue
                key = (pair.grapheme, pair.phoneme, entry.dialect)
                total[key] += 1
                total_pooled[(pair.grapheme, pair.phoneme)] += 1
                if pair.grapheme in group_flagged:
                    flagged[key] += 1
                    flagged_pooled[(pair.grapheme, pair.phoneme)] += 1

    dialect_entries = {
        key: (flagged.get(key, 0) + alpha) / (n + 2 * alpha) for key, n in total.items()
    }
    pooled_entries = {
        key: (flagged_pooled.get(key, 0) + alpha) / (n + 2 * alpha)
        for key, n in total_pooled.items()
    }
    return ProbTable(
        kind=ETYM_SPELLING,
        alpha=alpha,
        support=(),
        dialect_entries=dialect_entries,
        pooled_entries=pooled_entries,
        flagged_counts=flagged_pooled,
        pair_counts=total_pooled,
    )


@dataclass(frozen=True)
class CharContext:
    """An observed orthographic character in a dialect."""

    grapheme: str
    dialect: str


@dataclass(frozen=True)
class SubstitutionCost:
    x: CharContext
    y: CharContext
    cost: float
    best_etymology: tuple[str, str, str, str] | None  # (x_et, x_ph, y_et, y_ph)


@dataclass
class EtymologyModel:
    """Immutable bundle of the four tables plus posterior/cost caches."""

    ph_given_et: ProbTable
    ph_given_or: ProbTable
    et_given_ph: ProbTable
    etym_spelling: ProbTable
    coda_alphabet: tuple[str, ...]
    or_alphabet: tuple[str, ...]
    dialects: tuple[str, ...]
    alpha: float
    vowels: frozenset[str] = DEFAULT_VOWELS
    _posteriors: dict = field(default_factory=dict, repr=False, compare=False)
    _shared: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._index = {c: i for i, c in enumerate(self.coda_alphabet)}
        self._or_set = frozenset(self.or_alphabet)
        self._warned: set[str] = set()

    @classmethod
    def build(
        cls,
        lexicon: list[LexiconEntry],
        inventory: CaphiInventory,
        raw_pairs: list[RawSpellingPair] | None = None,
        alpha: float = 0.1,
        vowels: frozenset[str] = DEFAULT_VOWELS,
    ) -> "EtymologyModel":
        lexicon_counts = collect_g2p_counts(lexicon, inventory, vowels)
        raw_counts = collect_raw_counts(raw_pairs, inventory, vowels) if raw_pairs else None
        ph_given_or = estimate_ph_given_or(lexicon_counts, raw_counts, alpha)
        model = cls(
            ph_given_et=estimate_ph_given_et(lexicon_counts, alpha),
            ph_given_or=ph_given_or,
            et_given_ph=estimate_et_given_ph(lexicon_counts, alpha),
            etym_spelling=detect_etymological_spellings(lexicon, inventory, alpha, vowels),
            coda_alphabet=tuple(sorted(lexicon_counts.graphemes())),
            or_alphabet=tuple(sorted(ph_given_or.conditions())),
            dialects=lexicon_counts.dialects(),
            alpha=alpha,
            vowels=vowels,
        )
        model.warm_posteriors()
        return model

    def warm_posteriors(self) -> None:
        """Populate the posterior cache for every known (grapheme, dialect).

        After warming, concurrent readers never mutate the cache on the
        known alphabet.
        """
        for grapheme in self.or_alphabet:
            for dialect in self.dialects:
                self.posterior_vector(grapheme, dialect)

    def posterior_vector(self, grapheme: str, dialect: str) -> np.ndarray:
        key = (grapheme, dialect)
        cached = self._posteriors.get(key)
        if cached is not None:
            return cached
        vec = self._compute_posterior(grapheme, dialect)
        self._posteriors[key] = vec
        return vec

    def posterior(self, grapheme: str, dialect: str) -> dict[str, float]:
        vec = self.posterior_vector(grapheme, dialect)
        return {c: float(vec[i]) for i, c in enumerate(self.coda_alphabet)}

    def _compute_posterior(self, grapheme: str, dialect: str) -> np.ndarray:
        size = len(self.coda_alphabet)
        if grapheme not in self._index and grapheme not in self._or_set:
            if grapheme not in self._warned:
                self._warned.add(grapheme)
                logger.warning(
                    "grapheme %r unseen in every table; using uniform posterior", grapheme
                )
            return np.full(size, 1.0 / size)
        ph_dist = self.ph_given_or.distribution(grapheme, dialect)
        if ph_dist is None:
            logger.warning(
                "no phoneme distribution for (%r, %s); using uniform posterior",
                grapheme,
                dialect,
            )
            return np.full(size, 1.0 / size)
        vec = np.zeros(size)
        own = self._index.get(grapheme)
        uniform = 1.0 / size
        for phoneme, p_ph in ph_dist.items():
            if p_ph == 0.0:
                continue
            p_etym = self.etym_spelling.probability(grapheme, phoneme, dialect)
            if own is None:
                p_etym = 0.0  # a char absent from normalized spelling is no etymon
            else:
                vec[own] += p_ph * p_etym
            remainder = p_ph * (1.0 - p_etym)
            if remainder == 0.0:
                continue
            et_dist = self.et_given_ph.distribution(phoneme, dialect)
            if et_dist is None:
                vec += remainder * uniform
            else:
                for et, p_et in et_dist.items():
                    vec[self._index[et]] += remainder * p_et
        return vec

    def shared_etymology(self, x: CharContext, y: CharContext) -> float:
        """Probability the two observed characters share an etymon."""
        a, b = (x, y) if (x.grapheme, x.dialect) <= (y.grapheme, y.dialect) else (y, x)
        key = (a.grapheme, a.dialect, b.grapheme, b.dialect)
        cached = self._shared.get(key)
        if cached is None:
            pa = self.posterior_vector(a.grapheme, a.dialect)
            pb = self.posterior_vector(b.grapheme, b.dialect)
            cached = float(np.dot(pa, pb))
            self._shared[key] = cached
        return cached

    def cost_between(self, x: CharContext, y: CharContext) -> float:
        return min(1.0, max(0.0, 1.0 - self.shared_etymology(x, y)))

    def _best_phoneme_for(self, grapheme: str, dialect: str, et: str) -> str | None:
        """Phoneme maximizing this character's contribution toward etymon et."""
        ph_dist = self.ph_given_or.distribution(grapheme, dialect)
        if ph_dist is None:
            return None
        best_ph, best_term = None, -1.0
        own = grapheme if grapheme in self._index else None
        for phoneme in sorted(ph_dist):
            p_ph = ph_dist[phoneme]
            if p_ph == 0.0:
                continue
            p_etym = self.etym_spelling.probability(grapheme, phoneme, dialect)
            if own is None:
                p_etym = 0.0
            term = p_ph * p_etym if et == grapheme else 0.0
            et_dist = self.et_given_ph.distribution(phoneme, dialect)
            p_et = et_dist.get(et, 0.0) if et_dist else 1.0 / len(self.coda_alphabet)
            term += p_ph * (1.0 - p_etym) * p_et
            if term > best_term:
                best_ph, best_term = phoneme, term
        return best_ph

    def best_etymology(
        self, x: CharContext, y: CharContext
    ) -> tuple[str, str, str, str] | None:
        px = self.posterior_vector(x.grapheme, x.dialect)
        py = self.posterior_vector(y.grapheme, y.dialect)
        products = px * py
        if not products.any():
            return None
        et = self.coda_alphabet[int(np.argmax(products))]
        x_ph = self._best_phoneme_for(x.grapheme, x.dialect, et)
        y_ph = self._best_phoneme_for(y.grapheme, y.dialect, et)
        return (et, x_ph or GAP, et, y_ph or GAP)

    # -- serialization ----------------------------------------------------

    def save(self, directory: str | Path) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        manifest = {
            "alpha": self.alpha,
            "dialects": list(self.dialects),
            "coda_alphabet": list(self.coda_alphabet),
            "or_alphabet": list(self.or_alphabet),
            "vowels": sorted(self.vowels),
            "supports": {
                "ph_given_et": list(self.ph_given_et.support),
                "ph_given_or": list(self.ph_given_or.support),
                "et_given_ph": list(self.et_given_ph.support),
            },
        }
        (directory / "manifest.json").write_text(
            json.dumps(manifest, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        for name in ("ph_given_et", "ph_given_or", "et_given_ph"):
            _write_dist_tsv(directory / f"{name}.tsv", getattr(self, name))
        _write_etym_tsv(directory / "etym_spelling.tsv", self.etym_spelling)
        if self.etym_spelling.pair_counts is not None:
            with open(directory / "etym_counts.tsv", "w", encoding="utf-8") as fh:
                for (et, ph), n in sorted(self.etym_spelling.pair_counts.items()):
                    flagged = (self.etym_spelling.flagged_counts or Counter()).get((et, ph), 0)
                    fh.write(f"{et}\t{ph}\t{flagged}\t{n}\n")

    @classmethod
    def load(cls, directory: str | Path) -> "EtymologyModel":
        directory = Path(directory)
        manifest = json.loads((directory / "manifest.json").read_text(encoding="utf-8"))
        alpha = manifest["alpha"]
        tables = {}
        for name, kind in (
            ("ph_given_et", PH_GIVEN_ET),
            ("ph_given_or", PH_GIVEN_OR),
            ("et_given_ph", ET_GIVEN_PH),
        ):
            tables[name] = _read_dist_tsv(
                directory / f"{name}.tsv",
                kind,
                alpha,
                tuple(manifest["supports"][name]),
            )
        etym = _read_etym_tsv(directory / "etym_spelling.tsv", alpha)
        counts_path = directory / "etym_counts.tsv"
        if counts_path.exists():
            flagged: Counter = Counter()
            totals: Counter = Counter()
            for line in counts_path.read_text(encoding="utf-8").splitlines():
                et, ph, f_n, t_n = line.split("\t")
                flagged[(et, ph)] = int(f_n)
                totals[(et, ph)] = int(t_n)
            etym.flagged_counts = flagged
            etym.pair_counts = totals
        model = cls(
            ph_given_et=tables["ph_given_et"],
            ph_given_or=tables["ph_given_or"],
            et_given_ph=tables["et_given_ph"],
            etym_spelling=etym,
            coda_alphabet=tuple(manifest["coda_alphabet"]),
            or_alphabet=tuple(manifest["or_alphabet"]),
            dialects=tuple(manifest["dialects"]),
            alpha=alpha,
            vowels=frozenset(manifest["vowels"]),
        )
        model.warm_posteriors()
        return model


def _write_dist_tsv(path: Path, table: ProbTable) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for (cond, dialect), dist in sorted(table.dialect_entries.items()):
            for sym in table.support:
                fh.write(f"{dialect}\t{cond}\t{sym}\t{dist[sym]!r}\n")
        for cond, dist in sorted(table.pooled_entries.items()):
            for sym in table.support:
                fh.write(f"{POOLED}\t{cond}\t{sym}\t{dist[sym]!r}\n")


def _read_dist_tsv(path: Path, kind: str, alpha: float, support: tuple[str, ...]) -> ProbTable:
    dialect_entries: dict = {}
    pooled_entries: dict = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 4:
                raise ParseError(f"{path.name} line {lineno}: expected 4 columns")
            dialect, cond, sym, prob = cols
            target = pooled_entries if dialect == POOLED else dialect_entries
            key = cond if dialect == POOLED else (cond, dialect)
            target.setdefault(key, {})[sym] = float(prob)
    return ProbTable(kind, alpha, support, dialect_entries, pooled_entries)


def _write_etym_tsv(path: Path, table: ProbTable) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for (grapheme, phoneme, dialect), prob in sorted(table.dialect_entries.items()):
            fh.write(f"{dialect}\t{grapheme}\t{phoneme}\t{prob!r}\n")
        for (grapheme, phoneme), prob in sorted(table.pooled_entries.items()):
            fh.write(f"{POOLED}\t{grapheme}\t{phoneme}\t{prob!r}\n")


def _read_etym_tsv(path: Path, alpha: float) -> ProbTable:
    dialect_entries: dict = {}
    pooled_entries: dict = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 4:
                raise ParseError(f"{path.name} line {lineno}: expected 4 columns")
            dialect, grapheme, phoneme, prob = cols
            if dialect == POOLED:
                pooled_entries[(grapheme, phoneme)] = float(prob)
            else:
                dialect_entries[(grapheme, phoneme, dialect)] = float(prob)
    return ProbTable(ETYM_SPELLING, alpha, (), dialect_entries, pooled_entries)


def posterior_et(grapheme: str, dialect: str, model: EtymologyModel) -> dict[str, float]:
    """Posterior over etymological characters for an observed character."""
    return model.posterior(grapheme, dialect)


def substitution_cost(x: CharContext, y: CharContext, model: EtymologyModel) -> SubstitutionCost:
    """Eq.-style substitution cost: one minus the shared-etymon probability."""
    cost = model.cost_between(x, y)
    best = model.best_etymology(x, y) if cost < 1.0 else None
    return SubstitutionCost(x=x, y=y, cost=cost, best_etymology=best)

"""Grapheme-phoneme alignment and count-table tests."""

from __future__ import annotations

import random

import pytest

from ags_pipeline.corpus import LexiconEntry
from ags_pipeline.g2p import (
    DEFAULT_VOWELS,
    GAP,
    G2PCountTable,
    G2PPair,
    align_g2p,
    collect_g2p_counts,
    g2p_cost,
)


def pairs_of(alignment):
    return [(p.grapheme, p.phoneme) for p in alignment.pairs]


def brute_cost(coda, caphi, inventory, vowels=DEFAULT_VOWELS):
    """Exhaustive enumeration over all monotone alignments."""

    def rec(i, j):
        if i == len(coda) and j == len(caphi):
            return 0.0
        best = float("inf")
        if i < len(coda) and j < len(caphi):
            sub = 0.0 if inventory.compatible(coda[i], caphi[j]) else 1.0
            best = min(best, sub + rec(i + 1, j + 1))
        if j < len(caphi):
            best = min(best, (0.5 if caphi[j] in vowels else 1.0) + rec(i, j + 1))
        if i < len(coda):
            best = min(best, 1.0 + rec(i + 1, j))
        return best

    return rec(0, 0)


class TestAlign:
    def test_vowel_insertions_len5(self, leather_inventory):
        a = align_g2p("جلد", ("dj", "i", "l", "i", "d"), leather_inventory)
        assert pairs_of(a) == [("ج", "dj"), (GAP, "i"), ("ل", "l"), (GAP, "i"), ("د", "d")]

    def test_compatible_nondefault_match(self, leather_inventory):
        a = align_g2p("جلد", ("g", "e", "l", "d"), leather_inventory)
        assert pairs_of(a) == [("ج", "g"), (GAP, "e"), ("ل", "l"), ("د", "d")]

    def test_single_pair(self, leather_inventory):
        a = align_g2p("ب", ("b",), leather_inventory)
        assert pairs_of(a) == [("ب", "b")]

    def test_empty_sequence_rejected(self, leather_inventory):
        with pytest.raises(ValueError):
            align_g2p("", ("b",), leather_inventory)
        with pytest.raises(ValueError):
            align_g2p("ب", (), leather_inventory)

    def test_gap_pair_invariant(self):
        with pytest.raises(ValueError):
            G2PPair(GAP, GAP)

    def test_projection_recovers_inputs(self, leather_inventory):
        rng = random.Random(11)
        graphemes = sorted(leather_inventory.graphemes)
        phonemes = sorted(leather_inventory.phonemes)
        for _ in range(300):
            coda = "".join(rng.choice(graphemes) for _ in range(rng.randint(1, 6)))
            caphi = tuple(rng.choice(phonemes) for _ in range(rng.randint(1, 6)))
            a = align_g2p(coda, caphi, leather_inventory)
            assert "".join(a.graphemes) == coda
            assert a.phonemes == caphi

    def test_cost_matches_brute_force(self, leather_inventory):
        rng = random.Random(13)
        graphemes = sorted(leather_inventory.graphemes)
        phonemes = sorted(leather_inventory.phonemes)
        for _ in range(200):
            coda = "".join(rng.choice(graphemes) for _ in range(rng.randint(1, 6)))
            caphi = tuple(rng.choice(phonemes) for _ in range(rng.randint(1, 6)))
            assert g2p_cost(coda, caphi, leather_inventory) == brute_cost(
                coda, caphi, leather_inventory
            )

    def test_deterministic(self, leather_inventory):
        args = ("جلد", ("y", "i", "l", "d"), leather_inventory)
        assert pairs_of(align_g2p(*args)) == pairs_of(align_g2p(*args))


class TestCounts:
    def test_leather_count_column(self, leather_lexicon, leather_inventory):
        counts = collect_g2p_counts(leather_lexicon, leather_inventory)
        pooled = counts.pooled()
        assert pooled[("ج", "dj")] == 1
        assert pooled[("ج", "g")] == 1
        assert pooled[("ج", "j")] == 2
        assert pooled[("ج", "y")] == 1
        assert pooled[("ل", "l")] == 5
        assert pooled[("د", "d")] == 5

    def test_total_equals_alignment_lengths(self, leather_lexicon, leather_inventory):
        counts = collect_g2p_counts(leather_lexicon, leather_inventory)
        expected = sum(
            len(align_g2p(e.coda, e.caphi, leather_inventory).pairs)
            for e in leather_lexicon
        )
        assert counts.total() == expected == 22

    def test_empty_lexicon(self, leather_inventory):
        assert collect_g2p_counts([], leather_inventory).total() == 0

    def test_single_entry(self, leather_inventory):
        counts = collect_g2p_counts(
            [LexiconEntry("c", "KHA", "ب", ("b",))], leather_inventory
        )
        assert dict(counts.counts) == {("KHA", "ب", "b"): 1}

    def test_merge_is_associative_addition(self, leather_inventory):
        a = G2PCountTable(frozenset({"b"}))
        a.add("D1", "ب", "b", 2)
        b = G2PCountTable(frozenset({"b"}))
        b.add("D1", "ب", "b", 1)
        b.add("D2", "ب", GAP, 1)
        merged = a + b
        assert merged.counts[("D1", "ب", "b")] == 3
        assert merged.counts[("D2", "ب", GAP)] == 1
        assert (a + b).counts == (b + a).counts

    def test_tsv_round_trip(self, leather_lexicon, leather_inventory, tmp_path):
        counts = collect_g2p_counts(leather_lexicon, leather_inventory)
        path = tmp_path / "counts.tsv"
        counts.to_tsv(path)
        again = G2PCountTable.from_tsv(path, counts.phonemes)
        assert again.counts == counts.counts
        assert GAP in path.read_text(encoding="utf-8")

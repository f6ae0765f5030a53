"""Shared model builders used across test modules."""

from __future__ import annotations

from ags_pipeline.corpus import CaphiInventory, LexiconEntry
from ags_pipeline.etymology import (
    ET_GIVEN_PH,
    ETYM_SPELLING,
    PH_GIVEN_ET,
    PH_GIVEN_OR,
    EtymologyModel,
    ProbTable,
)


def make_point_mass_model(
    alphabet: tuple[str, ...] = ("ق", "ل", "ب", "ج", "د", "ر"),
    dialects: tuple[str, ...] = ("D1", "D2"),
) -> EtymologyModel:
    """Injective grapheme<->phoneme lexicon at alpha=0: posteriors are point
    masses, so the weighted distance degenerates to unit-cost Levenshtein."""
    phonemes = [f"p{i}" for i in range(len(alphabet))]
    inventory = CaphiInventory(
        [(ph, g, True) for ph, g in zip(phonemes, alphabet)]
    )
    lexicon = [
        LexiconEntry(f"c{i}", d, g, (ph,))
        for i, (g, ph) in enumerate(zip(alphabet, phonemes))
        for d in dialects
    ]
    return EtymologyModel.build(lexicon, inventory, alpha=0.0)


def make_toy_model() -> EtymologyModel:
    """Hand-built tables for the glottal-stop spelling scenario:
    the char hamza-alef in BEI realizes /2/, which mostly descends from qaf."""
    coda = ("أ", "ب", "ق", "ل")
    phs = ("2", "b", "g", "l", "q")

    def full(dist):
        return {p: dist.get(p, 0.0) for p in phs}

    def full_et(dist):
        return {c: dist.get(c, 0.0) for c in coda}

    ph_given_or = ProbTable(PH_GIVEN_OR, 0.0, phs, {
        ("أ", "BEI"): full({"2": 1.0}),
        ("ق", "DOH"): full({"g": 1.0}),
        ("ل", "BEI"): full({"l": 1.0}),
        ("ل", "DOH"): full({"l": 1.0}),
        ("ب", "BEI"): full({"b": 1.0}),
        ("ب", "DOH"): full({"b": 1.0}),
    }, {})
    et_given_ph = ProbTable(ET_GIVEN_PH, 0.0, coda, {
        ("2", "BEI"): full_et({"ق": 0.8, "أ": 0.2}),
        ("l", "BEI"): full_et({"ل": 1.0}),
        ("l", "DOH"): full_et({"ل": 1.0}),
        ("b", "BEI"): full_et({"ب": 1.0}),
        ("b", "DOH"): full_et({"ب": 1.0}),
    }, {})
    etym = ProbTable(ETYM_SPELLING, 0.0, (), {
        ("أ", "2", "BEI"): 0.0,
        ("ق", "g", "DOH"): 1.0,
        ("ل", "l", "BEI"): 1.0, ("ل", "l", "DOH"): 1.0,
        ("ب", "b", "BEI"): 1.0, ("ب", "b", "DOH"): 1.0,
    }, {})
    return EtymologyModel(
        ph_given_et=ProbTable(PH_GIVEN_ET, 0.0, phs, {}, {}),
        ph_given_or=ph_given_or,
        et_given_ph=et_given_ph,
        etym_spelling=etym,
        coda_alphabet=tuple(sorted(coda)),
        or_alphabet=tuple(sorted(coda)),
        dialects=("BEI", "DOH"),
        alpha=0.0,
    )

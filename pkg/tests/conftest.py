"""Shared fixtures: the five-dialect leather lexicon, point-mass models,
and a session-scoped synthetic pipeline run."""

from __future__ import annotations

import pytest

from ags_pipeline.corpus import CaphiInventory, LexiconEntry
from ags_pipeline.synthetic import generate_fixtures

from helpers import make_point_mass_model

LEATHER_DIALECTS = ("KHA", "CAI", "RAB", "BEI", "DOH")


@pytest.fixture(scope="session")
def leather_inventory() -> CaphiInventory:
    return CaphiInventory(
        [
            ("dj", "ج", True),
            ("j", "ج", True),
            ("g", "ق", True), ("g", "ج", False),
            ("y", "ي", True), ("y", "ج", False),
            ("l", "ل", True),
            ("d", "د", True),
            ("b", "ب", True),
            ("q", "ق", True),
            ("a", "ا", True),
            ("i", "ى", True), ("i", "ي", False),
            ("e", "ې", True), ("e", "ي", False),
        ]
    )


@pytest.fixture(scope="session")
def leather_lexicon() -> list[LexiconEntry]:
    return [
        LexiconEntry("c1", "KHA", "جلد", ("dj", "i", "l", "i", "d")),
        LexiconEntry("c1", "CAI", "جلد", ("g", "e", "l", "d")),
        LexiconEntry("c1", "RAB", "جلد", ("j", "a", "l", "d")),
        LexiconEntry("c1", "BEI", "جلد", ("j", "i", "l", "i", "d")),
        LexiconEntry("c1", "DOH", "جلد", ("y", "i", "l", "d")),
    ]


@pytest.fixture(scope="session")
def point_mass_model():
    return make_point_mass_model()


@pytest.fixture(scope="session")
def synth_paths(tmp_path_factory):
    """Small synthetic corpus family used by unit and CLI tests."""
    outdir = tmp_path_factory.mktemp("synth")
    return generate_fixtures(outdir, n_buckets=120, n_concepts=24, seed=7)


LEATHER_INVENTORY_ROWS = [
    ("dj", "ج", 1), ("j", "ج", 1),
    ("g", "ق", 1), ("g", "ج", 0),
    ("y", "ي", 1), ("y", "ج", 0),
    ("l", "ل", 1), ("d", "د", 1), ("b", "ب", 1), ("q", "ق", 1),
    ("a", "ا", 1),
    ("i", "ى", 1), ("i", "ي", 0),
    ("e", "ې", 1), ("e", "ي", 0),
]

LEATHER_LEXICON_ROWS = [
    ("c1", "KHA", "جلد", "dj i l i d"),
    ("c1", "CAI", "جلد", "g e l d"),
    ("c1", "RAB", "جلد", "j a l d"),
    ("c1", "BEI", "جلد", "j i l i d"),
    ("c1", "DOH", "جلد", "y i l d"),
]


@pytest.fixture(scope="session")
def leather_files(tmp_path_factory):
    """The same five-dialect fixture as TSV files for CLI-level tests."""
    outdir = tmp_path_factory.mktemp("leather")
    inventory = outdir / "inventory.tsv"
    inventory.write_text(
        "".join(f"{p}\t{g}\t{d}\n" for p, g, d in LEATHER_INVENTORY_ROWS),
        encoding="utf-8",
    )
    lexicon = outdir / "lexicon.tsv"
    lexicon.write_text(
        "".join(f"{c}\t{d}\t{w}\t{ph}\n" for c, d, w, ph in LEATHER_LEXICON_ROWS),
        encoding="utf-8",
    )
    return {"inventory": inventory, "lexicon": lexicon, "dir": outdir}

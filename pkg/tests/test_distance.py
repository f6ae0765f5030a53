"""Weighted edit distance: worked values, oracle equivalence, reductions."""

from __future__ import annotations

import random
from functools import lru_cache

import numpy as np
import pytest

from ags_pipeline.distance import IndelConfig, distance, distance_matrix
from ags_pipeline.etymology import CharContext

from helpers import make_toy_model


class DyadicCostModel:
    """Random substitution costs on a 1/64 grid, so path sums are exact
    floats no matter the accumulation order."""

    def __init__(self, rng: random.Random, alphabet: str):
        self.table: dict[tuple[str, str], float] = {}
        for i, a in enumerate(alphabet):
            for b in alphabet[i:]:
                cost = rng.randrange(0, 65) / 64.0
                self.table[(a, b)] = cost
                self.table[(b, a)] = cost

    def cost_between(self, x: CharContext, y: CharContext) -> float:
        return self.table[(x.grapheme, y.grapheme)]


def oracle_distance(x: str, y: str, cost_fn, indel: float) -> float:
    """Recursive suffix formulation, memoized; independent of the DP."""

    @lru_cache(maxsize=None)
    def rec(i: int, j: int) -> float:
        if i == len(x) and j == len(y):
            return 0.0
        best = float("inf")
        if i < len(x) and j < len(y):
            best = min(best, cost_fn(x[i], y[j]) + rec(i + 1, j + 1))
        if i < len(x):
            best = min(best, indel + rec(i + 1, j))
        if j < len(y):
            best = min(best, indel + rec(i, j + 1))
        return best

    return rec(0, 0)


def exhaustive_distance(x: str, y: str, cost_fn, indel: float) -> float:
    """Plain recursion, no memo: literally enumerates every monotone path."""

    def rec(i: int, j: int) -> float:
        if i == len(x) and j == len(y):
            return 0.0
        best = float("inf")
        if i < len(x) and j < len(y):
            best = min(best, cost_fn(x[i], y[j]) + rec(i + 1, j + 1))
        if i < len(x):
            best = min(best, indel + rec(i + 1, j))
        if j < len(y):
            best = min(best, indel + rec(i, j + 1))
        return best

    return rec(0, 0)


def unit_levenshtein(x: str, y: str) -> int:
    """Textbook integer edit distance."""
    prev = list(range(len(y) + 1))
    for i, cx in enumerate(x, 1):
        cur = [i]
        for j, cy in enumerate(y, 1):
            cur.append(min(
                prev[j - 1] + (cx != cy),
                prev[j] + 1,
                cur[j - 1] + 1,
            ))
        prev = cur
    return prev[len(y)]


ALPHABET = "قلبجدر"


def random_word(rng: random.Random, max_len: int = 8) -> str:
    return "".join(rng.choice(ALPHABET) for _ in range(rng.randint(1, max_len)))


class TestWorkedValues:
    def test_single_substitution_scenario(self):
        model = make_toy_model()
        result = distance("قلب", "DOH", "ألب", "BEI", model)
        assert result.raw == pytest.approx(0.2, abs=1e-12)
        assert result.normalized == pytest.approx(0.2 / 3, abs=1e-12)

    def test_identical_words_point_mass_zero(self):
        model = make_toy_model()
        result = distance("لب", "BEI", "لب", "DOH", model)
        assert result.raw == 0.0
        assert result.normalized == 0.0

    def test_one_extra_char_costs_one_indel(self, point_mass_model):
        result = distance("قل", "D1", "قلب", "D2", point_mass_model)
        assert result.raw == 1.0
        assert result.normalized == pytest.approx(1 / 3, abs=1e-12)

    def test_empty_word_rejected(self, point_mass_model):
        with pytest.raises(ValueError):
            distance("", "D1", "قل", "D2", point_mass_model)

    def test_ops_sum_to_raw(self):
        model = make_toy_model()
        rng = random.Random(5)
        for _ in range(50):
            x = "".join(rng.choice("قلبأ") for _ in range(rng.randint(1, 5)))
            y = "".join(rng.choice("قلبأ") for _ in range(rng.randint(1, 5)))
            result = distance(x, "BEI", y, "DOH", model)
            assert sum(op.cost for op in result.ops) == pytest.approx(
                result.raw, abs=1e-9
            )


class TestOracle:
    def test_dp_equals_memoized_recursion(self):
        rng = random.Random(101)
        for _ in range(300):
            model = DyadicCostModel(rng, ALPHABET)
            indel = rng.randrange(16, 65) / 64.0
            x, y = random_word(rng), random_word(rng)
            got = distance(x, "D1", y, "D2", model, IndelConfig(indel)).raw
            want = oracle_distance(
                x, y, lambda a, b: model.table[(a, b)], indel
            )
            assert got == want, (x, y)

    def test_dp_equals_pure_exhaustive_enumeration(self):
        rng = random.Random(103)
        for _ in range(100):
            model = DyadicCostModel(rng, ALPHABET)
            indel = rng.randrange(16, 65) / 64.0
            x = random_word(rng, max_len=5)
            y = random_word(rng, max_len=5)
            got = distance(x, "D1", y, "D2", model, IndelConfig(indel)).raw
            want = exhaustive_distance(x, y, lambda a, b: model.table[(a, b)], indel)
            assert got == want, (x, y)

    def test_point_mass_model_reduces_to_unit_levenshtein(self, point_mass_model):
        rng = random.Random(107)
        for _ in range(300):
            x, y = random_word(rng), random_word(rng)
            got = distance(x, "D1", y, "D2", point_mass_model).raw
            assert got == unit_levenshtein(x, y), (x, y)


class TestProperties:
    def test_symmetry(self, point_mass_model):
        rng = random.Random(109)
        for _ in range(200):
            x, y = random_word(rng), random_word(rng)
            d1 = distance(x, "D1", y, "D2", point_mass_model).raw
            d2 = distance(y, "D2", x, "D1", point_mass_model).raw
            assert d1 == d2

    def test_normalized_bound(self):
        model = make_toy_model()
        rng = random.Random(113)
        for _ in range(200):
            x = "".join(rng.choice("قلبأ") for _ in range(rng.randint(1, 6)))
            y = "".join(rng.choice("قلبأ") for _ in range(rng.randint(1, 6)))
            result = distance(x, "BEI", y, "DOH", model)
            assert 0.0 <= result.normalized <= 1.0
            assert result.raw <= max(len(x), len(y)) * 1.0 + 1e-12


class TestMatrix:
    def test_single_word(self, point_mass_model):
        matrix = distance_matrix([("قلب", "D1")], point_mass_model)
        assert matrix.shape == (1, 1)
        assert matrix[0, 0] == 0.0

    def test_identical_words_off_diagonal_zero(self, point_mass_model):
        matrix = distance_matrix(
            [("قلب", "D1"), ("قلب", "D1")], point_mass_model
        )
        assert matrix[0, 1] == 0.0

    def test_symmetric_and_matches_pairwise(self, point_mass_model):
        words = [("قلب", "D1"), ("قل", "D2"), ("بلد", "D1")]
        matrix = distance_matrix(words, point_mass_model)
        assert np.allclose(matrix, matrix.T, atol=1e-12)
        for i, (wi, di) in enumerate(words):
            for j, (wj, dj) in enumerate(words):
                expected = distance(wi, di, wj, dj, point_mass_model).normalized
                assert matrix[i, j] == expected

    def test_empty_list_rejected(self, point_mass_model):
        with pytest.raises(ValueError):
            distance_matrix([], point_mass_model)


class TestEditScriptDump:
    def test_one_record_per_pair_with_etymologies(self, tmp_path):
        import json

        from ags_pipeline.distance import dump_edit_scripts

        model = make_toy_model()
        out = tmp_path / "scripts.jsonl"
        dump_edit_scripts(
            [("قلب", "DOH", "ألب", "BEI"), ("لب", "BEI", "لب", "DOH")], model, out
        )
        records = [
            json.loads(line)
            for line in out.read_text(encoding="utf-8").splitlines()
        ]
        assert len(records) == 2
        first = records[0]
        assert first["raw"] == pytest.approx(0.2, abs=1e-12)
        sub_ops = [op for op in first["ops"] if op["op"] == "sub"]
        assert sub_ops[0]["etymology"][0] == "ق"

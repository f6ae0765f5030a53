"""Logistic smoothing, word/sentence aggregation, and the lookup baseline."""

from __future__ import annotations

import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ags_pipeline.alignment import AlignmentAggregate
from ags_pipeline.corpus import MultiLabelSentence
from ags_pipeline.errors import PipelineError
from ags_pipeline.scoring import (
    AgsConfig,
    ags_from_deltas,
    lookup_baseline,
    mean_sentence_ags,
    multilabel_sentence_ags,
    sentence_ags,
    smooth,
    word_ags,
)

CFG = AgsConfig()  # t=0.5, s=20, k=2


class TestSmooth:
    def test_midpoint_exact_half(self):
        assert smooth(0.5, CFG) == 0.5

    def test_reference_values(self):
        assert smooth(0.3, CFG) == pytest.approx(0.98201, abs=1e-5)
        assert smooth(0.7, CFG) == pytest.approx(0.01799, abs=1e-5)

    def test_strictly_decreasing(self):
        values = [smooth(d / 50, CFG) for d in range(51)]
        assert all(a > b for a, b in zip(values, values[1:]))

    @given(st.floats(min_value=-2, max_value=2, allow_nan=False))
    def test_symmetry_around_threshold(self, x):
        assert smooth(CFG.t - x, CFG) + smooth(CFG.t + x, CFG) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_output_in_open_unit_interval_on_distance_domain(self):
        for d in (0.0, 0.25, 0.5, 0.75, 1.0):
            assert 0.0 < smooth(d, CFG) < 1.0


class TestWordAgs:
    def test_reference_mean_of_five_deltas(self):
        deltas = {f"d{i}": v for i, v in enumerate([0.0, 0.2, 0.5, 0.9, 1.0])}
        assert ags_from_deltas(deltas, CFG) == pytest.approx(0.4996, abs=5e-5)

    def test_all_zero_deltas_near_one(self):
        deltas = {f"d{i}": 0.0 for i in range(4)}
        assert ags_from_deltas(deltas, CFG) == pytest.approx(1.0, abs=1e-4)

    def test_all_missing_uses_missing_delta(self):
        deltas = {f"d{i}": None for i in range(3)}
        assert ags_from_deltas(deltas, CFG) == pytest.approx(
            smooth(1.0, CFG), abs=1e-12
        )
        assert ags_from_deltas(deltas, CFG) == pytest.approx(4.5398e-5, abs=1e-7)

    def test_exclude_missing_dialects_mode(self):
        cfg = AgsConfig(exclude_missing_dialects=True)
        deltas = {"a": 0.0, "b": None}
        assert ags_from_deltas(deltas, cfg) == pytest.approx(smooth(0.0, cfg))

    def test_no_other_dialects_falls_back_to_missing_rule(self):
        assert ags_from_deltas({}, CFG) == pytest.approx(smooth(1.0, CFG))

    def test_word_in_single_dialect_aggregate(self, point_mass_model):
        agg = AlignmentAggregate(dialects=("D1",), entries={("قلب", "D1"): {}})
        result = word_ags("قلب", "D1", agg, point_mass_model, CFG)
        assert result.deltas == {}
        assert result.ags == pytest.approx(smooth(1.0, CFG))

    def test_monotone_in_deltas(self):
        rng = random.Random(23)
        for _ in range(100):
            deltas = {f"d{i}": rng.random() for i in range(5)}
            base = ags_from_deltas(dict(deltas), CFG)
            key = rng.choice(sorted(deltas))
            deltas[key] = deltas[key] * rng.random()  # decrease one delta
            assert ags_from_deltas(deltas, CFG) >= base

    def test_word_ags_through_aggregate(self, point_mass_model):
        agg = AlignmentAggregate(
            dialects=("D1", "D2"),
            entries={
                ("قلب", "D1"): {"D2": Counter({"قلب": 2, None: 1})},
            },
        )
        result = word_ags("قلب", "D1", agg, point_mass_model, CFG)
        assert result.deltas == {"D2": 0.0}
        assert result.ags == pytest.approx(smooth(0.0, CFG))

    def test_missing_word_raises(self, point_mass_model):
        agg = AlignmentAggregate(dialects=("D1", "D2"), entries={})
        with pytest.raises(PipelineError):
            word_ags("قلب", "D1", agg, point_mass_model, CFG)

    def test_none_only_counterparts_get_missing_delta(self, point_mass_model):
        agg = AlignmentAggregate(
            dialects=("D1", "D2"),
            entries={("قلب", "D1"): {"D2": Counter({None: 3})}},
        )
        result = word_ags("قلب", "D1", agg, point_mass_model, CFG)
        assert result.deltas == {"D2": 1.0}
        assert result.ags == pytest.approx(smooth(1.0, CFG))

    def test_delta_is_minimum_over_counterparts(self, point_mass_model):
        agg = AlignmentAggregate(
            dialects=("D1", "D2"),
            entries={
                ("قلب", "D1"): {"D2": Counter({"قلب": 1, "رجد": 5})},
            },
        )
        result = word_ags("قلب", "D1", agg, point_mass_model, CFG)
        assert result.deltas["D2"] == 0.0  # exact match wins over frequent far form


class TestSentenceAgs:
    def test_reference_pair_lowest_two(self):
        scores = [0.986, 0.725, 0.817, 0.941, 0.549, 0.448, 0.986,
                  0.725, 0.817, 0.637, 0.229, 0.371, 0.139, 0.498]
        assert sentence_ags(scores, CFG) == pytest.approx(0.173, abs=5e-4)

    def test_reference_pair_second(self):
        scores = [0.821, 0.312, 0.987, 0.525, 0.251, 0.465, 0.812, 0.943, 0.431]
        assert sentence_ags(scores, CFG) == pytest.approx(0.278, abs=5e-4)

    def test_equal_scores_identity(self):
        for k in (1, 2, 5):
            cfg = AgsConfig(k=k)
            assert sentence_ags([0.42] * 7, cfg) == pytest.approx(0.42, abs=1e-12)

    def test_k_larger_than_sentence_uses_all(self):
        cfg = AgsConfig(k=10)
        scores = [0.2, 0.4, 0.8]
        expected = 3 / sum(1 / s for s in scores)
        assert sentence_ags(scores, cfg) == pytest.approx(expected, abs=1e-12)

    def test_zero_score_clamped_by_epsilon(self):
        value = sentence_ags([0.0, 0.5], CFG)
        assert value > 0.0

    def test_harmonic_le_arithmetic_on_k_lowest(self):
        rng = random.Random(29)
        for _ in range(200):
            scores = [rng.uniform(0.01, 1.0) for _ in range(rng.randint(1, 8))]
            k_used = min(CFG.k, len(scores))
            lowest = sorted(scores)[:k_used]
            assert sentence_ags(scores, CFG) <= sum(lowest) / k_used + 1e-12

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            sentence_ags([], CFG)

    def test_mean_aggregation(self):
        assert mean_sentence_ags([0.2, 0.4, 0.6]) == pytest.approx(0.4)


class TestMultiLabel:
    def test_one_of_eleven(self):
        item = MultiLabelSentence("x", frozenset({"EGY"}), 11)
        assert multilabel_sentence_ags(item) == pytest.approx(0.0909, abs=5e-5)

    def test_all_valid_is_one(self):
        item = MultiLabelSentence("x", frozenset({"A", "B"}), 2)
        assert multilabel_sentence_ags(item) == 1.0

    def test_three_of_eleven(self):
        item = MultiLabelSentence("x", frozenset({"A", "B", "C"}), 11)
        assert multilabel_sentence_ags(item) == pytest.approx(3 / 11, abs=1e-12)

    def test_linear_in_count(self):
        labels = [f"L{i}" for i in range(11)]
        values = [
            multilabel_sentence_ags(
                MultiLabelSentence("x", frozenset(labels[:n]), 11)
            )
            for n in range(1, 12)
        ]
        diffs = [b - a for a, b in zip(values, values[1:])]
        assert all(d == pytest.approx(1 / 11, abs=1e-12) for d in diffs)


class TestLookupBaseline:
    def test_known_word(self):
        assert lookup_baseline("قلب", {"قلب": 0.82}) == 0.82

    def test_unknown_word_default(self):
        assert lookup_baseline("غريب", {"قلب": 0.82}) == 0.5

    def test_empty_table(self):
        assert lookup_baseline("اي", {}) == 0.5


class TestConfigValidation:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"t": 0.0}, {"t": 1.0}, {"s": 0.0}, {"k": 0},
            {"missing_dialect_delta": 1.5}, {"epsilon": 0.0},
        ],
    )
    def test_bad_values_rejected(self, kwargs):
        with pytest.raises(ValueError):
            AgsConfig(**kwargs)

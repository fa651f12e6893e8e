"""Weight formula, ranking order, display values and overlap evaluation."""

from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from headlinekit.corpus import Article, KeywordDb
from headlinekit.ranking import (
    OverlapStats,
    RankingParams,
    combined_weight,
    evaluate_overlap,
    global_weight,
    local_weight,
    rank_keywords,
)
from headlinekit.textpipe import PERSON, ResolvedKeyword

from conftest import make_ner


def rk(canonical, count=1, variants=None, entity_class=None):
    return ResolvedKeyword(
        canonical=canonical,
        variants=frozenset(variants or [canonical]),
        entity_class=entity_class,
        positions=tuple((i * 10, i * 10) for i in range(count)),
    )


def article(headline="", subheadline="", body="body text"):
    return Article(id="t", headline=headline, subheadline=subheadline, body=body)


class TestLocalWeight:
    def test_most_frequent_gets_one(self):
        a, b = rk("A", 3), rk("B", 1)
        assert local_weight(a, [a, b]) == 1.0

    def test_proportional_to_count(self):
        a, b = rk("A", 3), rk("B", 1)
        assert local_weight(b, [a, b]) == pytest.approx(1 / 3)

    def test_single_keyword_is_max(self):
        a = rk("A", 7)
        assert local_weight(a, [a]) == 1.0

    def test_empty_list_rejected(self):
        with pytest.raises(ValueError):
            local_weight(rk("A"), [])

    @settings(max_examples=100)
    @given(counts=st.lists(st.integers(1, 50), min_size=1, max_size=12), scale=st.integers(2, 9))
    def test_scale_invariance(self, counts, scale):
        keywords = [rk(f"k{i}", c) for i, c in enumerate(counts)]
        scaled = [rk(f"k{i}", c * scale) for i, c in enumerate(counts)]
        for kw, kw_scaled in zip(keywords, scaled):
            assert local_weight(kw, keywords) == pytest.approx(
                local_weight(kw_scaled, scaled), abs=1e-15
            )


class TestGlobalWeight:
    def test_absent_keyword_is_zero(self):
        assert global_weight(rk("nowhere"), KeywordDb({"dublin": 10})) == 0.0

    def test_max_frequency_is_one(self):
        db = KeywordDb({"dublin": 99})
        assert global_weight(rk("Dublin"), db) == 1.0

    def test_log_normalization(self):
        db = KeywordDb({"a": 9, "b": 99})
        assert global_weight(rk("a"), db) == pytest.approx(0.5, abs=1e-12)

    def test_empty_db_is_zero(self):
        assert global_weight(rk("Dublin"), KeywordDb()) == 0.0

    def test_variant_lookup_takes_max(self):
        db = KeywordDb({"kenny": 10, "enda kenny": 99})
        kw = rk("Mr. Kenny", variants=["Mr. Kenny", "Kenny", "Enda Kenny"])
        assert global_weight(kw, db) == 1.0


class TestCombinedWeight:
    def test_maximum_case(self, default_params):
        assert combined_weight(1.0, 1.0, True, default_params) == pytest.approx(1.0, abs=1e-12)

    def test_local_only_non_entity(self, default_params):
        assert combined_weight(1.0, 0.0, False, default_params) == pytest.approx(0.48, abs=1e-12)

    def test_zero_case(self, default_params):
        assert combined_weight(0.0, 0.0, False, default_params) == 0.0

    def test_entity_boost_is_bounded_by_beta(self, default_params):
        boost = combined_weight(0.0, 0.0, True, default_params)
        assert boost == pytest.approx(default_params.beta, abs=1e-12)

    @settings(max_examples=200)
    @given(
        wl=st.floats(0, 1), wg=st.floats(0, 1), entity=st.booleans(),
        lam=st.floats(0, 1), beta=st.floats(0, 1),
    )
    def test_result_in_unit_interval(self, wl, wg, entity, lam, beta):
        params = RankingParams(lambda_=lam, beta=beta, top_k=5)
        assert 0.0 <= combined_weight(wl, wg, entity, params) <= 1.0

    @settings(max_examples=200)
    @given(
        wl=st.floats(0, 1), delta=st.floats(0.01, 0.5), wg=st.floats(0, 1),
        entity=st.booleans(),
    )
    def test_strictly_monotone_in_local_weight(self, wl, delta, wg, entity):
        params = RankingParams(lambda_=0.6, beta=0.2)
        low = combined_weight(wl, wg, entity, params)
        high = combined_weight(min(1.0, wl + delta), wg, entity, params)
        if wl + delta <= 1.0:
            assert high > low


class TestRankingParams:
    def test_defaults(self, default_params):
        assert (default_params.lambda_, default_params.beta, default_params.top_k) == (0.6, 0.2, 5)

    @pytest.mark.parametrize("kwargs", [
        {"lambda_": -0.1}, {"lambda_": 1.1}, {"beta": 2.0}, {"top_k": 0},
    ])
    def test_invalid_rejected(self, kwargs):
        with pytest.raises(ValueError):
            RankingParams(**kwargs)


class TestRankKeywords:
    def test_empty_resolved(self, small_db, default_params):
        assert rank_keywords(article(), [], small_db, default_params) == []

    def test_figure_style_flags(self, small_db, default_params):
        art = article(
            headline="Easter Rising centenary: Enda Kenny visits Dublin",
            body="ignored here",
        )
        resolved = [
            rk("Easter Rising", 3),
            rk("GPO", 3, entity_class="ORGANIZATION"),
            rk("Irish Republic", 3),
            rk("Enda Kenny", 2, entity_class=PERSON),
            rk("Dublin", 2, entity_class="LOCATION"),
        ]
        scores = rank_keywords(art, resolved, small_db, default_params)
        flags = {s.keyword.canonical: s.in_headline for s in scores}
        assert flags["GPO"] is False
        assert flags["Irish Republic"] is False
        assert flags["Easter Rising"] is True
        assert flags["Enda Kenny"] is True
        assert flags["Dublin"] is True

    def test_subheadline_counts_for_flag(self, small_db, default_params):
        art = article(headline="Nothing here", subheadline="Budget day arrives")
        scores = rank_keywords(art, [rk("budget")], small_db, default_params)
        assert scores[0].in_headline is True

    def test_tie_break_by_frequency(self, default_params):
        # Same weight via identical db absence and entity status; counts differ
        # only through local weight, so force equal weights with equal counts
        # at different frequencies using a crafted db.
        db = KeywordDb()
        a = rk("alpha", 3)
        b = rk("beta", 1)
        scores = rank_keywords(article(), [a, b, rk("alpha", 3)], db, default_params)
        assert scores[0].frequency >= scores[-1].frequency

    def test_equal_weight_tie_breaks_frequency_then_name(self, default_params):
        # Entity with count 1 vs entity with count 1: alphabetical order.
        db = KeywordDb()
        a = rk("zed", 1, entity_class=PERSON)
        b = rk("apple", 1, entity_class=PERSON)
        scores = rank_keywords(article(), [a, b], db, default_params)
        assert [s.keyword.canonical for s in scores] == ["apple", "zed"]

    def test_truncates_to_top_k(self, small_db):
        params = RankingParams(top_k=2)
        resolved = [rk(f"k{i}", i + 1) for i in range(6)]
        assert len(rank_keywords(article(), resolved, small_db, params)) == 2

    def test_seo_score_is_scaled_global_weight(self, default_params):
        db = KeywordDb({"a": 9, "b": 99})
        scores = rank_keywords(article(), [rk("a"), rk("b")], db, default_params)
        seo = {s.keyword.canonical: s.seo_score for s in scores}
        assert seo == {"a": 50, "b": 100}

    def test_sorted_descending_by_weight(self, small_db, default_params):
        resolved = [rk(f"k{i}", i + 1) for i in range(5)] + [rk("Dublin", 2, entity_class="LOCATION")]
        scores = rank_keywords(article(), resolved, small_db, default_params)
        weights = [s.weight for s in scores]
        assert weights == sorted(weights, reverse=True)

    def test_frequency_equals_occurrence_count(self, small_db, default_params):
        resolved = [rk("Dublin", 4)]
        scores = rank_keywords(article(), resolved, small_db, default_params)
        assert scores[0].frequency == 4


def random_keyword_set(rng: random.Random):
    n = rng.randint(1, 10)
    keywords = []
    db_entries = {}
    for i in range(n):
        name = f"kw{i}"
        keywords.append(
            rk(name, rng.randint(1, 9), entity_class=PERSON if rng.random() < 0.4 else None)
        )
        if rng.random() < 0.7:
            db_entries[name] = rng.randint(1, 1000)
    return keywords, KeywordDb(db_entries)


class TestRankingProperties:
    def test_randomized_sets(self, default_params):
        rng = random.Random(1916)
        for _ in range(300):
            keywords, db = random_keyword_set(rng)
            scores = rank_keywords(article(), keywords, db, RankingParams(top_k=10))
            for s in scores:
                assert 0.0 <= s.weight <= 1.0
                assert 0 <= s.seo_score <= 100
            for first, second in zip(scores, scores[1:]):
                key1 = (-first.weight, -first.frequency, first.keyword.canonical)
                key2 = (-second.weight, -second.frequency, second.keyword.canonical)
                assert key1 <= key2

    def test_db_frequency_increase_never_lowers_relative_rank(self, default_params):
        rng = random.Random(24)
        for _ in range(200):
            keywords, db = random_keyword_set(rng)
            target = rng.choice(keywords)
            params = RankingParams(top_k=len(keywords))
            before = rank_keywords(article(), keywords, db, params)
            bumped = dict(db.entries)
            key = target.canonical.casefold()
            bumped[key] = bumped.get(key, 0) + rng.randint(1, 500)
            after = rank_keywords(article(), keywords, KeywordDb(bumped), params)

            def position(scores, name):
                return next(i for i, s in enumerate(scores) if s.keyword.canonical == name)

            pos_before = position(before, target.canonical)
            pos_after = position(after, target.canonical)
            others_before = [s.keyword.canonical for s in before]
            # target must not fall behind any keyword it previously beat
            beaten_before = set(others_before[pos_before + 1:])
            still_behind = {s.keyword.canonical for s in after[pos_after + 1:]}
            assert beaten_before <= still_behind


class TestEvaluateOverlap:
    def _world(self):
        db = KeywordDb({"dublin": 100, "budget": 80, "housing": 60, "cork": 50, "rent": 40})
        ner = make_ner(locations=["Dublin", "Cork"])
        return db, ner

    def test_headline_built_from_keywords(self, default_params):
        db, ner = self._world()
        body = "Dublin budget housing rent Cork. Dublin budget housing rent Cork."
        corpus = [
            Article(id=str(i), headline="dublin budget housing rent cork", subheadline="", body=body)
            for i in range(4)
        ]
        stats = evaluate_overlap(corpus, db, ner, default_params)
        assert stats == OverlapStats(1.0, 1.0)

    def test_single_shared_keyword(self, default_params):
        db, ner = self._world()
        corpus = [
            Article(
                id="one",
                headline="budget matters",
                subheadline="",
                body="The housing plan and rent. Housing rent housing budget Dublin Cork.",
            )
        ]
        stats = evaluate_overlap(corpus, db, ner, default_params)
        assert stats.frac_at_least_1 == 1.0
        assert stats.frac_at_least_2 == 0.0

    def test_empty_corpus_rejected(self, default_params):
        db, ner = self._world()
        with pytest.raises(ValueError):
            evaluate_overlap([], db, ner, default_params)

    def test_empty_headline_rejected(self, default_params):
        db, ner = self._world()
        corpus = [Article(id="x", headline="  ", subheadline="", body="Dublin")]
        with pytest.raises(ValueError):
            evaluate_overlap(corpus, db, ner, default_params)

    def test_fraction_ordering(self, default_params):
        db, ner = self._world()
        corpus = [
            Article(id="a", headline="budget and housing in Dublin", subheadline="", body="budget housing Dublin rent cork"),
            Article(id="b", headline="nothing relevant", subheadline="", body="budget housing Dublin rent cork"),
        ]
        stats = evaluate_overlap(corpus, db, ner, default_params)
        assert stats.frac_at_least_2 <= stats.frac_at_least_1 <= 1.0


def test_weight_formula_monotone_in_global(default_params):
    low = combined_weight(0.5, 0.2, False, default_params)
    high = combined_weight(0.5, 0.9, False, default_params)
    assert high > low


def test_seo_reference_value():
    # ln(10)/ln(100) is exactly one half.
    assert math.log(1 + 9) / math.log(1 + 99) == pytest.approx(0.5, abs=1e-12)

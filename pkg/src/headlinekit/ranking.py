"""Keyword weighting, top-k ranking and the headline-overlap evaluation.

A keyword's weight blends its local prominence (how often it occurs in the
article, normalized so the most frequent keyword scores 1) with its global
popularity (log-scaled corpus frequency, normalized by the corpus maximum).
Named entities get a bounded boost.  Display values: frequency is the raw
in-article occurrence count, the SEO score is the global weight rescaled
to 0-100.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .corpus import Article, KeywordDb
from .textpipe import NerResources, ResolvedKeyword, extract_resolved_keywords, tokenize

DEFAULT_LAMBDA = 0.6
DEFAULT_BETA = 0.2
DEFAULT_TOP_K = 5


@dataclass(frozen=True)
class RankingParams:
    """lambda_ balances local vs global weight; beta is the share of the
    final weight reserved for the named-entity boost."""

    lambda_: float = DEFAULT_LAMBDA
    beta: float = DEFAULT_BETA
    top_k: int = DEFAULT_TOP_K

    def __post_init__(self) -> None:
        if not 0.0 <= self.lambda_ <= 1.0:
            raise ValueError("lambda must be in [0, 1]")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError("beta must be in [0, 1]")
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")


@dataclass(frozen=True)
class KeywordScore:
    keyword: ResolvedKeyword
    weight: float
    frequency: int
    seo_score: int
    in_headline: bool


def local_weight(keyword: ResolvedKeyword, all_keywords: list[ResolvedKeyword]) -> float:
    """Occurrence count normalized by the article's most frequent keyword."""
    if not all_keywords:
        raise ValueError("local weight is undefined for an empty keyword list")
    top = max(kw.occurrence_count for kw in all_keywords)
    return keyword.occurrence_count / top


def global_weight(keyword: ResolvedKeyword, db: KeywordDb) -> float:
    """log(1+f) / log(1+max_f) over the best-known surface variant.

    Zero when no variant is in the database (common for entities the news
    has not mentioned before) or when the database is empty.
    """
    freq = db.variant_frequency(keyword.variants)
    if freq <= 0 or db.max_frequency <= 0:
        return 0.0
    return math.log1p(freq) / math.log1p(db.max_frequency)


def combined_weight(w_local: float, w_global: float, is_entity: bool, params: RankingParams) -> float:
    """Convex blend keeping the result in [0, 1]: the entity boost takes at
    most ``beta`` of the overall weight."""
    base = params.lambda_ * w_local + (1.0 - params.lambda_) * w_global
    return (1.0 - params.beta) * base + (params.beta if is_entity else 0.0)


def rank_keywords(
    article: Article,
    resolved: list[ResolvedKeyword],
    db: KeywordDb,
    params: RankingParams,
) -> list[KeywordScore]:
    """Score and sort resolved keywords, truncated to the top k.

    Sorted by weight descending, ties by frequency descending then canonical
    form ascending.  ``in_headline`` is true when any surface variant occurs
    (case-insensitively, as a contiguous token run) in the headline or the
    subheadline.
    """
    if not resolved:
        return []
    headline_tokens = _folded_tokens(article.headline)
    subheadline_tokens = _folded_tokens(article.subheadline)

    scores = []
    for kw in resolved:
        w_local = local_weight(kw, resolved)
        w_global = global_weight(kw, db)
        weight = combined_weight(w_local, w_global, kw.is_entity, params)
        scores.append(
            KeywordScore(
                keyword=kw,
                weight=weight,
                frequency=kw.occurrence_count,
                seo_score=round(100 * w_global),
                in_headline=_in_token_list(kw, headline_tokens)
                or _in_token_list(kw, subheadline_tokens),
            )
        )
    scores.sort(key=lambda s: (-s.weight, -s.frequency, s.keyword.canonical))
    return scores[: params.top_k]


def _folded_tokens(text: str) -> list[str]:
    return [t.text.casefold() for t in tokenize(text)]


def _in_token_list(keyword: ResolvedKeyword, haystack: list[str]) -> bool:
    if not haystack:
        return False
    for variant in keyword.variants:
        needle = [t.text.casefold() for t in tokenize(variant)]
        if needle and _contains_run(haystack, needle):
            return True
    return False


def _contains_run(haystack: list[str], needle: list[str]) -> bool:
    n = len(needle)
    return any(haystack[i : i + n] == needle for i in range(len(haystack) - n + 1))


@dataclass(frozen=True)
class OverlapStats:
    frac_at_least_1: float
    frac_at_least_2: float


def evaluate_overlap(
    corpus: list[Article],
    db: KeywordDb,
    resources: NerResources,
    params: RankingParams,
) -> OverlapStats:
    """Fraction of articles whose headline (or subheadline) already contains
    at least one / at least two of the body's top-k keywords.

    Ranking input is the body only; the headline is consulted solely for the
    containment test.
    """
    if not corpus:
        raise ValueError("cannot evaluate an empty corpus")
    at_least_1 = 0
    at_least_2 = 0
    for article in corpus:
        if not article.headline.strip():
            raise ValueError(f"article {article.id!r} has an empty headline")
        resolved = extract_resolved_keywords(article.body, db, resources)
        scores = rank_keywords(article, resolved, db, params)
        hits = sum(1 for s in scores if s.in_headline)
        if hits >= 1:
            at_least_1 += 1
        if hits >= 2:
            at_least_2 += 1
    n = len(corpus)
    return OverlapStats(frac_at_least_1=at_least_1 / n, frac_at_least_2=at_least_2 / n)

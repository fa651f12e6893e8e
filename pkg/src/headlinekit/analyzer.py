"""Single entry point shared by the HTTP service and the CLI.

Both surfaces must return exactly the same analysis for the same input and
configuration, so they both call :func:`analyze_article` and serialize the
dict it returns.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Article, KeywordDb, SentimentLexicon
from .gbt import GbtModel
from .ranking import RankingParams, rank_keywords
from .shareability import DEFAULT_DEAD_ZONE, Thresholds, score_headline
from .textpipe import NerResources, extract_resolved_keywords


@dataclass(frozen=True)
class AnalysisResources:
    """Everything loaded at startup; immutable and shared across requests."""

    keyword_db: KeywordDb
    ner: NerResources
    lexicon: SentimentLexicon
    params: RankingParams
    thresholds: Thresholds
    fb_model: GbtModel | None = None
    tw_model: GbtModel | None = None
    sentiment_dead_zone: float = DEFAULT_DEAD_ZONE


def analyze_article(article: Article, resources: AnalysisResources) -> dict:
    """Run the full pipeline on one article.

    Returns the wire-format dict: ranked keyword entries plus a shareability
    block, which is null when the headline has no scoreable words (features
    are undefined then) or when no models are configured.
    """
    if not article.body.strip():
        raise ValueError("article body must be non-empty")

    resolved = extract_resolved_keywords(article.body, resources.keyword_db, resources.ner)
    scores = rank_keywords(article, resolved, resources.keyword_db, resources.params)
    keywords = [
        {
            "canonical": s.keyword.canonical,
            "weight": s.weight,
            "frequency": s.frequency,
            "seo_score": s.seo_score,
            "in_headline": s.in_headline,
        }
        for s in scores
    ]

    shareability = None
    if resources.fb_model is not None and resources.tw_model is not None:
        try:
            result = score_headline(
                article.headline,
                resources.fb_model,
                resources.tw_model,
                resources.thresholds,
                resources.lexicon,
                resources.ner,
                resources.sentiment_dead_zone,
            )
        except ValueError:
            result = None
        if result is not None:
            shareability = {
                "fb_score": result.fb_score,
                "tw_score": result.tw_score,
                "fb_alert": result.fb_alert,
                "tw_alert": result.tw_alert,
            }

    return {"keywords": keywords, "shareability": shareability}

"""Headline feature extraction and per-platform share-count scoring.

A headline becomes an eight-element vector: three sentiment fractions, three
entity-count fractions (all normalized by word count), a weekday flag and the
word count itself.  Two independently trained regression models score it, one
per platform, and an alert fires when a score meets its platform threshold.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

from .corpus import SentimentLexicon, ShareRecord
from .gbt import GbtModel
from .textpipe import (
    LOCATION,
    ORGANIZATION,
    PERSON,
    NerResources,
    Token,
    detect_entities,
    tokenize_sentences,
)

POSITIVE = "POSITIVE"
NEGATIVE = "NEGATIVE"
NEUTRAL = "NEUTRAL"

# Lexicon polarities inside (-dead_zone, +dead_zone) count as neutral.
DEFAULT_DEAD_ZONE = 0.1

DEFAULT_FB_THRESHOLD = 3.7
DEFAULT_TW_THRESHOLD = 1.7

FEATURE_NAMES = (
    "neutral",
    "positive",
    "negative",
    "organizations",
    "persons",
    "places",
    "day",
    "length",
)

_WEEKDAYS = frozenset(
    ("monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday")
)


@dataclass(frozen=True)
class Thresholds:
    fb: float = DEFAULT_FB_THRESHOLD
    tw: float = DEFAULT_TW_THRESHOLD

    def __post_init__(self) -> None:
        for name, value in (("fb", self.fb), ("tw", self.tw)):
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"{name} threshold must be finite and >= 0")


@dataclass(frozen=True)
class HeadlineFeatures:
    neutral: float
    positive: float
    negative: float
    organizations: float
    persons: float
    places: float
    day: int
    length: int

    def vector(self) -> list[float]:
        return [
            self.neutral,
            self.positive,
            self.negative,
            self.organizations,
            self.persons,
            self.places,
            float(self.day),
            float(self.length),
        ]


@dataclass(frozen=True)
class ShareabilityResult:
    fb_score: float
    tw_score: float
    fb_alert: bool
    tw_alert: bool


def classify_word_sentiment(
    word: str, lexicon: SentimentLexicon, dead_zone: float = DEFAULT_DEAD_ZONE
) -> str:
    """Polarity lookup with a neutral dead zone; unknown words are neutral."""
    polarity = lexicon.polarity(word)
    if polarity > dead_zone:
        return POSITIVE
    if polarity < -dead_zone:
        return NEGATIVE
    return NEUTRAL


def _word_tokens(tokens: list[Token]) -> list[Token]:
    return [t for t in tokens if any(ch.isalnum() for ch in t.text)]


def extract_features(
    headline: str,
    lexicon: SentimentLexicon,
    ner: NerResources,
    dead_zone: float = DEFAULT_DEAD_ZONE,
) -> HeadlineFeatures:
    """Build the feature vector for one headline.

    Length counts word tokens only (punctuation excluded), sentiment and
    entity counts are normalized by that length, and entities count once per
    mention.  Raises ValueError for an empty or punctuation-only headline,
    where normalization is undefined.
    """
    tokens = tokenize_sentences(headline)
    words = _word_tokens(tokens)
    length = len(words)
    if length == 0:
        raise ValueError("headline has no words to extract features from")

    counts = {POSITIVE: 0, NEGATIVE: 0, NEUTRAL: 0}
    for token in words:
        counts[classify_word_sentiment(token.text, lexicon, dead_zone)] += 1

    entity_counts = {PERSON: 0, ORGANIZATION: 0, LOCATION: 0}
    for mention in detect_entities(tokens, ner):
        entity_counts[mention.entity_class] += 1

    return HeadlineFeatures(
        neutral=counts[NEUTRAL] / length,
        positive=counts[POSITIVE] / length,
        negative=counts[NEGATIVE] / length,
        organizations=entity_counts[ORGANIZATION] / length,
        persons=entity_counts[PERSON] / length,
        places=entity_counts[LOCATION] / length,
        day=int(any(t.text.casefold() in _WEEKDAYS for t in words)),
        length=length,
    )


def score_headline(
    headline: str,
    fb_model: GbtModel,
    tw_model: GbtModel,
    thresholds: Thresholds,
    lexicon: SentimentLexicon,
    ner: NerResources,
    dead_zone: float = DEFAULT_DEAD_ZONE,
) -> ShareabilityResult:
    """Two shareability scores per headline, with >= threshold alert flags."""
    vector = extract_features(headline, lexicon, ner, dead_zone).vector()
    fb_score = fb_model.predict(vector)
    tw_score = tw_model.predict(vector)
    return ShareabilityResult(
        fb_score=fb_score,
        tw_score=tw_score,
        fb_alert=fb_score >= thresholds.fb,
        tw_alert=tw_score >= thresholds.tw,
    )


def median_thresholds(dataset: list[ShareRecord]) -> Thresholds:
    """Per-platform medians of the observed share counts (even-length lists
    use the mean of the two middle values)."""
    if not dataset:
        raise ValueError("cannot take medians of an empty dataset")
    return Thresholds(
        fb=float(statistics.median(r.fb_shares for r in dataset)),
        tw=float(statistics.median(r.tw_shares for r in dataset)),
    )

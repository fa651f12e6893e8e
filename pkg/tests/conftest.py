"""Shared fixtures: bundled resources and a small in-memory test world."""

from __future__ import annotations

import pytest

from headlinekit.analyzer import AnalysisResources
from headlinekit.config import AppConfig, load_resources
from headlinekit.corpus import Gazetteer, KeywordDb, SentimentLexicon
from headlinekit.gbt import GbtModel
from headlinekit.ranking import RankingParams
from headlinekit.shareability import Thresholds
from headlinekit.textpipe import LOCATION, ORGANIZATION, PERSON, NerResources


@pytest.fixture(scope="session")
def bundled_resources() -> AnalysisResources:
    """Everything from the shipped sample data, including trained models."""
    return load_resources(AppConfig())


@pytest.fixture(scope="session")
def bundled_config() -> AppConfig:
    return AppConfig()


def make_ner(
    persons=(), organizations=(), locations=(), first_names=()
) -> NerResources:
    return NerResources(
        person=Gazetteer.from_names(PERSON, persons),
        organization=Gazetteer.from_names(ORGANIZATION, organizations),
        location=Gazetteer.from_names(LOCATION, locations),
        first_names=frozenset(n.casefold() for n in first_names),
    )


@pytest.fixture
def small_ner() -> NerResources:
    return make_ner(
        persons=["Kenny", "Enda Kenny", "Joan Burton"],
        organizations=["Sinn Féin", "General Post Office", "RTE"],
        locations=["Dublin", "Moore Street", "Ireland"],
        first_names=["Enda", "Joan", "Mary"],
    )


@pytest.fixture
def small_db() -> KeywordDb:
    return KeywordDb(
        {
            "dublin": 120,
            "gpo": 8,
            "irish republic": 30,
            "enda kenny": 40,
            "kenny": 35,
            "easter rising": 25,
            "budget": 60,
            "housing": 55,
        }
    )


@pytest.fixture
def small_lexicon() -> SentimentLexicon:
    return SentimentLexicon({"win": 0.5, "tragic": -0.8, "ok": 0.05, "great": 0.6})


def constant_model(value: float, n_features: int = 8, platform: str = "") -> GbtModel:
    return GbtModel(
        base_prediction=value,
        shrinkage=1.0,
        trees=(),
        n_features=n_features,
        platform=platform,
    )


@pytest.fixture
def default_params() -> RankingParams:
    return RankingParams()


@pytest.fixture
def default_thresholds() -> Thresholds:
    return Thresholds()

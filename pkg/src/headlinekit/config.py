"""Configuration: bundled defaults, key=value config files, flag overrides.

Precedence is flags > config file > defaults.  Relative paths in a config
file are resolved against the file's own directory.  The bundled sample data
makes a default deployment fully functional without any external datasets.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .analyzer import AnalysisResources
from .corpus import (
    DATA_DIR,
    load_gazetteer,
    load_keyword_db,
    load_lexicon,
    load_model,
    load_name_list,
)
from .ranking import RankingParams
from .shareability import Thresholds
from .textpipe import LOCATION, ORGANIZATION, PERSON, NerResources

PORT_ENV_VAR = "HEADLINEKIT_PORT"
DEFAULT_PORT = 8000


@dataclass(frozen=True)
class AppConfig:
    lambda_: float = 0.6
    beta: float = 0.2
    top_k: int = 5
    fb_threshold: float = 3.7
    tw_threshold: float = 1.7
    sentiment_dead_zone: float = 0.1
    keyword_db: Path = DATA_DIR / "keywords.tsv"
    gazetteer_dir: Path = DATA_DIR / "gazetteers"
    lexicon: Path = DATA_DIR / "lexicon.tsv"
    feed_dir: Path = DATA_DIR / "feed"
    fb_model: Path | None = DATA_DIR / "models" / "fb.json"
    tw_model: Path | None = DATA_DIR / "models" / "tw.json"
    webui_dir: Path | None = None
    port: int = DEFAULT_PORT


_FLOAT_KEYS = {"lambda", "beta", "fb_threshold", "tw_threshold", "sentiment_dead_zone"}
_INT_KEYS = {"top_k", "port"}
_PATH_KEYS = {
    "keyword_db",
    "gazetteer_dir",
    "lexicon",
    "feed_dir",
    "fb_model",
    "tw_model",
    "webui_dir",
}


def _default_port() -> int:
    value = os.environ.get(PORT_ENV_VAR)
    if value is None:
        return DEFAULT_PORT
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"{PORT_ENV_VAR} must be an integer, got {value!r}") from None


def parse_config_file(path: str | Path) -> dict:
    """Parse ``key = value`` lines; '#' starts a comment, blanks are skipped."""
    path = Path(path)
    base = path.parent
    values: dict = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in _FLOAT_KEYS:
            values[key] = float(value)
        elif key in _INT_KEYS:
            values[key] = int(value)
        elif key in _PATH_KEYS:
            values[key] = (base / value).resolve() if value else None
        else:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
    return values


def build_config(config_file: str | Path | None = None, **overrides) -> AppConfig:
    """Merge defaults, an optional config file and explicit overrides.

    Override keys use the config-file names ('lambda', not 'lambda_'); None
    overrides are ignored so CLI flags can be passed through unconditionally.
    """
    merged: dict = {"port": _default_port()}
    if config_file is not None:
        merged.update(parse_config_file(config_file))
    for key, value in overrides.items():
        if value is not None:
            merged[key] = value
    if "lambda" in merged:
        merged["lambda_"] = merged.pop("lambda")
    known = {f.name for f in fields(AppConfig)}
    unknown = set(merged) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return replace(AppConfig(), **merged)


def load_ner_resources(gazetteer_dir: str | Path) -> NerResources:
    gazetteer_dir = Path(gazetteer_dir)
    return NerResources(
        person=load_gazetteer(gazetteer_dir / "person.txt", PERSON),
        organization=load_gazetteer(gazetteer_dir / "organization.txt", ORGANIZATION),
        location=load_gazetteer(gazetteer_dir / "location.txt", LOCATION),
        first_names=load_name_list(gazetteer_dir / "first_names.txt"),
    )


def load_resources(config: AppConfig) -> AnalysisResources:
    """Load every analysis resource named by the configuration."""
    fb_model = load_model(config.fb_model) if config.fb_model else None
    tw_model = load_model(config.tw_model) if config.tw_model else None
    return AnalysisResources(
        keyword_db=load_keyword_db(config.keyword_db),
        ner=load_ner_resources(config.gazetteer_dir),
        lexicon=load_lexicon(config.lexicon),
        params=RankingParams(lambda_=config.lambda_, beta=config.beta, top_k=config.top_k),
        thresholds=Thresholds(fb=config.fb_threshold, tw=config.tw_threshold),
        fb_model=fb_model,
        tw_model=tw_model,
        sentiment_dead_zone=config.sentiment_dead_zone,
    )

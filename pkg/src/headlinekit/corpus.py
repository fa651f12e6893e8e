"""Loading, persisting and updating the data artifacts the analyzers depend on.

Covers the keyword frequency database (TSV), entity gazetteers (one file per
class), the sentiment lexicon (TSV), article files (JSON), the social-share
training dataset (CSV) and serialized regression models (JSON).

All loaded resources are immutable in practice: loaders return fresh objects
and nothing here mutates in place, so they are safe to share across threads.
"""

from __future__ import annotations

import csv
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Iterable

from .gbt import GbtModel

if TYPE_CHECKING:
    from .textpipe import ResolvedKeyword

MODEL_FORMAT_VERSION = 1

DATA_DIR = Path(__file__).resolve().parent / "data"


class DataFormatError(ValueError):
    """A resource file exists but its contents violate the expected format."""


def normalize_keyword(surface: str) -> str:
    """Normalize a keyword surface form: case-fold and collapse whitespace."""
    return " ".join(surface.split()).casefold()


@dataclass(frozen=True)
class KeywordDb:
    """Corpus frequencies of known keywords, keyed by normalized surface form.

    ``entries`` maps normalized keyword -> number of past articles it appeared
    in (always >= 1 for stored keys; an absent keyword has frequency 0).
    """

    entries: dict[str, int] = field(default_factory=dict)

    @property
    def max_frequency(self) -> int:
        return max(self.entries.values(), default=0)

    def __len__(self) -> int:
        return len(self.entries)

    def frequency(self, surface: str) -> int:
        return self.entries.get(normalize_keyword(surface), 0)

    def variant_frequency(self, variants: Iterable[str]) -> int:
        """Highest frequency over a keyword's surface variants."""
        return max((self.frequency(v) for v in variants), default=0)

    def __contains__(self, surface: str) -> bool:
        return normalize_keyword(surface) in self.entries

    def max_key_words(self) -> int:
        """Longest stored keyword, in words (bounds n-gram matching)."""
        return max((k.count(" ") + 1 for k in self.entries), default=0)


def load_keyword_db(path: str | Path) -> KeywordDb:
    """Load a ``keyword<TAB>frequency`` TSV into a :class:`KeywordDb`.

    Duplicate normalized keys are merged by summing their frequencies.
    Lines with frequency 0 are dropped (absent and zero are equivalent).
    Raises :class:`DataFormatError` naming the offending line on malformed
    input (missing tab, non-integer or negative frequency, empty keyword).
    """
    entries: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line:
                continue
            if "\t" not in line:
                raise DataFormatError(f"{path}:{lineno}: expected 'keyword<TAB>frequency'")
            keyword, _, freq_text = line.partition("\t")
            key = normalize_keyword(keyword)
            if not key:
                raise DataFormatError(f"{path}:{lineno}: empty keyword")
            try:
                freq = int(freq_text.strip())
            except ValueError:
                raise DataFormatError(
                    f"{path}:{lineno}: frequency {freq_text.strip()!r} is not an integer"
                ) from None
            if freq < 0:
                raise DataFormatError(f"{path}:{lineno}: negative frequency {freq}")
            if freq == 0:
                continue
            entries[key] = entries.get(key, 0) + freq
    return KeywordDb(entries)


def save_keyword_db(db: KeywordDb, path: str | Path) -> None:
    """Atomically rewrite the TSV: write to a temp file, then rename over."""
    path = Path(path)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            for key in sorted(db.entries):
                fh.write(f"{key}\t{db.entries[key]}\n")
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def update_keyword_db(db: KeywordDb, resolved: list["ResolvedKeyword"]) -> KeywordDb:
    """Fold one analyzed article into the database (document frequency).

    Each distinct resolved keyword contributes +1 regardless of how often it
    occurs in the article: every already-known surface variant is incremented,
    and a keyword with no known variant is inserted under its canonical form
    with frequency 1.  Returns a new database; the input is untouched.
    """
    entries = dict(db.entries)
    for kw in resolved:
        known = {normalize_keyword(v) for v in kw.variants} & entries.keys()
        if known:
            for key in known:
                entries[key] += 1
        else:
            entries[normalize_keyword(kw.canonical)] = 1
    return KeywordDb(entries)


@dataclass(frozen=True)
class Gazetteer:
    """Known names for one entity class.

    All-caps entries (acronyms such as "RTE") match case-sensitively; every
    other entry matches case-insensitively.
    """

    entity_class: str
    exact: frozenset[str]
    folded: frozenset[str]

    @classmethod
    def from_names(cls, entity_class: str, names: Iterable[str]) -> "Gazetteer":
        exact, folded = set(), set()
        for name in names:
            name = " ".join(name.split())
            if not name:
                continue
            if name.isupper():
                exact.add(name)
            else:
                folded.add(name.casefold())
        return cls(entity_class, frozenset(exact), frozenset(folded))

    def matches(self, surface: str) -> bool:
        return surface in self.exact or surface.casefold() in self.folded

    def max_words(self) -> int:
        return max((n.count(" ") + 1 for n in self.exact | self.folded), default=0)


def load_gazetteer(path: str | Path, entity_class: str) -> Gazetteer:
    """One name per line; blank lines and ``#`` comments are skipped."""
    names = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if line and not line.startswith("#"):
                names.append(line)
    return Gazetteer.from_names(entity_class, names)


def load_name_list(path: str | Path) -> frozenset[str]:
    """Case-folded word set (used for the first-names list)."""
    names = set()
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if line and not line.startswith("#"):
                names.add(line.casefold())
    return frozenset(names)


@dataclass(frozen=True)
class SentimentLexicon:
    """Word -> polarity score in [-1, +1]; keys are lower-cased."""

    entries: dict[str, float] = field(default_factory=dict)

    def polarity(self, word: str) -> float:
        return self.entries.get(word.casefold(), 0.0)


def load_lexicon(path: str | Path) -> SentimentLexicon:
    """Load a ``word<TAB>polarity`` TSV with polarity a decimal in [-1, 1]."""
    entries: dict[str, float] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "\t" not in line:
                raise DataFormatError(f"{path}:{lineno}: expected 'word<TAB>polarity'")
            word, _, score_text = line.partition("\t")
            try:
                score = float(score_text.strip())
            except ValueError:
                raise DataFormatError(
                    f"{path}:{lineno}: polarity {score_text.strip()!r} is not a number"
                ) from None
            if not -1.0 <= score <= 1.0 or math.isnan(score):
                raise DataFormatError(f"{path}:{lineno}: polarity {score} outside [-1, 1]")
            entries[word.strip().casefold()] = score
    return SentimentLexicon(entries)


@dataclass(frozen=True)
class Article:
    """An article under edit: body text plus the current headline draft."""

    id: str
    headline: str
    subheadline: str
    body: str
    source: str | None = None


def load_article(path: str | Path) -> Article:
    """Parse an article JSON file ({headline, subheadline?, body, source?})."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(raw, dict) or "body" not in raw:
        raise DataFormatError(f"{path}: article JSON must be an object with a 'body' field")
    body = raw["body"]
    if not isinstance(body, str) or not body.strip():
        raise DataFormatError(f"{path}: article body must be a non-empty string")
    return Article(
        id=str(raw.get("id", path.stem)),
        headline=str(raw.get("headline", "")),
        subheadline=str(raw.get("subheadline", "")),
        body=body,
        source=raw.get("source"),
    )


def load_article_dir(directory: str | Path) -> list[Article]:
    """All ``*.json`` articles in a directory, newest first by mtime."""
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"article directory {directory} does not exist")
    paths = sorted(
        directory.glob("*.json"),
        key=lambda p: (p.stat().st_mtime, p.name),
        reverse=True,
    )
    return [load_article(p) for p in paths]


@dataclass(frozen=True)
class ShareRecord:
    """A past headline with its observed share counts on each platform."""

    headline: str
    fb_shares: int
    tw_shares: int


def load_share_dataset(path: str | Path) -> list[ShareRecord]:
    """Load the ``headline,fb_shares,tw_shares`` CSV (RFC-4180 quoting).

    Order is preserved.  Missing/wrong header, non-integer or negative counts
    and empty headlines raise :class:`DataFormatError`.
    """
    records: list[ShareRecord] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["headline", "fb_shares", "tw_shares"]:
            raise DataFormatError(
                f"{path}: expected header 'headline,fb_shares,tw_shares', got {header!r}"
            )
        for row in reader:
            lineno = reader.line_num
            if not row:
                continue
            if len(row) != 3:
                raise DataFormatError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
            headline, fb_text, tw_text = row
            if not headline.strip():
                raise DataFormatError(f"{path}:{lineno}: empty headline")
            try:
                fb, tw = int(fb_text), int(tw_text)
            except ValueError:
                raise DataFormatError(f"{path}:{lineno}: share counts must be integers") from None
            if fb < 0 or tw < 0:
                raise DataFormatError(f"{path}:{lineno}: negative share count")
            records.append(ShareRecord(headline, fb, tw))
    return records


def save_model(model: GbtModel, path: str | Path) -> None:
    """Serialize a trained model to JSON with full float precision."""
    doc = {"version": MODEL_FORMAT_VERSION, **model.to_dict()}
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> GbtModel:
    """Load a model saved by :func:`save_model`; refuses unknown versions."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"{path}: not valid JSON ({exc})") from None
    version = doc.get("version")
    if version != MODEL_FORMAT_VERSION:
        raise DataFormatError(
            f"{path}: unsupported model version {version!r} "
            f"(expected {MODEL_FORMAT_VERSION})"
        )
    try:
        return GbtModel.from_dict(doc)
    except (KeyError, TypeError) as exc:
        raise DataFormatError(f"{path}: malformed model document ({exc})") from None

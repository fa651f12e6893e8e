"""Raw article text to tokens, sentences, entity and keyword mentions,
and finally a resolved keyword list with positions.

Everything here is a pure function of (text, resources): no caching, no
global state, so concurrent callers can share the loaded resources freely.

Entity recognition is dictionary-driven (gazetteers) plus capitalization
heuristics; there is no statistical model.  Mention resolution is a fixed
rule cascade (exact match, honorific stripping, surname-to-full-name), so
equivalent-but-dissimilar pairs such as an acronym and its expansion stay
separate by design.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .corpus import Gazetteer, KeywordDb, normalize_keyword

PERSON = "PERSON"
ORGANIZATION = "ORGANIZATION"
LOCATION = "LOCATION"
ENTITY_CLASSES = (PERSON, ORGANIZATION, LOCATION)

# Punctuation split off at token edges; internal hyphens/apostrophes stay.
_EDGE_PUNCT = set(".,!?;:\"'()")
_SENTENCE_ENDERS = {".", "!", "?"}

# Chunks kept whole even though they end in '.'; doubles as the honorific
# list for mention resolution.
ABBREVIATIONS = ("Mr.", "Mrs.", "Ms.", "Dr.", "St.")
_ABBREV_FOLDED = frozenset(a.casefold() for a in ABBREVIATIONS)
HONORIFICS = frozenset(("mr.", "mrs.", "ms.", "dr."))

_WEEKDAYS = ("monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday")
_MONTHS = (
    "january", "february", "march", "april", "may", "june",
    "july", "august", "september", "october", "november", "december",
)
# Capitalized in running text without naming an entity; the run heuristic
# must not turn "on Monday" into an organization or glue "The" onto a name.
_CAPITALIZED_NON_ENTITIES = frozenset(
    _WEEKDAYS
    + _MONTHS
    + ("yesterday", "today", "tomorrow", "tonight")
    + (
        "the", "a", "an", "this", "that", "these", "those",
        "i", "he", "she", "it", "we", "they", "you",
        "my", "his", "her", "its", "our", "their", "your",
    )
)

MAX_KEYWORD_NGRAM = 5


@dataclass(frozen=True)
class Token:
    text: str
    char_start: int
    char_end: int
    sentence_index: int = 0


@dataclass(frozen=True)
class EntityMention:
    surface: str
    entity_class: str
    token_span: tuple[int, int]


@dataclass(frozen=True)
class KeywordMention:
    surface: str
    db_key: str
    token_span: tuple[int, int]


@dataclass(frozen=True)
class ResolvedKeyword:
    """One keyword after variant merging: canonical form, all surfaces seen,
    an optional entity class, and every token span where it occurs."""

    canonical: str
    variants: frozenset[str]
    entity_class: str | None
    positions: tuple[tuple[int, int], ...]

    @property
    def occurrence_count(self) -> int:
        return len(self.positions)

    @property
    def is_entity(self) -> bool:
        return self.entity_class is not None


def tokenize(text: str) -> list[Token]:
    """Whitespace tokenization with edge punctuation split into own tokens.

    Internal hyphens and apostrophes stay attached ("O'Brien-led" is one
    token); closed-list abbreviations keep their trailing period so the
    sentence splitter can see them.  Offsets index into ``text`` and satisfy
    text[char_start:char_end] == token text.
    """
    tokens: list[Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        end = pos
        while end < n and not text[end].isspace():
            end += 1
        _split_chunk(text, pos, end, tokens)
        pos = end
    return tokens


def _split_chunk(text: str, start: int, end: int, out: list[Token]) -> None:
    lo, hi = start, end
    leading: list[int] = []
    while lo < hi - 1 and text[lo] in _EDGE_PUNCT:
        leading.append(lo)
        lo += 1
    trailing: list[int] = []
    while (
        hi - 1 > lo
        and text[hi - 1] in _EDGE_PUNCT
        and text[lo:hi].casefold() not in _ABBREV_FOLDED
    ):
        hi -= 1
        trailing.append(hi)
    for i in leading:
        out.append(Token(text[i], i, i + 1))
    out.append(Token(text[lo:hi], lo, hi))
    for i in reversed(trailing):
        out.append(Token(text[i], i, i + 1))


def split_sentences(tokens: list[Token]) -> list[Token]:
    """Assign sentence indices: a new sentence starts after '.', '!' or '?'.

    A bare '.' does not end a sentence when the preceding token plus the
    period forms a known abbreviation ("Mr", "Dr", "St").  Returns new
    tokens; the input list is untouched.
    """
    result: list[Token] = []
    index = 0
    prev_text: str | None = None
    for token in tokens:
        result.append(replace(token, sentence_index=index))
        ends = token.text in _SENTENCE_ENDERS
        if (
            token.text == "."
            and prev_text is not None
            and (prev_text + ".").casefold() in _ABBREV_FOLDED
        ):
            ends = False
        if ends:
            index += 1
        prev_text = token.text
    return result


def tokenize_sentences(text: str) -> list[Token]:
    """Tokenize and assign sentence indices in one call."""
    return split_sentences(tokenize(text))


@dataclass(frozen=True)
class NerResources:
    """Gazetteers for the three entity classes plus the first-names list
    feeding the person-vs-organization heuristic."""

    person: Gazetteer
    organization: Gazetteer
    location: Gazetteer
    first_names: frozenset[str] = frozenset()

    def gazetteers(self) -> tuple[Gazetteer, ...]:
        return (self.person, self.organization, self.location)


def _is_capitalized(text: str) -> bool:
    return bool(text) and text[0].isupper()


def _is_acronym(text: str) -> bool:
    return text.isalpha() and text.isupper() and 2 <= len(text) <= 5


def _sentence_initial(tokens: list[Token], i: int) -> bool:
    return i == 0 or tokens[i].sentence_index != tokens[i - 1].sentence_index


def detect_entities(tokens: list[Token], resources: NerResources) -> list[EntityMention]:
    """Gazetteer longest-match spans, then capitalization heuristics.

    Heuristic pass: maximal runs of capitalized tokens left uncovered by the
    gazetteers either extend an adjacent gazetteer mention (names routinely
    carry extra tokens the dictionary lacks) or, when the run holds at least
    one non-sentence-initial token, form a new mention: PERSON when a first
    name is present, ORGANIZATION otherwise.  Unknown all-caps tokens of
    length 2-5 are tagged ORGANIZATION (acronym rule).  Output spans never
    overlap and are ordered by position.
    """
    n = len(tokens)
    mentions: list[_Span] = []
    covered = [False] * n

    max_words = max((g.max_words() for g in resources.gazetteers()), default=0)
    i = 0
    while i < n:
        matched = False
        limit = min(max_words, n - i)
        for width in range(limit, 0, -1):
            last = i + width - 1
            if tokens[last].sentence_index != tokens[i].sentence_index:
                continue
            surface = " ".join(t.text for t in tokens[i : last + 1])
            for gaz in resources.gazetteers():
                if gaz.matches(surface):
                    mentions.append(_Span(i, last, gaz.entity_class))
                    for k in range(i, last + 1):
                        covered[k] = True
                    i = last + 1
                    matched = True
                    break
            if matched:
                break
        if not matched:
            i += 1

    for run_start, run_end in _capitalized_runs(tokens, covered):
        merged = _merge_into_neighbor(mentions, tokens, run_start, run_end)
        if merged:
            for k in range(run_start, run_end + 1):
                covered[k] = True
            continue
        has_non_initial = any(
            not _sentence_initial(tokens, k) for k in range(run_start, run_end + 1)
        )
        if has_non_initial:
            texts = [tokens[k].text for k in range(run_start, run_end + 1)]
            is_person = any(
                t.casefold() in resources.first_names or t.casefold() in HONORIFICS
                for t in texts
            )
            cls = PERSON if is_person else ORGANIZATION
            mentions.append(_Span(run_start, run_end, cls))
            for k in range(run_start, run_end + 1):
                covered[k] = True
        else:
            # Lone sentence-initial capitals are not evidence, except acronyms.
            for k in range(run_start, run_end + 1):
                if _is_acronym(tokens[k].text):
                    mentions.append(_Span(k, k, ORGANIZATION))
                    covered[k] = True

    mentions.sort(key=lambda s: s.start)
    return [
        EntityMention(
            surface=" ".join(t.text for t in tokens[s.start : s.end + 1]),
            entity_class=s.entity_class,
            token_span=(s.start, s.end),
        )
        for s in mentions
    ]


@dataclass
class _Span:
    start: int
    end: int
    entity_class: str


def _capitalized_runs(tokens: list[Token], covered: list[bool]) -> list[tuple[int, int]]:
    runs: list[tuple[int, int]] = []
    start: int | None = None
    for i, token in enumerate(tokens):
        eligible = (
            not covered[i]
            and _is_capitalized(token.text)
            and token.text.casefold() not in _CAPITALIZED_NON_ENTITIES
        )
        if eligible and start is not None and tokens[i - 1].sentence_index != token.sentence_index:
            runs.append((start, i - 1))
            start = None
        if eligible:
            if start is None:
                start = i
        elif start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(tokens) - 1))
    return runs


def _merge_into_neighbor(
    mentions: list[_Span], tokens: list[Token], run_start: int, run_end: int
) -> bool:
    for span in mentions:
        if (
            span.end == run_start - 1
            and tokens[span.end].sentence_index == tokens[run_start].sentence_index
        ):
            span.end = run_end
            return True
    for span in mentions:
        if (
            span.start == run_end + 1
            and tokens[span.start].sentence_index == tokens[run_end].sentence_index
        ):
            span.start = run_start
            return True
    return False


def match_keywords(tokens: list[Token], db: KeywordDb) -> list[KeywordMention]:
    """Greedy longest-match of database keywords over token n-grams (n <= 5).

    Matching is case-insensitive via keyword normalization; matched spans
    never overlap.
    """
    mentions: list[KeywordMention] = []
    max_n = min(MAX_KEYWORD_NGRAM, db.max_key_words())
    n = len(tokens)
    i = 0
    while i < n:
        matched = False
        for width in range(min(max_n, n - i), 0, -1):
            surface = " ".join(t.text for t in tokens[i : i + width])
            key = normalize_keyword(surface)
            if key in db.entries:
                mentions.append(KeywordMention(surface, key, (i, i + width - 1)))
                i += width
                matched = True
                break
        if not matched:
            i += 1
    return mentions


def strip_honorific(surface: str) -> str:
    """Drop a leading honorific ("Mr. Kenny" -> "Kenny"); otherwise unchanged."""
    first, _, rest = surface.partition(" ")
    if rest and first.casefold() in HONORIFICS:
        return rest
    return surface


@dataclass
class _Occurrence:
    """One textual appearance after overlap collapse: the representative
    surface plus every surface a collapsed mention contributed.

    Only the representative surface drives merging (keeping, say, a title
    keyword inside a longer name from unifying unrelated mentions); the
    extra surfaces are retained as variants for frequency lookups.
    """

    surface: str
    surfaces: tuple[str, ...]
    span: tuple[int, int]
    entity_class: str | None

    @property
    def key(self) -> str:
        return strip_honorific(self.surface).casefold()


def resolve_mentions(
    entities: list[EntityMention], keyword_mentions: list[KeywordMention]
) -> list[ResolvedKeyword]:
    """Merge surface variants of the same referent into resolved keywords.

    Mentions whose token spans overlap are first collapsed into a single
    occurrence (one textual appearance must count once); the longest span
    is the representative but every member surface is kept as a variant, so
    resolution never hides a database-known form.  Occurrences then merge
    by, in order: case-insensitive exact surface match, honorific stripping
    ("Mr. Kenny" and "Kenny" share a key), and the surname rule (a
    single-word PERSON or keyword occurrence equal to the last word of a
    multi-word PERSON occurrence joins it).  Canonical form is the longest
    variant, ties broken by earliest occurrence.
    """
    occurrences = _collapse_spans(entities, keyword_mentions)

    # Exact + honorific rules: union occurrences sharing any normalized key.
    parent = list(range(len(occurrences)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    by_key: dict[str, int] = {}
    for i, occ in enumerate(occurrences):
        if occ.key in by_key:
            union(by_key[occ.key], i)
        else:
            by_key[occ.key] = i

    groups: dict[int, list[_Occurrence]] = {}
    for i, occ in enumerate(occurrences):
        groups.setdefault(find(i), []).append(occ)

    _apply_surname_rule(groups)

    resolved = [_finalize_group(bucket) for bucket in groups.values()]
    resolved.sort(key=lambda kw: kw.positions[0])
    return resolved


def _collapse_spans(
    entities: list[EntityMention], keyword_mentions: list[KeywordMention]
) -> list[_Occurrence]:
    raw: list[tuple[tuple[int, int], str, str | None]] = [
        (m.token_span, m.surface, m.entity_class) for m in entities
    ] + [(m.token_span, m.surface, None) for m in keyword_mentions]
    raw.sort(key=lambda item: (item[0][0], -(item[0][1] - item[0][0])))

    occurrences: list[_Occurrence] = []
    group: list[tuple[tuple[int, int], str, str | None]] = []
    group_end = -1
    for item in raw:
        span = item[0]
        if group and span[0] <= group_end:
            group.append(item)
            group_end = max(group_end, span[1])
        else:
            if group:
                occurrences.append(_collapse_group(group))
            group = [item]
            group_end = span[1]
    if group:
        occurrences.append(_collapse_group(group))
    return occurrences


def _collapse_group(group: list[tuple[tuple[int, int], str, str | None]]) -> _Occurrence:
    # Longest span is the representative; an entity class from any member sticks.
    rep = max(group, key=lambda item: (item[0][1] - item[0][0], item[2] is not None))
    entity_class = next((cls for _, _, cls in group if cls is not None), None)
    surfaces: list[str] = []
    for _, surface, _ in group:
        if surface not in surfaces:
            surfaces.append(surface)
    return _Occurrence(
        surface=rep[1], surfaces=tuple(surfaces), span=rep[0], entity_class=entity_class
    )


def _group_class(bucket: list[_Occurrence]) -> str | None:
    for occ in sorted(bucket, key=lambda o: o.span):
        if occ.entity_class is not None:
            return occ.entity_class
    return None


def _apply_surname_rule(groups: dict[int, list[_Occurrence]]) -> None:
    """Merge single-word PERSON/keyword groups into the multi-word PERSON
    group whose key ends with that word (earliest such group on ties)."""
    multi: list[tuple[tuple[int, int], int, set[str]]] = []
    for gid, bucket in groups.items():
        keys = {o.key for o in bucket}
        if _group_class(bucket) == PERSON and any(" " in k for k in keys):
            last_words = {k.rsplit(" ", 1)[-1] for k in keys if " " in k}
            multi.append((min(o.span for o in bucket), gid, last_words))
    multi.sort()

    for gid in list(groups):
        bucket = groups[gid]
        keys = {o.key for o in bucket}
        if any(" " in k for k in keys):
            continue
        if _group_class(bucket) not in (None, PERSON):
            continue
        for _, target_gid, last_words in multi:
            if target_gid != gid and keys & last_words:
                groups[target_gid].extend(bucket)
                del groups[gid]
                break


def _finalize_group(bucket: list[_Occurrence]) -> ResolvedKeyword:
    occs = sorted(bucket, key=lambda o: o.span)
    first_seen: dict[str, tuple[int, int]] = {}
    for occ in occs:
        for surface in occ.surfaces:
            if surface not in first_seen:
                first_seen[surface] = occ.span
    canonical = max(first_seen, key=lambda v: (len(v), tuple(-x for x in first_seen[v])))
    return ResolvedKeyword(
        canonical=canonical,
        variants=frozenset(first_seen),
        entity_class=_group_class(occs),
        positions=tuple(o.span for o in occs),
    )


def extract_resolved_keywords(
    text: str, db: KeywordDb, resources: NerResources
) -> list[ResolvedKeyword]:
    """Full pipeline: tokenize, sentence-split, detect, match, resolve."""
    tokens = tokenize_sentences(text)
    entities = detect_entities(tokens, resources)
    keywords = match_keywords(tokens, db)
    return resolve_mentions(entities, keywords)

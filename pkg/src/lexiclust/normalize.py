"""Reduce raw factor strings to sequences of singular noun lemmas."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .errors import EmptyPhraseError
from .wordnet import WordNetDb

# detachment rules for nouns, tried in this order
NOUN_SUFFIX_RULES = (
    ("ses", "s"),
    ("xes", "x"),
    ("zes", "z"),
    ("ches", "ch"),
    ("shes", "sh"),
    ("ies", "y"),
    ("men", "man"),
    ("s", ""),
)

# lexicon value meaning "this surface word has no noun form"
DROP = "-"

_SPLIT_RE = re.compile(r"[\s\-\u2010-\u2014]+")
_EDGE_PUNCT_RE = re.compile(r"^[^\w']+|[^\w']+$")


@dataclass(frozen=True)
class NormalizedPhrase:
    raw: str
    tokens: tuple[str, ...]
    dropped: tuple[str, ...] = ()

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


@dataclass(frozen=True)
class NormalizationReport:
    phrase_count: int
    total_word_count: int
    noun_word_count: int
    failures: tuple[str, ...] = ()

    @property
    def noun_fraction(self) -> float:
        if self.total_word_count == 0:
            return 0.0
        return self.noun_word_count / self.total_word_count


def tokenize(raw: str) -> list[str]:
    """Lowercase ``raw`` and split it on whitespace and hyphens.

    Punctuation is stripped from the edges of each token; apostrophes
    inside a token are kept.
    """
    tokens = []
    for piece in _SPLIT_RE.split(raw.strip().lower()):
        piece = _EDGE_PUNCT_RE.sub("", piece).strip("'")
        if piece:
            tokens.append(piece)
    if not tokens:
        raise EmptyPhraseError(raw, f"phrase has no word tokens: {raw!r}")
    return tokens


def load_lexicon(path) -> dict[str, str]:
    """Read a ``surface<TAB>noun_lemma`` substitution file ("#" starts a comment)."""
    lexicon = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
                raise ValueError(f"{path}:{lineno}: expected 'surface<TAB>noun_lemma'")
            lexicon[parts[0].strip().lower()] = parts[1].strip().lower().replace(" ", "_")
    return lexicon


def default_lexicon_path() -> Path:
    return Path(__file__).parent / "data" / "lexicon_237.tsv"


def _inflection_candidates(db: WordNetDb, token: str) -> list[str]:
    found = []
    for base in db.exceptions.get(token, ()):
        if db.has_lemma(base) and base not in found:
            found.append(base)
    for suffix, ending in NOUN_SUFFIX_RULES:
        if token.endswith(suffix) and len(token) > len(suffix):
            base = token[: -len(suffix)] + ending
            if db.has_lemma(base) and base not in found:
                found.append(base)
    return found


def to_noun(db: WordNetDb, token: str, lexicon: Mapping[str, str] | None = None) -> str | None:
    """Map one lowercase token to a noun lemma, or None if it has no noun form.

    A lexicon entry always wins (``-`` forces a drop). Otherwise the
    exception list and suffix rules propose singular bases. A surface form
    that is itself a noun lemma is kept unless a proposed base has strictly
    more senses, which maps plurals such as "conditions" or "men" to their
    singular while leaving "gas" alone.
    """
    if lexicon and token in lexicon:
        target = lexicon[token]
        if target == DROP:
            return None
        return target if db.has_lemma(target) else None
    candidates = _inflection_candidates(db, token)
    if db.has_lemma(token):
        own = len(db.entries[token].senses)
        for base in candidates:
            if len(db.entries[base].senses) > own:
                return base
        return token
    return candidates[0] if candidates else None


def normalize_phrase(db: WordNetDb, raw: str, lexicon: Mapping[str, str] | None = None) -> NormalizedPhrase:
    kept, dropped = [], []
    for token in tokenize(raw):
        noun = to_noun(db, token, lexicon)
        if noun is None:
            dropped.append(token)
        else:
            kept.append(noun)
    if not kept:
        raise EmptyPhraseError(raw)
    return NormalizedPhrase(raw=raw.strip(), tokens=tuple(kept), dropped=tuple(dropped))


def normalize_corpus(
    db: WordNetDb, raw_phrases: Iterable[str], lexicon: Mapping[str, str] | None = None
) -> tuple[list[NormalizedPhrase], NormalizationReport]:
    """Normalize every phrase, keeping input order.

    Phrases that end up empty are left out of the returned list and named
    in ``report.failures``; their words still count toward the totals.
    """
    raw_phrases = list(raw_phrases)
    if not raw_phrases:
        raise ValueError("no phrases to normalize")
    phrases, failures = [], []
    total = nouns = 0
    for raw in raw_phrases:
        try:
            tokens = tokenize(raw)
        except EmptyPhraseError:
            failures.append(raw)
            continue
        total += len(tokens)
        try:
            phrase = normalize_phrase(db, raw, lexicon)
        except EmptyPhraseError:
            failures.append(raw)
            continue
        nouns += len(phrase.tokens)
        phrases.append(phrase)
    report = NormalizationReport(len(raw_phrases), total, nouns, tuple(failures))
    return phrases, report


def read_phrases(path) -> list[str]:
    """One phrase per line; blank lines and "#" comment lines are skipped."""
    phrases = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                phrases.append(line)
    return phrases

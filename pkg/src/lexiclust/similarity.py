"""Word and phrase similarity from WordNet synonymy and hypernymy.

Sums go through :func:`math.fsum`, which rounds the exact sum once. That
makes every score independent of summation order, so ``sim(a, b)`` and
``sim(b, a)`` are bit-identical and parallel builds reproduce serial ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import EmptyPhraseError
from .normalize import NormalizedPhrase
from .wordnet import WordNetDb


@dataclass(frozen=True)
class SimilarityParams:
    sense_weights: tuple[float, ...] = (0.6, 0.3, 0.1)
    level_weights: tuple[float, ...] = (0.5, 0.25, 0.125, 0.0625, 0.03125)
    mix: float = 0.5

    def __post_init__(self):
        r, u = tuple(map(float, self.sense_weights)), tuple(map(float, self.level_weights))
        object.__setattr__(self, "sense_weights", r)
        object.__setattr__(self, "level_weights", u)
        object.__setattr__(self, "mix", float(self.mix))
        if not r or any(w <= 0 for w in r) or any(a < b for a, b in zip(r, r[1:])):
            raise ValueError(f"sense weights must be positive and non-increasing: {r}")
        if not u or any(w <= 0 for w in u) or any(a <= b for a, b in zip(u, u[1:])):
            raise ValueError(f"level weights must be positive and strictly decreasing: {u}")
        if not 0.0 <= self.mix <= 1.0:
            raise ValueError(f"mix must lie in [0, 1]: {self.mix}")

    @property
    def sense_cap(self) -> int:
        return len(self.sense_weights)

    @property
    def depth_cap(self) -> int:
        return len(self.level_weights)

    @property
    def max_word_score(self) -> float:
        top = math.fsum(self.sense_weights) ** 2
        return self.mix * top + (1.0 - self.mix) * top * self.level_weights[0]

    def as_dict(self) -> dict:
        return {
            "r": list(self.sense_weights),
            "u": list(self.level_weights),
            "mix": self.mix,
            "sense_cap": self.sense_cap,
            "depth_cap": self.depth_cap,
        }


DEFAULT_PARAMS = SimilarityParams()


@dataclass(frozen=True)
class WordSimBreakdown:
    s_syn: float
    s_hyp: float
    s_total: float


def synonym_similarity(db: WordNetDb, w_a: str, w_b: str, params: SimilarityParams = DEFAULT_PARAMS) -> float:
    r = params.sense_weights
    senses_a = db.noun_senses(w_a, params.sense_cap)
    senses_b = db.noun_senses(w_b, params.sense_cap)
    terms = []
    for i, sa in enumerate(senses_a):
        syn_a = db.synonyms(sa)
        for j, sb in enumerate(senses_b):
            if not syn_a.isdisjoint(db.synonyms(sb)):
                terms.append(r[i] * r[j])
    return math.fsum(terms)


def level_overlap(
    db: WordNetDb, sense_a: int, sense_b: int, l: int, f: int, depth: int = 5
) -> int:
    """1 if level ``l`` ancestors of ``sense_a`` meet level ``f`` ancestors of ``sense_b``."""
    if not (1 <= l <= depth and 1 <= f <= depth):
        raise ValueError(f"levels must lie in 1..{depth}: ({l}, {f})")
    la = db.hypernym_levels(sense_a, depth)[l - 1]
    lb = db.hypernym_levels(sense_b, depth)[f - 1]
    return 0 if la.isdisjoint(lb) else 1


def sense_hypernym_similarity(
    db: WordNetDb, sense_a: int, sense_b: int, params: SimilarityParams = DEFAULT_PARAMS
) -> float:
    u = params.level_weights
    levels_a = db.hypernym_levels(sense_a, params.depth_cap)
    levels_b = db.hypernym_levels(sense_b, params.depth_cap)
    best = 0.0
    for l, la in enumerate(levels_a):
        if not la:
            break
        for f, lb in enumerate(levels_b):
            if not lb:
                break
            dep = abs(l - f)
            if u[dep] > best and not la.isdisjoint(lb):
                best = u[dep]
    return best


def hypernym_similarity(db: WordNetDb, w_a: str, w_b: str, params: SimilarityParams = DEFAULT_PARAMS) -> float:
    r = params.sense_weights
    senses_a = db.noun_senses(w_a, params.sense_cap)
    senses_b = db.noun_senses(w_b, params.sense_cap)
    terms = []
    for i, sa in enumerate(senses_a):
        for j, sb in enumerate(senses_b):
            s = sense_hypernym_similarity(db, sa, sb, params)
            if s:
                terms.append(r[i] * r[j] * s)
    return math.fsum(terms)


def word_similarity(db: WordNetDb, w_a: str, w_b: str, params: SimilarityParams = DEFAULT_PARAMS) -> WordSimBreakdown:
    s_syn = synonym_similarity(db, w_a, w_b, params)
    s_hyp = hypernym_similarity(db, w_a, w_b, params)
    total = params.mix * s_syn + (1.0 - params.mix) * s_hyp
    return WordSimBreakdown(s_syn, s_hyp, total)


def _mean_pairwise(a: tuple[str, ...], b: tuple[str, ...], score) -> float:
    return math.fsum(score(x, y) for x in a for y in b) / (len(a) * len(b))


def phrase_similarity(
    db: WordNetDb, a: NormalizedPhrase, b: NormalizedPhrase, params: SimilarityParams = DEFAULT_PARAMS
) -> float:
    """Mean word similarity over all ``len(a) * len(b)`` token pairs."""
    for p in (a, b):
        if not p.tokens:
            raise EmptyPhraseError(p.raw)
    return _mean_pairwise(a.tokens, b.tokens, lambda x, y: word_similarity(db, x, y, params).s_total)


@dataclass
class WordScorer:
    """Memoizes word similarity over a shared database and parameter set."""

    db: WordNetDb
    params: SimilarityParams = DEFAULT_PARAMS
    _cache: dict = field(default_factory=dict, repr=False)

    def word(self, w_a: str, w_b: str) -> float:
        key = (w_a, w_b) if w_a <= w_b else (w_b, w_a)
        val = self._cache.get(key)
        if val is None:
            val = word_similarity(self.db, key[0], key[1], self.params).s_total
            self._cache[key] = val
        return val

    def phrase(self, a: NormalizedPhrase, b: NormalizedPhrase) -> float:
        for p in (a, b):
            if not p.tokens:
                raise EmptyPhraseError(p.raw)
        return _mean_pairwise(a.tokens, b.tokens, self.word)

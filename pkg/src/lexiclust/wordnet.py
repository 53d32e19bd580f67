"""Read-only loader for the Princeton WordNet noun database (flat-file format)."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Mapping

from .errors import WordNetError

NOUN_FILES = ("index.noun", "data.noun", "noun.exc")

HYPERNYM = "@"
INSTANCE_HYPERNYM = "@i"

_VERSION_RE = re.compile(r"WordNet\s+(\d+(?:\.\d+)*)")


@dataclass(frozen=True)
class Synset:
    id: int
    lemmas: tuple[str, ...]
    hypernyms: frozenset[int]


@dataclass(frozen=True)
class LemmaEntry:
    lemma: str
    senses: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class WordNetDb:
    """Immutable noun store: lemma index, synsets and hypernym edges.

    Query helpers cache hypernym levels per synset; the cache is derived
    data, so concurrent readers at worst compute an entry twice.
    """

    entries: Mapping[str, LemmaEntry]
    synsets: Mapping[int, Synset]
    exceptions: Mapping[str, tuple[str, ...]]
    version: str = "unknown"
    source: str = ""
    _levels: dict = field(default_factory=dict, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.synsets)

    def has_lemma(self, lemma: str) -> bool:
        return lemma in self.entries

    def noun_senses(self, lemma: str, cap: int = 3) -> tuple[int, ...]:
        entry = self.entries.get(lemma)
        if entry is None:
            return ()
        return entry.senses[:cap]

    def synset(self, sense: int) -> Synset:
        try:
            return self.synsets[sense]
        except KeyError:
            raise WordNetError(f"unknown synset offset {sense:08d}") from None

    def synonyms(self, sense: int) -> frozenset[str]:
        return frozenset(self.synset(sense).lemmas)

    def hypernym_levels(self, sense: int, depth: int = 5) -> tuple[frozenset[int], ...]:
        """Ancestor sets for levels 1..depth; level l+1 unions the parents of level l."""
        if depth < 1:
            raise ValueError("depth must be >= 1")
        cached = self._levels.get(sense)
        if cached is not None and len(cached) >= depth:
            return cached[:depth]
        levels = []
        frontier = frozenset(self.synset(sense).hypernyms)
        for _ in range(depth):
            levels.append(frontier)
            frontier = frozenset(h for s in frontier for h in self.synsets[s].hypernyms)
        result = tuple(levels)
        self._levels[sense] = result
        return result


def lemma_exists(db: WordNetDb, lemma: str) -> bool:
    return db.has_lemma(lemma)


def noun_senses(db: WordNetDb, lemma: str, cap: int = 3) -> tuple[int, ...]:
    if cap < 1:
        raise ValueError("cap must be positive")
    return db.noun_senses(lemma, cap)


def synonyms(db: WordNetDb, sense: int) -> frozenset[str]:
    return db.synonyms(sense)


def hypernym_levels(db: WordNetDb, sense: int, depth: int = 5) -> tuple[frozenset[int], ...]:
    return db.hypernym_levels(sense, depth)


def _data_lines(path: Path):
    # license header lines start with two spaces
    with open(path, encoding="utf-8", errors="replace") as fh:
        for lineno, line in enumerate(fh, 1):
            if line.startswith("  ") or not line.strip():
                continue
            yield lineno, line.rstrip("\n")


def _sniff_version(path: Path) -> str:
    with open(path, encoding="utf-8", errors="replace") as fh:
        for line in fh:
            if not line.startswith("  "):
                break
            m = _VERSION_RE.search(line)
            if m:
                return m.group(1)
    return "unknown"


def _parse_data(path: Path, pointer_kinds: frozenset[str]) -> dict[int, Synset]:
    synsets: dict[int, Synset] = {}
    for lineno, line in _data_lines(path):
        head = line.split(" | ", 1)[0].split()
        try:
            offset = int(head[0])
            w_cnt = int(head[3], 16)
            words = head[4 : 4 + 2 * w_cnt : 2]
            pos = 4 + 2 * w_cnt
            p_cnt = int(head[pos])
            pointers = head[pos + 1 : pos + 1 + 4 * p_cnt]
            if len(words) != w_cnt or len(pointers) != 4 * p_cnt or w_cnt == 0:
                raise ValueError("truncated record")
            hypers = set()
            for i in range(0, len(pointers), 4):
                symbol, target, target_pos = pointers[i : i + 3]
                if symbol in pointer_kinds and target_pos == "n":
                    hypers.add(int(target))
        except (IndexError, ValueError) as exc:
            raise WordNetError(f"{path}:{lineno}: malformed data line ({exc})") from None
        hypers.discard(offset)
        lemmas = tuple(dict.fromkeys(w.lower() for w in words))
        synsets[offset] = Synset(offset, lemmas, frozenset(hypers))
    return synsets


def _parse_index(path: Path) -> dict[str, LemmaEntry]:
    entries: dict[str, LemmaEntry] = {}
    for lineno, line in _data_lines(path):
        parts = line.split()
        try:
            lemma = parts[0].lower()
            synset_cnt = int(parts[2])
            p_cnt = int(parts[3])
            offsets = parts[4 + p_cnt + 2 :]
            if len(offsets) != synset_cnt or synset_cnt == 0:
                raise ValueError(f"expected {synset_cnt} offsets, got {len(offsets)}")
            senses = tuple(int(o) for o in offsets)
        except (IndexError, ValueError) as exc:
            raise WordNetError(f"{path}:{lineno}: malformed index line ({exc})") from None
        entries[lemma] = LemmaEntry(lemma, senses)
    return entries


def _parse_exceptions(path: Path) -> dict[str, tuple[str, ...]]:
    exc: dict[str, tuple[str, ...]] = {}
    for lineno, line in _data_lines(path):
        parts = line.split()
        if len(parts) < 2:
            raise WordNetError(f"{path}:{lineno}: malformed exception line")
        exc[parts[0].lower()] = tuple(p.lower() for p in parts[1:])
    return exc


def load_database(dir_path, include_instance_hypernyms: bool = True) -> WordNetDb:
    """Parse ``index.noun``, ``data.noun`` and ``noun.exc`` from a WordNet dict dir."""
    root = Path(dir_path).expanduser()
    for name in NOUN_FILES:
        if not (root / name).is_file():
            raise WordNetError(f"missing WordNet file: {root / name}")

    kinds = {HYPERNYM, INSTANCE_HYPERNYM} if include_instance_hypernyms else {HYPERNYM}
    synsets = _parse_data(root / "data.noun", frozenset(kinds))
    entries = _parse_index(root / "index.noun")
    exceptions = _parse_exceptions(root / "noun.exc")

    for s in synsets.values():
        for h in s.hypernyms:
            if h not in synsets:
                raise WordNetError(f"synset {s.id:08d} points to missing hypernym {h:08d}")
    for e in entries.values():
        for sense in e.senses:
            if sense not in synsets:
                raise WordNetError(f"lemma {e.lemma!r} refers to missing synset {sense:08d}")

    return WordNetDb(
        entries=MappingProxyType(entries),
        synsets=MappingProxyType(synsets),
        exceptions=MappingProxyType(exceptions),
        version=_sniff_version(root / "index.noun"),
        source=str(root),
    )

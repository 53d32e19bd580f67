"""Phrase-by-phrase similarity matrix: construction and text persistence."""

from __future__ import annotations

import hashlib
import json
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .errors import DigestError, EmptyPhraseError, MatrixFormatError
from .normalize import NormalizedPhrase
from .similarity import DEFAULT_PARAMS, SimilarityParams, WordScorer
from .wordnet import WordNetDb

MAGIC = "lexiclust-matrix v1"


@dataclass(frozen=True)
class SimilarityMatrix:
    phrases: tuple[NormalizedPhrase, ...]
    values: tuple[tuple[float, ...], ...]
    manifest: dict = field(default_factory=dict, compare=True)

    def __post_init__(self):
        n = len(self.phrases)
        if n == 0:
            raise ValueError("matrix needs at least one phrase")
        if len(self.values) != n or any(len(row) != n for row in self.values):
            raise ValueError(f"values must be {n}x{n}")

    def __len__(self) -> int:
        return len(self.phrases)

    def __getitem__(self, ij) -> float:
        i, j = ij
        return self.values[i][j]

    def row(self, i: int) -> tuple[float, ...]:
        return self.values[i]

    @property
    def labels(self) -> list[str]:
        return [p.raw for p in self.phrases]


def dataset_digest(phrases: Sequence[NormalizedPhrase]) -> str:
    payload = json.dumps(
        [[p.raw, list(p.tokens), list(p.dropped)] for p in phrases],
        ensure_ascii=False,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


# worker state, inherited through fork
_WORKER: dict = {}


def _init_worker(db, params, phrases):
    _WORKER["scorer"] = WordScorer(db, params)
    _WORKER["phrases"] = phrases


def _rows(bounds):
    start, stop = bounds
    return start, [_row(_WORKER["scorer"], _WORKER["phrases"], i) for i in range(start, stop)]


def _row(scorer: WordScorer, phrases, i: int) -> list[float]:
    # upper triangle including the diagonal
    return [scorer.phrase(phrases[i], phrases[j]) for j in range(i, len(phrases))]


def _row_blocks(n: int, jobs: int) -> list[tuple[int, int]]:
    # rows shrink toward the bottom of the triangle; interleave small blocks
    size = max(1, n // (jobs * 8))
    return [(s, min(n, s + size)) for s in range(0, n, size)]


def build_matrix(
    db: WordNetDb,
    phrases: Sequence[NormalizedPhrase],
    params: SimilarityParams = DEFAULT_PARAMS,
    jobs: int = 1,
) -> SimilarityMatrix:
    """Score every unordered phrase pair once and mirror it.

    The diagonal holds each phrase's computed self-similarity. ``jobs``
    only changes how rows are scheduled; cells are computed by the same
    order-independent arithmetic, so the table is identical for any value.
    """
    phrases = tuple(phrases)
    if not phrases:
        raise ValueError("cannot build a matrix for an empty dataset")
    for p in phrases:
        if not p.tokens:
            raise EmptyPhraseError(p.raw)
    n = len(phrases)
    upper: list[list[float] | None] = [None] * n
    if jobs > 1 and n > 1:
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(jobs, mp_context=ctx, initializer=_init_worker,
                                 initargs=(db, params, phrases)) as pool:
            for start, rows in pool.map(_rows, _row_blocks(n, jobs)):
                for k, row in enumerate(rows):
                    upper[start + k] = row
    else:
        scorer = WordScorer(db, params)
        for i in range(n):
            upper[i] = _row(scorer, phrases, i)

    values = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for k, v in enumerate(upper[i]):
            values[i][i + k] = v
            values[i + k][i] = v
    manifest = {
        "n": n,
        "wordnet_version": db.version,
        "params": params.as_dict(),
        "dataset_sha256": dataset_digest(phrases),
    }
    return SimilarityMatrix(phrases, tuple(map(tuple, values)), manifest)


def _clean(text: str) -> str:
    if "\t" in text or "\n" in text:
        raise MatrixFormatError(f"phrase text may not contain tabs or newlines: {text!r}")
    return text


def dumps_matrix(matrix: SimilarityMatrix) -> str:
    m = matrix.manifest
    lines = [
        MAGIC,
        f"n={len(matrix)}",
        f"wordnet_version={m.get('wordnet_version', 'unknown')}",
        "params=" + json.dumps(m.get("params", {}), sort_keys=True, separators=(",", ":")),
        f"dataset_sha256={dataset_digest(matrix.phrases)}",
    ]
    # tokens and dropped words per phrase, so a reload restores full phrases
    for i, p in enumerate(matrix.phrases):
        lines.append(f"tokens.{i}={_clean(' '.join(p.tokens))}")
        lines.append(f"dropped.{i}={_clean(' '.join(p.dropped))}")
    lines.append("")
    lines.append("\t".join(_clean(p.raw) for p in matrix.phrases))
    for p, row in zip(matrix.phrases, matrix.values):
        lines.append("\t".join([p.raw] + [repr(v) for v in row]))
    return "\n".join(lines) + "\n"


def save_matrix(matrix: SimilarityMatrix, path) -> None:
    Path(path).write_text(dumps_matrix(matrix), encoding="utf-8")


def loads_matrix(text: str) -> SimilarityMatrix:
    lines = text.split("\n")
    if not lines or lines[0] != MAGIC:
        found = lines[0] if lines else ""
        raise MatrixFormatError(f"expected header {MAGIC!r}, found {found[:40]!r}")
    try:
        blank = lines.index("", 1)
    except ValueError:
        raise MatrixFormatError("manifest is not terminated by a blank line") from None

    raw_manifest = {}
    for line in lines[1:blank]:
        key, sep, value = line.partition("=")
        if not sep:
            raise MatrixFormatError(f"bad manifest line: {line!r}")
        raw_manifest[key] = value
    try:
        n = int(raw_manifest["n"])
        params = json.loads(raw_manifest["params"])
        digest = raw_manifest["dataset_sha256"]
        version = raw_manifest["wordnet_version"]
    except (KeyError, ValueError) as exc:
        raise MatrixFormatError(f"incomplete manifest: {exc}") from None

    body = lines[blank + 1 :]
    if body and body[-1] == "":
        body.pop()
    if not body:
        raise MatrixFormatError("missing phrase header row")
    labels = body[0].split("\t")
    rows = body[1:]
    if len(labels) != n:
        raise DigestError(f"manifest says n={n} but the header lists {len(labels)} phrases")
    if len(rows) != n:
        raise MatrixFormatError(f"expected {n} rows, found {len(rows)} (truncated file?)")

    phrases, values = [], []
    for i, (label, line) in enumerate(zip(labels, rows)):
        cells = line.split("\t")
        if len(cells) != n + 1:
            raise MatrixFormatError(f"row {i}: expected {n + 1} fields, found {len(cells)}")
        if cells[0] != label:
            raise MatrixFormatError(f"row {i}: label {cells[0]!r} does not match header {label!r}")
        try:
            values.append(tuple(float(c) for c in cells[1:]))
        except ValueError as exc:
            raise MatrixFormatError(f"row {i}: {exc}") from None
        tokens = raw_manifest.get(f"tokens.{i}")
        if tokens is None:
            raise MatrixFormatError(f"manifest lacks tokens.{i}")
        dropped = raw_manifest.get(f"dropped.{i}", "")
        phrases.append(NormalizedPhrase(label, tuple(tokens.split()), tuple(dropped.split())))

    for i in range(n):
        for j in range(i):
            if values[i][j] != values[j][i]:
                raise MatrixFormatError(f"matrix is not symmetric at ({i}, {j})")
    if dataset_digest(phrases) != digest:
        raise DigestError("dataset_sha256 does not match the phrase list")
    manifest = {"n": n, "wordnet_version": version, "params": params, "dataset_sha256": digest}
    return SimilarityMatrix(tuple(phrases), tuple(values), manifest)


def load_matrix(path) -> SimilarityMatrix:
    return loads_matrix(Path(path).read_text(encoding="utf-8"))

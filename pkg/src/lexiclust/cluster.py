"""Medoid-based k-means over a precomputed similarity matrix, plus k sweeps.

Every function accepts either a :class:`~lexiclust.matrix.SimilarityMatrix`
or a plain square list of rows. Ties are always broken toward the lowest
index, so results are a pure function of the matrix and the settings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

DEFAULT_THRESHOLD = 0.2
DEFAULT_MAX_ITER = 15
DEFAULT_PLATEAU_EPS = 0.02


@dataclass(frozen=True)
class Cluster:
    medoid: int
    members: tuple[int, ...]
    quality: float

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ClusteringResult:
    k: int
    clusters: tuple[Cluster, ...]
    iterations_run: int
    converged: bool

    @property
    def medoids(self) -> tuple[int, ...]:
        return tuple(c.medoid for c in self.clusters)

    def labels(self) -> list[int]:
        """Cluster index of every phrase, in phrase order."""
        out = [-1] * sum(c.size for c in self.clusters)
        for ci, c in enumerate(self.clusters):
            for m in c.members:
                out[m] = ci
        return out


@dataclass(frozen=True)
class SweepRow:
    k: int
    s_max: float
    s_min: float
    s_avg: float
    converged: bool
    iterations_run: int


@dataclass(frozen=True)
class SweepReport:
    rows: tuple[SweepRow, ...]
    suggested_k: int | None = None


def _rows(matrix) -> Sequence[Sequence[float]]:
    rows = getattr(matrix, "values", matrix)
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("similarity matrix must be square and nonempty")
    return rows


def _check_k(k: int, n: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}, got {k}")


def _argmax(values) -> int:
    best_i, best = 0, None
    for i, v in enumerate(values):
        if best is None or v > best:
            best_i, best = i, v
    return best_i


def initial_blocks(n: int, k: int) -> list[range]:
    """Consecutive blocks of ``n // k``; the last block takes the remainder."""
    _check_k(k, n)
    b = n // k
    return [range(i * b, (i + 1) * b) for i in range(k - 1)] + [range((k - 1) * b, n)]


def initial_medoids(matrix, k: int, threshold: float = DEFAULT_THRESHOLD) -> list[int]:
    """Pick, in each block, the phrase with most in-block neighbours above ``threshold``."""
    rows = _rows(matrix)
    medoids = []
    for block in initial_blocks(len(rows), k):
        counts = [sum(1 for p in block if rows[p][j] > threshold) for j in block]
        medoids.append(block[_argmax(counts)])
    return medoids


def assign(matrix, medoids: Sequence[int]) -> list[int]:
    """Cluster index for each phrase: the medoid it is most similar to.

    A cluster that attracts nobody, not even its own medoid, gets its
    medoid back as a singleton so that exactly k clusters survive.
    """
    rows = _rows(matrix)
    if not medoids or len(set(medoids)) != len(medoids):
        raise ValueError("medoids must be distinct and nonempty")
    labels = [_argmax([rows[e][d] for d in medoids]) for e in range(len(rows))]
    while True:
        sizes = [0] * len(medoids)
        for c in labels:
            sizes[c] += 1
        empty = [c for c, s in enumerate(sizes) if s == 0]
        if not empty:
            return labels
        labels[medoids[empty[0]]] = empty[0]


def _members(labels: Sequence[int], k: int) -> list[list[int]]:
    groups: list[list[int]] = [[] for _ in range(k)]
    for i, c in enumerate(labels):
        groups[c].append(i)
    return groups


def update_medoids(matrix, clusters: Sequence[Sequence[int]]) -> list[int]:
    """New medoid per cluster: the member with the largest similarity sum to all members."""
    rows = _rows(matrix)
    medoids = []
    for members in clusters:
        if not members:
            raise ValueError("cannot update the medoid of an empty cluster")
        members = sorted(members)
        sums = [math.fsum(rows[j][i] for j in members) for i in members]
        medoids.append(members[_argmax(sums)])
    return medoids


def cluster_similarity(matrix, members: Sequence[int], medoid: int) -> float:
    """Mean similarity of the members to the medoid (the medoid's own term included)."""
    rows = _rows(matrix)
    if not members or medoid not in members:
        raise ValueError("cluster must be nonempty and contain its medoid")
    return math.fsum(rows[j][medoid] for j in members) / len(members)


def cluster(
    matrix,
    k: int,
    max_iter: int = DEFAULT_MAX_ITER,
    threshold: float = DEFAULT_THRESHOLD,
) -> ClusteringResult:
    rows = _rows(matrix)
    _check_k(k, len(rows))
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    medoids = initial_medoids(rows, k, threshold)
    converged = False
    iterations = 0
    groups: list[list[int]] = []
    while iterations < max_iter:
        iterations += 1
        groups = _members(assign(rows, medoids), k)
        updated = update_medoids(rows, groups)
        if updated == medoids:
            converged = True
            break
        medoids = updated
    clusters = tuple(
        Cluster(d, tuple(g), cluster_similarity(rows, g, d)) for d, g in zip(medoids, groups)
    )
    return ClusteringResult(k, clusters, iterations, converged)


def quality_indices(result: ClusteringResult) -> tuple[float, float, float]:
    """(max, min, mean) of the per-cluster qualities."""
    if not result.clusters:
        raise ValueError("result has no clusters")
    q = [c.quality for c in result.clusters]
    return max(q), min(q), math.fsum(q) / len(q)


def suggest_k(rows: Sequence[SweepRow], eps: float = DEFAULT_PLATEAU_EPS) -> int | None:
    """Among rows whose mean quality is within ``eps`` of the best mean, the k with the best minimum."""
    if not rows:
        return None
    plateau = max(r.s_avg for r in rows)
    near = [r for r in rows if r.s_avg >= plateau - eps]
    return max(near, key=lambda r: (r.s_min, -r.k)).k


def sweep(
    matrix,
    k_min: int,
    k_max: int,
    max_iter: int = DEFAULT_MAX_ITER,
    threshold: float = DEFAULT_THRESHOLD,
    eps: float = DEFAULT_PLATEAU_EPS,
) -> SweepReport:
    rows = _rows(matrix)
    n = len(rows)
    if not 1 <= k_min <= k_max <= n:
        raise ValueError(f"need 1 <= k_min <= k_max <= {n}, got {k_min}..{k_max}")
    out = []
    for k in range(k_min, k_max + 1):
        res = cluster(rows, k, max_iter, threshold)
        s_max, s_min, s_avg = quality_indices(res)
        out.append(SweepRow(k, s_max, s_min, s_avg, res.converged, res.iterations_run))
    return SweepReport(tuple(out), suggest_k(out, eps))

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lexiclust.cluster import (
    SweepRow,
    assign,
    cluster,
    cluster_similarity,
    initial_blocks,
    initial_medoids,
    quality_indices,
    suggest_k,
    sweep,
    update_medoids,
)

# published sweep for the 237-factor dataset: k, max, min, avg
PUBLISHED = [
    (5, 0.3437, 0.1990, 0.2778),
    (6, 0.3408, 0.2469, 0.2873),
    (7, 0.4509, 0.2110, 0.3057),
    (8, 0.4592, 0.2684, 0.3577),
    (9, 0.4931, 0.2710, 0.3723),
    (10, 0.8, 0.2557, 0.4344),
    (11, 0.79, 0.2896, 0.4404),
    (12, 0.7409, 0.2483, 0.4457),
]


def zeros(n):
    return [[0.0] * n for _ in range(n)]


class TestInitialMedoids:
    def test_blocks(self):
        assert [list(b) for b in initial_blocks(7, 3)] == [[0, 1], [2, 3], [4, 5, 6]]
        assert [list(b) for b in initial_blocks(5, 5)] == [[0], [1], [2], [3], [4]]
        assert list(initial_blocks(4, 1)[0]) == [0, 1, 2, 3]

    def test_six_k2(self, six):
        # block {0,1,2}: counts 3, 2, 2 ; block {3,4,5}: counts 2, 3, 2
        assert initial_medoids(six, 2) == [0, 4]

    def test_six_k3(self, six):
        assert initial_medoids(six, 3) == [0, 2, 4]

    def test_threshold_is_strict(self):
        m = [[0.2, 0.2], [0.2, 0.3]]
        assert initial_medoids(m, 1) == [1]

    def test_tie_to_lowest(self):
        assert initial_medoids(zeros(4), 2) == [0, 2]


class TestAssign:
    def test_six(self, six):
        assert assign(six, [0, 4]) == [0, 0, 0, 0, 1, 1]
        assert assign(six, [2, 4]) == [0, 0, 0, 1, 1, 1]

    def test_tie_to_lowest_cluster(self):
        m = [[1.0, 0.5, 0.0], [0.5, 1.0, 0.5], [0.0, 0.5, 1.0]]
        # phrase 1 is equally close to medoids 2 and 0; cluster 0 holds medoid 2
        assert assign(m, [2, 0]) == [1, 0, 0]

    def test_empty_cluster_keeps_medoid(self):
        labels = assign(zeros(4), [0, 2])
        assert labels == [0, 0, 1, 0]

    def test_duplicate_medoids(self, six):
        with pytest.raises(ValueError):
            assign(six, [1, 1])


class TestUpdate:
    def test_largest_sum(self):
        m = [[0.4, 0.3, 0.4], [0.3, 0.2, 0.4], [0.4, 0.4, 0.5]]
        # sums 1.1, 0.9, 1.3
        assert update_medoids(m, [[0, 1, 2]]) == [2]

    def test_six_step(self, six):
        assert update_medoids(six, [[0, 1, 2, 3], [4, 5]]) == [2, 4]

    def test_tie_to_lowest(self):
        assert update_medoids(zeros(3), [[2, 0, 1]]) == [0]

    def test_empty(self, six):
        with pytest.raises(ValueError):
            update_medoids(six, [[]])


class TestClusterSimilarity:
    def test_includes_self_term(self, six):
        assert cluster_similarity(six, [0, 1, 2], 2) == pytest.approx((0.45 + 0.15 + 0.70) / 3, abs=1e-15)

    def test_medoid_must_be_member(self, six):
        with pytest.raises(ValueError):
            cluster_similarity(six, [0, 1], 2)


class TestHandTraces:
    def test_k2(self, six):
        r = cluster(six, 2)
        assert r.medoids == (2, 4)
        assert [c.members for c in r.clusters] == [(0, 1, 2), (3, 4, 5)]
        assert (r.iterations_run, r.converged) == (2, True)
        s_max, s_min, s_avg = quality_indices(r)
        assert s_max == pytest.approx(1.3 / 3, abs=1e-12)
        assert s_min == pytest.approx(1.15 / 3, abs=1e-12)
        assert s_avg == pytest.approx(0.408333333333, abs=1e-12)

    def test_k1(self, six):
        r = cluster(six, 1)
        assert r.medoids == (2,)
        assert (r.iterations_run, r.converged) == (2, True)
        assert quality_indices(r) == pytest.approx((0.25, 0.25, 0.25), abs=1e-12)

    def test_k3(self, six):
        r = cluster(six, 3)
        assert r.medoids == (3, 2, 4)
        assert [c.members for c in r.clusters] == [(3,), (0, 1, 2), (4, 5)]
        assert r.labels() == [1, 1, 1, 0, 2, 2]
        assert quality_indices(r) == pytest.approx((0.5, 1.3 / 3, 0.461111111111), abs=1e-12)

    def test_all_zero_retention(self):
        r = cluster(zeros(4), 2)
        assert [c.members for c in r.clusters] == [(0, 1, 3), (2,)]
        assert r.medoids == (0, 2)
        assert (r.iterations_run, r.converged) == (1, True)
        assert quality_indices(r) == (0.0, 0.0, 0.0)

    def test_k_equals_n(self, six):
        r = cluster(six, 6)
        assert sorted(c.members for c in r.clusters) == [(i,) for i in range(6)]

    def test_iteration_cap(self, six):
        r = cluster(six, 2, max_iter=1)
        assert (r.iterations_run, r.converged) == (1, False)
        # last assignment paired with the medoids updated from it
        assert r.medoids == (2, 4)
        assert [c.members for c in r.clusters] == [(0, 1, 2, 3), (4, 5)]

    @pytest.mark.parametrize("k", [0, 7, -1])
    def test_bad_k(self, six, k):
        with pytest.raises(ValueError):
            cluster(six, k)

    def test_bad_max_iter(self, six):
        with pytest.raises(ValueError):
            cluster(six, 2, max_iter=0)

    def test_not_square(self):
        with pytest.raises(ValueError):
            cluster([[1.0, 0.0]], 1)


@st.composite
def sym_matrix(draw):
    n = draw(st.integers(1, 9))
    cell = st.sampled_from([0.0, 0.05, 0.1, 0.2, 0.25, 0.3, 0.45, 0.6, 0.75])
    m = zeros(n)
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = draw(cell)
    k = draw(st.integers(1, n))
    return m, k


@settings(max_examples=300, deadline=None)
@given(sym_matrix())
def test_clustering_contracts(case):
    m, k = case
    r = cluster(m, k)
    n = len(m)
    # partition into exactly k nonempty clusters
    members = sorted(i for c in r.clusters for i in c.members)
    assert members == list(range(n))
    assert len(r.clusters) == k and all(c.size for c in r.clusters)
    assert 1 <= r.iterations_run <= 15
    for c in r.clusters:
        assert c.medoid in c.members
        assert 0.0 <= c.quality <= max(max(row) for row in m)
    # update contract: every medoid maximizes its in-cluster similarity sum
    assert list(r.medoids) == update_medoids(m, [c.members for c in r.clusters])
    # assignment contract, once the medoids stopped moving
    if r.converged:
        assert r.labels() == assign(m, list(r.medoids))
    assert cluster(m, k) == r


def test_suggest_k_on_published_table():
    rows = [SweepRow(k, a, b, c, True, 1) for k, a, b, c in PUBLISHED]
    assert suggest_k(rows) == 11


def test_suggest_k_tie_lowest():
    rows = [SweepRow(k, 0.5, 0.2, 0.3, True, 1) for k in (4, 5, 6)]
    assert suggest_k(rows) == 4
    assert suggest_k([]) is None


class TestSweep:
    def test_rows(self, six):
        rep = sweep(six, 1, 6)
        assert [r.k for r in rep.rows] == [1, 2, 3, 4, 5, 6]
        assert rep.rows[1].s_avg == pytest.approx(0.408333333333, abs=1e-12)
        assert rep.suggested_k in range(1, 7)

    def test_matches_single_runs(self, six):
        rep = sweep(six, 2, 3)
        for row in rep.rows:
            assert (row.s_max, row.s_min, row.s_avg) == quality_indices(cluster(six, row.k))

    @pytest.mark.parametrize("lo, hi", [(0, 2), (3, 2), (2, 7)])
    def test_bad_range(self, six, lo, hi):
        with pytest.raises(ValueError):
            sweep(six, lo, hi)

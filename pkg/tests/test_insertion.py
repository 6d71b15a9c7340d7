"""Insertion profiles, weighted sums, constellations, reconstruction checks."""

import pytest
from hypothesis import given, settings, strategies as st

from matchbound.errors import PreconditionError, UsageError
from matchbound.geom import Point, PointSet, generate_point_set
from matchbound.insertion import (
    ConstellationClass,
    InsertionProfile,
    check_bad_constellation_removal,
    check_unique_edge_reconstruction,
    classify_constellation,
    extract_constellation,
    insertion_profile,
    is_good_point,
    one_sided_counts,
    weighted_sum,
)
from matchbound.matchings import Matching, enumerate_matchings, isolated_vertices
from matchbound.trapezoids import Side, Trapezoidation

TRIANGLE = PointSet([Point(0, 0), Point(2, 3), Point(4, 0)])


def _mirror(ps: PointSet) -> PointSet:
    return PointSet(Point(-p.x, p.y) for p in ps.points)


class TestProfiles:
    def test_two_points(self):
        ps = PointSet([Point(0, 0), Point(1, 1)])
        prof = insertion_profile(0, ps, Matching(()))
        assert prof.h == (1, 0, 0)
        assert prof.l == (0, 0, 0)
        assert prof.r == (1, 0, 0)

    def test_apex_both_insertions_rank_zero(self):
        # the third point's x falls outside either inserted edge's span,
        # so neither insertion earns the apex any rank
        prof = insertion_profile(1, TRIANGLE, Matching(()))
        assert prof.h == (2, 0, 0, 0)
        assert prof.l == (1, 0, 0, 0)
        assert prof.r == (1, 0, 0, 0)
        assert prof.total == 2

    def test_matched_point_rejected(self):
        with pytest.raises(PreconditionError):
            insertion_profile(0, TRIANGLE, Matching.from_edges([(0, 2)]))

    def test_h_splits_into_l_plus_r(self):
        for seed in range(8):
            ps = generate_point_set(6, seed)
            for M in enumerate_matchings(ps):
                for p in isolated_vertices(ps, M):
                    prof = insertion_profile(p, ps, M)
                    assert tuple(
                        a + b for a, b in zip(prof.l, prof.r)
                    ) == prof.h

    def test_total_counts_compatible_partners(self):
        # every insertion corresponds to a size-(m+1) matching extending M
        for seed in range(4):
            ps = generate_point_set(6, seed)
            ms = list(enumerate_matchings(ps))
            by_edges = {m.edges for m in ms}
            for M in ms:
                for p in isolated_vertices(ps, M):
                    prof = insertion_profile(p, ps, M)
                    ext = sum(
                        1
                        for q in isolated_vertices(ps, M)
                        if q != p
                        and tuple(sorted(M.edges + (tuple(sorted((p, q))),)))
                        in by_edges
                    )
                    assert prof.total == ext

    def test_mirror_swaps_sides(self):
        for seed in range(8):
            ps = generate_point_set(6, seed)
            mir = _mirror(ps)
            n = ps.n
            for M in enumerate_matchings(ps):
                Mm = Matching.from_edges(
                    tuple(sorted((n - 1 - u, n - 1 - w))) for u, w in M.edges
                )
                for p in isolated_vertices(ps, M):
                    a = insertion_profile(p, ps, M)
                    b = insertion_profile(n - 1 - p, mir, Mm)
                    assert a.h == b.h and a.l == b.r and a.r == b.l


class TestWeightedSums:
    def test_simple_values(self):
        prof = InsertionProfile(0, (1, 0, 0, 0), (0, 0, 0, 0), (1, 0, 0, 0))
        assert weighted_sum(prof, 4) == 4
        assert weighted_sum(prof, 5) == 5
        assert weighted_sum(prof, 3) == 3

    def test_known_tuples(self):
        p12 = InsertionProfile(0, (0, 2, 2, 2), (0, 2, 2, 2), (0, 0, 0, 0))
        assert weighted_sum(p12, 4, "left") == 12
        p11 = InsertionProfile(0, (0, 0, 3, 5), (0, 0, 3, 5), (0, 0, 0, 0))
        assert weighted_sum(p11, 4, "left") == 11

    def test_invalid_arguments(self):
        prof = InsertionProfile(0, (1,), (1,), (0,))
        with pytest.raises(UsageError):
            weighted_sum(prof, 6)
        with pytest.raises(UsageError):
            weighted_sum(prof, 4, "up")

    def test_one_sided_counts(self):
        prof = InsertionProfile(0, (2, 0), (1, 0), (1, 0))
        assert one_sided_counts(prof, Side.LEFT) == (1, 0)
        assert one_sided_counts(prof, Side.RIGHT) == (1, 0)

    @settings(max_examples=25, deadline=None)
    @given(
        st.lists(st.integers(min_value=0, max_value=5), min_size=6, max_size=9),
        st.sampled_from([3, 4, 5]),
    )
    def test_matches_direct_formula(self, counts, k):
        h = tuple(counts)
        prof = InsertionProfile(0, h, h, tuple(0 for _ in h))
        assert weighted_sum(prof, k) == sum(
            (k - i) * h[i] for i in range(k + 1)
        )


class TestConstellations:
    def test_two_point_isolated_bifurcation(self):
        ps = PointSet([Point(0, 0), Point(1, 1)])
        c = extract_constellation(1, Side.LEFT, ps, Matching(()))
        assert c.bifurcation == 0
        assert c.bifurcation_edge is None
        assert c.members == frozenset({0})
        assert c.targets == frozenset({0})
        assert classify_constellation(c, ps, Matching(())) is (
            ConstellationClass.ISOLATED_BIFURCATION
        )

    def test_apex_over_edge(self):
        M = Matching.from_edges([(0, 2)])
        c = extract_constellation(1, Side.LEFT, TRIANGLE, M)
        assert c.bifurcation == 0
        assert c.bifurcation_edge == (0, 2)
        assert c.members == frozenset()
        # vacuously good: the edge spans all (zero) members
        assert classify_constellation(c, TRIANGLE, M) is ConstellationClass.GOOD
        assert not is_good_point(1, TRIANGLE, M)

    def test_unbounded_side(self):
        ps = PointSet([Point(0, 0), Point(1, 1)])
        c = extract_constellation(0, Side.LEFT, ps, Matching(()))
        assert c.bifurcation is None
        assert classify_constellation(c, ps, Matching(())) is (
            ConstellationClass.UNBOUNDED
        )

    def test_weighted_matches_profile(self):
        for seed in range(5):
            ps = generate_point_set(6, seed)
            for M in enumerate_matchings(ps):
                for p in isolated_vertices(ps, M):
                    prof = insertion_profile(p, ps, M)
                    for side in (Side.LEFT, Side.RIGHT):
                        c = extract_constellation(p, side, ps, M)
                        assert c.l_counts == one_sided_counts(prof, side)
                        for k in (3, 4, 5):
                            assert c.weighted(k) == weighted_sum(
                                prof, k, side.value
                            )

    def test_targets_subset_of_members(self):
        for seed in range(5):
            ps = generate_point_set(7, seed)
            for M in enumerate_matchings(ps):
                for p in isolated_vertices(ps, M):
                    for side in (Side.LEFT, Side.RIGHT):
                        c = extract_constellation(p, side, ps, M)
                        assert c.targets <= c.members
                        assert p not in c.members

    def test_matched_point_rejected(self):
        with pytest.raises(PreconditionError):
            extract_constellation(0, Side.LEFT, TRIANGLE, Matching.from_edges([(0, 2)]))


class TestUniqueEdgeReconstruction:
    def _qualifying_pairs(self, ps, M, trap):
        iso = isolated_vertices(ps, M)
        bifs = {
            p: {s: trap.bifurcation_point(p, s) for s in (Side.LEFT, Side.RIGHT)}
            for p in iso
        }
        for i, u in enumerate(iso):
            for v in iso[i + 1:]:
                a, b = (u, v) if ps.ys[u] > ps.ys[v] else (v, u)
                if (
                    bifs[a][Side.LEFT] is not None
                    and bifs[a][Side.LEFT] == bifs[b][Side.LEFT]
                    and bifs[a][Side.RIGHT] is not None
                    and bifs[a][Side.RIGHT] == bifs[b][Side.RIGHT]
                ):
                    yield a, b

    def test_round_trip_on_corpus(self):
        attempted = succeeded = 0
        for seed in range(12):
            ps = generate_point_set(6, seed)
            for M in enumerate_matchings(ps):
                if M.m == 0:
                    continue
                trap = Trapezoidation(ps, M)
                for a, b in self._qualifying_pairs(ps, M, trap):
                    try:
                        out = check_unique_edge_reconstruction(a, b, ps, M)
                    except PreconditionError:
                        continue
                    attempted += 1
                    assert out.removed_edge in M.edges
                    if out.unique:
                        succeeded += 1
                        assert out.reconstructed == out.removed_edge
        assert attempted > 0
        assert succeeded == attempted

    def test_matched_input_rejected(self):
        M = Matching.from_edges([(0, 2)])
        with pytest.raises(PreconditionError):
            check_unique_edge_reconstruction(1, 0, TRIANGLE, M)

    def test_order_rejected(self):
        ps = PointSet([Point(0, 0), Point(2, 3), Point(4, 1), Point(6, 2)])
        with pytest.raises(PreconditionError, match="above"):
            check_unique_edge_reconstruction(0, 1, ps, Matching(()))

    def test_shared_bifurcation_required(self):
        ps = PointSet([Point(0, 0), Point(2, 3), Point(4, 1)])
        with pytest.raises(PreconditionError, match="bifurcation"):
            check_unique_edge_reconstruction(1, 2, ps, Matching(()))


class TestBadConstellationRemoval:
    def test_non_bad_rejected(self):
        M = Matching.from_edges([(0, 2)])
        with pytest.raises(PreconditionError, match="not bad"):
            check_bad_constellation_removal(1, Side.LEFT, TRIANGLE, M)

    def test_relocation_on_corpus(self):
        attempted = 0
        for seed in range(20):
            ps = generate_point_set(7, seed)
            for M in enumerate_matchings(ps):
                if M.m == 0:
                    continue
                for p in isolated_vertices(ps, M):
                    for side in (Side.LEFT, Side.RIGHT):
                        c = extract_constellation(p, side, ps, M)
                        if (
                            classify_constellation(c, ps, M)
                            is not ConstellationClass.BAD
                        ):
                            continue
                        out = check_bad_constellation_removal(p, side, ps, M)
                        attempted += 1
                        assert out.unique
                        assert out.reconstructed == out.removed_edge
                        assert out.observed_index >= 1
        assert attempted > 0

"""Monotone subset extraction, normalization, and realizer extraction."""

import random
from itertools import combinations

from hypothesis import given, settings, strategies as st

from sepdim.exact import exact_pi_subdivided_clique
from sepdim.families import Permutation, PermutationFamily, verify_pairwise_suitable
from sepdim.graphs import Graph, subdivide
from sepdim.lowerbound import (
    best_monotone_subset,
    canonical_dimension_lower_bound,
    common_monotone_subset,
    extract_realizer,
    extraction_floor,
    longest_increasing_indices,
    longest_monotone_indices,
    lower_bound_harness,
    normalize_lower_bound_family,
)
from sepdim.posets import canonical_interval_order, exact_poset_dimension, is_realizer


def brute_longest_monotone(seq):
    """Independent oracle: scan all subsequences (small inputs only)."""
    best = 0
    n = len(seq)
    for size in range(n, 0, -1):
        for idxs in combinations(range(n), size):
            vals = [seq[i] for i in idxs]
            if vals == sorted(vals) or vals == sorted(vals, reverse=True):
                return size
    return best


class TestPatience:
    def test_known_sequence(self):
        seq = [2, 1, 4, 3, 5]
        idx = longest_increasing_indices(seq)
        vals = [seq[i] for i in idx]
        assert vals == sorted(vals) and len(vals) == 3

    @settings(max_examples=80)
    @given(st.permutations(list(range(8))))
    def test_matches_brute_oracle(self, seq):
        idx, direction = longest_monotone_indices(list(seq))
        vals = [seq[i] for i in idx]
        if direction > 0:
            assert vals == sorted(vals)
        else:
            assert vals == sorted(vals, reverse=True)
        assert len(idx) == brute_longest_monotone(list(seq))

    def test_empty(self):
        assert longest_increasing_indices([]) == []


class TestCommonMonotoneSubset:
    def test_single_member_returns_target(self):
        fam = PermutationFamily.build(range(5), [Permutation((3, 1, 4, 0, 2))])
        res = common_monotone_subset(fam, range(5))
        assert set(res.vertices) == set(range(5))
        assert res.directions == (1,)

    def test_two_members_known_pair(self):
        fam = PermutationFamily.build(
            range(1, 6),
            [Permutation((1, 2, 3, 4, 5)), Permutation((2, 1, 4, 3, 5))],
        )
        res = common_monotone_subset(fam, range(1, 6))
        assert len(res.vertices) >= 3
        # every member restricted to the subset is monotone
        for member, direction in zip(fam.members, res.directions):
            ranks = [member.rank(v) for v in res.vertices]
            expected = sorted(ranks) if direction > 0 else sorted(ranks, reverse=True)
            assert ranks == expected

    def test_identical_members_keep_everything(self):
        p = Permutation((4, 2, 0, 3, 1))
        fam = PermutationFamily.build(range(5), [p, p, p])
        res = common_monotone_subset(fam, range(5))
        assert len(res.vertices) == 5
        assert res.directions == (1, 1, 1)

    def test_erdos_szekeres_guarantee(self):
        # pairs of permutations of [m^2+1] share a monotone set of m+1
        for m in (3, 4, 5):
            size = m * m + 1
            for seed in range(20):
                rng = random.Random(seed * 31 + m)
                a = list(range(size))
                b = list(range(size))
                rng.shuffle(a)
                rng.shuffle(b)
                fam = PermutationFamily.build(
                    range(size), [Permutation(a), Permutation(b)]
                )
                res = common_monotone_subset(fam, range(size))
                assert len(res.vertices) >= m + 1


class TestExtractionFloor:
    def test_values(self):
        assert extraction_floor(3, 2) == 3  # ceil(sqrt(2)) + 1
        assert extraction_floor(4, 2) == 3  # ceil(sqrt(3)) + 1
        assert extraction_floor(4, 3) == 3  # ceil(3 ** (1/4)) + 1
        assert extraction_floor(2, 1) == 2
        assert extraction_floor(17, 3) == 3

    def test_exactness_against_floats(self):
        for target in range(2, 40):
            for r in range(1, 5):
                k = 2 ** (r - 1)
                c = extraction_floor(target, r) - 1
                assert c ** k >= target - 1
                assert c == 0 or (c - 1) ** k < target - 1


class TestNormalizeAndExtract:
    def _k3_setup(self):
        res, gsub, smap = exact_pi_subdivided_clique(3)
        return res.witness, gsub, smap

    def test_reversal_applied(self):
        fam, gsub, smap = self._k3_setup()
        subset = best_monotone_subset(fam, smap.original_vertices)
        normalized = normalize_lower_bound_family(fam, smap, subset.vertices)
        xs = subset.vertices
        for member in normalized.members:
            ranks = [member.rank(x) for x in xs]
            assert ranks == sorted(ranks)

    def test_mids_between_endpoints(self):
        fam, gsub, smap = self._k3_setup()
        subset = best_monotone_subset(fam, smap.original_vertices)
        normalized = normalize_lower_bound_family(fam, smap, subset.vertices)
        xs = subset.vertices
        for member in normalized.members:
            for i in range(len(xs)):
                for j in range(i + 1, len(xs)):
                    lo, hi = sorted((xs[i], xs[j]))
                    mid = smap.mid_of[(lo, hi)]
                    assert member.rank(xs[i]) < member.rank(mid) < member.rank(xs[j])

    def test_normalization_preserves_suitability(self):
        fam, gsub, smap = self._k3_setup()
        subset = best_monotone_subset(fam, smap.original_vertices)
        normalized = normalize_lower_bound_family(fam, smap, subset.vertices)
        assert verify_pairwise_suitable(normalized, gsub).ok

    def test_relocation_example(self):
        # mid placed after its right endpoint must move to its immediate
        # predecessor and keep the family suitable
        g = Graph.from_edges([(1, 2)])
        gsub, smap = subdivide(g)
        mid = smap.mid_of[(1, 2)]
        fam = PermutationFamily.build(
            gsub.vertices, [Permutation((1, 2, mid))]
        )
        normalized = normalize_lower_bound_family(fam, smap, (1, 2))
        assert normalized.members[0].order == (1, mid, 2)

    def test_extract_realizer_p2(self):
        g = Graph.from_edges([(1, 2)])
        gsub, smap = subdivide(g)
        mid = smap.mid_of[(1, 2)]
        fam = PermutationFamily.build(gsub.vertices, [Permutation((1, mid, 2))])
        realizer = extract_realizer(fam, smap, (1, 2))
        assert len(realizer) == 1

    def test_extract_realizer_k3(self):
        fam, gsub, smap = self._k3_setup()
        subset = best_monotone_subset(fam, smap.original_vertices)
        normalized = normalize_lower_bound_family(fam, smap, subset.vertices)
        realizer = extract_realizer(normalized, smap, subset.vertices)
        p = len(subset.vertices)
        assert is_realizer(realizer, canonical_interval_order(p).poset)
        dim = exact_poset_dimension(canonical_interval_order(p).poset, limit=4).dimension
        assert len(fam.members) >= dim


class TestHarness:
    def test_n2_trivial(self):
        rep = lower_bound_harness(2)
        assert rep.pi == 0 and rep.subset is None

    def test_n3_full_pipeline(self):
        rep = lower_bound_harness(3)
        assert rep.exact and rep.pi == 2
        assert rep.floor == 3 and rep.floor_met
        assert rep.realizer is not None
        assert rep.bound_holds

    def test_construction_only_mode(self):
        rep = lower_bound_harness(8, seed=0)
        assert not rep.exact
        assert rep.realizer is not None
        assert rep.bound_holds


def test_canonical_lower_bound_values():
    assert canonical_dimension_lower_bound(2) == 1
    assert canonical_dimension_lower_bound(3) == 1
    assert canonical_dimension_lower_bound(5) == 1
    assert canonical_dimension_lower_bound(17) == 2

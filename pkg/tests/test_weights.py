from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import families, weights
from fcfam.errors import UsageError
from fcfam.family import Family, full_set, make_set
from fcfam.weights import (
    build_share_table,
    family_share,
    family_weight,
    hyper_share,
    hypercube,
    is_weight_fn_on,
    project,
    set_share,
    set_weight,
    subsets_of,
    weight_fn,
)

W = (1, 2, 0)
X = make_set([0, 1, 2])
TRIO = Family.from_lists([[0, 1], [1, 2], [1]], 3)

# Hypercube examples: s0, s1 are elements 0, 1 and k0, k1 are 2, 3.
S = make_set([0, 1])
K0, K1 = 1 << 2, 1 << 3
HF = Family.from_lists([[0], [1], [2, 0], [2, 3, 0, 1]], 4)
ONES = (1, 1, 1, 1)


class TestWeights:
    def test_set_weight(self):
        assert set_weight(W, X) == 3

    def test_family_weight(self):
        assert family_weight(W, TRIO) == 7

    def test_empty_set(self):
        assert set_weight(W, 0) == 0

    def test_rejects_negative(self):
        with pytest.raises(UsageError):
            weight_fn([1, -1])

    def test_length_check(self):
        with pytest.raises(UsageError):
            weight_fn([1, 1], 3)

    def test_weight_fn_on(self):
        assert is_weight_fn_on(W, make_set([1, 2]))
        assert not is_weight_fn_on(W, make_set([2]))


class TestShares:
    def test_set_share(self):
        assert set_share(W, make_set([1, 2]), X) == 1

    def test_family_share(self):
        assert family_share(W, TRIO, X) == 5

    @given(weights(4), st.integers(0, 15))
    def test_full_set_share_is_weight(self, w, x):
        assert set_share(w, x, x) == set_weight(w, x)

    def test_subset_required(self):
        with pytest.raises(UsageError):
            set_share(W, make_set([0]), make_set([1]))

    @given(st.integers(1, 6).flatmap(lambda n: st.tuples(families(n, 16), weights(n))))
    def test_family_share_identity(self, fw):
        f, w = fw
        x = full_set(f.n)
        assert family_share(w, f, x) == 2 * family_weight(w, f) - set_weight(w, x) * len(f)


class TestShareTable:
    def test_unit_weights(self):
        t = build_share_table((1, 1, 1), X)
        assert (t[0], t[1], t[3], t[X]) == (-3, -1, 1, 3)

    def test_mixed_weights(self):
        assert build_share_table(W, X)[make_set([1, 2])] == 1

    def test_zero(self):
        assert set(build_share_table((0, 0, 0), X).shares) == {0}

    @given(weights(5), st.integers(0, 31))
    def test_matches_direct(self, w, x):
        t = build_share_table(w, x)
        for a in subsets_of(x):
            assert t[a] == set_share(w, a, x)


class TestHypercubes:
    def test_hyper_shares(self):
        x = full_set(4)
        got = [hyper_share(k, S, HF, ONES, x) for k in (0, K0, K1, K0 | K1)]
        assert got == [-4, 0, 0, 4]

    def test_projections(self):
        got = [project(k, S, HF) for k in (0, K0, K1, K0 | K1)]
        assert got == [
            Family.from_lists([[0], [1]], 4),
            Family.from_lists([[0]], 4),
            Family.empty(4),
            Family.from_lists([[0, 1]], 4),
        ]

    def test_project_empty(self):
        assert project(0, S, Family.empty(4)) == Family.empty(4)

    def test_overlap_rejected(self):
        with pytest.raises(UsageError):
            list(hypercube(1, 3))

    def test_hypercube_members(self):
        assert sorted(hypercube(K0, S)) == sorted([K0, K0 | 1, K0 | 2, K0 | 3])

    @given(st.integers(0, 63), st.integers(0, 63))
    def test_decomposition(self, k, s):
        s &= ~k
        cubes = [set(hypercube(kk, s)) for kk in subsets_of(k)]
        total = set().union(*cubes)
        assert total == set(subsets_of(k | s))
        assert sum(len(c) for c in cubes) == len(total)

    @given(families(6, 20), weights(6), st.integers(0, 63))
    def test_share_splits_over_hypercubes(self, f, w, s):
        u = f.union
        s &= u
        k = u & ~s
        total = sum(hyper_share(kk, s, f, w, u) for kk in subsets_of(k))
        assert total == family_share(w, f, u)

    @given(families(5, 12), weights(5), st.integers(0, 31), st.integers(0, 31))
    def test_projection_share_with_zero_base(self, f, w, k, s):
        s &= ~k
        w = tuple(0 if k >> i & 1 else v for i, v in enumerate(w))
        x = full_set(5)
        assert hyper_share(k, s, f, w, x) == family_share(w, project(k, s, f), x)

from __future__ import annotations

import itertools

from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import families
from fcfam.family import Family, closure, make_set
from fcfam.irreducible import is_dependent, is_irreducible, reduce


def F(*sets, n=None):
    return Family.from_lists(sets, n)


ALL3 = [Family.of(s, 3) for r in range(9) for s in itertools.combinations(range(8), r)]


class TestDependent:
    def test_union_of_two(self):
        assert is_dependent(make_set([0, 1]), F([0], [1]))

    def test_not_covered(self):
        assert not is_dependent(make_set([0, 1]), F([0], [2]))

    def test_single_member(self):
        assert is_dependent(make_set([0]), F([0]))

    @given(st.integers(0, 15), families(4, 8))
    def test_matches_oracle(self, a, f):
        aa = frozenset(i for i in range(4) if a >> i & 1)
        assert is_dependent(a, f) == oracles.is_dependent(aa, oracles.to_fam(f))


class TestIrreducible:
    def test_reducible(self):
        assert not is_irreducible(F([0], [1], [0, 1]))

    def test_irreducible(self):
        assert is_irreducible(F([0], [1]))

    def test_empty(self):
        assert is_irreducible(Family.empty(2))

    def test_exhaustive_over_three(self):
        for f in ALL3:
            assert is_irreducible(f) == oracles.is_irreducible(oracles.to_fam(f))


class TestReduce:
    def test_drops_union(self):
        assert reduce(F([0], [1], [0, 1])) == F([0], [1])

    def test_fixpoint(self):
        f = F([0, 1], [1, 2])
        assert reduce(f) == f

    def test_chain_basis(self):
        base = F([0, 1], [1, 2], [2, 3])
        assert reduce(closure(base)) == base

    @given(families(5, 12))
    def test_preserves_closure(self, f):
        r = reduce(f)
        assert closure(r) == closure(f)
        assert is_irreducible(r)
        assert r.issubset(f)

    def test_preserves_closure_exhaustive_over_three(self):
        for f in ALL3:
            assert closure(reduce(f)) == closure(f)

    def test_unique_basis_exhaustive_over_three(self):
        # Every union-closed family has exactly one irreducible generating family.
        bases: dict[Family, list[Family]] = {}
        for f in ALL3:
            if is_irreducible(f):
                bases.setdefault(closure(f), []).append(f)
        for c, gens in bases.items():
            assert gens == [reduce(c)]
        closed = {f for f in ALL3 if closure(f) == f}
        assert set(bases) == closed

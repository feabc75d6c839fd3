from __future__ import annotations

import pytest
from hypothesis import given, settings

import oracles
from conftest import families
from fcfam.classifier import is_fc
from fcfam.covering import (
    FC,
    NONFC,
    CoverIndex,
    all_covered,
    covered,
    fc_covered,
    is_maximal_nonfc,
    is_minimal_fc,
    nonfc_covered,
)
from fcfam.errors import UsageError
from fcfam.family import Family, closure
from fcfam.iso import images


def over(n, *sets):
    return Family.from_lists(sets, n)


class TestFcCovered:
    def test_relabelled_singleton(self):
        assert fc_covered(over(4, [3]), over(4, [0]))

    def test_empty_never_covered(self):
        assert not fc_covered(Family.empty(3), over(3, [0]))

    def test_through_closure(self):
        assert fc_covered(over(3, [0, 1], [1, 2]), over(3, [0, 1, 2]))

    def test_universe_mismatch(self):
        with pytest.raises(UsageError):
            fc_covered(over(3, [0]), over(4, [0]))

    @settings(max_examples=80, deadline=None)
    @given(families(3, 5), families(3, 3))
    def test_matches_oracle(self, f, g):
        assert fc_covered(f, g) == oracles.fc_covered(oracles.to_fam(f), oracles.to_fam(g), 3)


class TestNonFcCovered:
    def test_self(self):
        assert nonfc_covered(over(3, [0, 1, 2]), over(3, [0, 1, 2]))

    def test_singleton_outside(self):
        assert not nonfc_covered(over(3, [0]), over(3, [0, 1, 2]))

    def test_empty_set_absorbed(self):
        assert nonfc_covered(over(4, [], [1, 2, 3]), over(4, [0, 1, 2]))

    @settings(max_examples=80, deadline=None)
    @given(families(3, 5), families(3, 3))
    def test_matches_oracle(self, f, g):
        assert nonfc_covered(f, g) == oracles.nonfc_covered(oracles.to_fam(f), oracles.to_fam(g), 3)

    @settings(max_examples=40, deadline=None)
    @given(families(7, 5), families(7, 3))
    def test_int_fallback_matches_closure_definition(self, f, g):
        # Beyond six elements the index works on Python ints.
        got = nonfc_covered(f, g)
        c = set(closure(f).members) - {0}
        expect = any(c <= set(closure(img).members) for img in images(g))
        assert got == expect


class TestCovered:
    def test_fc_side(self):
        assert covered(over(1, [0]), [over(1, [0])], [])

    def test_nonfc_side(self):
        assert covered(over(3, [0, 1, 2]), [], [over(3, [0, 1, 2])])

    def test_neither(self):
        assert not covered(over(3, [0, 1, 2]), [over(3, [0])], [])

    def test_all_covered(self):
        fams = [over(3, [1]), over(3, [0, 1, 2])]
        assert all_covered(fams, [over(3, [0])], [over(3, [0, 1, 2])])
        assert not all_covered(fams, [over(3, [0])], [])

    @settings(max_examples=60, deadline=None)
    @given(families(4, 4), families(4, 6), families(4, 3))
    def test_monotone(self, f, extra, g):
        bigger = Family.of(f.members + extra.members, 4)
        if fc_covered(f, g):
            assert fc_covered(bigger, g)
        if nonfc_covered(bigger, g):
            assert nonfc_covered(f, g)


class TestCoverIndex:
    def test_indices(self):
        idx = CoverIndex(3, FC, [over(3, [0]), over(3, [0, 1]), over(3, [0, 1, 2])])
        assert idx.covering_indices(over(3, [0, 1]).mask) == [1]
        assert idx.covering_index(closure(over(3, [1], [2])).mask) == 0

    def test_grows(self):
        idx = CoverIndex(3, NONFC)
        f = over(3, [0, 1])
        assert not idx.covers(f)
        idx.add(over(3, [1, 2]))
        assert idx.covers(f)

    def test_bad_kind(self):
        with pytest.raises(UsageError):
            CoverIndex(3, "both")


class TestExtremal:
    def test_singleton_minimal(self):
        assert is_minimal_fc(over(3, [0]), is_fc)

    def test_two_singletons_not_minimal(self):
        assert not is_minimal_fc(over(3, [0], [1]), is_fc)

    def test_triple_maximal_nonfc(self):
        assert is_maximal_nonfc(closure(over(3, [0, 1, 2])), is_fc)

    def test_not_closed_not_maximal(self):
        assert not is_maximal_nonfc(over(4, [0, 1, 2], [0, 1, 3]), is_fc)

    def test_four_maximal_nonfc(self):
        f = closure(over(4, [0, 1, 2], [0, 1, 3]))
        assert is_maximal_nonfc(f, is_fc)

"""Search for a union-closed extension with negative share.

Given a family ``fc`` and a weight function ``w`` on ``X = ⋃fc``, the
search decides whether some family ``F ⊆ pow(X)`` that is union-closed and
closed under unions with members of ``fc`` has ``family_share(w, F, X) < 0``.

Candidates are built from the list of negative-share subsets of ``X``.  Each
element is either skipped or inserted (followed by closing for ``fc``), and
a branch is cut as soon as the current share plus every remaining negative
share is still nonnegative.

Internally the elements of ``X`` are relabelled to ``0..k-1`` and candidate
families are family masks over ``pow([k])``.
"""

from __future__ import annotations

from typing import Sequence

from .errors import UsageError
from .family import (
    Family,
    closure,
    closure_mask,
    elements_of,
    is_union_closed_for,
    iter_bits,
    set_rank,
    shift_union,
)
from .weights import build_share_table, family_share, is_weight_fn_on


def uce_contains(fc: Family, f: Family) -> bool:
    """Is ``f`` a union-closed extension of ``fc``?"""
    x = fc.union
    return all(not a & ~x for a in f.members) and is_union_closed_for(fc, f)


def _compress(a: int, positions: Sequence[int]) -> int:
    out = 0
    for j, p in enumerate(positions):
        if a >> p & 1:
            out |= 1 << j
    return out


def _expand(a: int, positions: Sequence[int]) -> int:
    out = 0
    for j in iter_bits(a):
        out |= 1 << positions[j]
    return out


class NegativeShareSearch:
    """One search instance for a fixed ``(fc, w)`` pair."""

    def __init__(self, fc: Family, w: Sequence[int], debug: bool = False):
        if len(w) != fc.n:
            raise UsageError(f"weight vector has {len(w)} entries, universe has {fc.n}")
        if any(v < 0 for v in w):
            raise UsageError("weights must be natural numbers")
        if not is_weight_fn_on(w, fc.union):
            raise UsageError("w is not a weight function on the union of the family")
        self.fc = fc
        self.w = tuple(w)
        self.debug = debug
        self.nodes = 0

        self.positions = elements_of(fc.union)
        k = self.k = len(self.positions)
        local_w = [self.w[p] for p in self.positions]
        table = build_share_table(local_w, (1 << k) - 1)
        self.shares = table.shares

        closed = closure_mask((_compress(a, self.positions) for a in fc.members), k)
        self.closed_fc = closed
        self.with_fc = [shift_union(closed, h, k) for h in range(1 << k)]

        negatives = [a for a in range(1 << k) if self.shares[a] < 0]
        # Most negative first; ties in canonical set order.
        negatives.sort(key=lambda a: (self.shares[a], set_rank(a)))
        self.order = negatives
        suffix = [0] * (len(negatives) + 1)
        for i in range(len(negatives) - 1, -1, -1):
            suffix[i] = suffix[i + 1] + self.shares[negatives[i]]
        self.suffix = suffix

    def _share_of(self, fmask: int) -> int:
        shares = self.shares
        return sum(shares[a] for a in iter_bits(fmask))

    def _insert_close(self, h: int, ft: int, st: int) -> tuple[int, int]:
        add = (1 << h) | shift_union(ft, h, self.k) | self.with_fc[h]
        new = add & ~ft
        shares = self.shares
        while new:
            low = new & -new
            st += shares[low.bit_length() - 1]
            new ^= low
        return ft | add, st

    def _search(self, i: int, ft: int, st: int) -> int | None:
        self.nodes += 1
        if self.debug:
            assert st == self._share_of(ft), "running share diverged from recomputation"
        if st < 0:
            # Skipping every remaining element reaches the base case with ft.
            return ft
        if st + self.suffix[i] >= 0:
            return None
        found = self._search(i + 1, ft, st)
        if found is not None:
            return found
        h = self.order[i]
        if ft >> h & 1:
            return None
        ft, st = self._insert_close(h, ft, st)
        return self._search(i + 1, ft, st)

    def _search_min(self, i: int, ft: int, st: int) -> None:
        self.nodes += 1
        if st + self.suffix[i] >= self.best_share:
            return
        if i == len(self.order):
            self.best_share, self.best = st, ft
            return
        h = self.order[i]
        if not ft >> h & 1:
            nft, nst = self._insert_close(h, ft, st)
            self._search_min(i + 1, nft, nst)
        self._search_min(i + 1, ft, st)

    def _to_family(self, fmask: int) -> Family:
        return Family.of((_expand(a, self.positions) for a in iter_bits(fmask)), self.fc.n)

    def run(self) -> Family | None:
        found = self._search(0, 0, 0)
        return None if found is None else self._to_family(found)

    def run_min(self) -> Family | None:
        """A negative-share extension of least share, or None."""
        self.best_share, self.best = 0, None
        self._search_min(0, 0, 0)
        return None if self.best is None else self._to_family(self.best)


def find_negative_extension(fc: Family, w: Sequence[int], debug: bool = False) -> Family | None:
    """A union-closed extension of ``fc`` with negative share, or None."""
    return NegativeShareSearch(fc, w, debug).run()


def find_min_share_extension(fc: Family, w: Sequence[int]) -> Family | None:
    """A union-closed extension of ``fc`` with the least (negative) share, or None."""
    return NegativeShareSearch(fc, w).run_min()


def ssn(fc: Family, w: Sequence[int], debug: bool = False) -> bool:
    """True iff some union-closed extension of ``fc`` has negative share wrt ``w``."""
    return find_negative_extension(fc, w, debug) is not None


def ssn_reference(fc: Family, w: Sequence[int]) -> bool:
    """Definition-level version of :func:`ssn` that recomputes every share.

    Slow; kept as an independent check of the optimised search.
    """
    from .family import insert_close_for

    if len(w) != fc.n or not is_weight_fn_on(w, fc.union):
        raise UsageError("w is not a weight function on the union of the family")
    x = fc.union
    closed = closure(fc)
    negatives = [a for a in range(1 << fc.n) if not a & ~x and 2 * _weight(w, a) - _weight(w, x) < 0]

    def share(f: Family) -> int:
        return family_share(w, f, x)

    def aux(rest: list[int], ft: Family) -> bool:
        if not rest:
            return share(ft) < 0
        if share(ft) + sum(2 * _weight(w, a) - _weight(w, x) for a in rest) >= 0:
            return False
        if aux(rest[1:], ft):
            return True
        if rest[0] in ft:
            return False
        return aux(rest[1:], insert_close_for(closed, rest[0], ft))

    return aux(negatives, Family.empty(fc.n))


def _weight(w: Sequence[int], a: int) -> int:
    return sum(w[i] for i in iter_bits(a))

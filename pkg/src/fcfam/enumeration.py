"""Enumeration of families by partition list.

A family is ``L``-partitioned when it has exactly ``L[i]`` members of size
``i``.  Collections of such families are grown one set at a time: a
filtered product adds one new set of the current largest size to every
family, keeping only additions accepted by an incremental predicate, and
the result is then cut down to one representative per isomorphism class.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .covering import CoverIndex
from .errors import UsageError
from .family import Collection, Family, closure_mask, shift_union
from .irreducible import is_dependent, is_irreducible
from .iso import canonical_base, iso_base

PartitionList = tuple[int, ...]


def partition_signature(f: Family, m: int) -> PartitionList:
    counts = [0] * (m + 1)
    for a in f.members:
        k = a.bit_count()
        if k > m:
            raise UsageError(f"member of size {k} exceeds the list length bound {m}")
        counts[k] += 1
    return tuple(counts)


def pointwise_leq(l1: Sequence[int], l2: Sequence[int]) -> bool:
    if len(l1) != len(l2):
        raise UsageError(f"partition lists of different lengths: {len(l1)} vs {len(l2)}")
    return all(a <= b for a, b in zip(l1, l2))


@lru_cache(maxsize=None)
def subsets_of_size(n: int, m: int) -> tuple[int, ...]:
    """All ``m``-subsets of [n] in canonical order (empty if ``m > n``)."""
    if m > n or m < 0:
        return ()
    out = []
    for combo in itertools.combinations(range(n), m):
        a = 0
        for e in combo:
            a |= 1 << e
        out.append(a)
    return tuple(sorted(out))


def is_feasible(l: Sequence[int], n: int) -> bool:
    """Can some family over [n] be ``l``-partitioned?"""
    from math import comb

    return all(c <= (comb(n, i) if i <= n else 0) for i, c in enumerate(l))


# -- incremental predicates -----------------------------------------------


@dataclass(frozen=True)
class IncPredicate:
    """A family predicate with an incremental check for adding a largest set.

    ``inc(F, A)`` must agree with ``full(F | {A})`` whenever ``full(F)``
    holds and ``A`` is at least as large as every member of ``F``.
    """

    full: Callable[[Family], bool]
    inc: Callable[[Family, int], bool]
    injective_invariant: bool = True

    def __and__(self, other: IncPredicate) -> IncPredicate:
        return IncPredicate(
            lambda f: self.full(f) and other.full(f),
            lambda f, a: self.inc(f, a) and other.inc(f, a),
            self.injective_invariant and other.injective_invariant,
        )


TOP = IncPredicate(lambda f: True, lambda f, a: True)

IRREDUCIBLE = IncPredicate(is_irreducible, lambda f, a: not is_dependent(a, f))


def not_fc_covered(index: CoverIndex) -> IncPredicate:
    """``not FC-covered by index``; follows the index if it grows later."""

    def inc(f: Family, a: int) -> bool:
        c = closure_mask(f.members, f.n)
        c |= (1 << a) | shift_union(c, a, f.n)
        return not index.covers_mask(c)

    return IncPredicate(lambda f: not index.covers(f), inc)


# -- products and recursion -----------------------------------------------


def filtered_product(c: Iterable[Family], sets: Sequence[int], q: IncPredicate) -> Collection:
    out = set()
    for f in c:
        for a in sets:
            if a not in f.member_set and q.inc(f, a):
                out.add(f.with_set(a))
    return tuple(sorted(out))


Upd = Callable[[Collection, PartitionList], Collection]


def iso_upd(n: int, q: IncPredicate, canonical: bool = False) -> Upd:
    """The update step for :func:`enum_rec`: product with the next sets, then sieve."""
    sieve = canonical_base if canonical else iso_base

    def upd(c: Collection, l: PartitionList) -> Collection:
        return sieve(filtered_product(c, subsets_of_size(n, len(l) - 1), q))

    return upd


def enum_rec(
    l: Sequence[int],
    v0: Collection,
    upd: Upd,
    trace: list[PartitionList] | None = None,
) -> Collection:
    """Recursive enumeration: strip trailing zeros, otherwise extend the list
    obtained by decrementing the last entry."""
    l = tuple(l)
    if trace is not None:
        trace.append(l)
    if not l:
        return v0
    if l[-1] == 0:
        return enum_rec(l[:-1], v0, upd, trace)
    smaller = l[:-1] + (l[-1] - 1,)
    return upd(enum_rec(smaller, v0, upd, trace), l)


def empty_start(n: int) -> Collection:
    return (Family.empty(n),)


# -- dynamic programming enumeration --------------------------------------

DpUpd = Callable[[Collection, int], Collection]


def dp_upd(n: int, q: IncPredicate, canonical: bool = False) -> DpUpd:
    sieve = canonical_base if canonical else iso_base

    def upd(c: Collection, m: int) -> Collection:
        return sieve(filtered_product(c, subsets_of_size(n, m), q))

    return upd


def dominates_any(l: Sequence[int], lists: Iterable[Sequence[int]]) -> bool:
    return any(pointwise_leq(s, l) for s in lists)


def enum_dp(
    v0: Collection,
    upd: DpUpd,
    stop: Callable[[PartitionList], bool],
    lmax: Sequence[int],
    expand: Callable[[PartitionList, Collection], bool] | None = None,
    visit: Callable[[PartitionList, Collection], None] | None = None,
) -> list[tuple[PartitionList, Collection]]:
    """Values for every list ``L <= lmax`` not dominating a stopped list.

    Each list is reached once, from the list with its last nonzero entry
    decremented.  Lists are processed in increasing lexicographic order, so
    every list comes after all lists below it; ``upd`` runs when a list is
    processed, so it sees any state updated by earlier lists (``visit`` is
    called right after each value is computed).  ``expand(L, value)`` may
    return False to skip the successors of ``L``.

    Returns ``(L, value)`` pairs sorted by ``L``.
    """
    lmax = tuple(lmax)
    root = (0,) * len(lmax)
    heap: list[tuple[PartitionList, int, int, Collection | None]] = [(root, 0, 0, None)]
    tick = itertools.count(1)
    out: list[tuple[PartitionList, Collection]] = []
    while heap:
        l, _, m, parent = heapq.heappop(heap)
        value = v0 if parent is None else upd(parent, m)
        out.append((l, value))
        if visit is not None:
            visit(l, value)
        if expand is not None and not expand(l, value):
            continue
        for m2 in range(m, len(l)):
            nxt = l[:m2] + (l[m2] + 1,) + l[m2 + 1 :]
            if stop(nxt) or not pointwise_leq(nxt, lmax):
                continue
            heapq.heappush(heap, (nxt, next(tick), m2, value))
    return out


def lists_below(lmax: Sequence[int], stop: Callable[[PartitionList], bool] = lambda l: False) -> list[PartitionList]:
    """All lists ``L <= lmax`` that are not stopped, in lexicographic order."""
    ranges = [range(x + 1) for x in lmax]
    return [tuple(l) for l in itertools.product(*ranges) if not stop(tuple(l))]

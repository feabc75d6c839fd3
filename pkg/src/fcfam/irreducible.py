"""Dependent sets, irreducible families and reduction to the irreducible basis."""

from __future__ import annotations

from .family import Family, _trusted, set_rank


def is_dependent(a: int, f: Family) -> bool:
    """Is ``a`` the union of some nonempty subfamily of ``f``?

    Any witnessing subfamily uses only subsets of ``a``, so it suffices to
    check that the subsets of ``a`` in ``f`` exist and jointly cover ``a``.
    """
    u = 0
    found = False
    for b in f.members:
        if not b & ~a:
            u |= b
            found = True
    return found and u == a


def is_irreducible(f: Family) -> bool:
    members = f.members
    for i, a in enumerate(members):
        u = 0
        found = False
        for j, b in enumerate(members):
            if j != i and not b & ~a:
                u |= b
                found = True
        if found and u == a:
            return False
    return True


def reduce(f: Family) -> Family:
    """The irreducible subfamily of ``f`` with the same closure.

    Sets are removed one at a time, largest first.
    """
    kept = list(f.members)
    for a in sorted(f.members, key=set_rank, reverse=True):
        rest = [b for b in kept if b != a]
        if is_dependent(a, _trusted(tuple(rest), f.n)):
            kept = rest
    return _trusted(tuple(kept), f.n)

"""Independent brute-force reference implementations.

Everything here works on frozensets of frozensets and shares no code with
the package, so agreement is meaningful.
"""

from __future__ import annotations

import itertools
from typing import Iterable

Set = frozenset
Fam = frozenset


def fam(sets: Iterable[Iterable[int]]) -> Fam:
    return frozenset(frozenset(s) for s in sets)


def to_fam(f) -> Fam:
    """Convert a package Family to the oracle representation."""
    return fam(f.to_lists())


def powerset(xs: Iterable[int]) -> list[Set]:
    xs = sorted(xs)
    return [frozenset(c) for r in range(len(xs) + 1) for c in itertools.combinations(xs, r)]


def union_of(f: Fam) -> Set:
    return frozenset().union(*f) if f else frozenset()


def closure(f: Fam) -> Fam:
    """Unions of all nonempty subfamilies."""
    out = set()
    members = list(f)
    for r in range(1, len(members) + 1):
        for sub in itertools.combinations(members, r):
            out.add(frozenset().union(*sub))
    return frozenset(out)


def is_union_closed(f: Fam) -> bool:
    return all(a | b in f for a in f for b in f)


def is_union_closed_for(fc: Fam, f: Fam) -> bool:
    return is_union_closed(f) and all(a | b in f for a in fc for b in f)


def uce(fc: Fam) -> list[Fam]:
    """All union-closed extensions: subfamilies of pow(U fc) closed for fc."""
    sets = powerset(union_of(fc))
    out = []
    for bits in range(1 << len(sets)):
        f = frozenset(s for i, s in enumerate(sets) if bits >> i & 1)
        if is_union_closed_for(fc, f):
            out.append(f)
    return out


def weight(w, a: Set) -> int:
    return sum(w[i] for i in a)


def share(w, f: Fam, x: Set) -> int:
    return sum(2 * weight(w, a) - weight(w, x) for a in f)


def has_negative_extension(fc: Fam, w) -> bool:
    x = union_of(fc)
    return any(share(w, f, x) < 0 for f in uce(fc))


def is_dependent(a: Set, f: Fam) -> bool:
    parts = [b for b in f if b <= a]
    return bool(parts) and frozenset().union(*parts) == a


def is_irreducible(f: Fam) -> bool:
    return not any(is_dependent(a, f - {a}) for a in f)


def apply(perm, f: Fam) -> Fam:
    return frozenset(frozenset(perm[i] for i in a) for a in f)


def isomorphic(f: Fam, g: Fam, n: int) -> bool:
    if len(f) != len(g):
        return False
    return any(apply(p, f) == g for p in itertools.permutations(range(n)))


def iso_classes(fams: Iterable[Fam], n: int) -> list[Fam]:
    reps: list[Fam] = []
    for f in fams:
        if not any(isomorphic(f, r, n) for r in reps):
            reps.append(f)
    return reps


def all_families(n: int) -> list[Fam]:
    sets = powerset(range(n))
    return [frozenset(s for i, s in enumerate(sets) if bits >> i & 1) for bits in range(1 << len(sets))]


def partitioned(f: Fam, l) -> bool:
    counts = [0] * len(l)
    for a in f:
        if len(a) >= len(l):
            return False
        counts[len(a)] += 1
    return counts == list(l)


def fc_covered(f: Fam, fc: Fam, n: int) -> bool:
    c = closure(f)
    return any(apply(p, fc) <= c for p in itertools.permutations(range(n)))


def nonfc_covered(f: Fam, nc: Fam, n: int) -> bool:
    c = closure(f) - {frozenset()}
    cn = closure(nc)
    return any(c <= apply(p, cn) for p in itertools.permutations(range(n)))

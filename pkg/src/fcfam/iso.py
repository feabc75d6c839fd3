"""Isomorphism of families under permutations of the universe.

The canonical representative of a family is the least of its images under
all ``n!`` permutations, comparing the sorted member sequences
lexicographically under the canonical set order.  Permutation image tables
are built once per ``n`` and cached; for small ``n`` the minimum is taken
with numpy over all images at once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import UsageError
from .family import Collection, Family, _trusted

# Above this the n! image table gets too large to hold in memory.
MAX_TABLE_UNIVERSE = 8


@dataclass(frozen=True)
class Perm:
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise UsageError(f"{list(self.mapping)} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.mapping)

    def image(self, a: int) -> int:
        out = 0
        i = 0
        while a:
            if a & 1:
                out |= 1 << self.mapping[i]
            a >>= 1
            i += 1
        return out


def identity(n: int) -> Perm:
    return Perm(tuple(range(n)))


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple[Perm, ...]:
    return tuple(Perm(p) for p in itertools.permutations(range(n)))


def apply_perm(p: Perm, f: Family) -> Family:
    if p.n != f.n:
        raise UsageError(f"permutation over {p.n} elements applied to a family over {f.n}")
    return Family.of((p.image(a) for a in f.members), f.n)


@lru_cache(maxsize=None)
def perm_table(n: int) -> np.ndarray:
    """``table[j, a]`` is the image of set ``a`` under the j-th permutation of [n].

    Row 0 is the identity; rows follow ``itertools.permutations`` order.
    """
    if n > MAX_TABLE_UNIVERSE:
        raise UsageError(f"permutation tables need n <= {MAX_TABLE_UNIVERSE}")
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    size = 1 << n
    table = np.zeros((len(perms), size), dtype=np.int64)
    for i in range(n):
        has = (np.arange(size) >> i) & 1
        table += np.outer(1 << perms[:, i], has)
    return table


@lru_cache(maxsize=None)
def _rank_keys(n: int) -> np.ndarray:
    """Small-integer version of :func:`set_rank` valid within one universe."""
    a = np.arange(1 << n, dtype=np.int64)
    pop = np.zeros_like(a)
    for i in range(n):
        pop += (a >> i) & 1
    return (pop << n) | a


@lru_cache(maxsize=None)
def rank_image_table(n: int) -> np.ndarray:
    """``perm_table(n)`` mapped through the rank keys."""
    return _rank_keys(n)[perm_table(n)]


def _min_image(f: Family) -> tuple[int, np.ndarray]:
    images = rank_image_table(f.n)[:, list(f.members)]
    images.sort(axis=1)
    # lexsort treats the last key as primary.
    best = int(np.lexsort(images.T[::-1])[0])
    return best, images[best]


def canonical(f: Family) -> Family:
    """The least permuted image of ``f``."""
    n = f.n
    if len(f) == 0:
        return f
    if n > MAX_TABLE_UNIVERSE:
        return min(apply_perm(p, f) for p in all_perms(n))
    mask = (1 << n) - 1
    _, row = _min_image(f)
    return _trusted(tuple(int(k) & mask for k in row), n)


def canonical_perm(f: Family) -> Perm:
    """A permutation taking ``f`` to its canonical form."""
    if len(f) == 0:
        return identity(f.n)
    if f.n > MAX_TABLE_UNIVERSE:
        return min(all_perms(f.n), key=lambda p: apply_perm(p, f))
    best, _ = _min_image(f)
    return all_perms(f.n)[best]


def canonical_key(f: Family) -> tuple[int, ...]:
    return canonical(f).members


def is_isomorphic(f: Family, g: Family) -> bool:
    if f.n != g.n:
        raise UsageError(f"universe mismatch: {f.n} vs {g.n}")
    if len(f) != len(g):
        return False
    return canonical(f) == canonical(g)


def is_canonical(f: Family) -> bool:
    return canonical(f) == f


def images(f: Family, perms: Sequence[Perm] | None = None) -> list[Family]:
    """All images of ``f`` under ``perms`` (all permutations by default)."""
    if perms is None:
        perms = all_perms(f.n)
    return [apply_perm(p, f) for p in perms]


def iso_base(c: Iterable[Family], perms: Sequence[Perm] | None = None) -> Collection:
    """Sieve ``c`` down to one member per isomorphism class.

    Members are visited in sorted order; each survivor removes every image of
    itself under ``perms``.  With ``perms=None`` (all of S_n) classes are
    found through canonical forms, which gives the same survivors.
    """
    ordered = sorted(set(c))
    out: list[Family] = []
    if perms is None:
        seen: set[tuple[int, ...]] = set()
        for f in ordered:
            key = canonical_key(f)
            if key not in seen:
                seen.add(key)
                out.append(f)
        return tuple(out)
    removed: set[Family] = set()
    for f in ordered:
        if f in removed:
            continue
        out.append(f)
        removed.update(apply_perm(p, f) for p in perms)
    return tuple(out)


def canonical_base(c: Iterable[Family]) -> Collection:
    """Canonical forms of the members of ``c``, one per class, sorted."""
    return tuple(sorted({canonical(f) for f in c}))


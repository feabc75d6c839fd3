"""Weight functions, weights and shares of sets and families, hypercubes.

A weight function is a tuple of n naturals; entry ``i`` weighs element ``i``.
Shares are kept integral: the share of ``A`` relative to ``X`` is
``2*w(A) - w(X)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import UsageError
from .family import Family, iter_bits

WeightFn = tuple[int, ...]


def weight_fn(values: Sequence[int], n: int | None = None) -> WeightFn:
    w = tuple(int(v) for v in values)
    if any(v < 0 for v in w):
        raise UsageError("weights must be natural numbers")
    if n is not None and len(w) != n:
        raise UsageError(f"weight vector has {len(w)} entries, universe has {n}")
    return w


def is_weight_fn_on(w: Sequence[int], a: int) -> bool:
    """True iff some element of ``a`` has positive weight."""
    return any(i < len(w) and w[i] > 0 for i in iter_bits(a))


def set_weight(w: Sequence[int], a: int) -> int:
    total = 0
    for i in iter_bits(a):
        if i >= len(w):
            raise UsageError(f"element {i} has no weight")
        total += w[i]
    return total


def family_weight(w: Sequence[int], f: Family) -> int:
    return sum(set_weight(w, a) for a in f.members)


def set_share(w: Sequence[int], a: int, x: int) -> int:
    if a & ~x:
        raise UsageError("share is only defined for subsets of the reference set")
    return 2 * set_weight(w, a) - set_weight(w, x)


def family_share(w: Sequence[int], f: Family, x: int) -> int:
    return sum(set_share(w, a, x) for a in f.members)


@dataclass(frozen=True)
class ShareTable:
    """Precomputed ``2*w(A & X) - w(X)`` for every ``A`` below ``2**n``."""

    shares: tuple[int, ...]
    domain_mask: int

    def __getitem__(self, a: int) -> int:
        return self.shares[a]


def build_share_table(w: Sequence[int], x: int) -> ShareTable:
    n = len(w)
    if x >> n:
        raise UsageError("reference set exceeds the weight vector")
    # Subset-sum table by lowest bit: weight(A) = weight(A - low) + w[low].
    size = 1 << n
    weight = [0] * size
    for a in range(1, size):
        low = a & -a
        weight[a] = weight[a ^ low] + w[low.bit_length() - 1]
    wx = weight[x]
    return ShareTable(tuple(2 * weight[a & x] - wx for a in range(size)), x)


# -- hypercubes -----------------------------------------------------------


def _check_disjoint(k: int, s: int) -> None:
    if k & s:
        raise UsageError("hypercube base and span must be disjoint")


def hypercube(k: int, s: int) -> Iterator[int]:
    """All sets ``A`` with ``k <= A <= k | s``."""
    _check_disjoint(k, s)
    sub = s
    while True:
        yield k | sub
        if sub == 0:
            return
        sub = (sub - 1) & s


def in_hypercube(a: int, k: int, s: int) -> bool:
    return a & k == k and not a & ~(k | s)


def hyper_share(k: int, s: int, f: Family, w: Sequence[int], x: int) -> int:
    """Share mass of the members of ``f`` lying in the hypercube over ``k``."""
    _check_disjoint(k, s)
    return sum(set_share(w, a, x) for a in f.members if in_hypercube(a, k, s))


def project(k: int, s: int, f: Family) -> Family:
    """``{A - k : A in f, k <= A <= k | s}``."""
    _check_disjoint(k, s)
    return Family.of((a & ~k for a in f.members if in_hypercube(a, k, s)), f.n)


def subsets_of(k: int) -> Iterator[int]:
    return hypercube(0, k)


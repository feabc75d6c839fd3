"""Bitmask sets and families over the universe {0, ..., n-1}.

A set is a plain ``int`` whose bit ``i`` is on iff element ``i`` belongs to
it.  A :class:`Family` is an immutable, duplicate-free tuple of such sets
kept in the canonical set order: fewer elements first, ties broken by the
numeric value of the mask.

Many hot loops work on *family masks*: an ``int`` with bit ``A`` on iff the
set ``A`` belongs to the family.  For n <= 6 a family mask fits in 64 bits.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import UsageError

# Far wider than the 6-element target so that counterexample expansions
# (which add many fresh elements) still fit.
MAX_UNIVERSE = 256

# Family masks are only materialised for universes up to this size.
MAX_MASK_UNIVERSE = 16


def set_rank(a: int) -> int:
    """Sort key realising the canonical set order (popcount, then value)."""
    return (a.bit_count() << MAX_UNIVERSE) | a


def make_set(elements: Iterable[int]) -> int:
    a = 0
    for e in elements:
        if e < 0:
            raise UsageError(f"negative element {e}")
        a |= 1 << e
    return a


def elements_of(a: int) -> list[int]:
    out = []
    i = 0
    while a:
        if a & 1:
            out.append(i)
        a >>= 1
        i += 1
    return out


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the on bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def format_set(a: int) -> str:
    return "{" + ",".join(map(str, elements_of(a))) + "}"


def full_set(n: int) -> int:
    return (1 << n) - 1


def check_universe(n: int) -> None:
    if not 0 <= n <= MAX_UNIVERSE:
        raise UsageError(f"universe size {n} outside [0, {MAX_UNIVERSE}]")


@dataclass(frozen=True)
class Family:
    """A finite family of subsets of {0, ..., n-1}.

    ``members`` is strictly increasing under :func:`set_rank`.  Use
    :meth:`of` to build a family from arbitrary input.
    """

    members: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        check_universe(self.n)
        bound = 1 << self.n
        prev = -1
        for a in self.members:
            if not 0 <= a < bound:
                raise UsageError(f"set {a:#x} outside universe of size {self.n}")
            r = set_rank(a)
            if r <= prev:
                raise UsageError("members must be strictly increasing in canonical set order")
            prev = r

    @classmethod
    def of(cls, sets: Iterable[int], n: int) -> Family:
        """Normalise (sort, deduplicate, validate) an iterable of set masks."""
        return cls(tuple(sorted(set(sets), key=set_rank)), n)

    @classmethod
    def from_lists(cls, sets: Iterable[Iterable[int]], n: int | None = None) -> Family:
        masks = [make_set(s) for s in sets]
        if n is None:
            n = max((a.bit_length() for a in masks), default=0)
        return cls.of(masks, n)

    @classmethod
    def from_mask(cls, fmask: int, n: int) -> Family:
        return _trusted(tuple(sorted(iter_bits(fmask), key=set_rank)), n)

    @classmethod
    def empty(cls, n: int) -> Family:
        return _trusted((), n)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, a: int) -> bool:
        return a in self.member_set

    def __lt__(self, other: Family) -> bool:
        return (self.sort_key, self.n) < (other.sort_key, other.n)

    def __le__(self, other: Family) -> bool:
        return (self.sort_key, self.n) <= (other.sort_key, other.n)

    def __gt__(self, other: Family) -> bool:
        return other < self

    def __ge__(self, other: Family) -> bool:
        return other <= self

    def __str__(self) -> str:
        return format_family(self)

    @cached_property
    def sort_key(self) -> tuple[int, ...]:
        return tuple(map(set_rank, self.members))

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @cached_property
    def mask(self) -> int:
        if self.n > MAX_MASK_UNIVERSE:
            raise UsageError(f"family masks need n <= {MAX_MASK_UNIVERSE}")
        m = 0
        for a in self.members:
            m |= 1 << a
        return m

    @cached_property
    def union(self) -> int:
        u = 0
        for a in self.members:
            u |= a
        return u

    def with_set(self, a: int) -> Family:
        if a in self.member_set:
            return self
        return Family.of(self.members + (a,), self.n)

    def without_set(self, a: int) -> Family:
        return _trusted(tuple(b for b in self.members if b != a), self.n)

    def issubset(self, other: Family) -> bool:
        return self.member_set <= other.member_set

    def to_lists(self) -> list[list[int]]:
        return [elements_of(a) for a in self.members]


def _trusted(members: tuple[int, ...], n: int) -> Family:
    """Build a Family without validation; members must already be canonical."""
    f = object.__new__(Family)
    object.__setattr__(f, "members", members)
    object.__setattr__(f, "n", n)
    return f


# Sorted, duplicate-free tuple of families.
Collection = tuple[Family, ...]


def collection(families: Iterable[Family]) -> Collection:
    return tuple(sorted(set(families)))


def _same_universe(*fams: Family) -> int:
    n = fams[0].n
    for f in fams[1:]:
        if f.n != n:
            raise UsageError(f"universe mismatch: {n} vs {f.n}")
    return n


# -- family masks ---------------------------------------------------------


@lru_cache(maxsize=None)
def containing_masks(n: int) -> tuple[int, ...]:
    """``containing_masks(n)[i]`` is the family mask of all sets holding ``i``."""
    out = []
    for i in range(n):
        m = 0
        for a in range(1 << n):
            if a >> i & 1:
                m |= 1 << a
        out.append(m)
    return tuple(out)


def shift_union(fmask: int, a: int, n: int) -> int:
    """Family mask of ``{S | a : S in fmask}``, computed bit-parallel."""
    cm = containing_masks(n)
    for i in iter_bits(a):
        w = cm[i]
        fmask = (fmask & w) | ((fmask & ~w) << (1 << i))
    return fmask


def closure_mask(members: Iterable[int], n: int) -> int:
    c = 0
    for a in members:
        c |= (1 << a) | shift_union(c, a, n)
    return c


# -- operations -----------------------------------------------------------


def sum_fam(f1: Family, f2: Family) -> Family:
    """All unions ``A | B`` with ``A`` from ``f1`` and ``B`` from ``f2``."""
    n = _same_universe(f1, f2)
    return Family.of((a | b for a in f1.members for b in f2.members), n)


def closure(f: Family) -> Family:
    """Smallest union-closed family containing ``f``."""
    if f.n <= MAX_MASK_UNIVERSE:
        return Family.from_mask(closure_mask(f.members, f.n), f.n)
    out: set[int] = set()
    for a in f.members:
        out |= {a | b for b in out}
        out.add(a)
    return Family.of(out, f.n)


def insert_close_for(fc: Family, a: int, f: Family) -> Family:
    """``f ∪ {a} ∪ (f ⊎ {a}) ∪ (fc ⊎ {a})``.

    When ``f`` is union-closed for ``fc`` (and ``fc`` is union-closed) the
    result is the closure for ``fc`` of ``f ∪ {a}``.
    """
    n = _same_universe(fc, f)
    if not 0 <= a < 1 << n:
        raise UsageError(f"set {a:#x} outside universe of size {n}")
    out = set(f.members)
    out.add(a)
    out.update(b | a for b in f.members)
    out.update(b | a for b in fc.members)
    return Family.of(out, n)


def insert_close(a: int, f: Family) -> Family:
    return insert_close_for(Family.empty(f.n), a, f)


def is_union_closed_for(fc: Family, f: Family) -> bool:
    _same_universe(fc, f)
    s = f.member_set
    for a in f.members:
        for b in f.members:
            if a | b not in s:
                return False
        for b in fc.members:
            if a | b not in s:
                return False
    return True


def is_union_closed(f: Family) -> bool:
    return is_union_closed_for(Family.empty(f.n), f)


def cnt(a: int, f: Family) -> int:
    """Number of members of ``f`` containing element ``a``."""
    bit = 1 << a
    return sum(1 for b in f.members if b & bit)


def is_frankl(f: Family) -> bool:
    """True iff some element of the union lies in at least half the members."""
    size = len(f)
    return any(2 * cnt(e, f) >= size for e in elements_of(f.union))


# -- text and JSON forms --------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+|[{},])")


def _tokens(text: str) -> list[str]:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise UsageError(f"malformed family text at offset {pos}: {text[pos:pos + 10]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_family(text: str, n: int | None = None) -> Family:
    """Parse ``{{0,1},{2}}``-style text (or a JSON array of arrays).

    The universe size defaults to one more than the largest element.
    """
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed family JSON: {exc}") from None
        return family_from_json(data, n)
    toks = _tokens(stripped)
    pos = 0

    def expect(t: str) -> None:
        nonlocal pos
        if pos >= len(toks) or toks[pos] != t:
            got = toks[pos] if pos < len(toks) else "end of input"
            raise UsageError(f"malformed family text: expected {t!r}, got {got!r}")
        pos += 1

    def parse_set() -> list[int]:
        nonlocal pos
        expect("{")
        elems: list[int] = []
        if pos < len(toks) and toks[pos] == "}":
            pos += 1
            return elems
        while True:
            if pos >= len(toks) or not toks[pos].isdigit():
                raise UsageError("malformed family text: expected a natural number")
            elems.append(int(toks[pos]))
            pos += 1
            if pos < len(toks) and toks[pos] == ",":
                pos += 1
                continue
            expect("}")
            return elems

    expect("{")
    sets: list[list[int]] = []
    if pos < len(toks) and toks[pos] == "}":
        pos += 1
    else:
        while True:
            sets.append(parse_set())
            if pos < len(toks) and toks[pos] == ",":
                pos += 1
                continue
            expect("}")
            break
    if pos != len(toks):
        raise UsageError("malformed family text: trailing input")
    return _from_lists_checked(sets, n)


def _from_lists_checked(sets: Sequence[Sequence[int]], n: int | None) -> Family:
    top = max((e for s in sets for e in s), default=-1)
    if n is None:
        n = top + 1
    elif top >= n:
        raise UsageError(f"element {top} outside universe of size {n}")
    check_universe(n)
    return Family.of((make_set(s) for s in sets), n)


def format_family(f: Family) -> str:
    return "{" + ",".join(format_set(a) for a in f.members) + "}"


def family_to_json(f: Family) -> list[list[int]]:
    return f.to_lists()


def family_from_json(data: object, n: int | None = None) -> Family:
    if not isinstance(data, list) or not all(
        isinstance(s, list) and all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in s)
        for s in data
    ):
        raise UsageError("family JSON must be an array of arrays of naturals")
    return _from_lists_checked(data, n)

"""FC-covering and nonFC-covering by characteristic families.

``F`` is FC-covered by ``Fc`` when some isomorphic copy of ``Fc`` lies inside
the closure of ``F``; it is nonFC-covered by ``Nc`` when the closure of ``F``
lies (up to the empty set) inside the closure of some copy of ``Nc``.

Both tests compare family masks: the closure of ``F`` against the masks of
all permuted images of the characteristic family.  :class:`CoverIndex`
precomputes those images for a whole collection.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import UsageError
from .family import Family, closure, closure_mask
from .irreducible import is_irreducible
from .iso import perm_table
from .weights import subsets_of

FC, NONFC = "fc", "nonfc"

# Family masks fit a uint64 up to this universe size.
_NUMPY_UNIVERSE = 6


def image_masks(f: Family) -> list[int]:
    """Family masks of all permuted images of ``f`` (with repetitions)."""
    table = perm_table(f.n)
    masks = [0] * table.shape[0]
    for a in f.members:
        col = table[:, a].tolist()
        for j, b in enumerate(col):
            masks[j] |= 1 << b
    return masks


def _image_array(f: Family) -> np.ndarray:
    table = perm_table(f.n)
    if not f.members:
        return np.zeros(1, dtype=np.uint64)
    bits = np.left_shift(np.uint64(1), table[:, list(f.members)].astype(np.uint64))
    return np.unique(np.bitwise_or.reduce(bits, axis=1))


class CoverIndex:
    """Permuted images of a collection of characteristic families."""

    def __init__(self, n: int, kind: str, families: Iterable[Family] = ()):
        if kind not in (FC, NONFC):
            raise UsageError(f"unknown cover kind {kind!r}")
        self.n = n
        self.kind = kind
        self.families: list[Family] = []
        self._use_numpy = n <= _NUMPY_UNIVERSE
        self._arrays: list[np.ndarray] = []
        self._stacked: np.ndarray | None = None
        self._owners: np.ndarray | None = None
        self._int_images: list[tuple[int, int]] = []
        for f in families:
            self.add(f)

    def __len__(self) -> int:
        return len(self.families)

    def add(self, f: Family) -> None:
        if f.n != self.n:
            raise UsageError(f"universe mismatch: {self.n} vs {f.n}")
        base = closure(f) if self.kind == NONFC else f
        idx = len(self.families)
        self.families.append(f)
        if self._use_numpy:
            self._arrays.append(_image_array(base))
            self._stacked = None
        else:
            self._int_images.extend((m, idx) for m in set(image_masks(base)))

    def _stack(self) -> tuple[np.ndarray, np.ndarray]:
        if self._stacked is None:
            if self._arrays:
                self._stacked = np.concatenate(self._arrays)
                self._owners = np.repeat(np.arange(len(self._arrays)), [len(a) for a in self._arrays])
            else:
                self._stacked = np.zeros(0, dtype=np.uint64)
                self._owners = np.zeros(0, dtype=np.int64)
        return self._stacked, self._owners

    def covering_indices(self, clos: int) -> list[int]:
        """Indices of all families covering a closure mask, ascending."""
        if self._use_numpy:
            imgs, owners = self._stack()
            if not len(imgs):
                return []
            c = np.uint64(clos)
            if self.kind == FC:
                hit = (imgs & ~c) == 0
            else:
                hit = ((c & ~np.uint64(1)) & ~imgs) == 0
            return sorted(set(owners[hit].tolist()))
        found = set()
        for m, idx in self._int_images:
            if (not m & ~clos) if self.kind == FC else (not (clos & ~1) & ~m):
                found.add(idx)
        return sorted(found)

    def covering_index(self, clos: int) -> int:
        """Index of the first family covering a closure mask, or -1."""
        if self._use_numpy:
            imgs, owners = self._stack()
            if not len(imgs):
                return -1
            c = np.uint64(clos)
            if self.kind == FC:
                hit = (imgs & ~c) == 0
            else:
                hit = ((c & ~np.uint64(1)) & ~imgs) == 0
            where = np.flatnonzero(hit)
            return int(owners[where].min()) if len(where) else -1
        found = self.covering_indices(clos)
        return found[0] if found else -1

    def covers_mask(self, clos: int) -> bool:
        return self.covering_index(clos) >= 0

    def covers(self, f: Family) -> bool:
        if f.n != self.n:
            raise UsageError(f"universe mismatch: {self.n} vs {f.n}")
        return self.covers_mask(closure_mask(f.members, f.n))


def _as_families(x: Family | Iterable[Family]) -> list[Family]:
    return [x] if isinstance(x, Family) else list(x)


def _check_n(f: Family, others: Sequence[Family]) -> None:
    for g in others:
        if g.n != f.n:
            raise UsageError(f"universe mismatch: {f.n} vs {g.n}")


def fc_covered(f: Family, fcs: Family | Iterable[Family]) -> bool:
    """Is ``f`` FC-covered by ``fcs`` (one family or any member of a collection)?"""
    fams = _as_families(fcs)
    _check_n(f, fams)
    return CoverIndex(f.n, FC, fams).covers(f) if fams else False


def nonfc_covered(f: Family, ncs: Family | Iterable[Family]) -> bool:
    fams = _as_families(ncs)
    _check_n(f, fams)
    return CoverIndex(f.n, NONFC, fams).covers(f) if fams else False


def covered(f: Family, fcs: Iterable[Family], ncs: Iterable[Family]) -> bool:
    fcs, ncs = list(fcs), list(ncs)
    _check_n(f, fcs + ncs)
    clos = closure_mask(f.members, f.n)
    if fcs and CoverIndex(f.n, FC, fcs).covers_mask(clos):
        return True
    return bool(ncs) and CoverIndex(f.n, NONFC, ncs).covers_mask(clos)


def all_fc_covered(fams: Iterable[Family], fcs: Iterable[Family]) -> bool:
    fams, fcs = list(fams), list(fcs)
    if not fams:
        return True
    index = CoverIndex(fams[0].n, FC, fcs)
    return all(index.covers(f) for f in fams)


def all_nonfc_covered(fams: Iterable[Family], ncs: Iterable[Family]) -> bool:
    fams, ncs = list(fams), list(ncs)
    if not fams:
        return True
    index = CoverIndex(fams[0].n, NONFC, ncs)
    return all(index.covers(f) for f in fams)


def all_covered(fams: Iterable[Family], fcs: Iterable[Family], ncs: Iterable[Family]) -> bool:
    fams = list(fams)
    if not fams:
        return True
    n = fams[0].n
    fi, ni = CoverIndex(n, FC, fcs), CoverIndex(n, NONFC, ncs)
    for f in fams:
        clos = closure_mask(f.members, f.n)
        if not (fi.covers_mask(clos) or ni.covers_mask(clos)):
            return False
    return True


# -- extremal families ----------------------------------------------------

Oracle = Callable[[Family], bool]  # True iff the family is FC


def is_minimal_fc(f: Family, is_fc: Oracle) -> bool:
    if not is_irreducible(f) or not is_fc(f):
        return False
    return all(not is_fc(f.without_set(a)) for a in f.members)


def is_maximal_nonfc(f: Family, is_fc: Oracle) -> bool:
    """Union-closed, nonFC, and adding any nonempty subset of its union gives FC."""
    if closure(f) != f or is_fc(f):
        return False
    u = f.union
    for a in subsets_of(u):
        if a and a not in f and not is_fc(f.with_set(a)):
            return False
    return True


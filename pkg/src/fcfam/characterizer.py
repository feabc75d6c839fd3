"""Characteristic families: minimal FC and maximal nonFC families over [n].

Families are discovered by dynamic-programming enumeration over partition
lists in lexicographic order.  For each list the canonical irreducible
families not FC-covered by the FC families found so far are classified;
FC ones join the FC collection (and from then on exclude everything they
cover), nonFC ones are kept.  At the end the nonFC families covered by
another nonFC family are dropped and the rest replaced by their closures.

The second half of the module checks the result: semi-uniform partition
lists (lists whose FC status is decided by the list alone) and total
coverage of every family over [n].
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Callable, Iterable, Sequence

from . import __version__
from .classifier import (
    Certificate,
    FCCertificate,
    NonFCCertificate,
    certificate_from_json,
    certificate_to_json,
    classify,
    normalize,
    permute_certificate,
    verify,
)
from .covering import FC, NONFC, CoverIndex
from .enumeration import (
    IRREDUCIBLE,
    TOP,
    PartitionList,
    dominates_any,
    dp_upd,
    empty_start,
    enum_dp,
    enum_rec,
    iso_upd,
    lists_below,
    not_fc_covered,
    partition_signature,
)
from .errors import ResourceCapError, UsageError
from .family import Family, closure, closure_mask, family_from_json, family_to_json
from .iso import canonical, canonical_perm


def full_lmax(n: int, with_empty: bool = False) -> PartitionList:
    return (1 if with_empty else 0,) + tuple(comb(n, i) for i in range(1, n + 1))


@dataclass
class Characterization:
    n: int
    minimal_fc: tuple[Family, ...] = ()
    maximal_nonfc: tuple[Family, ...] = ()
    certificates: dict[Family, Certificate] = field(default_factory=dict)
    lf_lists: tuple[PartitionList, ...] = ()
    ln_lists: tuple[PartitionList, ...] = ()
    complete: bool = True
    classified: int = 0
    irreducible_nonfc: int = 0
    seconds: float = 0.0

    def certificate(self, f: Family) -> Certificate:
        return self.certificates[f]


Progress = Callable[[str], None]


def find_characteristic(
    n: int,
    max_classify: int | None = None,
    max_seconds: float | None = None,
    progress: Progress | None = None,
    jobs: int = 1,
) -> Characterization:
    """Minimal FC and maximal nonFC canonical families over [n].

    If a cap is hit the partial result is returned with ``complete=False``.
    With ``jobs > 1`` the candidates of one list are classified by a process
    pool and merged in canonical order, so the result does not depend on
    scheduling.
    """
    start = time.monotonic()
    fc_index = CoverIndex(n, FC)
    minimal: list[Family] = []
    nonfc: list[Family] = []
    certs: dict[Family, Certificate] = {}
    count = 0

    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None

    def visit(l: PartitionList, value: tuple[Family, ...]) -> None:
        nonlocal count
        early = dict(zip(value, pool.map(classify, value))) if pool is not None and len(value) > 1 else {}
        for f in value:
            # Earlier FC discoveries of this same list may already cover f.
            if fc_index.covers(f):
                continue
            if max_classify is not None and count >= max_classify:
                raise ResourceCapError(f"classification cap {max_classify} reached")
            if max_seconds is not None and time.monotonic() - start > max_seconds:
                raise ResourceCapError(f"time cap {max_seconds}s reached")
            cert = early[f] if f in early else classify(f)
            count += 1
            if isinstance(cert, FCCertificate):
                fc_index.add(f)
                minimal.append(f)
                certs[f] = cert
            else:
                nonfc.append(f)
                certs[f] = cert
        if progress is not None and value:
            progress(f"{list(l)}: {len(value)} candidates, {len(minimal)} FC, {len(nonfc)} nonFC")

    pred = IRREDUCIBLE & not_fc_covered(fc_index)
    complete = True
    try:
        enum_dp(
            empty_start(n),
            dp_upd(n, pred, canonical=True),
            lambda l: False,
            full_lmax(n),
            expand=lambda l, v: bool(v),
            visit=visit,
        )
    except ResourceCapError:
        complete = False
    finally:
        if pool is not None:
            pool.shutdown()

    maximal, max_certs = _maximal_closures(nonfc, certs)
    out_certs = {f: certs[f] for f in minimal}
    out_certs.update(max_certs)
    return Characterization(
        n=n,
        minimal_fc=tuple(sorted(minimal)),
        maximal_nonfc=maximal,
        certificates=out_certs,
        complete=complete,
        classified=count,
        irreducible_nonfc=len(nonfc),
        seconds=time.monotonic() - start,
    )


def _maximal_closures(
    nonfc: Sequence[Family], certs: dict[Family, Certificate]
) -> tuple[tuple[Family, ...], dict[Family, Certificate]]:
    """Drop families nonFC-covered by another one; return canonical closures."""
    if not nonfc:
        return (), {}
    n = nonfc[0].n
    index = CoverIndex(n, NONFC, nonfc)
    keep = []
    for i, f in enumerate(nonfc):
        owners = index.covering_indices(closure_mask(f.members, n))
        if not any(j != i for j in owners):
            keep.append(f)
    out: dict[Family, Certificate] = {}
    for f in keep:
        c = closure(f)
        p = canonical_perm(c)
        g = canonical(c)
        cert = permute_certificate(certs[f], p)
        out[g] = cert
    return tuple(sorted(out)), out


# -- semi-uniform lists ---------------------------------------------------


def _region_lmax(n: int) -> PartitionList:
    return full_lmax(n)


def derive_lf_lists(n: int, minimal_fc: Iterable[Family]) -> tuple[PartitionList, ...]:
    """Minimal lists all of whose families are FC-covered."""
    index = CoverIndex(n, FC, minimal_fc)
    pred = not_fc_covered(index)
    seen = dict(enum_dp(empty_start(n), dp_upd(n, pred, canonical=True), lambda l: False, _region_lmax(n), expand=lambda l, v: bool(v)))
    out = []
    for l, v in seen.items():
        if v:
            continue
        below = [l[:i] + (l[i] - 1,) + l[i + 1 :] for i in range(len(l)) if l[i]]
        if all(seen.get(b) for b in below):
            out.append(l)
    return tuple(sorted(out))


def derive_ln_lists(n: int, maximal_nonfc: Iterable[Family]) -> tuple[PartitionList, ...]:
    """Maximal lists all of whose families are nonFC-covered."""
    index = CoverIndex(n, NONFC, maximal_nonfc)
    lmax = _region_lmax(n)
    good: set[PartitionList] = set()

    def all_covered(l: PartitionList, v: tuple[Family, ...]) -> bool:
        ok = all(index.covers(f) for f in v)
        if ok:
            good.add(l)
        return ok

    enum_dp(empty_start(n), dp_upd(n, TOP, canonical=True), lambda l: False, lmax, expand=all_covered)
    out = []
    for l in good:
        ups = [l[:i] + (l[i] + 1,) + l[i + 1 :] for i in range(len(l)) if l[i] < lmax[i]]
        if not any(u in good for u in ups):
            out.append(l)
    return tuple(sorted(out))


def with_lists(chars: Characterization) -> Characterization:
    chars.lf_lists = derive_lf_lists(chars.n, chars.minimal_fc)
    chars.ln_lists = derive_ln_lists(chars.n, chars.maximal_nonfc)
    return chars


def verify_semi_uniform(n: int, chars: Characterization) -> bool:
    """Every family of each FC list is FC-covered; every family of each nonFC list is nonFC-covered."""
    fc_index = CoverIndex(n, FC, chars.minimal_fc)
    nonfc_index = CoverIndex(n, NONFC, chars.maximal_nonfc)
    upd_fc = iso_upd(n, not_fc_covered(fc_index), canonical=True)
    for l in chars.lf_lists:
        if enum_rec(l, empty_start(n), upd_fc):
            return False
    upd_all = iso_upd(n, TOP, canonical=True)
    for l in chars.ln_lists:
        if not all(nonfc_index.covers(f) for f in enum_rec(l, empty_start(n), upd_all)):
            return False
    return True


def region_lists(n: int, lf_lists: Sequence[PartitionList]) -> list[PartitionList]:
    """Lists below the full list that dominate no FC list and use no empty set."""
    return lists_below(full_lmax(n), lambda l: dominates_any(l, lf_lists))


@dataclass
class CoverageReport:
    covered: bool
    lists: int
    families: int
    uncovered: tuple[Family, ...] = ()


def coverage_report(n: int, chars: Characterization) -> CoverageReport:
    fc_index = CoverIndex(n, FC, chars.minimal_fc)
    nonfc_index = CoverIndex(n, NONFC, chars.maximal_nonfc)
    lf = list(chars.lf_lists)
    pairs = enum_dp(
        empty_start(n),
        dp_upd(n, IRREDUCIBLE & not_fc_covered(fc_index), canonical=True),
        lambda l: dominates_any(l, lf),
        full_lmax(n),
    )
    uncovered = []
    total = 0
    for _, value in pairs:
        for f in value:
            total += 1
            if not nonfc_index.covers(f):
                uncovered.append(f)
    return CoverageReport(not uncovered, len(pairs), total, tuple(uncovered))


def verify_total_coverage(n: int, chars: Characterization) -> bool:
    """Every irreducible family below the FC lists and not FC-covered is nonFC-covered."""
    return coverage_report(n, chars).covered


# -- statistics -----------------------------------------------------------

STATS_COLUMNS = (
    "L",
    "count_fc",
    "count_nonfc",
    "count_fc_irred",
    "count_nonfc_irred",
    "count_min_fc",
    "count_max_nonfc",
)


def _status_counts(value: Iterable[Family], fc_index: CoverIndex, nonfc_index: CoverIndex) -> tuple[int, int]:
    fc = non = 0
    for f in value:
        if fc_index.covers(f):
            fc += 1
        elif nonfc_index.covers(f):
            non += 1
        else:
            raise UsageError(f"family {f} is not covered; characterization incomplete")
    return fc, non


def stats(n: int, chars: Characterization, all_families: bool = True) -> list[dict[str, object]]:
    """Per-list counts over the region below the FC lists.

    Columns (a) count all non-isomorphic families, (b) irreducible ones,
    (c) the characteristic families themselves (maximal nonFC families by
    their irreducible basis).  Status comes from covering, which is total
    once the characterization is verified.  With ``all_families=False``
    column (a) is left empty.
    """
    from .irreducible import reduce

    fc_index = CoverIndex(n, FC, chars.minimal_fc)
    nonfc_index = CoverIndex(n, NONFC, chars.maximal_nonfc)
    lf = list(chars.lf_lists)
    stop = lambda l: dominates_any(l, lf)  # noqa: E731
    lmax = full_lmax(n)
    irred = dict(enum_dp(empty_start(n), dp_upd(n, IRREDUCIBLE, canonical=True), stop, lmax))
    every = dict(enum_dp(empty_start(n), dp_upd(n, TOP, canonical=True), stop, lmax)) if all_families else {}
    m = len(lmax) - 1
    min_counts: dict[PartitionList, int] = {}
    for f in chars.minimal_fc:
        key = partition_signature(f, m)
        min_counts[key] = min_counts.get(key, 0) + 1
    max_counts: dict[PartitionList, int] = {}
    for f in chars.maximal_nonfc:
        key = partition_signature(reduce(f), m)
        max_counts[key] = max_counts.get(key, 0) + 1
    rows = []
    for l in sorted(irred):
        fi, ni = _status_counts(irred[l], fc_index, nonfc_index)
        row: dict[str, object] = {"L": "[" + ",".join(map(str, l)) + "]"}
        if all_families:
            fa, na = _status_counts(every[l], fc_index, nonfc_index)
            row.update(count_fc=fa, count_nonfc=na)
        else:
            row.update(count_fc="", count_nonfc="")
        row.update(
            count_fc_irred=fi,
            count_nonfc_irred=ni,
            count_min_fc=min_counts.get(l, 0),
            count_max_nonfc=max_counts.get(l, 0),
        )
        rows.append(row)
    return rows


def stats_csv(rows: Sequence[dict[str, object]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=STATS_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


# -- persistence ----------------------------------------------------------


def save(chars: Characterization, directory: str | Path) -> Path:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    families = {
        "n": chars.n,
        "minimal_fc": [
            {"family": family_to_json(f), "certificate": certificate_to_json(chars.certificates[f])}
            for f in chars.minimal_fc
        ],
        "maximal_nonfc": [
            {"family": family_to_json(f), "certificate": certificate_to_json(chars.certificates[f])}
            for f in chars.maximal_nonfc
        ],
    }
    (d / "families.json").write_text(json.dumps(families, indent=1) + "\n", encoding="utf-8")
    lists = {"lf": [list(l) for l in chars.lf_lists], "ln": [list(l) for l in chars.ln_lists]}
    (d / "lf_ln.json").write_text(json.dumps(lists) + "\n", encoding="utf-8")
    manifest = {
        "n": chars.n,
        "version": __version__,
        "complete": chars.complete,
        "minimal_fc": len(chars.minimal_fc),
        "maximal_nonfc": len(chars.maximal_nonfc),
        "classified": chars.classified,
        "irreducible_nonfc": chars.irreducible_nonfc,
        "seconds": round(chars.seconds, 3),
    }
    (d / "manifest.json").write_text(json.dumps(manifest, indent=1) + "\n", encoding="utf-8")
    return d


def load(directory: str | Path, check: bool = True) -> Characterization:
    """Read a saved characterization; certificates are re-verified unless ``check`` is off."""
    d = Path(directory)
    try:
        families = json.loads((d / "families.json").read_text(encoding="utf-8"))
        manifest = json.loads((d / "manifest.json").read_text(encoding="utf-8"))
        lists_path = d / "lf_ln.json"
        lists = json.loads(lists_path.read_text(encoding="utf-8")) if lists_path.exists() else {"lf": [], "ln": []}
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read characterization from {d}: {exc}") from None
    n = families.get("n")
    if not isinstance(n, int):
        raise UsageError("families.json lacks the universe size")
    certs: dict[Family, Certificate] = {}

    def read(entries: list, kind: type) -> tuple[Family, ...]:
        out = []
        for e in entries:
            f = family_from_json(e["family"], n)
            cert = certificate_from_json(e["certificate"])
            if not isinstance(cert, kind):
                raise UsageError(f"certificate for {f} has the wrong status")
            if cert.family != normalize(f):
                raise UsageError(f"certificate does not belong to {f}")
            if check and not verify(cert):
                raise UsageError(f"certificate for {f} does not verify")
            certs[f] = cert
            out.append(f)
        return tuple(out)

    minimal = read(families.get("minimal_fc", []), FCCertificate)
    maximal = read(families.get("maximal_nonfc", []), NonFCCertificate)
    return Characterization(
        n=n,
        minimal_fc=minimal,
        maximal_nonfc=maximal,
        certificates=certs,
        lf_lists=tuple(tuple(l) for l in lists.get("lf", [])),
        ln_lists=tuple(tuple(l) for l in lists.get("ln", [])),
        complete=bool(manifest.get("complete", True)),
        classified=int(manifest.get("classified", 0)),
        irreducible_nonfc=int(manifest.get("irreducible_nonfc", 0)),
        seconds=float(manifest.get("seconds", 0.0)),
    )

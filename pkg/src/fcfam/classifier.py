"""Deciding whether a family is Frankl-complete, with certificates.

The procedure alternates two phases.  Phase one solves an exact LP for a
candidate weight function that gives every extension collected so far a
nonnegative share (minimising the total weight).  Phase two searches for a
union-closed extension with negative share under that weight.  If none
exists the weight certifies FC; otherwise the extension is collected and
the loop repeats.  When the LP becomes infeasible, its dual yields natural
coefficients that certify nonFC.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence, Union

from .errors import ResourceCapError, UsageError
from .family import (
    MAX_UNIVERSE,
    Family,
    closure,
    cnt,
    elements_of,
    family_from_json,
    family_to_json,
    is_union_closed,
)
from .iso import Perm, apply_perm
from .linarith import GE, LinearSystem, find_dual_coefficients, scale_to_naturals, solve
from .search import find_min_share_extension, find_negative_extension, ssn, uce_contains
from .weights import is_weight_fn_on, subsets_of

DEFAULT_MAX_ITERATIONS = 10_000


@dataclass(frozen=True)
class FCCertificate:
    family: Family
    weight: tuple[int, ...]
    original: Family | None = None

    status = "FC"


@dataclass(frozen=True)
class NonFCCertificate:
    family: Family
    witnesses: tuple[tuple[Family, int], ...]
    original: Family | None = None

    status = "nonFC"


Certificate = Union[FCCertificate, NonFCCertificate]


@dataclass
class ClassifyStats:
    iterations: int = 0
    weights: list[tuple[int, ...]] = field(default_factory=list)


def normalize(f: Family) -> Family:
    """Drop the empty set and take the closure; FC status is unchanged."""
    return closure(f.without_set(0))


def _deviation_row(fi: Family, elems: Sequence[int]) -> list[int]:
    size = len(fi)
    return [2 * cnt(a, fi) - size for a in elems]


def _candidate_weight(rows: list[list[int]], k: int) -> tuple[int, ...] | None:
    system = LinearSystem(k, nonnegative=True)
    system.add([1] * k, GE, 1)
    for row in rows:
        system.add(row, GE, 0)
    system.minimize([1] * k)
    sol = solve(system)
    return None if sol is None else scale_to_naturals(sol)


def classify(
    f: Family,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    stats: ClassifyStats | None = None,
    deepest: bool = True,
) -> Certificate:
    """FC status of ``f`` together with a certificate for it.

    With ``deepest`` (the default) phase two returns an extension of least
    share, which cuts far more off the weight LP than the first extension
    found and converges in a handful of rounds.
    """
    search = find_min_share_extension if deepest else find_negative_extension
    fc = normalize(f)
    n = fc.n
    elems = elements_of(fc.union)
    if not elems:
        # Nothing can be abundant inside an empty union.
        return NonFCCertificate(fc, ((Family.empty(n), 1),), f)
    collected: list[Family] = []
    rows: list[list[int]] = []
    for it in range(max_iterations):
        if stats is not None:
            stats.iterations = it + 1
        local = _candidate_weight(rows, len(elems))
        if local is None:
            coeffs = find_dual_coefficients(rows)
            if coeffs is None:
                raise ArithmeticError("primal and dual systems are both infeasible")
            witnesses = tuple((g, c) for g, c in zip(collected, coeffs) if c > 0)
            return NonFCCertificate(fc, witnesses, f)
        w = [0] * n
        for a, v in zip(elems, local):
            w[a] = v
        w = tuple(w)
        if stats is not None:
            stats.weights.append(w)
        ext = search(fc, w)
        if ext is None:
            return FCCertificate(fc, w, f)
        collected.append(ext)
        rows.append(_deviation_row(ext, elems))
    raise ResourceCapError(f"no verdict after {max_iterations} iterations")


def is_fc(f: Family) -> bool:
    return isinstance(classify(f), FCCertificate)


def permute_certificate(cert: Certificate, p: Perm) -> Certificate:
    """The certificate for the image of the certified family under ``p``."""
    original = None if cert.original is None else apply_perm(p, cert.original)
    fam = apply_perm(p, cert.family)
    if isinstance(cert, FCCertificate):
        w = [0] * len(cert.weight)
        for i, v in enumerate(cert.weight):
            w[p.mapping[i]] = v
        return FCCertificate(fam, tuple(w), original)
    witnesses = tuple((apply_perm(p, g), c) for g, c in cert.witnesses)
    return NonFCCertificate(fam, witnesses, original)


# -- verification ---------------------------------------------------------


def verify_fc(cert: FCCertificate) -> bool:
    fam = cert.family
    if len(cert.weight) != fam.n or any(v < 0 for v in cert.weight):
        return False
    if not is_weight_fn_on(cert.weight, fam.union):
        return False
    if cert.original is not None and normalize(cert.original) != normalize(fam):
        return False
    return not ssn(fam, cert.weight)


def verify_nonfc(cert: NonFCCertificate) -> bool:
    fam = cert.family
    if not is_union_closed(fam):
        return False
    if cert.original is not None and normalize(cert.original) != normalize(fam):
        return False
    if not cert.witnesses or any(c < 0 for _, c in cert.witnesses):
        return False
    if not any(c > 0 for _, c in cert.witnesses):
        return False
    for g, _ in cert.witnesses:
        if g.n != fam.n or not uce_contains(fam, g):
            return False
    for a in elements_of(fam.union):
        total = sum(c * (2 * cnt(a, g) - len(g)) for g, c in cert.witnesses)
        if total >= 0:
            return False
    return True


def verify(cert: Certificate) -> bool:
    if isinstance(cert, FCCertificate):
        return verify_fc(cert)
    return verify_nonfc(cert)


# -- counterexample expansion ---------------------------------------------


def expand_counterexample(cert: NonFCCertificate, d: int) -> Family:
    """The union-closed family over a larger universe built from the witnesses.

    With ``c`` the coefficient sum, ``c*d + 1`` fresh elements ``b_j`` are
    added above the original universe.  Witness ``F_i`` is repeated
    ``c_i * d`` times; the ``s``-th copy is lifted by adding every fresh
    element except ``b_s``.  All subsets of the old union, lifted by all
    fresh elements, complete the family.
    """
    if d < 1:
        raise UsageError("d must be positive")
    fc = cert.family
    c = sum(cf for _, cf in cert.witnesses)
    if c <= 0:
        raise UsageError("certificate has no positive coefficient")
    n = fc.n
    width = n + c * d + 1
    if width > MAX_UNIVERSE:
        raise ResourceCapError(
            f"expanded universe needs {width} elements (limit {MAX_UNIVERSE}); "
            "use a certificate with smaller coefficients"
        )
    b_all = ((1 << (c * d + 1)) - 1) << n
    sequence = [g for g, cf in cert.witnesses for _ in range(cf * d)]
    out = set(fc.members)
    for s, g in enumerate(sequence):
        b_s = b_all & ~(1 << (n + s))
        out.update(a | b_s for a in g.members)
    out.update(a | b_all for a in subsets_of(fc.union))
    return Family.of(out, width)


def check_counterexample(fc: Family, big: Family) -> bool:
    """``big`` is union-closed, contains ``fc`` and no element of the union of ``fc`` is abundant."""
    if not is_union_closed(big):
        return False
    s = big.member_set
    if any(a not in s for a in fc.members):
        return False
    size = len(big)
    return all(2 * cnt(a, big) < size for a in elements_of(fc.union))


def find_sufficient_d(cert: NonFCCertificate, max_d: int = 64) -> tuple[int, Family]:
    fc = cert.family
    for d in range(1, max_d + 1):
        big = expand_counterexample(cert, d)
        if check_counterexample(fc, big):
            return d, big
    raise ResourceCapError(f"no d <= {max_d} gives a counterexample")


# -- JSON -----------------------------------------------------------------


def certificate_to_json(cert: Certificate) -> dict[str, Any]:
    out: dict[str, Any] = {
        "family": family_to_json(cert.family),
        "universe": cert.family.n,
        "status": cert.status,
    }
    if isinstance(cert, FCCertificate):
        out["weight"] = list(cert.weight)
    else:
        out["witnesses"] = [{"family": family_to_json(g), "coefficient": c} for g, c in cert.witnesses]
    if cert.original is not None:
        out["original"] = family_to_json(cert.original)
    return out


def _nat(x: Any, what: str) -> int:
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise UsageError(f"{what} must be a natural number")
    return x


def certificate_from_json(data: Any) -> Certificate:
    if not isinstance(data, dict):
        raise UsageError("certificate must be a JSON object")
    for key in ("family", "universe", "status"):
        if key not in data:
            raise UsageError(f"certificate lacks {key!r}")
    n = _nat(data["universe"], "universe")
    fam = family_from_json(data["family"], n)
    original = family_from_json(data["original"], n) if "original" in data else None
    status = data["status"]
    has_w, has_x = "weight" in data, "witnesses" in data
    if has_w == has_x:
        raise UsageError("certificate must carry exactly one of 'weight' and 'witnesses'")
    if status == "FC":
        if not has_w or not isinstance(data["weight"], list):
            raise UsageError("FC certificate needs a weight array")
        weight = tuple(_nat(v, "weight entry") for v in data["weight"])
        return FCCertificate(fam, weight, original)
    if status == "nonFC":
        if not has_x or not isinstance(data["witnesses"], list):
            raise UsageError("nonFC certificate needs a witnesses array")
        witnesses = []
        for item in data["witnesses"]:
            if not isinstance(item, dict) or "family" not in item or "coefficient" not in item:
                raise UsageError("each witness needs 'family' and 'coefficient'")
            witnesses.append((family_from_json(item["family"], n), _nat(item["coefficient"], "coefficient")))
        return NonFCCertificate(fam, tuple(witnesses), original)
    raise UsageError(f"unknown status {status!r}")

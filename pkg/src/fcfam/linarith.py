"""Exact rational linear programming on small systems.

``solve`` runs a two-phase dense-tableau simplex over ``fractions.Fraction``
with Bland's rule, so it always terminates and never touches floating point.
Variables are free unless the system declares them all nonnegative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import UsageError
from .family import Family, full_set
from .weights import build_share_table

GE, LE, EQ = ">=", "<=", "="


@dataclass(frozen=True)
class Row:
    coefficients: tuple[Fraction, ...]
    relation: str
    rhs: Fraction


@dataclass
class LinearSystem:
    """Rows over ``num_vars`` variables; free unless ``nonnegative`` is set."""

    num_vars: int
    rows: list[Row] = field(default_factory=list)
    objective: tuple[Fraction, ...] | None = None  # minimised
    nonnegative: bool = False

    def add(self, coefficients: Sequence, relation: str, rhs) -> LinearSystem:
        if relation not in (GE, LE, EQ):
            raise UsageError(f"unknown relation {relation!r}")
        if len(coefficients) != self.num_vars:
            raise UsageError(f"row has {len(coefficients)} coefficients, expected {self.num_vars}")
        self.rows.append(Row(tuple(Fraction(c) for c in coefficients), relation, Fraction(rhs)))
        return self

    def minimize(self, objective: Sequence) -> LinearSystem:
        if len(objective) != self.num_vars:
            raise UsageError("objective length differs from num_vars")
        self.objective = tuple(Fraction(c) for c in objective)
        return self

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        if self.nonnegative and any(v < 0 for v in x):
            return False
        for row in self.rows:
            lhs = sum((c * v for c, v in zip(row.coefficients, x)), Fraction(0))
            if row.relation == GE and lhs < row.rhs:
                return False
            if row.relation == LE and lhs > row.rhs:
                return False
            if row.relation == EQ and lhs != row.rhs:
                return False
        return True


class UnboundedError(ArithmeticError):
    pass


class _Tableau:
    """Rows ``a[i] . y = b[i]``, ``y >= 0``, basis ``basis[i]``, plus a
    reduced-cost row ``obj`` kept up to date by every pivot."""

    def __init__(self, a: list[list[Fraction]], b: list[Fraction], basis: list[int]):
        self.a = a
        self.b = b
        self.basis = basis
        self.obj: list[Fraction] = []

    def pivot(self, r: int, c: int) -> None:
        a, b = self.a, self.b
        pr = a[r]
        pv = pr[c]
        if pv != 1:
            pr = [v / pv if v else v for v in pr]
            a[r] = pr
            b[r] = b[r] / pv
        nz = [(j, v) for j, v in enumerate(pr) if v]
        br = b[r]
        for i, row in enumerate(a):
            f = row[c]
            if i != r and f:
                for j, v in nz:
                    row[j] -= f * v
                b[i] -= f * br
        f = self.obj[c]
        if f:
            obj = self.obj
            for j, v in nz:
                obj[j] -= f * v
        self.basis[r] = c

    def set_cost(self, cost: list[Fraction]) -> None:
        obj = list(cost)
        for i, j in enumerate(self.basis):
            f = obj[j]
            if f:
                for col, v in enumerate(self.a[i]):
                    if v:
                        obj[col] -= f * v
        self.obj = obj

    def optimise(self, allowed: int) -> None:
        """Minimise the current cost using columns ``< allowed`` (Bland's rule)."""
        while True:
            obj = self.obj
            entering = next((j for j in range(allowed) if obj[j] < 0), -1)
            if entering < 0:
                return
            leave = -1
            best: Fraction | None = None
            for i, row in enumerate(self.a):
                if row[entering] > 0:
                    ratio = self.b[i] / row[entering]
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best, leave = ratio, i
            if leave < 0:
                raise UnboundedError("objective is unbounded below")
            self.pivot(leave, entering)


def solve(system: LinearSystem) -> tuple[Fraction, ...] | None:
    """A feasible (optimal, if an objective is set) point, or None if infeasible."""
    nv = system.num_vars
    if nv < 1:
        raise UsageError("a linear system needs at least one variable")
    zero, one = Fraction(0), Fraction(1)
    split = not system.nonnegative
    nx = 2 * nv if split else nv
    # Normalise rows to nonnegative right-hand sides.
    rows = []
    for row in system.rows:
        coeffs, rel, rhs = list(row.coefficients), row.relation, row.rhs
        # A zero right-hand side lets a >= row become a <= row with a basic slack.
        if rhs < 0 or (rhs == 0 and rel == GE):
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            rel = {GE: LE, LE: GE, EQ: EQ}[rel]
        rows.append((coeffs, rel, rhs))
    ns = sum(1 for _, rel, _ in rows if rel != EQ)
    na = sum(1 for _, rel, _ in rows if rel != LE)
    real = nx + ns
    ncols = real + na
    a: list[list[Fraction]] = []
    b: list[Fraction] = []
    basis: list[int] = []
    s_col, a_col = nx, real
    for coeffs, rel, rhs in rows:
        line = [zero] * ncols
        for j, c in enumerate(coeffs):
            line[j] = c
            if split:
                line[nv + j] = -c
        if rel == LE:
            line[s_col] = one
            basis.append(s_col)
            s_col += 1
        else:
            if rel == GE:
                line[s_col] = -one
                s_col += 1
            line[a_col] = one
            basis.append(a_col)
            a_col += 1
        a.append(line)
        b.append(rhs)
    tab = _Tableau(a, b, basis)

    if na:
        tab.set_cost([zero] * real + [one] * na)
        tab.optimise(real)
        if any(tab.b[i] > 0 for i, j in enumerate(tab.basis) if j >= real):
            return None
        # Drive zero-level artificials out of the basis; drop redundant rows.
        i = 0
        while i < len(tab.a):
            if tab.basis[i] >= real:
                col = next((j for j in range(real) if tab.a[i][j] != 0), -1)
                if col < 0:
                    del tab.a[i], tab.b[i], tab.basis[i]
                    continue
                tab.pivot(i, col)
            i += 1

    if system.objective is not None:
        obj = list(system.objective)
        cost = obj + ([-c for c in obj] if split else []) + [zero] * (ns + na)
        tab.set_cost(cost)
        tab.optimise(real)

    y = [zero] * ncols
    for i, j in enumerate(tab.basis):
        y[j] = tab.b[i]
    if split:
        return tuple(y[j] - y[nv + j] for j in range(nv))
    return tuple(y[:nv])


def scale_to_naturals(v: Sequence) -> tuple[int, ...]:
    """Smallest natural vector proportional to the nonnegative rational ``v``."""
    fr = [Fraction(x) for x in v]
    if any(x < 0 for x in fr):
        raise UsageError("cannot scale a vector with negative entries to naturals")
    lcm = 1
    for x in fr:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in fr]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def find_dual_coefficients(d: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """Naturals ``c`` (not all zero) with ``sum_i c[i] * d[i][a] < 0`` for every column.

    ``d`` has one row per family and one column per element.  Solves
    ``c >= 0, sum_i c[i] * d[i][a] <= -1`` and scales the result.
    """
    if not d or not d[0]:
        raise UsageError("dual system needs at least one row and one column")
    k, cols = len(d), len(d[0])
    if any(len(row) != cols for row in d):
        raise UsageError("ragged coefficient matrix")
    system = LinearSystem(k, nonnegative=True)
    for a in range(cols):
        system.add([d[i][a] for i in range(k)], LE, -1)
    system.minimize([1] * k)
    sol = solve(system)
    if sol is None:
        return None
    return scale_to_naturals(sol)


# -- LP file export -------------------------------------------------------


def _term(coef: int, var: str, first: bool) -> str:
    sign = "-" if coef < 0 else ("" if first else "+")
    mag = abs(coef)
    body = var if mag == 1 else f"{mag} {var}"
    return f"{sign} {body}".strip() if first else f"{sign} {body}"


def _expr(terms: list[tuple[int, str]]) -> str:
    parts = [_term(c, v, i == 0) for i, (c, v) in enumerate((c, v) for c, v in terms if c)]
    return " ".join(parts) if parts else "0 x_0"


def lp_text(fc: Family, w: Sequence[int]) -> str:
    """The 0-1 program whose solutions are negative-share extensions of ``fc``."""
    n = fc.n
    if fc.union != full_set(n):
        raise UsageError("LP export needs the family's union to be the whole universe")
    if len(w) != n:
        raise UsageError(f"weight vector has {len(w)} entries, universe has {n}")
    size = 1 << n
    shares = build_share_table(list(w), full_set(n)).shares
    name = [f"x_{a}" for a in range(size)]
    lines = ["\\ negative-share union-closed extension", "Minimize", " obj: " + _expr([(shares[a], name[a]) for a in range(size)]), "Subject To"]
    count = 0
    for a in range(size):
        for b in range(a + 1, size):
            u = a | b
            if u in (a, b):
                # x_A + x_B <= 1 + x_B is implied by x_A <= 1.
                continue
            count += 1
            lines.append(f" u{count}: {name[a]} + {name[b]} - {name[u]} <= 1")
    closed = 0
    for c in fc.members:
        for b in range(size):
            u = b | c
            if u == b:
                continue
            closed += 1
            lines.append(f" c{closed}: {name[b]} - {name[u]} <= 0")
    lines.append(" share: " + _expr([(shares[a], name[a]) for a in range(size)]) + " <= -1")
    lines.append("Binary")
    lines.extend(f" {v}" for v in name)
    lines.append("End")
    return "\n".join(lines) + "\n"


def export_lp(fc: Family, w: Sequence[int], path: str | Path) -> Path:
    path = Path(path)
    path.write_text(lp_text(fc, w), encoding="utf-8")
    return path

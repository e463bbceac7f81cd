"""Exact linear programming over the rationals.

Everything runs on :class:`fractions.Fraction`; there is no floating point
anywhere.  Problems have the shape

    maximize c.x  subject to  a_i.x (<= | >= | =) b_i,  x >= 0

and are solved with a sparse tableau simplex using Bland's rule, so the
result (including the final basis) is a deterministic function of the input.
A slack basis that is already primal feasible goes straight to the primal
simplex; one that is dual feasible (no positive objective coefficient)
goes to the dual simplex; anything else runs a phase-one problem first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exceptions import InternalCheckError, ValidationError

LE, GE, EQ = "<=", ">=", "="
OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"

_ZERO = Fraction(0)
_MAX_PIVOTS = 1_000_000


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise ValidationError(f"floating-point coefficient {x!r}; pass int, str or Fraction")
    return Fraction(x)


@dataclass
class LinearProgram:
    objective: list
    rows: list = field(default_factory=list)
    senses: list = field(default_factory=list)
    rhs: list = field(default_factory=list)

    def __post_init__(self):
        self.objective = [as_fraction(c) for c in self.objective]
        n = len(self.objective)
        if not len(self.rows) == len(self.senses) == len(self.rhs):
            raise ValidationError("rows, senses and rhs must have equal lengths")
        clean = []
        for row in self.rows:
            if isinstance(row, dict):
                row = {int(j): as_fraction(v) for j, v in row.items() if v}
                if any(not 0 <= j < n for j in row):
                    raise ValidationError("sparse row refers to a missing variable")
            else:
                if len(row) != n:
                    raise ValidationError(f"row has {len(row)} coefficients, expected {n}")
                row = {j: as_fraction(v) for j, v in enumerate(row) if v}
            clean.append(row)
        self.rows = clean
        for s in self.senses:
            if s not in (LE, GE, EQ):
                raise ValidationError(f"unknown constraint sense {s!r}")
        self.rhs = [as_fraction(b) for b in self.rhs]

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def add_row(self, coeffs, sense: str, rhs) -> None:
        self.rows.append({int(j): as_fraction(v) for j, v in dict(coeffs).items() if v})
        if sense not in (LE, GE, EQ):
            raise ValidationError(f"unknown constraint sense {sense!r}")
        self.senses.append(sense)
        self.rhs.append(as_fraction(rhs))

    def to_text(self) -> str:
        """Plain-text dump: one objective line then one line per constraint."""
        n = self.num_vars
        lines = ["maximize " + " ".join(_fmt(c) for c in self.objective)]
        for i, (row, sense, b) in enumerate(zip(self.rows, self.senses, self.rhs), start=1):
            coeffs = " ".join(_fmt(row.get(j, _ZERO)) for j in range(n))
            lines.append(f"c{i}: {coeffs} {sense} {_fmt(b)}")
        return "\n".join(lines) + "\n"


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple = ()
    basis: tuple = ()

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Sparse simplex tableau; row ``i`` reads ``x_basis[i] + sum a_ij x_j = rhs_i``."""

    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols
        self.cost: dict[int, Fraction] = {}
        self.value = _ZERO
        self.pivots = 0

    def set_objective(self, c: dict[int, Fraction]) -> None:
        """Install reduced costs of ``c`` against the current basis."""
        cost = dict(c)
        value = _ZERO
        for i, b in enumerate(self.basis):
            cb = c.get(b)
            if not cb:
                continue
            value += cb * self.rhs[i]
            for j, a in self.rows[i].items():
                cost[j] = cost.get(j, _ZERO) - cb * a
        self.cost = {j: v for j, v in cost.items() if v}
        self.value = value

    def pivot(self, r: int, s: int) -> None:
        self.pivots += 1
        if self.pivots > _MAX_PIVOTS:
            raise RuntimeError("simplex pivot limit exceeded")
        prow = self.rows[r]
        p = prow[s]
        if p != 1:
            prow = {j: a / p for j, a in prow.items()}
            self.rhs[r] /= p
            self.rows[r] = prow
        br = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row.get(s)
            if not f:
                continue
            for j, a in prow.items():
                v = row.get(j, _ZERO) - f * a
                if v:
                    row[j] = v
                else:
                    row.pop(j, None)
            self.rhs[i] -= f * br
        f = self.cost.get(s)
        if f:
            for j, a in prow.items():
                v = self.cost.get(j, _ZERO) - f * a
                if v:
                    self.cost[j] = v
                else:
                    self.cost.pop(j, None)
            self.value += f * br
        self.basis[r] = s

    def primal(self) -> str:
        while True:
            entering = min((j for j, v in self.cost.items() if v > 0), default=None)
            if entering is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row.get(entering)
                if a is None or a <= 0:
                    continue
                key = (self.rhs[i] / a, self.basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], entering)

    def dual(self) -> str:
        while True:
            leaving = None
            for i, b in enumerate(self.rhs):
                if b < 0 and (leaving is None or self.basis[i] < self.basis[leaving]):
                    leaving = i
            if leaving is None:
                return OPTIMAL
            best = None
            for j, a in self.rows[leaving].items():
                if a >= 0:
                    continue
                key = (self.cost.get(j, _ZERO) / a, j)
                if best is None or key < best:
                    best = key
            if best is None:
                return INFEASIBLE
            self.pivot(leaving, best[1])

    def solution(self, n: int) -> tuple:
        x = [_ZERO] * n
        for i, b in enumerate(self.basis):
            if b < n:
                x[b] = self.rhs[i]
        return tuple(x)


def _standardize(lp: LinearProgram):
    """Rows as ``<=`` or ``=`` constraints (``>=`` rows negated)."""
    rows, senses, rhs = [], [], []
    for row, sense, b in zip(lp.rows, lp.senses, lp.rhs):
        if sense == GE:
            rows.append({j: -a for j, a in row.items()})
            senses.append(LE)
            rhs.append(-b)
        else:
            rows.append(dict(row))
            senses.append(sense)
            rhs.append(b)
    return rows, senses, rhs


def solve_max(lp: LinearProgram) -> LPResult:
    n = lp.num_vars
    c = {j: v for j, v in enumerate(lp.objective) if v}
    rows, senses, rhs = _standardize(lp)
    m = len(rows)

    # column layout: structural 0..n-1, one slack per <= row, then artificials
    slack_of = {}
    col = n
    for i, s in enumerate(senses):
        if s == LE:
            rows[i][col] = Fraction(1)
            slack_of[i] = col
            col += 1

    has_eq = EQ in senses
    if not has_eq and all(b >= 0 for b in rhs):
        tab = _Tableau(rows, rhs, [slack_of[i] for i in range(m)], col)
        tab.set_objective(c)
        status = tab.primal()
        return _finish(tab, status, n)

    if not has_eq and all(v <= 0 for v in c.values()):
        tab = _Tableau(rows, rhs, [slack_of[i] for i in range(m)], col)
        tab.set_objective(c)
        status = tab.dual()
        return _finish(tab, status, n)

    # phase one: artificial variables where the slack basis is unusable
    first_art = col
    basis = []
    for i in range(m):
        if senses[i] == LE and rhs[i] >= 0:
            basis.append(slack_of[i])
            continue
        if rhs[i] < 0:
            rows[i] = {j: -a for j, a in rows[i].items()}
            rhs[i] = -rhs[i]
        rows[i][col] = Fraction(1)
        basis.append(col)
        col += 1
    tab = _Tableau(rows, rhs, basis, col)
    tab.set_objective({j: Fraction(-1) for j in range(first_art, col)})
    tab.primal()
    if tab.value < 0:
        return LPResult(INFEASIBLE)

    # drive leftover (zero-level) artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= first_art:
            s = min((j for j in tab.rows[i] if j < first_art), default=None)
            if s is None:
                del tab.rows[i], tab.rhs[i], tab.basis[i]
                continue
            tab.pivot(i, s)
        i += 1
    for row in tab.rows:
        for j in [j for j in row if j >= first_art]:
            del row[j]
    tab.ncols = first_art
    tab.set_objective(c)
    status = tab.primal()
    return _finish(tab, status, n)


def _finish(tab: _Tableau, status: str, n: int) -> LPResult:
    if status != OPTIMAL:
        return LPResult(status)
    return LPResult(OPTIMAL, tab.value, tab.solution(n), tuple(tab.basis))


def solve_min(lp: LinearProgram) -> LPResult:
    neg = LinearProgram([-c for c in lp.objective], list(lp.rows), list(lp.senses), list(lp.rhs))
    res = solve_max(neg)
    if res.status != OPTIMAL:
        return res
    return LPResult(OPTIMAL, -res.value, res.x, res.basis)


def feasibility(lp: LinearProgram) -> LPResult:
    """Phase-one verdict; an optimal result carries a feasible witness in ``x``."""
    zero = LinearProgram([0] * lp.num_vars, list(lp.rows), list(lp.senses), list(lp.rhs))
    return solve_max(zero)


def check_solution(lp: LinearProgram, x: Sequence[Fraction]) -> bool:
    if len(x) != lp.num_vars or any(v < 0 for v in x):
        return False
    for row, sense, b in zip(lp.rows, lp.senses, lp.rhs):
        lhs = sum((a * x[j] for j, a in row.items()), _ZERO)
        if sense == LE and lhs > b or sense == GE and lhs < b or sense == EQ and lhs != b:
            return False
    return True


# -- fractional matching / vertex cover on recovery hypergraphs ------------
#
# The hypergraph argument only needs ``edges`` (each with ``servers``) and
# ``servers``; the auxiliary vertex is never a constraint or a variable.


@dataclass(frozen=True)
class MatchingResult:
    value: Fraction
    weights: tuple  # one weight per edge, in edge order


@dataclass(frozen=True)
class CoverResult:
    value: Fraction
    weights: dict  # server -> weight


def matching_lp(g) -> LinearProgram:
    edges = list(g.edges)
    lp = LinearProgram([1] * len(edges))
    for v in g.servers:
        row = {i: 1 for i, e in enumerate(edges) if v in e.servers}
        if row:
            lp.add_row(row, LE, 1)
    return lp


def cover_lp(g) -> LinearProgram:
    """Minimum cover written as a maximization of the negated weight sum."""
    servers = list(g.servers)
    pos = {v: i for i, v in enumerate(servers)}
    lp = LinearProgram([-1] * len(servers))
    for e in g.edges:
        lp.add_row({pos[v]: 1 for v in e.servers}, GE, 1)
    return lp


def fractional_matching(g) -> MatchingResult:
    res = solve_max(matching_lp(g))
    if not res.optimal:
        raise InternalCheckError(f"matching LP returned {res.status}")
    return MatchingResult(res.value, res.x)


def fractional_cover(g) -> CoverResult:
    res = solve_max(cover_lp(g))
    if not res.optimal:
        raise InternalCheckError(f"cover LP returned {res.status}")
    return CoverResult(-res.value, dict(zip(g.servers, res.x)))


def matching_number(g) -> Fraction:
    return fractional_matching(g).value


def vertex_cover_number(g) -> Fraction:
    """Fractional cover number; checked against the matching number."""
    tau = fractional_cover(g).value
    nu = matching_number(g)
    if tau != nu:
        raise InternalCheckError(f"duality gap: cover {tau} vs matching {nu}")
    return tau

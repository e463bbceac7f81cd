"""Service rate region analysis for RM generator matrices.

Closed-form per-object and per-order bounds, the explicit allocations that
attain them, and an LP membership oracle that returns either a witness
allocation or a weighted vertex-cover certificate of infeasibility.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import InternalCheckError, ValidationError
from .geometry import gaussian_binomial
from .hypergraph import (
    GEOMETRIC_POLICY,
    ORACLE_POLICY,
    RecoveryHypergraph,
    build_hypergraph,
)
from .lp import EQ, GE, LE, LinearProgram, feasibility, matching_number, solve_max
from .recovery import (
    max_oracle_m,
    second_smallest_recovery_sets,
    smallest_recovery_set,
)
from .rm import RmParams, object_order
from .validation import parse_rates


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _check_order(p: RmParams, ell: int) -> None:
    if not 0 <= ell <= p.r:
        raise ValidationError(f"order {ell} outside 0..{p.r}")


def _order_bound(p: RmParams, ell: int) -> Fraction:
    return 1 + Fraction((1 << p.m) - (1 << ell), (1 << (p.r + 1)) - (1 << ell))


def lambda_max(p: RmParams, j: int) -> Fraction:
    p.require_dual()
    return _order_bound(p, object_order(p, j).order)


def same_order_sum_bound(p: RmParams, ell: int) -> Fraction:
    p.require_dual()
    _check_order(p, ell)
    return _order_bound(p, ell)


def total_sum_bound(p: RmParams, ell: int) -> Fraction:
    p.require_dual()
    _check_order(p, ell)
    return 1 + Fraction((1 << p.m) - 1, (1 << (p.r + 1)) - (1 << ell))


def enclosing_bound(p: RmParams) -> int:
    """Integer sum bound defining the enclosing simplex."""
    return 1 + (1 << (p.m - p.r))


@dataclass(frozen=True)
class Allocation:
    """Rates split over recovery sets: ``parts[i]`` lists (columns, rate) for object ``i``."""

    parts: dict

    def rate(self, i: int) -> Fraction:
        return sum((x for _, x in self.parts.get(i, ())), Fraction(0))

    def rates(self, k: int) -> tuple[Fraction, ...]:
        return tuple(self.rate(i) for i in range(1, k + 1))

    def loads(self) -> dict[int, Fraction]:
        out: dict[int, Fraction] = defaultdict(Fraction)
        for pieces in self.parts.values():
            for cols, x in pieces:
                for c in cols:
                    out[c] += x
        return dict(sorted(out.items()))

    def max_load(self) -> Fraction:
        return max(self.loads().values(), default=Fraction(0))

    def to_json(self) -> list:
        return [
            {"object": i, "sets": [{"servers": list(cols), "rate": fraction_str(x)} for cols, x in pieces]}
            for i, pieces in sorted(self.parts.items())
        ]


def achievability_allocation(p: RmParams, j: int) -> Allocation:
    """Rate 1 on the smallest set and equal shares on the second-smallest sets."""
    p.require_dual()
    obj = object_order(p, j)
    S = smallest_recovery_set(p, j)
    second = second_smallest_recovery_sets(p, j)
    share = Fraction(1, gaussian_binomial(p.m - obj.order - 1, p.r - obj.order))
    pieces = [(S.columns, Fraction(1))] + [(R.columns, share) for R in second]
    alloc = Allocation({j: pieces})
    if alloc.max_load() > 1:
        raise InternalCheckError(f"allocation for object {j} of {p} overloads a server")
    if alloc.rate(j) != lambda_max(p, j):
        raise InternalCheckError(f"allocation for object {j} of {p} totals {alloc.rate(j)}")
    return alloc


def parse_demand(p: RmParams, values) -> tuple[Fraction, ...]:
    return parse_rates(values, p.k)


@dataclass(frozen=True)
class MembershipResult:
    inside: bool
    policy: str
    exact: bool
    scale: Fraction | None  # largest t with t * demand achievable (None for zero demand)
    allocation: Allocation | None = None
    certificate: dict | None = field(default=None)

    def to_json(self) -> dict:
        out = {
            "verdict": "inside" if self.inside else "outside",
            "policy": self.policy,
            "exact": self.exact,
            "maxScale": None if self.scale is None else fraction_str(self.scale),
        }
        if self.allocation is not None:
            out["allocation"] = self.allocation.to_json()
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def default_policy(p: RmParams) -> str:
    return ORACLE_POLICY if p.m <= max_oracle_m() else GEOMETRIC_POLICY


def demand_lp(g: RecoveryHypergraph, lam) -> LinearProgram:
    """One variable per edge; per-object equalities and per-server capacities."""
    edges = list(g.edges)
    lp = LinearProgram([0] * len(edges))
    for i, x in enumerate(lam, start=1):
        row = {t: 1 for t, e in enumerate(edges) if e.label == i}
        if row or x:
            lp.add_row(row, EQ, x)
    for v in g.servers:
        row = {t: 1 for t, e in enumerate(edges) if v in e.servers}
        if row:
            lp.add_row(row, LE, 1)
    return lp


def scaling_lp(g: RecoveryHypergraph, lam) -> tuple[LinearProgram, list[int]]:
    """Cover-style LP whose optimum is the largest feasible scaling of ``lam``.

    Variables are server weights ``w`` then object prices ``z``; minimize the
    total server weight subject to every edge costing at least its object's
    price and the demand-weighted prices summing to at least one.
    """
    servers = list(g.servers)
    pos = {v: t for t, v in enumerate(servers)}
    k = len(lam)
    lp = LinearProgram([-1] * len(servers) + [0] * k)
    for e in g.edges:
        row = {pos[v]: 1 for v in e.servers}
        row[len(servers) + e.label - 1] = -1
        lp.add_row(row, GE, 0)
    lp.add_row({len(servers) + i: x for i, x in enumerate(lam) if x}, GE, 1)
    return lp, servers


def max_scale(g: RecoveryHypergraph, lam) -> tuple[Fraction, dict]:
    lp, servers = scaling_lp(g, lam)
    res = solve_max(lp)
    if not res.optimal:
        raise InternalCheckError(f"scaling LP returned {res.status}")
    w = {v: res.x[t] for t, v in enumerate(servers) if res.x[t]}
    z = {i: res.x[len(servers) + i - 1] for i in range(1, len(lam) + 1) if res.x[len(servers) + i - 1]}
    return -res.value, {"serverWeights": w, "objectPrices": z}


def _certificate_json(cert: dict) -> dict:
    return {
        "serverWeights": {str(v): fraction_str(x) for v, x in cert["serverWeights"].items()},
        "objectPrices": {str(i): fraction_str(x) for i, x in cert["objectPrices"].items()},
    }


def membership(p: RmParams, lam, policy: str | None = None, graph: RecoveryHypergraph | None = None) -> MembershipResult:
    lam = parse_demand(p, lam)
    policy = policy or default_policy(p)
    g = graph if graph is not None else build_hypergraph(p, policy)
    exact = policy == ORACLE_POLICY
    if not any(lam):
        return MembershipResult(True, policy, exact, None, Allocation({}))
    res = feasibility(demand_lp(g, lam))
    if res.optimal:
        parts: dict = defaultdict(list)
        for e, x in zip(g.edges, res.x):
            if x:
                parts[e.label].append((e.servers, x))
        alloc = Allocation(dict(parts))
        if alloc.rates(p.k) != lam or alloc.max_load() > 1:
            raise InternalCheckError("feasibility witness fails the demand constraints")
        return MembershipResult(True, policy, exact, None, alloc)
    t, cert = max_scale(g, lam)
    if t >= 1:
        raise InternalCheckError(f"infeasible demand admits scaling {t}")
    return MembershipResult(False, policy, exact, t, certificate=_certificate_json(cert))


@dataclass(frozen=True)
class SimplexDescription:
    kind: str
    vertices: tuple = ()
    sum_bound: Fraction | None = None


def simplices(p: RmParams) -> tuple[SimplexDescription, SimplexDescription, Fraction]:
    """Maximal achievable simplex, enclosing simplex and their sum-bound ratio."""
    p.require_dual()
    verts = [tuple(Fraction(0) for _ in range(p.k))]
    for j in range(1, p.k + 1):
        v = [Fraction(0)] * p.k
        v[j - 1] = lambda_max(p, j)
        verts.append(tuple(v))
    A = SimplexDescription("maximalAchievable", tuple(verts))
    omega = SimplexDescription("enclosing", sum_bound=Fraction(enclosing_bound(p)))
    ratio = Fraction(enclosing_bound(p), 1 + (1 << (p.m - p.r - 1)))
    if ratio >= 2:
        raise InternalCheckError(f"enclosing/achievable ratio {ratio} is not below 2")
    return A, omega, ratio


def nu_star(p: RmParams, policy: str | None = None) -> Fraction:
    return matching_number(build_hypergraph(p, policy or default_policy(p)))


def bounds_report(p: RmParams, policy: str | None = None, with_lp: bool | None = None) -> dict:
    """Full bound report; ``nuStar`` is included when the oracle policy applies."""
    p.require_dual()
    policy = policy or default_policy(p)
    per_object = []
    for j in range(1, p.k + 1):
        obj = object_order(p, j)
        per_object.append({
            "j": j,
            "order": obj.order,
            "symbol": obj.monomial.symbol,
            "lambdaMax": fraction_str(lambda_max(p, j)),
            "numSecondSmallest": len(second_smallest_recovery_sets(p, j)),
            "replication": gaussian_binomial(p.m - obj.order - 1, p.r - obj.order),
        })
    per_order = [
        {
            "order": ell,
            "sameOrderBound": fraction_str(same_order_sum_bound(p, ell)),
            "totalBound": fraction_str(total_sum_bound(p, ell)),
        }
        for ell in range(p.r + 1)
    ]
    A, omega, ratio = simplices(p)
    report = {
        "params": {"r": p.r, "m": p.m, "n": p.n, "k": p.k},
        "perObject": per_object,
        "perOrderBound": per_order,
        "totalBound": fraction_str(total_sum_bound(p, p.r)),
        "simplices": {
            "A": [[fraction_str(x) for x in v] for v in A.vertices],
            "Omega": {"sumBound": fraction_str(omega.sum_bound)},
            "ratio": fraction_str(ratio),
        },
        "policy": policy,
        "exact": policy == ORACLE_POLICY,
    }
    if with_lp is None:
        with_lp = policy == ORACLE_POLICY
    if with_lp:
        report["nuStar"] = fraction_str(nu_star(p, policy))
    return report


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"

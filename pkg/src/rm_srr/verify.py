"""Self-check suite run by ``rm-srr verify``.

Each check recomputes a structural fact from scratch and compares it with
its closed form.  Checks that need the exhaustive recovery-set oracle are
skipped above the oracle's size ceiling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .exceptions import CapacityError, InternalCheckError
from .geometry import cosets, flats_of_dim, gaussian_binomial
from .gf2 import rank
from .hypergraph import GEOMETRIC_POLICY, ORACLE_POLICY, build_hypergraph, induced_subgraph
from .lp import LE, LinearProgram, matching_number, solve_max, vertex_cover_number
from .recovery import (
    dual_support_correspondence,
    max_oracle_m,
    oracle_all_recovery_sets,
    second_smallest_recovery_sets,
    smallest_recovery_set,
    verify_design_property,
)
from .rm import RmParams, dual_params, generator_matrix, min_weight_codewords, object_order
from .srr import (
    achievability_allocation,
    enclosing_bound,
    fraction_str,
    lambda_max,
    same_order_sum_bound,
    simplices,
    total_sum_bound,
)

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


def _outcome(ok: bool, detail: str = "") -> tuple[str, str]:
    return (PASS if ok else FAIL), detail


def _check_generator(p: RmParams):
    G = generator_matrix(p)
    return _outcome(G.shape == (p.k, p.n) and rank(G) == p.k, f"{p.k}x{p.n}, full rank")


def _check_dual(p: RmParams):
    H = generator_matrix(dual_params(p))
    prod = generator_matrix(p).times_transpose(H)
    return _outcome(not any(prod.rows), f"G H^T = 0 against {dual_params(p)}")


def _check_flats(p: RmParams):
    words = set(min_weight_codewords(p))
    flats = {F.incidence for F in flats_of_dim(p.m, p.m - p.r)}
    expected = gaussian_binomial(p.m, p.m - p.r) << p.r
    ok = words == flats and len(words) == expected
    return _outcome(ok, f"{len(words)} minimum-weight codewords, {len(flats)} flats, expected {expected}")


def _check_smallest(p: RmParams):
    sizes = []
    for j in range(1, p.k + 1):
        S = smallest_recovery_set(p, j)
        sizes.append(S.size == 1 << object_order(p, j).order)
    return _outcome(all(sizes), f"{p.k} objects")


def _check_second(p: RmParams):
    bad = []
    for j in range(1, p.k + 1):
        ell = object_order(p, j).order
        R = second_smallest_recovery_sets(p, j)
        via = second_smallest_recovery_sets(p, j, via="superspace")
        if len(R) != gaussian_binomial(p.m - ell, p.r + 1 - ell) or not verify_design_property(p, j).holds:
            bad.append(j)
        if ell < p.r and [x.columns for x in R] != [x.columns for x in via]:
            bad.append(j)
    return _outcome(not bad, f"failing objects {bad}" if bad else "counts and 1-design replication")


def _check_top_partition(p: RmParams):
    lo, hi = p.order_range(p.r)
    for j in range(lo, hi + 1):
        S = smallest_recovery_set(p, j)
        parts = [S.columns] + [R.columns for R in second_smallest_recovery_sets(p, j)]
        covered = sorted(c for part in parts for c in part)
        if covered != list(range(1, p.n + 1)) or len(parts) != len(cosets(S.witness)):
            return _outcome(False, f"object {j}")
    return _outcome(True, f"objects {lo}..{hi}: translates of S partition the servers")


def _check_dual_words(p: RmParams):
    for j in range(1, p.k + 1):
        dual_support_correspondence(p, j)
    return _outcome(True, "minimum-weight dual codewords through S match S plus one second-smallest set")


def _check_allocations(p: RmParams):
    for j in range(1, p.k + 1):
        alloc = achievability_allocation(p, j)
        ell = object_order(p, j).order
        S = set(smallest_recovery_set(p, j).columns)
        if ell < p.r and any(x != 1 for c, x in alloc.loads().items() if c not in S):
            return _outcome(False, f"object {j}: a server outside S is not fully loaded")
    return _outcome(True, "loads <= 1, totals equal lambda_max")


def _check_monotone(p: RmParams):
    vals = [lambda_max(p, j) for j in range(1, p.k + 1)]
    lo, hi = 1 + (1 << (p.m - p.r - 1)), 1 << (p.m - p.r)
    ok = all(a <= b for a, b in zip(vals, vals[1:])) and all(lo <= v <= hi for v in vals)
    return _outcome(ok, f"values in [{lo}, {hi}], nondecreasing in j")


def _check_simplices(p: RmParams):
    _, omega, ratio = simplices(p)
    return _outcome(ratio < 2, f"enclosing sum bound {fraction_str(omega.sum_bound)}, ratio {fraction_str(ratio)}")


def _oracle_agreement(p: RmParams):
    for j in range(1, p.k + 1):
        ell = object_order(p, j).order
        oracle = [R.columns for R in oracle_all_recovery_sets(p, j)]
        S = smallest_recovery_set(p, j).columns
        second = [R.columns for R in second_smallest_recovery_sets(p, j)]
        target = (1 << (p.r + 1)) - (1 << ell)
        if ell < p.r:
            if [c for c in oracle if len(c) < 1 << p.r] != [S]:
                return _outcome(False, f"object {j}: small oracle sets differ from S")
            if sorted(c for c in oracle if len(c) == target) != sorted(second):
                return _outcome(False, f"object {j}: second-smallest sets differ from oracle")
        elif sorted(c for c in oracle if len(c) == target) != sorted([S] + second):
            return _outcome(False, f"object {j}: size-{target} oracle sets differ from the translates of S")
    return _outcome(True, "smallest and second-smallest sets match the exhaustive scan")


def _oracle_extra(p: RmParams):
    """Informational: minimal sets beyond the two geometric families."""
    extra = {}
    for j in range(1, p.k + 1):
        ell = object_order(p, j).order
        target = (1 << (p.r + 1)) - (1 << ell)
        n = sum(1 for R in oracle_all_recovery_sets(p, j) if R.size > max(target, 1 << ell))
        if n:
            extra[j] = n
    return PASS, f"larger minimal recovery sets per object: {extra}" if extra else "none"


def _lp_per_object(policy: str):
    def check(p: RmParams):
        g = build_hypergraph(p, policy)
        for j in range(1, p.k + 1):
            h = induced_subgraph(g, [j])
            nu, tau = matching_number(h), vertex_cover_number(h)
            if nu != lambda_max(p, j) or nu != tau:
                return _outcome(False, f"object {j}: nu*={fraction_str(nu)} vs {fraction_str(lambda_max(p, j))}")
        return _outcome(True, "nu* of each single-object subgraph equals lambda_max, nu* = tau*")
    return check


def _lp_per_order(policy: str):
    def check(p: RmParams):
        g = build_hypergraph(p, policy)
        for ell in range(p.r + 1):
            lo, hi = p.order_range(ell)
            h = induced_subgraph(g, range(lo, hi + 1))
            nu = matching_number(h)
            if nu != same_order_sum_bound(p, ell) or nu != vertex_cover_number(h):
                return _outcome(False, f"order {ell}: nu*={fraction_str(nu)}")
        return _outcome(True, "per-order optimum equals the same-order bound")
    return check


def _lp_total(p: RmParams):
    g = build_hypergraph(p, ORACLE_POLICY)
    for ell in range(p.r + 1):
        _, hi = p.order_range(ell)
        nu = vertex_cover_number(induced_subgraph(g, range(1, hi + 1)))
        if nu > total_sum_bound(p, ell):
            return _outcome(False, f"orders <= {ell}: nu*={fraction_str(nu)}")
    nu = vertex_cover_number(g)
    ok = nu <= total_sum_bound(p, p.r) and nu < enclosing_bound(p)
    return _outcome(ok, f"nu*={fraction_str(nu)}, total bound {fraction_str(total_sum_bound(p, p.r))}")


def _srr_vs_simplex(p: RmParams):
    """Max of sum(lambda_j / lambda_max_j) over the region; 1 means the region is the simplex."""
    g = build_hypergraph(p, ORACLE_POLICY)
    edges = list(g.edges)
    lp = LinearProgram([1 / lambda_max(p, e.label) for e in edges])
    for v in g.servers:
        row = {t: 1 for t, e in enumerate(edges) if v in e.servers}
        if row:
            lp.add_row(row, LE, 1)
    res = solve_max(lp)
    if not res.optimal or res.value < 1:
        return _outcome(False, "normalized optimum below 1")
    if res.value == 1:
        return PASS, "region equals the maximal achievable simplex"
    return PASS, f"region strictly contains the maximal achievable simplex (normalized optimum {fraction_str(res.value)})"


Check = tuple[str, Callable[[RmParams], tuple[str, str]], bool]

CHECKS: list[Check] = [
    ("generator-shape-rank", _check_generator, False),
    ("dual-orthogonality", _check_dual, False),
    ("min-weight-codewords-are-flats", _check_flats, False),
    ("smallest-recovery-sets", _check_smallest, False),
    ("second-smallest-design", _check_second, False),
    ("top-order-partition", _check_top_partition, False),
    ("dual-codeword-correspondence", _check_dual_words, False),
    ("achievability-allocations", _check_allocations, False),
    ("lambda-max-range", _check_monotone, False),
    ("simplex-ratio", _check_simplices, False),
    ("geometric-per-object-lp", _lp_per_object(GEOMETRIC_POLICY), False),
    ("geometric-per-order-lp", _lp_per_order(GEOMETRIC_POLICY), False),
    ("oracle-agreement", _oracle_agreement, True),
    ("oracle-extra-sets", _oracle_extra, True),
    ("oracle-per-object-lp", _lp_per_object(ORACLE_POLICY), True),
    ("oracle-per-order-lp", _lp_per_order(ORACLE_POLICY), True),
    ("oracle-total-bound", _lp_total, True),
    ("region-vs-simplex", _srr_vs_simplex, True),
]


def run_suite(p: RmParams) -> list[CheckResult]:
    p.require_dual()
    oracle_ok = p.m <= max_oracle_m()
    out = []
    for name, fn, needs_oracle in CHECKS:
        if needs_oracle and not oracle_ok:
            out.append(CheckResult(name, SKIP, f"oracle needs m <= {max_oracle_m()}"))
            continue
        try:
            status, detail = fn(p)
        except CapacityError as exc:
            status, detail = SKIP, str(exc)
        except InternalCheckError as exc:
            status, detail = FAIL, str(exc)
        out.append(CheckResult(name, status, detail))
    return out


def suite_passed(results: list[CheckResult]) -> bool:
    return all(r.status != FAIL for r in results)

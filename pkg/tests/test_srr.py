from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from rm_srr.exceptions import ValidationError
from rm_srr.hypergraph import build_hypergraph
from rm_srr.rm import RmParams, object_order
from rm_srr.srr import (
    achievability_allocation,
    bounds_report,
    enclosing_bound,
    lambda_max,
    max_scale,
    membership,
    same_order_sum_bound,
    simplices,
    total_sum_bound,
)

RM12 = RmParams(1, 2)
RM24 = RmParams(2, 4)
F = Fraction


def test_lambda_max_values():
    assert [lambda_max(RM12, j) for j in (1, 2, 3)] == [2, 2, 2]
    assert lambda_max(RM24, 1) == F(22, 7)
    assert lambda_max(RM24, 5) == F(10, 3)
    assert lambda_max(RM24, 11) == 4
    assert lambda_max(RmParams(0, 3), 1) == 8


def test_order_bounds():
    assert same_order_sum_bound(RM24, 1) == F(10, 3)
    assert same_order_sum_bound(RM24, 2) == 4
    assert same_order_sum_bound(RM24, 0) == lambda_max(RM24, 1)
    assert total_sum_bound(RM24, 2) == 1 + F(15, 4)
    assert total_sum_bound(RM12, 1) == F(5, 2)
    with pytest.raises(ValidationError):
        same_order_sum_bound(RM24, 3)


def test_allocation_first_order():
    alloc = achievability_allocation(RM24, 5)
    pieces = alloc.parts[5]
    assert pieces[0] == ((1, 2), 1)
    assert [x for _, x in pieces[1:]] == [F(1, 3)] * 7
    assert alloc.rate(5) == F(10, 3)
    assert set(alloc.loads().values()) == {1}


def test_allocation_top_order_and_constant():
    alloc = achievability_allocation(RM24, 11)
    assert [x for _, x in alloc.parts[11]] == [1, 1, 1, 1]
    assert alloc.rate(11) == 4
    alloc = achievability_allocation(RM12, 1)
    assert alloc.parts[1] == [((1,), 1), ((2, 3, 4), 1)]


def test_membership_examples():
    assert membership(RM12, [2, 0, 0]).inside
    res = membership(RM12, [1, 1, 1])
    assert not res.inside
    assert res.scale == F(2, 3)
    zero = membership(RM12, [0, 0, 0])
    assert zero.inside and zero.allocation.parts == {}


def test_membership_witness_and_certificate():
    res = membership(RM12, ["1", "1/2", "0.5"])
    assert res.inside
    assert res.allocation.rates(3) == (1, F(1, 2), F(1, 2))
    assert res.allocation.max_load() <= 1
    out = membership(RM12, [F(5, 2), 0, 0])
    assert not out.inside
    weights = {int(v): F(x) for v, x in out.certificate["serverWeights"].items()}
    assert sum(weights.values()) < 1


def test_membership_rejects_bad_vectors():
    with pytest.raises(ValidationError):
        membership(RM12, [1, 1])
    with pytest.raises(ValidationError):
        membership(RM12, [1, -1, 0])


def test_geometric_policy_is_labelled():
    res = membership(RmParams(2, 5), [1] + [0] * 15)
    assert res.inside and not res.exact and res.policy == "geometric"


def test_simplices():
    A, omega, ratio = simplices(RM24)
    assert omega.sum_bound == 5
    assert ratio == F(5, 3)
    assert A.vertices[1][0] == F(22, 7)
    assert len(A.vertices) == RM24.k + 1


def test_region_equals_simplex_for_rm_1_2():
    g = build_hypergraph(RM12)
    grid = [F(i, 4) for i in range(11)]
    for lam in product(grid, repeat=3):
        assert membership(RM12, lam, graph=g).inside == (sum(lam) <= 2)


@pytest.mark.parametrize("rm", [(1, 2), (1, 3), (2, 3), (2, 4)])
def test_simplex_vertices_inside_and_far_points_outside(rm):
    p = RmParams(*rm)
    g = build_hypergraph(p)
    A, _, _ = simplices(p)
    for v in A.vertices:
        assert membership(p, v, graph=g).inside
    for j in range(1, p.k + 1):
        lam = [0] * p.k
        lam[j - 1] = enclosing_bound(p) + F(1, 7)
        assert not membership(p, lam, graph=g).inside


@pytest.mark.parametrize("rm", [(1, 2), (1, 3), (2, 3), (2, 4), (1, 4), (2, 5)])
def test_lambda_max_range_and_monotone(rm):
    p = RmParams(*rm)
    vals = [lambda_max(p, j) for j in range(1, p.k + 1)]
    assert vals == sorted(vals)
    assert all(1 + 2 ** (p.m - p.r - 1) <= v <= 2 ** (p.m - p.r) for v in vals)


@pytest.mark.parametrize("rm", [(1, 2), (1, 3), (2, 3), (2, 4), (1, 4), (2, 5), (1, 5)])
def test_allocation_loads(rm):
    p = RmParams(*rm)
    for j in range(1, p.k + 1):
        alloc = achievability_allocation(p, j)
        S = set(alloc.parts[j][0][0])
        loads = alloc.loads()
        assert max(loads.values()) <= 1
        assert alloc.rate(j) == lambda_max(p, j)
        if object_order(p, j).order < p.r:
            assert all(x == 1 for c, x in loads.items() if c not in S)


rates = st.fractions(min_value=0, max_value=3, max_denominator=6)


@settings(max_examples=40, deadline=None)
@given(st.lists(rates, min_size=3, max_size=3), st.lists(rates, min_size=3, max_size=3),
       st.fractions(min_value=0, max_value=1, max_denominator=5))
def test_convex_combinations_stay_inside(a, b, t):
    g = build_hypergraph(RmParams(1, 3), "oracle")
    p = RmParams(1, 3)
    a = a + [0]
    b = b + [0]
    if membership(p, a, graph=g).inside and membership(p, b, graph=g).inside:
        mix = [t * x + (1 - t) * y for x, y in zip(a, b)]
        assert membership(p, mix, graph=g).inside


@settings(max_examples=40, deadline=None)
@given(st.lists(rates, min_size=3, max_size=3))
def test_scale_matches_verdict(lam):
    g = build_hypergraph(RM12)
    res = membership(RM12, lam, graph=g)
    if any(lam):
        t, _ = max_scale(g, lam)
        assert res.inside == (t >= 1)
        if t > 0:
            assert membership(RM12, [t * x for x in lam], graph=g).inside


@settings(max_examples=30, deadline=None)
@given(st.lists(rates, min_size=3, max_size=3))
def test_witness_sum_below_nu_star(lam):
    res = membership(RM12, lam)
    if res.inside:
        assert sum(res.allocation.rates(3)) <= 2


def test_report_shape():
    report = bounds_report(RM24)
    assert report["nuStar"] == "13/3"
    assert [o["lambdaMax"] for o in report["perObject"]] == ["22/7"] + ["10/3"] * 4 + ["4"] * 6
    assert report["simplices"]["Omega"] == {"sumBound": "5"}
    assert report["exact"] is True
    geo = bounds_report(RmParams(2, 5))
    assert geo["policy"] == "geometric" and "nuStar" not in geo

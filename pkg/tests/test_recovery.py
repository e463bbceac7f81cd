from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from rm_srr.exceptions import CapacityError, ValidationError
from rm_srr.geometry import gaussian_binomial
from rm_srr.gf2 import BitVector
from rm_srr.recovery import (
    constrained_min_weight_codewords,
    dual_support_correspondence,
    oracle_all_recovery_sets,
    recovers,
    recovery_to_json,
    second_smallest_recovery_sets,
    smallest_recovery_set,
    verify_design_property,
)
from rm_srr.rm import RmParams, object_order

RM24 = RmParams(2, 4)

EXAMPLE_SUPPORTS = [
    {1, 2, 3, 4, 5, 6, 7, 8},
    {1, 2, 3, 4, 9, 10, 11, 12},
    {1, 2, 5, 6, 9, 10, 13, 14},
    {1, 2, 5, 6, 11, 12, 15, 16},
    {1, 2, 3, 4, 13, 14, 15, 16},
    {1, 2, 7, 8, 9, 10, 15, 16},
    {1, 2, 7, 8, 11, 12, 13, 14},
]

# sizes of all minimal recovery sets per order, found by exhaustive scan
ORACLE_SIZES = {
    (1, 2): {0: {1: 1, 3: 1}, 1: {2: 2}},
    (1, 3): {0: {1: 1, 3: 7}, 1: {2: 4, 4: 8}},
    (2, 3): {0: {1: 1, 7: 1}, 1: {2: 1, 6: 1}, 2: {4: 2}},
    (2, 4): {0: {1: 1, 7: 15}, 1: {2: 1, 6: 7, 8: 16}, 2: {4: 4, 8: 24}},
}

small_codes = st.sampled_from([(1, 2), (1, 3), (2, 3), (2, 4), (1, 4), (2, 5), (1, 5), (3, 5)]).map(
    lambda rm: RmParams(*rm)
)


def test_smallest_sets():
    assert smallest_recovery_set(RM24, 1).columns == (1,)
    assert smallest_recovery_set(RM24, 5).columns == (1, 2)
    assert smallest_recovery_set(RM24, 2).columns == (1, 9)
    assert smallest_recovery_set(RM24, 11).columns == (1, 2, 3, 4)


def test_second_smallest_for_first_order_symbol():
    sets = second_smallest_recovery_sets(RM24, 5)
    assert len(sets) == 7
    assert all(R.size == 6 for R in sets)
    assert sorted(map(sorted, EXAMPLE_SUPPORTS)) == sorted(sorted({1, 2} | set(R.columns)) for R in sets)


def test_top_order_translates():
    sets = second_smallest_recovery_sets(RM24, 11)
    assert [R.columns for R in sets] == [(5, 6, 7, 8), (9, 10, 11, 12), (13, 14, 15, 16)]
    forced = second_smallest_recovery_sets(RM24, 11, via="superspace")
    assert all(R.size == 4 and recovers(RM24, R.columns, 11) for R in forced)


def test_design_report():
    report = verify_design_property(RM24, 5)
    assert report.holds
    assert report.to_json() == {"v": 14, "k": 6, "lambda": 3}
    assert set(report.counts) == set(range(3, 17))
    assert set(report.counts.values()) == {3}


def test_prefix_constrained_counts():
    counts = [len(constrained_min_weight_codewords(RM24, range(1, (1 << ell) + 1))) for ell in range(3)]
    assert counts == [35, 7, 1]


def test_dual_correspondence_example():
    words = dual_support_correspondence(RM24, 5)
    assert {frozenset(w.support()) for w in words} == {frozenset(s) for s in EXAMPLE_SUPPORTS}


def test_oracle_rm_1_2():
    p = RmParams(1, 2)
    assert [R.columns for R in oracle_all_recovery_sets(p, 1)] == [(1,), (2, 3, 4)]
    assert [R.columns for R in oracle_all_recovery_sets(p, 2)] == [(1, 3), (2, 4)]
    assert [R.columns for R in oracle_all_recovery_sets(p, 3)] == [(1, 2), (3, 4)]


@pytest.mark.parametrize("rm", sorted(ORACLE_SIZES))
def test_oracle_size_profile(rm):
    p = RmParams(*rm)
    seen = {}
    for j in range(1, p.k + 1):
        ell = object_order(p, j).order
        sizes = Counter(R.size for R in oracle_all_recovery_sets(p, j))
        assert seen.setdefault(ell, sizes) == sizes
    assert {ell: dict(c) for ell, c in seen.items()} == ORACLE_SIZES[rm]


def test_top_order_has_larger_minimal_sets():
    # a minimal size-8 recovery set for a12 that no translate of S accounts for
    cols = (1, 2, 5, 6, 9, 10, 15, 16)
    assert recovers(RM24, cols, 11)
    for c in cols:
        rest = [x for x in cols if x != c]
        assert not recovers(RM24, rest, 11)
    assert cols in [R.columns for R in oracle_all_recovery_sets(RM24, 11)]


def test_oracle_capacity_and_validation(monkeypatch):
    with pytest.raises(CapacityError):
        oracle_all_recovery_sets(RmParams(2, 5), 5)
    with pytest.raises(ValidationError):
        smallest_recovery_set(RM24, 12)
    with pytest.raises(ValidationError):
        second_smallest_recovery_sets(RmParams(2, 2), 1)


def test_recovery_json():
    data = recovery_to_json(RM24, 5)
    assert data["smallest"] == [1, 2]
    assert data["symbol"] == "a1"
    assert len(data["secondSmallest"]) == 7
    assert data["design"] == {"v": 14, "k": 6, "lambda": 3}


@settings(max_examples=40, deadline=None)
@given(small_codes, st.data())
def test_geometric_sets_recover_and_are_minimal(p, data):
    j = data.draw(st.integers(1, p.k))
    ell = object_order(p, j).order
    S = smallest_recovery_set(p, j)
    assert S.size == 1 << ell and 1 in S.columns
    sets = second_smallest_recovery_sets(p, j)
    assert len(sets) == gaussian_binomial(p.m - ell, p.r + 1 - ell)
    for R in [S] + sets:
        assert recovers(p, R.columns, j)
        for c in R.columns:
            assert not recovers(p, [x for x in R.columns if x != c], j)
    assert verify_design_property(p, j).holds


@settings(max_examples=25, deadline=None)
@given(small_codes, st.data())
def test_second_smallest_avoid_smallest(p, data):
    j = data.draw(st.integers(1, p.k))
    S = set(smallest_recovery_set(p, j).columns)
    for R in second_smallest_recovery_sets(p, j):
        assert not S & set(R.columns)
        assert BitVector.from_indices(p.n, R.columns).weight == R.size

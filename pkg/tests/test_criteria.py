from __future__ import annotations

from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_monomials, oracle_quasismooth, oracle_well_formed
from wps_delpezzo.core import WeightSystem, canonicalize
from wps_delpezzo.criteria import (
    SUBSETS,
    find_monomial,
    is_admissible,
    is_degenerate,
    is_quasismooth_generic,
    is_well_formed,
)


def test_well_formed_examples():
    assert is_well_formed(canonicalize((1, 1, 2, 3), 6))
    r = is_well_formed(canonicalize((3, 6, 7, 11), 25))
    assert not r and r.failing_pair == (0, 1, 3)
    r = is_well_formed(canonicalize((2, 2, 3, 3), 8))
    assert not r and r.failing_pair == (2, 3, 3)


def test_well_formed_triple_failure():
    r = is_well_formed(canonicalize((2, 4, 6, 7), 12))
    assert not r and r.failing_pair is None and r.failing_triple == (0, 1, 2)


def test_report_fields_consistent():
    for a, d in [((1, 1, 2, 3), 6), ((3, 6, 7, 11), 25), ((2, 4, 6, 7), 12)]:
        r = is_well_formed(canonicalize(a, d))
        assert r.verdict == (r.failing_pair is None and r.failing_triple is None)


@pytest.mark.parametrize("a,d,expected", [((1, 1, 2, 2), 2, True), ((2, 3, 4, 5), 12, False), ((1, 1, 3, 4), 7, False)])
def test_degenerate(a, d, expected):
    assert is_degenerate(canonicalize(a, d)) is expected


def test_quasismooth_examples():
    assert is_quasismooth_generic(canonicalize((2, 3, 4, 5), 12))
    r = is_quasismooth_generic(canonicalize((1, 2, 3, 7), 12))
    assert not r and (3,) in r.subset_failures
    r = is_quasismooth_generic(canonicalize((1, 1, 2, 2), 2))
    assert r and r.is_linear_cone and not r.subset_failures


def test_witnesses_have_degree_d():
    for a, d in [((2, 3, 4, 5), 12), ((11, 13, 21, 38), 76), ((7, 11, 13, 23), 46)]:
        ws = canonicalize(a, d)
        r = is_quasismooth_generic(ws)
        assert r and set(r.witnesses) == set(SUBSETS)
        for J, mons in r.witnesses.items():
            for m in mons:
                assert sum(e * w for e, w in zip(m, ws.weights)) == d
        assert set(r.singleton_witnesses) == {0, 1, 2, 3}


def test_find_monomial_support():
    ws = canonicalize((2, 3, 4, 5), 12)
    assert find_monomial(ws, (3,)) is None
    assert find_monomial(ws, (1,)) == (0, 4, 0, 0)
    assert find_monomial(ws, (2, 3)) == (0, 0, 3, 0)
    assert find_monomial(ws, (3,), 7) is None
    assert find_monomial(ws, (0, 3), 7) == (1, 0, 0, 1)


def test_pure_power_never_fails_singleton():
    for a in combinations_with_replacement(range(1, 7), 4):
        for d in range(1, 30):
            ws = WeightSystem(a, d)
            r = is_quasismooth_generic(ws)
            for i in range(4):
                if d % a[i] == 0:
                    assert (i,) not in r.subset_failures


def test_small_box_against_oracles():
    """Every quintuple with weights <= 8 and d <= 40."""
    count = 0
    for a in combinations_with_replacement(range(1, 9), 4):
        for d in range(1, 41):
            ws = WeightSystem(a, d)
            assert bool(is_well_formed(ws)) == oracle_well_formed(a, d), ws
            assert bool(is_quasismooth_generic(ws)) == oracle_quasismooth(a, d), ws
            r = is_quasismooth_generic(ws)
            assert not (r.is_linear_cone and r.subset_failures)
            assert r.verdict == (not r.subset_failures)
            count += 1
    assert count == 330 * 40


def test_admissible_matches_full_checks():
    for a in combinations_with_replacement(range(1, 10), 4):
        for d in range(max(a), sum(a)):
            ws = WeightSystem(a, d)
            assert is_admissible(ws) == (bool(is_well_formed(ws)) and bool(is_quasismooth_generic(ws)))


def test_oracle_monomials_sanity():
    assert sorted(all_monomials((1, 1, 1, 1), 2)) == sorted(
        e for e in [(2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2), (1, 1, 0, 0), (1, 0, 1, 0),
                    (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1), (0, 0, 1, 1)]
    )


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(2, 40), min_size=4, max_size=4), st.integers(1, 120), st.permutations(range(4)))
def test_quasismooth_permutation_invariant(a, d, perm):
    v = is_quasismooth_generic(canonicalize(a, d)).verdict
    assert is_quasismooth_generic(canonicalize([a[p] for p in perm], d)).verdict == v
    assert v == oracle_quasismooth(tuple(sorted(a)), d)

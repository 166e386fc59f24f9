from __future__ import annotations

from itertools import combinations_with_replacement

import pytest

from wps_delpezzo.classify import (
    BOYER,
    YAU,
    YU,
    boyer_patterns,
    classify,
    classify_special_type,
    is_special,
    lookup_sporadic,
    special_types,
)
from wps_delpezzo.core import DomainError, WeightSystem, canonicalize


def W(a, d):
    return canonicalize(a, d)


def test_special_examples():
    assert str(classify_special_type(W((5, 7, 8, 9), 23))) == "BoyerType(6, 1, 8)"
    assert classify_special_type(W((1, 1, 4, 5), 9)).kind == YAU
    assert classify_special_type(W((1, 2, 5, 6), 12)).kind == YU
    assert classify_special_type(W((2, 3, 4, 5), 12)) is None


def test_degenerate_precedence():
    s = classify_special_type(W((1, 1, 2, 2), 2))
    assert s.kind == "degenerate"


def test_equal_indices_option():
    # I = 2 = 2 * a0 with a0 = 1 the only weight 1
    ws = W((1, 3, 5, 7), 14)
    assert ws.index == 2
    assert not is_special(ws)
    assert {s.kind for s in special_types(ws, allow_equal_indices=True)} == {YAU}
    # I = 3 = 3 * a0 / 2 with a0 = 2
    ws = W((2, 5, 7, 9), 20)
    assert ws.index == 3
    assert YU not in {s.kind for s in special_types(ws)}
    assert YU in {s.kind for s in special_types(ws, allow_equal_indices=True)}


def test_non_fano_rejected():
    with pytest.raises(DomainError):
        classify_special_type(W((1, 2, 3, 4), 10))


def _boyer_oracle(max_weight):
    """All (quintuple -> params) with weights {I-k, I+k, a, a+k}, generated from the parameters."""
    out = {}
    for I in range(1, max_weight + 1):
        for k in range(I):
            if I + k > max_weight:
                break
            for a in range(1, max_weight - k + 1):
                ws = W((I - k, I + k, a, a + k), 2 * a + k + I)
                out.setdefault(ws, set()).add((I, k, a))
    return out


def test_boyer_detection_against_generator():
    oracle = _boyer_oracle(30)
    for ws, params in oracle.items():
        assert set(boyer_patterns(ws)) == params, ws
    # conversely: any hit among quadruples <= 30 is generated by the oracle.
    # A hit forces I = (w_p + w_q) / 2 for two of the weights, so only those degrees can match.
    for a in combinations_with_replacement(range(1, 31), 4):
        s = sum(a)
        degrees = {s - (a[p] + a[q]) // 2 for p in range(4) for q in range(p + 1, 4) if (a[p] + a[q]) % 2 == 0}
        degrees |= {s - a[p] for p in range(4)}  # k = 0
        for d in degrees:
            if d < 1 or d >= s:
                continue
            ws = WeightSystem(a, d)
            assert bool(boyer_patterns(ws)) == (ws in oracle), ws


def test_boyer_flag_requires_ordering():
    ws = W((2, 3, 4, 4), 10)
    assert boyer_patterns(ws) == [(3, 1, 3)]
    assert BOYER not in {s.kind for s in special_types(ws)}


def test_boyer_pre_ordering_reported():
    # (I, k, a) = (4, 1, 4): weights 3, 5, 4, 5 and a < I + k
    ws = W((3, 4, 5, 5), 13)
    c = classify(ws, check=False)
    assert c.boyer_pattern == (4, 1, 4)
    assert c.special is None


def test_classify_boyer():
    c = classify(W((5, 7, 8, 9), 23))
    assert c.special.kind == BOYER and c.special.params == (6, 1, 8)
    assert not c.series_matches and not c.sporadic_sources
    assert c.label == BOYER


def test_classify_sporadic():
    c = classify(W((38, 21, 13, 11), 76))
    assert c.special is None and not c.series_matches
    assert ("table-2", "X.3(1)", 7) in {(h.tag, h.source, h.index) for h in c.sporadic_sources}
    assert c.label == "sporadic"


def test_classify_1_1_2_3():
    c = classify(W((1, 1, 2, 3), 6))
    assert c.special is None
    assert "thm-kollar-johnson" in {h.tag for h in c.sporadic_sources}
    # also the n = 1 member of the Table 1 row III.1(4)
    assert [(m.source, m.params) for m in c.series_matches] == [("III.1(4)", (("n", 1),))]
    assert not c.unlisted


def test_overlap_retained():
    c = classify(W((3, 4, 6, 7), 18))
    assert {m.source for m in c.series_matches} >= {"BGN-series", "I2-series"}
    assert "thm-i2" in {h.tag for h in c.sporadic_sources}


def test_lookup_sporadic():
    hits = lookup_sporadic(W((5, 14, 17, 21), 56))
    assert {(h.tag, h.source) for h in hits} >= {("table-2", "XI.3(8)"), ("thm-kollar-johnson", "KJ")}
    hits = lookup_sporadic(W((13, 20, 31, 49), 111))
    assert hits and all(h.index == 2 for h in hits)
    assert lookup_sporadic(W((1, 2, 3, 4), 10)) == []


def test_classify_precondition():
    with pytest.raises(DomainError) as e:
        classify(W((3, 6, 7, 11), 25))
    assert e.value.report is not None and e.value.report.failing_pair == (0, 1, 3)
    with pytest.raises(DomainError) as e:
        classify(W((1, 2, 3, 7), 12))
    assert (3,) in e.value.report.subset_failures


def test_unlisted_flag():
    c = classify(W((2, 3, 4, 5), 12), check=False)
    assert not c.unlisted

from __future__ import annotations

import shutil
from itertools import product

import pytest

from wps_delpezzo import series
from wps_delpezzo.classify import match_series
from wps_delpezzo.core import InvalidInputError, WeightSystem
from wps_delpezzo.series import Affine, parse_golden


@pytest.mark.parametrize("text,values,expected", [
    ("28n-22", {"n": 2}, 34), ("s+r", {"s": 3, "r": 4}, 7), ("7", {}, 7), ("-n+5", {"n": 1}, 4), ("2m", {"m": 3}, 6),
])
def test_affine_parse_and_eval(text, values, expected):
    assert Affine.parse(text)(values) == expected


@pytest.mark.parametrize("text", ["3m+1", "6n-5", "r+s", "12", "2n"])
def test_affine_str_round_trip(text):
    assert str(Affine.parse(text)) == text
    assert Affine.parse(str(Affine.parse(text))) == Affine.parse(text)


@pytest.mark.parametrize("text", ["", "3*m", "m^2", "+"])
def test_affine_rejects(text):
    with pytest.raises(InvalidInputError):
        Affine.parse(text)


def test_golden_counts():
    counts = {t: (len(series.load(t).series), len(series.load(t).sporadic)) for t in series.SOURCES}
    assert counts == {
        "table-1": (35, 0),
        "table-2": (0, 63),
        "thm-kollar-johnson": (1, 22),
        "thm-bgn": (12, 52),
        "thm-i2": (11, 32),
    }


def test_golden_stated_index_matches_every_instance():
    for fam in series.all_series():
        for values, ws in fam.instances(200):
            assert fam.index_expr(values) == ws.index, (fam.family_id, values)


def test_table2_index_spread():
    idx = [e.index for e in series.load("table-2").sporadic]
    assert {i: idx.count(i) for i in set(idx)} == {1: 17, 2: 25, 3: 7, 4: 8, 5: 3, 6: 2, 7: 1}
    assert max(e.weight_system.weights[3] for e in series.load("table-2").sporadic) == 128


def test_match_series_examples():
    def ids(a, d):
        return {(m.family_id, m.params) for m in match_series(WeightSystem(a, d))}

    assert ("3,3m+1,3m+2,6m+1 / d=12m+5", (("m", 1),)) in ids((3, 4, 5, 7), 17)
    assert ("2,2n+1,2n+1,4n+1 / d=8n+4", (("n", 1),)) in ids((2, 3, 3, 5), 12)
    assert ("1,2,m,m+1 / d=2m+2", (("m", 2),)) in ids((1, 2, 2, 3), 6)


def test_smooth_cubic_is_a_table1_instance():
    # (1, 3n-2, 4n-3, 6n-5; 12n-9) at n = 1
    hits = match_series(WeightSystem((1, 1, 1, 1), 3))
    assert [(m.source, m.params) for m in hits] == [("VII.2(3)", (("n", 1),))]


def test_match_series_round_trip_all_families():
    for fam in series.all_series():
        ps = fam.params
        grids = [range(fam.lower_bound(p), fam.lower_bound(p) + (6 if len(ps) == 1 else 4)) for p in ps]
        for combo in product(*grids):
            values = dict(zip(ps, combo))
            ws = fam.instantiate(values)
            hits = {(m.family_id, m.params) for m in match_series(ws)}
            assert (fam.family_id, tuple(sorted(values.items()))) in hits


def test_instances_respect_bound():
    fam = series.load("thm-kollar-johnson").series[0]
    inst = list(fam.instances(130))
    assert len(inst) == 32
    assert all(ws.weights[3] <= 130 for _, ws in inst)


def test_golden_dir_override(tmp_path, monkeypatch):
    src = series.golden_dir()
    assert src is None
    from importlib import resources

    base = resources.files("wps_delpezzo") / "golden"
    for tag in series.SOURCES:
        shutil.copy(str(base / f"{tag}.csv"), tmp_path / f"{tag}.csv")
    (tmp_path / "thm-kollar-johnson.csv").write_text("1,1,1,1,3,1,KJ\n", encoding="utf-8")
    monkeypatch.setenv("WPS_GOLDEN_DIR", str(tmp_path))
    g = series.load("thm-kollar-johnson")
    assert len(g.sporadic) == 1 and not g.series
    monkeypatch.delenv("WPS_GOLDEN_DIR")
    assert len(series.load("thm-kollar-johnson").sporadic) == 22


def test_parse_golden_validates():
    with pytest.raises(InvalidInputError):
        parse_golden("x", "1,1,1,1,3,2,KJ\n")  # index of (1,1,1,1;3) is 1
    with pytest.raises(InvalidInputError):
        parse_golden("x", "1,1,1,3,KJ\n")
    g = parse_golden("x", "# comment\n\n1,2,n,n+1,2n+2,2,S,n>=2\n")
    assert g.series[0].lower_bound("n") == 2


def test_unknown_tag():
    with pytest.raises(InvalidInputError):
        series.load("table-3")

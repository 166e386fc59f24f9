"""ClassifiedRecord: one weight system with everything computed about it, and its JSON form.

Rationals are serialized as strings ("17/70") so that round trips are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .classify import SeriesMatch, SpecialType, SporadicHit, SurfaceClass, classify
from .core import WeightSystem
from .criteria import is_degenerate, is_quasismooth_generic, is_well_formed
from .invariants import (
    KE,
    KEStatus,
    LctKind,
    LctRecord,
    OrbifoldInvariants,
    QuotientSingularity,
    orbifold_invariants,
)
from .obstructions import ObstructionReport, obstruction_report


@dataclass(frozen=True)
class ClassifiedRecord:
    weight_system: WeightSystem
    index: int
    well_formed: bool
    quasismooth: bool
    degenerate: bool
    surface_class: SurfaceClass | None = None
    obstructions: ObstructionReport | None = None
    invariants: OrbifoldInvariants | None = None

    def __post_init__(self):
        if self.index != self.weight_system.index:
            raise ValueError(f"index {self.index} inconsistent with {self.weight_system}")

    @property
    def special(self) -> bool:
        return self.surface_class is not None and self.surface_class.special is not None

    def to_dict(self) -> dict[str, Any]:
        ws = self.weight_system
        out: dict[str, Any] = {
            "weights": list(ws.weights),
            "degree": ws.degree,
            "index": self.index,
            "well_formed": self.well_formed,
            "quasismooth": self.quasismooth,
            "degenerate": self.degenerate,
            "class": None if self.surface_class is None else _class_to_dict(self.surface_class),
            "obstructions": None if self.obstructions is None else _obs_to_dict(self.obstructions),
            "invariants": None if self.invariants is None else _inv_to_dict(self.invariants),
        }
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ClassifiedRecord":
        ws = WeightSystem(tuple(data["weights"]), data["degree"])
        return cls(
            weight_system=ws,
            index=data["index"],
            well_formed=data["well_formed"],
            quasismooth=data["quasismooth"],
            degenerate=data["degenerate"],
            surface_class=None if data["class"] is None else _class_from_dict(data["class"]),
            obstructions=None if data["obstructions"] is None else _obs_from_dict(data["obstructions"]),
            invariants=None if data["invariants"] is None else _inv_from_dict(data["invariants"]),
        )


def build_record(
    ws: WeightSystem,
    *,
    with_class: bool = True,
    with_obstructions: bool = False,
    with_invariants: bool = False,
) -> ClassifiedRecord:
    """Compute flags and, where the preconditions hold, the requested extras."""
    wf = bool(is_well_formed(ws))
    qs = bool(is_quasismooth_generic(ws))
    fano = ws.index > 0
    ok = wf and qs and fano
    return ClassifiedRecord(
        weight_system=ws,
        index=ws.index,
        well_formed=wf,
        quasismooth=qs,
        degenerate=is_degenerate(ws),
        surface_class=classify(ws, check=False) if with_class and ok else None,
        obstructions=obstruction_report(ws) if with_obstructions and fano else None,
        invariants=orbifold_invariants(ws) if with_invariants and ok else None,
    )


def _frac(x: Fraction | int) -> str:
    return str(Fraction(x))


def _class_to_dict(c: SurfaceClass) -> dict[str, Any]:
    return {
        "label": c.label,
        "special": None if c.special is None else _special_to_dict(c.special),
        "special_hits": [_special_to_dict(s) for s in c.special_hits],
        "series": [
            {"family_id": m.family_id, "source": m.source, "params": dict(m.params)}
            for m in c.series_matches
        ],
        "sporadic": [{"tag": h.tag, "source": h.source, "index": h.index} for h in c.sporadic_sources],
        "boyer_pattern": None if c.boyer_pattern is None else list(c.boyer_pattern),
        "unlisted": c.unlisted,
    }


def _special_to_dict(s: SpecialType) -> dict[str, Any]:
    return {"kind": s.kind, "params": list(s.params)}


def _class_from_dict(d: dict[str, Any]) -> SurfaceClass:
    def sp(x):
        return SpecialType(x["kind"], tuple(x["params"]))

    return SurfaceClass(
        special=None if d["special"] is None else sp(d["special"]),
        special_hits=tuple(sp(x) for x in d["special_hits"]),
        series_matches=tuple(
            SeriesMatch(m["family_id"], m["source"], tuple(sorted(m["params"].items()))) for m in d["series"]
        ),
        sporadic_sources=tuple(SporadicHit(h["tag"], h["source"], h["index"]) for h in d["sporadic"]),
        boyer_pattern=None if d["boyer_pattern"] is None else tuple(d["boyer_pattern"]),
    )


def _obs_to_dict(o: ObstructionReport) -> dict[str, Any]:
    return {
        "n": o.n,
        "bishop": o.bishop,
        "lichnerowicz": o.lichnerowicz,
        "bishop_lhs": _frac(o.bishop_lhs),
        "bishop_rhs": _frac(o.bishop_rhs),
    }


def _int_or_frac(s: str) -> int | Fraction:
    f = Fraction(s)
    return f.numerator if f.denominator == 1 else f


def _obs_from_dict(d: dict[str, Any]) -> ObstructionReport:
    return ObstructionReport(
        _int_or_frac(d["bishop_lhs"]), _int_or_frac(d["bishop_rhs"]), d["bishop"], d["lichnerowicz"], d["n"]
    )


def _sing_to_dict(s: QuotientSingularity) -> dict[str, Any]:
    return {
        "type": str(s),
        "order": s.order,
        "weights_mod": list(s.weights_mod),
        "location": list(s.location),
        "count": s.count,
        "note": s.note,
    }


def _lct_to_dict(r: LctRecord | None) -> dict[str, Any] | None:
    if r is None:
        return None
    return {
        "kind": r.kind.value,
        "value": None if r.value is None else _frac(r.value),
        "condition": r.condition,
        "present": _lct_to_dict(r.present),
        "absent": _lct_to_dict(r.absent),
        "note": r.note,
        "text": str(r),
    }


def _lct_from_dict(d: dict[str, Any] | None) -> LctRecord | None:
    if d is None:
        return None
    return LctRecord(
        LctKind(d["kind"]),
        None if d["value"] is None else Fraction(d["value"]),
        d["condition"],
        _lct_from_dict(d["present"]),
        _lct_from_dict(d["absent"]),
        d["note"],
    )


def _inv_to_dict(inv: OrbifoldInvariants) -> dict[str, Any]:
    ke = inv.ke_status
    return {
        "singularities": [_sing_to_dict(s) for s in inv.singularities],
        "anticanonical_sq": _frac(inv.anticanonical_sq),
        "lct_upper": _frac(inv.lct_upper),
        "lct_known": _lct_to_dict(inv.lct_known),
        "ke_status": {
            "status": ke.status.value,
            "note": ke.note,
            "condition": ke.condition,
            "branches": {k: v.value for k, v in ke.branches},
        },
    }


def _inv_from_dict(d: dict[str, Any]) -> OrbifoldInvariants:
    ke = d["ke_status"]
    return OrbifoldInvariants(
        singularities=tuple(
            QuotientSingularity(s["order"], tuple(s["weights_mod"]), tuple(s["location"]), s["count"], s["note"])
            for s in d["singularities"]
        ),
        anticanonical_sq=Fraction(d["anticanonical_sq"]),
        lct_upper=Fraction(d["lct_upper"]),
        lct_known=_lct_from_dict(d["lct_known"]),
        ke_status=KEStatus(
            KE(ke["status"]), ke["note"], ke["condition"], tuple((k, KE(v)) for k, v in ke["branches"].items())
        ),
    )

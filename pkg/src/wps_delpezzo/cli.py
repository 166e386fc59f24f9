"""Command-line front end.

Exit codes: 0 success, 1 invalid input or domain error, 2 non-empty
reproduction diff, 3 property counterexample.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Any, Iterable, Sequence

from . import __version__
from .classify import classify
from .core import DomainError, InvalidInputError, WeightSystem, canonicalize, from_index
from .enumeration import BGN_FILTERS, EnumerationQuery, enumerate_index, reproduce_list
from .invariants import family_intersection_data
from .obstructions import verify_noalpha, verify_theorem_bl
from .records import ClassifiedRecord, build_record
from .series import SOURCES

CSV_COLUMNS = (
    "a0", "a1", "a2", "a3", "d", "I", "well_formed", "quasismooth", "degenerate",
    "special", "series", "sporadic", "bishop", "lichnerowicz", "ke_status",
)

RECORD_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": [
        "version", "query", "weights", "degree", "index", "well_formed", "quasismooth",
        "degenerate", "class", "obstructions", "invariants",
    ],
    "properties": {
        "version": {"type": "string"},
        "query": {"type": "object"},
        "weights": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 4, "maxItems": 4},
        "degree": {"type": "integer", "minimum": 1},
        "index": {"type": "integer"},
        "well_formed": {"type": "boolean"},
        "quasismooth": {"type": "boolean"},
        "degenerate": {"type": "boolean"},
        "class": {
            "type": ["object", "null"],
            "required": ["label", "special", "special_hits", "series", "sporadic", "boyer_pattern", "unlisted"],
        },
        "obstructions": {
            "type": ["object", "null"],
            "required": ["n", "bishop", "lichnerowicz", "bishop_lhs", "bishop_rhs"],
        },
        "invariants": {
            "type": ["object", "null"],
            "required": ["singularities", "anticanonical_sq", "lct_upper", "lct_known", "ke_status"],
        },
    },
    "additionalProperties": False,
}

EXIT_OK, EXIT_INVALID, EXIT_DIFF, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> range:
    """``"3"`` or ``"1..6"`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            r = range(int(lo), int(hi) + 1)
        else:
            r = range(int(text), int(text) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from None
    if not r or r.start < 1:
        raise argparse.ArgumentTypeError(f"empty or nonpositive range {text!r}")
    return r


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def resolve_weight_system(weights: Sequence[int], degree: int | None, index: int | None) -> WeightSystem:
    if degree is None and index is None:
        raise InvalidInputError("give --degree or --index")
    if degree is not None:
        ws = canonicalize(weights, degree)
        if index is not None and ws.index != index:
            raise InvalidInputError(f"--degree {degree} and --index {index} are inconsistent (index is {ws.index})")
        return ws
    return from_index(weights, index)


# ---- output -------------------------------------------------------------

def _dumps(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def output_record(rec: ClassifiedRecord, query: dict[str, Any]) -> dict[str, Any]:
    return {"version": __version__, "query": query, **rec.to_dict()}


def csv_row(rec: ClassifiedRecord) -> list[str]:
    ws = rec.weight_system
    c = rec.surface_class

    def b(x):
        return "" if x is None else str(bool(x)).lower()

    special = series_ = sporadic = ""
    if c is not None:
        special = "" if c.special is None else str(c.special)
        series_ = ";".join(
            f"{m.source}[{','.join(f'{k}={v}' for k, v in m.params)}]" for m in c.series_matches
        )
        sporadic = ";".join(f"{h.tag}:{h.source}" for h in c.sporadic_sources)
    o = rec.obstructions
    ke = "" if rec.invariants is None else str(rec.invariants.ke_status)
    return [
        *map(str, ws.weights), str(ws.degree), str(rec.index),
        b(rec.well_formed), b(rec.quasismooth), b(rec.degenerate),
        special, series_, sporadic,
        b(None if o is None else o.bishop), b(None if o is None else o.lichnerowicz), ke,
    ]


def table_lines(rec: ClassifiedRecord) -> list[str]:
    ws = rec.weight_system
    lines = [
        f"{ws}  I={rec.index}",
        f"  well-formed: {rec.well_formed}  quasismooth: {rec.quasismooth}  degenerate: {rec.degenerate}",
    ]
    c = rec.surface_class
    if c is not None:
        lines.append(f"  class: {c.label}" + (f" {c.special}" if c.special else ""))
        for m in c.series_matches:
            lines.append(f"  series: {m.family_id} ({m.source}) {dict(m.params)}")
        for h in c.sporadic_sources:
            lines.append(f"  sporadic: {h.tag} {h.source}")
        if c.boyer_pattern:
            lines.append(f"  boyer pattern (pre-ordering): I,k,a = {c.boyer_pattern}")
    o = rec.obstructions
    if o is not None:
        lines.append(f"  bishop: {o.bishop} ({o.bishop_lhs} vs {o.bishop_rhs})  lichnerowicz: {o.lichnerowicz}")
    inv = rec.invariants
    if inv is not None:
        sing = ", ".join(f"{s}x{s.count}" if s.count != 1 else str(s) for s in inv.singularities) or "none"
        lines.append(f"  singularities: {sing}")
        lines.append(f"  (-K)^2 = {inv.anticanonical_sq}  lct <= {inv.lct_upper}")
        if inv.lct_known is not None:
            lines.append(f"  lct: {inv.lct_known}")
        ke = inv.ke_status
        lines.append(f"  KE: {ke}" + (f" ({ke.note})" if ke.note else ""))
        for k, v in ke.branches:
            lines.append(f"    {ke.condition} {k}: {v.value}")
    return lines


def emit_records(records: Iterable[ClassifiedRecord], fmt: str, query: dict[str, Any], out, single: bool = False):
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in records:
            w.writerow(csv_row(r))
    elif fmt == "table":
        for r in records:
            out.write("\n".join(table_lines(r)) + "\n")
    elif fmt == "jsonl":
        for r in records:
            out.write(_dumps(output_record(r, query)) + "\n")
            out.flush()
    else:
        docs = [output_record(r, query) for r in records]
        out.write(_dumps(docs[0] if single and len(docs) == 1 else docs) + "\n")


def emit_doc(doc: dict[str, Any], fmt: str, out, text_lines: list[str]):
    if fmt in ("json", "jsonl"):
        out.write(_dumps(doc) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        flat = {k: v for k, v in doc.items() if not isinstance(v, (dict, list))}
        w.writerow(flat.keys())
        w.writerow(flat.values())
    else:
        out.write("\n".join(text_lines) + "\n")


# ---- subcommands ---------------------------------------------------------

def _ws_from_args(args) -> WeightSystem:
    ws = resolve_weight_system(args.weights, args.degree, args.index)
    if args.strict_fano and ws.index <= 0:
        raise DomainError(f"{ws} is not Fano (index {ws.index})")
    return ws


def _query(args, **extra) -> dict[str, Any]:
    q = {"command": args.command}
    if hasattr(args, "weights"):
        q.update(weights=list(args.weights), degree=args.degree, index=args.index)
    q.update(extra)
    return q


def cmd_check(args, out) -> int:
    ws = _ws_from_args(args)
    rec = build_record(ws, with_class=False)
    emit_records([rec], args.format, _query(args), out, single=True)
    return EXIT_OK


def cmd_classify(args, out) -> int:
    ws = _ws_from_args(args)
    classify(ws)  # raises DomainError with the failing report
    rec = build_record(ws, with_obstructions=True)
    emit_records([rec], args.format, _query(args), out, single=True)
    return EXIT_OK


def cmd_obstructions(args, out) -> int:
    ws = _ws_from_args(args)
    rec = build_record(ws, with_class=False, with_obstructions=True)
    emit_records([rec], args.format, _query(args), out, single=True)
    return EXIT_OK


def cmd_invariants(args, out) -> int:
    ws = _ws_from_args(args)
    classify(ws)
    rec = build_record(ws, with_obstructions=True, with_invariants=True)
    emit_records([rec], args.format, _query(args), out, single=True)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    if args.index is None:
        raise InvalidInputError("enumerate needs --index")
    q = EnumerationQuery(args.index, args.max_weight, not args.exclude_degenerate, not args.exclude_special)
    query = _query(
        args, index=q.index, max_weight=q.max_weight,
        include_degenerate=q.include_degenerate, include_special=q.include_special,
    )

    def records():
        for r in enumerate_index(q, args.workers):
            ws = r.weight_system
            yield build_record(ws, with_obstructions=True, with_invariants=args.invariants)

    emit_records(records(), args.format, query, out)
    return EXIT_OK


def cmd_verify_bl(args, out) -> int:
    summary = verify_theorem_bl(args.n, args.samples, args.seed)
    doc: dict[str, Any] = {
        "version": __version__,
        "query": {"command": "verify-bl", "n": [args.n.start, args.n.stop - 1], "samples": args.samples, "seed": args.seed},
        "samples": summary.total,
        "counterexamples": len(summary.counterexamples),
        "positive_defects": len(summary.positive_defects),
        "per_n": {
            str(n): {"samples": s.samples, "vacuous": s.vacuous, "implied": s.implied,
                     "counterexamples": len(s.counterexamples)}
            for n, s in summary.per_n.items()
        },
    }
    lines = [
        f"n={n}: samples {s.samples}, vacuous {s.vacuous}, implied {s.implied}, counterexamples {len(s.counterexamples)}"
        for n, s in summary.per_n.items()
    ]
    bad = bool(summary.counterexamples or summary.positive_defects)
    if args.noalpha:
        d = verify_noalpha(args.n, args.samples, args.seed)
        doc["noalpha"] = {"samples": d.samples, "zeros": d.zeros, "positive": len(d.positive),
                          "non_boundary_zeros": len(d.non_boundary_zeros)}
        lines.append(f"noalpha: samples {d.samples}, zeros {d.zeros}, positive {len(d.positive)}, "
                     f"non-boundary zeros {len(d.non_boundary_zeros)}")
        bad = bad or bool(d.positive or d.non_boundary_zeros)
    lines.append(f"counterexamples: {len(summary.counterexamples)}")
    for c in summary.counterexamples[:10]:
        lines.append(f"  counterexample: a={[str(x) for x in c.a]} d={c.d}")
    emit_doc(doc, args.format, out, lines)
    return EXIT_COUNTEREXAMPLE if bad else EXIT_OK


def cmd_reproduce(args, out) -> int:
    indices = None if args.index_range is None else list(args.index_range)
    r = reproduce_list(args.source, args.max_weight, indices=indices, bgn_filter=args.bgn_filter, workers=args.workers)
    doc = {
        "version": __version__,
        "query": {"command": "reproduce", "source": args.source, "max_weight": args.max_weight,
                  "indices": list(r.indices), "filters": r.filters},
        "missing": [list(ws.quintuple) for ws in r.missing],
        "extra": [list(ws.quintuple) for ws in r.extra],
        "matched_count": r.matched_count,
    }
    lines = [f"{args.source} (a3 <= {args.max_weight}, I in {list(r.indices)}): {r.summary()}"]
    lines += [f"  missing {ws}" for ws in r.missing] + [f"  extra {ws}" for ws in r.extra]
    emit_doc(doc, args.format, out, lines)
    return EXIT_OK if r.clean else EXIT_DIFF


def cmd_family_data(args, out) -> int:
    rows, lines = [], []
    for m in args.m:
        f = family_intersection_data(m)
        rows.append({
            "m": m, "weights": list(f.weight_system.weights), "degree": f.weight_system.degree,
            "L.-K": str(f.L_K), "R.-K": str(f.R_K), "L.R": str(f.L_R), "L^2": str(f.L_sq), "R^2": str(f.R_sq),
            "singularities": [str(s) for s in f.singularities], "identities_hold": f.identities_hold,
        })
        lines.append(
            f"m={m} {f.weight_system}: L.-K={f.L_K} R.-K={f.R_K} L.R={f.L_R} L^2={f.L_sq} R^2={f.R_sq} "
            f"sing={' '.join(map(str, f.singularities))} identities={'ok' if f.identities_hold else 'FAIL'}"
        )
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        keys = [k for k in rows[0] if k != "singularities"]
        w.writerow(keys)
        for r in rows:
            w.writerow([r[k] if not isinstance(r[k], list) else " ".join(map(str, r[k])) for k in keys])
    elif args.format in ("json", "jsonl"):
        if args.format == "json":
            out.write(_dumps({"version": __version__, "rows": rows}) + "\n")
        else:
            for r in rows:
                out.write(_dumps(r) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    ok = all(r["identities_hold"] for r in rows)
    return EXIT_OK if ok else EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wps-delpezzo", description=__doc__.splitlines()[0] if __doc__ else None)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, default_format="table"):
        sp.add_argument("--format", choices=("json", "jsonl", "csv", "table"), default=default_format)

    def quintuple(sp, strict=True):
        sp.add_argument("weights", nargs=4, type=_positive, metavar="A")
        sp.add_argument("--degree", type=_positive)
        sp.add_argument("--index", type=int)
        sp.add_argument("--strict-fano", action=argparse.BooleanOptionalAction, default=strict,
                        help="reject weight systems of nonpositive index")

    for name, fn, strict, help_ in [
        ("check", cmd_check, False, "well-formedness and quasismoothness"),
        ("classify", cmd_classify, True, "special type, series and sporadic matches"),
        ("obstructions", cmd_obstructions, True, "Bishop and Lichnerowicz obstructions"),
        ("invariants", cmd_invariants, True, "singularities, lct data and KE status"),
    ]:
        sp = sub.add_parser(name, help=help_)
        quintuple(sp, strict)
        common(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("enumerate", help="all well-formed quasismooth systems of one index (JSON lines)")
    sp.add_argument("--index", type=_positive)
    sp.add_argument("--max-weight", type=_positive, required=True)
    sp.add_argument("--exclude-degenerate", action="store_true")
    sp.add_argument("--exclude-special", action="store_true")
    sp.add_argument("--invariants", action="store_true", help="also attach orbifold invariants")
    sp.add_argument("--workers", type=_positive, default=1)
    common(sp, "jsonl")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify-bl", help="sample rational tuples and check Bishop implies Lichnerowicz")
    sp.add_argument("--n", type=parse_range, default=parse_range("1..6"))
    sp.add_argument("--samples", type=_positive, default=10_000, help="samples per n")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--noalpha", action="store_true", help="also sample the defect inequality on [1,n]^n")
    common(sp)
    sp.set_defaults(func=cmd_verify_bl)

    sp = sub.add_parser("reproduce", help="diff an enumeration against an embedded golden list")
    sp.add_argument("source", choices=SOURCES)
    sp.add_argument("--max-weight", type=_positive, required=True)
    sp.add_argument("--index", dest="index_range", type=parse_range, help="index range N or A..B")
    sp.add_argument("--bgn-filter", choices=tuple(BGN_FILTERS), default="boyer")
    sp.add_argument("--workers", type=_positive, default=1)
    common(sp)
    sp.set_defaults(func=cmd_reproduce)

    sp = sub.add_parser("family-data", help="intersection data on the (3,3m+1,3m+2,6m+1) family")
    sp.add_argument("--m", type=parse_range, default=parse_range("1"))
    common(sp)
    sp.set_defaults(func=cmd_family_data)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK
    try:
        return args.func(args, out)
    except (InvalidInputError, DomainError) as e:
        err.write(f"error: {e}\n")
        return EXIT_INVALID


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)

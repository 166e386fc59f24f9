"""Golden classification data: parameterized series and sporadic quintuples.

Every golden file is UTF-8 text, one record per line::

    a0,a1,a2,a3,d,I,source[,domain]

Fields are integers or affine forms in the parameters (``n``, ``m``,
``s``, ``r``), e.g. ``28n-22`` or ``s+r``.  Rows made of integers only
are sporadic entries.  Parameters range over integers >= 1 unless an
optional domain field such as ``n>=2`` (several separated by ``;``)
overrides it.  Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Iterator

from .core import InvalidInputError, WeightSystem, canonicalize

SOURCES = ("table-1", "table-2", "thm-kollar-johnson", "thm-bgn", "thm-i2")

_TERM = re.compile(r"([+-]?)(\d*)([a-z]?)")


@dataclass(frozen=True)
class Affine:
    """An integer affine form ``const + sum(coeffs[p] * p)``."""

    const: int
    coeffs: tuple[tuple[str, int], ...] = ()

    @classmethod
    def parse(cls, text: str) -> "Affine":
        text = text.replace(" ", "")
        if not text:
            raise InvalidInputError("empty affine form")
        coeffs: dict[str, int] = {}
        const = 0
        pos = 0
        while pos < len(text):
            m = _TERM.match(text, pos)
            if m is None or m.end() == pos:
                raise InvalidInputError(f"cannot parse affine form {text!r}")
            sign, digits, var = m.groups()
            if not digits and not var:
                raise InvalidInputError(f"cannot parse affine form {text!r}")
            c = int(digits) if digits else 1
            if sign == "-":
                c = -c
            if var:
                coeffs[var] = coeffs.get(var, 0) + c
            else:
                const += c
            pos = m.end()
        return cls(const, tuple(sorted((p, c) for p, c in coeffs.items() if c)))

    @property
    def params(self) -> frozenset[str]:
        return frozenset(p for p, _ in self.coeffs)

    def __call__(self, values: dict[str, int]) -> int:
        return self.const + sum(c * values[p] for p, c in self.coeffs)

    def __str__(self) -> str:
        out = ""
        for p, c in self.coeffs:
            s = p if abs(c) == 1 else f"{abs(c)}{p}"
            out += ("-" if c < 0 else ("+" if out else "")) + s
        if self.const or not out:
            out += f"{self.const:+d}" if out else str(self.const)
        return out


@dataclass(frozen=True)
class SeriesFamily:
    weight_exprs: tuple[Affine, Affine, Affine, Affine]
    degree_expr: Affine
    index_expr: Affine
    source: str
    domain: tuple[tuple[str, int], ...] = ()

    @cached_property
    def params(self) -> tuple[str, ...]:
        ps = set(self.degree_expr.params)
        for w in self.weight_exprs:
            ps |= w.params
        return tuple(sorted(ps))

    @property
    def family_id(self) -> str:
        return "{} / d={}".format(",".join(map(str, self.weight_exprs)), self.degree_expr)

    def lower_bound(self, p: str) -> int:
        return dict(self.domain).get(p, 1)

    def instantiate(self, values: dict[str, int]) -> WeightSystem:
        a = [w(values) for w in self.weight_exprs]
        return canonicalize(a, self.degree_expr(values))

    def in_domain(self, values: dict[str, int]) -> bool:
        return all(values[p] >= self.lower_bound(p) for p in self.params)

    def instances(self, max_weight: int) -> Iterator[tuple[dict[str, int], WeightSystem]]:
        """All instances with largest weight <= max_weight.

        Every weight form is nondecreasing in each parameter (checked), so
        each parameter can be cut off once its own weights pass the bound.
        """
        ps = self.params
        for w in self.weight_exprs:
            if any(c < 0 for _, c in w.coeffs):
                raise InvalidInputError(f"decreasing weight form in {self.family_id}")
        ranges = []
        for p in ps:
            lo = self.lower_bound(p)
            hi = lo
            base = {q: self.lower_bound(q) for q in ps}
            while True:
                base[p] = hi + 1
                if max(w(base) for w in self.weight_exprs) > max_weight:
                    break
                hi += 1
            ranges.append(range(lo, hi + 1))
        for combo in product(*ranges):
            values = dict(zip(ps, combo))
            a = [w(values) for w in self.weight_exprs]
            if min(a) < 1 or max(a) > max_weight or self.degree_expr(values) < 1:
                continue
            yield values, self.instantiate(values)

    def match(self, ws: WeightSystem) -> list[dict[str, int]]:
        """Parameter values in the domain that instantiate to ``ws``.

        Each one-parameter form must hit one of the target values, which
        gives a finite candidate set per parameter; a one-parameter degree
        form pins its parameter outright.
        """
        ps = self.params
        candidates: dict[str, set[int] | None] = {p: None for p in ps}

        def narrow(e: Affine, pool) -> None:
            (p, c), = e.coeffs
            vals = {(t - e.const) // c for t in pool if (t - e.const) % c == 0}
            candidates[p] = vals if candidates[p] is None else candidates[p] & vals

        if len(self.degree_expr.coeffs) == 1:
            narrow(self.degree_expr, (ws.degree,))
        for e in self.weight_exprs:
            if len(e.coeffs) == 1:
                narrow(e, set(ws.weights))
        hits = []
        for combo in product(*(sorted(candidates[p] or ()) for p in ps)):
            values = dict(zip(ps, combo))
            if not self.in_domain(values) or self.degree_expr(values) != ws.degree:
                continue
            a = [w(values) for w in self.weight_exprs]
            if tuple(sorted(a)) == ws.weights:
                hits.append(values)
        return hits


@dataclass(frozen=True)
class SporadicEntry:
    weight_system: WeightSystem
    index: int
    source: str


@dataclass(frozen=True)
class GoldenList:
    tag: str
    series: tuple[SeriesFamily, ...] = ()
    sporadic: tuple[SporadicEntry, ...] = ()

    def instances(self, max_weight: int) -> set[WeightSystem]:
        out = {e.weight_system for e in self.sporadic if e.weight_system.weights[3] <= max_weight}
        for fam in self.series:
            out.update(ws for _, ws in fam.instances(max_weight))
        return out

    @property
    def indices(self) -> set[int]:
        return {e.index for e in self.sporadic} | {
            f.index_expr.const for f in self.series if not f.index_expr.params
        }


def golden_dir() -> Path | None:
    env = os.environ.get("WPS_GOLDEN_DIR")
    return Path(env) if env else None


def _read_text(tag: str) -> str:
    if tag not in SOURCES:
        raise InvalidInputError(f"unknown source tag {tag!r}; expected one of {', '.join(SOURCES)}")
    base = golden_dir()
    if base is not None:
        return (base / f"{tag}.csv").read_text(encoding="utf-8")
    return resources.files("wps_delpezzo").joinpath("golden", f"{tag}.csv").read_text(encoding="utf-8")


def parse_golden(tag: str, text: str) -> GoldenList:
    series, sporadic = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) not in (7, 8):
            raise InvalidInputError(f"{tag}:{lineno}: expected 7 or 8 fields, got {len(parts)}")
        exprs = [Affine.parse(p) for p in parts[:6]]
        source = parts[6]
        if all(not e.params for e in exprs):
            ws = canonicalize([e.const for e in exprs[:4]], exprs[4].const)
            if ws.index != exprs[5].const:
                raise InvalidInputError(f"{tag}:{lineno}: stated index {exprs[5].const} != {ws.index}")
            sporadic.append(SporadicEntry(ws, exprs[5].const, source))
            continue
        domain = ()
        if len(parts) == 8 and parts[7]:
            domain = tuple(
                (p.split(">=")[0].strip(), int(p.split(">=")[1])) for p in parts[7].split(";")
            )
        series.append(SeriesFamily(tuple(exprs[:4]), exprs[4], exprs[5], source, domain))
    return GoldenList(tag, tuple(series), tuple(sporadic))


@lru_cache(maxsize=None)
def _load_cached(tag: str, base: str | None) -> GoldenList:
    return parse_golden(tag, _read_text(tag))


def load(tag: str) -> GoldenList:
    base = golden_dir()
    return _load_cached(tag, str(base) if base else None)


def all_series() -> list[SeriesFamily]:
    """Every family from every golden source (duplicates across sources kept)."""
    return [f for tag in SOURCES for f in load(tag).series]

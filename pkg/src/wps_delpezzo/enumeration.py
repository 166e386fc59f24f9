"""Exhaustive search for well-formed quasismooth weight systems of fixed index."""

from __future__ import annotations

import heapq
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from . import series
from .classify import BOYER, DEGENERATE, YAU, YU
from .core import InvalidInputError, WeightSystem
from .criteria import is_quasismooth_generic, is_well_formed, vertex_condition
from .records import ClassifiedRecord, build_record


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return tuple(small + large[::-1])


def _top_weight_candidates(a0: int, a1: int, a2: int, index: int, max_weight: int) -> list[int]:
    """Values of a3 for which x3 can possibly appear in a degree-d monomial.

    With d = a0+a1+a2+a3-I, the vertex condition for x3 reads
    a3 | (a0+a1+a2-I-c) for c in {0, a0, a1, a2}; a zero right-hand side
    leaves a3 free.  Linear cones d = a_i (i < 3) pin a3 exactly.
    """
    s = a0 + a1 + a2 - index
    found: set[int] = set()
    free = False
    for c in (0, a0, a1, a2):
        t = s - c
        if t == 0:
            free = True
            break
        if t > 0:
            found.update(q for q in _divisors(t) if a2 <= q <= max_weight)
    if free:
        return list(range(a2, max_weight + 1))
    for c in (a0, a1, a2):
        q = c - s
        if a2 <= q <= max_weight:
            found.add(q)
    return sorted(found)


def search(index: int, max_weight: int, a0_values=None) -> Iterator[WeightSystem]:
    """All well-formed quasismooth weight systems of the given index, lexicographically."""
    a0_range = range(1, max_weight + 1) if a0_values is None else sorted(a0_values)
    for a0 in a0_range:
        for a1 in range(a0, max_weight + 1):
            for a2 in range(a1, max_weight + 1):
                for a3 in _top_weight_candidates(a0, a1, a2, index, max_weight):
                    d = a0 + a1 + a2 + a3 - index
                    if d < 1:
                        continue
                    a = (a0, a1, a2, a3)
                    if d not in a and not (
                        vertex_condition(a, d, 0)
                        and vertex_condition(a, d, 1)
                        and vertex_condition(a, d, 2)
                    ):
                        continue
                    ws = WeightSystem(a, d)
                    if is_well_formed(ws).verdict and is_quasismooth_generic(ws).verdict:
                        yield ws


@dataclass(frozen=True)
class EnumerationQuery:
    index: int
    max_weight: int
    include_degenerate: bool = True
    include_special: bool = True

    def __post_init__(self):
        for name in ("index", "max_weight"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise InvalidInputError(f"{name} must be a positive integer, got {v!r}")


def _keep(rec: ClassifiedRecord, q: EnumerationQuery) -> bool:
    if rec.degenerate and not q.include_degenerate:
        return False
    if not q.include_special and rec.surface_class is not None:
        kinds = {s.kind for s in rec.surface_class.special_hits} - {DEGENERATE}
        if kinds:
            return False
    return True


def _chunk(args: tuple[EnumerationQuery, tuple[int, ...]]) -> list[ClassifiedRecord]:
    q, a0s = args
    return [r for r in (build_record(ws) for ws in search(q.index, q.max_weight, a0s)) if _keep(r, q)]


def enumerate_index(q: EnumerationQuery, workers: int = 1) -> Iterator[ClassifiedRecord]:
    """Classified records of index ``q.index`` with a3 <= ``q.max_weight``, sorted by weights.

    With ``workers > 1`` the a0 values are dealt round-robin to worker
    processes and the sorted chunks are merged, so the output does not
    depend on the worker count.
    """
    if workers <= 1:
        for ws in search(q.index, q.max_weight):
            rec = build_record(ws)
            if _keep(rec, q):
                yield rec
        return
    a0s = range(1, q.max_weight + 1)
    parts = [(q, tuple(a0s[k::workers])) for k in range(workers)]
    with ProcessPoolExecutor(workers) as pool:
        chunks = list(pool.map(_chunk, parts))
    yield from heapq.merge(*chunks, key=lambda r: r.weight_system)


@dataclass(frozen=True)
class DiffReport:
    source: str
    max_weight: int
    indices: tuple[int, ...]
    missing: tuple[WeightSystem, ...]
    extra: tuple[WeightSystem, ...]
    matched_count: int
    filters: str = ""

    @property
    def clean(self) -> bool:
        return not self.missing and not self.extra

    def summary(self) -> str:
        return f"missing: {len(self.missing)}, extra: {len(self.extra)}, matched: {self.matched_count}"


# Filter sets for the small-index list: the theorem's own hypotheses, and the
# same with Yau/Yu types also removed.
BGN_FILTERS = {"boyer": frozenset({BOYER}), "boyer-yau-yu": frozenset({BOYER, YAU, YU})}


def _records(indices: Iterable[int], max_weight: int, workers: int) -> list[ClassifiedRecord]:
    out = []
    for I in indices:
        out.extend(enumerate_index(EnumerationQuery(I, max_weight, include_degenerate=False), workers))
    return out


def _diff(tag, max_weight, indices, golden: set, found: set, extra_pool: set, filters="") -> DiffReport:
    return DiffReport(
        source=tag,
        max_weight=max_weight,
        indices=tuple(indices),
        missing=tuple(sorted(golden - found)),
        extra=tuple(sorted(extra_pool)),
        matched_count=len(golden & found),
        filters=filters,
    )


def reproduce_list(
    source_tag: str,
    max_weight: int,
    *,
    indices: Iterable[int] | None = None,
    bgn_filter: str = "boyer",
    workers: int = 1,
) -> DiffReport:
    """Enumerate with the hypotheses of a golden list and diff in both directions.

    * ``thm-kollar-johnson`` / ``thm-i2``: index 1 / 2, no filtering.
    * ``thm-bgn``: index 2..10, I < 3 a0 / 2, special types in ``bgn_filter``
      removed.
    * ``table-1`` / ``table-2``: a listed row is missing if it is not among
      the enumerated non-degenerate records of its index.  Extras are
      non-special records listed in neither table, since the two tables
      together form the non-special part of the classification.
    """
    if source_tag not in series.SOURCES:
        raise InvalidInputError(f"unknown source tag {source_tag!r}; expected one of {', '.join(series.SOURCES)}")
    if isinstance(max_weight, bool) or not isinstance(max_weight, int) or max_weight < 1:
        raise InvalidInputError(f"max_weight must be a positive integer, got {max_weight!r}")
    golden = series.load(source_tag).instances(max_weight)

    if source_tag in ("thm-kollar-johnson", "thm-i2"):
        I = 1 if source_tag == "thm-kollar-johnson" else 2
        idx = (I,) if indices is None else tuple(indices)
        found = {r.weight_system for r in _records(idx, max_weight, workers)}
        return _diff(source_tag, max_weight, idx, golden, found, found - golden)

    if source_tag == "thm-bgn":
        if bgn_filter not in BGN_FILTERS:
            raise InvalidInputError(f"unknown filter set {bgn_filter!r}; expected one of {', '.join(BGN_FILTERS)}")
        drop = BGN_FILTERS[bgn_filter]
        idx = tuple(range(2, 11)) if indices is None else tuple(indices)
        found = set()
        for I in idx:
            # I < 3 a0 / 2 bounds a0 from below, so the search starts there
            a0s = range(2 * I // 3 + 1, max_weight + 1)
            for ws in search(I, max_weight, a0s):
                kinds = {s.kind for s in build_record(ws).surface_class.special_hits}
                if not kinds & drop and DEGENERATE not in kinds:
                    found.add(ws)
        golden = {ws for ws in golden if ws.index in idx}
        return _diff(source_tag, max_weight, idx, golden, found, found - golden, bgn_filter)

    # default: every index from 1 up to the largest one listed within the bound
    idx = tuple(range(1, max(ws.index for ws in golden) + 1) if indices is None else indices)
    records = _records(idx, max_weight, workers)
    found = {r.weight_system for r in records}
    golden = {ws for ws in golden if ws.index in idx}
    listed = series.load("table-1").instances(max_weight) | series.load("table-2").instances(max_weight)
    unlisted = {r.weight_system for r in records if not r.special and r.weight_system not in listed}
    return _diff(source_tag, max_weight, idx, golden, found, unlisted, "non-special")

"""Place a weight system in the degenerate / Yau / Yu / Boyer / series / sporadic scheme."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from . import series
from .core import DomainError, WeightSystem, require_fano
from .criteria import is_quasismooth_generic, is_well_formed

DEGENERATE, YAU, YU, BOYER = "degenerate", "yau", "yu", "boyer"
PRECEDENCE = (DEGENERATE, YAU, YU, BOYER)


@dataclass(frozen=True)
class SpecialType:
    """A special weight pattern.

    ``params`` holds witness indices ``(i,)`` for degenerate, ``(i, j)``
    for Yau/Yu (for Yu the halved weight is ``a_j``), and ``(I, k, a)``
    for Boyer.
    """

    kind: str
    params: tuple[int, ...]

    def __str__(self) -> str:
        names = {DEGENERATE: "Degenerate", YAU: "YauType", YU: "YuType", BOYER: "BoyerType"}
        return f"{names[self.kind]}{self.params}"


@dataclass(frozen=True)
class SeriesMatch:
    family_id: str
    source: str
    params: tuple[tuple[str, int], ...]

    @property
    def values(self) -> dict[str, int]:
        return dict(self.params)


@dataclass(frozen=True)
class SporadicHit:
    tag: str
    source: str
    index: int


@dataclass(frozen=True)
class SurfaceClass:
    special: SpecialType | None
    special_hits: tuple[SpecialType, ...] = ()
    series_matches: tuple[SeriesMatch, ...] = ()
    sporadic_sources: tuple[SporadicHit, ...] = ()
    boyer_pattern: tuple[int, int, int] | None = None

    @property
    def unlisted(self) -> bool:
        return self.special is None and not self.series_matches and not self.sporadic_sources

    @property
    def label(self) -> str:
        """Headline label: Degenerate > Yau > Yu > Boyer > series > sporadic."""
        if self.special is not None:
            return self.special.kind
        if self.series_matches:
            return "series"
        if self.sporadic_sources:
            return "sporadic"
        return "unlisted"


def boyer_patterns(ws: WeightSystem) -> list[tuple[int, int, int]]:
    """All ``(I, k, a)`` with weights = {I-k, I+k, a, a+k} as multisets, 0 <= k < I, a >= 1.

    The degree condition d = 2a+k+I follows from the index, but is
    checked anyway.
    """
    I = ws.index
    if I <= 0:
        return []
    out = set()
    for p in set(permutations(ws.weights)):
        lo, hi, a, ak = p
        k = I - lo
        if 0 <= k < I and hi == I + k and a >= 1 and ak == a + k and ws.degree == 2 * a + k + I:
            out.add((I, k, a))
    return sorted(out)


def special_types(ws: WeightSystem, *, allow_equal_indices: bool = False) -> list[SpecialType]:
    """Every special pattern ``ws`` satisfies, in precedence order.

    Yau means I = a_i + a_j and Yu means I = a_i + a_j/2 with a_j even.
    By default i and j must be distinct indices (repeated weights at
    different positions are fine); ``allow_equal_indices`` also admits
    I = 2a_i and I = 3a_i/2.
    """
    require_fano(ws)
    a, I = ws.weights, ws.index
    hits = [SpecialType(DEGENERATE, (i,)) for i in range(4) if ws.degree == a[i]]
    pairs = [(i, j) for i in range(4) for j in range(4) if allow_equal_indices or i != j]
    hits += [SpecialType(YAU, (i, j)) for i, j in pairs if i <= j and I == a[i] + a[j]]
    hits += [SpecialType(YU, (i, j)) for i, j in pairs if a[j] % 2 == 0 and 2 * I == 2 * a[i] + a[j]]
    hits += [SpecialType(BOYER, p) for p in boyer_patterns(ws) if p[2] >= p[0] + p[1]]
    return hits


def classify_special_type(ws: WeightSystem, **kw) -> SpecialType | None:
    hits = special_types(ws, **kw)
    return hits[0] if hits else None


def is_special(ws: WeightSystem, **kw) -> bool:
    return bool(special_types(ws, **kw))


def match_series(ws: WeightSystem) -> list[SeriesMatch]:
    """Every golden family (any source) that instantiates to ``ws``."""
    out = []
    for tag in series.SOURCES:
        for fam in series.load(tag).series:
            for values in fam.match(ws):
                out.append(SeriesMatch(fam.family_id, fam.source, tuple(sorted(values.items()))))
    return out


def lookup_sporadic(ws: WeightSystem) -> list[SporadicHit]:
    return [
        SporadicHit(tag, e.source, e.index)
        for tag in series.SOURCES
        for e in series.load(tag).sporadic
        if e.weight_system == ws
    ]


def classify(ws: WeightSystem, *, check: bool = True, **kw) -> SurfaceClass:
    """Full classification of a well-formed quasismooth Fano weight system."""
    require_fano(ws)
    if check:
        wf = is_well_formed(ws)
        if not wf:
            raise DomainError(f"{ws} is not well-formed", wf)
        qs = is_quasismooth_generic(ws)
        if not qs:
            raise DomainError(f"{ws} is not quasismooth", qs)
    hits = special_types(ws, **kw)
    pre_ordering = [p for p in boyer_patterns(ws) if p[2] < p[0] + p[1]]
    return SurfaceClass(
        special=hits[0] if hits else None,
        special_hits=tuple(hits),
        series_matches=tuple(match_series(ws)),
        sporadic_sources=tuple(lookup_sporadic(ws)),
        boyer_pattern=pre_ordering[0] if pre_ordering else None,
    )

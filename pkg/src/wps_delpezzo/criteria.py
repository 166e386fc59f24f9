"""Well-formedness, degeneracy and quasismoothness of the generic member."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import gcd

from .core import WeightSystem

Exponents = tuple[int, int, int, int]

# Nonempty subsets of {0,1,2,3}, by size then lexicographically.
SUBSETS: tuple[tuple[int, ...], ...] = tuple(
    J for k in range(1, 5) for J in combinations(range(4), k)
)


@dataclass(frozen=True)
class WellFormedReport:
    verdict: bool
    failing_pair: tuple[int, int, int] | None = None
    failing_triple: tuple[int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.verdict


@dataclass(frozen=True)
class QuasismoothReport:
    verdict: bool
    is_linear_cone: bool = False
    singleton_witnesses: dict[int, Exponents] = field(default_factory=dict)
    witnesses: dict[tuple[int, ...], tuple[Exponents, ...]] = field(default_factory=dict)
    subset_failures: tuple[tuple[int, ...], ...] = ()

    def __bool__(self) -> bool:
        return self.verdict


def is_well_formed(ws: WeightSystem) -> WellFormedReport:
    """Check that every three weights are coprime and every pairwise gcd divides d.

    Failures are reported by index; the pair failure is checked first.
    """
    a, d = ws.weights, ws.degree
    # for four weights, "gcd of the complement of {i,j} divides d" ranges over all pairs
    for k, l in combinations(range(4), 2):
        g = gcd(a[k], a[l])
        if d % g:
            return WellFormedReport(False, failing_pair=(k, l, g))
    for T in combinations(range(4), 3):
        if gcd(*(a[i] for i in T)) > 1:
            return WellFormedReport(False, failing_triple=T)
    return WellFormedReport(True)


def is_degenerate(ws: WeightSystem) -> bool:
    return ws.degree in ws.weights


@lru_cache(maxsize=1 << 16)
def _solve(target: int, weights: tuple[int, ...]) -> tuple[int, ...] | None:
    """Nonnegative exponents ``e`` with ``sum(e*w) == target``, largest leading power first."""
    if target < 0:
        return None
    if not weights:
        return () if target == 0 else None
    if target % gcd(*weights):
        return None
    w, rest = weights[0], weights[1:]
    if not rest:
        return (target // w,)
    for e in range(target // w, -1, -1):
        tail = _solve(target - e * w, rest)
        if tail is not None:
            return (e, *tail)
    return None


def find_monomial(ws: WeightSystem, support: tuple[int, ...], target: int | None = None) -> Exponents | None:
    """A monomial of degree ``target`` (default d) in the variables ``support``, or None."""
    target = ws.degree if target is None else target
    sol = _solve(target, tuple(ws.weights[i] for i in support))
    if sol is None:
        return None
    expo = [0, 0, 0, 0]
    for i, e in zip(support, sol):
        expo[i] = e
    return tuple(expo)


def subset_witnesses(ws: WeightSystem, J: tuple[int, ...]) -> tuple[Exponents, ...] | None:
    """Witness monomials for the subset ``J``, or None if ``J`` fails.

    Either one monomial in the J-variables alone, or ``len(J)`` monomials
    ``x_J^M * x_e`` with pairwise distinct ``e`` outside ``J``.  The
    extra variables are taken greedily by smallest index; since each
    monomial may use any admissible ``e``, counting admissible ``e`` is
    the whole matching problem.
    """
    pure = find_monomial(ws, J)
    if pure is not None:
        return (pure,)
    chosen = []
    for e in range(4):
        if e in J:
            continue
        m = find_monomial(ws, J, ws.degree - ws.weights[e])
        if m is None or not any(m):
            continue
        m = list(m)
        m[e] += 1
        chosen.append(tuple(m))
        if len(chosen) == len(J):
            return tuple(chosen)
    return None


def is_quasismooth_generic(ws: WeightSystem) -> QuasismoothReport:
    """Decide quasismoothness of the general hypersurface of degree d.

    If d equals a weight the hypersurface is a linear cone and is taken to
    be quasismooth.  Otherwise every nonempty subset J of the variables
    needs a witness (see :func:`subset_witnesses`).
    """
    if is_degenerate(ws):
        return QuasismoothReport(True, is_linear_cone=True)
    witnesses = {}
    failures = []
    for J in SUBSETS:
        w = subset_witnesses(ws, J)
        if w is None:
            failures.append(J)
        else:
            witnesses[J] = w
    singles = {J[0]: w[0] for J, w in witnesses.items() if len(J) == 1}
    return QuasismoothReport(
        verdict=not failures,
        singleton_witnesses=singles,
        witnesses=witnesses,
        subset_failures=tuple(failures),
    )


def vertex_condition(a: tuple[int, ...], d: int, i: int) -> bool:
    """Cheap necessary condition: x_i^m or x_i^m x_e has degree d."""
    ai = a[i]
    if d % ai == 0:
        return True
    return any(j != i and d > a[j] and (d - a[j]) % ai == 0 for j in range(4))


def is_admissible(ws: WeightSystem) -> bool:
    """Well-formed and generically quasismooth."""
    if ws.degree not in ws.weights:
        a, d = ws.weights, ws.degree
        if not all(vertex_condition(a, d, i) for i in range(4)):
            return False
    return is_well_formed(ws).verdict and is_quasismooth_generic(ws).verdict

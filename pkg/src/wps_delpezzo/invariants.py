"""Orbifold invariants of the general member: singularities, (-K)^2, lct data, KE status."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod

from .classify import BOYER, YAU, YU, special_types
from .core import DomainError, WeightSystem, anticanonical_degree, require_fano
from .criteria import is_degenerate, is_quasismooth_generic, is_well_formed
from .obstructions import obstruction_report

TWO_THIRDS = Fraction(2, 3)

# Monomial whose presence decides the conditional cases: product of the three
# variables of largest weight.
TOP_MONOMIAL = "x1*x2*x3"

KE_EXCEPTIONS = frozenset(
    WeightSystem(a, d)
    for a, d in [
        ((2, 3, 4, 7), 14),
        ((7, 10, 15, 19), 45),
        ((7, 18, 27, 37), 81),
        ((7, 15, 19, 32), 64),
        ((7, 19, 25, 41), 82),
        ((7, 26, 39, 55), 117),
    ]
)
BOYER_LCT_EXCEPTIONS = frozenset({WeightSystem((1, 1, 1, 1), 3), WeightSystem((1, 1, 2, 3), 6)})


@dataclass(frozen=True)
class QuotientSingularity:
    """``count`` points of type 1/order(b1, b2) at a vertex ``(i,)`` or on an open edge ``(i, j)``."""

    order: int
    weights_mod: tuple[int, int]
    location: tuple[int, ...]
    count: int = 1
    note: str | None = None

    def __str__(self) -> str:
        return f"1/{self.order}{self.weights_mod}"

    def normalized(self) -> tuple[int, int] | None:
        """The pair rescaled to (1, q) when the first residue is a unit mod the order."""
        b1, b2 = self.weights_mod
        if gcd(b1, self.order) != 1:
            return None
        inv = pow(b1, -1, self.order)
        return (1, b2 * inv % self.order)


def _require_surface(ws: WeightSystem) -> None:
    if not is_well_formed(ws):
        raise DomainError(f"{ws} is not well-formed", is_well_formed(ws))
    qs = is_quasismooth_generic(ws)
    if not qs:
        raise DomainError(f"{ws} is not quasismooth", qs)


def vertex_singularities(ws: WeightSystem) -> list[QuotientSingularity]:
    """Cyclic quotient singularities at the coordinate vertices lying on X.

    The vertex O_i lies on the general member iff a_i does not divide d.
    There some x_i^m x_j occurs; x_j is eliminated locally and the type is
    read from the two remaining weights.  The smallest such j is used.
    """
    _require_surface(ws)
    if is_degenerate(ws):
        raise DomainError(f"{ws} is degenerate")
    a, d = ws.weights, ws.degree
    out = []
    for i in range(4):
        if d % a[i] == 0 or a[i] < 2:
            continue
        js = [j for j in range(4) if j != i and d > a[j] and (d - a[j]) % a[i] == 0]
        pairs = []
        for j in js:
            k, l = (t for t in range(4) if t not in (i, j))
            pairs.append((j, (a[k] % a[i], a[l] % a[i])))
        j, b = pairs[0]
        note = None
        others = {p for _, p in pairs[1:]} - {b} - {b[::-1]}
        if others:
            note = "eliminated variable ambiguous; other choices give " + ", ".join(
                f"1/{a[i]}{p}" for p in sorted(others)
            )
        out.append(QuotientSingularity(a[i], b, (i,), 1, note))
    return out


def edge_monomials(ws: WeightSystem, i: int, j: int) -> list[int]:
    """x_i-exponents of the degree-d monomials in x_i, x_j alone."""
    a, d = ws.weights, ws.degree
    return [al for al in range(d // a[i] + 1) if (d - al * a[i]) % a[j] == 0]


def edge_singularities(ws: WeightSystem) -> list[QuotientSingularity]:
    """Singular points on the open coordinate edges with gcd(a_i, a_j) >= 2.

    On the edge the equation restricts to a sum of monomials x_i^al x_j^be
    whose x_i-exponents differ by multiples of L/a_i, L = lcm(a_i, a_j).
    Dividing by the extreme monomial and putting u = x_i^(L/a_i) / x_j^(L/a_j)
    leaves a polynomial in u of degree (al_max - al_min) a_i / L with nonzero
    constant term; its roots (distinct for general coefficients) are the
    points of X on the open edge.
    """
    _require_surface(ws)
    if is_degenerate(ws):
        raise DomainError(f"{ws} is degenerate")
    a = ws.weights
    out = []
    for i in range(4):
        for j in range(i + 1, 4):
            g = gcd(a[i], a[j])
            if g < 2:
                continue
            k, l = (t for t in range(4) if t not in (i, j))
            b = (a[k] % g, a[l] % g)
            alphas = edge_monomials(ws, i, j)
            if not alphas:
                out.append(QuotientSingularity(g, b, (i, j), 0, "edge lies in X"))
                continue
            count = (max(alphas) - min(alphas)) * a[i] // lcm(a[i], a[j])
            if count:
                out.append(QuotientSingularity(g, b, (i, j), count))
    return out


def lct_upper_bound(ws: WeightSystem) -> Fraction:
    I = require_fano(ws)
    return Fraction(ws.weights[0], I)


class LctKind(str, enum.Enum):
    VALUE = "value"
    AT_LEAST = "at-least"
    LESS_THAN = "less-than"
    CONDITIONAL = "conditional"


@dataclass(frozen=True)
class LctRecord:
    kind: LctKind
    value: Fraction | None = None
    condition: str | None = None
    present: "LctRecord | None" = None
    absent: "LctRecord | None" = None
    note: str = ""

    def __str__(self) -> str:
        if self.kind is LctKind.CONDITIONAL:
            return f"if {self.condition}: {self.present or '?'}; else: {self.absent or '?'}"
        sym = {LctKind.VALUE: "=", LctKind.AT_LEAST: ">=", LctKind.LESS_THAN: "<"}[self.kind]
        return f"{sym} {self.value}"

    def exceeds_two_thirds(self) -> bool:
        if self.kind is LctKind.VALUE:
            return self.value > TWO_THIRDS
        if self.kind is LctKind.AT_LEAST:
            return self.value > TWO_THIRDS
        return False


def in_new_series(ws: WeightSystem) -> int | None:
    """m if ws = (3, 3m+1, 3m+2, 6m+1; 12m+5) with m >= 1."""
    a, d = ws.weights, ws.degree
    if a[0] != 3 or (a[1] - 1) % 3:
        return None
    m = (a[1] - 1) // 3
    if m >= 1 and a == (3, 3 * m + 1, 3 * m + 2, 6 * m + 1) and d == 12 * m + 5:
        return m
    return None


def known_lct(ws: WeightSystem) -> LctRecord | None:
    """Look up global log canonical thresholds established for specific weight systems."""
    if ws == WeightSystem((2, 3, 4, 5), 12):
        return LctRecord(
            LctKind.CONDITIONAL,
            condition=TOP_MONOMIAL,
            present=LctRecord(LctKind.VALUE, Fraction(1)),
            absent=LctRecord(LctKind.VALUE, Fraction(8, 15)),
        )
    if ws == WeightSystem((1, 3, 5, 7), 15):
        return LctRecord(
            LctKind.CONDITIONAL,
            condition=TOP_MONOMIAL,
            note="KE metric known only when the monomial is present (relies on cited results)",
        )
    if in_new_series(ws) is not None:
        return LctRecord(LctKind.VALUE, Fraction(1))
    if ws.index <= 0:
        return None
    if ws in BOYER_LCT_EXCEPTIONS:
        return LctRecord(LctKind.AT_LEAST, TWO_THIRDS)
    kinds = {s.kind for s in special_types(ws)}
    if kinds & {YAU, YU, BOYER}:
        return LctRecord(LctKind.LESS_THAN, TWO_THIRDS)
    return None


class KE(str, enum.Enum):
    EXISTS = "Exists"
    OBSTRUCTED_BISHOP = "Obstructed(Bishop)"
    OBSTRUCTED_LICHNEROWICZ = "Obstructed(Lichnerowicz)"
    DEPENDS_ON_MEMBER = "DependsOnMember"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class KEStatus:
    status: KE
    note: str = ""
    condition: str | None = None
    branches: tuple[tuple[str, KE], ...] = ()

    def __str__(self) -> str:
        return self.status.value


def ke_status(ws: WeightSystem) -> KEStatus:
    """Existence of an orbifold Kahler-Einstein metric on the general member, where decided."""
    _require_surface(ws)
    I = require_fano(ws)
    obs = obstruction_report(ws, 3)
    if obs.bishop:
        return KEStatus(KE.OBSTRUCTED_BISHOP)
    if obs.lichnerowicz:
        return KEStatus(KE.OBSTRUCTED_LICHNEROWICZ)
    if ws in KE_EXCEPTIONS:
        return KEStatus(KE.UNKNOWN, "exception: not covered by the small-index KE corollary")
    lct = known_lct(ws)
    if lct is not None and lct.kind is LctKind.CONDITIONAL:
        present = KE.EXISTS
        absent = KE.EXISTS if lct.absent is not None and lct.absent.exceeds_two_thirds() else KE.UNKNOWN
        note = "lct " + str(lct) if lct.present is not None else lct.note
        return KEStatus(
            KE.DEPENDS_ON_MEMBER,
            note,
            condition=lct.condition,
            branches=(("present", present), ("absent", absent)),
        )
    if lct is not None and lct.exceeds_two_thirds():
        return KEStatus(KE.EXISTS, f"lct {lct} > 2/3")
    a0 = ws.weights[0]
    if 2 * I < 3 * a0 and BOYER not in {s.kind for s in special_types(ws)}:
        return KEStatus(KE.EXISTS, "small-index KE corollary: I < 3a0/2, not Boyer (relies on cited results)")
    return KEStatus(KE.UNKNOWN)


@dataclass(frozen=True)
class OrbifoldInvariants:
    singularities: tuple[QuotientSingularity, ...]
    anticanonical_sq: Fraction
    lct_upper: Fraction
    lct_known: LctRecord | None
    ke_status: KEStatus


def orbifold_invariants(ws: WeightSystem) -> OrbifoldInvariants:
    _require_surface(ws)
    sing = () if is_degenerate(ws) else (*vertex_singularities(ws), *edge_singularities(ws))
    return OrbifoldInvariants(
        singularities=tuple(sing),
        anticanonical_sq=anticanonical_degree(ws),
        lct_upper=lct_upper_bound(ws),
        lct_known=known_lct(ws),
        ke_status=ke_status(ws),
    )


@dataclass(frozen=True)
class FamilyIntersectionData:
    """Intersection numbers on X_{12m+5} in P(3, 3m+1, 3m+2, 6m+1).

    The hyperplane section x = 0 splits as L + R, with L = {x = z = 0} and
    R = {x = y^3 + zt = 0}.
    """

    m: int
    L_K: Fraction
    R_K: Fraction
    L_R: Fraction
    L_sq: Fraction
    R_sq: Fraction
    singularities: tuple[QuotientSingularity, ...]
    section_K: Fraction
    section_sq: Fraction

    @property
    def weight_system(self) -> WeightSystem:
        m = self.m
        return WeightSystem((3, 3 * m + 1, 3 * m + 2, 6 * m + 1), 12 * m + 5)

    @property
    def identities_hold(self) -> bool:
        return (self.L_K + self.R_K == self.section_K
                and self.L_sq + 2 * self.L_R + self.R_sq == self.section_sq)


def family_intersection_data(m: int) -> FamilyIntersectionData:
    if m < 1:
        raise DomainError("m must be a positive integer")
    p, q, r = 3 * m + 1, 3 * m + 2, 6 * m + 1
    ws = WeightSystem((3, p, q, r), 12 * m + 5)
    I, d = ws.index, ws.degree
    w = prod(ws.weights)
    sing = (
        QuotientSingularity(3, (1, 1), (0,)),
        QuotientSingularity(p, (3, 3 * m), (1,)),
        QuotientSingularity(q, (3, 3 * m + 1), (2,)),
        QuotientSingularity(r, (3 * m + 1, 3 * m + 2), (3,)),
    )
    return FamilyIntersectionData(
        m=m,
        L_K=Fraction(2, p * r),
        R_K=Fraction(6, q * r),
        L_R=Fraction(3, r),
        L_sq=Fraction(-9 * m, p * r),
        R_sq=Fraction(-3 * (3 * m - 1), q * r),
        singularities=sing,
        # {x = 0} ~ 3H, H = -K/I:  3H.(-K) = 3 I d / prod(a),  (3H)^2 = 9 d / prod(a)
        section_K=Fraction(3 * I * d, w),
        section_sq=Fraction(9 * d, w),
    )

"""Bishop and Lichnerowicz obstructions, and a randomized check that the first implies the second.

For weights a_0 <= ... <= a_n and degree d with index I = sum(a) - d > 0:

* Bishop:        d * I**n > n**n * prod(a)
* Lichnerowicz:  I > n * a_0

All comparisons on rational input are exact.  Inputs that are only known
to lie in an interval (``mpmath.iv`` values, or zero-argument callables
returning one) go through interval arithmetic and can come back
inconclusive, never as a false counterexample.
"""

from __future__ import annotations

import enum
import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, prod
from numbers import Rational
from typing import Iterable, Sequence

import mpmath

from .core import DomainError, WeightSystem, require_fano


@dataclass(frozen=True)
class ObstructionReport:
    bishop_lhs: int | Fraction
    bishop_rhs: int | Fraction
    bishop: bool
    lichnerowicz: bool
    n: int


def obstructions(weights: Sequence, degree, n: int | None = None) -> ObstructionReport:
    """Exact obstruction report for an arbitrary rational weight list."""
    a = [Fraction(x) for x in weights]
    d = Fraction(degree)
    n = len(a) - 1 if n is None else n
    I = sum(a) - d
    if I <= 0:
        raise DomainError(f"index {I} is not positive")
    lhs = d * I**n
    rhs = n**n * prod(a)
    if lhs.denominator == 1 and rhs.denominator == 1:
        lhs, rhs = lhs.numerator, rhs.numerator
    return ObstructionReport(lhs, rhs, lhs > rhs, I > n * min(a), n)


def obstruction_report(ws: WeightSystem, n: int = 3) -> ObstructionReport:
    require_fano(ws)
    return obstructions(ws.weights, ws.degree, n)


def noalpha_defect(a: Sequence) -> Fraction:
    """``sum(a) + 1 - n - prod(a)`` for n = len(a); nonpositive whenever all a_i >= 1."""
    a = [Fraction(x) for x in a]
    if not a:
        raise DomainError("need at least one entry")
    if any(x < 1 for x in a):
        raise DomainError(f"entries must be >= 1: {a}")
    return sum(a) + 1 - len(a) - prod(a)


def alpha_defect(a: Sequence, alpha) -> Fraction:
    """``(sum(a) + 1 - alpha*n) * alpha**n - prod(a)`` for n = len(a)."""
    a = [Fraction(x) for x in a]
    alpha = Fraction(alpha)
    n = len(a)
    return (sum(a) + 1 - alpha * n) * alpha**n - prod(a)


class Verdict(str, enum.Enum):
    VACUOUS = "vacuous"
    IMPLIED = "implied"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"
    INCONCLUSIVE = "inconclusive-precision"


@dataclass(frozen=True)
class RealTuple:
    """Positive reals a_0 <= ... <= a_n and d < sum(a).

    Entries are rationals (int, Fraction, float, decimal string), mpmath
    interval values, or zero-argument callables returning an mpmath
    interval at the current ``mpmath.iv`` precision.
    """

    a: tuple
    d: object

    @property
    def n(self) -> int:
        return len(self.a) - 1

    def is_exact(self) -> bool:
        return all(_as_fraction(x) is not None for x in (*self.a, self.d))

    def exact(self) -> tuple[list[Fraction], Fraction]:
        a = [_as_fraction(x) for x in self.a]
        d = _as_fraction(self.d)
        if None in a or d is None:
            raise TypeError("tuple has non-rational entries")
        if any(x <= 0 for x in a) or d <= 0:
            raise DomainError("entries must be positive")
        if a != sorted(a):
            raise DomainError("weights must be nondecreasing")
        if d >= sum(a):
            raise DomainError("need d < sum(a)")
        return a, d


def _as_fraction(x) -> Fraction | None:
    if isinstance(x, (Rational, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, mpmath.mpf):
        man, exp = mpmath.mpf(x).man_exp
        return Fraction(man) * Fraction(2) ** exp
    return None


def bl_verdict_int(A: Sequence[int], D: int, n: int) -> Verdict:
    """Integer core of the check; the verdict is invariant under common scaling."""
    I = sum(A) - D
    if D * I**n <= n**n * prod(A):
        return Verdict.VACUOUS
    return Verdict.IMPLIED if I > n * A[0] else Verdict.COUNTEREXAMPLE


def _clear_denominators(values: Sequence[Fraction]) -> list[int]:
    L = lcm(*(v.denominator for v in values))
    return [v.numerator * (L // v.denominator) for v in values]


def _interval_verdict(t: RealTuple, prec: int) -> Verdict:
    iv = mpmath.iv
    saved = iv.prec
    iv.prec = prec
    try:
        def conv(x):
            if callable(x):
                x = x()
            f = _as_fraction(x)
            if f is not None:
                return iv.mpf(f.numerator) / f.denominator
            return iv.mpf(x)

        a = [conv(x) for x in t.a]
        d = conv(t.d)
        n = t.n
        I = sum(a, iv.mpf(0)) - d
        if I.b <= 0:
            raise DomainError("need d < sum(a)")
        gap = d * I**n - iv.mpf(n) ** n * _iv_prod(a)
        lich = I - n * a[0]
    finally:
        iv.prec = saved
    if gap.b <= 0:
        return Verdict.VACUOUS
    if gap.a > 0 and I.a > 0:
        if lich.a > 0:
            return Verdict.IMPLIED
        if lich.b <= 0:
            return Verdict.COUNTEREXAMPLE
    return Verdict.INCONCLUSIVE


def _iv_prod(xs):
    out = mpmath.iv.mpf(1)
    for x in xs:
        out = out * x
    return out


def check_bishop_implies_lichnerowicz(t: RealTuple, *, max_prec: int = 4096) -> Verdict:
    """Does Bishop hold, and if so does Lichnerowicz?  Exact when possible."""
    if all(type(x) is int for x in (*t.a, t.d)):
        a, d = list(t.a), t.d
        if not (0 < d < sum(a)) or min(a) <= 0 or a != sorted(a):
            raise DomainError("need positive nondecreasing weights and 0 < d < sum(a)")
        return bl_verdict_int(a, d, t.n)
    if t.is_exact():
        a, d = t.exact()
        ints = _clear_denominators([*a, d])
        return bl_verdict_int(ints[:-1], ints[-1], t.n)
    prec = 53
    while True:
        v = _interval_verdict(t, prec)
        if v is not Verdict.INCONCLUSIVE or prec >= max_prec:
            return v
        prec *= 2


def substream(seed: int, n: int) -> random.Random:
    h = hashlib.sha256(f"{seed}:{n}".encode()).digest()
    return random.Random(int.from_bytes(h[:8], "big"))


def _rand_rational(rng: random.Random, lo: int, hi: int, max_den: int) -> Fraction:
    q = rng.randint(1, max_den)
    return lo + Fraction(rng.randint(0, (hi - lo) * q), q)


_D_STEPS = 1_000_000


def sample_scaled(rng: random.Random, n: int, max_den: int = 100_000, p_one: float = 0.1) -> tuple[list[int], int, int]:
    """Integer form ``(A, D, S)`` of a random tuple ``a = A/S``, ``d = D/S``.

    a_0 = 1 and a_i = 1 + x_i for sorted rationals x_i = p_i/q_i in
    [0, 10] (q_i <= max_den, each x_i is 0 with probability ``p_one``);
    d is drawn uniformly from the grid sum(a) * k/10**6, 0 < k < 10**6.
    """
    xs = []
    for _ in range(n):
        if rng.random() < p_one:
            xs.append((0, 1))
        else:
            q = rng.randint(1, max_den)
            xs.append((rng.randint(0, 10 * q), q))
    xs.sort(key=lambda pq: Fraction(*pq))
    L = lcm(*(q for _, q in xs)) if xs else 1
    A = [L * _D_STEPS] + [(L + p * (L // q)) * _D_STEPS for p, q in xs]
    D = (sum(A) // _D_STEPS) * rng.randint(1, _D_STEPS - 1)
    return A, D, L * _D_STEPS


def sample_tuple(rng: random.Random, n: int, **kw) -> RealTuple:
    A, D, S = sample_scaled(rng, n, **kw)
    return RealTuple(tuple(Fraction(x, S) for x in A), Fraction(D, S))


def sample_cube(rng: random.Random, n: int, max_den: int = 100_000, p_one: float = 0.2) -> list[Fraction]:
    """A rational point of [1, n]^n; each coordinate is exactly 1 with probability ``p_one``."""
    return [
        Fraction(1) if n == 1 or rng.random() < p_one else _rand_rational(rng, 1, n, max_den)
        for _ in range(n)
    ]


def defect_sign_int(a: Sequence[Fraction]) -> int:
    """Sign of ``noalpha_defect(a)`` using integer arithmetic only."""
    n = len(a)
    Q = lcm(*(x.denominator for x in a))
    A = [x.numerator * (Q // x.denominator) for x in a]
    num = sum(A) * Q ** (n - 1) + (1 - n) * Q**n - prod(A)
    return (num > 0) - (num < 0)


@dataclass
class NSummary:
    n: int
    samples: int = 0
    vacuous: int = 0
    implied: int = 0
    counterexamples: list = field(default_factory=list)
    positive_defects: list = field(default_factory=list)


@dataclass
class BLSummary:
    seed: int
    per_n: dict[int, NSummary]

    @property
    def counterexamples(self) -> list:
        return [c for s in self.per_n.values() for c in s.counterexamples]

    @property
    def positive_defects(self) -> list:
        return [c for s in self.per_n.values() for c in s.positive_defects]

    @property
    def total(self) -> int:
        return sum(s.samples for s in self.per_n.values())

    @property
    def ok(self) -> bool:
        return not self.counterexamples and not self.positive_defects


def verify_theorem_bl(n_range: Iterable[int], samples: int, seed: int) -> BLSummary:
    """Sample ``samples`` rational tuples for each n and check Bishop => Lichnerowicz.

    Each tuple is also normalized by a_0 and its ``noalpha_defect`` must be
    nonpositive.  Deterministic in (n_range, samples, seed).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    per_n = {}
    for n in sorted(set(n_range)):
        if n < 1:
            raise ValueError("n must be >= 1")
        rng = substream(seed, n)
        s = NSummary(n)
        for _ in range(samples):
            A, D, S = sample_scaled(rng, n)
            # the verdict is scale invariant, so the integer form is checked directly
            v = check_bishop_implies_lichnerowicz(RealTuple(tuple(A), D))
            s.samples += 1
            if v is Verdict.VACUOUS:
                s.vacuous += 1
            elif v is Verdict.IMPLIED:
                s.implied += 1
            else:
                s.counterexamples.append(RealTuple(tuple(Fraction(x, S) for x in A), Fraction(D, S)))
            A0 = A[0]
            rest = A[1:]
            # noalpha_defect(A_i/A_0) scaled by A_0**n
            if sum(rest) * A0 ** (n - 1) + (1 - n) * A0**n - prod(rest) > 0:
                s.positive_defects.append([Fraction(x, A0) for x in rest])
        per_n[n] = s
    return BLSummary(seed, per_n)


@dataclass
class DefectSummary:
    samples: int = 0
    zeros: int = 0
    positive: list = field(default_factory=list)
    non_boundary_zeros: list = field(default_factory=list)


def verify_noalpha(n_range: Iterable[int], samples: int, seed: int) -> DefectSummary:
    """Sample points of [1, n]^n and check the defect is <= 0, with zeros only on the boundary.

    A zero is expected exactly when all but at most one coordinate equal 1.
    """
    out = DefectSummary()
    for n in sorted(set(n_range)):
        rng = substream(seed + 1, n)
        for _ in range(samples):
            a = sample_cube(rng, n)
            sign = defect_sign_int(a)
            out.samples += 1
            if sign > 0:
                out.positive.append(a)
            elif sign == 0:
                out.zeros += 1
                if sum(x != 1 for x in a) > 1:
                    out.non_boundary_zeros.append(a)
    return out


def sweep_weight_systems(records: Iterable[WeightSystem], n: int = 3) -> list[WeightSystem]:
    """Integer weight systems where Bishop holds but Lichnerowicz fails (expected: none)."""
    bad = []
    for ws in records:
        r = obstruction_report(ws, n)
        if r.bishop and not r.lichnerowicz:
            bad.append(ws)
    return bad

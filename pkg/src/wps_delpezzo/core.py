"""Weight systems of surfaces in weighted projective 3-space.

A weight system is a sorted quadruple of positive weights together with a
degree.  Everything here is exact integer/rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable


class InvalidInputError(ValueError):
    """Raised on malformed input (nonpositive weight or degree, bad tag, ...)."""


class DomainError(ValueError):
    """Raised when an operation is applied outside its domain (e.g. non-Fano input).

    ``report`` optionally carries the failing check report.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True, order=True)
class WeightSystem:
    weights: tuple[int, int, int, int]
    degree: int

    def __post_init__(self):
        if len(self.weights) != 4:
            raise InvalidInputError(f"expected four weights, got {self.weights!r}")
        if any(int(a) != a or a < 1 for a in self.weights):
            raise InvalidInputError(f"weights must be positive integers: {self.weights!r}")
        if list(self.weights) != sorted(self.weights):
            raise InvalidInputError(f"weights must be nondecreasing: {self.weights!r}")
        if int(self.degree) != self.degree or self.degree < 1:
            raise InvalidInputError(f"degree must be a positive integer: {self.degree!r}")

    @property
    def index(self) -> int:
        return fano_index(self)

    @property
    def quintuple(self) -> tuple[int, int, int, int, int]:
        return (*self.weights, self.degree)

    def __str__(self) -> str:
        return "({};{})".format(",".join(map(str, self.weights)), self.degree)


def canonicalize(raw: Iterable[int], d: int) -> WeightSystem:
    """Sort ``raw`` ascending and attach the degree ``d``.

    >>> canonicalize((38, 21, 13, 11), 76)
    WeightSystem(weights=(11, 13, 21, 38), degree=76)
    """
    raw = tuple(raw)
    if len(raw) != 4:
        raise InvalidInputError(f"expected four weights, got {len(raw)}")
    for a in (*raw, d):
        if isinstance(a, bool) or not isinstance(a, int) or a < 1:
            raise InvalidInputError(f"entries must be positive integers, got {a!r}")
    return WeightSystem(tuple(sorted(raw)), d)


def from_index(raw: Iterable[int], index: int) -> WeightSystem:
    """Weight system whose degree is fixed by the requested index."""
    raw = tuple(raw)
    return canonicalize(raw, sum(raw) - index)


def fano_index(ws: WeightSystem) -> int:
    return sum(ws.weights) - ws.degree


def is_fano(ws: WeightSystem) -> bool:
    return fano_index(ws) > 0


def require_fano(ws: WeightSystem) -> int:
    I = fano_index(ws)
    if I <= 0:
        raise DomainError(f"{ws} is not Fano (index {I})")
    return I


def anticanonical_degree(ws: WeightSystem) -> Fraction:
    """Self-intersection of the anticanonical class, ``I^2 d / prod(a)``."""
    I = require_fano(ws)
    return Fraction(I * I * ws.degree, prod(ws.weights))

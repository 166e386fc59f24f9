from __future__ import annotations

from itertools import product
from math import gcd

import pytest

from wps_delpezzo.core import WeightSystem


def all_monomials(a, d):
    """Every exponent vector of weighted degree d, by brute force.

    Loops over the exponents of the three largest weights and solves for
    the remaining one.
    """
    k = min(range(4), key=lambda i: a[i])
    others = [i for i in range(4) if i != k]
    out = []
    for rest in product(*(range(d // a[i] + 1) for i in others)):
        r = d - sum(x * a[i] for x, i in zip(rest, others))
        if r >= 0 and r % a[k] == 0:
            e = [0] * 4
            e[k] = r // a[k]
            for x, i in zip(rest, others):
                e[i] = x
            out.append(tuple(e))
    return out


def oracle_quasismooth(a, d) -> bool:
    """Subset criterion evaluated over an explicit monomial list."""
    if d in a:
        return True
    mons = all_monomials(a, d)
    for mask in range(1, 16):
        J = [i for i in range(4) if mask >> i & 1]
        if any(all(e[i] == 0 for i in range(4) if i not in J) for e in mons):
            continue
        extras = set()
        for e in mons:
            outside = [i for i in range(4) if i not in J and e[i]]
            if len(outside) == 1 and e[outside[0]] == 1 and any(e[j] for j in J):
                extras.add(outside[0])
        if len(extras) < len(J):
            return False
    return True


def oracle_well_formed(a, d) -> bool:
    pairs = all(d % gcd(a[i], a[j]) == 0 for i in range(4) for j in range(i + 1, 4))
    triples = all(
        gcd(gcd(a[i], a[j]), a[k]) == 1
        for i in range(4) for j in range(i + 1, 4) for k in range(j + 1, 4)
    )
    return pairs and triples


@pytest.fixture
def W():
    return lambda a, d: WeightSystem(tuple(a), d)

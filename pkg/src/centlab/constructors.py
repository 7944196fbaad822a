"""Named constructors for witness rings.

These cover the standard small non-commutative witnesses (top-row and
triangular matrix rings), cyclic rings, zero rings, direct products and
opposite rings.  Every result passes full validation.
"""

from __future__ import annotations

import math
from typing import Sequence

from .core import AdditiveGroup, FiniteRing, validate_ring
from .errors import BadParameterError

_MAX_PRODUCT_ORDER = 4096
_TOP_ROW_PRIMES = (2, 3, 5, 7)
_MAX_MATRIX_MODULUS = 4


def zero_ring(group) -> FiniteRing:
    """All products zero on the given additive group (invariants or group)."""
    if not isinstance(group, AdditiveGroup):
        group = AdditiveGroup(tuple(group))
    k = group.rank
    label = f"zero[{'x'.join(map(str, group.invariants)) or '1'}]"
    return validate_ring(group, [[0] * k for _ in range(k)], label=label)


def cyclic_ring(n: int, c: int) -> FiniteRing:
    """The ring on Z_n whose generator squares to c times itself."""
    if not 2 <= n <= _MAX_PRODUCT_ORDER:
        raise BadParameterError(f"cyclic ring order {n} outside [2, {_MAX_PRODUCT_ORDER}]")
    if not 0 <= c < n:
        raise BadParameterError(f"coefficient {c} outside [0, {n})")
    return validate_ring((n,), [[c % n]], label=f"cyclic[{n},{c}]")


def top_row_ring(p: int) -> FiniteRing:
    """2x2 matrices over the p-element field with zero second row.

    Order p**2, trivial center; the minimal non-commutative ring at that
    order.  Generators: E11 and E12.
    """
    if p not in _TOP_ROW_PRIMES:
        raise BadParameterError(f"top-row rings are built for primes {_TOP_ROW_PRIMES}")
    group = AdditiveGroup((p, p))
    e1, e2 = group.weights
    return validate_ring(group, [[e1, e2], [0, 0]], label=f"E{p}")


def full_matrix_ring(m: int) -> FiniteRing:
    """2x2 matrices over Z_m; generators E11, E12, E21, E22."""
    if not 2 <= m <= _MAX_MATRIX_MODULUS:
        raise BadParameterError(f"matrix modulus {m} outside [2, {_MAX_MATRIX_MODULUS}]")
    group = AdditiveGroup((m, m, m, m))
    e11, e12, e21, e22 = group.weights
    # Eab * Ecd = Ead when b == c, else 0
    sc = [
        [e11, e12, 0, 0],
        [0, 0, e11, e12],
        [e21, e22, 0, 0],
        [0, 0, e21, e22],
    ]
    return validate_ring(group, sc, label=f"M2[Z{m}]")


def upper_triangular_ring(m: int) -> FiniteRing:
    """2x2 upper triangular matrices over Z_m; generators E11, E12, E22."""
    if not 2 <= m <= _MAX_MATRIX_MODULUS:
        raise BadParameterError(f"matrix modulus {m} outside [2, {_MAX_MATRIX_MODULUS}]")
    group = AdditiveGroup((m, m, m))
    e11, e12, e22 = group.weights
    sc = [
        [e11, e12, 0],
        [0, 0, e12],
        [0, 0, e22],
    ]
    return validate_ring(group, sc, label=f"U2[Z{m}]")


def opposite_ring(ring: FiniteRing) -> FiniteRing:
    """Same additive group with all products reversed."""
    k = ring.group.rank
    sc = [[ring.sc[j][i] for j in range(k)] for i in range(k)]
    label = f"op({ring.label})" if ring.label else None
    return validate_ring(ring.group, sc, label=label)


def _prime_power_summands(ring: FiniteRing, side: int) -> dict[int, list[tuple[int, tuple[int, int]]]]:
    """Cyclic prime-power summands of one factor's additive group.

    Each summand is (exponent, concrete generator), the generator given as a
    pair of element indices in the product (the other component zero).
    """
    out: dict[int, list[tuple[int, tuple[int, int]]]] = {}
    for i, d in enumerate(ring.invariants):
        g = ring.generators[i]
        for p, e in _factor_int(d):
            part = ring._smul(d // p ** e, g)
            pair = (part, 0) if side == 0 else (0, part)
            out.setdefault(p, []).append((e, pair))
    return out


def _factor_int(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def direct_product(a: FiniteRing, b: FiniteRing) -> FiniteRing:
    """Componentwise product ring, re-expressed on the canonical additive type.

    The canonical invariant factors come from merging the prime-power cyclic
    summands of both factors; the matching generators are summed across
    primes, which keeps the change of basis explicit.
    """
    if a.order * b.order > _MAX_PRODUCT_ORDER:
        raise BadParameterError(
            f"product order {a.order * b.order} exceeds {_MAX_PRODUCT_ORDER}"
        )

    def padd(x, y):
        return (a._add(x[0], y[0]), b._add(x[1], y[1]))

    def pmul(x, y):
        return (a._mul(x[0], y[0]), b._mul(x[1], y[1]))

    def psmul(n, x):
        return (a._smul(n, x[0]), b._smul(n, x[1]))

    by_prime = _prime_power_summands(a, 0)
    for p, lst in _prime_power_summands(b, 1).items():
        by_prime.setdefault(p, []).extend(lst)
    for lst in by_prime.values():
        lst.sort(key=lambda t: -t[0])

    length = max((len(lst) for lst in by_prime.values()), default=0)
    invariants = []
    basis = []
    for slot in range(length):  # slot 0 collects the largest prime powers
        d = 1
        gen = (0, 0)
        for p in sorted(by_prime):
            lst = by_prime[p]
            if slot < len(lst):
                e, g = lst[slot]
                d *= p ** e
                gen = padd(gen, g)
        invariants.append(d)
        basis.append(gen)
    invariants.reverse()
    basis.reverse()

    group = AdditiveGroup(tuple(invariants))
    order = group.order
    index_of: dict[tuple[int, int], int] = {}
    for idx in range(order):
        elem = (0, 0)
        for c, g in zip(group.decode(idx), basis):
            elem = padd(elem, psmul(c, g))
        index_of[elem] = idx
    if len(index_of) != order:
        raise BadParameterError("internal error: product basis failed to span")

    k = group.rank
    sc = [[index_of[pmul(basis[i], basis[j])] for j in range(k)] for i in range(k)]
    label = None
    if a.label and b.label:
        label = f"{a.label}*{b.label}"
    return validate_ring(group, sc, label=label)

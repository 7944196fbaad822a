"""Exhaustive generation of small rings up to isomorphism.

Ring isomorphisms between finite rings restrict to automorphisms of the
additive group, so rings on the same additive type are classified by the
orbit of their structure-constant table under the additive automorphism
group.  The search assigns table cells depth-first in row-major order with
two prunings: incremental associativity (a triple is checked as soon as its
products are determined) and canonical minimality (a branch dies as soon as
some automorphism image of the partial table is lexicographically smaller).
Each emitted table is the lexicographic minimum of its orbit, so no
cross-branch deduplication is needed and the output order is the lex order
of the tables.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .core import AdditiveGroup, FiniteRing, cent_structure, center, validate_ring
from .errors import BadParameterError, CeilingExceededError, OrderTooLargeError

# Full-automorphism isomorphism decisions are limited to this order.
ISO_SCAN_LIMIT = 16

# Hard feasibility guard: more than three generators is out of reach for the
# raw search space even with pruning, whatever the ceiling says.
MAX_SEARCH_RANK = 3


def _partitions(n: int) -> list[tuple[int, ...]]:
    """Partitions of n as non-increasing tuples, deterministic order."""
    if n == 0:
        return [()]
    out = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(remaining, largest), 0, -1):
            rec(remaining - part, part, prefix + [part])

    rec(n, n, [])
    return out


def _factor(n: int) -> list[tuple[int, int]]:
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


def abelian_groups_of_order(n: int) -> list[tuple[int, ...]]:
    """Invariant-factor tuples of every abelian group of order n.

    Sorted by number of invariant factors, then lexicographically, so e.g.
    order 8 lists (8,), (2, 4), (2, 2, 2).
    """
    if not 1 <= n <= 256:
        raise OrderTooLargeError(f"order {n} outside supported range [1, 256]")
    if n == 1:
        return [()]
    primes = _factor(n)
    groups = []
    for choice in product(*[_partitions(e) for _, e in primes]):
        length = max(len(parts) for parts in choice)
        invs = []
        for slot in range(length):
            d = 1
            for (p, _), parts in zip(primes, choice):
                if slot < len(parts):
                    d *= p ** parts[slot]
            invs.append(d)
        groups.append(tuple(reversed(invs)))
    return sorted(groups, key=lambda t: (len(t), t))


@lru_cache(maxsize=None)
def automorphism_permutations(invariants: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Every additive automorphism as a permutation of element indices.

    An endomorphism is a choice of image for each generator with compatible
    additive order; the bijective ones are the automorphisms.
    """
    group = AdditiveGroup(invariants)
    n, k = group.order, group.rank
    if k == 0:
        return ((0,),)
    invs = group.invariants
    weights = group.weights
    coords = [group.decode(x) for x in range(n)]

    def ordx(x):
        o = 1
        for d, a in zip(invs, coords[x]):
            q = d // math.gcd(d, a)
            o = o * q // math.gcd(o, q)
        return o

    orders = [ordx(x) for x in range(n)]
    add = [[0] * n for _ in range(n)]
    for x in range(n):
        cx = coords[x]
        for y in range(n):
            idx = 0
            for w, d, a, b in zip(weights, invs, cx, coords[y]):
                s = a + b
                if s >= d:
                    s -= d
                idx += w * s
            add[x][y] = idx

    # step[x] = (i, x - w_i) for the lowest nonzero coordinate i of x
    step = [None] * n
    for x in range(1, n):
        for i, c in enumerate(coords[x]):
            if c:
                step[x] = (i, x - weights[i])
                break

    cand = [[y for y in range(n) if invs[i] % orders[y] == 0] for i in range(k)]
    perms = []
    for images in product(*cand):
        perm = [0] * n
        for x in range(1, n):
            i, prev = step[x]
            perm[x] = add[perm[prev]][images[i]]
        if len(set(perm)) == n:
            perms.append(tuple(perm))
    return tuple(perms)


def _invert(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for x, p in enumerate(perm):
        inv[p] = x
    return tuple(inv)


def _transformed_table(ring: FiniteRing, perm: Sequence[int], inv: Sequence[int]) -> tuple[int, ...]:
    """Flat table of the relabeling of `ring` induced by the automorphism."""
    gens = ring.generators
    return tuple(
        inv[ring._mul(perm[gi], perm[gj])] for gi in gens for gj in gens
    )


@dataclass(frozen=True)
class CanonicalRing:
    """A ring whose table is the lexicographic minimum over its orbit."""

    ring: FiniteRing

    @property
    def key(self) -> tuple:
        return (self.ring.invariants, self.ring.sc)

    @property
    def order(self) -> int:
        return self.ring.order

    @property
    def invariants(self) -> tuple[int, ...]:
        return self.ring.invariants


def canonicalize(ring: FiniteRing) -> CanonicalRing:
    """Lexicographically minimal relabeling of a ring of order <= 16."""
    if ring.order > ISO_SCAN_LIMIT:
        raise OrderTooLargeError(
            f"canonical forms use a full automorphism scan, supported up to order {ISO_SCAN_LIMIT}"
        )
    k = ring.group.rank
    best = tuple(e for row in ring.sc for e in row)
    for perm in automorphism_permutations(ring.invariants):
        t = _transformed_table(ring, perm, _invert(perm))
        if t < best:
            best = t
    table = [list(best[i * k:(i + 1) * k]) for i in range(k)]
    return CanonicalRing(validate_ring(ring.group, table, label=ring.label))


def _iso_fingerprint(ring: FiniteRing) -> tuple:
    cs = cent_structure(ring)
    sizes = tuple(sorted(cs.set_of(x).size for x in ring.elements()))
    return (
        ring.order,
        ring.invariants,
        ring.is_commutative,
        center(ring).size,
        sizes,
        cs.n,
    )


def is_isomorphic(a, b) -> bool | None:
    """Decide ring isomorphism.

    Definite True/False for orders <= 16 (full additive-automorphism scan).
    For larger rings, False on any isomorphism-invariant mismatch and None
    (undecided) otherwise.
    """
    if isinstance(a, CanonicalRing):
        a = a.ring
    if isinstance(b, CanonicalRing):
        b = b.ring
    if a.invariants != b.invariants:
        return False
    if a.sc == b.sc:
        return True
    if _iso_fingerprint(a) != _iso_fingerprint(b):
        return False
    if a.order <= ISO_SCAN_LIMIT:
        target = tuple(e for row in b.sc for e in row)
        for perm in automorphism_permutations(a.invariants):
            if _transformed_table(a, perm, _invert(perm)) == target:
                return True
        return False
    return None


def dedupe_by_canonical(rings) -> list[FiniteRing]:
    """Drop later rings isomorphic to an earlier one (orders <= 16)."""
    seen = set()
    out = []
    for r in rings:
        if isinstance(r, CanonicalRing):
            r = r.ring
        key = canonicalize(r).key
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


# -- enumeration ceiling -----------------------------------------------------

def is_enumerable(invariants: Sequence[int], ceiling_order: int | None = None) -> bool:
    """Whether exhaustive search is enabled for this additive type.

    Default: every type of order <= 8, plus the rank-<=2 types at orders 9
    and 16.  A ceiling override admits any order up to the override, still
    guarded by the rank limit.
    """
    invs = tuple(invariants)
    order = math.prod(invs)
    rank = len(invs)
    if ceiling_order is not None:
        return order <= ceiling_order and rank <= MAX_SEARCH_RANK
    if order <= 8:
        return True
    return order in (9, 16) and rank <= 2


def enumerable_types(order: int, ceiling_order: int | None = None) -> list[tuple[int, ...]]:
    return [t for t in abelian_groups_of_order(order) if is_enumerable(t, ceiling_order)]


# -- the orderly search ------------------------------------------------------

def _cell_candidates(invariants: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Allowed values per table cell, flattened row-major.

    distributivity forces di*(ei*ej) = 0 = dj*(ei*ej), so the product's
    additive order must divide gcd(di, dj).
    """
    group = AdditiveGroup(invariants)
    n, k = group.order, group.rank
    coords = [group.decode(x) for x in range(n)]

    def ordx(x):
        o = 1
        for d, a in zip(invariants, coords[x]):
            q = d // math.gcd(d, a)
            o = o * q // math.gcd(o, q)
        return o

    orders = [ordx(x) for x in range(n)]
    out = []
    for i in range(k):
        for j in range(k):
            g = math.gcd(invariants[i], invariants[j])
            out.append(tuple(x for x in range(n) if g % orders[x] == 0))
    return out


@lru_cache(maxsize=None)
def _search_task(invariants: tuple[int, ...], first_value: int | None) -> tuple[tuple[int, ...], ...]:
    """All canonical-minimal tables, optionally restricted to one value of
    the first cell (the worker-partition handle).  Returned in lex order."""
    group = AdditiveGroup(invariants)
    n, k = group.order, group.rank
    if k == 0:
        return ((),) if first_value is None else ()
    invs = group.invariants
    weights = group.weights
    coords = [group.decode(x) for x in range(n)]
    maxd = invs[-1]

    add = [[0] * n for _ in range(n)]
    for x in range(n):
        cx = coords[x]
        for y in range(n):
            idx = 0
            for w, d, a, b in zip(weights, invs, cx, coords[y]):
                s = a + b
                if s >= d:
                    s -= d
                idx += w * s
            add[x][y] = idx
    smul = [[0] * n for _ in range(maxd)]
    for m in range(maxd):
        for x in range(n):
            idx = 0
            for w, d, a in zip(weights, invs, coords[x]):
                idx += w * ((m * a) % d)
            smul[m][x] = idx

    def ordx(x):
        o = 1
        for d, a in zip(invs, coords[x]):
            q = d // math.gcd(d, a)
            o = o * q // math.gcd(o, q)
        return o

    orders = [ordx(x) for x in range(n)]
    candidates = _cell_candidates(invariants)
    if first_value is not None:
        if first_value not in candidates[0]:
            return ()
        candidates = [(first_value,)] + candidates[1:]

    perms = automorphism_permutations(invariants)
    aut_inv = []
    aut_terms = []
    for perm in perms:
        if all(perm[x] == x for x in range(n)):
            continue  # identity never rejects anything
        cells = []
        for i in range(k):
            xi = coords[perm[weights[i]]]
            for j in range(k):
                yj = coords[perm[weights[j]]]
                terms = []
                for a, ca in enumerate(xi):
                    if ca:
                        for b, cb in enumerate(yj):
                            if cb:
                                terms.append((a * k + b, ca * cb))
                cells.append(tuple(terms))
        aut_terms.append(cells)
        aut_inv.append(_invert(perm))

    triples = [(a, b, c) for a in range(k) for b in range(k) for c in range(k)]
    tab: list[int | None] = [None] * (k * k)
    out: list[tuple[int, ...]] = []

    def eval_triple(a, b, c) -> int:
        """0 = not yet evaluable, 1 = holds, 2 = violated."""
        u = tab[a * k + b]
        v = tab[b * k + c]
        if u is None or v is None:
            return 0
        left = 0
        for l, ul in enumerate(coords[u]):
            if ul:
                e = tab[l * k + c]
                if e is None:
                    return 0
                left = add[left][smul[ul % orders[e]][e]]
        right = 0
        for l, vl in enumerate(coords[v]):
            if vl:
                e = tab[a * k + l]
                if e is None:
                    return 0
                right = add[right][smul[vl % orders[e]][e]]
        return 1 if left == right else 2

    def eval_cell(cells, inv, q) -> int:
        """Transformed-table entry at flat position q, or -1 if undetermined."""
        acc = 0
        for pos, coeff in cells[q]:
            e = tab[pos]
            if e is None:
                return -1
            acc = add[acc][smul[coeff % orders[e]][e]]
        return inv[acc]

    total = k * k

    def dfs(p: int, pending: list, live: list):
        if p == total:
            for ai, q in live:
                cells, inv = aut_terms[ai], aut_inv[ai]
                while q < total:
                    val = eval_cell(cells, inv, q)
                    if val != tab[q]:
                        break
                    q += 1
                else:
                    continue
                if val < tab[q]:
                    return
            out.append(tuple(tab))
            return
        for v in candidates[p]:
            tab[p] = v
            new_pending = []
            violated = False
            for t in pending:
                r = eval_triple(*t)
                if r == 2:
                    violated = True
                    break
                if r == 0:
                    new_pending.append(t)
            if violated:
                continue
            new_live = []
            pruned = False
            for ai, q0 in live:
                cells, inv = aut_terms[ai], aut_inv[ai]
                q = q0
                dropped = False
                while q <= p:
                    val = eval_cell(cells, inv, q)
                    if val < 0:
                        break
                    if val < tab[q]:
                        pruned = True
                        break
                    if val > tab[q]:
                        dropped = True
                        break
                    q += 1
                if pruned:
                    break
                if not dropped:
                    new_live.append((ai, q))
            if pruned:
                continue
            dfs(p + 1, new_pending, new_live)
        tab[p] = None

    dfs(0, triples, [(ai, 0) for ai in range(len(aut_terms))])
    return tuple(out)


def _search_task_args(args):
    return _search_task(*args)


def enumerate_rings(invariants: Sequence[int], *, workers: int = 1,
                    ceiling_order: int | None = None,
                    enforce_ceiling: bool = True) -> Iterator[CanonicalRing]:
    """Yield one representative per isomorphism class on this additive type.

    Output order is deterministic (lex order of canonical tables) and
    independent of the worker count; every yielded ring passes validate_ring.
    """
    invs = AdditiveGroup(tuple(invariants)).invariants
    if enforce_ceiling and not is_enumerable(invs, ceiling_order):
        raise CeilingExceededError(
            f"additive type {invs} lies beyond the enumeration ceiling; "
            f"use the named constructors instead"
        )
    if len(invs) > MAX_SEARCH_RANK:
        raise CeilingExceededError(
            f"additive type {invs} has more than {MAX_SEARCH_RANK} generators; "
            f"the raw search space is out of reach"
        )
    if workers > 1 and len(invs) > 0:
        firsts = _cell_candidates(invs)[0]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_search_task_args, [(invs, v) for v in firsts]))
        tables = [t for chunk in chunks for t in chunk]
    else:
        tables = list(_search_task(invs, None))
    group = AdditiveGroup(invs)
    k = group.rank
    for flat in tables:
        table = [list(flat[i * k:(i + 1) * k]) for i in range(k)]
        yield CanonicalRing(validate_ring(group, table))


def count_classes(invariants: Sequence[int], **kw) -> int:
    return sum(1 for _ in enumerate_rings(invariants, **kw))

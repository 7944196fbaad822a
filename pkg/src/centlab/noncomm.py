"""Non-commuting graph analysis: maximal pairwise non-commuting sets,
centralizer covers, and the subgroup-cover index bounds.

Vertices of the non-commuting graph are the non-central elements; edges join
pairs that fail to commute.  The size t of a maximum pairwise non-commuting
set is the clique number of this graph, computed exactly by branch and bound
with a greedy-coloring upper bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    ElementSet,
    FiniteRing,
    cent_structure,
    center,
    full_set,
)
from .errors import NotPairwiseNoncommutingError


@dataclass(frozen=True)
class NoncommGraph:
    """Graph on non-central elements with edges between non-commuting pairs.

    adjacency[i] is a bitmask over vertex *positions* (not element indices);
    vertices maps positions back to element indices, in increasing order.
    """

    vertices: tuple[int, ...]
    adjacency: tuple[int, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def degree(self, position: int) -> int:
        return self.adjacency[position].bit_count()

    def edges(self):
        for i, mask in enumerate(self.adjacency):
            m = mask >> (i + 1) << (i + 1)
            while m:
                low = m & -m
                yield (i, low.bit_length() - 1)
                m ^= low


@dataclass(frozen=True)
class CliqueResult:
    """Maximum pairwise non-commuting set size with its canonical witness.

    The witness is the lexicographically smallest maximum clique, as an
    ascending tuple of element indices.  Commutative rings get t = 1 with
    witness (0,): a singleton is vacuously pairwise non-commuting.
    """

    t: int
    witness: tuple[int, ...]


def noncommuting_graph(ring: FiniteRing) -> NoncommGraph:
    ring._ensure_mul_table()
    z = center(ring)
    vertices = tuple(x for x in ring.elements() if x not in z)
    v = len(vertices)
    adjacency = [0] * v
    for i in range(v):
        xi = vertices[i]
        for j in range(i + 1, v):
            yj = vertices[j]
            if ring._mul(xi, yj) != ring._mul(yj, xi):
                adjacency[i] |= 1 << j
                adjacency[j] |= 1 << i
    return NoncommGraph(vertices, tuple(adjacency))


def _color_order(adjacency, mask):
    """Greedy coloring of the masked vertices.

    Returns (order, bounds) where vertices are grouped by color class and
    bounds[i] is the color number of order[i]; a clique inside the first i+1
    listed vertices has at most bounds[i] members.
    """
    order, bounds = [], []
    color = 0
    while mask:
        color += 1
        avail = mask
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            order.append(v)
            bounds.append(color)
            avail &= ~adjacency[v]
            avail ^= low
            mask ^= low
    return order, bounds


def _max_clique_size(adjacency, mask) -> int:
    best = 0

    def expand(m, size):
        nonlocal best
        if not m:
            if size > best:
                best = size
            return
        order, bounds = _color_order(adjacency, m)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best:
                return
            v = order[i]
            expand(m & adjacency[v], size + 1)
            m &= ~(1 << v)

    expand(mask, 0)
    return best


def _has_clique(adjacency, mask, need) -> bool:
    if need <= 0:
        return True
    if mask.bit_count() < need:
        return False

    def expand(m, remaining) -> bool:
        if remaining == 0:
            return True
        if not m:
            return False
        order, bounds = _color_order(adjacency, m)
        for i in range(len(order) - 1, -1, -1):
            if bounds[i] < remaining:
                return False
            v = order[i]
            if expand(m & adjacency[v], remaining - 1):
                return True
            m &= ~(1 << v)
        return False

    return expand(mask, need)


def max_noncommuting_set(ring: FiniteRing) -> CliqueResult:
    """Exact maximum clique of the non-commuting graph.

    The witness is built greedily: at each step the smallest vertex that
    still extends to a maximum clique is fixed, which yields the
    lexicographically smallest witness.
    """
    graph = noncommuting_graph(ring)
    v = graph.vertex_count
    if v == 0:
        return CliqueResult(1, (0,))
    adjacency = graph.adjacency
    all_mask = (1 << v) - 1
    t = _max_clique_size(adjacency, all_mask)
    chosen = []
    mask = all_mask
    need = t
    while need:
        m = mask
        while m:
            low = m & -m
            cand = low.bit_length() - 1
            if _has_clique(adjacency, mask & adjacency[cand], need - 1):
                chosen.append(cand)
                mask &= adjacency[cand]
                mask >>= cand + 1
                mask <<= cand + 1
                need -= 1
                break
            m ^= low
    return CliqueResult(t, tuple(graph.vertices[c] for c in chosen))


@dataclass(frozen=True)
class BoundCheck:
    """Outcome of one subgroup-cover index bound.

    holds is None whenever the bound's hypotheses are not met (applicable is
    False); such checks are reported but assert nothing.
    """

    name: str
    applicable: bool
    holds: bool | None


@dataclass(frozen=True)
class CoverReport:
    """How the centralizers of a pairwise non-commuting family cover the ring.

    betas lists the indices |R : C(r_i)| in nondecreasing order; d_index is
    |R : D| for D the intersection of the family's centralizers.
    """

    members: tuple[int, ...]
    covers: bool
    intersection_is_center: bool
    irredundant: bool
    betas: tuple[int, ...]
    d_index: int
    bound_checks: tuple[BoundCheck, ...]

    def check(self, name: str) -> BoundCheck:
        for bc in self.bound_checks:
            if bc.name == name:
                return bc
        raise KeyError(name)


def cover_report(ring: FiniteRing, elements) -> CoverReport:
    """Cover/intersection structure of the centralizers of the given family.

    The family must be pairwise non-commuting.  Index bounds are evaluated
    only when their hypotheses hold: the cover bounds need an irredundant
    cover by proper subgroups, the factorial bounds additionally need at
    least three members.
    """
    members = tuple(ring.index_of(x) for x in elements)
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            if ring._mul(x, y) == ring._mul(y, x):
                raise NotPairwiseNoncommutingError(x, y)

    cs = cent_structure(ring)
    sets = [cs.set_of(x) for x in members]
    order = ring.order
    n = len(members)
    z = center(ring)

    union = 0
    inter = (1 << order) - 1
    for s in sets:
        union |= s.mask
        inter &= s.mask
    covers = union == (1 << order) - 1
    intersection_is_center = inter == z.mask

    irredundant = True
    for i in range(n):
        rest = 0
        for j in range(n):
            if j != i:
                rest |= sets[j].mask
        if sets[i].mask & ~rest == 0:
            irredundant = False
            break

    raw_betas = [order // s.size for s in sets]
    betas = tuple(sorted(raw_betas))
    d_size = inter.bit_count()
    d_index = order // d_size if d_size and order % d_size == 0 else 0

    all_proper = all(s.size < order for s in sets)
    checks: list[BoundCheck] = []

    cover_ok = covers and irredundant and all_proper
    app = cover_ok and n >= 2
    checks.append(BoundCheck(
        "alpha2_le_members_minus_1", app,
        (betas[1] <= n - 1) if app else None,
    ))
    app_eq = cover_ok and n >= 3 and betas[1] == n - 1
    checks.append(BoundCheck(
        "index_bound_when_alpha2_equal", app_eq,
        (d_index <= (n - 1) ** 2 * math.factorial(n - 3)) if app_eq else None,
    ))
    app_lt = cover_ok and n >= 3 and betas[1] < n - 1
    checks.append(BoundCheck(
        "index_bound_when_alpha2_smaller", app_lt,
        (d_index <= (n - 2) ** 3 * math.factorial(n - 3)) if app_lt else None,
    ))

    # Minimum-index bound for a cover G = M u H1 u ... u Hk, instantiated at
    # M = the center and at M = each member; the equality case is verified
    # opportunistically whenever it occurs.
    app_m = covers and all_proper and z.size < order
    checks.append(BoundCheck(
        "min_index_le_k[M=center]", app_m,
        (betas[0] <= n) if app_m else None,
    ))
    if app_m and betas[0] == n:
        eq_ok = all(b == n for b in betas) and all(
            sets[i].intersection(sets[j]).issubset(z)
            for i in range(n) for j in range(i + 1, n)
        )
        checks.append(BoundCheck("min_index_eq_k_case[M=center]", True, eq_ok))
    for m_pos in range(n):
        others = [raw_betas[j] for j in range(n) if j != m_pos]
        app_i = covers and all_proper and len(others) >= 1
        k = n - 1
        holds = (min(others) <= k) if app_i else None
        checks.append(BoundCheck(f"min_index_le_k[M=member{m_pos}]", app_i, holds))
        if app_i and min(others) == k:
            eq_ok = all(b == k for b in others) and all(
                sets[i].intersection(sets[j]).issubset(sets[m_pos])
                for i in range(n) for j in range(i + 1, n)
                if i != m_pos and j != m_pos
            )
            checks.append(BoundCheck(f"min_index_eq_k_case[M=member{m_pos}]", True, eq_ok))

    return CoverReport(
        members=members,
        covers=covers,
        intersection_is_center=intersection_is_center,
        irredundant=irredundant,
        betas=betas,
        d_index=d_index,
        bound_checks=tuple(checks),
    )


def pairwise_intersection_is_center(ring: FiniteRing):
    """Whether distinct proper centralizers always meet exactly in the center.

    Returns (True, None) or (False, (r, s)) with a counterexample pair of
    non-central elements whose distinct centralizers meet beyond the center.
    """
    cs = cent_structure(ring)
    z = center(ring)
    proper = cs.proper()
    reps = [None] * cs.n
    for x in ring.elements():
        pos = cs.assignment[x]
        if pos and reps[pos] is None:
            reps[pos] = x
    for i in range(1, cs.n):
        for j in range(i + 1, cs.n):
            meet = cs.centralizers[i].mask & cs.centralizers[j].mask
            if meet != z.mask:
                return False, (reps[i], reps[j])
    return True, None


def all_proper_centralizers_commutative(ring: FiniteRing):
    """Whether every proper centralizer is a commutative subring.

    Returns (True, None) or (False, (x, a, b)) where a, b fail to commute
    inside the centralizer of x.
    """
    cs = cent_structure(ring)
    reps = [None] * cs.n
    for x in ring.elements():
        pos = cs.assignment[x]
        if pos and reps[pos] is None:
            reps[pos] = x
    for pos in range(1, cs.n):
        idxs = list(cs.centralizers[pos].indices())
        for i, a in enumerate(idxs):
            for b in idxs[i + 1:]:
                if ring._mul(a, b) != ring._mul(b, a):
                    return False, (reps[pos], a, b)
    return True, None

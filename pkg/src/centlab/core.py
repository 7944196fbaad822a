"""Finite rings given by additive invariant factors plus generator products.

A ring of additive type (d1, ..., dk) stores only the k*k products of its
additive generators; every other product follows by bilinearity, and
distributivity is automatic.  Elements are addressed by mixed-radix indices
in [0, order) with the first coordinate varying fastest, so index 0 is the
zero element and generator i sits at index d1*...*d(i-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .errors import (
    MalformedTableError,
    NotAssociativeError,
    NotMemberError,
    NotSubgroupError,
    NotSubringError,
    OrderIncompatibleError,
)

# Full multiplication tables are cached only below this order; larger rings
# multiply through the generator expansion every time.
_MUL_TABLE_LIMIT = 256


def _check_invariants(value: Sequence[int]) -> tuple[int, ...]:
    invs = tuple(int(d) for d in value)
    for d in invs:
        if d < 2:
            raise MalformedTableError(f"invariant factors must be >= 2, got {d}")
    for a, b in zip(invs, invs[1:]):
        if b % a:
            raise MalformedTableError(
                f"invariant factors must form a divisibility chain, got {invs}"
            )
    return invs


@dataclass(frozen=True)
class AdditiveGroup:
    """Finite abelian group in invariant-factor form d1 | d2 | ... | dk."""

    invariants: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "invariants", _check_invariants(self.invariants))

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def order(self) -> int:
        return math.prod(self.invariants)

    @property
    def weights(self) -> tuple[int, ...]:
        """Mixed-radix weight of each generator (its element index)."""
        out, w = [], 1
        for d in self.invariants:
            out.append(w)
            w *= d
        return tuple(out)

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.invariants):
            raise MalformedTableError(
                f"expected {len(self.invariants)} coordinates, got {len(coords)}"
            )
        idx = 0
        for w, d, c in zip(self.weights, self.invariants, coords):
            if not 0 <= c < d:
                raise MalformedTableError(f"coordinate {c} out of range [0, {d})")
            idx += w * c
        return idx

    def decode(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.order:
            raise MalformedTableError(f"element index {index} out of range")
        coords = []
        for d in self.invariants:
            index, c = divmod(index, d)
            coords.append(c)
        return tuple(coords)

    def element(self, index: int) -> "RingElement":
        return RingElement(self.decode(index), index)


@dataclass(frozen=True)
class RingElement:
    """An element as its coordinate vector together with its index."""

    coords: tuple[int, ...]
    index: int


ElementLike = Union[int, RingElement]


class FiniteRing:
    """A validated finite ring; immutable once constructed.

    Build instances through :func:`validate_ring` (or the named constructors
    in :mod:`centlab.constructors`); the constructor itself performs the full
    order-compatibility and generator-associativity checks.
    """

    __slots__ = (
        "group", "sc", "label",
        "_invs", "_order", "_weights", "_coords",
        "_mul_table", "_center_mask", "_cent", "_commutative", "_unity",
    )

    def __init__(self, group, sc, label: str | None = None):
        if not isinstance(group, AdditiveGroup):
            group = AdditiveGroup(tuple(group))
        k = group.rank
        n = group.order
        if not isinstance(sc, (list, tuple)) or len(sc) != k:
            raise MalformedTableError(f"structure-constant table must have {k} rows")
        rows = []
        for row in sc:
            if not isinstance(row, (list, tuple)) or len(row) != k:
                raise MalformedTableError(f"each table row must have {k} entries")
            entries = []
            for e in row:
                if not isinstance(e, int) or isinstance(e, bool) or not 0 <= e < n:
                    raise MalformedTableError(
                        f"table entry {e!r} is not an element index in [0, {n})"
                    )
                entries.append(e)
            rows.append(tuple(entries))

        self.group = group
        self.sc = tuple(rows)
        self.label = label
        self._invs = group.invariants
        self._order = n
        self._weights = group.weights
        self._coords = tuple(group.decode(i) for i in range(n))
        self._mul_table = None
        self._center_mask = None
        self._cent = None
        self._commutative = None
        self._unity = -2

        invs = self._invs
        for i in range(k):
            for j in range(k):
                if math.gcd(invs[i], invs[j]) % self._ord(self.sc[i][j]):
                    raise OrderIncompatibleError(i, j)
        w = self._weights
        for a in range(k):
            for b in range(k):
                u = self.sc[a][b]
                for c in range(k):
                    left = self._mul(u, w[c])
                    right = self._mul(w[a], self.sc[b][c])
                    if left != right:
                        raise NotAssociativeError(a, b, c, left, right)

    # -- basic data ---------------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @property
    def invariants(self) -> tuple[int, ...]:
        return self._invs

    @property
    def generators(self) -> tuple[int, ...]:
        """Element indices of the additive generators."""
        return self._weights

    def elements(self) -> range:
        return range(self._order)

    def element(self, x: ElementLike) -> RingElement:
        return self.group.element(self.index_of(x))

    def index_of(self, x: ElementLike) -> int:
        if isinstance(x, RingElement):
            x = x.index
        if not isinstance(x, int) or not 0 <= x < self._order:
            raise MalformedTableError(f"{x!r} is not an element of this ring")
        return x

    def with_label(self, label: str | None) -> "FiniteRing":
        out = FiniteRing.__new__(FiniteRing)
        for slot in FiniteRing.__slots__:
            object.__setattr__(out, slot, getattr(self, slot))
        object.__setattr__(out, "label", label)
        return out

    def __repr__(self):
        name = self.label or "ring"
        return f"<FiniteRing {name} additive={'x'.join(map(str, self._invs)) or '1'}>"

    # -- fast internal arithmetic (unchecked indices) -----------------------

    def _add(self, x: int, y: int) -> int:
        idx = 0
        for w, d, a, b in zip(self._weights, self._invs, self._coords[x], self._coords[y]):
            s = a + b
            if s >= d:
                s -= d
            idx += w * s
        return idx

    def _neg(self, x: int) -> int:
        idx = 0
        for w, d, a in zip(self._weights, self._invs, self._coords[x]):
            if a:
                idx += w * (d - a)
        return idx

    def _smul(self, n: int, x: int) -> int:
        idx = 0
        for w, d, a in zip(self._weights, self._invs, self._coords[x]):
            idx += w * ((n * a) % d)
        return idx

    def _ord(self, x: int) -> int:
        o = 1
        for d, a in zip(self._invs, self._coords[x]):
            q = d // math.gcd(d, a)
            o = o * q // math.gcd(o, q)
        return o

    def _mul(self, x: int, y: int) -> int:
        mt = self._mul_table
        if mt is not None:
            return mt[x][y]
        acc = 0
        sc = self.sc
        cy = self._coords[y]
        for i, xi in enumerate(self._coords[x]):
            if xi:
                row = sc[i]
                for j, yj in enumerate(cy):
                    if yj:
                        acc = self._add(acc, self._smul(xi * yj, row[j]))
        return acc

    def _ensure_mul_table(self):
        if self._mul_table is None and self._order <= _MUL_TABLE_LIMIT:
            n = self._order
            self._mul_table = tuple(
                tuple(self._mul(x, y) for y in range(n)) for x in range(n)
            )

    # -- public arithmetic ---------------------------------------------------

    def add(self, x: ElementLike, y: ElementLike) -> int:
        return self._add(self.index_of(x), self.index_of(y))

    def neg(self, x: ElementLike) -> int:
        return self._neg(self.index_of(x))

    def sub(self, x: ElementLike, y: ElementLike) -> int:
        return self._add(self.index_of(x), self._neg(self.index_of(y)))

    def smul(self, n: int, x: ElementLike) -> int:
        """Additive scalar multiple n*x."""
        return self._smul(n, self.index_of(x))

    def mul(self, x: ElementLike, y: ElementLike) -> int:
        return self._mul(self.index_of(x), self.index_of(y))

    def additive_order(self, x: ElementLike) -> int:
        return self._ord(self.index_of(x))

    def commutes(self, x: ElementLike, y: ElementLike) -> bool:
        xi, yi = self.index_of(x), self.index_of(y)
        return self._mul(xi, yi) == self._mul(yi, xi)

    @property
    def is_commutative(self) -> bool:
        if self._commutative is None:
            k = self.group.rank
            self._commutative = all(
                self.sc[i][j] == self.sc[j][i] for i in range(k) for j in range(i)
            )
        return self._commutative

    def unity(self) -> int | None:
        """Index of the multiplicative identity, or None when there is none."""
        if self._unity == -2:
            found = None
            gens = self._weights
            for e in range(self._order):
                if all(self._mul(e, g) == g and self._mul(g, e) == g for g in gens):
                    found = e
                    break
            self._unity = -1 if found is None else found
        return None if self._unity == -1 else self._unity

    @property
    def is_unital(self) -> bool:
        return self.unity() is not None


def validate_ring(group, sc, label: str | None = None) -> FiniteRing:
    """Check a structure-constant table and return the ring it defines.

    Raises MalformedTableError, OrderIncompatibleError or NotAssociativeError
    when the table cannot define a ring; otherwise the returned ring is
    immutable and its multiplication is the bilinear extension of the table.
    """
    return FiniteRing(group, sc, label)


class ElementSet:
    """A set of ring elements stored as a bitmask over element indices.

    Equality and hashing compare the underlying set only; the subgroup and
    subring flags are metadata stating which closure properties the producer
    guarantees.
    """

    __slots__ = ("universe", "mask", "as_subgroup", "as_subring", "_size")

    def __init__(self, universe: int, mask: int, *,
                 as_subgroup: bool = False, as_subring: bool = False):
        if mask < 0 or mask >> universe:
            raise MalformedTableError("membership mask exceeds the element range")
        self.universe = universe
        self.mask = mask
        self.as_subgroup = as_subgroup
        self.as_subring = as_subring
        self._size = mask.bit_count()

    @classmethod
    def from_indices(cls, universe: int, indices, **flags) -> "ElementSet":
        mask = 0
        for i in indices:
            if not 0 <= i < universe:
                raise MalformedTableError(f"index {i} out of range [0, {universe})")
            mask |= 1 << i
        return cls(universe, mask, **flags)

    @property
    def size(self) -> int:
        return self._size

    def __len__(self) -> int:
        return self._size

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.universe and bool(self.mask >> index & 1)

    def indices(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def _match(self, other: "ElementSet"):
        if self.universe != other.universe:
            raise MalformedTableError("element sets belong to different rings")

    def intersection(self, other: "ElementSet") -> "ElementSet":
        self._match(other)
        return ElementSet(
            self.universe, self.mask & other.mask,
            as_subgroup=self.as_subgroup and other.as_subgroup,
            as_subring=self.as_subring and other.as_subring,
        )

    def union(self, other: "ElementSet") -> "ElementSet":
        self._match(other)
        return ElementSet(self.universe, self.mask | other.mask)

    def issubset(self, other: "ElementSet") -> bool:
        self._match(other)
        return self.mask & ~other.mask == 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ElementSet)
            and self.universe == other.universe
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.universe, self.mask))

    def __repr__(self):
        shown = [str(i) for _, i in zip(range(8), self.indices())]
        if self._size > 8:
            shown.append("...")
        return f"<ElementSet {{{', '.join(shown)}}} size={self._size}/{self.universe}>"


def full_set(ring: FiniteRing) -> ElementSet:
    n = ring.order
    return ElementSet(n, (1 << n) - 1, as_subgroup=True, as_subring=True)


@dataclass(frozen=True)
class CentStructure:
    """The distinct centralizers of a ring plus the element assignment.

    centralizers[0] is the whole ring (the centralizer of central elements);
    later entries are the proper centralizers in order of first appearance
    when scanning element indices upward.  assignment[x] is the position of
    the centralizer of element x.
    """

    centralizers: tuple[ElementSet, ...]
    assignment: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.centralizers)

    def proper(self) -> tuple[ElementSet, ...]:
        return self.centralizers[1:]

    def set_of(self, x: int) -> ElementSet:
        return self.centralizers[self.assignment[x]]


def center(ring: FiniteRing) -> ElementSet:
    """The subring of elements commuting with everything.

    An element is central exactly when it commutes with every additive
    generator, because the commutator is additive in each argument.
    """
    if ring._center_mask is None:
        ring._ensure_mul_table()
        gens = ring.generators
        mask = 0
        for s in range(ring.order):
            if all(ring._mul(s, g) == ring._mul(g, s) for g in gens):
                mask |= 1 << s
        ring._center_mask = mask
    return ElementSet(ring.order, ring._center_mask,
                      as_subgroup=True, as_subring=True)


def _centralizer_mask(ring: FiniteRing, x: int) -> int:
    mask = 0
    for y in range(ring.order):
        if ring._mul(x, y) == ring._mul(y, x):
            mask |= 1 << y
    return mask


def centralizer(ring: FiniteRing, x: ElementLike) -> ElementSet:
    """The subring of elements commuting with x; equals R iff x is central."""
    ring._ensure_mul_table()
    mask = _centralizer_mask(ring, ring.index_of(x))
    return ElementSet(ring.order, mask, as_subgroup=True, as_subring=True)


def centralizer_in(ring: FiniteRing, inside: ElementSet, x: ElementLike) -> ElementSet:
    """The elements of a subring that commute with a member x of it."""
    if not inside.as_subring:
        raise NotSubringError("centralizer_in needs a set flagged as a subring")
    xi = ring.index_of(x)
    if xi not in inside:
        raise NotMemberError(f"element {xi} lies outside the given subring")
    return centralizer(ring, xi).intersection(inside)


def cent_structure(ring: FiniteRing) -> CentStructure:
    """All distinct centralizers with the element-to-centralizer assignment.

    Centralizers are constant on cosets of the center, so only one
    centralizer scan per coset is performed.
    """
    if ring._cent is not None:
        return ring._cent
    ring._ensure_mul_table()
    n = ring.order
    z = center(ring)
    z_elems = list(z.indices())
    sets = [full_set(ring)]
    pos_of_mask = {sets[0].mask: 0}
    coset_pos: dict[int, int] = {}
    assignment = [0] * n
    for x in range(n):
        if x in z:
            continue
        rep = min(ring._add(x, s) for s in z_elems)
        pos = coset_pos.get(rep)
        if pos is None:
            mask = _centralizer_mask(ring, x)
            pos = pos_of_mask.get(mask)
            if pos is None:
                pos = len(sets)
                sets.append(ElementSet(n, mask, as_subgroup=True, as_subring=True))
                pos_of_mask[mask] = pos
            coset_pos[rep] = pos
        assignment[x] = pos
    ring._cent = CentStructure(tuple(sets), tuple(assignment))
    return ring._cent


def _require_subgroup(ring: FiniteRing, subset: ElementSet):
    if subset.universe != ring.order:
        raise MalformedTableError("element set belongs to a different ring")
    if not subset.as_subgroup:
        raise NotSubgroupError("operation needs a set flagged as an additive subgroup")
    if subset.size == 0 or ring.order % subset.size:
        raise NotSubgroupError("set size does not divide the ring order")


def additive_index(ring: FiniteRing, subset: ElementSet) -> int:
    """The index |R : S| of an additive subgroup S."""
    _require_subgroup(ring, subset)
    return ring.order // subset.size


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _invariant_factors(reps: list[int], add_fn, order_fn=None) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group given by coset reps.

    Repeatedly extracts an element of maximal order (the largest invariant
    factor) and recurses on the quotient by the cyclic subgroup it generates.
    """
    size = len(reps)
    if size == 1:
        return ()
    zero = reps[0]
    if order_fn is None:
        def order_fn(x):
            o, acc = 1, x
            while acc != zero:
                acc = add_fn(acc, x)
                o += 1
            return o
    best, best_o = zero, 1
    for x in reps:
        o = order_fn(x)
        if o > best_o:
            best, best_o = x, o
    if best_o == size:
        return (size,)
    cyc = []
    acc = zero
    while True:
        cyc.append(acc)
        acc = add_fn(acc, best)
        if acc == zero:
            break
    rep2: dict[int, int] = {}
    reps2 = []
    for x in reps:
        if x in rep2:
            continue
        for s in cyc:
            rep2[add_fn(x, s)] = x
        reps2.append(x)

    def add2(a, b):
        return rep2[add_fn(a, b)]

    return _invariant_factors(reps2, add2) + (best_o,)


def quotient_invariants(ring: FiniteRing, subset: ElementSet) -> tuple[int, ...]:
    """Canonical invariant factors of the additive quotient group R/S.

    Returns the empty tuple for the trivial quotient.
    """
    _require_subgroup(ring, subset)
    n = ring.order
    if subset.size == n:
        return ()
    members = list(subset.indices())
    rep = [-1] * n
    reps = []
    for x in range(n):
        if rep[x] >= 0:
            continue
        for s in members:
            rep[ring._add(x, s)] = x
        reps.append(x)

    def qadd(a, b):
        return rep[ring._add(a, b)]

    def qorder(x):
        for j in _divisors(ring._ord(x)):
            if ring._smul(j, x) in subset:
                return j
        return ring._ord(x)

    return _invariant_factors(reps, qadd, qorder)


def is_quotient_cyclic(ring: FiniteRing, subset: ElementSet) -> bool:
    """True when R/S needs at most one generator (trivial counts as cyclic)."""
    return len(quotient_invariants(ring, subset)) <= 1


def is_additive_subgroup(ring: FiniteRing, subset: ElementSet) -> bool:
    """Closure check: contains 0, closed under addition and negation."""
    if 0 not in subset:
        return False
    idxs = list(subset.indices())
    for x in idxs:
        if ring._neg(x) not in subset:
            return False
        for y in idxs:
            if ring._add(x, y) not in subset:
                return False
    return True


def is_subring(ring: FiniteRing, subset: ElementSet) -> bool:
    """Closure check: additive subgroup also closed under multiplication."""
    if not is_additive_subgroup(ring, subset):
        return False
    idxs = list(subset.indices())
    return all(ring._mul(x, y) in subset for x in idxs for y in idxs)

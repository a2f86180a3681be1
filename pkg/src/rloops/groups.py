"""Exact finite-group arithmetic over Cayley tables.

Groups are immutable tables of element indices 0..n-1 with the identity
always at index 0.  Everything downstream (cosets, cores, quotients,
derived series, isomorphism search) works on these indices, so all results
are exact and deterministic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from . import perms
from .errors import (
    CapExceeded,
    InvalidSubgroup,
    MalformedTable,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotNormal,
)

Table = tuple[tuple[int, ...], ...]

DEFAULT_ORDER_CAP = 120
DEFAULT_SUBGROUP_ENUM_CAP = 48


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its Cayley table; identity is index 0."""

    table: Table

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def elements(self) -> range:
        return range(len(self.table))

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        out = [0] * len(self.table)
        for i, row in enumerate(self.table):
            out[i] = row.index(0)
        return tuple(out)

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        return tuple(element_order(self, x) for x in self.elements())

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        n = len(t)
        return all(t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n))


@dataclass(frozen=True)
class SubgroupRef:
    """A subgroup of a parent group, stored as a sorted element-index tuple."""

    parent: FiniteGroup
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.member_set

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.elements)


@dataclass(frozen=True)
class ElementSet:
    """An arbitrary sorted set of element indices within a parent group."""

    parent: FiniteGroup
    elements: tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in set(self.elements)


def _as_table(table: Sequence[Sequence[int]]) -> Table:
    rows = [tuple(int(x) for x in row) for row in table]
    n = len(rows)
    if n == 0:
        raise MalformedTable("empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise MalformedTable(f"row {i} has length {len(row)}, expected {n}")
        for x in row:
            if not 0 <= x < n:
                raise MalformedTable(f"entry {x} in row {i} out of range 0..{n - 1}")
    return tuple(rows)


def validate_group(table: Sequence[Sequence[int]]) -> FiniteGroup:
    """Check the full group axioms and return the validated group.

    Errors name the first witness in lexicographic scan order:
    MalformedTable, then NotAssociative(i,j,k), NoIdentity, NoInverse(i).
    """
    t = _as_table(table)
    n = len(t)
    for i in range(n):
        ti = t[i]
        for j in range(n):
            tij = t[ti[j]]
            tj = t[j]
            for k in range(n):
                if tij[k] != ti[tj[k]]:
                    raise NotAssociative(i, j, k)
    for j in range(n):
        if t[0][j] != j:
            raise NoIdentity(f"row 0 is not the identity at column {j}")
    for i in range(n):
        if t[i][0] != i:
            raise NoIdentity(f"column 0 is not the identity at row {i}")
    for i in range(n):
        if 0 not in t[i]:
            raise NoInverse(i)
        j = t[i].index(0)
        if t[j][i] != 0:
            raise NoInverse(i)
    return FiniteGroup(t)


def element_order(g: FiniteGroup, x: int) -> int:
    k, cur = 1, x
    while cur != 0:
        cur = g.table[cur][x]
        k += 1
    return k


# ---------------------------------------------------------------------------
# constructors


def cyclic(n: int, *, max_order: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1 or n > max_order:
        raise CapExceeded(f"cyclic order {n} outside 1..{max_order}")
    return validate_group([[(i + j) % n for j in range(n)] for i in range(n)])


def dihedral(n: int, *, max_order: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Dihedral group of order 2n (symmetries of the n-gon for n >= 3)."""
    if n < 1 or 2 * n > max_order:
        raise CapExceeded(f"dihedral order {2 * n} outside 2..{max_order}")

    def idx(rot: int, flip: int) -> int:
        return rot % n + n * (flip % 2)

    table = []
    for a in range(2 * n):
        i, j = a % n, a // n
        row = []
        for b in range(2 * n):
            k, l = b % n, b // n
            row.append(idx(i - k if j else i + k, j + l))
        table.append(row)
    return validate_group(table)


def symmetric(n: int, *, max_order: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1 or math.factorial(n) > max_order:
        raise CapExceeded(f"symmetric({n}) order {math.factorial(n)} exceeds {max_order}")
    elems = list(itertools.permutations(range(n)))  # identity sorts first
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[perms.compose(p, q)] for q in elems] for p in elems]
    return validate_group(table)


_QUAT_UNITS = (
    ((0, 0), (1, 0), (2, 0), (3, 0)),
    ((1, 0), (0, 1), (3, 0), (2, 1)),
    ((2, 0), (3, 1), (0, 1), (1, 0)),
    ((3, 0), (2, 0), (1, 1), (0, 1)),
)


def quaternion8() -> FiniteGroup:
    """The quaternion group {1, i, j, k, -1, -i, -j, -k} as indices 0..7."""

    def mul(a: int, b: int) -> int:
        ua, sa = a % 4, a // 4
        ub, sb = b % 4, b // 4
        ur, flip = _QUAT_UNITS[ua][ub]
        return ur + 4 * ((sa + sb + flip) % 2)

    return validate_group([[mul(a, b) for b in range(8)] for a in range(8)])


def direct_product(
    g1: FiniteGroup, g2: FiniteGroup, *, max_order: int = DEFAULT_ORDER_CAP
) -> FiniteGroup:
    n1, n2 = g1.order, g2.order
    if n1 * n2 > max_order:
        raise CapExceeded(f"direct product order {n1 * n2} exceeds {max_order}")
    table = []
    for a1 in range(n1):
        for b1 in range(n2):
            row = []
            for a2 in range(n1):
                for b2 in range(n2):
                    row.append(g1.table[a1][a2] * n2 + g2.table[b1][b2])
            table.append(row)
    return validate_group(table)


def permutation_group(
    generators: Iterable[perms.Perm], *, max_order: int = DEFAULT_ORDER_CAP
) -> tuple[FiniteGroup, tuple[perms.Perm, ...]]:
    """Close generators under composition and relabel to a Cayley table.

    Elements are sorted lexicographically, which puts the identity at
    index 0.  Returns the group together with the sorted permutations, so
    callers can translate indices back to maps.
    """
    elems = perms.close_under_composition(generators, cap=max_order)
    if len(elems) > max_order:
        raise CapExceeded(f"closure of order {len(elems)} exceeds {max_order}")
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[perms.compose(p, q)] for q in elems] for p in elems]
    return validate_group(table), tuple(elems)


def from_permutations(
    generators: Iterable[perms.Perm], *, max_order: int = DEFAULT_ORDER_CAP
) -> FiniteGroup:
    return permutation_group(generators, max_order=max_order)[0]


# ---------------------------------------------------------------------------
# subgroups and cosets


def subgroup(g: FiniteGroup, elements: Iterable[int]) -> SubgroupRef:
    """Wrap an element set as a subgroup, verifying closure and inverses."""
    elems = sorted(set(elements) | {0})
    member = set(elems)
    for x in elems:
        if not 0 <= x < g.order:
            raise InvalidSubgroup(f"element {x} out of range")
    for x in elems:
        if g.inverses[x] not in member:
            raise InvalidSubgroup(f"inverse of {x} missing")
        for y in elems:
            if g.table[x][y] not in member:
                raise InvalidSubgroup(f"product {x}*{y} escapes the set")
    if g.order % len(elems) != 0:
        raise InvalidSubgroup("cardinality does not divide the group order")
    return SubgroupRef(g, tuple(elems))


def subgroup_closure(g: FiniteGroup, seed: Iterable[int]) -> SubgroupRef:
    """Smallest subgroup containing the seed (and always the identity)."""
    table = g.table
    members = {0}
    frontier = [0]
    for x in set(seed):
        if x not in members:
            members.add(x)
            frontier.append(x)
    while frontier:
        nxt = []
        for a in frontier:
            row = table[a]
            for b in tuple(members):
                for p in (row[b], table[b][a]):
                    if p not in members:
                        members.add(p)
                        nxt.append(p)
        frontier = nxt
    return SubgroupRef(g, tuple(sorted(members)))


def all_subgroups(
    g: FiniteGroup, *, max_order: int = DEFAULT_SUBGROUP_ENUM_CAP
) -> list[SubgroupRef]:
    """Every subgroup exactly once, sorted by (order, elements).

    Breadth-first closure: extend each known subgroup by one new element
    and close, deduplicating by element tuple.
    """
    if g.order > max_order:
        raise CapExceeded(f"group order {g.order} exceeds enumeration cap {max_order}")
    trivial = (0,)
    found = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for elems in frontier:
            member = set(elems)
            for x in g.elements():
                if x in member:
                    continue
                closed = subgroup_closure(g, elems + (x,)).elements
                if closed not in found:
                    found.add(closed)
                    nxt.append(closed)
        frontier = nxt
    return [SubgroupRef(g, e) for e in sorted(found, key=lambda e: (len(e), e))]


def right_cosets(g: FiniteGroup, h: SubgroupRef) -> tuple[tuple[int, ...], ...]:
    """Partition into right cosets Hx; H first, the rest by minimal element."""
    n = g.order
    seen = [False] * n
    out = []
    for x in range(n):
        if seen[x]:
            continue
        coset = sorted(g.table[a][x] for a in h.elements)
        for y in coset:
            seen[y] = True
        out.append(tuple(coset))
    return tuple(out)


def coset_lookup(g: FiniteGroup, h: SubgroupRef) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Right cosets plus the element -> coset-index map."""
    cosets = right_cosets(g, h)
    coset_of = [0] * g.order
    for i, coset in enumerate(cosets):
        for x in coset:
            coset_of[x] = i
    return cosets, tuple(coset_of)


def core(g: FiniteGroup, h: SubgroupRef) -> SubgroupRef:
    """Intersection of all conjugates of h; trivial iff h is core-free."""
    table, inv = g.table, g.inverses
    members = set(h.elements)
    for x in g.elements():
        xi = inv[x]
        members &= {table[table[x][a]][xi] for a in h.elements}
        if len(members) == 1:
            break
    return SubgroupRef(g, tuple(sorted(members)))


def is_core_free(g: FiniteGroup, h: SubgroupRef) -> bool:
    return core(g, h).order == 1


def is_normal(g: FiniteGroup, n: SubgroupRef) -> bool:
    table, inv = g.table, g.inverses
    member = n.member_set
    for x in g.elements():
        xi = inv[x]
        for a in n.elements:
            if table[table[x][a]][xi] not in member:
                return False
    return True


def set_product(g: FiniteGroup, a: Iterable[int], b: Iterable[int]) -> ElementSet:
    """The literal element-set product {x*y : x in a, y in b}."""
    table = g.table
    bs = tuple(b)
    out = {table[x][y] for x in a for y in bs}
    return ElementSet(g, tuple(sorted(out)))


def derived_subgroup(g: FiniteGroup, within: Optional[SubgroupRef] = None) -> SubgroupRef:
    """Closure of all commutators x'y'xy, optionally inside a subgroup."""
    table, inv = g.table, g.inverses
    domain = within.elements if within is not None else range(g.order)
    comms = set()
    for x in domain:
        xi = inv[x]
        for y in domain:
            comms.add(table[table[table[xi][inv[y]]][x]][y])
    return subgroup_closure(g, comms)


def derived_series(g: FiniteGroup) -> list[SubgroupRef]:
    """G >= G' >= G'' >= ... until the series stabilizes."""
    series = [SubgroupRef(g, tuple(g.elements()))]
    while True:
        nxt = derived_subgroup(g, within=series[-1])
        if nxt.elements == series[-1].elements:
            break
        series.append(nxt)
        if nxt.order == 1:
            break
    return series


def is_solvable_group(g: FiniteGroup) -> bool:
    return derived_series(g)[-1].order == 1


def quotient_group(g: FiniteGroup, n: SubgroupRef) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Quotient by a normal subgroup, plus the element -> coset projection."""
    if not is_normal(g, n):
        raise NotNormal(f"subgroup {n.elements} is not normal")
    cosets, proj = coset_lookup(g, n)
    reps = [c[0] for c in cosets]
    table = [[proj[g.table[a][b]] for b in reps] for a in reps]
    return validate_group(table), proj


def subgroup_as_group(g: FiniteGroup, h: SubgroupRef) -> tuple[FiniteGroup, tuple[int, ...]]:
    """The subgroup as a standalone group plus its index map into g."""
    elems = h.elements
    pos = {x: i for i, x in enumerate(elems)}
    table = [[pos[g.table[a][b]] for b in elems] for a in elems]
    return validate_group(table), elems


def is_elementary_abelian_2(obj: FiniteGroup | SubgroupRef) -> bool:
    """True iff every element squares to the identity.

    Exponent <= 2 forces commutativity; it is asserted as a consistency
    check rather than assumed.
    """
    if isinstance(obj, SubgroupRef):
        g, elems = obj.parent, obj.elements
    else:
        g, elems = obj, tuple(obj.elements())
    if any(g.table[x][x] != 0 for x in elems):
        return False
    for x in elems:
        for y in elems:
            if g.table[x][y] != g.table[y][x]:
                raise AssertionError("exponent-2 set fails commutativity")
    return True


# ---------------------------------------------------------------------------
# isomorphism


def _generating_sequence(g: FiniteGroup) -> list[int]:
    """Greedy small generating sequence (maximal closure growth per pick)."""
    gens: list[int] = []
    closed = {0}
    while len(closed) < g.order:
        best, best_size = -1, -1
        for x in g.elements():
            if x in closed:
                continue
            size = len(subgroup_closure(g, gens + [x]).elements)
            if size > best_size:
                best, best_size = x, size
        gens.append(best)
        closed = set(subgroup_closure(g, gens).elements)
    return gens


def _word_schedule(g: FiniteGroup, gens: Sequence[int]) -> list[tuple[int, int, int]]:
    """BFS schedule (new, known, gen_index): new = known * gens[gen_index]."""
    schedule = []
    seen = [False] * g.order
    seen[0] = True
    order_ = [0]
    for e in order_:
        for gi, x in enumerate(gens):
            ne = g.table[e][x]
            if not seen[ne]:
                seen[ne] = True
                schedule.append((ne, e, gi))
                order_.append(ne)
    return schedule


def find_isomorphism(
    g1: FiniteGroup, g2: FiniteGroup, *, max_order: int = DEFAULT_ORDER_CAP
) -> Optional[tuple[int, ...]]:
    """A product-preserving bijection g1 -> g2, or None.

    Backtracking over images of a generating sequence, pruned by the
    element-order multiset.
    """
    n = g1.order
    if n != g2.order:
        return None
    if n > max_order:
        raise CapExceeded(f"isomorphism search above cap {max_order}")
    if sorted(g1.element_orders) != sorted(g2.element_orders):
        return None

    gens = _generating_sequence(g1)
    schedule = _word_schedule(g1, gens)
    t1, t2 = g1.table, g2.table
    candidates = [
        [y for y in range(n) if g2.element_orders[y] == g1.element_orders[x]]
        for x in gens
    ]
    for images in itertools.product(*candidates):
        phi = [-1] * n
        phi[0] = 0
        used = 1  # bitmask of hit targets
        ok = True
        for new, known, gi in schedule:
            v = t2[phi[known]][images[gi]]
            bit = 1 << v
            if used & bit:
                ok = False
                break
            used |= bit
            phi[new] = v
        if not ok:
            continue
        for a in range(n):
            ra, pa = t1[a], phi[a]
            for b in range(n):
                if phi[ra[b]] != t2[pa][phi[b]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return tuple(phi)
    return None


def is_isomorphic(
    g1: FiniteGroup, g2: FiniteGroup, *, max_order: int = DEFAULT_ORDER_CAP
) -> bool:
    return find_isomorphism(g1, g2, max_order=max_order) is not None

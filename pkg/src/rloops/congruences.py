"""Congruences on right loops: closure, invariant subloops, quotients,
the smallest group / abelian-group congruences and the derived series.

A congruence is an equivalence relation that is also a sub right loop of
S x S, i.e. compatible with the operation and with right division.  Its
identity class is an invariant sub right loop; quotients by congruences
are again right loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import CapExceeded, NotInvariant
from .loops import RightLoop, validate_right_loop

INVARIANT_ENUM_CAP = 32


@dataclass(frozen=True)
class Congruence:
    """A congruence stored as its canonical partition.

    Classes are sorted by minimal element, so the identity class is always
    first; this is also the serialization order used in reports.
    """

    loop: RightLoop
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    @property
    def is_discrete(self) -> bool:
        return len(self.classes) == self.loop.order

    @property
    def is_full(self) -> bool:
        return len(self.classes) == 1


@dataclass(frozen=True)
class InvariantSubloop:
    """The identity class of some congruence, kept with its loop."""

    loop: RightLoop
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def _canonical(loop: RightLoop, class_of: Sequence[int]) -> Congruence:
    buckets: dict[int, list[int]] = {}
    for x, c in enumerate(class_of):
        buckets.setdefault(c, []).append(x)
    classes = tuple(tuple(b) for b in sorted(buckets.values(), key=lambda b: b[0]))
    lookup = [0] * len(class_of)
    for i, cls in enumerate(classes):
        for x in cls:
            lookup[x] = i
    return Congruence(loop, classes, tuple(lookup))


def congruence_closure(s: RightLoop, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Smallest congruence identifying the given pairs.

    Union-find plus a worklist: every merged pair (a, b) is replayed
    against every element u through the four compatibility rules
    a∘u ~ b∘u, u∘a ~ u∘b, a/u ~ b/u and u/a ~ u/b, until fixpoint.
    Transitivity then extends the rules to merged pairs on both sides.
    """
    n = s.order
    t = s.table
    d = s.division
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    stack: list[tuple[int, int]] = []

    def merge(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            stack.append((a, b))

    for a, b in pairs:
        merge(a, b)
    while stack:
        a, b = stack.pop()
        ta, tb = t[a], t[b]
        da, db = d[a], d[b]
        for u in range(n):
            merge(ta[u], tb[u])
            merge(t[u][a], t[u][b])
            merge(d[u][a], d[u][b])
            merge(da[u], db[u])
    return _canonical(s, [find(x) for x in range(n)])


def discrete_congruence(s: RightLoop) -> Congruence:
    return _canonical(s, list(range(s.order)))


def full_congruence(s: RightLoop) -> Congruence:
    return _canonical(s, [0] * s.order)


def congruence_witness(s: RightLoop, class_of: Sequence[int]) -> Optional[dict]:
    """First violated congruence condition for a partition, or None.

    Checks the unary form of compatibility (pair against every element);
    with transitivity this is equivalent to the binary form.
    """
    n = s.order
    t, d = s.table, s.division
    counts: dict[int, int] = {}
    for c in class_of:
        counts[c] = counts.get(c, 0) + 1
    if len(set(counts.values())) > 1:
        return {"rule": "equal-class-sizes", "sizes": sorted(set(counts.values()))}
    for a in range(n):
        for b in range(a + 1, n):
            if class_of[a] != class_of[b]:
                continue
            for u in range(n):
                checks = (
                    ("compat-right", t[a][u], t[b][u]),
                    ("compat-left", t[u][a], t[u][b]),
                    ("division-right", d[u][a], d[u][b]),
                    ("division-left", d[a][u], d[b][u]),
                )
                for rule, x, y in checks:
                    if class_of[x] != class_of[y]:
                        return {"rule": rule, "pair": (a, b), "element": u}
    return None


def congruence_from_partition(
    s: RightLoop, blocks: Iterable[Iterable[int]]
) -> Congruence:
    """Wrap an explicit partition, verifying the congruence conditions."""
    class_of = [-1] * s.order
    for i, block in enumerate(blocks):
        for x in block:
            if class_of[x] != -1:
                raise NotInvariant(f"element {x} occurs in two blocks")
            class_of[x] = i
    if -1 in class_of:
        raise NotInvariant(f"element {class_of.index(-1)} missing from partition")
    witness = congruence_witness(s, class_of)
    if witness is not None:
        raise NotInvariant(f"partition is not a congruence: {witness}", witness)
    return _canonical(s, class_of)


def identity_class(r: Congruence) -> InvariantSubloop:
    cls = r.classes[0]
    assert 0 in cls
    _check_subloop(r.loop, cls)
    return InvariantSubloop(r.loop, cls)


def _check_subloop(s: RightLoop, elems: Sequence[int]) -> None:
    member = set(elems)
    for a in elems:
        for b in elems:
            if s.table[a][b] not in member:
                raise NotInvariant(
                    f"{a}∘{b} escapes the set", {"rule": "closure", "pair": (a, b)}
                )
            if s.division[a][b] not in member:
                raise NotInvariant(
                    f"solution of X∘{a}={b} escapes the set",
                    {"rule": "division", "pair": (a, b)},
                )


def invariance_witness(s: RightLoop, elems: Iterable[int]) -> Optional[dict]:
    """None if the set is an invariant sub right loop, else a witness."""
    elems = tuple(sorted(set(elems)))
    if not elems or elems[0] != 0:
        return {"rule": "identity-missing"}
    try:
        _check_subloop(s, elems)
    except NotInvariant as e:
        return e.witness
    member = set(elems)
    class_of = [-1] * s.order
    for y in range(s.order):
        if class_of[y] != -1:
            continue
        block = {s.table[i][y] for i in elems}
        for x in block:
            if class_of[x] != -1:
                return {"rule": "classes-overlap", "element": x}
            class_of[x] = y
    if set(class_of[x] for x in member) != {0}:
        return {"rule": "identity-class-mismatch"}
    return congruence_witness(s, class_of)


def is_invariant_subloop(s: RightLoop, elems: Iterable[int]) -> bool:
    return invariance_witness(s, elems) is None


def congruence_from_invariant(s: RightLoop, sub: InvariantSubloop | Iterable[int]) -> Congruence:
    """The congruence whose classes are the sets I∘y."""
    elems = tuple(sub.elements) if isinstance(sub, InvariantSubloop) else tuple(sorted(sub))
    witness = invariance_witness(s, elems)
    if witness is not None:
        raise NotInvariant(f"set {elems} is not an invariant subloop: {witness}", witness)
    class_of = [-1] * s.order
    next_id = 0
    for y in range(s.order):
        if class_of[y] != -1:
            continue
        for i in elems:
            class_of[s.table[i][y]] = next_id
        next_id += 1
    cong = _canonical(s, class_of)
    assert cong.classes[0] == elems
    return cong


def quotient_loop(s: RightLoop, r: Congruence) -> tuple[RightLoop, tuple[int, ...]]:
    """Loop on the congruence classes, plus the projection map.

    Well-definedness of the class table is asserted while it is built.
    """
    k = r.num_classes
    table = [[-1] * k for _ in range(k)]
    for a in range(s.order):
        ca = r.class_of[a]
        row = table[ca]
        for b in range(s.order):
            cb = r.class_of[b]
            v = r.class_of[s.table[a][b]]
            if row[cb] == -1:
                row[cb] = v
            elif row[cb] != v:
                raise AssertionError(f"quotient not well defined at classes ({ca},{cb})")
    return validate_right_loop(table), r.class_of


def smallest_group_congruence(s: RightLoop) -> Congruence:
    """Smallest congruence whose quotient is a group (associative)."""
    n = s.order
    t, d = s.table, s.division
    pairs = []
    for y in range(n):
        ty = t[y]
        for z in range(n):
            dc = d[ty[z]]
            pairs.extend((x, dc[t[t[x][y]][z]]) for x in range(n))
    cong = congruence_closure(s, pairs)
    _assert_group_quotient(s, cong, abelian=False)
    return cong


def smallest_abelian_group_congruence(s: RightLoop) -> Congruence:
    """Smallest congruence whose quotient is an abelian group."""
    n = s.order
    t, d = s.table, s.division
    pairs = []
    for y in range(n):
        ty = t[y]
        for z in range(n):
            dc = d[ty[z]]
            pairs.extend((x, dc[t[t[x][y]][z]]) for x in range(n))
            pairs.append((ty[z], t[z][y]))
    cong = congruence_closure(s, pairs)
    _assert_group_quotient(s, cong, abelian=True)
    return cong


def _assert_group_quotient(s: RightLoop, cong: Congruence, *, abelian: bool) -> None:
    q, _ = quotient_loop(s, cong)
    t = q.table
    k = q.order
    for a in range(k):
        ta = t[a]
        for b in range(k):
            tab = t[ta[b]]
            tb = t[b]
            if abelian and ta[b] != tb[a]:
                raise AssertionError(f"quotient not abelian at ({a},{b})")
            for c in range(k):
                if tab[c] != ta[tb[c]]:
                    raise AssertionError(f"quotient not associative at ({a},{b},{c})")


def derived_subloop(s: RightLoop) -> InvariantSubloop:
    """Smallest invariant subloop with abelian group quotient."""
    return identity_class(smallest_abelian_group_congruence(s))


def subloop_as_loop(
    s: RightLoop, sub: InvariantSubloop | Iterable[int]
) -> tuple[RightLoop, tuple[int, ...]]:
    """The induced table on a subloop, relabeled with 0 first."""
    elems = tuple(sub.elements) if isinstance(sub, InvariantSubloop) else tuple(sorted(sub))
    pos = {x: i for i, x in enumerate(elems)}
    table = [[pos[s.table[a][b]] for b in elems] for a in elems]
    return validate_right_loop(table), elems


def derived_series(s: RightLoop) -> list[InvariantSubloop]:
    """S >= S^(1) >= S^(2) >= ... until {0} or stabilization.

    All terms are element sets of the original loop; each step recurses
    into the previous term viewed as a standalone loop.
    """
    series = [InvariantSubloop(s, tuple(s.elements()))]
    current, embed = s, tuple(s.elements())
    while True:
        step = derived_subloop(current)
        mapped = tuple(embed[i] for i in step.elements)
        series.append(InvariantSubloop(s, mapped))
        if mapped == series[-2].elements or len(mapped) == 1:
            break
        current, inner = subloop_as_loop(current, step)
        embed = tuple(embed[i] for i in inner)
    return series


def is_solvable(s: RightLoop) -> bool:
    return derived_series(s)[-1].elements == (0,)


def all_invariant_subloops(
    s: RightLoop, *, cap: int = INVARIANT_ENUM_CAP
) -> list[InvariantSubloop]:
    """Every invariant sub right loop, by subset-closure BFS plus filtering."""
    if s.order > cap:
        raise CapExceeded(f"loop order {s.order} exceeds enumeration cap {cap}")
    found = {(0,)}
    frontier = [(0,)]
    while frontier:
        nxt = []
        for elems in frontier:
            for x in s.elements():
                if x in elems:
                    continue
                closed = _subloop_closure(s, elems + (x,))
                if closed not in found:
                    found.add(closed)
                    nxt.append(closed)
        frontier = nxt
    kept = [e for e in sorted(found, key=lambda e: (len(e), e)) if is_invariant_subloop(s, e)]
    return [InvariantSubloop(s, e) for e in kept]


def _subloop_closure(s: RightLoop, seed: tuple[int, ...]) -> tuple[int, ...]:
    members = set(seed) | {0}
    frontier = list(members)
    t, d = s.table, s.division
    while frontier:
        nxt = []
        for a in frontier:
            for b in tuple(members):
                for v in (t[a][b], t[b][a], d[a][b], d[b][a]):
                    if v not in members:
                        members.add(v)
                        nxt.append(v)
        frontier = nxt
    return tuple(sorted(members))


def order2_invariant_subloops(s: RightLoop) -> list[InvariantSubloop]:
    """All invariant subloops {0, t}; t∘t = 0 is forced by cancellation."""
    out = []
    for t in range(1, s.order):
        if s.table[t][t] == 0 and is_invariant_subloop(s, (0, t)):
            out.append(InvariantSubloop(s, (0, t)))
    return out

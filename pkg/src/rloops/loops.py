"""Right loops: validation, right division, deviation maps, torsion groups
and the group generated by right translations.

A right loop is a table with two-sided identity 0 in which every column is
a permutation, so X∘a = b always has a unique solution X.  Deviation maps
measure how far the table is from being associative; the torsion group is
the permutation group they generate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from . import groups, perms
from .errors import CapExceeded, ColumnNotBijective, MalformedTable, NoIdentity
from .groups import FiniteGroup, SubgroupRef
from .perms import Perm

TORSION_CLOSURE_CAP = 10**6
LOOP_ISO_CAP = 32


@dataclass(frozen=True)
class RightLoop:
    """A right loop given by its table; identity is index 0."""

    table: groups.Table

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def elements(self) -> range:
        return range(len(self.table))

    @cached_property
    def division(self) -> groups.Table:
        """division[a][b] is the unique x with x∘a = b."""
        n = len(self.table)
        out = [[0] * n for _ in range(n)]
        for x, row in enumerate(self.table):
            for a in range(n):
                out[a][row[a]] = x
        return tuple(tuple(r) for r in out)


@dataclass(frozen=True)
class TorsionGroup:
    """Permutation group generated by the deviation maps of a loop.

    ``generators`` keeps full provenance: one ((y, z), perm) entry per
    element pair, so report witnesses can name the pair that produced a
    bad generator.
    """

    loop: RightLoop
    elements: tuple[Perm, ...]
    generators: tuple[tuple[tuple[int, int], Perm], ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return len(self.elements) == 1


def validate_right_loop(table) -> RightLoop:
    """Check the right-loop axioms: two-sided identity, bijective columns."""
    t = groups._as_table(table)
    n = len(t)
    for a in range(n):
        if t[0][a] != a:
            raise NoIdentity(f"row 0 is not the identity at column {a}")
    for x in range(n):
        if t[x][0] != x:
            raise NoIdentity(f"column 0 is not the identity at row {x}")
    for a in range(n):
        if len({t[x][a] for x in range(n)}) != n:
            raise ColumnNotBijective(a)
    return RightLoop(t)


def as_loop(g: FiniteGroup) -> RightLoop:
    """View a group's Cayley table as a right loop."""
    return RightLoop(g.table)


def right_solve(s: RightLoop, a: int, b: int) -> int:
    """The unique x with x∘a = b."""
    return s.division[a][b]


def deviation_map(s: RightLoop, y: int, z: int) -> Perm:
    """The permutation sending x to the solution of X∘(y∘z) = (x∘y)∘z.

    It is the identity for all (y, z) exactly when the loop is a group.
    """
    t = s.table
    div_c = s.division[t[y][z]]
    return tuple(div_c[t[t[x][y]][z]] for x in s.elements())


def torsion_group(s: RightLoop, *, cap: int = TORSION_CLOSURE_CAP) -> TorsionGroup:
    """Closure of all n^2 deviation maps under composition."""
    gens = []
    distinct = set()
    for y in s.elements():
        for z in s.elements():
            p = deviation_map(s, y, z)
            if p[0] != 0:
                raise AssertionError(f"deviation map for ({y},{z}) moves the identity")
            gens.append(((y, z), p))
            distinct.add(p)
    elems = perms.close_under_composition(sorted(distinct), cap=cap)
    return TorsionGroup(s, tuple(elems), tuple(gens))


def is_associative(s: RightLoop, *, cross_check: bool = False) -> bool:
    """Full triple scan; optionally cross-checked against torsion triviality."""
    t = s.table
    n = s.order
    result = True
    for x in range(n):
        tx = t[x]
        for y in range(n):
            txy = t[tx[y]]
            ty = t[y]
            for z in range(n):
                if txy[z] != tx[ty[z]]:
                    result = False
                    break
            if not result:
                break
        if not result:
            break
    if cross_check:
        ident = perms.identity_perm(n)
        trivial = all(
            deviation_map(s, y, z) == ident for y in range(n) for z in range(n)
        )
        if trivial != result:
            raise AssertionError("triple scan disagrees with torsion triviality")
    return result


@dataclass(frozen=True)
class TranslationGroup:
    """The group generated by the right translations of a loop.

    ``group`` is the relabeled Cayley table, ``torsion`` the embedded image
    of the loop's torsion group, and ``reps[x]`` the group index of the
    translation by x.  The reps always form a transversal of the torsion
    subgroup, one per right coset.
    """

    loop: RightLoop
    group: FiniteGroup
    torsion: SubgroupRef
    reps: tuple[int, ...]


def translation_group(s: RightLoop, *, cap: int = TORSION_CLOSURE_CAP) -> TranslationGroup:
    n = s.order
    t = s.table
    translations = [tuple(t[u][x] for u in range(n)) for x in range(n)]
    elems = perms.close_under_composition(translations, cap=cap)
    if len(elems) > groups.DEFAULT_ORDER_CAP * 100:
        # keep the Cayley table construction sane; torsion caps guard above
        raise CapExceeded(f"translation closure of order {len(elems)} too large")
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[perms.compose(p, q)] for q in elems] for p in elems]
    group = FiniteGroup(tuple(tuple(row) for row in table))
    reps = tuple(index[p] for p in translations)

    torsion_gens = {
        index[deviation_map(s, y, z)] for y in range(n) for z in range(n)
    }
    torsion = groups.subgroup_closure(group, torsion_gens)

    # the translations must hit each right coset of the torsion image once
    _, coset_of = groups.coset_lookup(group, torsion)
    hit = sorted(coset_of[r] for r in reps)
    if hit != list(range(len(set(coset_of)))) or torsion.order * n != group.order:
        raise AssertionError("translations do not form a transversal of the torsion group")
    return TranslationGroup(s, group, torsion, reps)


# ---------------------------------------------------------------------------
# loop isomorphism


def column_cycle_types(s: RightLoop) -> tuple[tuple[int, ...], ...]:
    n = s.order
    return tuple(
        perms.cycle_type(tuple(s.table[x][a] for x in range(n))) for a in range(n)
    )


def loop_fingerprint(s: RightLoop) -> tuple:
    """Cheap isomorphism invariant used to bucket loops before searching."""
    cols = column_cycle_types(s)
    rows = tuple(
        sorted(
            tuple(sorted((row.count(v) for v in set(row)), reverse=True))
            for row in s.table
        )
    )
    diag = tuple(sorted(cols[s.table[x][x]] for x in range(s.order)))
    return (tuple(sorted(cols)), rows, diag)


def find_loop_isomorphism(
    s1: RightLoop, s2: RightLoop, *, cap: int = LOOP_ISO_CAP
) -> Optional[tuple[int, ...]]:
    """Identity-preserving bijection transporting the operation, or None."""
    n = s1.order
    if n != s2.order:
        return None
    if n > cap:
        raise CapExceeded(f"loop isomorphism search above cap {cap}")
    cols1, cols2 = column_cycle_types(s1), column_cycle_types(s2)
    if sorted(cols1) != sorted(cols2):
        return None
    t1, t2 = s1.table, s2.table

    # products1[v] lists the pairs (a, b) with a∘b = v, for deferred checks
    products1: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            products1[t1[a][b]].append((a, b))

    phi = [-1] * n
    phi[0] = 0
    used = [False] * n
    used[0] = True

    def consistent(x: int) -> bool:
        for a in range(x + 1):
            p = t1[a][x]
            if p <= x and t2[phi[a]][phi[x]] != phi[p]:
                return False
            p = t1[x][a]
            if p <= x and t2[phi[x]][phi[a]] != phi[p]:
                return False
        for a, b in products1[x]:
            if a < x and b < x and t2[phi[a]][phi[b]] != phi[x]:
                return False
        return True

    def extend(x: int) -> bool:
        if x == n:
            return True
        want = cols1[x]
        for c in range(1, n):
            if used[c] or cols2[c] != want:
                continue
            phi[x] = c
            used[c] = True
            if consistent(x) and extend(x + 1):
                return True
            phi[x] = -1
            used[c] = False
        return False

    if n == 1 or extend(1):
        return tuple(phi)
    return None


def loop_isomorphic(s1: RightLoop, s2: RightLoop, *, cap: int = LOOP_ISO_CAP) -> bool:
    return find_loop_isomorphism(s1, s2, cap=cap) is not None

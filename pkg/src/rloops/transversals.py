"""Right transversals of a subgroup and everything they induce: the loop
operation on coset representatives, generating tests, the H-valued factor
of a product of representatives, the action of H on representatives, and
the structural checks the verification suites run per instance.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional

from . import congruences, groups, loops
from .congruences import Congruence
from .errors import CapExceeded, ExhaustedWithoutWitness, NotCoreFree, NotInvariant, PreconditionFailed
from .groups import ElementSet, FiniteGroup, SubgroupRef
from .loops import RightLoop

TRANSVERSAL_ENUM_CAP = 10**5


@dataclass(frozen=True)
class Transversal:
    """One representative per right coset, identity for the coset H itself.

    ``reps`` is ordered by the canonical coset order, so reps[0] == 0.
    """

    group: FiniteGroup
    subgroup: SubgroupRef
    reps: tuple[int, ...]


@dataclass(frozen=True)
class InducedLoop:
    """A transversal together with its induced right loop.

    Loop indices are coset indices; ``reps[i]`` is the group element
    representing loop index i and ``coset_of[g]`` is the loop index of the
    coset containing g.
    """

    transversal: Transversal
    loop: RightLoop
    coset_of: tuple[int, ...]

    @property
    def group(self) -> FiniteGroup:
        return self.transversal.group

    @property
    def subgroup(self) -> SubgroupRef:
        return self.transversal.subgroup

    @property
    def reps(self) -> tuple[int, ...]:
        return self.transversal.reps


def count_transversals(g: FiniteGroup, h: SubgroupRef) -> int:
    return h.order ** (g.order // h.order - 1)


def enumerate_transversals(
    g: FiniteGroup, h: SubgroupRef, *, cap: int = TRANSVERSAL_ENUM_CAP
) -> Iterator[Transversal]:
    """All transversals in lexicographic representative order.

    The representative of the coset H is always the identity.  Raises
    CapExceeded when the count overflows the cap; use sampling instead.
    """
    total = count_transversals(g, h)
    if total > cap:
        raise CapExceeded(
            f"{total} transversals exceed cap {cap}; use sampling (--sample)"
        )
    cosets = groups.right_cosets(g, h)
    for choice in itertools.product(*cosets[1:]):
        yield Transversal(g, h, (0,) + choice)


def sample_transversals(
    g: FiniteGroup, h: SubgroupRef, k: int, rng: random.Random
) -> list[Transversal]:
    """Up to k distinct uniformly drawn transversals (deterministic in rng)."""
    cosets = groups.right_cosets(g, h)
    seen: set[tuple[int, ...]] = set()
    out = []
    attempts = 0
    while len(out) < k and attempts < 20 * k + 100:
        attempts += 1
        reps = (0,) + tuple(rng.choice(c) for c in cosets[1:])
        if reps not in seen:
            seen.add(reps)
            out.append(Transversal(g, h, reps))
    return out


def induced_loop(tr: Transversal) -> InducedLoop:
    """The right loop x∘y := the representative of the coset H(xy)."""
    g, h, reps = tr.group, tr.subgroup, tr.reps
    _, coset_of = groups.coset_lookup(g, h)
    table = g.table
    loop_table = [
        [coset_of[table[x][y]] for y in reps] for x in reps
    ]
    return InducedLoop(tr, loops.validate_right_loop(loop_table), coset_of)


def is_generating(tr: Transversal) -> bool:
    return groups.subgroup_closure(tr.group, tr.reps).order == tr.group.order


def find_generating_transversal(g: FiniteGroup, h: SubgroupRef) -> Transversal:
    """A transversal whose representatives generate the whole group.

    Greedy choice maximizing closure growth, with exhaustive backtracking
    as a fallback.  Exhausting the search space without a witness is a
    reportable finding (it would refute the existence claim), never silent.
    """
    if groups.core(g, h).order != 1:
        raise NotCoreFree(f"subgroup {h.elements} has nontrivial core")
    cosets = groups.right_cosets(g, h)
    reps = [0]
    for coset in cosets[1:]:
        best, best_size = coset[0], -1
        for x in coset:
            size = groups.subgroup_closure(g, reps + [x]).order
            if size > best_size:
                best, best_size = x, size
        reps.append(best)
    tr = Transversal(g, h, tuple(reps))
    if is_generating(tr):
        return tr

    for choice in itertools.product(*cosets[1:]):
        tr = Transversal(g, h, (0,) + choice)
        if is_generating(tr):
            return tr
    raise ExhaustedWithoutWitness(
        f"no generating transversal for subgroup {h.elements} of a group "
        f"of order {g.order}; this refutes the expected existence result"
    )


# ---------------------------------------------------------------------------
# the H-valued factor and the action of H on representatives


def h_factor(bundle: InducedLoop, x: int, y: int) -> int:
    """The group element rx*ry*(rx∘ry)^-1; always lies in the subgroup."""
    g = bundle.group
    rx, ry = bundle.reps[x], bundle.reps[y]
    prod = g.table[rx][ry]
    rep = bundle.reps[bundle.loop.table[x][y]]
    value = g.table[prod][g.inverses[rep]]
    if value not in bundle.subgroup:
        raise AssertionError(f"factor of ({x},{y}) lies outside the subgroup")
    return value


def coset_action(bundle: InducedLoop, x: int, h: int) -> int:
    """The representative index of the coset H(rx*h), for h in H."""
    if h not in bundle.subgroup:
        raise PreconditionFailed(f"element {h} is not in the subgroup")
    return bundle.coset_of[bundle.group.table[bundle.reps[x]][h]]


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a structural check; failures carry a replayable witness."""

    name: str
    ok: bool
    witness: Optional[dict] = None
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def check_factor_compatibility(bundle: InducedLoop) -> CheckResult:
    """Deviation maps agree with the action of the H-valued factors.

    For all x, y, z the loop-level deviation of (y, z) applied to x must
    equal the representative of H(rx * factor(y, z)).
    """
    n = bundle.loop.order
    g = bundle.group
    coset_of, reps = bundle.coset_of, bundle.reps
    for y in range(n):
        for z in range(n):
            dev = loops.deviation_map(bundle.loop, y, z)
            f = h_factor(bundle, y, z)
            for x in range(n):
                if dev[x] != coset_of[g.table[reps[x]][f]]:
                    return CheckResult(
                        "factor-compatibility",
                        False,
                        {"x": x, "y": y, "z": z, "factor": f, "deviation": dev[x]},
                    )
    return CheckResult("factor-compatibility", True)


def check_quotient_correspondence(bundle: InducedLoop, n_sub: SubgroupRef) -> CheckResult:
    """G/N matches the loop quotient by the classes of S∩N, via x -> xN.

    Preconditions: N normal in G and H <= N.
    """
    g, h = bundle.group, bundle.subgroup
    if not groups.is_normal(g, n_sub):
        raise PreconditionFailed("N is not normal in G")
    if not set(h.elements) <= set(n_sub.elements):
        raise PreconditionFailed("H is not contained in N")

    inside = [i for i, r in enumerate(bundle.reps) if r in n_sub]
    try:
        cong = congruences.congruence_from_invariant(bundle.loop, inside)
    except NotInvariant as e:
        return CheckResult(
            "quotient-correspondence", False, {"reason": "S∩N not invariant", "witness": e.witness}
        )
    q_loop, _ = congruences.quotient_loop(bundle.loop, cong)
    q_grp, proj = groups.quotient_group(g, n_sub)

    if q_loop.order != q_grp.order:
        return CheckResult(
            "quotient-correspondence", False,
            {"reason": "quotient sizes differ", "loop": q_loop.order, "group": q_grp.order},
        )
    iso = [-1] * q_loop.order
    for i, r in enumerate(bundle.reps):
        c, v = cong.class_of[i], proj[r]
        if iso[c] == -1:
            iso[c] = v
        elif iso[c] != v:
            return CheckResult(
                "quotient-correspondence", False,
                {"reason": "x -> xN not constant on classes", "class": c},
            )
    if sorted(iso) != list(range(q_grp.order)):
        return CheckResult(
            "quotient-correspondence", False, {"reason": "x -> xN not bijective"}
        )
    for a in range(q_loop.order):
        for b in range(q_loop.order):
            if iso[q_loop.table[a][b]] != q_grp.table[iso[a]][iso[b]]:
                return CheckResult(
                    "quotient-correspondence", False,
                    {"reason": "x -> xN not a homomorphism", "pair": (a, b)},
                )
    return CheckResult("quotient-correspondence", True, detail={"iso": iso})


def theta_pairs_congruence(bundle: InducedLoop) -> Congruence:
    """Smallest congruence containing every pair (x, x acted on by h)."""
    pairs = [
        (x, coset_action(bundle, x, h))
        for x in range(bundle.loop.order)
        for h in bundle.subgroup.elements
    ]
    return congruences.congruence_closure(bundle.loop, pairs)


def check_normal_lift(bundle: InducedLoop, t_cong: Congruence) -> CheckResult:
    """A congruence absorbing the H-action lifts to a normal subgroup.

    Requires every pair (x, x·h-action) inside t_cong.  Checks: the loop
    quotient is a group; N = H*T1 is a normal subgroup of G; H <= N;
    N∩S = T1; and G/N is isomorphic to the loop quotient via Hx -> class
    of x.
    """
    g, h = bundle.group, bundle.subgroup
    n_loop = bundle.loop.order
    for x in range(n_loop):
        for elem in h.elements:
            if t_cong.class_of[x] != t_cong.class_of[coset_action(bundle, x, elem)]:
                raise PreconditionFailed(
                    f"congruence misses the action pair (x={x}, h={elem})"
                )

    q_loop, _ = congruences.quotient_loop(bundle.loop, t_cong)
    if not loops.is_associative(q_loop):
        return CheckResult("normal-lift", False, {"reason": "loop quotient not a group"})

    t1_elems = tuple(bundle.reps[i] for i in t_cong.classes[0])
    n_set = groups.set_product(g, h.elements, t1_elems)
    closure = groups.subgroup_closure(g, n_set.elements)
    if closure.elements != n_set.elements:
        return CheckResult(
            "normal-lift", False, {"reason": "H*T1 is not a subgroup", "set": n_set.elements}
        )
    if not groups.is_normal(g, closure):
        return CheckResult("normal-lift", False, {"reason": "H*T1 not normal"})
    if not set(h.elements) <= set(closure.elements):
        return CheckResult("normal-lift", False, {"reason": "H not inside H*T1"})
    if tuple(sorted(set(closure.elements) & set(bundle.reps))) != tuple(sorted(t1_elems)):
        return CheckResult("normal-lift", False, {"reason": "N∩S differs from T1"})

    q_grp, proj = groups.quotient_group(g, closure)
    if q_grp.order != q_loop.order:
        return CheckResult("normal-lift", False, {"reason": "quotient sizes differ"})
    iso = [-1] * q_grp.order
    for x in range(g.order):
        c = proj[x]
        v = t_cong.class_of[bundle.coset_of[x]]
        if iso[c] == -1:
            iso[c] = v
        elif iso[c] != v:
            return CheckResult(
                "normal-lift", False, {"reason": "Hx -> class(x) not constant on N-cosets"}
            )
    if sorted(iso) != list(range(q_loop.order)):
        return CheckResult("normal-lift", False, {"reason": "correspondence not bijective"})
    for a in range(q_grp.order):
        for b in range(q_grp.order):
            if iso[q_grp.table[a][b]] != q_loop.table[iso[a]][iso[b]]:
                return CheckResult(
                    "normal-lift", False, {"reason": "correspondence not a homomorphism"}
                )
    return CheckResult("normal-lift", True, detail={"normal_subgroup": closure.elements})


def check_derived_chain(bundle: InducedLoop) -> CheckResult:
    """Set equalities tying the loop derived series to the group one.

    Requires a core-free subgroup and a generating transversal.  Checks,
    with every product taken literally as an element-set product in G:

      (a) S ∩ H*G1 = S1          (G1, S1: first derived terms)
      (b) H*G1 = H*S1
      (c) H*Sn = H * derived(H*S(n-1)) for every n >= 1
      (d) H*Sn contains H*Gn for every n >= 1
    """
    g, h = bundle.group, bundle.subgroup
    if groups.core(g, h).order != 1:
        raise PreconditionFailed("subgroup is not core-free")
    if not is_generating(bundle.transversal):
        raise PreconditionFailed("transversal does not generate the group")

    loop_series = congruences.derived_series(bundle.loop)
    s_sets = [tuple(sorted(bundle.reps[i] for i in term.elements)) for term in loop_series]
    g_sets = [term.elements for term in groups.derived_series(g)]
    depth = max(len(s_sets), len(g_sets))

    def sset(k: int) -> tuple[int, ...]:
        return s_sets[min(k, len(s_sets) - 1)]  # series are stable past the end

    def gset(k: int) -> tuple[int, ...]:
        return g_sets[min(k, len(g_sets) - 1)]

    h_elems = h.elements
    equations = []
    ok = True
    witness: Optional[dict] = None

    def record(name: str, holds: bool, info: dict) -> None:
        nonlocal ok, witness
        equations.append({"equation": name, "ok": holds, **info})
        if not holds and witness is None:
            ok = False
            witness = {"equation": name, **info}

    hg1 = set(groups.set_product(g, h_elems, gset(1)).elements)
    lhs = tuple(sorted(set(bundle.reps) & hg1))
    record("S∩HG1=S1", lhs == sset(1), {"lhs": lhs, "rhs": sset(1)})

    hs1 = groups.set_product(g, h_elems, sset(1)).elements
    record("HG1=HS1", tuple(sorted(hg1)) == hs1, {"lhs": tuple(sorted(hg1)), "rhs": hs1})

    for n in range(1, depth):
        prev = groups.set_product(g, h_elems, sset(n - 1)).elements
        cur = groups.set_product(g, h_elems, sset(n)).elements
        closure = groups.subgroup_closure(g, prev)
        if closure.elements != prev:
            record(f"HS{n - 1} subgroup", False, {"set": prev})
            continue
        derived = groups.derived_subgroup(g, within=closure)
        rhs = groups.set_product(g, h_elems, derived.elements).elements
        info = {"lhs": cur, "rhs": rhs}
        if cur != rhs:
            info["lhs_minus_rhs"] = tuple(sorted(set(cur) - set(rhs)))
            info["rhs_minus_lhs"] = tuple(sorted(set(rhs) - set(cur)))
        record(f"HS{n}=H(HS{n - 1})'", cur == rhs, info)

    for n in range(1, depth):
        hs_n = set(groups.set_product(g, h_elems, sset(n)).elements)
        hg_n = set(groups.set_product(g, h_elems, gset(n)).elements)
        record(f"HS{n}⊇HG{n}", hg_n <= hs_n, {"missing": tuple(sorted(hg_n - hs_n))})

    return CheckResult("derived-chain", ok, witness, detail={"equations": equations})


# ---------------------------------------------------------------------------
# isomorphism classes of transversals


@dataclass(frozen=True)
class IsoClassification:
    group: FiniteGroup
    subgroup: SubgroupRef
    count: int
    representatives: tuple[Transversal, ...]
    class_sizes: tuple[int, ...]


def iso_classes(
    g: FiniteGroup, h: SubgroupRef, *, cap: int = TRANSVERSAL_ENUM_CAP
) -> IsoClassification:
    """Partition all transversals by isomorphism of their induced loops."""
    buckets: dict[tuple, list[tuple[Transversal, RightLoop, int]]] = {}
    for tr in enumerate_transversals(g, h, cap=cap):
        loop = induced_loop(tr).loop
        key = loops.loop_fingerprint(loop)
        bucket = buckets.setdefault(key, [])
        for i, (rep_tr, rep_loop, size) in enumerate(bucket):
            if loops.loop_isomorphic(loop, rep_loop):
                bucket[i] = (rep_tr, rep_loop, size + 1)
                break
        else:
            bucket.append((tr, loop, 1))
    classes = [
        (tr, size) for bucket in buckets.values() for tr, _, size in bucket
    ]
    classes.sort(key=lambda item: item[0].reps)
    return IsoClassification(
        g,
        h,
        len(classes),
        tuple(tr for tr, _ in classes),
        tuple(size for _, size in classes),
    )

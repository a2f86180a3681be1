import itertools
import random

import pytest

from rloops import congruences, groups, loops, transversals
from rloops.errors import CapExceeded, NotCoreFree, PreconditionFailed


def trivial_subgroup(g):
    return groups.all_subgroups(g)[0]


def bundle_for(g, h, reps):
    return transversals.induced_loop(transversals.Transversal(g, h, tuple(reps)))


def test_transversal_counts(s3, s3_order2, s3_a3):
    assert transversals.count_transversals(s3, trivial_subgroup(s3)) == 1
    assert transversals.count_transversals(s3, s3_order2[0]) == 4
    assert transversals.count_transversals(s3, s3_a3) == 3
    assert len(list(transversals.enumerate_transversals(s3, s3_order2[0]))) == 4
    assert len(list(transversals.enumerate_transversals(s3, s3_a3))) == 3
    with pytest.raises(CapExceeded):
        list(transversals.enumerate_transversals(s3, s3_order2[0], cap=3))


def test_transversal_shape(s3, s3_order2):
    cosets = groups.right_cosets(s3, s3_order2[0])
    for tr in transversals.enumerate_transversals(s3, s3_order2[0]):
        assert tr.reps[0] == 0
        for rep, coset in zip(tr.reps, cosets):
            assert rep in coset


def test_trivial_subgroup_induces_the_group_itself(s3):
    tr = next(transversals.enumerate_transversals(s3, trivial_subgroup(s3)))
    bundle = transversals.induced_loop(tr)
    assert bundle.loop.table == s3.table


def test_normal_subgroup_induces_quotient(s3, s3_a3, d4):
    q, _ = groups.quotient_group(s3, s3_a3)
    for tr in transversals.enumerate_transversals(s3, s3_a3):
        bundle = transversals.induced_loop(tr)
        assert loops.loop_isomorphic(bundle.loop, loops.as_loop(q))
    center = groups.subgroup(d4, [0, 2])
    qd4, _ = groups.quotient_group(d4, center)
    for tr in transversals.enumerate_transversals(d4, center):
        bundle = transversals.induced_loop(tr)
        assert loops.loop_isomorphic(bundle.loop, loops.as_loop(qd4))


def test_induced_operation_lands_in_the_right_coset(s3, s3_order2):
    """x∘y is the element of S inside H(x·y)."""
    h = s3_order2[0]
    members = set(h.elements)
    for tr in transversals.enumerate_transversals(s3, h):
        bundle = transversals.induced_loop(tr)
        for x in range(3):
            for y in range(3):
                prod = s3.mul(tr.reps[x], tr.reps[y])
                rep = tr.reps[bundle.loop.table[x][y]]
                # rep in Hxy <=> prod * rep^-1 in H
                assert s3.mul(prod, s3.inv(rep)) in members


def test_is_generating(s3, s3_order2):
    tr = next(transversals.enumerate_transversals(s3, trivial_subgroup(s3)))
    assert transversals.is_generating(tr)
    h = s3_order2[0]
    flags = [
        transversals.is_generating(tr)
        for tr in transversals.enumerate_transversals(s3, h)
    ]
    assert flags.count(True) == 3 and flags.count(False) == 1


def test_find_generating_transversal(s3, s3_order2, s3_a3):
    tr = transversals.find_generating_transversal(s3, trivial_subgroup(s3))
    assert tr.reps == tuple(range(6))
    tr = transversals.find_generating_transversal(s3, s3_order2[0])
    assert transversals.is_generating(tr)
    with pytest.raises(NotCoreFree):
        transversals.find_generating_transversal(s3, s3_a3)


def test_find_generating_transversal_over_catalog():
    for g in (groups.dihedral(6), groups.quaternion8(), groups.symmetric(4)):
        for h in groups.all_subgroups(g):
            if groups.core(g, h).order == 1:
                tr = transversals.find_generating_transversal(g, h)
                assert transversals.is_generating(tr)


def test_h_factor(s3, s3_order2):
    h = s3_order2[0]
    members = set(h.elements)
    for tr in transversals.enumerate_transversals(s3, h):
        bundle = transversals.induced_loop(tr)
        for y in range(3):
            assert transversals.h_factor(bundle, 0, y) == 0
            for x in range(3):
                assert transversals.h_factor(bundle, x, y) in members


def test_factorization_is_unique(s3, s3_order2):
    """Every g in G decomposes uniquely as h * rep."""
    h = s3_order2[0]
    for tr in transversals.enumerate_transversals(s3, h):
        seen = set()
        for a in h.elements:
            for rep in tr.reps:
                seen.add(s3.mul(a, rep))
        assert len(seen) == s3.order


def test_coset_action(s3, s3_order2):
    h = s3_order2[0]
    for tr in transversals.enumerate_transversals(s3, h):
        bundle = transversals.induced_loop(tr)
        for x in range(3):
            assert transversals.coset_action(bundle, x, 0) == x
            # right action: acting by h1 then h2 equals acting by h1*h2
            for h1 in h.elements:
                for h2 in h.elements:
                    assert transversals.coset_action(
                        bundle, x, s3.mul(h1, h2)
                    ) == transversals.coset_action(
                        bundle, transversals.coset_action(bundle, x, h1), h2
                    )
        with pytest.raises(PreconditionFailed):
            transversals.coset_action(bundle, 0, 1 if 1 not in h else 3)


def test_trivial_subgroup_action_is_trivial(s3):
    tr = next(transversals.enumerate_transversals(s3, trivial_subgroup(s3)))
    bundle = transversals.induced_loop(tr)
    for x in range(6):
        assert transversals.coset_action(bundle, x, 0) == x


def test_factor_compatibility_exhaustive(s3, s3_order2, d4):
    tr = next(transversals.enumerate_transversals(s3, trivial_subgroup(s3)))
    assert transversals.check_factor_compatibility(transversals.induced_loop(tr)).ok
    for h in s3_order2:
        for tr in transversals.enumerate_transversals(s3, h):
            assert transversals.check_factor_compatibility(transversals.induced_loop(tr)).ok
    for h in groups.all_subgroups(d4):
        for tr in itertools.islice(transversals.enumerate_transversals(d4, h), 20):
            assert transversals.check_factor_compatibility(transversals.induced_loop(tr)).ok


def test_quotient_correspondence(s3, s3_a3, d4):
    # N = G: both quotients trivial
    whole = groups.all_subgroups(s3)[-1]
    tr = next(transversals.enumerate_transversals(s3, trivial_subgroup(s3)))
    bundle = transversals.induced_loop(tr)
    assert transversals.check_quotient_correspondence(bundle, whole).ok
    # core-free order-2 subgroup of D4 inside the Klein-four normal subgroup
    h = groups.subgroup(d4, [0, 4])
    n = groups.subgroup(d4, [0, 2, 4, 6])
    assert groups.core(d4, h).order == 1
    assert groups.is_normal(d4, n)
    for tr in transversals.enumerate_transversals(d4, h):
        res = transversals.check_quotient_correspondence(transversals.induced_loop(tr), n)
        assert res.ok
        assert len(res.detail["iso"]) == 2
    # trivial H inside normal A3: valid instance, quotients of order 2
    assert transversals.check_quotient_correspondence(bundle, s3_a3).ok
    # H not inside N
    h2 = [x for x in groups.all_subgroups(s3) if x.order == 2][0]
    tr2 = next(transversals.enumerate_transversals(s3, h2))
    with pytest.raises(PreconditionFailed):
        transversals.check_quotient_correspondence(transversals.induced_loop(tr2), s3_a3)
    # N not normal
    with pytest.raises(PreconditionFailed):
        transversals.check_quotient_correspondence(bundle, h2)


def test_quotient_correspondence_sweep_order_le_12():
    for g in (groups.dihedral(4), groups.quaternion8(), groups.dihedral(6),
              groups.from_permutations([(1, 2, 0, 3), (1, 0, 3, 2)])):
        subs = groups.all_subgroups(g)
        normals = [n for n in subs if groups.is_normal(g, n)]
        for h in subs:
            for tr in itertools.islice(transversals.enumerate_transversals(g, h), 8):
                bundle = transversals.induced_loop(tr)
                for n in normals:
                    if set(h.elements) <= set(n.elements):
                        assert transversals.check_quotient_correspondence(bundle, n).ok


def test_normal_lift(s3, s3_order2):
    # T = full congruence: N = G, trivial quotients
    h = s3_order2[0]
    tr = next(transversals.enumerate_transversals(s3, h))
    bundle = transversals.induced_loop(tr)
    full = congruences.full_congruence(bundle.loop)
    res = transversals.check_normal_lift(bundle, full)
    assert res.ok and res.detail["normal_subgroup"] == tuple(range(6))
    # H trivial, T = smallest group congruence of the group-as-loop: discrete
    triv = trivial_subgroup(s3)
    tr0 = next(transversals.enumerate_transversals(s3, triv))
    bundle0 = transversals.induced_loop(tr0)
    t_min = congruences.smallest_group_congruence(bundle0.loop)
    assert t_min.is_discrete
    res = transversals.check_normal_lift(bundle0, t_min)
    assert res.ok and res.detail["normal_subgroup"] == (0,)
    # discrete T misses the action pairs when H is nontrivial
    with pytest.raises(PreconditionFailed):
        transversals.check_normal_lift(bundle, congruences.discrete_congruence(bundle.loop))


def test_normal_lift_with_minimal_theta_congruence_sweep(d4):
    for g in (d4, groups.dihedral(5), groups.quaternion8()):
        for h in groups.all_subgroups(g):
            for tr in itertools.islice(transversals.enumerate_transversals(g, h), 6):
                bundle = transversals.induced_loop(tr)
                t_cong = transversals.theta_pairs_congruence(bundle)
                assert transversals.check_normal_lift(bundle, t_cong).ok


def test_derived_chain_trivial_subgroup(s3):
    """With H = {0} every equation collapses to the group derived series."""
    tr = next(transversals.enumerate_transversals(s3, trivial_subgroup(s3)))
    res = transversals.check_derived_chain(transversals.induced_loop(tr))
    assert res.ok
    for eq in res.detail["equations"]:
        assert eq["ok"]


def test_derived_chain_s3_pairs(s3, s3_order2):
    h = s3_order2[0]
    for tr in transversals.enumerate_transversals(s3, h):
        bundle = transversals.induced_loop(tr)
        if not transversals.is_generating(tr):
            with pytest.raises(PreconditionFailed):
                transversals.check_derived_chain(bundle)
            continue
        res = transversals.check_derived_chain(bundle)
        assert res.ok
        eq4 = [e for e in res.detail["equations"] if e["equation"] == "HG1=HS1"][0]
        # S^(1) = S for these loops, so both sides are all of G
        assert tuple(eq4["lhs"]) == tuple(range(6))
        assert tuple(eq4["rhs"]) == tuple(range(6))


def test_derived_chain_requires_core_free(s3, s3_a3):
    tr = next(transversals.enumerate_transversals(s3, s3_a3))
    with pytest.raises(PreconditionFailed):
        transversals.check_derived_chain(transversals.induced_loop(tr))


def test_derived_chain_documented_failure_on_d6():
    """Documented finding: the iterated equality fails at n=2 on this
    instance while both subset directions and the terminal inclusions hold.
    """
    d6 = groups.dihedral(6)
    h = groups.subgroup(d6, [0, 6])
    bundle = bundle_for(d6, h, (0, 1, 2, 3, 4, 7))
    assert transversals.is_generating(bundle.transversal)
    assert groups.core(d6, h).order == 1
    res = transversals.check_derived_chain(bundle)
    assert not res.ok
    assert res.witness["equation"] == "HS2=H(HS1)'"
    failing = [e for e in res.detail["equations"] if not e["ok"]]
    assert [e["equation"] for e in failing] == ["HS2=H(HS1)'"]
    eq = failing[0]
    assert set(eq["lhs"]) < set(eq["rhs"])  # strict subset: equality fails upward
    assert tuple(eq["lhs"]) == (0, 6)
    assert tuple(eq["rhs"]) == (0, 2, 4, 6, 8, 10)
    for e in res.detail["equations"]:
        if "⊇" in e["equation"]:
            assert e["ok"]


def test_iso_classes(s3, s3_order2, s3_a3):
    triv = trivial_subgroup(s3)
    assert transversals.iso_classes(s3, triv).count == 1
    for h in s3_order2:
        cls = transversals.iso_classes(s3, h)
        assert cls.count == 3
        assert sorted(cls.class_sizes) == [1, 1, 2]
    assert transversals.iso_classes(s3, s3_a3).count == 1


def test_sampling_is_deterministic_and_valid(s3, s3_order2):
    h = s3_order2[0]
    rng1 = random.Random("sample-test")
    rng2 = random.Random("sample-test")
    a = transversals.sample_transversals(s3, h, 3, rng1)
    b = transversals.sample_transversals(s3, h, 3, rng2)
    assert [t.reps for t in a] == [t.reps for t in b]
    assert len({t.reps for t in a}) == len(a)
    for tr in a:
        transversals.induced_loop(tr)  # validates

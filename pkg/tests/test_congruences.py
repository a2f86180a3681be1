import random

import pytest

from rloops import congruences, groups, loops, transversals
from rloops.errors import CapExceeded, NotInvariant

# ---------------------------------------------------------------------------
# partition-enumeration oracle


def all_partitions(n):
    """All set partitions of 0..n-1 as restricted growth strings."""

    def rec(i, next_label, labels):
        if i == n:
            yield tuple(labels)
            return
        for c in range(next_label + 1):
            labels.append(c)
            yield from rec(i + 1, max(next_label, c + 1), labels)
            labels.pop()

    yield from rec(0, 0, [])


def all_congruences(s):
    """Every congruence of the loop, by filtering all partitions."""
    return [
        labels
        for labels in all_partitions(s.order)
        if congruences.congruence_witness(s, labels) is None
    ]


def meet(l1, l2):
    combo = {}
    out = []
    for pair in zip(l1, l2):
        if pair not in combo:
            combo[pair] = len(combo)
        out.append(combo[pair])
    return tuple(out)


def minimal_congruence_oracle(cands, pairs):
    """Meet of all congruences containing the pairs (the unique minimum)."""
    hits = [c for c in cands if all(c[a] == c[b] for a, b in pairs)]
    out = hits[0]
    for c in hits[1:]:
        out = meet(out, c)
    return out


def normalize(labels):
    seen = {}
    out = []
    for c in labels:
        if c not in seen:
            seen[c] = len(seen)
        out.append(seen[c])
    return tuple(out)


def small_loop_corpus():
    """Right loops of order <= 6: small groups plus induced loops."""
    corpus = [loops.as_loop(groups.cyclic(n)) for n in range(1, 7)]
    corpus.append(loops.as_loop(groups.symmetric(3)))
    corpus.append(loops.as_loop(groups.direct_product(groups.cyclic(2), groups.cyclic(2))))
    s3 = groups.symmetric(3)
    h2 = [h for h in groups.all_subgroups(s3) if h.order == 2][0]
    for tr in transversals.enumerate_transversals(s3, h2):
        corpus.append(transversals.induced_loop(tr).loop)
    d4 = groups.dihedral(4)
    for h in groups.all_subgroups(d4):
        if h.order == 2 and groups.core(d4, h).order == 1:
            seen = set()
            for tr in transversals.enumerate_transversals(d4, h):
                loop = transversals.induced_loop(tr).loop
                if loop.table not in seen:
                    seen.add(loop.table)
                    corpus.append(loop)
    d6 = groups.dihedral(6)
    h = groups.subgroup(d6, [0, 6])
    for tr in list(transversals.enumerate_transversals(d6, h))[:6]:
        corpus.append(transversals.induced_loop(tr).loop)
    return corpus


def test_congruence_closure_trivial_cases(order3_loops):
    for s in order3_loops:
        assert congruences.congruence_closure(s, []).is_discrete
        everything = [(a, b) for a in s.elements() for b in s.elements()]
        assert congruences.congruence_closure(s, everything).is_full


def test_congruence_closure_matches_partition_oracle():
    rng = random.Random(987)
    for s in small_loop_corpus():
        cands = all_congruences(s)
        for _ in range(25):
            pairs = [
                (rng.randrange(s.order), rng.randrange(s.order))
                for _ in range(rng.randrange(0, 4))
            ]
            got = congruences.congruence_closure(s, pairs)
            want = minimal_congruence_oracle(cands, pairs)
            assert normalize(got.class_of) == normalize(want)


def test_closure_output_is_a_congruence(order3_loops):
    rng = random.Random(5)
    for s in order3_loops:
        for _ in range(10):
            pairs = [(rng.randrange(3), rng.randrange(3))]
            got = congruences.congruence_closure(s, pairs)
            assert congruences.congruence_witness(s, got.class_of) is None
            sizes = {len(c) for c in got.classes}
            assert len(sizes) == 1


def test_closure_idempotent(order3_loops):
    for s in order3_loops:
        first = congruences.congruence_closure(s, [(1, 2)])
        again = congruences.congruence_closure(
            s, [(c[0], x) for c in first.classes for x in c]
        )
        assert again.classes == first.classes


def test_identity_class(order3_loops):
    s = order3_loops[0]
    assert congruences.identity_class(congruences.discrete_congruence(s)).elements == (0,)
    assert congruences.identity_class(congruences.full_congruence(s)).elements == (0, 1, 2)
    nonassoc = [x for x in order3_loops if not loops.is_associative(x)][0]
    cong = congruences.smallest_group_congruence(nonassoc)
    assert congruences.identity_class(cong).elements == (0, 1, 2)


def test_congruence_from_invariant(s3):
    s = loops.as_loop(s3)
    assert congruences.congruence_from_invariant(s, [0]).is_discrete
    assert congruences.congruence_from_invariant(s, range(6)).is_full
    a3 = (0, 3, 4)
    cong = congruences.congruence_from_invariant(s, a3)
    assert cong.classes == ((0, 3, 4), (1, 2, 5))
    with pytest.raises(NotInvariant):
        congruences.congruence_from_invariant(s, [0, 1])  # not even a subloop


def test_invariance_witness_finds_failures():
    # search the catalog for an order-2 subset closed under ∘ but failing
    # the congruence compatibility conditions
    d4 = groups.dihedral(4)
    h = groups.subgroup(d4, [0, 4])
    witnessed = False
    for tr in transversals.enumerate_transversals(d4, h):
        loop = transversals.induced_loop(tr).loop
        for t in range(1, loop.order):
            if loop.table[t][t] == 0:
                w = congruences.invariance_witness(loop, (0, t))
                if w is not None and w["rule"].startswith(("compat", "division")):
                    witnessed = True
                    assert not congruences.is_invariant_subloop(loop, (0, t))
    assert witnessed


def test_quotient_loop(s3, order3_loops):
    s = loops.as_loop(s3)
    q, proj = congruences.quotient_loop(s, congruences.discrete_congruence(s))
    assert q.table == s.table and proj == tuple(range(6))
    q, _ = congruences.quotient_loop(s, congruences.full_congruence(s))
    assert q.order == 1
    cong = congruences.congruence_from_invariant(s, (0, 3, 4))
    q, _ = congruences.quotient_loop(s, cong)
    assert q.table == ((0, 1), (1, 0))


def test_smallest_group_congruence(order3_loops, s3):
    assert congruences.smallest_group_congruence(loops.as_loop(s3)).is_discrete
    nonassoc = [x for x in order3_loops if not loops.is_associative(x)][0]
    assert congruences.smallest_group_congruence(nonassoc).is_full


def test_smallest_congruences_match_oracle():
    for s in small_loop_corpus():
        if s.order > 6:
            continue
        cands = all_congruences(s)
        group_cands = []
        abelian_cands = []
        for labels in cands:
            cong = congruences.congruence_from_partition(
                s, _blocks_from_labels(labels)
            )
            q, _ = congruences.quotient_loop(s, cong)
            if loops.is_associative(q):
                group_cands.append(labels)
                if all(
                    q.table[a][b] == q.table[b][a]
                    for a in range(q.order)
                    for b in range(q.order)
                ):
                    abelian_cands.append(labels)
        want_group = group_cands[0]
        for c in group_cands[1:]:
            want_group = meet(want_group, c)
        want_abelian = abelian_cands[0]
        for c in abelian_cands[1:]:
            want_abelian = meet(want_abelian, c)
        got_group = congruences.smallest_group_congruence(s)
        got_abelian = congruences.smallest_abelian_group_congruence(s)
        assert normalize(got_group.class_of) == normalize(want_group)
        assert normalize(got_abelian.class_of) == normalize(want_abelian)


def _blocks_from_labels(labels):
    blocks = {}
    for x, c in enumerate(labels):
        blocks.setdefault(c, []).append(x)
    return list(blocks.values())


def test_congruences_above_group_congruence_have_group_quotient(order3_loops):
    """Any congruence containing the smallest group congruence yields a group."""
    for s in small_loop_corpus():
        if not 2 <= s.order <= 6:
            continue
        base = congruences.smallest_group_congruence(s)
        base_pairs = [(c[0], x) for c in base.classes for x in c[1:]]
        for extra in [(0, 1), (1, s.order - 1)]:
            bigger = congruences.congruence_closure(s, base_pairs + [extra])
            q, _ = congruences.quotient_loop(s, bigger)
            assert loops.is_associative(q)


def test_derived_subloop(s3, order3_loops):
    assert congruences.derived_subloop(loops.as_loop(groups.cyclic(6))).elements == (0,)
    assert congruences.derived_subloop(loops.as_loop(s3)).elements == (0, 3, 4)
    nonassoc = [x for x in order3_loops if not loops.is_associative(x)][0]
    assert congruences.derived_subloop(nonassoc).elements == (0, 1, 2)


def test_derived_subloop_of_group_table_is_commutator_subgroup():
    for g in (groups.symmetric(3), groups.dihedral(4), groups.quaternion8(),
              groups.dihedral(6), groups.from_permutations([(1, 2, 0, 3), (1, 0, 3, 2)])):
        assert (
            congruences.derived_subloop(loops.as_loop(g)).elements
            == groups.derived_subgroup(g).elements
        )


def test_derived_subloop_minimality_at_desk_scale(order3_loops, d4):
    """Every invariant subloop with abelian group quotient contains S^(1)."""
    corpus = list(order3_loops) + [loops.as_loop(d4)]
    h = groups.subgroup(d4, [0, 4])
    for tr in list(transversals.enumerate_transversals(d4, h))[:4]:
        corpus.append(transversals.induced_loop(tr).loop)
    for s in corpus:
        derived = set(congruences.derived_subloop(s).elements)
        for sub in congruences.all_invariant_subloops(s):
            cong = congruences.congruence_from_invariant(s, sub.elements)
            q, _ = congruences.quotient_loop(s, cong)
            if loops.is_associative(q) and all(
                q.table[a][b] == q.table[b][a]
                for a in range(q.order)
                for b in range(q.order)
            ):
                assert derived <= set(sub.elements)


def test_subloop_as_loop(s3):
    s = loops.as_loop(s3)
    sub, elems = congruences.subloop_as_loop(s, (0,))
    assert sub.order == 1 and elems == (0,)
    sub, elems = congruences.subloop_as_loop(s, range(6))
    assert sub.table == s.table
    sub, elems = congruences.subloop_as_loop(s, (0, 3, 4))
    assert elems == (0, 3, 4)
    assert loops.loop_isomorphic(sub, loops.as_loop(groups.cyclic(3)))


def test_derived_series(s3, order3_loops):
    series = congruences.derived_series(loops.as_loop(groups.cyclic(4)))
    assert [t.elements for t in series] == [(0, 1, 2, 3), (0,)]
    series = congruences.derived_series(loops.as_loop(s3))
    assert [t.elements for t in series] == [tuple(range(6)), (0, 3, 4), (0,)]
    nonassoc = [x for x in order3_loops if not loops.is_associative(x)][0]
    series = congruences.derived_series(nonassoc)
    assert [t.elements for t in series] == [(0, 1, 2), (0, 1, 2)]
    assert not congruences.is_solvable(nonassoc)
    assert congruences.is_solvable(loops.as_loop(s3))


def test_loop_solvability_matches_group_solvability_on_group_tables():
    for g in (groups.cyclic(8), groups.symmetric(4), groups.quaternion8()):
        assert congruences.is_solvable(loops.as_loop(g)) == groups.is_solvable_group(g)
    a5 = groups.from_permutations([(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)])
    assert not congruences.is_solvable(loops.as_loop(a5))


def test_all_invariant_subloops(order3_loops):
    c2 = loops.as_loop(groups.cyclic(2))
    assert [t.elements for t in congruences.all_invariant_subloops(c2)] == [(0,), (0, 1)]
    nonassoc = [x for x in order3_loops if not loops.is_associative(x)][0]
    assert [t.elements for t in congruences.all_invariant_subloops(nonassoc)] == [
        (0,),
        (0, 1, 2),
    ]
    with pytest.raises(CapExceeded):
        congruences.all_invariant_subloops(loops.as_loop(groups.cyclic(40)))


def test_order2_invariant_subloops():
    c2 = loops.as_loop(groups.cyclic(2))
    assert [t.elements for t in congruences.order2_invariant_subloops(c2)] == [(0, 1)]
    klein = loops.as_loop(groups.direct_product(groups.cyclic(2), groups.cyclic(2)))
    assert len(congruences.order2_invariant_subloops(klein)) == 3

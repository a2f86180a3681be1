"""Permutations as tuples of images on 0..n-1.

Composition is left-to-right throughout the package: ``compose(p, q)`` is
"apply p, then q".  This matches the right-action convention used for
translation maps on loops.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import CapExceeded

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply p first, then q: result[i] = q[p[i]]."""
    return tuple(map(q.__getitem__, p))


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def cycle_type(p: Perm) -> tuple[int, ...]:
    """Cycle lengths in descending order (a partition of len(p))."""
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        cur = start
        while not seen[cur]:
            seen[cur] = True
            cur = p[cur]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def perm_order(p: Perm) -> int:
    import math

    return math.lcm(*cycle_type(p))


def close_under_composition(generators: Iterable[Perm], cap: int = 10**6) -> list[Perm]:
    """Breadth-first closure of the generators inside the symmetric group.

    Returns all elements of the generated subgroup sorted lexicographically
    (the identity sorts first).  Raises CapExceeded if the closure grows past
    ``cap`` elements.
    """
    gens = []
    seen_gens = set()
    n = None
    for g in generators:
        g = tuple(g)
        if n is None:
            n = len(g)
        if len(g) != n or not is_perm(g):
            raise ValueError(f"not a permutation on {n} points: {g}")
        if g not in seen_gens:
            seen_gens.add(g)
            gens.append(g)
    if n is None:
        raise ValueError("no generators given")

    ident = identity_perm(n)
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(map(g.__getitem__, p))
                if q not in elements:
                    if len(elements) >= cap:
                        raise CapExceeded(
                            f"permutation closure exceeded cap {cap}"
                        )
                    elements.add(q)
                    nxt.append(q)
        frontier = nxt
    return sorted(elements)

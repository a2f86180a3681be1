"""Built-in catalog of small groups used by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import groups
from .groups import FiniteGroup


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    group: FiniteGroup
    sample_only: bool = False  # pairs of this group are always sampled


def _a4() -> FiniteGroup:
    return groups.from_permutations([(1, 2, 0, 3), (1, 0, 3, 2)])


def _a5() -> FiniteGroup:
    return groups.from_permutations([(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)])


@lru_cache(maxsize=1)
def builtin_catalog() -> tuple[CatalogEntry, ...]:
    """All built-in groups, validated, with unique names.

    A5 is the non-solvable stress entry; its transversal spaces are far too
    large to enumerate, so it is marked sample-only.
    """
    c2 = groups.cyclic(2)
    entries = [CatalogEntry(f"C{n}", groups.cyclic(n)) for n in range(1, 17)]
    entries += [CatalogEntry(f"D{n}", groups.dihedral(n)) for n in range(3, 9)]
    entries += [
        CatalogEntry("V4", groups.direct_product(c2, c2)),
        CatalogEntry("S3", groups.symmetric(3)),
        CatalogEntry("S4", groups.symmetric(4)),
        CatalogEntry("Q8", groups.quaternion8()),
        CatalogEntry("A4", _a4()),
        CatalogEntry("C2xC4", groups.direct_product(c2, groups.cyclic(4))),
        CatalogEntry("C2xC2xC2", groups.direct_product(c2, groups.direct_product(c2, c2))),
        CatalogEntry("C3xC3", groups.direct_product(groups.cyclic(3), groups.cyclic(3))),
        CatalogEntry("C2xS3", groups.direct_product(c2, groups.symmetric(3))),
        CatalogEntry("A5", _a5(), sample_only=True),
    ]
    names = [e.name for e in entries]
    assert len(names) == len(set(names))
    return tuple(entries)


def catalog_upto(max_order: int, extra: tuple[CatalogEntry, ...] = ()) -> list[CatalogEntry]:
    """Catalog entries of order <= max_order, plus user-supplied groups."""
    selected = [e for e in builtin_catalog() + tuple(extra) if e.group.order <= max_order]
    return selected

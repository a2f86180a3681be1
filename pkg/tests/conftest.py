from __future__ import annotations

import pytest

from rloops import groups, transversals


@pytest.fixture(scope="session")
def s3():
    return groups.symmetric(3)


@pytest.fixture(scope="session")
def s3_order2(s3):
    return [h for h in groups.all_subgroups(s3) if h.order == 2]


@pytest.fixture(scope="session")
def s3_a3(s3):
    return [h for h in groups.all_subgroups(s3) if h.order == 3][0]


@pytest.fixture(scope="session")
def order3_loops(s3, s3_order2):
    """The four order-3 right loops, as induced by the (S3, C2) transversals."""
    out = []
    for tr in transversals.enumerate_transversals(s3, s3_order2[0]):
        out.append(transversals.induced_loop(tr).loop)
    return out


@pytest.fixture(scope="session")
def d4():
    return groups.dihedral(4)

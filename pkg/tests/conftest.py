import pytest

from finitegpd.bibundle import group_groupoid, pair_groupoid, unit_groupoid
from finitegpd.groups import cyclic_group
from finitegpd.twogroupoid import (cech_groupoid, crossed_module_fixture,
                                   groupoid_nerve, trivial_action,
                                   trivial_boundary)

COVER = {"U": ["a", "b"], "V": ["b", "c"]}


@pytest.fixture(scope="session")
def z2():
    return cyclic_group(2)


@pytest.fixture(scope="session")
def xmod(z2):
    return crossed_module_fixture(z2, z2, trivial_boundary(z2, z2),
                                  trivial_action(z2, z2))


@pytest.fixture(scope="session")
def cech():
    return cech_groupoid(COVER)


@pytest.fixture(scope="session")
def cech_nerve(cech):
    return groupoid_nerve(cech[0])


@pytest.fixture(scope="session")
def pair3():
    return pair_groupoid(["p0", "p1", "p2"])


@pytest.fixture(scope="session")
def bz2(z2):
    return group_groupoid(z2)


@pytest.fixture(scope="session")
def points_groupoid():
    return unit_groupoid(["a", "b", "c"])

import itertools
from collections import Counter

import pytest

from transfinite import permgroup as pg
from transfinite.catalog import GROUP_COUNTS, small_group, small_groups


def test_catalog_has_one_group_per_isomorphism_type_up_to_24():
    counts = Counter(G.order for _, G in small_groups())
    assert dict(counts) == GROUP_COUNTS
    assert sum(GROUP_COUNTS.values()) == 74


def test_catalog_names_are_unique():
    names = [name for name, _ in small_groups()]
    assert len(set(names)) == len(names)


@pytest.mark.parametrize("order", sorted(GROUP_COUNTS))
def test_groups_of_equal_order_are_pairwise_non_isomorphic(order):
    groups = [G for _, G in small_groups() if G.order == order]
    for A, B in itertools.combinations(groups, 2):
        assert not pg.are_isomorphic(A, B)[0]


def test_certificates_separate_the_catalog():
    keys = {(d.order, d.histogram, d.certificate)
            for d in (pg.describe(G) for _, G in small_groups())}
    assert len(keys) == 74


def test_abelian_counts():
    abelian = Counter(G.order for _, G in small_groups() if G.is_abelian())
    # products of cyclic groups: one per partition of each prime-power part
    assert abelian[8] == 3 and abelian[16] == 5 and abelian[24] == 3 and abelian[12] == 2


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "A4", "S4"])
def test_named_groups_get_their_names_back(name):
    assert pg.describe(small_group(name)).name == name


def test_sl23_has_a_unique_involution():
    hist = dict(pg.describe(small_group("SL(2,3)")).histogram)
    assert hist[2] == 1


def test_unknown_name():
    with pytest.raises(KeyError):
        small_group("M11")

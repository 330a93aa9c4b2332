import itertools
import random
from functools import cmp_to_key

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from transfinite.errors import ContractError, DomainError, ResourceError
from transfinite.indexset import (CutQuotient, EnumeratedQuotient, PairIndex,
                                  ProductOrder, build_quotient, check_wellorder,
                                  class_max, label_for_type, lex_compare, lex_min,
                                  order_type, pair_is_limit, pair_predecessor,
                                  pair_successor, type_of_closed_interval)
from transfinite.ordinal import OMEGA as w
from transfinite.ordinal import parse

P = PairIndex.of


def test_lex_compare_examples():
    assert lex_compare(P(1, 2), P(2, 1)) == -1
    assert lex_compare(P(2, 1), P(2, 1)) == 0
    order = ProductOrder(w, 4)
    assert order.adjoined_max == P(w, 1)
    assert lex_compare(P(w, 1), P(5, 4), order) == 1


def test_out_of_bounds_pairs_are_rejected():
    order = ProductOrder(3, 2)
    for bad in (P(3, 1), P(1, 3), P(0, 1)):
        with pytest.raises(DomainError):
            lex_compare(bad, P(1, 1), order)
    with pytest.raises(DomainError):
        ProductOrder(1, 2)


def test_adjoined_maximum_only_for_limit_major_bounds():
    assert not ProductOrder(3, 2).has_adjoined_max
    assert ProductOrder(3, 2).maximum() == P(2, 2)
    assert ProductOrder(w * 2, 3).maximum() == P(w * 2, 1)
    assert not ProductOrder(w + 1, 3).has_adjoined_max
    assert ProductOrder(w + 1, 3).maximum() == P(w, 3)


def test_pair_successor_examples():
    order = ProductOrder(3, 2)
    assert pair_successor(P(1, 1), order) == P(1, 2)
    assert pair_successor(P(1, 2), order) == P(2, 1)
    assert pair_successor(P(5, 2), ProductOrder(w, 2)) == P(6, 1)
    with pytest.raises(DomainError):
        pair_successor(P(2, 2), order)
    with pytest.raises(DomainError):
        pair_successor(P(w, 1), ProductOrder(w, 2))


def test_pair_limit_examples():
    assert pair_is_limit(P(w, 1))
    assert pair_is_limit(P(3, w))
    assert not pair_is_limit(P(3, 4))
    order = ProductOrder(w, w + 1)
    assert pair_predecessor(P(3, w + 1), order) == P(3, w)
    assert pair_predecessor(P(4, 1), order) == P(3, w + 1)
    with pytest.raises(DomainError):
        pair_predecessor(P(3, w), order)


def test_wellorder_examples():
    assert lex_min([P(2, 1), P(1, 2)]) == P(1, 2)
    assert lex_min([P(k, 1) for k in (3, 7, 9)]) == P(3, 1)
    report = check_wellorder(ProductOrder(w * 2, 3), 1000, random.Random(5))
    assert report.samples == 1000
    assert report.ok, report.violations[:3]


@pytest.mark.parametrize("n,m", [(a, b) for a in range(2, 7) for b in range(1, 7)])
def test_lex_order_total_and_antisymmetric_exhaustive(n, m):
    order = ProductOrder(n, m)
    elems = list(order.elements())
    assert len(elems) == len(order)
    for a, b in itertools.product(elems, repeat=2):
        ab, ba = lex_compare(a, b, order), lex_compare(b, a, order)
        assert ab == -ba
        assert (ab == 0) == (a == b)
    for a, b, c in itertools.product(elems[:8], repeat=3):
        if lex_compare(a, b) < 0 and lex_compare(b, c) < 0:
            assert lex_compare(a, c) < 0
    assert sorted(elems, key=cmp_to_key(lex_compare)) == elems
    assert order.order_type() == len(elems)
    assert [order.rank(p) for p in elems] == list(range(len(elems)))


def test_ranks_and_order_types_of_infinite_products():
    order = ProductOrder(w, 2)
    assert order.rank(P(3, 2)) == 5
    assert order.rank(P(w, 1)) == w
    assert order.order_type() == w + 1
    assert ProductOrder(w * 2, w).order_type() == parse("w^2*2+1")
    assert ProductOrder(3, w).order_type() == parse("w*2+1")
    assert type_of_closed_interval(w + 1) == w + 2
    assert type_of_closed_interval(w) == w + 1
    assert type_of_closed_interval(5) == 5
    assert label_for_type(w + 1) == w
    assert label_for_type(w + 2) == w + 1
    with pytest.raises(DomainError):
        label_for_type(w)


orders = st.tuples(st.sampled_from([2, 3, 5, w, w + 1, w * 2, parse("w^2")]),
                   st.sampled_from([1, 2, 4, w, w + 3]))


@given(orders, st.integers(0, 10**6))
@settings(max_examples=40)
def test_every_finite_subset_has_a_unique_minimum(bounds, seed):
    order = ProductOrder(*bounds)
    rng = random.Random(seed)
    subset = [order.random_pair(rng) for _ in range(rng.randint(1, 10))]
    m = lex_min(subset)
    assert m in subset
    assert all(lex_compare(m, p) <= 0 for p in subset)
    assert sum(1 for p in subset if lex_compare(p, m) == 0) == subset.count(m)


@given(orders, st.integers(0, 10**6))
@settings(max_examples=40)
def test_successor_is_immediate_and_rank_compatible(bounds, seed):
    order = ProductOrder(*bounds)
    p = order.random_pair(random.Random(seed))
    if p == order.maximum():
        return
    try:
        q = pair_successor(p, order)
    except DomainError:
        # the last pair of a row below a limit major bound
        assert order.has_adjoined_max
        return
    from transfinite.ordinal import successor
    assert order.rank(q) == successor(order.rank(p))
    assert pair_predecessor(q, order) == p


# -- quotients --------------------------------------------------------------


def test_constant_and_injective_quotients():
    order = ProductOrder(3, 2)
    const = build_quotient(order, lambda p: "same")
    assert order_type(const) == 1
    assert class_max(const, P(1, 1)) == P(2, 2)
    inj = build_quotient(order, lambda p: p)
    assert order_type(inj) == 4
    for p in order.elements():
        assert class_max(inj, p) == p
        assert inj.class_min(p) == p


def test_two_by_two_single_row():
    # major bound 2 leaves one row of two pairs
    order = ProductOrder(2, 2)
    assert order_type(build_quotient(order, lambda p: 0)) == 1
    assert order_type(build_quotient(order, lambda p: p)) == 2


def test_non_concordant_value_map_names_a_triple():
    order = ProductOrder(3, 2)
    values = {P(1, 1): "a", P(1, 2): "b", P(2, 1): "a", P(2, 2): "c"}
    with pytest.raises(ContractError) as info:
        build_quotient(order, values.__getitem__)
    msg = str(info.value)
    assert "(1,1)" in msg and "(1,2)" in msg and "(2,1)" in msg


def brute_force_classes(order, value_of):
    """Group an explicitly sorted list of pairs into runs of equal value."""
    elems = sorted(order.elements(), key=cmp_to_key(lex_compare))
    runs = []
    for p in elems:
        if runs and value_of(runs[-1][-1]) == value_of(p):
            runs[-1].append(p)
        else:
            runs.append([p])
    return runs


def concordant_maps(order, rng, count):
    """Random monotone step functions, which are exactly the concordant maps."""
    elems = list(order.elements())
    for _ in range(count):
        cuts = sorted(rng.sample(range(1, len(elems)), rng.randint(0, len(elems) - 1)))
        step = {}
        level = 0
        for k, p in enumerate(elems):
            if k in cuts:
                level += 1
            step[p] = f"v{level}"
        yield step.__getitem__


@pytest.mark.parametrize("n,m", [(a, b) for a in range(2, 8) for b in range(1, 7) if (a - 1) * b <= 36])
def test_quotient_matches_sort_and_count_oracle(n, m):
    order = ProductOrder(n, m)
    rng = random.Random(n * 100 + m)
    for value_of in concordant_maps(order, rng, 6):
        q = build_quotient(order, value_of)
        runs = brute_force_classes(order, value_of)
        assert order_type(q) == len(runs)
        for label, run in enumerate(runs, start=1):
            for p in run:
                assert q.label(p) == label
                assert q.class_min(p) == run[0]
                assert q.class_max(p) == run[-1]
            if label < len(runs):
                assert pair_successor(q.class_max(run[0]), order) == q.class_min(runs[label][0])
                assert q.class_successor(run[0]) == runs[label][0]


@given(st.integers(2, 7), st.integers(1, 6), st.integers(0, 10**6))
@settings(max_examples=50)
def test_class_order_is_representative_independent(n, m, seed):
    order = ProductOrder(n, m)
    rng = random.Random(seed)
    value_of = next(concordant_maps(order, rng, 1))
    q = build_quotient(order, value_of)
    elems = list(order.elements())
    a, a2, b = (rng.choice(elems) for _ in range(3))
    a2 = q.class_min(a) if rng.random() < 0.5 else q.class_max(a)
    if q.same_class(a, b):
        return
    assert (lex_compare(a, b) < 0) == (lex_compare(a2, b) < 0)
    assert q.class_compare(a, b) == lex_compare(a, b)


def test_class_minima_form_a_well_order():
    order = ProductOrder(5, 4)
    q = build_quotient(order, lambda p: int(order.rank(p)) // 3)
    minima = q.class_minima()
    assert minima == sorted(minima, key=cmp_to_key(lex_compare))
    assert lex_min(minima) == order.minimum()


def test_cut_quotient_on_an_infinite_order():
    order = ProductOrder(w, 2)
    q = CutQuotient(order, [P(1, 1), P(3, 2), P(w, 1)])
    assert q.label(P(2, 2)) == 1
    assert q.label(P(7, 1)) == 2
    assert q.class_max(P(1, 1)) == P(3, 1)
    assert order_type(q) == 3
    with pytest.raises(ResourceError):
        q.class_max(P(5, 1))
    with pytest.raises(DomainError):
        CutQuotient(order, [P(2, 1)])


def test_enumerated_quotient_refuses_infinite_orders():
    with pytest.raises(ResourceError):
        EnumeratedQuotient(ProductOrder(w, 2), lambda p: 0)

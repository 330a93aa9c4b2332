import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from transfinite import permgroup as pg
from transfinite.catalog import small_group
from transfinite.chains import TransfiniteSeries
from transfinite.errors import DomainError
from transfinite.ordinal import OMEGA as w
from transfinite.ordinal import Ordinal, successor
from transfinite.series import (factor_descriptors, finite_series,
                                is_composition_series, is_refinement,
                                jordan_holder_check, normal_series_of,
                                random_normal_series, refinement_is_fixed,
                                schreier_refine, series_isomorphic,
                                union_below, validate, zassenhaus)
from transfinite.tower import (IntervalSet, PositionBijection, TowerGroup,
                               series_from_bijection)

S3 = pg.generate(["(0 1)", "(0 1 2)"], 3)
A3 = pg.generate(["(0 1 2)"], 3)
S4 = pg.generate(["(0 1 2 3)", "(0 1)"], 4)
A4 = pg.generate(["(0 1 2)", "(1 2 3)"], 4)
V4 = pg.generate(["(0 1)(2 3)", "(0 2)(1 3)"], 4)
Z6 = pg.generate(["(0 1 2 3 4 5)"], 6)
Z12 = pg.generate(["(0 1 2 3 4 5 6 7 8 9 10 11)"], 12)
I = IntervalSet.interval


def power(g, k):
    out = pg.identity_perm(len(g))
    for _ in range(k):
        out = pg.compose(out, g)
    return out


def cyclic_sub(G, k):
    return pg.generate([power(G.generators[0], k)], G.degree)


def trivial(G):
    return pg.trivial_group(G.degree)


def z6_series():
    S = finite_series(Z6, [trivial(Z6), cyclic_sub(Z6, 2), Z6])
    T = finite_series(Z6, [trivial(Z6), cyclic_sub(Z6, 3), Z6])
    return S, T


# -- validation -------------------------------------------------------------------


def test_alternating_inside_symmetric_is_valid():
    assert validate(finite_series(S3, [trivial(S3), A3, S3])).ok


def test_non_normal_step_is_reported_with_its_index():
    S = finite_series(S4, [trivial(S4), ["(0 1)"], S4])
    report = validate(S)
    assert [(v.clause, v.index) for v in report.violations] == [("normal", 2)]
    assert "normal at index 2" in str(report.violations[0])


def test_bottom_top_and_strictness_violations():
    clauses = lambda S: {v.clause for v in validate(S).violations}
    assert "bottom" in clauses(finite_series(S3, [A3, S3]))
    assert "top" in clauses(finite_series(S3, [trivial(S3), A3]))
    assert "strict" in clauses(finite_series(S3, [trivial(S3), A3, A3, S3]))


def test_identity_tower_passes_the_limit_check_at_omega():
    G = TowerGroup(w, default="C2")
    S = series_from_bijection(G, PositionBijection.identity(w))
    report = validate(S, random.Random(0))
    assert report.ok
    assert w in report.checked_limits
    assert union_below(S, w) == I(0, w)


def test_broken_limit_is_reported():
    G = TowerGroup(w * 2, default="C2")
    good = series_from_bijection(G, PositionBijection.identity(w * 2))

    def support(a):
        return I(0, 5) if a == w else good.subgroup_at(a)

    bad = TransfiniteSeries.tower(G, good.top, support, bijection=good.bijection)
    report = validate(bad, random.Random(0))
    assert any(v.clause == "limit" and v.index == w for v in report.violations)


# -- Zassenhaus ---------------------------------------------------------------------


def test_zassenhaus_is_trivial_when_each_small_group_is_its_big_group():
    for G, H in [(S4, A4), (V4, A4), (A4, A4)]:
        r = zassenhaus(G, G, H, H)
        assert r.factor1.order == r.factor2.order == 1


def test_zassenhaus_on_s4():
    r = zassenhaus(A4, V4, S4, A4)
    assert 3 % r.factor1.order == 0
    assert r.factor1.order == r.factor2.order
    assert r.witness_is_isomorphism()


def test_zassenhaus_on_z12():
    r = zassenhaus(cyclic_sub(Z12, 2), cyclic_sub(Z12, 4), Z12, cyclic_sub(Z12, 3))
    assert pg.are_isomorphic(r.factor1, r.factor2)[0]
    assert r.witness_is_isomorphism()


def test_zassenhaus_names_the_failing_pair():
    with pytest.raises(DomainError, match="first pair"):
        zassenhaus(S4, pg.generate(["(0 1)"], 4), S4, A4)
    with pytest.raises(DomainError, match="second pair"):
        zassenhaus(S4, A4, A4, S4)


def normal_pairs(G):
    subs = pg.subgroups(G)
    return [(N, H) for H in subs for N in subs if N <= H and pg.is_normal_in(N, H)]


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_zassenhaus_is_symmetric_under_swapping_pairs(seed):
    rng = random.Random(seed)
    pairs = normal_pairs(S4)
    (G, Gb), (H, Hb) = rng.choice(pairs), rng.choice(pairs)
    r, s = zassenhaus(Gb, G, Hb, H), zassenhaus(Hb, H, Gb, G)
    assert (r.upper1, r.lower1, r.upper2, r.lower2) == (s.upper2, s.lower2, s.upper1, s.lower1)
    assert r.upper1.order // r.lower1.order == r.upper2.order // r.lower2.order
    assert r.witness_is_isomorphism() and s.witness_is_isomorphism()
    # the four groups nest as the construction promises
    assert r.lower1 <= r.upper1 <= Gb and G <= r.lower1
    assert r.lower2 <= r.upper2 <= Hb and H <= r.lower2


# -- refinement ---------------------------------------------------------------------


def test_refining_a_series_against_itself_changes_nothing():
    S = finite_series(S3, [trivial(S3), A3, S3])
    r = schreier_refine(S, S)
    assert r.refined_first.keys() == S.keys()
    assert r.refined_second.keys() == S.keys()
    assert r.pairing == {Ordinal.of(1): Ordinal.of(1), Ordinal.of(2): Ordinal.of(2)}


def test_z6_refinement_pairs_the_factors_crosswise():
    S, T = z6_series()
    r = schreier_refine(S, T)
    assert r.refined_first.keys() == S.keys()
    assert r.refined_second.keys() == T.keys()
    assert r.pairing == {Ordinal.of(1): Ordinal.of(2), Ordinal.of(2): Ordinal.of(1)}
    for row in r.factor_table:
        assert row.first.isomorphic_to(row.second)
    assert [row.first.name for row in r.factor_table] == ["C3", "C2"]


def product_set(A, B):
    return frozenset(pg.compose(a, b) for a in A.elements for b in B.elements)


def naive_refinement(S, T):
    """Distinct members of ``G_i (G_{i+1} n H_j)`` in lexicographic order, by set products."""
    G, H = S.subgroups, T.subgroups
    out = []
    for i in range(len(G) - 1):
        for j in range(len(H)):
            X = product_set(G[i], pg.intersect(G[i + 1], H[j]))
            if not out or out[-1] != X:
                out.append(X)
    if out[-1] != G[-1].elements:
        out.append(G[-1].elements)
    return out


@pytest.mark.parametrize("name", ["S4", "D4", "Q8", "A4", "C12"])
def test_refinement_matches_the_set_product_oracle(name):
    G = small_group(name)
    series = list(normal_series_of(G))
    for a, b in itertools.product(series, repeat=2):
        S, T = finite_series(G, a), finite_series(G, b)
        r = schreier_refine(S, T)
        assert [H.elements for H in r.refined_first.subgroups] == naive_refinement(S, T)
        assert [H.elements for H in r.refined_second.subgroups] == naive_refinement(T, S)
        assert r.theta_hits_class_max
        assert validate(r.refined_first).ok and validate(r.refined_second).ok
        assert is_refinement(r.refined_first, S) and is_refinement(r.refined_second, T)
        assert r.p == r.q
        assert sorted(r.pairing.values()) == [Ordinal.of(k) for k in range(1, int(r.q))]
        for row in r.factor_table:
            assert row.first.isomorphic_to(row.second)


def test_refinement_rejects_mismatched_inputs():
    S, _ = z6_series()
    with pytest.raises(DomainError):
        schreier_refine(S, finite_series(S3, [trivial(S3), A3, S3]))
    with pytest.raises(DomainError, match="not a normal series"):
        schreier_refine(S, finite_series(Z6, [trivial(Z6), Z6, Z6]))
    tower = series_from_bijection(TowerGroup(w, default="C2"), PositionBijection.identity(w))
    with pytest.raises(DomainError, match="backend"):
        schreier_refine(S, tower)


def test_tower_refinement_of_identity_against_moved():
    G = TowerGroup(w, default="C2")
    S = series_from_bijection(G, PositionBijection.identity(w))
    T = series_from_bijection(G, PositionBijection.identity(w).moved(0, 1))
    r = schreier_refine(S, T)
    assert r.refined_first.top == S.top
    assert r.refined_second.top == T.top
    assert is_refinement(r.refined_first, S, random.Random(1))
    assert is_refinement(r.refined_second, T, random.Random(1))
    # position 0 enters S first and T last
    assert r.pairing(1) == w
    assert r.pairing(2) == 1
    assert r.pairing(5) == 4
    assert r.theta_hits_class_max


def test_tower_refinement_needs_composition_series():
    G = TowerGroup(w * 2, default="C2")
    S = series_from_bijection(G, PositionBijection.identity(w * 2))
    coarse = TransfiniteSeries.tower(G, 3, lambda a: [IntervalSet(), I(0, w), I(0, w * 2)][int(a) - 1])
    with pytest.raises(DomainError, match="composition"):
        schreier_refine(S, coarse)


def tower_pool(bound):
    G = TowerGroup(bound, cycle=["C2", "C3", "C5"])
    ident = PositionBijection.identity(bound)
    pis = [ident, ident.moved(0, 1), ident.moved(0, 3, dest=w), ident.moved(w, w + 2, dest=0),
           ident.moved(2, w)]
    return G, [series_from_bijection(G, pi) for pi in pis]


def test_tower_refinements_keep_limit_classes_continuous():
    G, pool = tower_pool(w * 2)
    rng = random.Random(5)
    for S, T in itertools.product(pool, repeat=2):
        r = schreier_refine(S, T)
        for R in (r.refined_first, r.refined_second):
            report = validate(R, rng)
            assert report.ok, report.violations
            for lam in report.checked_limits:
                assert R.subgroup_at(lam) == union_below(R, lam)


def test_tower_pairing_matches_factor_labels():
    G, pool = tower_pool(w * 2)
    for S, T in itertools.product(pool, repeat=2):
        r = schreier_refine(S, T)
        for row in r.factor_table:
            assert row.first == row.second
            assert sum(row.first.values()) == 1


# -- isomorphism of series ------------------------------------------------------------


def test_series_isomorphic_examples():
    S, T = z6_series()
    assert series_isomorphic(S, S) == {Ordinal.of(1): Ordinal.of(1), Ordinal.of(2): Ordinal.of(2)}
    assert series_isomorphic(S, T) == {Ordinal.of(1): Ordinal.of(2), Ordinal.of(2): Ordinal.of(1)}
    # different groups with the same factor list
    s3 = finite_series(S3, [trivial(S3), A3, S3])
    assert series_isomorphic(s3, S) == {Ordinal.of(1): Ordinal.of(1), Ordinal.of(2): Ordinal.of(2)}
    assert series_isomorphic(s3, T) is not None
    assert series_isomorphic(s3, finite_series(S3, [trivial(S3), S3])) is None


def test_series_isomorphic_on_tower_series():
    G, pool = tower_pool(w * 2)
    S, T = pool[0], pool[1]
    phi = series_isomorphic(S, T)
    for a in [1, 2, 3, 7, w, w + 1]:
        b = phi(a)
        assert (successor_support(S, a)) == successor_support(T, b)
    with pytest.raises(DomainError):
        series_isomorphic(S, finite_series(S3, [trivial(S3), A3, S3]))


def successor_support(S, a):
    return S.subgroup_at(successor(a)) - S.subgroup_at(a)


@pytest.mark.parametrize("name", ["S3", "S4", "D4", "Q8", "A4", "C12"])
def test_isomorphism_of_series_is_symmetric_and_witnessed(name):
    G = small_group(name)
    series = [finite_series(G, c) for c in normal_series_of(G)]
    for S, T in itertools.product(series, repeat=2):
        phi = series_isomorphic(S, T)
        assert (phi is None) == (series_isomorphic(T, S) is None)
        if phi is None:
            continue
        fS, fT = factor_descriptors(S), factor_descriptors(T)
        assert sorted(phi.values()) == sorted(phi)
        for a, b in phi.items():
            assert pg.are_isomorphic(fS[int(a) - 1].group, fT[int(b) - 1].group)[0]


# -- composition series -------------------------------------------------------------


def test_composition_certificates():
    good = finite_series(S4, [trivial(S4), ["(0 1)(2 3)"], V4, A4, S4])
    report = is_composition_series(good)
    assert report.ok
    assert [row[2] for row in report.certificate] == ["C2", "C2", "C3", "C2"]
    coarse = finite_series(S4, [trivial(S4), V4, A4, S4])
    bad = is_composition_series(coarse)
    assert not bad.ok
    assert bad.first_failure() == (Ordinal.of(1), False, "C2xC2")


def test_composition_chains_are_composition_series():
    for G in (S4, Z12, small_group("Q8")):
        for chain in pg.composition_chains(G):
            assert is_composition_series(finite_series(G, chain)).ok


# -- fixed refinements and Jordan-Holder ---------------------------------------------


def test_refinement_is_fixed_examples():
    comp = finite_series(S4, [trivial(S4), ["(0 1)(2 3)"], V4, A4, S4])
    assert refinement_is_fixed(comp, finite_series(S4, [trivial(S4), A4, S4]))
    assert refinement_is_fixed(comp, finite_series(S4, [trivial(S4), V4, S4]))
    coarse = finite_series(S4, [trivial(S4), V4, S4])
    assert not refinement_is_fixed(coarse, finite_series(S4, [trivial(S4), A4, S4]))


@pytest.mark.parametrize("name", ["S4", "Z12", "Q8", "D4"])
def test_composition_series_are_fixed_by_every_normal_series(name):
    G = {"S4": S4, "Z12": Z12}.get(name) or small_group(name)
    normals = [finite_series(G, c) for c in normal_series_of(G)]
    for chain in pg.composition_chains(G):
        S = finite_series(G, chain)
        for T in normals:
            assert refinement_is_fixed(S, T)


def test_jordan_holder_on_z6():
    S, T = z6_series()
    v = jordan_holder_check(S, T)
    assert v.isomorphic
    assert v.factors == ["C3", "C2"]
    assert v.n == v.m == 3
    assert v.same_top and v.same_cardinality


@pytest.mark.parametrize("name", ["S4", "C12", "Q8", "D4", "A4"])
def test_jordan_holder_over_all_composition_chains(name):
    G = small_group(name)
    chains = [finite_series(G, c) for c in pg.composition_chains(G)]
    for S, T in itertools.product(chains, repeat=2):
        v = jordan_holder_check(S, T)
        assert v.isomorphic
        assert v.first_fixed and v.second_fixed
        assert sorted(v.factors) == sorted(d.name for d in factor_descriptors(T))


def test_jordan_holder_rejects_non_composition_series():
    coarse = finite_series(S4, [trivial(S4), V4, A4, S4])
    good = finite_series(S4, [trivial(S4), ["(0 1)(2 3)"], V4, A4, S4])
    with pytest.raises(DomainError, match="factor at index 1 is C2xC2"):
        jordan_holder_check(coarse, good)


def test_transfinite_jordan_holder_keeps_cardinality_but_not_length():
    G = TowerGroup(w, default="C2")
    S = series_from_bijection(G, PositionBijection.identity(w))
    T = series_from_bijection(G, PositionBijection.identity(w).moved(0, 1))
    v = jordan_holder_check(S, T)
    assert v.isomorphic
    assert (v.n, v.m) == (w, w + 1)
    assert not v.same_top
    assert v.same_cardinality
    assert v.lengths == (w + 1, w + 2)
    assert v.pairing(1) == w


def test_tower_jordan_holder_over_a_pool():
    G, pool = tower_pool(w * 2)
    for S, T in itertools.product(pool, repeat=2):
        v = jordan_holder_check(S, T)
        assert v.isomorphic
        assert v.factors == ["C2", "C3", "C5"]


# -- normal series enumeration -------------------------------------------------------


def test_normal_series_enumeration_counts():
    assert len(list(normal_series_of(S3))) == 2
    assert len(list(normal_series_of(small_group("C12")))) == 8
    for chain in normal_series_of(S4):
        assert validate(finite_series(S4, chain)).ok


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_random_normal_series_are_valid(seed):
    rng = random.Random(seed)
    G = small_group(rng.choice(["S3", "S4", "D4", "Q8", "A4", "C12"]))
    S = random_normal_series(G, rng)
    assert validate(S).ok
    assert [H.elements for H in S.subgroups] in [[H.elements for H in c] for c in normal_series_of(G)]

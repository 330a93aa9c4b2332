"""
Normal and composition series, and the refinement machinery relating them.

Two backends share the same entry points:

* finite permutation groups, where every subgroup is materialised and all
  checks are exhaustive;
* tower groups, where subgroups are position sets and checks run on
  interval arithmetic plus a deterministic sample of indices.

The refinement builds the two double-indexed families
``G_ij = G_i (G_{i+1} n H_j)`` and ``H_ji = H_j (H_{j+1} n G_i)``, glues
indices carrying equal subgroups, renumbers the surviving classes and pairs
the factors through the swap ``(i, j) <-> (j, i)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import permgroup as pg
from .chains import FINITE, TransfiniteSeries
from .errors import DomainError
from .indexset import (LocatorQuotient, PairIndex, ProductOrder, Quotient,
                       build_quotient)
from .ordinal import (ONE, Ordinal, add, cardinality, format_ordinal,
                      fundamental, left_subtract, predecessor, random_below,
                      successor)
from .tower import (IntervalSet, increment, rank_of_index, threshold)


def finite_series(group: pg.PermGroup, subgroups, name=None) -> TransfiniteSeries:
    """Series over a permutation group; accepts subgroups or generator lists."""
    chain = []
    for H in subgroups:
        if not isinstance(H, pg.PermGroup):
            H = pg.generate(H, group.degree)
        chain.append(H)
    return TransfiniteSeries.finite(group, chain, name=name)


def normal_series_of(G: pg.PermGroup):
    """Every normal series of ``G``, as bottom-up subgroup lists."""
    subs = pg.subgroups(G)
    above = {H: [K for K in subs if H < K and pg.is_normal_in(H, K)] for H in subs}

    def extend(chain):
        top = chain[-1]
        if top == G:
            yield list(chain)
            return
        for K in above[top]:
            if K <= G:
                yield from extend(chain + [K])

    yield from extend([pg.trivial_group(G.degree)])


def random_normal_series(G: pg.PermGroup, rng: random.Random) -> TransfiniteSeries:
    """A random walk up the lattice of normal steps, ending at ``G``."""
    subs = pg.subgroups(G)
    chain = [pg.trivial_group(G.degree)]
    while chain[-1] != G:
        top = chain[-1]
        options = [K for K in subs if top < K and pg.is_normal_in(top, K)
                   and _reaches(K, G, subs)]
        chain.append(rng.choice(options))
    return TransfiniteSeries.finite(G, chain)


def _reaches(K, G, subs) -> bool:
    """Whether some normal series runs from ``K`` up to ``G``."""
    if G not in _REACH:
        reach = {G: True}
        for H in sorted(subs, key=lambda H: -H.order):
            if H not in reach:
                reach[H] = any(reach.get(K) and pg.is_normal_in(H, K)
                               for K in subs if H < K)
        _REACH[G] = reach
    return _REACH[G].get(K, False)


_REACH: dict = {}


# -- index sampling for the tower backend -------------------------------------


def sample_indices(top, rng: random.Random | None = None, extra: int = 12) -> list:
    """Deterministic landmark indices in ``[1, top]`` plus seeded random ones."""
    top = Ordinal.of(top)
    found = {Ordinal.of(a) for a in range(1, 7) if a <= top}
    found.add(top)
    if not top.is_finite():
        lead = int(top.leading_exponent())
        for coeffs in _coefficient_grid(lead + 1):
            terms = [(Ordinal.of(e), c) for e, c in zip(range(lead, -1, -1), coeffs) if c]
            a = Ordinal(terms)
            if ONE <= a <= top:
                found.add(a)
        a = top
        while a.terms:
            found.add(a.limit_part() if a.limit_part() >= ONE else a)
            a = Ordinal(a.terms[:-1])
            if a >= ONE:
                found.add(a)
    rng = rng or random.Random(0)
    for _ in range(extra):
        a = random_below(successor(top), rng)
        if a >= ONE:
            found.add(a)
    return sorted(found)


def _coefficient_grid(width):
    if width == 0:
        yield ()
        return
    for rest in _coefficient_grid(width - 1):
        for c in (0, 1, 2):
            yield (c,) + rest


def sup_rank_below(limit) -> Ordinal:
    """Supremum of the ranks of the indices below a limit index.

    Computed from three terms of the fundamental sequence: they share every
    Cantor-normal-form term but the last, whose coefficient grows without
    bound, so the supremum bumps that term's exponent by one.
    """
    seq = [rank_of_index(fundamental(limit, k)) for k in (2, 3, 4)]
    bases = {Ordinal(s.terms[:-1]) for s in seq}
    exps = {s.terms[-1][0] for s in seq}
    coeffs = [s.terms[-1][1] for s in seq]
    if len(bases) != 1 or len(exps) != 1 or not coeffs[0] < coeffs[1] < coeffs[2]:
        raise DomainError(f"cannot take the supremum below {limit}")
    return add(bases.pop(), Ordinal.omega(successor(exps.pop())))


def union_below(series: TransfiniteSeries, limit) -> IntervalSet:
    """Union of the supports at indices strictly below a limit index."""
    if series.bijection is None:
        raise DomainError("limit unions need a bijection-described series")
    return series.bijection.image_prefix(sup_rank_below(limit))


# -- validation ---------------------------------------------------------------


@dataclass
class Violation:
    clause: str
    index: Ordinal
    message: str

    def __str__(self):
        return f"{self.clause} at index {format_ordinal(self.index)}: {self.message}"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    checked_indices: list = field(default_factory=list)
    checked_limits: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, clause, index, message):
        self.violations.append(Violation(clause, Ordinal.of(index), message))


def validate(series: TransfiniteSeries, rng: random.Random | None = None) -> ValidationReport:
    """Check the chain conditions; an empty report means a valid normal series."""
    if series.backend == FINITE:
        return _validate_finite(series)
    return _validate_tower(series, rng)


def _validate_finite(series) -> ValidationReport:
    report = ValidationReport()
    G = series.group
    chain = series.subgroups
    report.checked_indices = series.indices()
    for a, H in enumerate(chain, start=1):
        if H.degree != G.degree or not H.elements <= G.elements:
            report.add("subgroup", a, "not a subgroup of the group")
    if not chain[0].is_trivial():
        report.add("bottom", 1, f"first subgroup has order {chain[0].order}, expected 1")
    if chain[-1] != G:
        report.add("top", len(chain), "last subgroup is not the whole group")
    for a in range(1, len(chain)):
        lower, upper = chain[a - 1], chain[a]
        if not lower.elements < upper.elements:
            report.add("strict", a, f"subgroup {a} is not properly contained in subgroup {a + 1}")
            continue
        if not pg.is_normal_in(lower, upper):
            report.add("normal", a, f"subgroup {a} is not normal in subgroup {a + 1}")
    return report


def _validate_tower(series, rng) -> ValidationReport:
    report = ValidationReport()
    G = series.group
    top = series.top
    whole = G.whole()
    if series.subgroup_at(1):
        report.add("bottom", 1, f"support {series.subgroup_at(1)} is not empty")
    if series.subgroup_at(top) != whole:
        report.add("top", top, f"support {series.subgroup_at(top)} is not {whole}")
    indices = sample_indices(top, rng)
    report.checked_indices = indices
    for a in indices:
        S = series.subgroup_at(a)
        if not S <= whole:
            report.add("subgroup", a, f"support {S} leaves the group")
        if a < top:
            T = series.subgroup_at(successor(a))
            if not S < T:
                report.add("strict", a, f"{S} is not properly inside {T}")
    for a, b in zip(indices, indices[1:]):
        if not series.subgroup_at(a) <= series.subgroup_at(b):
            report.add("normal", a, f"support at {format_ordinal(a)} not inside support at {format_ordinal(b)}")
    for lam in indices:
        if not lam.is_limit():
            continue
        report.checked_limits.append(lam)
        here = series.subgroup_at(lam)
        if series.bijection is None:
            continue
        below = union_below(series, lam)
        if here != below:
            report.add("limit", lam, f"support {here} differs from the union {below} of earlier supports")
        for k in (1, 2, 3):
            if not series.subgroup_at(fundamental(lam, k)) <= here:
                report.add("limit", lam, "an earlier support is not contained in the limit support")
    return report


# -- Zassenhaus -----------------------------------------------------------------


@dataclass
class ZassenhausResult:
    lower1: pg.PermGroup
    upper1: pg.PermGroup
    lower2: pg.PermGroup
    upper2: pg.PermGroup
    factor1: pg.TableGroup
    factor2: pg.TableGroup
    descriptor: pg.FactorDescriptor
    witness: dict

    def witness_is_isomorphism(self) -> bool:
        return (len(set(self.witness.values())) == self.factor1.n == self.factor2.n
                and pg.is_homomorphism(self.factor1, self.factor2, self.witness))


def zassenhaus(G_big: pg.PermGroup, G: pg.PermGroup, H_big: pg.PermGroup, H: pg.PermGroup) -> ZassenhausResult:
    """Butterfly construction for ``G`` normal in ``G_big`` and ``H`` normal in ``H_big``.

    The witness sends the coset ``x * lower1`` to ``x * lower2`` for ``x``
    in the intersection of the two big groups; it is checked to be a
    well-defined bijection before being returned.
    """
    for name, small, big in (("first", G, G_big), ("second", H, H_big)):
        if small.degree != big.degree or not small.elements <= big.elements:
            raise DomainError(f"{name} pair: the smaller group is not a subgroup of the larger")
        if not pg.is_normal_in(small, big):
            raise DomainError(f"{name} pair: the smaller group is not normal in the larger")
    core = pg.intersect(G_big, H_big)
    upper1 = pg.join(G, core)
    lower1 = pg.join(G, pg.intersect(G_big, H))
    upper2 = pg.join(H, core)
    lower2 = pg.join(H, pg.intersect(H_big, G))
    Q1 = pg.quotient(upper1, lower1)
    Q2 = pg.quotient(upper2, lower2)
    witness = {}
    for x in core.elements:
        a, b = Q1.coset_of[x], Q2.coset_of[x]
        if witness.setdefault(a, b) != b:
            raise AssertionError("butterfly map is not well defined")
    if len(witness) != Q1.n or len(set(witness.values())) != Q2.n:
        raise AssertionError("butterfly map is not a bijection")
    return ZassenhausResult(lower1, upper1, lower2, upper2, Q1, Q2, Q1.descriptor(), witness)


# -- refinement -----------------------------------------------------------------


@dataclass
class FactorRow:
    first_class: Ordinal
    second_class: Ordinal
    first: object
    second: object


@dataclass
class RefinementResult:
    refined_first: TransfiniteSeries
    refined_second: TransfiniteSeries
    pairing: object
    factor_table: list
    first_quotient: Quotient
    second_quotient: Quotient
    theta_hits_class_max: bool = True
    first_values: dict = field(default_factory=dict, repr=False)
    second_values: dict = field(default_factory=dict, repr=False)

    @property
    def p(self) -> Ordinal:
        return self.refined_first.top

    @property
    def q(self) -> Ordinal:
        return self.refined_second.top


def _check_pair(S1: TransfiniteSeries, S2: TransfiniteSeries):
    if S1.backend != S2.backend:
        raise DomainError(f"backend mismatch: {S1.backend} vs {S2.backend}")
    if S1.group != S2.group:
        raise DomainError("the two series belong to different groups")


def schreier_refine(S1: TransfiniteSeries, S2: TransfiniteSeries) -> RefinementResult:
    """Isomorphic refinements of two normal series of one group."""
    _check_pair(S1, S2)
    for label, S in (("first", S1), ("second", S2)):
        report = validate(S)
        if not report.ok:
            raise DomainError(f"{label} series is not a normal series: {report.violations[0]}")
    if S1.backend == FINITE:
        return _refine_finite(S1, S2)
    for label, S in (("first", S1), ("second", S2)):
        if not is_composition_series(S).ok:
            raise DomainError(f"tower refinement needs composition series; the {label} is not")
    return _refine_tower(S1, S2)


def _factor(upper, lower):
    return pg.quotient_descriptor(upper, lower)


def _refine_finite(S1, S2) -> RefinementResult:
    G, H = S1.subgroups, S2.subgroups
    n, m = len(G), len(H)
    if n == 1:
        return RefinementResult(S1, S2, {}, [], None, None)
    ij = ProductOrder(n, m)
    ji = ProductOrder(m, n)
    first_values = {}
    for p in ij.elements():
        i, j = int(p.major), int(p.minor)
        first_values[p] = pg.join(G[i - 1], pg.intersect(G[i], H[j - 1]))
    second_values = {}
    for p in ji.elements():
        j, i = int(p.major), int(p.minor)
        second_values[p] = pg.join(H[j - 1], pg.intersect(H[j], G[i - 1]))
    q1 = build_quotient(ij, lambda p: first_values[p].key())
    q2 = build_quotient(ji, lambda p: second_values[p].key())
    refined1 = TransfiniteSeries.finite(
        S1.group, [first_values[c] for c in q1.class_minima()], name="refined first")
    refined2 = TransfiniteSeries.finite(
        S2.group, [second_values[c] for c in q2.class_minima()], name="refined second")
    pairing = {}
    table = []
    theta_ok = True
    for a in range(1, q1.class_count()):
        rep = q1.class_minima()[a - 1]
        i, j = q1.class_max(rep)
        b = PairIndex(j, i)
        B = q2.label(b)
        theta_ok &= q2.class_max(b) == b
        pairing[Ordinal.of(a)] = B
        upper1, lower1 = refined1.subgroups[a], refined1.subgroups[a - 1]
        upper2, lower2 = refined2.subgroups[int(B)], refined2.subgroups[int(B) - 1]
        table.append(FactorRow(Ordinal.of(a), B, _factor(upper1, lower1), _factor(upper2, lower2)))
    return RefinementResult(refined1, refined2, pairing, table, q1, q2, theta_ok,
                            first_values, second_values)


class SymbolicPairing:
    """Class pairing of a tower refinement, evaluated on demand."""

    def __init__(self, fn, domain_top):
        self._fn = fn
        self.domain_top = Ordinal.of(domain_top)

    def __call__(self, a) -> Ordinal:
        a = Ordinal.of(a)
        if not ONE <= a < self.domain_top:
            raise DomainError(f"class {a} has no successor class")
        return self._fn(a)

    __getitem__ = __call__

    def items(self, indices):
        return [(Ordinal.of(a), self(a)) for a in indices if Ordinal.of(a) < self.domain_top]


class _TowerFamily:
    """Locator for the family ``X_ij = X_i u (X_{i+1} n Y_j)`` of composition series."""

    def __init__(self, X: TransfiniteSeries, Y: TransfiniteSeries):
        self.X, self.Y = X, Y
        self.order = ProductOrder(X.top, Y.top)

    def entry_threshold(self, i) -> Ordinal:
        (lo, _), = increment(self.X, i).intervals
        return threshold(self.Y, lo)

    def value(self, p) -> IntervalSet:
        i, j = p
        if i == self.X.top:
            return self.X.group.whole()
        return self.X.subgroup_at(i) | (self.X.subgroup_at(successor(i)) & self.Y.subgroup_at(j))

    def label(self, p) -> Ordinal:
        i, j = p
        if i == self.X.top:
            return i
        return i if j < self.entry_threshold(i) else successor(i)

    def class_min(self, k) -> PairIndex:
        k = Ordinal.of(k)
        if k == ONE or k.is_limit():
            return PairIndex(k, ONE)
        prev = predecessor(k)
        return PairIndex(prev, self.entry_threshold(prev))

    def class_max(self, k) -> PairIndex:
        k = Ordinal.of(k)
        if k < self.X.top:
            return PairIndex(k, predecessor(self.entry_threshold(k)))
        if self.X.top.is_limit():
            return PairIndex(k, ONE)
        return PairIndex(predecessor(k), self.Y.top)

    def quotient(self) -> LocatorQuotient:
        return LocatorQuotient(self.order, self.label, self.class_min, self.class_max)

    def refined(self, name) -> TransfiniteSeries:
        top = self.order_type()
        return TransfiniteSeries.tower(
            self.X.group, top, lambda k: self.value(self.class_min(k)),
            bijection=self.X.bijection, name=name)

    def order_type(self) -> Ordinal:
        return self.label(self.order.maximum())


def _refine_tower(S1, S2, samples: int = 24) -> RefinementResult:
    f1, f2 = _TowerFamily(S1, S2), _TowerFamily(S2, S1)
    refined1, refined2 = f1.refined("refined first"), f2.refined("refined second")

    def pair(a):
        i, j = f1.class_max(a)
        return f2.label(PairIndex(j, i))

    pairing = SymbolicPairing(pair, refined1.top)
    table = []
    theta_ok = True
    for a in sample_indices(refined1.top, extra=samples):
        if not a < refined1.top:
            continue
        i, j = f1.class_max(a)
        b = PairIndex(j, i)
        B = f2.label(b)
        theta_ok &= f2.class_max(B) == b
        table.append(FactorRow(a, B, factor_labels(refined1, a), factor_labels(refined2, B)))
    return RefinementResult(refined1, refined2, pairing, table, f1.quotient(), f2.quotient(), theta_ok)


def factor_labels(series: TransfiniteSeries, a) -> dict:
    return series.group.label_counts(series.subgroup_at(successor(a)) - series.subgroup_at(a))


# -- comparisons ----------------------------------------------------------------


def is_refinement(refined: TransfiniteSeries, original: TransfiniteSeries,
                  rng: random.Random | None = None) -> bool:
    """Every subgroup of ``original`` occurs in ``refined``."""
    if refined.backend != original.backend:
        return False
    if refined.backend == FINITE:
        keys = set(refined.keys())
        return all(k in keys for k in original.keys())
    if refined.top.is_finite():
        keys = set(refined.keys())
        return all(original.key_at(a) in keys for a in sample_indices(original.top, rng))
    # positions enter each chain one at a time; a support occurs in the
    # refined chain exactly at the index one past its last entry rank
    for a in sample_indices(original.top, rng):
        S = original.subgroup_at(a)
        if not S:
            if refined.subgroup_at(ONE):
                return False
            continue
        target = _index_with_support(refined, S)
        if target is None or refined.subgroup_at(target) != S:
            return False
    return True


def _index_with_support(series, S):
    if series.bijection is None:
        return None
    pi = series.bijection
    top_rank = None
    for lo, hi in S.intervals:
        # ranks of the positions in [lo, hi) fill whole blocks of the bijection
        for blo, bhi, start, end in _block_spans(pi):
            s, e = max(lo, blo), min(hi, bhi)
            if s < e:
                last = add(start, left_subtract(e, blo))
                top_rank = last if top_rank is None or last > top_rank else top_rank
    return add(ONE, top_rank) if top_rank is not None else None


def _block_spans(pi):
    from .tower import _spans_of
    return _spans_of(pi.blocks)


def factor_descriptors(series: TransfiniteSeries) -> list:
    if series.backend != FINITE:
        raise DomainError("factor lists are only enumerable on the finite backend")
    chain = series.subgroups
    return [_factor(chain[a], chain[a - 1]) for a in range(1, len(chain))]


def series_isomorphic(S1: TransfiniteSeries, S2: TransfiniteSeries):
    """A bijection between successor indices with isomorphic factors, or ``None``."""
    if S1.backend != S2.backend:
        raise DomainError("cannot compare series across backends")
    if S1.backend == FINITE:
        return _match(factor_descriptors(S1), factor_descriptors(S2), lambda x, y: x.isomorphic_to(y))
    if S1.top.is_finite() and S2.top.is_finite():
        f1 = [factor_labels(S1, a) for a in S1.indices()[:-1]]
        f2 = [factor_labels(S2, a) for a in S2.indices()[:-1]]
        return _match(f1, f2, lambda x, y: x == y)
    if S1.group != S2.group:
        if S1.group.label_counts(S1.group.whole()) != S2.group.label_counts(S2.group.whole()):
            return None
        raise DomainError("witness construction across different tower groups is not supported")
    for S in (S1, S2):
        if S.bijection is None:
            raise DomainError("transfinite tower comparison needs bijection-described series")

    def same_position(a):
        (lo, _), = increment(S1, a).intervals
        return predecessor(threshold(S2, lo))

    return SymbolicPairing(same_position, S1.top)


def _match(first, second, same):
    if len(first) != len(second):
        return None
    used = [False] * len(second)
    out = {}
    for a, x in enumerate(first, start=1):
        for b, y in enumerate(second, start=1):
            if not used[b - 1] and same(x, y):
                used[b - 1] = True
                out[Ordinal.of(a)] = Ordinal.of(b)
                break
        else:
            return None
    return out


@dataclass
class CompositionReport:
    ok: bool
    certificate: list

    def first_failure(self):
        return next((row for row in self.certificate if not row[1]), None)


def is_composition_series(S: TransfiniteSeries, rng: random.Random | None = None) -> CompositionReport:
    """Per-index certificate ``(index, simple?, factor name)``."""
    rows = []
    if S.backend == FINITE:
        chain = S.subgroups
        for a in range(1, len(chain)):
            d = _factor(chain[a], chain[a - 1])
            rows.append((Ordinal.of(a), pg.quotient_is_simple(chain[a], chain[a - 1]), d.name))
        return CompositionReport(all(r[1] for r in rows), rows)
    if S.bijection is not None:
        indices = [a for a in sample_indices(S.top, rng) if a < S.top]
    else:
        indices = S.indices()[:-1]
    for a in indices:
        step = S.subgroup_at(successor(a)) - S.subgroup_at(a)
        labels = S.group.label_counts(step)
        rows.append((a, step.cardinality() == 1, ",".join(labels)))
    return CompositionReport(all(r[1] for r in rows), rows)


def _same_chain(R: TransfiniteSeries, S: TransfiniteSeries, rng=None) -> bool:
    if R.top != S.top:
        return False
    if R.backend == FINITE:
        return R.keys() == S.keys()
    return all(R.subgroup_at(a) == S.subgroup_at(a) for a in sample_indices(S.top, rng))


def refinement_is_fixed(S: TransfiniteSeries, T: TransfiniteSeries) -> bool:
    """Whether refining ``S`` against ``T`` leaves ``S`` unchanged."""
    return _same_chain(schreier_refine(S, T).refined_first, S)


@dataclass
class JordanHolderVerdict:
    isomorphic: bool
    pairing: object
    factors: list
    n: Ordinal
    m: Ordinal
    refinement: RefinementResult
    first_fixed: bool
    second_fixed: bool

    @property
    def same_top(self) -> bool:
        return self.n == self.m

    @property
    def same_cardinality(self) -> bool:
        if self.n.is_finite() or self.m.is_finite():
            return self.n == self.m
        return cardinality(self.n) == cardinality(self.m)

    @property
    def lengths(self):
        return (successor(left_subtract(self.n, ONE)), successor(left_subtract(self.m, ONE)))


def jordan_holder_check(S1: TransfiniteSeries, S2: TransfiniteSeries) -> JordanHolderVerdict:
    for label, S in (("first", S1), ("second", S2)):
        report = is_composition_series(S)
        if not report.ok:
            bad = report.first_failure()
            raise DomainError(f"{label} series is not a composition series "
                              f"(factor at index {format_ordinal(bad[0])} is {bad[2]})")
    r = schreier_refine(S1, S2)
    fixed1 = _same_chain(r.refined_first, S1)
    fixed2 = _same_chain(r.refined_second, S2)
    if S1.backend == FINITE:
        rows_ok = all(row.first.isomorphic_to(row.second) for row in r.factor_table)
        factors = [row.first.name for row in r.factor_table]
    else:
        rows_ok = all(row.first == row.second and len(row.first) == 1 for row in r.factor_table)
        factors = sorted({lab for row in r.factor_table for lab in row.first})
    iso = rows_ok and fixed1 and fixed2 and r.theta_hits_class_max
    return JordanHolderVerdict(iso, r.pairing, factors, S1.top, S2.top, r, fixed1, fixed2)

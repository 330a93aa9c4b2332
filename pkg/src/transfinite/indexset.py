"""
Well-ordered index sets built from ordinals.

A :class:`ProductOrder` is the lexicographically ordered set of pairs
``(i, j)`` with ``1 <= i < n`` and ``1 <= j <= m``, extended by the single
element ``(n, 1)`` on top when ``n`` is a limit ordinal so that a maximum
always exists.  Pairs are compared major-first.

Quotients of such an order by an equivalence whose classes are convex
("concordant") are again well-ordered; classes are labelled by ordinals
``1, 2, ..., p`` and ``p`` is what :meth:`Quotient.order_type` returns.
Three quotient flavours share one interface:

* :class:`EnumeratedQuotient` -- finite orders, built by scanning a value map;
* :class:`CutQuotient` -- finitely many classes given by their minima;
* :class:`LocatorQuotient` -- infinitely many classes, located by callbacks.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Callable, Hashable, NamedTuple

from .errors import ContractError, DomainError, ResourceError
from .ordinal import (ONE, Ordinal, add, compare, format_ordinal,
                      left_subtract, mul, predecessor, random_below, successor)


class PairIndex(NamedTuple):
    major: Ordinal
    minor: Ordinal

    @classmethod
    def of(cls, major, minor) -> "PairIndex":
        return cls(Ordinal.of(major), Ordinal.of(minor))

    def __str__(self):
        return f"({format_ordinal(self.major)},{format_ordinal(self.minor)})"


def type_of_closed_interval(top) -> Ordinal:
    """Order type of ``{a : 1 <= a <= top}``."""
    return successor(left_subtract(top, ONE))


def label_for_type(tau) -> Ordinal:
    """The ordinal ``p`` with ``{a : 1 <= a <= p}`` of order type ``tau``.

    ``tau`` must have a maximum, i.e. be a successor ordinal.
    """
    tau = Ordinal.of(tau)
    if not tau.is_successor():
        raise DomainError(f"order type {tau} has no maximum element")
    return add(ONE, predecessor(tau))


@dataclass(frozen=True)
class ProductOrder:
    major_bound: Ordinal
    minor_bound: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "major_bound", Ordinal.of(self.major_bound))
        object.__setattr__(self, "minor_bound", Ordinal.of(self.minor_bound))
        if self.major_bound < 2 or self.minor_bound < 1:
            raise DomainError(
                f"product order needs major bound >= 2 and minor bound >= 1, "
                f"got {self.major_bound} x {self.minor_bound}")

    @property
    def has_adjoined_max(self) -> bool:
        return self.major_bound.is_limit()

    @property
    def adjoined_max(self):
        return PairIndex(self.major_bound, ONE) if self.has_adjoined_max else None

    def maximum(self) -> PairIndex:
        if self.has_adjoined_max:
            return self.adjoined_max
        return PairIndex(predecessor(self.major_bound), self.minor_bound)

    def minimum(self) -> PairIndex:
        return PairIndex(ONE, ONE)

    def contains(self, p) -> bool:
        i, j = p
        if self.has_adjoined_max and i == self.major_bound and j == ONE:
            return True
        return 1 <= i < self.major_bound and 1 <= j <= self.minor_bound

    def is_finite(self) -> bool:
        return self.major_bound.is_finite() and self.minor_bound.is_finite()

    def __len__(self):
        if not self.is_finite():
            raise ResourceError(f"{self} is infinite")
        return (int(self.major_bound) - 1) * int(self.minor_bound)

    def elements(self):
        """All pairs in increasing order (finite orders only)."""
        if not self.is_finite():
            raise ResourceError(f"cannot enumerate the infinite order {self}")
        for i in range(1, int(self.major_bound)):
            for j in range(1, int(self.minor_bound) + 1):
                yield PairIndex.of(i, j)

    def row_type(self) -> Ordinal:
        return type_of_closed_interval(self.minor_bound)

    def rank(self, p) -> Ordinal:
        """Ordinal position of ``p`` counted from 0, via ordinal arithmetic."""
        self._check(p)
        i, j = p
        row = mul(self.row_type(), left_subtract(i, ONE))
        if self.has_adjoined_max and i == self.major_bound:
            return row
        return add(row, left_subtract(j, ONE))

    def order_type(self) -> Ordinal:
        return successor(self.rank(self.maximum()))

    def random_pair(self, rng: random.Random, max_coefficient: int = 4) -> PairIndex:
        if self.has_adjoined_max and rng.random() < 0.05:
            return self.adjoined_max
        while True:
            i = random_below(self.major_bound, rng, max_coefficient)
            if i >= 1:
                break
        while True:
            j = random_below(successor(self.minor_bound), rng, max_coefficient)
            if j >= 1:
                break
        return PairIndex(i, j)

    def _check(self, p):
        if not self.contains(p):
            raise DomainError(f"pair {PairIndex(*p)} is outside {self}")

    def __str__(self):
        return (f"[1,{format_ordinal(self.major_bound)})"
                f"x[1,{format_ordinal(self.minor_bound)}]")


def lex_compare(p1, p2, order: ProductOrder | None = None) -> int:
    """-1/0/1 lexicographic comparison, major component first."""
    if order is not None:
        order._check(p1)
        order._check(p2)
    c = compare(p1[0], p2[0])
    return c if c else compare(p1[1], p2[1])


def pair_successor(p, order: ProductOrder) -> PairIndex:
    order._check(p)
    i, j = PairIndex(*p)
    if p == order.maximum():
        raise DomainError(f"{PairIndex(*p)} is the maximum of {order}")
    if j < order.minor_bound:
        return PairIndex(i, successor(j))
    nxt = successor(i)
    if nxt == order.major_bound:
        # only reachable for the adjoined maximum, which has no successor
        raise DomainError(f"{PairIndex(*p)} has no successor in {order}")
    return PairIndex(nxt, ONE)


def pair_is_limit(p, order: ProductOrder | None = None) -> bool:
    """True when ``p`` has no immediate predecessor and is not the minimum."""
    if order is not None:
        order._check(p)
    i, j = p
    return (j == ONE and Ordinal.of(i).is_limit()) or Ordinal.of(j).is_limit()


def pair_predecessor(p, order: ProductOrder) -> PairIndex:
    order._check(p)
    i, j = PairIndex(*p)
    if pair_is_limit(p) or p == order.minimum():
        raise DomainError(f"{p} has no immediate predecessor")
    if j > ONE:
        return PairIndex(i, predecessor(j))
    return PairIndex(predecessor(i), order.minor_bound)


def lex_min(subset) -> PairIndex:
    """Minimum by first minimising the major component, then the minor one."""
    subset = list(subset)
    if not subset:
        raise DomainError("empty subset has no minimum")
    i_min = min(p[0] for p in subset)
    j_min = min(p[1] for p in subset if p[0] == i_min)
    return PairIndex(i_min, j_min)


@dataclass
class WellOrderReport:
    samples: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_wellorder(order: ProductOrder, sample_budget: int,
                    rng: random.Random | None = None,
                    max_subset: int = 8) -> WellOrderReport:
    """Sample random finite subsets and confirm each has a unique minimum.

    The projection minimum is compared with the head of a comparison sort,
    and lexicographic comparison is cross-checked against ordinal ranks.
    """
    rng = rng or random.Random(0)
    report = WellOrderReport()
    key = cmp_to_key(lex_compare)
    for _ in range(sample_budget):
        subset = [order.random_pair(rng) for _ in range(rng.randint(1, max_subset))]
        report.samples += 1
        m = lex_min(subset)
        head = sorted(subset, key=key)[0]
        if m != head:
            report.violations.append(f"minimum {m} disagrees with sorted head {head}")
        if sum(1 for p in subset if lex_compare(p, m) < 0):
            report.violations.append(f"{m} is not below every element of the sample")
        for a in subset:
            for b in subset:
                ab, ba = lex_compare(a, b), lex_compare(b, a)
                if ab != -ba or (ab == 0) != (a == b):
                    report.violations.append(f"comparison of {a} and {b} is not antisymmetric")
                if ab != compare(order.rank(a), order.rank(b)):
                    report.violations.append(f"{a} vs {b}: lex order disagrees with ranks")
    return report


# -- quotients ---------------------------------------------------------------


class Quotient:
    """Common interface of concordant quotients.  Class labels start at 1."""

    order: ProductOrder

    def label(self, p) -> Ordinal:
        raise NotImplementedError

    def class_min(self, p) -> PairIndex:
        raise NotImplementedError

    def class_max(self, p) -> PairIndex:
        raise NotImplementedError

    def order_type(self) -> Ordinal:
        """The label ``p`` of the top class."""
        return self.label(self.order.maximum())

    def same_class(self, p1, p2) -> bool:
        return self.label(p1) == self.label(p2)

    def class_successor(self, p) -> PairIndex:
        """Minimum of the class immediately above the class of ``p``."""
        return pair_successor(self.class_max(p), self.order)

    def class_compare(self, p1, p2) -> int:
        return compare(self.label(p1), self.label(p2))


class EnumeratedQuotient(Quotient):
    """Quotient of a finite order, computed by scanning ``value_of`` in order."""

    def __init__(self, order: ProductOrder, value_of: Callable[[PairIndex], Hashable]):
        self.order = order
        self.elements = list(order.elements())
        self.keys = [value_of(p) for p in self.elements]
        self.starts = []
        self._pos = {p: k for k, p in enumerate(self.elements)}
        first_seen = {}
        for k, key in enumerate(self.keys):
            if k and key == self.keys[k - 1]:
                continue
            if key in first_seen:
                a = first_seen[key]
                raise ContractError(
                    "value map is not concordant: "
                    f"{self.elements[a]} < {self.elements[k - 1]} < {self.elements[k]} "
                    "with equal outer values and a different middle value")
            first_seen[key] = k
            self.starts.append(k)

    def _class_index(self, p) -> int:
        self.order._check(p)
        return bisect_right(self.starts, self._pos[PairIndex(*p)]) - 1

    def label(self, p) -> Ordinal:
        return Ordinal.of(self._class_index(p) + 1)

    def class_min(self, p) -> PairIndex:
        return self.elements[self.starts[self._class_index(p)]]

    def class_max(self, p) -> PairIndex:
        c = self._class_index(p)
        end = self.starts[c + 1] if c + 1 < len(self.starts) else len(self.elements)
        return self.elements[end - 1]

    def class_count(self) -> int:
        return len(self.starts)

    def class_minima(self):
        return [self.elements[k] for k in self.starts]

    def class_key(self, p):
        return self.keys[self.starts[self._class_index(p)]]


class CutQuotient(Quotient):
    """Finitely many convex classes on a possibly infinite order.

    ``cuts`` are the class minima in increasing order; the first must be the
    minimum of the order.
    """

    def __init__(self, order: ProductOrder, cuts):
        self.order = order
        cuts = [PairIndex(*c) for c in cuts]
        if not cuts or cuts[0] != order.minimum():
            raise DomainError("the first cut must be the minimum of the order")
        for a, b in zip(cuts, cuts[1:]):
            if lex_compare(a, b, order) >= 0:
                raise DomainError(f"cuts must increase strictly, got {a} then {b}")
        self.cuts = cuts
        self._key = cmp_to_key(lex_compare)

    def _class_index(self, p) -> int:
        self.order._check(p)
        keys = [self._key(c) for c in self.cuts]
        return bisect_right(keys, self._key(PairIndex(*p))) - 1

    def label(self, p) -> Ordinal:
        return Ordinal.of(self._class_index(p) + 1)

    def class_min(self, p) -> PairIndex:
        return self.cuts[self._class_index(p)]

    def class_max(self, p) -> PairIndex:
        c = self._class_index(p)
        if c + 1 == len(self.cuts):
            return self.order.maximum()
        nxt = self.cuts[c + 1]
        if pair_is_limit(nxt):
            raise ResourceError(
                f"class below the limit cut {nxt} has no maximum element")
        return pair_predecessor(nxt, self.order)

    def class_count(self) -> int:
        return len(self.cuts)


class LocatorQuotient(Quotient):
    """Quotient whose classes are found by callbacks rather than enumeration.

    ``label_of`` maps a pair to its class label, ``min_of``/``max_of`` map a
    label to the extreme elements of that class.  ``max_of`` may raise
    :class:`ResourceError` for a class without a maximum.
    """

    def __init__(self, order: ProductOrder, label_of, min_of, max_of):
        self.order = order
        self._label_of = label_of
        self._min_of = min_of
        self._max_of = max_of

    def label(self, p) -> Ordinal:
        self.order._check(p)
        return Ordinal.of(self._label_of(PairIndex(*p)))

    def class_min(self, p) -> PairIndex:
        return PairIndex(*self._min_of(self.label(p)))

    def class_max(self, p) -> PairIndex:
        return PairIndex(*self._max_of(self.label(p)))


def build_quotient(order: ProductOrder, value_of) -> Quotient:
    """Quotient of a finite product order by equality of ``value_of``.

    Raises :class:`ContractError` naming a witnessing triple when the
    induced equivalence is not concordant.
    """
    return EnumeratedQuotient(order, value_of)


def class_max(q: Quotient, class_rep) -> PairIndex:
    return q.class_max(class_rep)


def order_type(q: Quotient) -> Ordinal:
    return q.order_type()

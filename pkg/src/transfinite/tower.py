"""
Tower groups: restricted direct sums of finite simple groups indexed by
ordinal positions.

Every subgroup considered here is the set of finitely supported elements
living on a set of positions, so a subgroup is just an :class:`IntervalSet`
of positions.  All such subgroups are normal, joins are unions and
intersections are intersections.  Ordering the positions by a
:class:`PositionBijection` gives a composition series whose ``k``-th
increment adds exactly one position.

Index convention: the series index ``a`` (starting at 1) corresponds to the
rank ``r`` with ``1 + r == a``; the subgroup at index ``a`` is the image of
the ranks ``[0, r)``.
"""

from __future__ import annotations

import math
import re
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass

from .chains import TransfiniteSeries
from .errors import DomainError, ParseError
from .ordinal import (ONE, ZERO, Ordinal, add, format_ordinal, left_subtract,
                      parse as parse_ordinal)

INFINITE = math.inf


# -- interval sets ------------------------------------------------------------


class IntervalSet:
    """A finite union of half-open ordinal intervals ``[lo, hi)``, kept canonical."""

    __slots__ = ("intervals",)

    def __init__(self, intervals=()):
        pieces = sorted(((Ordinal.of(lo), Ordinal.of(hi)) for lo, hi in intervals),
                        key=lambda iv: iv[0])
        merged = []
        for lo, hi in pieces:
            if not lo < hi:
                continue
            if merged and lo <= merged[-1][1]:
                if hi > merged[-1][1]:
                    merged[-1] = (merged[-1][0], hi)
            else:
                merged.append((lo, hi))
        self.intervals = tuple(merged)

    @classmethod
    def interval(cls, lo, hi) -> "IntervalSet":
        return cls([(lo, hi)])

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls()

    def __bool__(self):
        return bool(self.intervals)

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __contains__(self, x):
        x = Ordinal.of(x)
        k = bisect_right([lo for lo, _ in self.intervals], x) - 1
        return k >= 0 and x < self.intervals[k][1]

    def __le__(self, other: "IntervalSet"):
        return not set_difference(self, other)

    def __lt__(self, other: "IntervalSet"):
        return self <= other and self != other

    def __or__(self, other):
        return set_union(self, other)

    def __and__(self, other):
        return set_intersect(self, other)

    def __sub__(self, other):
        return set_difference(self, other)

    def key(self):
        return self

    def order_type(self) -> Ordinal:
        total = ZERO
        for lo, hi in self.intervals:
            total = add(total, left_subtract(hi, lo))
        return total

    def cardinality(self):
        """Number of positions, or ``math.inf`` for infinitely many."""
        t = self.order_type()
        return int(t) if t.is_finite() else INFINITE

    def min(self) -> Ordinal:
        if not self.intervals:
            raise DomainError("empty interval set has no minimum")
        return self.intervals[0][0]

    def __iter__(self):
        return iter(self.intervals)

    def __str__(self):
        return format_intervals(self)

    def __repr__(self):
        return f"IntervalSet({format_intervals(self)!r})"


def set_union(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return IntervalSet(a.intervals + b.intervals)


def set_intersect(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    out = []
    i = j = 0
    A, B = a.intervals, b.intervals
    while i < len(A) and j < len(B):
        lo = max(A[i][0], B[j][0])
        hi = min(A[i][1], B[j][1])
        if lo < hi:
            out.append((lo, hi))
        if A[i][1] < B[j][1]:
            i += 1
        else:
            j += 1
    return IntervalSet(out)


def set_difference(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    out = []
    for lo, hi in a.intervals:
        cur = lo
        for blo, bhi in b.intervals:
            if bhi <= cur or blo >= hi:
                continue
            if blo > cur:
                out.append((cur, blo))
            cur = max(cur, bhi)
            if cur >= hi:
                break
        if cur < hi:
            out.append((cur, hi))
    return IntervalSet(out)


def parse_intervals(text: str) -> IntervalSet:
    """Parse ``"[0,2) u [4,w+1)"``; ``"{}"`` is the empty set."""
    body = text.strip()
    if body in ("{}", "∅", ""):
        return IntervalSet()
    pieces = []
    pos = 0
    while pos < len(body):
        if body[pos].isspace():
            pos += 1
            continue
        if pieces:
            if body[pos] in "u∪":
                pos += 1
                continue
        if body[pos] != "[":
            raise ParseError("expected '[' opening an interval", text, pos)
        # ordinal literals may contain parentheses of their own
        depth = 0
        close = -1
        for k in range(pos + 1, len(body)):
            if body[k] == "(":
                depth += 1
            elif body[k] == ")":
                if depth == 0:
                    close = k
                    break
                depth -= 1
        if close < 0:
            raise ParseError("unterminated interval, expected ')'", text, pos)
        inner = body[pos + 1:close]
        comma = _top_level_comma(inner)
        if comma < 0:
            raise ParseError("interval needs 'lo,hi'", text, pos)
        try:
            lo = parse_ordinal(inner[:comma])
            hi = parse_ordinal(inner[comma + 1:])
        except ParseError as exc:
            raise ParseError(f"bad interval bound: {exc}", text, pos + 1) from None
        if hi < lo:
            raise ParseError("interval upper bound below lower bound", text, pos)
        pieces.append((lo, hi))
        pos = close + 1
    return IntervalSet(pieces)


def _top_level_comma(s: str) -> int:
    depth = 0
    for k, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return k
    return -1


def format_intervals(s: IntervalSet) -> str:
    if not s.intervals:
        return "{}"
    return " u ".join(f"[{format_ordinal(lo)},{format_ordinal(hi)})" for lo, hi in s.intervals)


# -- tower groups ---------------------------------------------------------------


_PRIME_LABEL = re.compile(r"^[CZ](\d+)$")


def canonical_label(label: str) -> str:
    """Labels name finite simple groups: ``C<p>`` (``Z<p>`` accepted) or ``A5``."""
    m = _PRIME_LABEL.match(label)
    if m:
        p = int(m.group(1))
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise DomainError(f"{label} is not cyclic of prime order")
        return f"C{p}"
    if label == "A5":
        return label
    raise DomainError(f"unknown simple-group label {label!r}; use C<p> or A5")


class TowerGroup:
    """Restricted direct sum of simple groups over positions ``[0, bound)``.

    ``pieces`` assigns labels on interval sets; positions not covered take
    the label ``cycle[finite part of position % len(cycle)]`` when a cycle is
    given, else ``default``.
    """

    def __init__(self, bound, pieces=(), default=None, cycle=None):
        self.bound = Ordinal.of(bound)
        if self.bound.is_zero():
            raise DomainError("a tower group needs at least one position")
        self.pieces = tuple((s if isinstance(s, IntervalSet) else IntervalSet([s]),
                             canonical_label(lab)) for s, lab in pieces)
        self.default = canonical_label(default) if default else None
        self.cycle = tuple(canonical_label(c) for c in cycle) if cycle else None
        covered = IntervalSet()
        for s, _ in self.pieces:
            if s & covered:
                raise DomainError("label pieces overlap")
            covered = covered | s
        if not covered <= self.whole():
            raise DomainError("label pieces extend past the position bound")
        if self.default is None and self.cycle is None and covered != self.whole():
            raise DomainError("some positions carry no label")

    def whole(self) -> IntervalSet:
        return IntervalSet.interval(ZERO, self.bound)

    def trivial(self) -> IntervalSet:
        return IntervalSet()

    def label_at(self, x) -> str:
        x = Ordinal.of(x)
        if not x < self.bound:
            raise DomainError(f"position {x} outside [0,{self.bound})")
        for s, lab in self.pieces:
            if x in s:
                return lab
        if self.cycle:
            return self.cycle[x.finite_part() % len(self.cycle)]
        return self.default

    def label_counts(self, support: IntervalSet) -> dict:
        """Multiset of labels over ``support``; counts may be ``math.inf``."""
        counts = Counter()
        rest = support
        for s, lab in self.pieces:
            part = support & s
            if part:
                counts[lab] += part.cardinality()
            rest = rest - s
        for lo, hi in rest.intervals:
            size = left_subtract(hi, lo)
            if self.cycle is None:
                counts[self.default] += int(size) if size.is_finite() else INFINITE
            elif not size.is_finite():
                for lab in self.cycle:
                    counts[lab] += INFINITE
            else:
                start = lo.finite_part()
                for d in range(int(size)):
                    counts[self.cycle[(start + d) % len(self.cycle)]] += 1
        return dict(sorted(counts.items()))

    def describe(self) -> str:
        parts = [f"bound={format_ordinal(self.bound)}"]
        for s, lab in self.pieces:
            parts.append(f"{lab} on {s}")
        if self.cycle:
            parts.append("cycle=" + ",".join(self.cycle))
        if self.default:
            parts.append(f"default={self.default}")
        return "; ".join(parts)

    def __eq__(self, other):
        if not isinstance(other, TowerGroup):
            return NotImplemented
        return (self.bound, self.pieces, self.default, self.cycle) == \
            (other.bound, other.pieces, other.default, other.cycle)

    def __hash__(self):
        return hash((self.bound, self.pieces, self.default, self.cycle))

    def __repr__(self):
        return f"TowerGroup({self.describe()})"


@dataclass(frozen=True)
class TowerSubgroup:
    parent: TowerGroup
    support: IntervalSet

    def __post_init__(self):
        if not self.support <= self.parent.whole():
            raise DomainError(f"support {self.support} leaves [0,{self.parent.bound})")

    def join(self, other: "TowerSubgroup") -> "TowerSubgroup":
        return TowerSubgroup(self.parent, self.support | other.support)

    def intersect(self, other: "TowerSubgroup") -> "TowerSubgroup":
        return TowerSubgroup(self.parent, self.support & other.support)

    def is_normal_in(self, other: "TowerSubgroup") -> bool:
        if not self.support <= other.support:
            raise DomainError("normality test needs a subgroup")
        return True


# -- position bijections --------------------------------------------------------


class PositionBijection:
    """Bijection from ranks ``[0, tau)`` onto positions ``[0, bound)``.

    Stored as blocks of positions listed in rank order; block ``k`` occupies
    the ranks following the blocks before it, in increasing position order.
    """

    def __init__(self, bound, blocks):
        self.bound = Ordinal.of(bound)
        blocks = [(Ordinal.of(lo), Ordinal.of(hi)) for lo, hi in blocks]
        merged = []
        for lo, hi in blocks:
            if not lo < hi:
                raise DomainError(f"empty block [{lo},{hi})")
            if merged and merged[-1][1] == lo:
                merged[-1] = (merged[-1][0], hi)
            else:
                merged.append((lo, hi))
        covered = sorted(merged, key=lambda b: b[0])
        expect = ZERO
        for lo, hi in covered:
            if lo != expect:
                raise DomainError(
                    f"blocks do not partition [0,{format_ordinal(self.bound)}): gap or overlap at {lo}")
            expect = hi
        if expect != self.bound:
            raise DomainError(
                f"blocks cover [0,{format_ordinal(expect)}), not [0,{format_ordinal(self.bound)})")
        self.blocks = tuple(merged)
        self.prefixes = []
        total = ZERO
        for lo, hi in self.blocks:
            self.prefixes.append(total)
            total = add(total, left_subtract(hi, lo))
        self.domain_type = total

    @classmethod
    def identity(cls, bound) -> "PositionBijection":
        return cls(bound, [(ZERO, bound)])

    def _spans(self):
        return _spans_of(self.blocks)

    def position_at(self, r) -> Ordinal:
        r = Ordinal.of(r)
        for lo, hi, start, end in self._spans():
            if start <= r < end:
                return add(lo, left_subtract(r, start))
        raise DomainError(f"rank {r} outside [0,{self.domain_type})")

    def rank_of(self, x) -> Ordinal:
        x = Ordinal.of(x)
        for lo, hi, start, end in self._spans():
            if lo <= x < hi:
                return add(start, left_subtract(x, lo))
        raise DomainError(f"position {x} outside [0,{self.bound})")

    def image(self, a, b) -> IntervalSet:
        """Positions of the ranks in ``[a, b)``."""
        a, b = Ordinal.of(a), Ordinal.of(b)
        out = []
        for lo, hi, start, end in self._spans():
            s, e = max(a, start), min(b, end)
            if s < e:
                out.append((add(lo, left_subtract(s, start)), add(lo, left_subtract(e, start))))
        return IntervalSet(out)

    def image_prefix(self, r) -> IntervalSet:
        return self.image(ZERO, r)

    def moved(self, lo, hi, dest=None) -> "PositionBijection":
        """Cut the ranks ``[lo, hi)`` and reinsert them before rank ``dest`` of
        what remains (``None`` appends at the end)."""
        lo, hi = Ordinal.of(lo), Ordinal.of(hi)
        if not lo < hi or hi > self.domain_type:
            raise DomainError(f"cannot cut ranks [{lo},{hi}) from [0,{self.domain_type})")
        blocks = _split_blocks(_split_blocks(list(self.blocks), lo), hi)
        cut, rest = [], []
        for blo, bhi, start, end in _spans_of(blocks):
            (cut if lo <= start and end <= hi else rest).append((blo, bhi))
        if dest is None:
            return PositionBijection(self.bound, rest + cut)
        dest = Ordinal.of(dest)
        remaining = _spans_of(rest)[-1][3] if rest else ZERO
        if dest > remaining:
            raise DomainError(f"destination rank {dest} beyond the remaining {remaining}")
        rest = _split_blocks(rest, dest)
        before = [(blo, bhi) for blo, bhi, start, _ in _spans_of(rest) if start < dest]
        after = rest[len(before):]
        return PositionBijection(self.bound, before + cut + after)

    def inverse(self) -> "PositionBijection":
        """Bijection from positions (as ranks) onto ranks (as positions)."""
        spans = sorted(self._spans(), key=lambda s: s[0])
        return PositionBijection(self.domain_type, [(start, end) for _, _, start, end in spans])

    def __eq__(self, other):
        if not isinstance(other, PositionBijection):
            return NotImplemented
        return self.bound == other.bound and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.bound, self.blocks))

    def describe(self) -> str:
        return " ".join(f"[{format_ordinal(lo)},{format_ordinal(hi)})" for lo, hi in self.blocks)

    def __repr__(self):
        return f"PositionBijection(bound={format_ordinal(self.bound)}, blocks={self.describe()})"


def _spans_of(blocks):
    """``(lo, hi, first rank, end rank)`` for consecutive blocks."""
    out = []
    total = ZERO
    for lo, hi in blocks:
        end = add(total, left_subtract(hi, lo))
        out.append((lo, hi, total, end))
        total = end
    return out


def _split_blocks(blocks, r):
    """Blocks with a boundary at rank ``r``."""
    out = []
    for lo, hi, start, end in _spans_of(blocks):
        if start < r < end:
            mid = add(lo, left_subtract(r, start))
            out += [(lo, mid), (mid, hi)]
        else:
            out.append((lo, hi))
    return out


def rank_of_index(a) -> Ordinal:
    """The rank ``r`` with ``1 + r == a`` (index 1 has rank 0)."""
    a = Ordinal.of(a)
    if a < ONE:
        raise DomainError("series indices start at 1")
    return left_subtract(a, ONE)


def index_of_rank(r) -> Ordinal:
    return add(ONE, r)


def series_from_bijection(G: TowerGroup, pi: PositionBijection, name=None) -> TransfiniteSeries:
    """Composition series whose index ``a`` holds the positions of ranks below ``a``'s rank."""
    if pi.bound != G.bound:
        raise DomainError(f"bijection targets [0,{pi.bound}) but the group has bound {G.bound}")
    top = index_of_rank(pi.domain_type)
    return TransfiniteSeries.tower(
        G, top, lambda a: pi.image_prefix(rank_of_index(a)), bijection=pi, name=name)


def increment(series: TransfiniteSeries, i) -> IntervalSet:
    """Support added between indices ``i`` and ``i + 1``."""
    i = Ordinal.of(i)
    if not i < series.top:
        raise DomainError(f"index {i} has no successor below the top {series.top}")
    if series.bijection is not None:
        x = series.bijection.position_at(rank_of_index(i))
        return IntervalSet.interval(x, add(x, ONE))
    return series.subgroup_at(add(i, ONE)) - series.subgroup_at(i)


def threshold(series: TransfiniteSeries, q) -> Ordinal:
    """Least index whose subgroup contains position ``q``."""
    q = Ordinal.of(q)
    G = series.group
    if not q < G.bound:
        raise DomainError(f"position {q} outside [0,{G.bound})")
    if series.bijection is not None:
        return add(index_of_rank(series.bijection.rank_of(q)), ONE)
    if not series.top.is_finite():
        raise DomainError("threshold needs a bijection or a finitely indexed series")
    for a in range(1, int(series.top) + 1):
        if q in series.subgroup_at(a):
            return Ordinal.of(a)
    raise DomainError(f"position {q} never enters the series")


def factor_label(series: TransfiniteSeries, i) -> dict:
    """Label multiset of the factor at index ``i``: a single label for composition series."""
    return series.group.label_counts(increment(series, i))

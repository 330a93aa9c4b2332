"""
Explicit finite permutation groups.

Permutations are tuples of images on the points ``0..degree-1``.  Products
are read left to right: ``compose(p, q)`` applies ``p`` first, then ``q``.

Every :class:`PermGroup` carries its full element set, so subgroup
operations are plain set operations plus closure.  Abstract groups that
arise as quotients are :class:`TableGroup` objects holding a Cayley table;
simplicity, isomorphism and factor descriptors work on those.
"""

from __future__ import annotations

import math
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .errors import DomainError, ParseError, ResourceError

ELEMENT_CAP = 20160
ISOMORPHISM_CAP = 512
CERTIFICATE_CAP = 64
CERTIFICATE_TUPLE_BUDGET = 60000


# -- permutations -------------------------------------------------------------


def identity_perm(degree: int) -> tuple:
    return tuple(range(degree))


def compose(p: tuple, q: tuple) -> tuple:
    """``p`` then ``q``."""
    return tuple(q[x] for x in p)


def invert(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def conjugate(n: tuple, g: tuple) -> tuple:
    """``g^-1 n g``."""
    return compose(compose(invert(g), n), g)


def perm_order(p: tuple) -> int:
    order = 1
    seen = set()
    for start in range(len(p)):
        if start in seen:
            continue
        length = 0
        x = start
        while x not in seen:
            seen.add(x)
            x = p[x]
            length += 1
        order = order * length // gcd(order, length)
    return order


def check_perm(p, degree: int) -> tuple:
    p = tuple(p)
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise DomainError(f"{p!r} is not a permutation of degree {degree}")
    return p


_CYCLE = re.compile(r"\(([^()]*)\)")
_TOKEN = re.compile(r"[^\s,]+")


def parse_perm(text: str, degree: int) -> tuple:
    """Parse disjoint-cycle notation such as ``"(0 1 2)(3 4)"``.

    Points may be separated by spaces or commas; ``"()"`` is the identity.
    """
    images = list(range(degree))
    pos = 0
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty permutation", text, 0)
    seen = set()
    offset = len(text) - len(text.lstrip())
    while pos < len(stripped):
        if stripped[pos].isspace():
            pos += 1
            continue
        m = _CYCLE.match(stripped, pos)
        if not m:
            raise ParseError("expected '(' starting a cycle", text, offset + pos)
        points = []
        for tok in _TOKEN.finditer(m.group(1)):
            at = offset + m.start(1) + tok.start()
            if not tok.group().isdigit():
                raise ParseError("cycle entries must be natural numbers", text, at)
            x = int(tok.group())
            if x >= degree:
                raise ParseError(f"point {x} outside degree {degree}", text, at)
            if x in seen:
                raise ParseError(f"point {x} repeated; cycles must be disjoint", text, at)
            seen.add(x)
            points.append(x)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a] = b
        pos = m.end()
    return tuple(images)


def format_perm(p: tuple) -> str:
    seen = set()
    cycles = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cycle = []
        x = start
        while x not in seen:
            seen.add(x)
            cycle.append(str(x))
            x = p[x]
        cycles.append("(" + " ".join(cycle) + ")")
    return "".join(cycles) or "()"


# -- permutation groups -------------------------------------------------------


class PermGroup:
    """A finite permutation group with its element set materialised."""

    __slots__ = ("degree", "elements", "_generators", "_key", "_table", "__weakref__")

    def __init__(self, degree: int, elements, generators=None):
        self.degree = degree
        self.elements = frozenset(elements)
        self._generators = tuple(generators) if generators is not None else None
        self._key = None
        self._table = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    @property
    def generators(self) -> tuple:
        if self._generators is None:
            self._generators = tuple(self._greedy_generators())
        return self._generators

    def _greedy_generators(self):
        gens = []
        span = {identity_perm(self.degree)}
        for g in sorted(self.elements, key=lambda x: (-perm_order(x), x)):
            if g in span:
                continue
            gens.append(g)
            span = _closure(self.degree, gens, ELEMENT_CAP)
            if len(span) == len(self.elements):
                break
        return gens

    @property
    def identity(self) -> tuple:
        return identity_perm(self.degree)

    def key(self) -> tuple:
        """Canonical fingerprint: the sorted element tuple."""
        if self._key is None:
            self._key = tuple(sorted(self.elements))
        return self._key

    def __contains__(self, p):
        return p in self.elements

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self.elements == other.elements

    def __hash__(self):
        return hash((self.degree, self.elements))

    def __le__(self, other: "PermGroup"):
        return self.elements <= other.elements

    def __lt__(self, other: "PermGroup"):
        return self.elements < other.elements

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(compose(a, b) == compose(b, a) for a in gens for b in gens)

    def to_table(self) -> "TableGroup":
        if self._table is None:
            elems = sorted(self.elements)
            index = {g: k for k, g in enumerate(elems)}
            table = [tuple(index[compose(a, b)] for b in elems) for a in elems]
            self._table = TableGroup(table, labels=elems)
        return self._table

    def describe(self):
        return ", ".join(format_perm(g) for g in self.generators) or "()"

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order}, gens=[{self.describe()}])"


def _closure(degree, generators, cap):
    ident = identity_perm(degree)
    elements = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = compose(x, g)
            if y not in elements:
                elements.add(y)
                if len(elements) > cap:
                    raise ResourceError(f"group order exceeds the element cap {cap}")
                queue.append(y)
    return elements


def generate(generators, degree: int, cap: int = ELEMENT_CAP) -> PermGroup:
    """Close a generating set under multiplication (breadth first)."""
    gens = []
    for g in generators:
        g = parse_perm(g, degree) if isinstance(g, str) else check_perm(g, degree)
        if g != identity_perm(degree) and g not in gens:
            gens.append(g)
    return PermGroup(degree, _closure(degree, gens, cap), gens)


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, [identity_perm(degree)], [])


def _same_degree(*groups):
    if len({G.degree for G in groups}) != 1:
        raise DomainError("groups have different degrees: "
                          + ", ".join(str(G.degree) for G in groups))


# Groups are immutable and hash by their element sets, so lattice operations
# are memoised; exhaustive sweeps revisit the same pairs many times.
_CACHE_SIZE = 1 << 16


def join(G: PermGroup, H: PermGroup) -> PermGroup:
    """The subgroup generated by ``G`` and ``H``."""
    _same_degree(G, H)
    return _join(G, H)


@lru_cache(maxsize=_CACHE_SIZE)
def _join(G, H):
    if H.elements <= G.elements:
        return G
    if G.elements <= H.elements:
        return H
    gens = list(G.generators) + [h for h in H.generators if h not in G.elements]
    return PermGroup(G.degree, _closure(G.degree, gens, ELEMENT_CAP), gens)


def intersect(G: PermGroup, H: PermGroup) -> PermGroup:
    _same_degree(G, H)
    return _intersect(G, H)


@lru_cache(maxsize=_CACHE_SIZE)
def _intersect(G, H):
    if G.elements <= H.elements:
        return G
    if H.elements <= G.elements:
        return H
    return PermGroup(G.degree, G.elements & H.elements)


def is_normal_in(N: PermGroup, G: PermGroup) -> bool:
    _same_degree(N, G)
    if not N.elements <= G.elements:
        raise DomainError("normality test needs N to be a subgroup of G")
    return _is_normal(N, G)


@lru_cache(maxsize=_CACHE_SIZE)
def _is_normal(N, G):
    return all(conjugate(n, g) in N.elements for g in G.generators for n in N.generators)


def normal_closure(S, G: PermGroup) -> PermGroup:
    """Smallest normal subgroup of ``G`` containing the permutations ``S``."""
    gens = list(dict.fromkeys(S))
    queue = deque(gens)
    span = set(_closure(G.degree, gens, ELEMENT_CAP))
    while queue:
        x = queue.popleft()
        for g in G.generators:
            y = conjugate(x, g)
            if y not in span:
                gens.append(y)
                queue.append(y)
                span = _closure(G.degree, gens, ELEMENT_CAP)
    return PermGroup(G.degree, span, gens)


def quotient(G: PermGroup, N: PermGroup) -> "TableGroup":
    """``G/N`` as a Cayley table over coset representatives.

    The result carries ``coset_of``, mapping each element of ``G`` to the
    table index of its coset.
    """
    if not is_normal_in(N, G):
        raise DomainError("quotient needs a normal subgroup")
    reps = []
    coset_of = {}
    for g in sorted(G.elements):
        if g in coset_of:
            continue
        k = len(reps)
        reps.append(g)
        for n in N.elements:
            coset_of[compose(n, g)] = k
    table = [tuple(coset_of[compose(a, b)] for b in reps) for a in reps]
    Q = TableGroup(table, labels=reps)
    Q.coset_of = coset_of
    return Q


@lru_cache(maxsize=_CACHE_SIZE)
def quotient_descriptor(G: PermGroup, N: PermGroup) -> "FactorDescriptor":
    """Isomorphism fingerprint of ``G/N``, memoised."""
    return quotient(G, N).descriptor()


@lru_cache(maxsize=_CACHE_SIZE)
def quotient_is_simple(G: PermGroup, N: PermGroup) -> bool:
    """Whether ``G/N`` is a nontrivial simple group, memoised."""
    d = quotient_descriptor(G, N)
    return d.order > 1 and is_simple(d.group)


# -- abstract finite groups -----------------------------------------------------


class TableGroup:
    """A finite group given by its Cayley table; element 0 is the identity."""

    def __init__(self, table, labels=None):
        self.table = [tuple(row) for row in table]
        self.n = len(self.table)
        self.labels = list(labels) if labels is not None else list(range(self.n))
        if self.n == 0 or any(self.table[0][k] != k for k in range(self.n)):
            raise DomainError("element 0 must be the identity")
        self.inverse = [row.index(0) for row in self.table]
        self._orders = None
        self._descriptor = None

    def __len__(self):
        return self.n

    @property
    def order(self) -> int:
        return self.n

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def element_orders(self):
        if self._orders is None:
            self._orders = [self.element_order(a) for a in range(self.n)]
        return self._orders

    def order_histogram(self) -> tuple:
        return tuple(sorted(Counter(self.element_orders()).items()))

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.n) for b in range(a + 1, self.n))

    def closure(self, gens) -> set:
        span = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.table[x][g]
                if y not in span:
                    span.add(y)
                    queue.append(y)
        return span

    def conjugate(self, x: int, g: int) -> int:
        return self.table[self.table[self.inverse[g]][x]][g]

    def normal_closure(self, x: int) -> set:
        span = self.closure([x])
        frontier = list(span)
        while frontier:
            new = set()
            for y in frontier:
                for g in range(self.n):
                    z = self.conjugate(y, g)
                    if z not in span:
                        new.add(z)
            if not new:
                break
            span = self.closure(list(span | new))
            frontier = list(new)
        return span

    def generators(self) -> list:
        orders = self.element_orders()
        gens = []
        span = {0}
        for a in sorted(range(self.n), key=lambda a: (-orders[a], a)):
            if a not in span:
                gens.append(a)
                span = self.closure(gens)
                if len(span) == self.n:
                    break
        return gens

    def to_perm_group(self) -> PermGroup:
        """Right regular representation."""
        gens = [tuple(self.table[x][g] for x in range(self.n)) for g in self.generators()]
        return generate(gens, self.n)

    def descriptor(self) -> "FactorDescriptor":
        if self._descriptor is None:
            self._descriptor = describe(self)
        return self._descriptor

    def __repr__(self):
        return f"TableGroup(order={self.n})"


def _as_table(G) -> TableGroup:
    return G.to_table() if isinstance(G, PermGroup) else G


def is_simple(G) -> bool:
    """True iff every non-identity element has normal closure the whole group."""
    T = _as_table(G)
    if T.n < 2:
        raise DomainError("the trivial group is neither simple nor non-simple here")
    if T.is_abelian():
        return all(T.n % p for p in range(2, int(T.n ** 0.5) + 1))
    done = set()
    for x in range(1, T.n):
        if x in done:
            continue
        if len(T.normal_closure(x)) != T.n:
            return False
        done.update(T.conjugate(x, g) for g in range(T.n))
    return True


def _extend_map(A: TableGroup, B: TableGroup, gens, images):
    """Extend generator images to a partial injective homomorphism, or None."""
    phi = {0: 0}
    used = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g, b in zip(gens, images):
            y = A.table[x][g]
            img = B.table[phi[x]][b]
            if y in phi:
                if phi[y] != img:
                    return None
            else:
                if img in used:
                    return None
                phi[y] = img
                used.add(img)
                queue.append(y)
    return phi


def are_isomorphic(A, B):
    """Return ``(True, mapping)`` or ``(False, None)``.

    ``mapping`` sends element indices of ``A`` to those of ``B`` (for
    permutation groups, the indices of their sorted element lists).
    """
    A, B = _as_table(A), _as_table(B)
    if max(A.n, B.n) > ISOMORPHISM_CAP:
        raise ResourceError(f"isomorphism test capped at order {ISOMORPHISM_CAP}")
    if A.n != B.n or A.order_histogram() != B.order_histogram():
        return False, None
    if A.is_abelian() != B.is_abelian():
        return False, None
    gens = A.generators()
    a_orders, b_orders = A.element_orders(), B.element_orders()
    candidates = [[b for b in range(B.n) if b_orders[b] == a_orders[g]] for g in gens]

    def search(k, images):
        if k == len(gens):
            phi = _extend_map(A, B, gens, images)
            return phi if phi is not None and len(phi) == A.n else None
        for b in candidates[k]:
            trial = images + [b]
            if _extend_map(A, B, gens[:k + 1], trial) is None:
                continue
            found = search(k + 1, trial)
            if found is not None:
                return found
        return None

    phi = search(0, [])
    return (True, phi) if phi is not None else (False, None)


def is_homomorphism(A, B, phi) -> bool:
    A, B = _as_table(A), _as_table(B)
    return all(phi[A.table[x][y]] == B.table[phi[x]][phi[y]]
               for x in range(A.n) for y in range(A.n))


# -- factor descriptors -------------------------------------------------------


@dataclass(frozen=True)
class FactorDescriptor:
    """Isomorphism-invariant summary of a finite group.

    ``certificate`` is a canonical Cayley-graph encoding (``None`` when the
    group is too large); equal certificates mean isomorphic groups.
    """

    order: int
    abelian: bool
    histogram: tuple
    certificate: tuple | None
    group: TableGroup | None = field(default=None, compare=False, repr=False)

    def isomorphic_to(self, other: "FactorDescriptor") -> bool:
        if (self.order, self.abelian, self.histogram) != (other.order, other.abelian, other.histogram):
            return False
        if self.certificate is not None and other.certificate is not None:
            return self.certificate == other.certificate
        return are_isomorphic(self.group, other.group)[0]

    @property
    def name(self) -> str:
        return group_name(self)

    def __str__(self):
        return self.name


def _min_generating_tuples(T: TableGroup, budget: int):
    orders = T.element_orders()
    for k in range(1, T.n):
        tuples = []
        count = 0

        def extend(prefix, span):
            nonlocal count
            if len(prefix) == k:
                if len(span) == T.n:
                    tuples.append(tuple(prefix))
                return
            for a in range(1, T.n):
                if a in span:
                    continue
                count += 1
                if count > budget:
                    raise ResourceError("certificate search budget exhausted")
                extend(prefix + [a], T.closure(prefix + [a]))

        extend([], {0})
        if tuples:
            # restrict to tuples of maximal lexicographic element-order profile
            best = max(tuple(orders[a] for a in t) for t in tuples)
            return [t for t in tuples if tuple(orders[a] for a in t) == best]
    return [()]


def _certificate(T: TableGroup):
    if T.n == 1:
        return ()
    if T.n > CERTIFICATE_CAP:
        return None
    try:
        tuples = _min_generating_tuples(T, CERTIFICATE_TUPLE_BUDGET)
    except ResourceError:
        return None
    best = None
    for gens in tuples:
        label = {0: 0}
        seq = [0]
        for x in seq:
            for g in gens:
                y = T.table[x][g]
                if y not in label:
                    label[y] = len(seq)
                    seq.append(y)
        action = tuple(label[T.table[x][g]] for x in seq for g in gens)
        cert = (len(gens), action)
        if best is None or cert < best:
            best = cert
    return best


def describe(G) -> FactorDescriptor:
    T = _as_table(G)
    return FactorDescriptor(T.n, T.is_abelian(), T.order_histogram(), _certificate(T), T)


def _prime_factors(n):
    out = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _abelian_invariants(d: FactorDescriptor) -> list:
    """Invariant factors of an abelian group, read off its element orders."""
    counts = dict(d.histogram)
    by_prime = {}
    for p in sorted(set(_prime_factors(d.order))):
        # elements of order dividing p^k number p^(sum_i min(k, a_i))
        def log_count(k):
            total = sum(c for o, c in counts.items() if (p ** k) % o == 0)
            return round(math.log(total, p))
        ranks = []
        k = 1
        while True:
            r = log_count(k) - log_count(k - 1)
            if r == 0:
                break
            ranks.append(r)
            k += 1
        # ranks[k-1] counts cyclic p-factors of order at least p^k
        parts = []
        for k, r in enumerate(ranks, start=1):
            nxt = ranks[k] if k < len(ranks) else 0
            parts += [p ** k] * (r - nxt)
        by_prime[p] = sorted(parts, reverse=True)
    width = max((len(v) for v in by_prime.values()), default=0)
    factors = []
    for k in range(width):
        f = 1
        for v in by_prime.values():
            if k < len(v):
                f *= v[k]
        factors.append(f)
    return sorted(factors)


_NONABELIAN_NAMES = {
    (6, ((1, 1), (2, 3), (3, 2))): "S3",
    (8, ((1, 1), (2, 5), (4, 2))): "D4",
    (8, ((1, 1), (2, 1), (4, 6))): "Q8",
    (12, ((1, 1), (2, 3), (3, 8))): "A4",
    (24, ((1, 1), (2, 9), (3, 8), (4, 6))): "S4",
    (60, ((1, 1), (2, 15), (3, 20), (5, 24))): "A5",
}


def group_name(d: FactorDescriptor) -> str:
    if d.order == 1:
        return "1"
    if d.abelian:
        return "x".join(f"C{f}" for f in _abelian_invariants(d))
    return _NONABELIAN_NAMES.get((d.order, d.histogram), f"G{d.order}")


# -- subgroup lattices ----------------------------------------------------------


@lru_cache(maxsize=256)
def subgroups(G: PermGroup) -> tuple:
    """All subgroups of ``G``, sorted by order then fingerprint."""
    found = {}
    for g in G.elements:
        C = generate([g], G.degree)
        found[C.elements] = C
    frontier = list(found.values())
    cyclics = list(found.values())
    while frontier:
        new = []
        for H in frontier:
            for C in cyclics:
                if C.elements <= H.elements:
                    continue
                J = join(H, C)
                if J.elements not in found:
                    found[J.elements] = J
                    new.append(J)
        frontier = new
    return tuple(sorted(found.values(), key=lambda H: (H.order, H.key())))


@lru_cache(maxsize=1024)
def normal_subgroups(G: PermGroup) -> tuple:
    """All normal subgroups of ``G`` (joins of normal closures of elements)."""
    found = {}
    closures = {}
    for g in G.elements:
        if g in closures:
            continue
        N = normal_closure([g], G)
        found[N.elements] = N
        closures[g] = N
    base = list(found.values())
    frontier = list(base)
    while frontier:
        new = []
        for H in frontier:
            for C in base:
                if C.elements <= H.elements:
                    continue
                J = join(H, C)
                if J.elements not in found:
                    found[J.elements] = J
                    new.append(J)
        frontier = new
    return tuple(sorted(found.values(), key=lambda H: (H.order, H.key())))


def maximal_normal_subgroups(G: PermGroup) -> tuple:
    proper = [N for N in normal_subgroups(G) if N.order < G.order]
    return tuple(N for N in proper
                 if not any(N.elements < M.elements for M in proper))


def composition_chains(G: PermGroup):
    """Every composition series of ``G`` as a bottom-up list of subgroups."""
    if G.is_trivial():
        yield [G]
        return
    for N in maximal_normal_subgroups(G):
        for chain in composition_chains(N):
            yield chain + [G]

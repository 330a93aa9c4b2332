"""
Ordinal numbers in Cantor normal form.

An :class:`Ordinal` is a finite, strictly decreasing sequence of
``(exponent, coefficient)`` terms, ``w^e1*c1 + w^e2*c2 + ...``.  Exponents
are themselves ordinals, so ``w^w`` is representable, but the working scale
of the package is below ``w^w``.  The empty sequence is 0.

Plain ``int`` values are accepted wherever an ordinal is expected.

>>> w = Ordinal.omega()
>>> str(w * 2 + 3)
'w*2+3'
>>> str(1 + w)
'w'
>>> parse("w+w") == w * 2
True
"""

from __future__ import annotations

import random as _random
from functools import total_ordering

from .errors import DomainError, ParseError, ResourceError

MAX_DEPTH = 8
MAX_COEFFICIENT = 2**32 - 1


@total_ordering
class Ordinal:
    __slots__ = ("terms", "_hash", "_depth", "_finite")

    def __init__(self, terms=()):
        terms = tuple(terms)
        for k, (e, c) in enumerate(terms):
            if not isinstance(e, Ordinal) or not isinstance(c, int) or c < 1:
                raise DomainError(f"bad Cantor normal form term {(e, c)!r}")
            if c > MAX_COEFFICIENT:
                raise ResourceError(f"coefficient {c} exceeds {MAX_COEFFICIENT}")
            if k and not e < terms[k - 1][0]:
                raise DomainError("exponents must be strictly decreasing")
        finite = all(not e.terms for e, _ in terms)
        depth = 1 + max(e._depth for e, _ in terms) if terms else 0
        if depth > MAX_DEPTH:
            raise ResourceError(f"exponent nesting deeper than {MAX_DEPTH}")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_finite", finite)
        object.__setattr__(self, "_depth", depth)
        # finite ordinals hash like the ints they equal
        object.__setattr__(self, "_hash", hash(terms[0][1] if terms and finite else 0 if finite else terms))

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def of(cls, value) -> "Ordinal":
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot make an ordinal from {value!r}")
        if value < 0:
            raise DomainError(f"negative integer {value} is not an ordinal")
        if value < _SMALL_COUNT:
            return _SMALL[value]
        return cls(((ZERO, value),))

    @classmethod
    def omega(cls, exponent=1, coefficient=1) -> "Ordinal":
        return cls(((cls.of(exponent), coefficient),))

    # -- classification -------------------------------------------------

    def depth(self) -> int:
        return self._depth

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return self._finite

    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero()

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def finite_part(self) -> int:
        if self.terms and self.terms[-1][0].is_zero():
            return self.terms[-1][1]
        return 0

    def limit_part(self) -> "Ordinal":
        """The largest limit ordinal (or 0) not exceeding ``self``."""
        if self.is_successor():
            return Ordinal(self.terms[:-1])
        return self

    def leading_exponent(self) -> "Ordinal":
        if not self.terms:
            raise DomainError("0 has no leading exponent")
        return self.terms[0][0]

    def __int__(self):
        if not self.is_finite():
            raise DomainError(f"{self} is not finite")
        return self.finite_part()

    # -- comparison -----------------------------------------------------

    def _cmp(self, other: "Ordinal") -> int:
        for (e1, c1), (e2, c2) in zip(self.terms, other.terms):
            if e1 != e2:
                return e1._cmp(e2)
            if c1 != c2:
                return -1 if c1 < c2 else 1
        return (len(self.terms) > len(other.terms)) - (len(self.terms) < len(other.terms))

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            if other < 0:
                return False
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __lt__(self, other):
        try:
            other = Ordinal.of(other)
        except (TypeError, DomainError):
            return NotImplemented
        return self._cmp(other) < 0

    def __hash__(self):
        return self._hash

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        try:
            other = Ordinal.of(other)
        except TypeError:
            return NotImplemented
        return add(self, other)

    def __radd__(self, other):
        return add(Ordinal.of(other), self)

    def __mul__(self, other):
        try:
            other = Ordinal.of(other)
        except TypeError:
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        return mul(Ordinal.of(other), self)

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)!r})"

    def __str__(self):
        return format_ordinal(self)


ZERO = Ordinal()
# naturals are interned; index arithmetic creates them constantly
_SMALL_COUNT = 1024
_SMALL = [ZERO] + [Ordinal(((ZERO, k),)) for k in range(1, _SMALL_COUNT)]
ONE = _SMALL[1]
OMEGA = Ordinal(((ONE, 1),))


def compare(a, b) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    return Ordinal.of(a)._cmp(Ordinal.of(b))


def add(a, b) -> Ordinal:
    a, b = Ordinal.of(a), Ordinal.of(b)
    if not b.terms:
        return a
    lead, coeff = b.terms[0]
    kept = []
    for e, c in a.terms:
        if e > lead:
            kept.append((e, c))
        elif e == lead:
            coeff += c
            break
        else:
            break
    return Ordinal(kept + [(lead, coeff)] + list(b.terms[1:]))


def mul(a, b) -> Ordinal:
    a, b = Ordinal.of(a), Ordinal.of(b)
    if not a.terms or not b.terms:
        return ZERO
    lead, coeff = a.terms[0]
    result = ZERO
    # right distributivity term by term: a*(b1 + b2) = a*b1 + a*b2
    for f, d in b.terms:
        if f.is_zero():
            piece = Ordinal(((lead, coeff * d),) + a.terms[1:])
        else:
            piece = Ordinal(((add(lead, f), d),))
        result = add(result, piece)
    return result


def left_subtract(a, b) -> Ordinal:
    """The unique ``d`` with ``b + d == a``; requires ``b <= a``."""
    a, b = Ordinal.of(a), Ordinal.of(b)
    if b > a:
        raise DomainError(f"cannot subtract {b} from the left of smaller {a}")
    for k, (e1, c1) in enumerate(a.terms):
        if k >= len(b.terms):
            return Ordinal(a.terms[k:])
        e2, c2 = b.terms[k]
        if e1 != e2:
            # b's remaining terms are absorbed by w^e1
            return Ordinal(a.terms[k:])
        if c1 != c2:
            return Ordinal(((e1, c1 - c2),) + a.terms[k + 1:])
    return ZERO


def successor(a) -> Ordinal:
    return add(a, ONE)


def predecessor(a) -> Ordinal:
    a = Ordinal.of(a)
    if not a.is_successor():
        kind = "0" if a.is_zero() else "limit ordinal"
        raise DomainError(f"{kind} {a} has no predecessor")
    e, c = a.terms[-1]
    return Ordinal(a.terms[:-1] + (((e, c - 1),) if c > 1 else ()))


def is_limit(a) -> bool:
    return Ordinal.of(a).is_limit()


def fundamental(a, k: int) -> Ordinal:
    """k-th element of the standard fundamental sequence of a limit ordinal below w^w.

    For ``a = b + w^(e+1)`` this is ``b + w^e * k``; the sequence is strictly
    increasing in ``k >= 1`` with supremum ``a``.
    """
    a = Ordinal.of(a)
    if not a.is_limit():
        raise DomainError(f"{a} is not a limit ordinal")
    e, c = a.terms[-1]
    if not e.is_successor():
        raise DomainError(f"fundamental sequences need a successor exponent, got {a}")
    base = Ordinal(a.terms[:-1] + (((e, c - 1),) if c > 1 else ()))
    return add(base, Ordinal(((predecessor(e), k),)) if k else ZERO)


def cardinality(a) -> str:
    """'finite' or 'countable' (every ordinal handled here is countable)."""
    return "finite" if Ordinal.of(a).is_finite() else "countable"


def random_below(bound, rng: _random.Random, max_coefficient: int = 4) -> Ordinal:
    """A random ordinal strictly below ``bound``, which must be below w^w."""
    bound = Ordinal.of(bound)
    if bound.is_zero():
        raise DomainError("no ordinal lies below 0")
    if not bound.leading_exponent().is_finite():
        raise DomainError(f"sampling below {bound} is not supported")
    top = int(bound.leading_exponent())
    cap = max([max_coefficient] + [c for _, c in bound.terms])
    while True:
        terms = [(Ordinal.of(e), rng.randint(1, cap))
                 for e in range(top, -1, -1) if rng.random() < 0.5]
        candidate = Ordinal(terms)
        if candidate < bound:
            return candidate


# -- literals ---------------------------------------------------------------


def format_ordinal(a) -> str:
    a = Ordinal.of(a)
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if e.is_zero():
            parts.append(str(c))
            continue
        if e == ONE:
            base = "w"
        elif e.is_finite() or (len(e.terms) == 1 and e.terms[0][1] == 1 and e.terms[0][0] == ONE):
            base = f"w^{format_ordinal(e)}"
        else:
            base = f"w^({format_ordinal(e)})"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.depth = 0

    def error(self, message):
        raise ParseError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def natural(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def expr(self) -> Ordinal:
        value = self.term()
        while self.peek() == "+":
            self.pos += 1
            value = add(value, self.term())
        return value

    def term(self) -> Ordinal:
        value = self.atom()
        while self.peek() in ("*", "·"):
            self.pos += 1
            value = mul(value, self.atom())
        return value

    def atom(self) -> Ordinal:
        ch = self.peek()
        if ch.isdigit():
            n = self.natural()
            if n > MAX_COEFFICIENT:
                raise ResourceError(f"natural {n} exceeds {MAX_COEFFICIENT}")
            return Ordinal.of(n)
        if ch in ("w", "ω"):
            self.pos += 1
            if self.peek() != "^":
                return OMEGA
            self.pos += 1
            self.depth += 1
            if self.depth > MAX_DEPTH:
                raise ResourceError(f"exponent nesting deeper than {MAX_DEPTH}")
            exponent = self.atom()
            self.depth -= 1
            if exponent.is_zero():
                return ONE
            return Ordinal(((exponent, 1),))
        if ch == "(":
            self.pos += 1
            value = self.expr()
            self.take(")")
            return value
        self.error("expected an ordinal term")


def parse(text: str) -> Ordinal:
    """Parse a literal such as ``"w^2*3+w+4"``.  Non-canonical sums are normalised."""
    p = _Parser(text)
    if not p.peek():
        p.error("empty ordinal literal")
    value = p.expr()
    if p.peek():
        p.error("unexpected trailing text")
    return value

"""The ordinal-indexed subgroup chain shared by both backends."""

from __future__ import annotations

from .errors import DomainError
from .ordinal import ONE, Ordinal, format_ordinal, left_subtract, successor

FINITE = "finite-permutation"
TOWER = "tower"


class TransfiniteSeries:
    """Chain of subgroups indexed by the ordinals ``1 <= a <= top``.

    ``top`` is the index of the whole group.  ``length`` is the order type
    of the index set, which equals ``top`` for finite chains and ``top + 1``
    otherwise.  Subgroup handles are :class:`~transfinite.permgroup.PermGroup`
    objects on the finite backend and position
    :class:`~transfinite.tower.IntervalSet` objects on the tower backend.
    """

    def __init__(self, backend, group, top, subgroup_at, bijection=None, name=None):
        self.backend = backend
        self.group = group
        self.top = Ordinal.of(top)
        if self.top < ONE:
            raise DomainError("a series has at least the index 1")
        self._at = subgroup_at
        self.bijection = bijection
        self.name = name
        self._cache = {}

    @classmethod
    def finite(cls, group, subgroups, name=None) -> "TransfiniteSeries":
        subgroups = list(subgroups)
        if not subgroups:
            raise DomainError("a series needs at least one subgroup")
        s = cls(FINITE, group, len(subgroups), lambda a: subgroups[int(a) - 1], name=name)
        s.subgroups = subgroups
        return s

    @classmethod
    def tower(cls, group, top, support_at, bijection=None, name=None) -> "TransfiniteSeries":
        return cls(TOWER, group, top, support_at, bijection=bijection, name=name)

    @property
    def length(self) -> Ordinal:
        return successor(left_subtract(self.top, ONE))

    def is_finitely_indexed(self) -> bool:
        return self.top.is_finite()

    def subgroup_at(self, a):
        a = Ordinal.of(a)
        if not ONE <= a <= self.top:
            raise DomainError(f"index {format_ordinal(a)} outside [1,{format_ordinal(self.top)}]")
        if a not in self._cache:
            self._cache[a] = self._at(a)
        return self._cache[a]

    def key_at(self, a):
        return self.subgroup_at(a).key()

    def indices(self):
        """All indices, for finitely indexed chains."""
        if not self.top.is_finite():
            raise DomainError(f"cannot list the {format_ordinal(self.length)} indices")
        return [Ordinal.of(a) for a in range(1, int(self.top) + 1)]

    def keys(self):
        return [self.key_at(a) for a in self.indices()]

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return (f"<{label}{self.backend} series, top index {format_ordinal(self.top)}, "
                f"length {format_ordinal(self.length)}>")

"""
Small groups given as permutation groups.

:func:`small_groups` returns one representative of every isomorphism type
of order at most 24, each as a right-regular permutation group.  The
representatives come from direct products, cyclic-by-cyclic semidirect
products, dicyclic groups and a few matrix and permutation constructions.
``GROUP_COUNTS`` records how many types exist for each order; the test
suite checks the catalog against it.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .permgroup import PermGroup, TableGroup, generate

GROUP_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5,
    13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1, 20: 5, 21: 2, 22: 2,
    23: 1, 24: 15,
}


def table_from(elements, mul) -> TableGroup:
    """Cayley table of a finite group given by its elements and product."""
    elements = list(elements)
    identity = next(e for e in elements
                    if all(mul(e, x) == x for x in elements))
    elements.remove(identity)
    elements.insert(0, identity)
    index = {e: k for k, e in enumerate(elements)}
    return TableGroup([[index[mul(a, b)] for b in elements] for a in elements])


def cyclic(n: int) -> TableGroup:
    return table_from(range(n), lambda a, b: (a + b) % n)


def direct(*factors: TableGroup) -> TableGroup:
    elems = list(itertools.product(*(range(F.n) for F in factors)))

    def mul(a, b):
        return tuple(F.table[x][y] for F, x, y in zip(factors, a, b))

    return table_from(elems, mul)


def cyclic_semidirect(n: int, m: int, r: int) -> TableGroup:
    """``C_n x| C_m`` where the generator of ``C_m`` acts as ``x -> r*x``."""
    if pow(r, m, n) != 1 % n:
        raise ValueError(f"{r} does not have order dividing {m} modulo {n}")

    def mul(a, b):
        return ((a[0] + pow(r, a[1], n) * b[0]) % n, (a[1] + b[1]) % m)

    return table_from(itertools.product(range(n), range(m)), mul)


def dicyclic(k: int) -> TableGroup:
    """``<a, x | a^2k, x^2 = a^k, x a x^-1 = a^-1>`` of order ``4k``."""
    n = 2 * k

    def mul(p, q):
        (i, e), (j, f) = p, q
        if e == 0:
            return ((i + j) % n, f)
        if f == 0:
            return ((i - j) % n, 1)
        return ((i - j + k) % n, 0)

    return table_from(itertools.product(range(n), range(2)), mul)


def semidirect(N: TableGroup, H: TableGroup, act) -> TableGroup:
    """``N x| H`` with ``act(h, x)`` an automorphism action of ``H`` on ``N``."""

    def mul(a, b):
        return (N.table[a[0]][act(a[1], b[0])], H.table[a[1]][b[1]])

    return table_from(itertools.product(range(N.n), range(H.n)), mul)


def sl2(p: int) -> TableGroup:
    mats = [m for m in itertools.product(range(p), repeat=4)
            if (m[0] * m[3] - m[1] * m[2]) % p == 1]

    def mul(a, b):
        return ((a[0] * b[0] + a[1] * b[2]) % p, (a[0] * b[1] + a[1] * b[3]) % p,
                (a[2] * b[0] + a[3] * b[2]) % p, (a[2] * b[1] + a[3] * b[3]) % p)

    return table_from(mats, mul)


def from_perms(gens, degree) -> TableGroup:
    return generate(gens, degree).to_table()


def _c4c2_action(kind):
    # automorphisms of C4 x C2 = {(x, y)} of order 2, encoded on table indices
    C = direct(cyclic(4), cyclic(2))
    pairs = list(itertools.product(range(4), range(2)))
    # direct() enumerates in product order with the identity already first
    index = {p: k for k, p in enumerate(pairs)}
    if kind == "ab":      # a -> ab, b -> b
        f = {(x, y): (x, (y + x) % 2) for x, y in pairs}
    else:                 # a -> a, b -> a^2 b
        f = {(x, y): ((x + 2 * y) % 4, y) for x, y in pairs}
    perm = [index[f[p]] for p in pairs]
    return C, (lambda h, x: perm[x] if h else x)


def _c3_by_d4() -> TableGroup:
    # D4 acts on C3 through D4 -> C2 sending the rotation to inversion
    D4 = cyclic_semidirect(4, 2, 3)
    pairs = list(itertools.product(range(4), range(2)))
    identity_first = [pairs[0]] + pairs[1:]
    C3 = cyclic(3)
    rotation_parity = {k: identity_first[k][0] % 2 for k in range(8)}
    return semidirect(C3, D4, lambda h, x: (-x) % 3 if rotation_parity[h] else x)


def _generalized_dihedral_c3c3() -> TableGroup:
    N = direct(cyclic(3), cyclic(3))
    inv = N.inverse
    return semidirect(N, cyclic(2), lambda h, x: inv[x] if h else x)


def _constructions():
    C = cyclic
    S3 = cyclic_semidirect(3, 2, 2)
    D4 = cyclic_semidirect(4, 2, 3)
    Q8 = dicyclic(2)
    A4 = from_perms(["(0 1 2)", "(1 2 3)"], 4)
    Dic3 = dicyclic(3)
    yield from (("C1", C(1)), ("C2", C(2)), ("C3", C(3)))
    yield from (("C4", C(4)), ("C2xC2", direct(C(2), C(2))), ("C5", C(5)))
    yield from (("C6", C(6)), ("S3", S3), ("C7", C(7)))
    yield from (("C8", C(8)), ("C4xC2", direct(C(4), C(2))),
                ("C2xC2xC2", direct(C(2), C(2), C(2))), ("D4", D4), ("Q8", Q8))
    yield from (("C9", C(9)), ("C3xC3", direct(C(3), C(3))))
    yield from (("C10", C(10)), ("D5", cyclic_semidirect(5, 2, 4)), ("C11", C(11)))
    yield from (("C12", C(12)), ("C6xC2", direct(C(6), C(2))), ("A4", A4),
                ("D6", cyclic_semidirect(6, 2, 5)), ("Dic3", Dic3))
    yield from (("C13", C(13)), ("C14", C(14)), ("D7", cyclic_semidirect(7, 2, 6)),
                ("C15", C(15)))
    ab_c4c2, act_ab = _c4c2_action("ab")
    cz_c4c2, act_cz = _c4c2_action("central")
    yield from (
        ("C16", C(16)), ("C8xC2", direct(C(8), C(2))), ("C4xC4", direct(C(4), C(4))),
        ("C4xC2xC2", direct(C(4), C(2), C(2))), ("C2^4", direct(C(2), C(2), C(2), C(2))),
        ("D8", cyclic_semidirect(8, 2, 7)), ("Q16", dicyclic(4)),
        ("SD16", cyclic_semidirect(8, 2, 3)), ("M16", cyclic_semidirect(8, 2, 5)),
        ("C4:C4", cyclic_semidirect(4, 4, 3)),
        ("(C4xC2):C2", semidirect(ab_c4c2, C(2), act_ab)),
        ("C4oD4", semidirect(cz_c4c2, C(2), act_cz)),
        ("D4xC2", direct(D4, C(2))), ("Q8xC2", direct(Q8, C(2))),
    )
    yield ("C17", C(17))
    yield from (("C18", C(18)), ("C6xC3", direct(C(6), C(3))),
                ("D9", cyclic_semidirect(9, 2, 8)), ("S3xC3", direct(S3, C(3))),
                ("(C3xC3):C2", _generalized_dihedral_c3c3()))
    yield ("C19", C(19))
    yield from (("C20", C(20)), ("C10xC2", direct(C(10), C(2))),
                ("D10", cyclic_semidirect(10, 2, 9)), ("Dic5", dicyclic(5)),
                ("F20", cyclic_semidirect(5, 4, 2)))
    yield from (("C21", C(21)), ("C7:C3", cyclic_semidirect(7, 3, 2)))
    yield from (("C22", C(22)), ("D11", cyclic_semidirect(11, 2, 10)), ("C23", C(23)))
    yield from (
        ("C24", C(24)), ("C12xC2", direct(C(12), C(2))),
        ("C6xC2xC2", direct(C(6), C(2), C(2))),
        ("S4", from_perms(["(0 1 2 3)", "(0 1)"], 4)), ("SL(2,3)", sl2(3)),
        ("D12", cyclic_semidirect(12, 2, 11)), ("Dic6", dicyclic(6)),
        ("C3:C8", cyclic_semidirect(3, 8, 2)), ("C4xS3", direct(C(4), S3)),
        ("C2xDic3", direct(C(2), Dic3)), ("C3:D4", _c3_by_d4()),
        ("C3xD4", direct(C(3), D4)), ("C3xQ8", direct(C(3), Q8)),
        ("C2xA4", direct(C(2), A4)), ("C2xC2xS3", direct(C(2), C(2), S3)),
    )


@lru_cache(maxsize=1)
def small_groups() -> tuple:
    """``(name, PermGroup)`` for every isomorphism type of order <= 24."""
    return tuple((name, T.to_perm_group()) for name, T in _constructions())


def small_group(name: str) -> PermGroup:
    for n, G in small_groups():
        if n == name:
            return G
    raise KeyError(name)

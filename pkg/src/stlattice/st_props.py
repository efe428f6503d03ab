"""Relative (ST-) distributivity and modularity, and related element-level checks.

Subsets ``s`` and ``t`` are bitmasks over the lattice's element indices. All
ST checks range over every ``s`` in ``S`` and every *ordered* pair
``(t1, t2)`` from ``T``, repeats included. Empty ``S`` or ``T`` is vacuously
fine.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Sequence

from .constructors import product
from .errors import LatticeError, NotClosed, NotHomomorphism, NotMaximalChain
from .poset_core import (
    ElementSet,
    Lattice,
    bits,
    dual,
    generated_sublattice,
    is_chain,
    is_closed,
    restrict,
)


def meet_distributes(l: Lattice, a: int, b: int, c: int) -> bool:
    """``a ^ (b v c) == (a ^ b) v (a ^ c)``."""
    M, J = l.meet_table, l.join_table
    return M[a][J[b][c]] == J[M[a][b]][M[a][c]]


def join_distributes(l: Lattice, a: int, b: int, c: int) -> bool:
    """``a v (b ^ c) == (a v b) ^ (a v c)``."""
    M, J = l.meet_table, l.join_table
    return J[a][M[b][c]] == M[J[a][b]][J[a][c]]


def st_meet_distributive(l: Lattice, s: ElementSet, t: ElementSet) -> bool:
    ts = bits(t)
    return all(meet_distributes(l, x, t1, t2) for x in bits(s) for t1 in ts for t2 in ts)


def st_join_distributive(l: Lattice, s: ElementSet, t: ElementSet) -> bool:
    ts = bits(t)
    return all(join_distributes(l, x, t1, t2) for x in bits(s) for t1 in ts for t2 in ts)


def st_distributive(l: Lattice, s: ElementSet, t: ElementSet) -> bool:
    return st_meet_distributive(l, s, t) and st_join_distributive(l, s, t)


def st_meet_modular(l: Lattice, s: ElementSet, t: ElementSet) -> bool:
    """``s >= t2  =>  s ^ (t1 v t2) == (s ^ t1) v t2`` over ``S x T x T``."""
    M, J = l.meet_table, l.join_table
    ts = bits(t)
    for x in bits(s):
        for t2 in ts:
            if not l.leq[t2][x]:
                continue
            for t1 in ts:
                if M[x][J[t1][t2]] != J[M[x][t1]][t2]:
                    return False
    return True


def st_join_modular(l: Lattice, s: ElementSet, t: ElementSet) -> bool:
    """``s <= t2  =>  s v (t1 ^ t2) == (s v t1) ^ t2`` over ``S x T x T``."""
    M, J = l.meet_table, l.join_table
    ts = bits(t)
    for x in bits(s):
        for t2 in ts:
            if not l.leq[x][t2]:
                continue
            for t1 in ts:
                if J[x][M[t1][t2]] != M[J[x][t1]][t2]:
                    return False
    return True


def st_modular(l: Lattice, s: ElementSet, t: ElementSet) -> bool:
    return st_meet_modular(l, s, t) and st_join_modular(l, s, t)


class TripleFilterVerdict(enum.Enum):
    COMPARABLE_T1T2 = "Comparable_t1t2"
    S_ABOVE_BOTH = "SAboveBoth"
    S_BELOW_BOTH = "SBelowBoth"
    MUST_CHECK = "MustCheck"


def triple_filter(l: Lattice, a: int, b: int, c: int) -> TripleFilterVerdict:
    """Order-only test that guarantees both distribution laws for ``(a, b, c)``.

    Conditions are tried in order: ``b`` and ``c`` comparable, ``a`` above
    both, ``a`` below both. Anything else must be computed.
    """
    if l.comparable[b] >> c & 1:
        return TripleFilterVerdict.COMPARABLE_T1T2
    if l.leq[b][a] and l.leq[c][a]:
        return TripleFilterVerdict.S_ABOVE_BOTH
    if l.leq[a][b] and l.leq[a][c]:
        return TripleFilterVerdict.S_BELOW_BOTH
    return TripleFilterVerdict.MUST_CHECK


def mccd_applies(l: Lattice, a: int, b: int, c: int) -> bool:
    """True when some two of ``a, b, c`` are comparable (repeats count).

    On a modular lattice this is enough for both distribution laws; checking
    modularity is left to the caller.
    """
    cmp = l.comparable
    return bool(cmp[a] >> b & 1 or cmp[a] >> c & 1 or cmp[b] >> c & 1)


def is_distributive(l: Lattice) -> bool:
    r = range(l.size)
    return all(meet_distributes(l, a, b, c) for a in r for b in r for c in r)


def is_modular(l: Lattice) -> bool:
    """Check ``a <= c  =>  a v (b ^ c) == (a v b) ^ c`` for every triple."""
    M, J = l.meet_table, l.join_table
    for a in range(l.size):
        for c in bits(l.up[a]):
            for b in range(l.size):
                if J[a][M[b][c]] != M[J[a][b]][c]:
                    return False
    return True


@dataclass(frozen=True)
class DistrElementSets:
    distr: ElementSet
    m_distr: ElementSet
    j_distr: ElementSet


def distributive_element_sets(l: Lattice) -> DistrElementSets:
    r = range(l.size)
    m_distr = j_distr = distr = 0
    sub_cache: dict[int, bool] = {}
    for a in r:
        if all(meet_distributes(l, a, x, y) for x in r for y in r):
            m_distr |= 1 << a
        if all(join_distributes(l, a, x, y) for x in r for y in r):
            j_distr |= 1 << a
        ok = True
        for x in r:
            for y in range(x, l.size):
                gen = generated_sublattice(l, (1 << a) | (1 << x) | (1 << y))
                if gen not in sub_cache:
                    sub_cache[gen] = is_distributive(restrict(l, gen))
                if not sub_cache[gen]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            distr |= 1 << a
    return DistrElementSets(distr, m_distr, j_distr)


def iter_chains(l: Lattice) -> Iterator[ElementSet]:
    """Every chain of ``l``, the empty chain first."""
    yield 0

    def grow(chain_mask, last):
        yield chain_mask
        for j in bits(l.up[last] & ~(1 << last)):
            yield from grow(chain_mask | (1 << j), j)

    for i in range(l.size):
        yield from grow(1 << i, i)


def is_maximal_chain(l: Lattice, delta: ElementSet) -> bool:
    if not delta or not is_chain(l, delta):
        return False
    for x in bits(l.all_mask & ~delta):
        if delta & ~l.comparable[x] == 0:
            return False
    return True


def is_supersolvable_with(l: Lattice, delta: ElementSet) -> bool:
    """True iff ``delta`` together with any chain generates a distributive sublattice."""
    if not is_maximal_chain(l, delta):
        raise NotMaximalChain(f"{l.render(delta)} is not a maximal chain")
    seen: dict[int, bool] = {}
    for k in iter_chains(l):
        gen = generated_sublattice(l, delta | k)
        if gen not in seen:
            seen[gen] = is_distributive(restrict(l, gen))
            if not seen[gen]:
                return False
    return True


# -- transporting ST pairs along lattice constructs ---------------------------


def _require_st(l: Lattice, s: ElementSet, t: ElementSet) -> None:
    if not st_distributive(l, s, t):
        raise LatticeError(f"lattice is not ST-distributive for S={l.render(s)}, T={l.render(t)}")


def _reindex(carrier: ElementSet, mask: ElementSet) -> ElementSet:
    pos = {v: k for k, v in enumerate(bits(carrier))}
    return sum(1 << pos[i] for i in bits(mask & carrier))


def pair_in_sublattice(
    l: Lattice, k_carrier: ElementSet, s: ElementSet, t: ElementSet
) -> tuple[Lattice, ElementSet, ElementSet]:
    """``(K, S ^ K, T ^ K)`` with masks re-indexed into the sublattice ``K``."""
    _require_st(l, s, t)
    if not is_closed(l, k_carrier):
        raise NotClosed(f"{l.render(k_carrier)} is not a sublattice")
    k = restrict(l, k_carrier)
    return k, _reindex(k_carrier, s), _reindex(k_carrier, t)


def pair_in_product(
    l1: Lattice, s1: ElementSet, t1: ElementSet, l2: Lattice, s2: ElementSet, t2: ElementSet
) -> tuple[Lattice, ElementSet, ElementSet]:
    """``(L1 x L2, S1 x S2, T1 x T2)`` using the product's ``i * |L2| + j`` indexing."""
    _require_st(l1, s1, t1)
    _require_st(l2, s2, t2)
    p = product(l1, l2)
    m2 = l2.size

    def cross(a, b):
        return sum(1 << (i * m2 + j) for i in bits(a) for j in bits(b))

    return p, cross(s1, s2), cross(t1, t2)


def check_homomorphism(l: Lattice, k: Lattice, phi: Sequence[int]) -> None:
    """Raise NotHomomorphism unless ``phi`` is an onto lattice homomorphism."""
    if len(phi) != l.size or any(not 0 <= v < k.size for v in phi):
        raise NotHomomorphism("map must send every source index to a target index")
    if set(phi) != set(range(k.size)):
        raise NotHomomorphism("map is not onto")
    for a in range(l.size):
        for b in range(l.size):
            if phi[l.meet_table[a][b]] != k.meet_table[phi[a]][phi[b]]:
                raise NotHomomorphism(f"meet of {l.labels[a]}, {l.labels[b]} not preserved")
            if phi[l.join_table[a][b]] != k.join_table[phi[a]][phi[b]]:
                raise NotHomomorphism(f"join of {l.labels[a]}, {l.labels[b]} not preserved")


def pair_under_hom(
    l: Lattice, k: Lattice, phi: Sequence[int], s: ElementSet, t: ElementSet
) -> tuple[Lattice, ElementSet, ElementSet]:
    _require_st(l, s, t)
    check_homomorphism(l, k, phi)
    return k, _image(phi, s), _image(phi, t)


def _image(phi: Sequence[int], mask: ElementSet) -> ElementSet:
    out = 0
    for i in bits(mask):
        out |= 1 << phi[i]
    return out


def pair_in_dual(l: Lattice, s: ElementSet, t: ElementSet) -> tuple[Lattice, ElementSet, ElementSet]:
    """Dual keeps indices, so the pair carries over unchanged."""
    _require_st(l, s, t)
    return dual(l), s, t

"""Finite bounded lattices on dense indices.

A :class:`Lattice` stores its elements as indices ``0..m-1`` with a side
table of labels. Subsets of elements are plain ``int`` bitmasks (bit ``i``
set means element ``i`` is a member); every algorithm in the package works
on indices and masks, never on labels.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import NoBounds, NotALattice, NotClosed, ParseError, TooLarge, LatticeError

MAX_ELEMENTS = 64
LABEL_RE = re.compile(r"^[A-Za-z0-9_]+$")

# Bitmask over the element indices of one lattice.
ElementSet = int


def bits(mask: ElementSet) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: ElementSet) -> int:
    return bin(mask).count("1")


def mask_of(indices: Iterable[int]) -> ElementSet:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class Lattice:
    """Immutable finite bounded lattice.

    Build instances with :func:`lattice_from_covers` or :func:`lattice_from_leq`;
    both validate the lattice axioms, so every ``Lattice`` in circulation is a
    genuine lattice.
    """

    labels: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    meet_table: tuple[tuple[int, ...], ...]
    join_table: tuple[tuple[int, ...], ...]
    bottom: int
    top: int

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @cached_property
    def all_mask(self) -> ElementSet:
        return (1 << self.size) - 1

    @cached_property
    def inner_mask(self) -> ElementSet:
        """``L*``: every element except the bottom and the top."""
        return self.all_mask & ~(1 << self.bottom) & ~(1 << self.top)

    @cached_property
    def down(self) -> tuple[ElementSet, ...]:
        """``down[i]`` is the mask of elements ``<= i``."""
        m = self.size
        return tuple(mask_of(j for j in range(m) if self.leq[j][i]) for i in range(m))

    @cached_property
    def up(self) -> tuple[ElementSet, ...]:
        """``up[i]`` is the mask of elements ``>= i``."""
        m = self.size
        return tuple(mask_of(j for j in range(m) if self.leq[i][j]) for i in range(m))

    @cached_property
    def comparable(self) -> tuple[ElementSet, ...]:
        return tuple(u | d for u, d in zip(self.up, self.down))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise LatticeError(f"unknown element label {label!r}") from None

    def le(self, i: int, j: int) -> bool:
        return self.leq[i][j]

    def meet(self, i: int, j: int) -> int:
        return self.meet_table[i][j]

    def join(self, i: int, j: int) -> int:
        return self.join_table[i][j]

    def mask(self, items: Iterable[int | str]) -> ElementSet:
        """Bitmask from element indices or labels."""
        m = 0
        for x in items:
            m |= 1 << (self.index(x) if isinstance(x, str) else x)
        if m & ~self.all_mask:
            raise LatticeError("element index out of range")
        return m

    def names(self, mask: ElementSet) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    def render(self, mask: ElementSet) -> str:
        return "{" + ",".join(self.names(mask)) + "}"

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Cover pairs ``(lower, upper)`` sorted by index."""
        out = []
        for i in range(self.size):
            for j in bits(self.up[i] & ~(1 << i)):
                if self.up[i] & self.down[j] == (1 << i) | (1 << j):
                    out.append((i, j))
        return tuple(out)


def _closure(m: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    """Reflexive-transitive closure as ``up`` masks (Warshall on bit rows)."""
    up = [1 << i for i in range(m)]
    for lo, hi in edges:
        up[lo] |= 1 << hi
    for k in range(m):
        bit = 1 << k
        uk = up[k]
        for i in range(m):
            if up[i] & bit:
                up[i] |= uk
    return up


def _from_up(labels: Sequence[str], up: Sequence[int]) -> Lattice:
    m = len(labels)
    if m == 0:
        raise NoBounds("empty poset has no bounds")
    if m > MAX_ELEMENTS:
        raise TooLarge(f"{m} elements exceeds the {MAX_ELEMENTS}-element bitset limit")
    if len(set(labels)) != m:
        raise LatticeError("duplicate element labels")
    full = (1 << m) - 1
    down = [0] * m
    for i in range(m):
        for j in bits(up[i]):
            down[j] |= 1 << i
    for i in range(m):
        if not up[i] >> i & 1:
            raise LatticeError("order relation is not reflexive")
        others = up[i] & down[i] & ~(1 << i)
        if others:
            raise LatticeError(
                f"order relation has a cycle through {labels[i]!r} and {labels[bits(others)[0]]!r}"
            )
    bottoms = [i for i in range(m) if up[i] == full]
    tops = [i for i in range(m) if down[i] == full]
    if len(bottoms) != 1 or len(tops) != 1:
        raise NoBounds("poset has no unique minimum and maximum")

    meet = [[0] * m for _ in range(m)]
    join = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            lower = down[i] & down[j]
            g = [k for k in bits(lower) if down[k] == lower]
            if len(g) != 1:
                raise NotALattice(labels[i], labels[j], "meet")
            upper = up[i] & up[j]
            h = [k for k in bits(upper) if up[k] == upper]
            if len(h) != 1:
                raise NotALattice(labels[i], labels[j], "join")
            meet[i][j] = meet[j][i] = g[0]
            join[i][j] = join[j][i] = h[0]
    leq = tuple(tuple(bool(up[i] >> j & 1) for j in range(m)) for i in range(m))
    return Lattice(
        labels=tuple(labels),
        leq=leq,
        meet_table=tuple(map(tuple, meet)),
        join_table=tuple(map(tuple, join)),
        bottom=bottoms[0],
        top=tops[0],
    )


def lattice_from_covers(elements: Sequence[str], covers: Iterable[tuple[str, str]]) -> Lattice:
    """Build and validate a lattice from its Hasse diagram.

    ``covers`` holds ``(lower, upper)`` label pairs; redundant (transitive)
    pairs are tolerated since only the closure matters.

    Raises NotALattice when a pair lacks a unique meet or join, NoBounds when
    the minimum or maximum is not unique, and LatticeError for cycles.
    """
    elements = [str(e) for e in elements]
    index = {lab: i for i, lab in enumerate(elements)}
    if len(index) != len(elements):
        raise LatticeError("duplicate element labels")
    edges = []
    for lo, hi in covers:
        if lo not in index or hi not in index:
            raise LatticeError(f"cover ({lo}, {hi}) mentions an unknown element")
        if lo == hi:
            raise LatticeError(f"cover ({lo}, {hi}) is a self-loop")
        edges.append((index[lo], index[hi]))
    if len(elements) > MAX_ELEMENTS:
        raise TooLarge(f"{len(elements)} elements exceeds the {MAX_ELEMENTS}-element bitset limit")
    return _from_up(elements, _closure(len(elements), edges))


def lattice_from_leq(labels: Sequence[str], le) -> Lattice:
    """Build a lattice from an order predicate ``le(i, j)`` on indices ``0..m-1``.

    The predicate must already be reflexive and transitive; it is validated.
    """
    m = len(labels)
    up = [mask_of(j for j in range(m) if le(i, j)) for i in range(m)]
    closed = _closure(m, ((i, j) for i in range(m) for j in bits(up[i])))
    if closed != up:
        raise LatticeError("order relation is not transitive")
    return _from_up(list(labels), up)


def is_chain(l: Lattice, s: ElementSet) -> bool:
    for i in bits(s):
        if s & ~l.comparable[i]:
            return False
    return True


def is_antichain_triple(l: Lattice, x: int, y: int, z: int) -> bool:
    return not (
        l.comparable[x] >> y & 1 or l.comparable[x] >> z & 1 or l.comparable[y] >> z & 1
    )


def dual(l: Lattice) -> Lattice:
    """Order-reversed lattice on the same indices and labels."""
    m = l.size
    return Lattice(
        labels=l.labels,
        leq=tuple(tuple(l.leq[j][i] for j in range(m)) for i in range(m)),
        meet_table=l.join_table,
        join_table=l.meet_table,
        bottom=l.top,
        top=l.bottom,
    )


def generated_sublattice(l: Lattice, seed: ElementSet) -> ElementSet:
    """Smallest meet- and join-closed set containing ``seed``."""
    closed = seed
    frontier = seed
    while frontier:
        new = 0
        for i in bits(frontier):
            mi, ji = l.meet_table[i], l.join_table[i]
            for j in bits(closed):
                new |= (1 << mi[j]) | (1 << ji[j])
        frontier = new & ~closed
        closed |= frontier
    return closed


def is_closed(l: Lattice, carrier: ElementSet) -> bool:
    for i in bits(carrier):
        for j in bits(carrier):
            if not (carrier >> l.meet_table[i][j] & 1 and carrier >> l.join_table[i][j] & 1):
                return False
    return True


def restrict(l: Lattice, carrier: ElementSet) -> Lattice:
    """Sublattice on ``carrier`` with inherited operations.

    Elements keep their relative index order; the returned lattice is
    re-indexed ``0..k-1``.
    """
    if not carrier:
        raise NotClosed("empty carrier")
    if not is_closed(l, carrier):
        raise NotClosed(f"{l.render(carrier)} is not closed under meet and join")
    idx = bits(carrier)
    pos = {v: k for k, v in enumerate(idx)}
    k = len(idx)
    leq = tuple(tuple(l.leq[a][b] for b in idx) for a in idx)
    meet = tuple(tuple(pos[l.meet_table[a][b]] for b in idx) for a in idx)
    join = tuple(tuple(pos[l.join_table[a][b]] for b in idx) for a in idx)
    bottom = next(p for p in range(k) if all(leq[p]))
    top = next(p for p in range(k) if all(leq[q][p] for q in range(k)))
    return Lattice(tuple(l.labels[a] for a in idx), leq, meet, join, bottom, top)


def find_isomorphism(l1: Lattice, l2: Lattice) -> list[int] | None:
    """Order isomorphism ``l1 -> l2`` as an index map, or ``None``.

    Plain backtracking with rank/degree pruning; meant for small lattices.
    """
    m = l1.size
    if m != l2.size or len(l1.covers) != len(l2.covers):
        return None

    def signature(l, i):
        return (bin(l.down[i]).count("1"), bin(l.up[i]).count("1"))

    sig1 = [signature(l1, i) for i in range(m)]
    sig2 = [signature(l2, i) for i in range(m)]
    if sorted(sig1) != sorted(sig2):
        return None
    order = sorted(range(m), key=lambda i: sig1[i])
    image = [-1] * m
    used = [False] * m

    def extend(k):
        if k == m:
            return True
        i = order[k]
        for j in range(m):
            if used[j] or sig2[j] != sig1[i]:
                continue
            if all(
                l1.leq[i][p] == l2.leq[j][image[p]] and l1.leq[p][i] == l2.leq[image[p]][j]
                for p in order[:k]
            ):
                image[i] = j
                used[j] = True
                if extend(k + 1):
                    return True
                used[j] = False
        image[i] = -1
        return False

    return image if extend(0) else None


# -- text format ------------------------------------------------------------


def parse_lattice(text: str) -> Lattice:
    """Parse the ``elements:`` / ``cover:`` line format."""
    elements = None
    covers = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"line {lineno}: expected 'key: value'")
        key = key.strip()
        fields = rest.split()
        bad = [f for f in fields if not LABEL_RE.match(f)]
        if bad:
            raise ParseError(f"line {lineno}: invalid label {bad[0]!r}")
        if key == "elements":
            if elements is not None:
                raise ParseError(f"line {lineno}: duplicate 'elements' line")
            elements = fields
        elif key == "cover":
            if elements is None:
                raise ParseError(f"line {lineno}: 'cover' before 'elements'")
            if len(fields) != 2:
                raise ParseError(f"line {lineno}: 'cover' takes exactly two labels")
            covers.append((fields[0], fields[1]))
        else:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
    if elements is None:
        raise ParseError("missing 'elements' line")
    return lattice_from_covers(elements, covers)


def format_lattice(l: Lattice) -> str:
    lines = ["elements: " + " ".join(l.labels)]
    lines += [f"cover: {l.labels[a]} {l.labels[b]}" for a, b in l.covers]
    return "\n".join(lines) + "\n"


def load_lattice(path) -> Lattice:
    with open(path, encoding="utf-8") as fh:
        return parse_lattice(fh.read())

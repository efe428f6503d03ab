"""Named lattices and lattice constructs (chains, M_n, M_{n,n}, sums, products)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

from .errors import BadN, LatticeError, TooLarge
from .poset_core import (
    MAX_ELEMENTS,
    Lattice,
    _closure,
    _from_up,
    bits,
    lattice_from_covers,
)


class Poset(NamedTuple):
    """Bare finite poset operand for :func:`linear_sum` (``up`` masks per element)."""

    labels: tuple[str, ...]
    up: tuple[int, ...]


def antichain(n: int, prefix: str = "x") -> Poset:
    return Poset(tuple(f"{prefix}{i}" for i in range(1, n + 1)), tuple(1 << i for i in range(n)))


def _as_poset(p: Union[Lattice, Poset]) -> Poset:
    if isinstance(p, Poset):
        return p
    return Poset(p.labels, p.up)


@dataclass(frozen=True)
class MnnLayout:
    n: int
    a_indices: tuple[int, ...]
    b_indices: tuple[int, ...]

    @property
    def link_a(self) -> int:
        return self.a_indices[-1]

    @property
    def link_b(self) -> int:
        return self.b_indices[0]

    @property
    def a_mask(self) -> int:
        return sum(1 << i for i in self.a_indices)

    @property
    def b_mask(self) -> int:
        return sum(1 << i for i in self.b_indices)


def chain(n: int) -> Lattice:
    if n < 1:
        raise LatticeError("a chain needs at least one element")
    labels = [str(i) for i in range(n)]
    return lattice_from_covers(labels, [(labels[i], labels[i + 1]) for i in range(n - 1)])


def m_n(n: int) -> Lattice:
    """``1 + n-antichain + 1``: bottom, ``n`` atoms ``a1..an``, top."""
    if n < 1:
        raise LatticeError("M_n needs n >= 1")
    atoms = [f"a{i}" for i in range(1, n + 1)]
    covers = [("0", a) for a in atoms] + [(a, "1") for a in atoms]
    return lattice_from_covers(["0", *atoms, "1"], covers)


def m_nn(n: int) -> tuple[Lattice, MnnLayout]:
    """Two copies of M_n glued along the edge ``a_n < b_1``.

    Index order is ``0, a1..an, b1..bn, 1``.
    """
    if n < 3:
        raise BadN(
            f"M_{{n,n}} is defined for n >= 3; n={n} gives a distributive lattice "
            "(2x3 for n=2, the 4-chain for n=1)"
        )
    a = [f"a{i}" for i in range(1, n + 1)]
    b = [f"b{i}" for i in range(1, n + 1)]
    covers = [("0", x) for x in a] + [(y, "1") for y in b]
    covers += [(a[-1], y) for y in b]
    covers += [(x, b[0]) for x in a[:-1]]
    lat = lattice_from_covers(["0", *a, *b, "1"], covers)
    layout = MnnLayout(n, tuple(range(1, n + 1)), tuple(range(n + 1, 2 * n + 1)))
    return lat, layout


def n5() -> Lattice:
    return lattice_from_covers(
        ["0", "u", "v", "w", "1"],
        [("0", "v"), ("v", "u"), ("u", "1"), ("0", "w"), ("w", "1")],
    )


def m3() -> Lattice:
    return lattice_from_covers(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )


def fig3() -> Lattice:
    """The seven-element lattice used for the meet/join and ST-modular counterexamples."""
    return lattice_from_covers(
        ["0", "a", "b", "c", "d", "e", "1"],
        [
            ("0", "d"), ("0", "e"),
            ("d", "b"), ("d", "a"), ("e", "a"), ("e", "c"),
            ("b", "1"), ("a", "1"), ("c", "1"),
        ],
    )


def _unique_right(left: tuple[str, ...], right: tuple[str, ...]) -> tuple[str, ...]:
    taken = set(left)
    out = []
    for lab in right:
        new = lab
        while new in taken:
            new += "_2"
        taken.add(new)
        out.append(new)
    return tuple(out)


def poset_sum(*parts: Union[Lattice, Poset]) -> Poset:
    """Ordinal sum of posets, left to right (no lattice check)."""
    labels: tuple[str, ...] = ()
    up: list[int] = []
    for part in map(_as_poset, parts):
        offset = len(labels)
        if offset + len(part.labels) > MAX_ELEMENTS:
            raise TooLarge("linear sum exceeds the element limit")
        block = ((1 << len(part.labels)) - 1) << offset
        up = [u | block for u in up] + [u << offset for u in part.up]
        labels = labels + _unique_right(labels, part.labels)
    return Poset(labels, tuple(up))


def linear_sum(*parts: Union[Lattice, Poset]) -> Lattice:
    """Ordinal sum: every element of an earlier operand lies below every later one.

    Operands may be bare posets (an antichain, say) as long as the whole sum
    is a lattice. Colliding labels on the right get a ``_2`` suffix.
    """
    if not parts:
        raise LatticeError("linear_sum needs at least one operand")
    p = poset_sum(*parts)
    return _from_up(p.labels, p.up)


def product(l1: Lattice, l2: Lattice) -> Lattice:
    """Direct product; element ``(i, j)`` has index ``i * |l2| + j``."""
    m1, m2 = l1.size, l2.size
    if m1 * m2 > MAX_ELEMENTS:
        raise TooLarge(f"product has {m1 * m2} elements, over the {MAX_ELEMENTS} limit")
    labels = [f"{x}_{y}" for x in l1.labels for y in l2.labels]
    edges = []
    for i in range(m1):
        for j in range(m2):
            for i2 in bits(l1.up[i]):
                for j2 in bits(l2.up[j]):
                    edges.append((i * m2 + j, i2 * m2 + j2))
    return _from_up(labels, _closure(m1 * m2, edges))


NAMED = {
    "n5": n5,
    "m3": m3,
    "fig3": fig3,
    "fig8": fig3,
}


def make(spec: str) -> Lattice:
    """Build a lattice from a ``name`` or ``name:param`` string.

    Known names: ``chain:n``, ``mn:n``, ``mnn:n``, ``n5``, ``m3``, ``fig3``,
    ``fig8`` (an alias of ``fig3``).
    """
    name, _, param = spec.partition(":")
    name = name.strip().lower()
    if name in NAMED:
        if param:
            raise LatticeError(f"{name} takes no parameter")
        return NAMED[name]()
    builders = {"chain": chain, "mn": m_n, "mnn": lambda n: m_nn(n)[0]}
    if name not in builders:
        raise LatticeError(f"unknown lattice name {name!r}")
    try:
        n = int(param)
    except ValueError:
        raise LatticeError(f"{name} needs an integer parameter, got {param!r}") from None
    return builders[name](n)


def mnn_layout_for(l: Lattice) -> MnnLayout | None:
    """Recover the layout of a lattice built by :func:`m_nn`, from its labels."""
    labs = l.labels
    m = len(labs)
    if m < 8 or (m - 2) % 2:
        return None
    n = (m - 2) // 2
    expected = ("0", *(f"a{i}" for i in range(1, n + 1)), *(f"b{i}" for i in range(1, n + 1)), "1")
    if labs != expected:
        return None
    ref, layout = m_nn(n)
    return layout if ref.leq == l.leq else None

"""Maximal ST-pairs of M_{n,n}: breaking antichains, the five pair types, counts."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .constructors import MnnLayout, m_nn
from .errors import BadN
from .pair_enum import MaximalityMode, MaximalPairReport, SubsetPair, enumerate_maximal_pairs
from .poset_core import ElementSet, Lattice, bits, is_antichain_triple, popcount


class PairType(enum.Enum):
    T_CHAIN = "TChain"
    S_LINK = "SLink"
    S_2_LINKS = "S2Links"
    S_LEVEL = "SLevel"
    S_LEVEL_MINUS_LINK = "SLevelMinusLink"

    @property
    def number(self) -> int:
        return list(PairType).index(self) + 1

    @classmethod
    def from_number(cls, k: int) -> "PairType":
        return list(cls)[k - 1]


def st_breaking_antichains(
    l: Lattice, layout: MnnLayout, s: ElementSet, t: ElementSet
) -> list[tuple[int, int, int]]:
    """Triples ``(x, y, z)`` with ``x`` in S, ``y < z`` in T, forming a 3-antichain."""
    out = []
    ts = bits(t)
    for x in bits(s):
        for i, y in enumerate(ts):
            for z in ts[i + 1:]:
                if x != y and x != z and is_antichain_triple(l, x, y, z):
                    out.append((x, y, z))
    return out


def breaking_antichain_blocks(l: Lattice, layout: MnnLayout, s: ElementSet, t: ElementSet) -> bool:
    return bool(st_breaking_antichains(l, layout, s, t))


def t_restriction_holds(layout: MnnLayout, t: ElementSet) -> bool:
    """False iff T takes at least two elements from each level."""
    return not (popcount(t & layout.a_mask) >= 2 and popcount(t & layout.b_mask) >= 2)


def template_instances(layout: MnnLayout) -> dict[PairType, set[tuple[int, int]]]:
    """Every ``(S, T)`` described by the closed-form type templates, per type."""
    n = layout.n
    a = {i: 1 << layout.a_indices[i - 1] for i in range(1, n + 1)}
    b = {j: 1 << layout.b_indices[j - 1] for j in range(1, n + 1)}
    A, B = layout.a_mask, layout.b_mask
    inner = A | B
    rng = range(1, n + 1)

    t_chain = set()
    for i in rng:
        for t in (a[i], b[i], a[i] | b[1], a[n] | b[i]):
            t_chain.add((inner & ~t, t))
    s_link = {(b[1], A | b[i]) for i in rng if i != 1}
    s_link |= {(a[n], a[i] | B) for i in rng if i != n}
    s_2_links = {(a[n] | b[1], a[i] | b[j]) for i in rng if i != n for j in rng if j != 1}
    s_level = {(B, a[i] | a[n]) for i in rng if i != n}
    s_level |= {(A, b[1] | b[i]) for i in rng if i != 1}
    minus_link = {(B & ~b[1], a[i] | a[n] | b[1]) for i in rng if i != n}
    minus_link |= {(A & ~a[n], a[n] | b[1] | b[i]) for i in rng if i != 1}
    return {
        PairType.T_CHAIN: t_chain,
        PairType.S_LINK: s_link,
        PairType.S_2_LINKS: s_2_links,
        PairType.S_LEVEL: s_level,
        PairType.S_LEVEL_MINUS_LINK: minus_link,
    }


def matching_types(layout: MnnLayout, s: ElementSet, t: ElementSet) -> list[PairType]:
    key = (s, t)
    return [tag for tag, inst in _templates(layout).items() if key in inst]


def classify_pair(layout: MnnLayout, s: ElementSet, t: ElementSet) -> PairType | None:
    """The unique template type of ``(S, T)``, or ``None`` if unclassified."""
    tags = matching_types(layout, s, t)
    return tags[0] if len(tags) == 1 else None


_TEMPLATE_CACHE: dict[MnnLayout, dict[PairType, set[tuple[int, int]]]] = {}


def _templates(layout: MnnLayout):
    if layout not in _TEMPLATE_CACHE:
        _TEMPLATE_CACHE[layout] = template_instances(layout)
    return _TEMPLATE_CACHE[layout]


def expected_counts(n: int) -> tuple[dict[PairType, int], int]:
    if n < 3:
        raise BadN("counts are stated for n >= 3")
    counts = {
        PairType.T_CHAIN: 4 * n - 1,
        PairType.S_LINK: 2 * n - 2,
        PairType.S_2_LINKS: n * n - 2 * n + 1,
        PairType.S_LEVEL: 2 * n - 2,
        PairType.S_LEVEL_MINUS_LINK: 2 * n - 2,
    }
    return counts, n * n + 8 * n - 6


def classify_report(layout: MnnLayout, report: MaximalPairReport) -> MaximalPairReport:
    """Fill ``report.types`` with type tags (``None`` for unclassified pairs)."""
    tags = [classify_pair(layout, p.s, p.t) for p in report.pairs]
    report.types = [tag.value if tag else None for tag in tags]
    return report


@dataclass
class CharacterizationReport:
    n: int
    total: int
    expected_total: int
    counts: dict[PairType, int]
    expected: dict[PairType, int]
    unclassified: list[SubsetPair] = field(default_factory=list)
    missing: list[tuple[PairType, tuple[int, int]]] = field(default_factory=list)
    report: MaximalPairReport | None = None

    @property
    def ok(self) -> bool:
        return (
            not self.unclassified
            and not self.missing
            and self.total == self.expected_total
            and self.counts == self.expected
        )

    def summary(self) -> str:
        classified = "all classified" if not self.unclassified else f"{len(self.unclassified)} unclassified"
        return f"total={self.total} expected={self.expected_total} {classified}"


def verify_characterization(n: int, *, workers: int = 1) -> CharacterizationReport:
    """Enumerate M_{n,n}'s Problem-1 pairs and match them against the templates."""
    lat, layout = m_nn(n)
    report = enumerate_maximal_pairs(lat, MaximalityMode.PROBLEM1, lattice_id=f"mnn:{n}", workers=workers)
    classify_report(layout, report)
    expected, expected_total = expected_counts(n)
    counts = {tag: 0 for tag in PairType}
    unclassified = []
    found = set()
    for pair, tag in zip(report.pairs, report.types):
        if tag is None:
            unclassified.append(pair)
        else:
            counts[PairType(tag)] += 1
        found.add((pair.s, pair.t))
    missing = [
        (tag, inst) for tag, insts in _templates(layout).items() for inst in sorted(insts) if inst not in found
    ]
    return CharacterizationReport(
        n=n,
        total=len(report.pairs),
        expected_total=expected_total,
        counts=counts,
        expected=expected,
        unclassified=unclassified,
        missing=missing,
        report=report,
    )

"""Enumeration of maximal ST-pairs.

Two maximality modes are supported:

``PROBLEM1``
    ``S`` and ``T`` are non-empty, disjoint subsets of ``L*`` (the lattice
    minus bottom and top); maximality is judged inside that universe.
``DEFINITION4``
    ``S`` and ``T`` are any proper subsets of ``L``; they may overlap.

The fast path iterates candidate sets ``T`` by increasing size, builds the
largest admissible ``S`` for each one from precomputed per-element failure
masks, and drops pairs dominated componentwise by a later pair.
``brute_force_maximal_pairs`` is an independent, unpruned oracle.
"""

from __future__ import annotations

import enum
import itertools
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import LatticeError, TooLarge
from .poset_core import ElementSet, Lattice, bits, popcount
from .st_props import TripleFilterVerdict, join_distributes, meet_distributes, st_distributive, triple_filter

BRUTE_FORCE_LIMIT = 12


class MaximalityMode(enum.Enum):
    PROBLEM1 = "problem1"
    DEFINITION4 = "definition4"


@dataclass(frozen=True)
class SubsetPair:
    s: ElementSet
    t: ElementSet

    def sort_key(self):
        return (popcount(self.t), bits(self.t), popcount(self.s), bits(self.s))

    def contains(self, other: "SubsetPair") -> bool:
        return other.s & ~self.s == 0 and other.t & ~self.t == 0


@dataclass
class EnumStats:
    t_visited: Counter = field(default_factory=Counter)
    candidates: Counter = field(default_factory=Counter)
    triples_skipped: int = 0
    triples_computed: int = 0
    dominated: int = 0

    def as_dict(self) -> dict:
        return {
            "t_visited": {str(k): v for k, v in sorted(self.t_visited.items())},
            "candidates": {str(k): v for k, v in sorted(self.candidates.items())},
            "triples_skipped": self.triples_skipped,
            "triples_computed": self.triples_computed,
            "dominated": self.dominated,
        }


@dataclass
class MaximalPairReport:
    lattice_id: str
    mode: MaximalityMode
    pairs: list[SubsetPair]
    stats: EnumStats = field(default_factory=EnumStats)
    types: list[str | None] | None = None

    def pair_set(self) -> set[tuple[int, int]]:
        return {(p.s, p.t) for p in self.pairs}


# -- failure masks -------------------------------------------------------------


@dataclass(frozen=True)
class FailureTable:
    """``masks[s][t1]`` has bit ``t2`` set when ``(s, t1, t2)`` breaks a distribution law."""

    masks: tuple[tuple[int, ...], ...]
    skipped: int
    computed: int


def failure_table(l: Lattice) -> FailureTable:
    cached = l.__dict__.get("_failure_table")
    if cached is not None:
        return cached
    m = l.size
    skipped = computed = 0
    rows = []
    for s in range(m):
        row = []
        for t1 in range(m):
            bad = 0
            for t2 in range(m):
                if triple_filter(l, s, t1, t2) is not TripleFilterVerdict.MUST_CHECK:
                    skipped += 1
                    continue
                computed += 1
                if not (meet_distributes(l, s, t1, t2) and join_distributes(l, s, t1, t2)):
                    bad |= 1 << t2
            row.append(bad)
        rows.append(tuple(row))
    table = FailureTable(tuple(rows), skipped, computed)
    # Lattice is frozen; cache beside the cached_property values.
    l.__dict__["_failure_table"] = table
    return table


def _distributes_into(fail_row: tuple[int, ...], t: ElementSet) -> bool:
    for t1 in bits(t):
        if fail_row[t1] & t:
            return False
    return True


def _max_s(masks, universe: ElementSet, t: ElementSet) -> ElementSet:
    s = 0
    for x in bits(universe):
        if _distributes_into(masks[x], t):
            s |= 1 << x
    return s


def _check_t(l: Lattice, t: ElementSet, mode: MaximalityMode) -> None:
    if t & ~l.all_mask:
        raise LatticeError("T has bits outside the lattice")
    if mode is MaximalityMode.PROBLEM1:
        if not t or t & ~l.inner_mask:
            raise LatticeError("Problem-1 T must be a non-empty subset of L*")
    elif t == l.all_mask:
        raise LatticeError("Definition-4 T must be a proper subset of L")


def max_s_for_t(l: Lattice, t: ElementSet, mode: MaximalityMode = MaximalityMode.PROBLEM1) -> ElementSet:
    """Largest ``S`` distributing into ``T``.

    For ``PROBLEM1`` the candidates are ``L* \\ T``; for ``DEFINITION4`` they are
    all of ``L`` (the result can then be ``L`` itself, which is not proper).
    """
    _check_t(l, t, mode)
    universe = l.inner_mask & ~t if mode is MaximalityMode.PROBLEM1 else l.all_mask
    return _max_s(failure_table(l).masks, universe, t)


def s_lattice_top(l: Lattice, t: ElementSet) -> ElementSet:
    """Top of the family of all ``S`` making ``l`` ST-distributive for this ``T``."""
    return _max_s(failure_table(l).masks, l.all_mask, t)


# -- subset iteration ----------------------------------------------------------


def _expander(universe: ElementSet):
    """Map a compressed ``k``-bit word onto the set bits of ``universe``.

    Byte-wise lookup tables keep the scatter cheap.
    """
    positions = bits(universe)
    tables = []
    for start in range(0, len(positions), 8):
        chunk = positions[start:start + 8]
        table = [0] * (1 << len(chunk))
        for w in range(1, len(table)):
            low = w & -w
            table[w] = table[w ^ low] | (1 << chunk[low.bit_length() - 1])
        tables.append(table)

    def expand(word: int) -> int:
        out = 0
        for table in tables:
            out |= table[word & 0xFF]
            word >>= 8
        return out

    return expand


def subsets_of_size(universe: ElementSet, r: int):
    """Subsets of ``universe`` with exactly ``r`` elements (Gosper's hack)."""
    k = popcount(universe)
    if r > k:
        return
    if r == 0:
        yield 0
        return
    expand = _expander(universe)
    word = (1 << r) - 1
    limit = 1 << k
    while word < limit:
        yield expand(word)
        low = word & -word
        ripple = word + low
        word = (((ripple ^ word) >> 2) // low) | ripple


# -- enumeration by increasing |T| ---------------------------------------------


def _candidates_for_sizes(l: Lattice, mode: MaximalityMode, sizes) -> tuple[list, Counter, Counter]:
    """Candidate ``(S, T)`` pairs for every ``T`` of the given sizes."""
    masks = failure_table(l).masks
    visited: Counter = Counter()
    emitted: Counter = Counter()
    out = []
    if mode is MaximalityMode.PROBLEM1:
        t_universe = l.inner_mask
    else:
        t_universe = l.all_mask
    for r in sizes:
        for t in subsets_of_size(t_universe, r):
            visited[r] += 1
            if mode is MaximalityMode.PROBLEM1:
                s = _max_s(masks, l.inner_mask & ~t, t)
                if s:
                    out.append(SubsetPair(s, t))
                    emitted[r] += 1
            else:
                s = _max_s(masks, l.all_mask, t)
                # S = L is not proper: every L minus one element is then maximal.
                options = [s] if s != l.all_mask else [l.all_mask & ~(1 << x) for x in range(l.size)]
                for opt in options:
                    if opt:
                        out.append(SubsetPair(opt, t))
                        emitted[r] += 1
    return out, visited, emitted


def _worker(args):
    l, mode, sizes = args
    return _candidates_for_sizes(l, mode, sizes)


def enumerate_maximal_pairs(
    l: Lattice,
    mode: MaximalityMode = MaximalityMode.PROBLEM1,
    *,
    lattice_id: str = "L",
    workers: int = 1,
) -> MaximalPairReport:
    """All maximal ST-pairs of ``l`` under ``mode``.

    ``workers > 1`` spreads the ``T`` sizes over processes; the dominance pass
    runs afterwards on the merged list, so the output does not depend on the
    schedule.
    """
    if l.size > 64:
        raise TooLarge("enumeration is limited to 64 elements")
    table = failure_table(l)
    stats = EnumStats(triples_skipped=table.skipped, triples_computed=table.computed)
    top_size = popcount(l.inner_mask) if mode is MaximalityMode.PROBLEM1 else l.size - 1
    first = 1 if mode is MaximalityMode.PROBLEM1 else 0
    sizes = list(range(first, top_size + 1))

    if workers > 1 and len(sizes) > 1:
        buckets = [sizes[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_worker, [(l, mode, b) for b in buckets if b]))
    else:
        parts = [_candidates_for_sizes(l, mode, sizes)]

    candidates = []
    for cand, visited, emitted in parts:
        candidates.extend(cand)
        stats.t_visited.update(visited)
        stats.candidates.update(emitted)
    candidates.sort(key=SubsetPair.sort_key)

    # A dominated pair always has the same S as the pair dominating it (the
    # largest S only shrinks as T grows), so buckets keyed by S are exact.
    retained: dict[int, list[SubsetPair]] = {}
    for pair in candidates:
        bucket = retained.setdefault(pair.s, [])
        keep = [p for p in bucket if not pair.contains(p)]
        stats.dominated += len(bucket) - len(keep)
        keep.append(pair)
        retained[pair.s] = keep

    pairs = sorted((p for bucket in retained.values() for p in bucket), key=SubsetPair.sort_key)
    for i, p in enumerate(pairs):
        for j, q in enumerate(pairs):
            if i != j and q.contains(p):
                raise AssertionError(f"dominance sweep left a contained pair {p} in {q}")
    return MaximalPairReport(lattice_id, mode, pairs, stats)


# -- oracle --------------------------------------------------------------------


def _extension_maximal(l: Lattice, s: ElementSet, t: ElementSet, mode: MaximalityMode) -> bool:
    if mode is MaximalityMode.PROBLEM1:
        for x in bits(l.inner_mask & ~(s | t)):
            if st_distributive(l, s | (1 << x), t) or st_distributive(l, s, t | (1 << x)):
                return False
        return True
    for x in bits(l.all_mask & ~s):
        bigger = s | (1 << x)
        if bigger != l.all_mask and st_distributive(l, bigger, t):
            return False
    for x in bits(l.all_mask & ~t):
        bigger = t | (1 << x)
        if bigger != l.all_mask and st_distributive(l, s, bigger):
            return False
    return True


def brute_force_maximal_pairs(
    l: Lattice, mode: MaximalityMode = MaximalityMode.PROBLEM1, *, lattice_id: str = "L"
) -> MaximalPairReport:
    """Reference enumeration: test every admissible ``(S, T)`` directly."""
    pairs = []
    if mode is MaximalityMode.PROBLEM1:
        inner = bits(l.inner_mask)
        if len(inner) > BRUTE_FORCE_LIMIT:
            raise TooLarge(f"|L*| = {len(inner)} is over the oracle limit {BRUTE_FORCE_LIMIT}")
        for assign in itertools.product((0, 1, 2), repeat=len(inner)):
            s = sum(1 << e for e, a in zip(inner, assign) if a == 1)
            t = sum(1 << e for e, a in zip(inner, assign) if a == 2)
            if s and t and st_distributive(l, s, t) and _extension_maximal(l, s, t, mode):
                pairs.append(SubsetPair(s, t))
    else:
        if l.size > BRUTE_FORCE_LIMIT - 2:
            raise TooLarge(f"|L| = {l.size} is over the Definition-4 oracle limit")
        proper = [x for x in range(1 << l.size) if x != l.all_mask]
        for t in proper:
            for s in proper:
                if s and st_distributive(l, s, t) and _extension_maximal(l, s, t, mode):
                    pairs.append(SubsetPair(s, t))
    pairs.sort(key=SubsetPair.sort_key)
    return MaximalPairReport(lattice_id, mode, pairs)


# -- serialization -------------------------------------------------------------


def format_pair(l: Lattice, pair: SubsetPair, tag: str | None = None) -> str:
    return f"S={l.render(pair.s)} T={l.render(pair.t)} type={tag or 'none'}"


def format_report(l: Lattice, report: MaximalPairReport) -> str:
    types = report.types or [None] * len(report.pairs)
    return "".join(format_pair(l, p, tag) + "\n" for p, tag in zip(report.pairs, types))


def report_to_dict(l: Lattice, report: MaximalPairReport) -> dict:
    """Structured dump.

    Schema: ``{"lattice": str, "mode": "problem1"|"definition4",
    "elements": [label...], "count": int, "pairs": [{"S": [label...],
    "T": [label...], "type": str|null, "overlap": bool}], "stats": {...}}``.
    """
    types = report.types or [None] * len(report.pairs)
    return {
        "lattice": report.lattice_id,
        "mode": report.mode.value,
        "elements": list(l.labels),
        "count": len(report.pairs),
        "pairs": [
            {"S": l.names(p.s), "T": l.names(p.t), "type": tag, "overlap": bool(p.s & p.t)}
            for p, tag in zip(report.pairs, types)
        ],
        "stats": report.stats.as_dict(),
    }


def report_to_json(l: Lattice, report: MaximalPairReport) -> str:
    return json.dumps(report_to_dict(l, report), indent=2) + "\n"


def parse_report_text(l: Lattice, text: str) -> list[tuple[SubsetPair, str | None]]:
    """Read back the line format written by :func:`format_report`."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            s_part, t_part, ty_part = line.split(" ")
            s_body = s_part.removeprefix("S={").removesuffix("}")
            t_body = t_part.removeprefix("T={").removesuffix("}")
            tag = ty_part.removeprefix("type=")
        except ValueError:
            raise LatticeError(f"line {lineno}: malformed pair line") from None
        s = l.mask(x for x in s_body.split(",") if x)
        t = l.mask(x for x in t_body.split(",") if x)
        out.append((SubsetPair(s, t), None if tag == "none" else tag))
    return out

from itertools import combinations, product as cartesian

import pytest

from conftest import FIXTURES
from stlattice.constructors import m_nn
from stlattice.errors import BadN
from stlattice.mnn_classify import (
    PairType,
    breaking_antichain_blocks,
    classify_pair,
    expected_counts,
    matching_types,
    st_breaking_antichains,
    t_restriction_holds,
    template_instances,
    verify_characterization,
)
from stlattice.poset_core import is_chain
from stlattice.st_props import st_distributive


def read_table(name, l):
    rows = []
    for line in (FIXTURES / name).read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        s, t, k = (part.strip() for part in line.split("|"))
        rows.append((l.mask(s.split(",")), l.mask(t.split(",")), PairType.from_number(int(k))))
    return rows


def test_breaking_antichain_examples():
    l, lay = m_nn(3)
    got = st_breaking_antichains(l, lay, l.mask(["a1"]), l.mask(["a2", "b2"]))
    assert got == [(l.index("a1"), l.index("a2"), l.index("b2"))]
    assert st_breaking_antichains(l, lay, l.inner_mask, l.mask(["a1", "b1"])) == []
    l4, lay4 = m_nn(4)
    s, t = l4.mask(["b1"]), l4.mask(["a1", "a2", "a3", "a4", "b2"])
    assert st_breaking_antichains(l4, lay4, s, t) == []
    assert st_distributive(l4, s, t)


def test_blocks_examples():
    l, lay = m_nn(3)
    s, t = l.mask(["a1"]), l.mask(["a2", "a3"])
    # a1, a2, a3 is an antichain, so the pair is blocked
    assert breaking_antichain_blocks(l, lay, s, t)
    assert not st_distributive(l, s, t)
    s, t = l.mask(["a1", "a2", "a3"]), l.mask(["b1", "b2"])
    assert not breaking_antichain_blocks(l, lay, s, t)
    assert st_distributive(l, s, t)
    assert not breaking_antichain_blocks(l, lay, 0, t)
    assert not breaking_antichain_blocks(l, lay, s, 0)


def test_t_restriction():
    l, lay = m_nn(3)
    assert not t_restriction_holds(lay, l.mask(["a1", "a2", "b2", "b3"]))
    assert t_restriction_holds(lay, l.mask(["a1", "a2", "b2"]))


def test_classify_examples():
    l3, lay3 = m_nn(3)
    assert classify_pair(lay3, l3.mask(["a3", "b1"]), l3.mask(["a1", "b2"])) is PairType.S_2_LINKS
    l4, lay4 = m_nn(4)
    assert classify_pair(lay4, l4.mask(["b2", "b3", "b4"]), l4.mask(["a3", "a4", "b1"])) is PairType.S_LEVEL_MINUS_LINK
    s, t = l4.mask(["a1", "a2", "a3", "b1", "b2", "b3"]), l4.mask(["a4", "b4"])
    assert is_chain(l4, t)
    assert classify_pair(lay4, s, t) is PairType.T_CHAIN
    assert classify_pair(lay4, l4.mask(["a1"]), l4.mask(["a2"])) is None


def test_expected_counts():
    c3, t3 = expected_counts(3)
    assert [c3[k] for k in PairType] == [11, 4, 4, 4, 4] and t3 == 27
    c4, t4 = expected_counts(4)
    assert [c4[k] for k in PairType] == [15, 6, 9, 6, 6] and t4 == 42
    assert expected_counts(6)[1] == 78
    with pytest.raises(BadN):
        expected_counts(2)


def test_pair_type_numbers():
    assert [t.number for t in PairType] == [1, 2, 3, 4, 5]
    assert PairType.from_number(3) is PairType.S_2_LINKS


@pytest.mark.parametrize("n,name", [(3, "m33_table.txt"), (4, "m44_table.txt")])
def test_tables_match_enumeration(n, name):
    l, lay = m_nn(n)
    rows = read_table(name, l)
    rep = verify_characterization(n)
    assert rep.ok
    assert {(s, t) for s, t, _ in rows} == rep.report.pair_set()
    for s, t, k in rows:
        assert classify_pair(lay, s, t) is k


@pytest.mark.parametrize("n", [3, 4, 5])
def test_characterization(n):
    rep = verify_characterization(n)
    assert rep.ok, rep.summary()
    assert rep.summary() == f"total={expected_counts(n)[1]} expected={expected_counts(n)[1]} all classified"
    _, lay = m_nn(n)
    for p in rep.report.pairs:
        assert len(matching_types(lay, p.s, p.t)) == 1
        assert t_restriction_holds(lay, p.t)


def test_templates_disjoint():
    for n in (3, 4, 5, 6):
        _, lay = m_nn(n)
        inst = template_instances(lay)
        counts, _ = expected_counts(n)
        for tag in PairType:
            assert len(inst[tag]) == counts[tag]
        for x, y in combinations(PairType, 2):
            assert not inst[x] & inst[y]


def test_antichain_equivalence_exhaustive_m33():
    l, lay = m_nn(3)
    inner = [i for i in range(l.size) if l.inner_mask >> i & 1]
    for assign in cartesian((0, 1, 2, 3), repeat=len(inner)):
        # 0 neither, 1 S only, 2 T only, 3 both
        s = sum(1 << e for e, a in zip(inner, assign) if a & 1)
        t = sum(1 << e for e, a in zip(inner, assign) if a & 2)
        assert breaking_antichain_blocks(l, lay, s, t) == (not st_distributive(l, s, t))

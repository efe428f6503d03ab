import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import naive_st, random_lattice, supersolvable_oracle
from stlattice.constructors import chain, fig3, m3, m_nn, n5, product
from stlattice.errors import LatticeError, NotClosed, NotHomomorphism, NotMaximalChain
from stlattice.poset_core import bits, dual
from stlattice.st_props import (
    TripleFilterVerdict,
    distributive_element_sets,
    is_distributive,
    is_modular,
    is_supersolvable_with,
    iter_chains,
    join_distributes,
    mccd_applies,
    meet_distributes,
    pair_in_dual,
    pair_in_product,
    pair_in_sublattice,
    pair_under_hom,
    st_distributive,
    st_join_distributive,
    st_join_modular,
    st_meet_distributive,
    st_meet_modular,
    st_modular,
    triple_filter,
)


def sets(l, s, t):
    return l.mask(s), l.mask(t)


class TestWorkedExamples:
    def test_pentagon_pair(self):
        l = n5()
        s, t = sets(l, ["u", "v"], ["w", "0"])
        assert st_meet_distributive(l, s, t)
        assert st_join_distributive(l, s, t)
        assert st_distributive(l, s, t)
        assert st_modular(l, s, t)

    def test_meet_but_not_join(self):
        l = fig3()
        s, t = sets(l, ["a"], ["b", "c"])
        assert st_meet_distributive(l, s, t)
        assert not st_join_distributive(l, s, t)

    def test_st_but_not_ts(self):
        l = m3()
        assert st_distributive(l, *sets(l, ["a", "b"], ["c"]))
        assert not st_distributive(l, *sets(l, ["c"], ["a", "b"]))
        assert not st_meet_distributive(l, *sets(l, ["c"], ["a", "b"]))

    def test_overlapping_pentagon_pair(self):
        l = n5()
        assert st_distributive(l, *sets(l, ["0", "u", "v", "w"], ["0", "1", "w"]))

    def test_vacuous_meet_modular(self):
        l = fig3()
        s, t = sets(l, ["b", "d"], ["a", "c"])
        assert st_meet_modular(l, s, t)
        assert st_modular(l, s, t)
        assert not st_distributive(l, s, t)

    def test_meet_modular_failure(self):
        l = fig3()
        s, t = sets(l, ["0", "b"], ["c", "d"])
        assert not st_meet_modular(l, s, t)
        assert st_join_modular(l, s, t)

    def test_join_modular_directions(self):
        l = fig3()
        assert st_join_modular(l, *sets(l, ["b", "c"], ["a", "d"]))
        assert not st_join_modular(l, *sets(l, ["a", "d"], ["b", "c"]))

    def test_empty_sets(self):
        l = m3()
        assert st_distributive(l, 0, l.all_mask)
        assert st_distributive(l, l.all_mask, 0)
        assert st_join_distributive(l, 0, l.mask("ab"))


def test_classical_laws():
    assert not is_modular(n5()) and not is_distributive(n5())
    assert is_modular(m3()) and not is_distributive(m3())
    for n in (1, 2, 5):
        assert is_distributive(chain(n))
    d = product(chain(2), chain(3))
    assert st_modular(d, d.all_mask, d.all_mask)


def test_element_sets_pentagon():
    l = n5()
    e = distributive_element_sets(l)
    v, u, w = (1 << l.index(x) for x in "vuw")
    assert e.m_distr & v and not e.j_distr & v
    assert e.j_distr & u and not e.m_distr & u
    assert e.m_distr & w and e.j_distr & w and not e.distr & w
    assert e.distr == l.mask(["0", "1"])


def test_element_sets_diamond():
    l = m3()
    e = distributive_element_sets(l)
    a = 1 << l.index("a")
    assert not e.m_distr & a and not e.j_distr & a


def test_element_sets_invariants(lattice_zoo):
    for l in lattice_zoo.values():
        if l.size > 10:
            continue
        e = distributive_element_sets(l)
        assert e.distr & ~(e.m_distr & e.j_distr) == 0
        assert e.distr >> l.bottom & 1 and e.distr >> l.top & 1
        if is_distributive(l):
            assert e.distr == e.m_distr == e.j_distr == l.all_mask


def test_triple_filter_examples():
    l = m3()
    a, b, c = (l.index(x) for x in "abc")
    assert triple_filter(l, a, b, c) is TripleFilterVerdict.MUST_CHECK
    assert triple_filter(l, a, b, l.top) is TripleFilterVerdict.COMPARABLE_T1T2
    assert triple_filter(l, l.top, a, b) is TripleFilterVerdict.S_ABOVE_BOTH
    assert triple_filter(l, l.bottom, a, b) is TripleFilterVerdict.S_BELOW_BOTH


def test_filter_soundness_on_zoo(lattice_zoo):
    for l in lattice_zoo.values():
        r = range(l.size)
        for a in r:
            for b in r:
                for c in r:
                    if triple_filter(l, a, b, c) is not TripleFilterVerdict.MUST_CHECK:
                        assert meet_distributes(l, a, b, c) and join_distributes(l, a, b, c)


def test_mccd_examples():
    l, _ = m_nn(3)
    b2, a3, a1, a2 = (l.index(x) for x in ("b2", "a3", "a1", "a2"))
    assert mccd_applies(l, b2, a3, a1)
    assert meet_distributes(l, b2, a3, a1) and join_distributes(l, b2, a3, a1)
    assert not mccd_applies(l, a1, a2, b2)
    assert not meet_distributes(l, a1, a2, b2)
    assert mccd_applies(l, a1, a1, a2)


def test_is_distributive_matches_st(lattice_zoo):
    for l in lattice_zoo.values():
        assert is_distributive(l) == st_distributive(l, l.all_mask, l.all_mask)
        assert is_modular(l) == st_modular(l, l.all_mask, l.all_mask)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32), st.data())
def test_st_distributive_matches_naive(seed, data):
    l = random_lattice(random.Random(seed))
    s = data.draw(st.integers(0, l.all_mask))
    t = data.draw(st.integers(0, l.all_mask))
    assert st_distributive(l, s, t) == naive_st(l, bits(s), bits(t))
    if st_distributive(l, s, t):
        assert st_modular(l, s, t)


class TestSupersolvable:
    def test_chain(self):
        c = chain(4)
        assert is_supersolvable_with(c, c.all_mask)

    def test_diamond_against_oracle(self):
        l = m3()
        delta = l.mask(["0", "a", "1"])
        assert is_supersolvable_with(l, delta) == supersolvable_oracle(l, bits(delta))
        assert supersolvable_oracle(l, bits(delta)) is True

    def test_mnn_against_oracle(self):
        l, _ = m_nn(3)
        delta = l.mask(["0", "a3", "b1", "1"])
        assert is_supersolvable_with(l, delta) == supersolvable_oracle(l, bits(delta))

    def test_pentagon_against_oracle(self):
        l = n5()
        for delta in (["0", "w", "1"], ["0", "v", "u", "1"]):
            m = l.mask(delta)
            assert is_supersolvable_with(l, m) == supersolvable_oracle(l, bits(m))

    def test_not_maximal(self):
        l = n5()
        with pytest.raises(NotMaximalChain):
            is_supersolvable_with(l, l.mask(["0", "u", "1"]))
        with pytest.raises(NotMaximalChain):
            is_supersolvable_with(l, l.mask(["u", "w"]))

    def test_chain_count(self):
        # M3: empty, 5 singletons, 0<x and x<1 for 3 atoms (6), 0<1, and 0<x<1 (3)
        assert sum(1 for _ in iter_chains(m3())) == 1 + 5 + 6 + 1 + 3


class TestTransport:
    def test_sublattice(self):
        l = n5()
        s, t = sets(l, ["0", "u", "v", "w"], ["0", "1", "w"])
        k, s1, t1 = pair_in_sublattice(l, l.mask(["0", "v", "w", "1"]), s, t)
        assert k.names(s1) == ["0", "v", "w"]
        assert k.names(t1) == ["0", "w", "1"]
        assert st_distributive(k, s1, t1)
        with pytest.raises(NotClosed):
            pair_in_sublattice(l, l.mask(["v", "w"]), s, t)

    def test_dual(self):
        l = n5()
        d, s, t = pair_in_dual(l, *sets(l, ["u", "v"], ["w", "0"]))
        assert st_distributive(d, s, t)

    def test_product(self):
        l = n5()
        c = chain(2)
        p, s, t = pair_in_product(l, *sets(l, ["u", "v"], ["w", "0"]), c, c.all_mask, c.all_mask)
        assert p.size == 10
        assert st_distributive(p, s, t)

    def test_hom(self):
        # collapse chain(4) onto chain(2): 0,1 -> 0 and 2,3 -> 1
        c4, c2 = chain(4), chain(2)
        k, s, t = pair_under_hom(c4, c2, [0, 0, 1, 1], c4.mask(["1", "2"]), c4.all_mask)
        assert s == t == c2.all_mask
        assert st_distributive(k, s, t)
        with pytest.raises(NotHomomorphism):
            pair_under_hom(c4, c2, [0, 0, 0, 0], c4.all_mask, c4.all_mask)
        with pytest.raises(NotHomomorphism):
            pair_under_hom(n5(), c2, [0, 1, 0, 1, 1], 0, 0)

    def test_requires_st_pair(self):
        l = m3()
        with pytest.raises(LatticeError):
            pair_in_dual(l, *sets(l, ["c"], ["a", "b"]))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.data())
def test_duality_transfer(seed, data):
    l = random_lattice(random.Random(seed), ground=4, picks=7)
    s = data.draw(st.integers(0, l.all_mask))
    t = data.draw(st.integers(0, l.all_mask))
    assert st_meet_distributive(l, s, t) == st_join_distributive(dual(l), s, t)
    assert st_meet_modular(l, s, t) == st_join_modular(dual(l), s, t)

"""Relative distributivity and modularity on finite lattices."""

from .constructors import MnnLayout, chain, fig3, linear_sum, m3, m_n, m_nn, make, n5, product
from .mnn_classify import PairType, classify_pair, expected_counts, verify_characterization
from .pair_enum import (
    MaximalityMode,
    MaximalPairReport,
    SubsetPair,
    brute_force_maximal_pairs,
    enumerate_maximal_pairs,
    max_s_for_t,
    s_lattice_top,
)
from .poset_core import (
    Lattice,
    dual,
    generated_sublattice,
    is_antichain_triple,
    is_chain,
    lattice_from_covers,
    restrict,
)
from .st_props import (
    st_distributive,
    st_join_distributive,
    st_join_modular,
    st_meet_distributive,
    st_meet_modular,
    st_modular,
)

__version__ = "0.1.0"

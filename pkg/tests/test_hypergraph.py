import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exactqaoa.errors import (
    DuplicateEdge,
    EdgeNotInHypergraph,
    FamilyTooLarge,
    InvalidEdge,
    NotAnEdge,
    NotASimpleGraph,
)
from exactqaoa.hypergraph import (
    WeightedHypergraph,
    coset_family,
    count_even_by_size,
    even_subhypergraph_basis,
    neighborhoods,
)

from helpers import brute_neighborhoods, complete_graph, exhaustive_family, parity_ok, rand_graph, rand_hypergraph


def path(n):
    return WeightedHypergraph.graph(n, [(i, i + 1) for i in range(n - 1)])


# construction


def test_edges_are_normalized_and_indexed():
    G = WeightedHypergraph.from_edges(4, [((2, 0), 1.5), ((), 2.0, 3.0), ((3,), -1.0)])
    assert G.edges == ((0, 2), (), (3,))
    assert G.phase_weights == (1.5, 3.0, -1.0)
    assert G.index([2, 0]) == 0 and G.index([]) == 1
    assert G.has_edge(()) and not G.has_edge((1,))


@pytest.mark.parametrize("items, exc", [
    ([((0, 0), 1.0)], InvalidEdge),
    ([((0, 5), 1.0)], InvalidEdge),
    ([((-1,), 1.0)], InvalidEdge),
    ([((0, 1), 1.0), ((1, 0), 2.0)], DuplicateEdge),
])
def test_bad_edges_rejected(items, exc):
    with pytest.raises(exc):
        WeightedHypergraph.from_edges(3, items)


def test_index_of_missing_edge():
    with pytest.raises(EdgeNotInHypergraph):
        path(3).index((0, 2))


# neighborhoods


def test_neighborhoods_triangle():
    nb = neighborhoods(complete_graph(3), 0, 1)
    assert nb.uv == {2} and nb.u_bbslash_v == set()
    assert (nb.d, nb.e, nb.f) == (1, 1, 1)


def test_neighborhoods_path():
    nb = neighborhoods(path(3), 0, 1)
    assert nb.uv == set() and nb.v_minus_u == {2}
    assert (nb.d, nb.e, nb.f) == (0, 1, 0)


def test_neighborhoods_errors():
    with pytest.raises(NotAnEdge):
        neighborhoods(path(3), 0, 2)
    H = WeightedHypergraph.from_edges(3, [((0, 1), 1.0), ((0, 1, 2), 1.0)])
    with pytest.raises(NotASimpleGraph):
        neighborhoods(H, 0, 1)


@pytest.mark.parametrize("seed", range(5))
def test_neighborhoods_match_set_builder(seed):
    rng = np.random.default_rng(seed)
    G = rand_graph(rng, 8, 0.5)
    for u, v in G.edges:
        for a, b in ((u, v), (v, u)):
            nb = neighborhoods(G, a, b)
            umv, ubb, common, vmu, vbb = brute_neighborhoods(G, a, b)
            assert (nb.u_minus_v, nb.u_bbslash_v, nb.uv, nb.v_minus_u, nb.v_bbslash_u) == (umv, ubb, common, vmu, vbb)
            # disjoint union and exclusions
            assert nb.u_minus_v == nb.u_bbslash_v | nb.uv and not (nb.u_bbslash_v & nb.uv)
            assert a not in nb.u_minus_v | nb.uv | nb.v_minus_u and b not in nb.u_minus_v
            assert nb.swapped().swapped() == nb


# even families


def test_basis_triangle():
    fam = even_subhypergraph_basis(complete_graph(3))
    assert fam.dimension == 1
    assert sorted(fam.members()) == [0, 0b111]


def test_basis_tree_with_and_without_empty_edge():
    tree = WeightedHypergraph.graph(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    fam = even_subhypergraph_basis(tree)
    assert fam.dimension == 0 and list(fam.members()) == [0]
    with_empty = WeightedHypergraph.from_edges(5, [((), 1.0)] + [(e, 1.0) for e in tree.edges])
    fam = even_subhypergraph_basis(with_empty)
    assert fam.dimension == 1 and sorted(fam.members()) == [0, 1]


def test_basis_small_hypergraph_matches_exhaustive_check():
    H = WeightedHypergraph.from_edges(3, [((0, 1, 2), 1.0), ((0, 1), 1.0), ((2,), 1.0)])
    fam = even_subhypergraph_basis(H)
    assert sorted(fam.members()) == exhaustive_family(H) == [0, 0b111]


def test_coset_examples():
    K3 = complete_graph(3)
    base = even_subhypergraph_basis(K3)
    fam = coset_family(base, (0, 1), K3)
    assert sorted(fam.members()) == sorted({0b001, 0b110})
    assert coset_family(base, (), K3) == base
    P = path(4)
    assert list(coset_family(even_subhypergraph_basis(P), (0, 1), P).members()) == [0b001]
    with pytest.raises(EdgeNotInHypergraph):
        coset_family(base, (0, 2, 1), K3)


def test_counts_examples():
    assert count_even_by_size(complete_graph(3)) == {0: 1, 3: 1}
    assert count_even_by_size(path(6)) == {0: 1}


def test_counts_k4_against_all_edge_subsets():
    K4 = complete_graph(4)
    ref = {}
    for s in range(1 << 6):
        if parity_ok(K4, s):
            k = bin(s).count("1")
            ref[k] = ref.get(k, 0) + 1
    assert ref == {0: 1, 3: 4, 4: 3}
    assert count_even_by_size(K4) == ref


def test_family_cap():
    K6 = complete_graph(6)  # cycle space dimension 15 - 6 + 1 = 10
    with pytest.raises(FamilyTooLarge) as info:
        count_even_by_size(K6, cap=9)
    assert info.value.dimension == 10
    assert sum(count_even_by_size(K6, cap=10).values()) == 1 << 10
    with pytest.raises(FamilyTooLarge):
        list(even_subhypergraph_basis(K6).members(cap=5))


def test_member_bits_agree_with_gray_walk():
    rng = np.random.default_rng(3)
    H = rand_hypergraph(rng, 5, 9)
    fam = coset_family(even_subhypergraph_basis(H), H.edges[0], H)
    rows = {sum(1 << i for i in range(H.m) if r[i]) for r in fam.member_bits()}
    assert rows == set(fam.members())


# properties


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 10), st.floats(0.0, 1.0), st.integers(0, 2**32 - 1))
def test_cycle_space_dimension_formula(n, prob, seed):
    rng = np.random.default_rng(seed)
    G = rand_graph(rng, n, prob)
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(G.edges)
    c = nx.number_connected_components(g)
    assert even_subhypergraph_basis(G).dimension == G.m - n + c


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_coset_members_have_odd_vertices_exactly_on_e(n, m, seed):
    rng = np.random.default_rng(seed)
    H = rand_hypergraph(rng, n, m)
    base = even_subhypergraph_basis(H)
    for e in H.edges:
        fam = coset_family(base, e, H)
        members = sorted(fam.members())
        assert members == exhaustive_family(H, odd=e)
        assert len(members) == base.size
        assert coset_family(fam, e, H).shift == base.shift == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 7), st.integers(0, 12), st.integers(0, 2**32 - 1))
def test_counts_match_exhaustive_enumeration(n, m, seed):
    rng = np.random.default_rng(seed)
    H = rand_hypergraph(rng, n, m)
    ref = {}
    for s in exhaustive_family(H):
        k = bin(s).count("1")
        ref[k] = ref.get(k, 0) + 1
    counts = count_even_by_size(H)
    assert counts == ref
    assert sum(counts.values()) == 1 << even_subhypergraph_basis(H).dimension


def test_empty_graph_is_legal():
    G = WeightedHypergraph.graph(3, [])
    assert even_subhypergraph_basis(G).dimension == 0
    assert count_even_by_size(G) == {0: 1}
    assert list(itertools.islice(even_subhypergraph_basis(G).members(), 3)) == [0]

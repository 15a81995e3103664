import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cayley_census import autiso
from cayley_census.graphs import Graph, complete_graph, cycle_graph, petersen_graph

from conftest import random_graph, relabel


@pytest.mark.parametrize("g,order", [
    (cycle_graph(5), 10), (cycle_graph(12), 24), (petersen_graph(), 120),
    (complete_graph(6), 720), (complete_graph(4), 24), (Graph.from_edges(5, []), 120),
])
def test_known_automorphism_groups(g, order):
    A = autiso.automorphism_group(g)
    assert A.order == order
    assert all(autiso.is_automorphism(g, p.array) for p in A.generators)


def test_1000_random_graphs_against_bruteforce():
    rng = np.random.default_rng(2024)
    nontrivial = 0
    for _ in range(1000):
        n = int(rng.integers(1, 11))
        g = random_graph(rng, n, float(rng.choice([0.2, 0.35, 0.5, 0.7])))
        order = autiso.automorphism_group(g).order
        assert order == autiso.automorphism_count_bruteforce(g), g.edges().tolist()
        nontrivial += order > 1
    assert nontrivial > 100


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.integers(0, 2**32 - 1))
def test_canonical_form_is_a_relabeling_invariant(n, seed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, n, 0.4)
    h = relabel(g, rng.permutation(n))
    cg, ch = autiso.canonical_form(g), autiso.canonical_form(h)
    assert cg.certificate_hash == ch.certificate_hash
    assert np.array_equal(cg.canonical_edge_list, ch.canonical_edge_list)
    phi = autiso.are_isomorphic(g, h)
    assert phi is not None and autiso._is_isomorphism(g, h, phi.array)


def test_non_isomorphic_graphs_separated():
    # two cospectral-looking 3-regular graphs on 6 vertices: prism vs K_{3,3}
    prism = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
    k33 = Graph.from_edges(6, [(a, b) for a in range(3) for b in range(3, 6)])
    assert autiso.are_isomorphic(prism, k33) is None
    assert autiso.canonical_form(prism).certificate_hash != autiso.canonical_form(k33).certificate_hash
    assert autiso.invariant_signature(prism).differences(autiso.invariant_signature(k33))


def test_colors_restrict_automorphisms():
    g = cycle_graph(6)
    colors = np.array([1, 0, 0, 0, 0, 0])
    assert autiso.automorphism_group(g, colors).order == 2


def test_invariants_of_petersen():
    sig = autiso.invariant_signature(petersen_graph())
    d = sig.as_dict()
    assert d["girth"] == 5
    assert d["cycle_counts"]["5"] == 12 and d["cycle_counts"]["6"] == 10
    assert d["degree_counts"] == {"3": 10}


def test_vertex_cap():
    with pytest.raises(autiso.VertexCapExceeded):
        autiso.automorphism_group(cycle_graph(30), cap=20)


def test_big_graph_relabeling_invariance(acceptance_graphs):
    # the full 200-relabeling run is acceptance criterion 11
    rng = np.random.default_rng(8)
    g = acceptance_graphs[0]
    base = autiso.canonical_form(g)
    for _ in range(5):
        h = relabel(g, rng.permutation(g.n))
        assert autiso.canonical_form(h).certificate_hash == base.certificate_hash

import numpy as np
import pytest

from cayley_census import arctrans, autiso
from cayley_census.graphs import (Graph, GraphError, GraphFormatError, GroupAction, cayley_graph,
                                  complete_graph, coset_action, coset_graph, coset_graph_bruteforce,
                                  cycle_graph, format_edge_list, is_connected, normalizes,
                                  parse_edge_list, petersen_graph, quotient_graph)
from cayley_census.group import PermutationGroup
from cayley_census.perm import DegreeMismatch, Permutation

from conftest import alternating, random_graph, symmetric


def _coset_instances(count, seed=5, max_vertices=None):
    """Random (G, K, g) with |G| <= 2000, g^2 in K and g outside N_G(K)."""
    rng = np.random.default_rng(seed)
    ambient = [symmetric(4), symmetric(5), alternating(5), alternating(6), symmetric(6),
               PermutationGroup([Permutation.from_cycles(7, (1, 2, 3, 4, 5, 6, 7)),
                                 Permutation.from_cycles(7, (2, 3, 5), (4, 7, 6))])]
    out = []
    while len(out) < count:
        G = ambient[int(rng.integers(len(ambient)))]
        x = G.random_element(rng)
        K = PermutationGroup([x], degree=G.degree) if not x.is_identity() else PermutationGroup([], degree=G.degree)
        if rng.random() < 0.3:
            K = G.point_stabilizer(int(rng.integers(G.degree)))
        if K.order() * 2 > G.order():
            continue
        if max_vertices is not None and G.order() // K.order() > max_vertices:
            continue
        for _ in range(200):
            g = G.random_element(rng)
            if K.contains(g * g) and not normalizes(K, g):
                out.append((G, K, g))
                break
    return out


def test_coset_graph_against_definition_50_instances():
    seen_orders = set()
    for G, K, g in _coset_instances(50):
        cg = coset_graph(G, K, g)
        assert cg.graph == coset_graph_bruteforce(G, K, g)
        assert cg.graph.n == G.order() // K.order()
        gen_order = PermutationGroup(list(K.generators) + [g], degree=G.degree).order()
        assert cg.connected == (gen_order == G.order()) == is_connected(cg.graph)
        seen_orders.add(G.order())
    assert len(seen_orders) >= 4


def test_coset_action_is_by_automorphisms():
    G, K, g = _coset_instances(1, seed=9)[0]
    cg = coset_graph(G, K, g)
    arctrans.check_automorphisms(cg.graph, cg.action)
    assert cg.action.as_group().is_transitive()


def test_coset_graph_preconditions():
    S4 = symmetric(4)
    K = S4.point_stabilizer(3)
    with pytest.raises(GraphError):
        coset_graph(S4, K, Permutation.from_cycles(4, (1, 2)))          # normalizes K
    with pytest.raises(GraphError):
        coset_graph(S4, K, Permutation.from_cycles(4, (1, 2, 3, 4)))    # square outside K
    with pytest.raises(DegreeMismatch):
        coset_graph(S4, K, Permutation.from_cycles(5, (1, 5)))


def test_coset_action_faithfulness():
    S5 = symmetric(5)
    sp, act, faithful = coset_action(S5, S5.point_stabilizer(0))
    assert sp.index == 5 and faithful
    A = alternating(5)
    sp, act, faithful = coset_action(S5, A)
    assert sp.index == 2 and not faithful


def test_cayley_graph_of_cyclic_group():
    c = Permutation.from_cycles(6, (1, 2, 3, 4, 5, 6))
    G = PermutationGroup([c])
    cay = cayley_graph(G, [c, c.inverse()])
    assert cay.connected and cay.graph.valency() == 2 and cay.graph.n == 6
    with pytest.raises(GraphError):
        cayley_graph(G, [c])


def test_edge_list_round_trip():
    g = petersen_graph()
    assert parse_edge_list(format_edge_list(g)) == g
    text = format_edge_list(g).replace("\n", "\r\n")
    assert parse_edge_list(text) == g


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("grph 3 1\n0 1\n", 1),
    ("graph 3 1\n0 3\n", 2),
    ("graph 3 2\n0 1\n1 x\n", 3),
    ("graph 3 1\n1 1\n", 2),
    ("graph 3 2\n0 1\n", 1),
    ("graph 3 1\n0 1 2\n", 2),
])
def test_malformed_edge_lists(text, line):
    with pytest.raises(GraphFormatError) as err:
        parse_edge_list(text, "g.edges")
    assert f"g.edges:{line}:" in str(err.value)


def test_quotient_and_connectivity():
    g = cycle_graph(8)
    q = quotient_graph(g, [[0, 1], [2, 3], [4, 5], [6, 7]])
    assert q == cycle_graph(4)
    assert is_connected(complete_graph(5))
    rng = np.random.default_rng(0)
    two = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4)])
    assert not is_connected(two)
    assert random_graph(rng, 6, 0.0).edge_count == 0


# --- arc-transitivity --------------------------------------------------------------

def _elements(act: GroupAction):
    return [p.array for p in act.as_group().elements()]


def test_petersen_is_3_arc_transitive():
    g = petersen_graph()
    aut = GroupAction(None, [p.array for p in autiso.automorphism_group(g).generators])
    assert arctrans.arc_profile(g, aut).orbit_counts == [1, 1, 1, 1]
    assert arctrans.s_transitivity(g, aut) == 3


@pytest.mark.parametrize("seed", range(12))
def test_arc_orbits_against_bruteforce(seed):
    rng = np.random.default_rng(seed)
    G, K, g = _coset_instances(1, seed=100 + seed, max_vertices=200)[0]
    cg = coset_graph(G, K, g)
    els = _elements(cg.action)
    for s in range(4):
        assert arctrans.arc_orbit_count(cg.graph, cg.action, s) == \
            arctrans.arc_orbit_count_bruteforce(cg.graph, els, s)
    # the full automorphism group of a sparse random graph
    h = random_graph(rng, 9, 0.3)
    gens = [p.array for p in autiso.automorphism_group(h).generators] or [np.arange(9)]
    act = GroupAction(None, gens)
    for s in range(4):
        assert arctrans.arc_orbit_count(h, act, s) == arctrans.arc_orbit_count_bruteforce(
            h, _elements(act), s)


def test_non_automorphism_rejected():
    g = cycle_graph(5)
    bad = GroupAction(None, [np.array([1, 0, 2, 3, 4])])
    with pytest.raises(arctrans.NotAnAutomorphism):
        arctrans.s_transitivity(g, bad)


def test_local_action_and_burnside():
    g = complete_graph(4)
    S4 = symmetric(4)
    act = GroupAction(S4, [p.array for p in S4.generators])
    loc = arctrans.local_action(g, act, 0)
    assert loc.order() == 6 and arctrans.is_two_transitive(loc)
    assert arctrans.burnside_orbit_count(PermutationGroup([Permutation.from_cycles(6, (1, 2, 3))])) == 4
    prof = arctrans.fixed_point_profile(alternating(4))
    assert prof == {1: [4], 2: [0], 3: [1]}

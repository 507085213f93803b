import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from betacuts.errors import DuplicateEdge, LoopEdge, NodeOutOfRange
from betacuts.hypergraph import build_hypergraph, enumerate_triples, is_beta_cycle, is_cycle_hypergraph

from conftest import U1, V1, V2, V3, V4, V5


def test_five_cycle_intersections():
    G = build_hypergraph(5, [{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}])
    assert G.edge_count == 5
    assert sorted(map(sorted, G.intersection_index)) == [[0], [1], [2], [3], [4]]


def test_example_intersections(example_graph):
    got = set(example_graph.intersection_index)
    assert got == {frozenset({V1, U1}), frozenset({V2}), frozenset({V3}), frozenset({V4}), frozenset({V5})}


def test_node_to_edges(example_graph):
    assert example_graph.node_to_edges[V1] == (0, 4)
    assert example_graph.node_to_edges[V3] == (1, 2)


@pytest.mark.parametrize("edges, err", [
    ([{0, 1}, {0, 1}], DuplicateEdge),
    ([{0}], LoopEdge),
    ([{0, 3}], NodeOutOfRange),
    ([{-1, 0}], NodeOutOfRange),
])
def test_rejections(edges, err):
    with pytest.raises(err):
        build_hypergraph(3, edges)


def test_triples_disjoint_edges_empty():
    assert len(enumerate_triples(build_hypergraph(4, [{0, 1}, {2, 3}]))) == 0


def test_example_has_ten_triples(example_graph):
    T = enumerate_triples(example_graph)
    assert len(T) == 10
    for i in range(5):
        assert ((i - 1) % 5, i, (i + 1) % 5) in T
        assert ((i + 1) % 5, i, (i - 1) % 5) in T


def test_triangle_triple_and_shared_node_exclusion():
    T = enumerate_triples(build_hypergraph(3, [{0, 1}, {1, 2}, {2, 0}]))
    assert (0, 1, 2) in T
    T = enumerate_triples(build_hypergraph(4, [{0, 1}, {1, 2}, {1, 3}]))
    assert (0, 1, 2) not in T
    assert len(T) == 0


def brute_triples(G):
    E = G.edge_sets
    return sorted((e, f, g) for e, f, g in itertools.permutations(range(G.edge_count), 3)
                  if E[e] & E[f] and E[f] & E[g] and not (E[e] & E[f] & E[g]))


edge_lists = st.integers(3, 7).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.frozensets(st.integers(0, n - 1), min_size=2, max_size=4), min_size=1, max_size=8,
                         unique=True)))


@settings(max_examples=150, deadline=None)
@given(edge_lists)
def test_triples_match_brute_force(data):
    n, edges = data
    G = build_hypergraph(n, edges)
    T = enumerate_triples(G)
    assert sorted(T.triples) == brute_triples(G)
    for e, f, g in T:
        E = G.edge_sets
        assert E[e] & E[f] and E[f] & E[g] and not (E[e] & E[f] & E[g])


@settings(max_examples=150, deadline=None)
@given(edge_lists)
def test_cycle_hypergraph_degree(data):
    n, edges = data
    G = build_hypergraph(n, edges)
    ok, order = is_cycle_hypergraph(G)
    if ok:
        assert all(len(G.neighbors(e)) <= 2 for e in range(G.edge_count))
        assert sorted(order) == list(range(G.edge_count))


def test_cycle_hypergraph_examples(example_graph):
    ok, order = is_cycle_hypergraph(example_graph)
    assert ok and order is not None
    k4 = build_hypergraph(4, [set(p) for p in itertools.combinations(range(4), 2)])
    assert is_cycle_hypergraph(k4) == (False, None)
    assert is_cycle_hypergraph(build_hypergraph(3, [{0, 1}, {1, 2}, {2, 0}]))[0]
    # three edges through one common node is not a cycle hypergraph
    assert not is_cycle_hypergraph(build_hypergraph(4, [{0, 1}, {0, 2}, {0, 3}]))[0]


def test_beta_cycle(example_graph):
    G5 = build_hypergraph(5, [{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}])
    assert is_beta_cycle(G5, [0, 0, 1, 1, 2, 2, 3, 3, 4, 4])
    assert not is_beta_cycle(G5, [0, 0, 1, 1, 0, 2, 3, 3, 4, 4])
    assert is_beta_cycle(example_graph, [V1, 0, V2, 1, V3, 2, V4, 3, V5, 4])

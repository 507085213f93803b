import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from betacuts.cuts import (MINUS, PLUS, Cut, LinearForm, SignedClosedWalk, all_flower_cuts, block, cg_form,
                           combined_form, cut_from_line, cycle_hypergraph_form, flower_cut, length_function,
                           simple_odd_beta_cycle_cut, standard_cuts)
from betacuts.errors import EvenWalk, InvalidBlockArgs, InvalidFlower, InvalidWalk, NotCycleHypergraph
from betacuts.hypergraph import build_hypergraph, is_cycle_hypergraph
from betacuts.instances import LabsParams, gen_cycle_hypergraph, gen_labs, linearize
from betacuts.lp import LpModel, solve
from betacuts.oracle import all_blocks, integer_points, random_odd_walks, validate_cut, with_random_signs

from conftest import U1, U4, V1, V3, V5


def example_expected():
    # 2(z_e1 - z_e2 - z_e3 + z_e4 + z_e5 - z_v1 - z_u1 + z_v3 - z_u4 - z_v5) + 7
    nodes = {V1: -2, U1: -2, V3: 2, U4: -2, V5: -2}
    edges = {0: 2, 1: -2, 2: -2, 3: 2, 4: 2}
    return LinearForm(nodes, edges, 7)


def test_standard_cut_counts():
    G = build_hypergraph(2, [{0, 1}])
    assert len(standard_cuts(G)) == 3
    inst = linearize(gen_labs(LabsParams(20, 5)))
    G = inst.hypergraph
    assert len(standard_cuts(G)) == sum(map(len, G.edges)) + 187
    ones = np.ones(G.variable_count)
    slacks = [c.slack(ones, G.node_count) for c in standard_cuts(G)]
    assert min(slacks) == 0
    assert all(s == 0 for c, s in zip(standard_cuts(G), slacks) if c.family == "standard-2")


def test_flower_examples():
    G = build_hypergraph(4, [{0, 1, 2}, {0, 1}])
    cut = flower_cut(G, 0, [1])
    # (z_f - 1) + (1 - z_e) + (1 - z_2)
    assert cut.form == LinearForm({2: -1}, {0: 1, 1: -1}, 1)
    assert cut.bound == 0 and cut.family == "flower-1"
    z = np.array([1, 1, 1, 0, 0, 1.0])
    assert cut.form.evaluate(z, 4) == -1

    G = build_hypergraph(6, [{0, 1, 2, 3}, {0, 4}, {1, 5}])
    cut = flower_cut(G, 0, [1, 2])
    assert set(cut.form.node_coeffs) == {2, 3}
    assert cut.family == "flower-2"

    G = build_hypergraph(5, [{0, 1, 2}, {0, 3}, {0, 4}])
    with pytest.raises(InvalidFlower):
        flower_cut(G, 0, [1, 2])
    with pytest.raises(InvalidFlower):
        flower_cut(G, 0, [0])
    G = build_hypergraph(5, [{0, 1, 2}, {3, 4}])
    with pytest.raises(InvalidFlower):
        flower_cut(G, 0, [1])


def test_block_examples():
    G = build_hypergraph(2, [{0, 1}])
    z = np.array([0.5, 0.0, 0.2])
    assert block("inc", G, 0, 0).evaluate(z, 2) == pytest.approx(0.3)

    G = build_hypergraph(3, [{0, 1, 2}])
    odd = block("odd", G, 0, {0}, {1})
    z = np.array([0, 1, 1, 0.0])
    assert odd.evaluate(z, 3) == 0
    assert z[0] * 1 + z[1] == 1

    G = build_hypergraph(5, [{0, 1, 2}, {0, 3}, {1, 4}])
    two = block("two", G, 0, 1, 2)
    # z_e = 0, z_f = 1, z_g = 0, z_2 = 1 (so x0 = x3 = 1, x1 = 0)
    z = np.array([1, 0, 1, 1, 0, 0, 1, 0.0])
    assert two.evaluate(z, 5) == 0
    assert z[5 + 1] + z[5 + 2] == 1


@pytest.mark.parametrize("kind, args", [
    ("inc", (0, 2)),
    ("odd", (0, {0}, {0, 1})),
    ("odd", (0, set(), {1})),
    ("one", (0, {0}, 1)),
    ("two", (0, 1, 1)),
    ("nope", ()),
])
def test_block_bad_args(kind, args):
    G = build_hypergraph(3, [{0, 1}, {0, 2}])
    with pytest.raises(InvalidBlockArgs):
        block(kind, G, *args)


def test_example_length_function(example_graph, example_walk):
    assert length_function(example_graph, example_walk) == example_expected()
    assert combined_form(example_graph, example_walk) == example_expected()
    cut = simple_odd_beta_cycle_cut(example_graph, example_walk)
    assert cut.bound == 1 and cut.form == example_expected()


def test_example_cg_form(example_graph, example_walk):
    cut = cg_form(example_graph, example_walk)
    half = example_expected()
    assert cut.form == LinearForm({v: c // 2 for v, c in half.node_coeffs.items()},
                                  {e: c // 2 for e, c in half.edge_coeffs.items()}, 0)
    assert cut.bound == -3
    assert 2 * cut.bound - 1 == -combined_form(example_graph, example_walk).constant


def test_example_cycle_form(example_graph, example_walk):
    assert cycle_hypergraph_form(example_graph, example_walk) == combined_form(example_graph, example_walk)


def test_triangle_all_plus(triangle):
    walk = SignedClosedWalk((0, 1, 2), (0, 1, 2), (PLUS, PLUS, PLUS))
    form = length_function(triangle, walk)
    expected = LinearForm()
    for i in range(3):
        e = walk.edges[i]
        expected = expected + block("inc", triangle, e, walk.nodes[i]) + block("inc", triangle, e, walk.nodes[(i + 1) % 3])
    assert form == expected == combined_form(triangle, walk)
    assert set(walk.classes()) == {(PLUS, PLUS, PLUS)}
    with pytest.raises(EvenWalk):
        simple_odd_beta_cycle_cut(triangle, walk)
    with pytest.raises(EvenWalk):
        cg_form(triangle, walk)


def test_invalid_walks(triangle, example_graph):
    with pytest.raises(InvalidWalk):
        length_function(triangle, SignedClosedWalk((0, 1), (2, 0), (PLUS, MINUS)))
    with pytest.raises(InvalidWalk):  # node not in consecutive intersection
        length_function(triangle, SignedClosedWalk((1, 1, 2), (2, 0, 1), (PLUS, PLUS, MINUS)))
    G = build_hypergraph(4, [{0, 1}, {0, 2}, {0, 3}])
    with pytest.raises(InvalidWalk):  # common node in three consecutive edges
        length_function(G, SignedClosedWalk((0, 0, 0), (0, 1, 2), (MINUS, PLUS, PLUS)))


def test_cycle_form_needs_cycle_support():
    G = build_hypergraph(5, [{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}])
    walk = SignedClosedWalk((0, 1, 2), (0, 1, 2), (MINUS, PLUS, PLUS))
    assert cycle_hypergraph_form(G, walk) == combined_form(G, walk)
    walk8 = SignedClosedWalk((0, 1, 2, 0, 3, 4), (0, 1, 2, 3, 4, 5), (MINUS, PLUS, PLUS, PLUS, PLUS, PLUS))
    with pytest.raises((NotCycleHypergraph, InvalidWalk)):
        cycle_hypergraph_form(G, walk8)


def test_three_edge_all_negative_cycle():
    G = gen_cycle_hypergraph(3, (3, 4), (1, 2), seed=5)
    ok, order = is_cycle_hypergraph(G)
    E = G.edge_sets
    nodes = [min(E[order[i - 1]] & E[order[i]]) for i in range(3)]
    walk = SignedClosedWalk(nodes, order, (MINUS, MINUS, MINUS))
    assert cycle_hypergraph_form(G, walk) == combined_form(G, walk) == length_function(G, walk)


walk_seeds = st.integers(0, 2**31 - 1)


@settings(max_examples=200, deadline=None)
@given(walk_seeds)
def test_walk_form_identities(seed):
    (G, walk), = random_odd_walks(1, seed=seed)
    lf = length_function(G, walk)
    comb = combined_form(G, walk)
    assert lf == comb
    assert comb.constant % 2 == 1
    assert all(c % 2 == 0 for c in list(comb.node_coeffs.values()) + list(comb.edge_coeffs.values()))
    # all-ones point: each negative edge gives 1
    ones = np.ones(G.variable_count)
    assert lf.evaluate(ones, G.node_count) == sum(s == MINUS for s in walk.signs)
    # rotation and reversal invariance
    for r in range(walk.k):
        assert length_function(G, walk.rotate(r)) == lf
    assert length_function(G, walk.reverse()) == lf
    # node choice matters only at (+,+) corners
    rng = np.random.default_rng(seed)
    i = int(rng.integers(walk.k))
    if walk.signs[i - 1] == MINUS or walk.signs[i] == MINUS:
        options = sorted(G.edge_sets[walk.edges[i - 1]] & G.edge_sets[walk.edges[i]])
        nodes = list(walk.nodes)
        nodes[i] = options[-1]
        assert length_function(G, SignedClosedWalk(nodes, walk.edges, walk.signs)) == lf
    cut = cg_form(G, walk)
    assert 2 * cut.bound - 1 == -comb.constant


@settings(max_examples=60, deadline=None)
@given(walk_seeds)
def test_beta_cycle_cuts_valid(seed):
    (G, walk), = random_odd_walks(1, seed=seed)
    if G.node_count > 12:
        return
    assert validate_cut(G, simple_odd_beta_cycle_cut(G, walk))
    assert validate_cut(G, cg_form(G, walk))


def test_cycle_form_random_cycle_hypergraphs():
    rng = np.random.default_rng(99)
    for trial in range(500):
        m = int(rng.integers(3, 7))
        G = gen_cycle_hypergraph(m, (2, 4), (1, 2), seed=trial)
        _, order = is_cycle_hypergraph(G)
        E = G.edge_sets
        nodes = [int(rng.choice(sorted(E[order[i - 1]] & E[order[i]]))) for i in range(m)]
        walk = with_random_signs(SignedClosedWalk(nodes, order, (PLUS,) * m), rng)
        assert cycle_hypergraph_form(G, walk) == combined_form(G, walk)


def small_graphs():
    yield build_hypergraph(4, [{0, 1, 2}, {1, 2, 3}, {0, 3}])
    yield build_hypergraph(5, [{0, 1, 2}, {2, 3}, {3, 4}, {4, 0}])
    yield build_hypergraph(3, [{0, 1}, {1, 2}, {2, 0}, {0, 1, 2}])
    yield gen_cycle_hypergraph(3, (2, 3), (1, 1), seed=2)


@pytest.mark.parametrize("G", list(small_graphs()))
def test_blocks_nonnegative_on_flower_relaxation(G):
    assert G.variable_count <= 10
    rows = standard_cuts(G) + all_flower_cuts(G)
    for kind, args, form in all_blocks(G):
        model = LpModel(G.node_count, G.edge_count, form, "min")
        for c in rows:
            model.add_cut(c)
        assert solve(model).objective >= -1e-9, (kind, args)


@pytest.mark.parametrize("G", list(small_graphs()))
def test_block_tightness_implications(G):
    for z in integer_points(G):
        for kind, args, form in all_blocks(G):
            if form.evaluate(z, G.node_count) != 0:
                continue
            x = z[:G.node_count]
            if kind == "inc":
                e, v = args
                assert z[v] == z[G.node_count + e]
            elif kind == "odd":
                _, U, W = args
                assert np.prod(x[list(U)]) + np.prod(x[list(W)]) == 1
            elif kind == "one":
                _, U, f = args
                assert z[G.node_count + f] + np.prod(x[list(U)]) == 1
            else:
                _, f, g = args
                assert z[G.node_count + f] + z[G.node_count + g] == 1


def test_cut_line_round_trip(example_graph, example_walk):
    cut = simple_odd_beta_cycle_cut(example_graph, example_walk)
    back = cut_from_line(cut.to_line())
    assert back.form == cut.form and back.bound == cut.bound and back.family == cut.family
    plain = Cut(LinearForm({0: 1}, {1: -1}, 0), 0, "standard-1", (1, 0))
    assert cut_from_line(plain.to_line()).form == plain.form


def test_all_flower_cuts_counts(triangle):
    # each of the three edges has two neighbors meeting it in distinct nodes
    cuts = all_flower_cuts(triangle)
    assert sum(c.family == "flower-1" for c in cuts) == 6
    assert sum(c.family == "flower-2" for c in cuts) == 3

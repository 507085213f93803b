import itertools
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from betacuts import separation as sep
from betacuts.cuts import (MINUS, PLUS, Cut, LinearForm, SignedClosedWalk, all_flower_cuts, length_function,
                           simple_odd_beta_cycle_cut, standard_cuts)
from betacuts.engine import run
from betacuts.errors import BadIndices, EvenWalk, NoRepetition, NotCycleHypergraph, TooLarge
from betacuts.hypergraph import build_hypergraph
from betacuts.instances import (LabsParams, gen_cycle_hypergraph, gen_labs, instance_from_profits, linearize,
                                parse_polynomial)
from betacuts.oracle import (brute_force_optimum, brute_force_separation, check_redundancy_decomposition,
                             flower_relaxation_point, integer_points, minimize_multilinear, random_hypergraph,
                             repeated_plus_walks, separation_fixtures, split_walk, validate_cut, validate_cuts,
                             verify_perfect_formulation)
from betacuts.separation import separate_twin_paths

GOLDEN = Path(__file__).resolve().parents[1] / "golden" / "optima.txt"


def test_single_monomial():
    inst = linearize(parse_polynomial("max\n3 x0 x1\n"))
    value, x = brute_force_optimum(inst)
    assert value == 3 and list(x) == [1, 1]


def test_all_zero_profits():
    G = build_hypergraph(4, [{0, 1}, {1, 2, 3}])
    assert brute_force_optimum(instance_from_profits(G, [0] * 4, [0, 0]))[0] == 0


def test_minimize_multilinear_matches_enumeration():
    rng = np.random.default_rng(4)
    for n in (1, 5, 12, 13):
        lin = rng.integers(-5, 6, n)
        terms = [(sorted(rng.choice(n, min(n, 3), replace=False).tolist()), int(rng.integers(-5, 6)))
                 for _ in range(6)]
        naive = min(sum(l * b for l, b in zip(lin, x)) + sum(c * all(x[v] for v in t) for t, c in terms)
                    for x in itertools.product((0, 1), repeat=n))
        assert minimize_multilinear(n, lin, terms)[0] == naive
    with pytest.raises(TooLarge):
        minimize_multilinear(27, [0] * 27, [])


def labs_energies(N, R):
    """Minimum energy over all sequences, vectorized over spin vectors."""
    codes = np.arange(1 << N, dtype=np.int64)
    spins = (2 * ((codes[:, None] >> np.arange(N)) & 1) - 1).astype(np.int16)
    total = np.zeros(len(codes), dtype=np.int64)
    for i in range(N - R + 1):
        for d in range(1, R):
            c = np.sum(spins[:, i:i + R - d] * spins[:, i + d:i + R], axis=1, dtype=np.int64)
            total += c * c
    return int(total.min())


def test_golden_optima():
    lines = [ln for ln in GOLDEN.read_text().splitlines() if ln and not ln.startswith("#")]
    golden = {name: int(rest.split()[1]) for name, rest in (ln.split(": ") for ln in lines)}
    assert set(golden) == {"labs-20-05", "labs-25-06"}
    for name, value in golden.items():
        _, N, R = name.split("-")
        params = LabsParams(int(N), int(R))
        assert brute_force_optimum(linearize(gen_labs(params)))[0] == value
    assert labs_energies(20, 5) == golden["labs-20-05"]


def test_integer_points():
    G = build_hypergraph(3, [{0, 1}, {0, 1, 2}])
    pts = list(integer_points(G))
    assert len(pts) == 8
    for z in pts:
        assert z[3] == z[0] * z[1] and z[4] == z[0] * z[1] * z[2]


def test_validate_cut_examples(example_graph, example_walk):
    cut = simple_odd_beta_cycle_cut(example_graph, example_walk)
    assert validate_cut(example_graph, cut)
    flipped = Cut(cut.form, 8, cut.family)
    assert not validate_cut(example_graph, flipped)
    values = {cut.form.evaluate(z, example_graph.node_count) for z in integer_points(example_graph)}
    assert 7 in values and min(values) >= 1
    assert all(validate_cut(example_graph, c) for c in standard_cuts(example_graph))
    big = build_hypergraph(30, [set(range(15)), set(range(15, 30))])
    wide = Cut(LinearForm({v: 1 for v in range(30)}), 0, "standard-1")
    with pytest.raises(TooLarge):
        validate_cut(big, wide)


def test_brute_force_separation_at_integer_points(example_graph):
    for z in list(integer_points(example_graph))[::9]:
        walk, slack = brute_force_separation(example_graph, z)
        assert slack >= 0 and walk.is_odd


def test_brute_force_separation_fractional_triangle():
    G = build_hypergraph(3, [{0, 1}, {1, 2}, {2, 0}])
    z = np.array([0.5, 0.5, 0.5, 0, 0, 0])
    walk, slack = brute_force_separation(G, z)
    assert slack == pytest.approx(-1.0)
    assert length_function(G, walk).evaluate(z, 3) == pytest.approx(0.0)
    paths = sep.shortest_twin_paths(sep.build_aux_graph(G, None, z))
    assert min(p.total_length for p in paths) == pytest.approx(slack + 1)


def test_brute_force_separation_no_walks():
    G = build_hypergraph(4, [{0, 1}, {2, 3}])
    assert brute_force_separation(G, np.full(6, 0.5)) is None
    G = build_hypergraph(3, [{0, 1}, {1, 2}])
    assert brute_force_separation(G, np.full(5, 0.5)) is None


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_twin_paths_never_longer_than_walks(seed):
    (G, z), = separation_fixtures(1, seed=seed)
    best = brute_force_separation(G, z)
    paths = sep.shortest_twin_paths(sep.build_aux_graph(G, None, z), np.inf)
    if best is None:
        return
    dmin = min(p.total_length for p in paths)
    assert dmin <= best[1] + 1 + 1e-9


def two_loops():
    # two 4-edge loops through the edge {0,1,2}
    edges = [{0, 1, 2}, {1, 3}, {3, 4}, {4, 2}, {0, 5}, {5, 6}, {6, 2}]
    G = build_hypergraph(7, edges)
    nodes = (2, 1, 3, 4, 2, 0, 5, 6)
    return G, nodes, (0, 1, 2, 3, 0, 4, 5, 6)


def test_eight_edge_decomposition():
    G, nodes, edges = two_loops()
    count = 0
    for rest in itertools.product((PLUS, MINUS), repeat=6):
        signs = (PLUS,) + rest[:3] + (PLUS,) + rest[3:]
        walk = SignedClosedWalk(nodes, edges, signs)
        if not walk.is_odd:
            continue
        d = check_redundancy_decomposition(G, walk, 0, 4)
        assert d.holds and d.odd_part.is_odd and not d.even_part.is_odd
        assert length_function(G, walk) == length_function(G, d.odd_part) + length_function(G, d.even_part)
        assert check_redundancy_decomposition(G, walk).holds
        count += 1
    assert count == 32


def test_decomposition_errors(example_graph, example_walk):
    with pytest.raises(NoRepetition):
        check_redundancy_decomposition(example_graph, example_walk)
    G, nodes, edges = two_loops()
    odd = SignedClosedWalk(nodes, edges, (PLUS, MINUS, PLUS, PLUS, PLUS, PLUS, PLUS, PLUS))
    with pytest.raises(NoRepetition):
        check_redundancy_decomposition(G, odd, 0, 1)
    with pytest.raises(BadIndices):
        check_redundancy_decomposition(G, odd, 0, 0)
    with pytest.raises(BadIndices):
        check_redundancy_decomposition(G, odd, 0, 9)
    with pytest.raises(EvenWalk):
        check_redundancy_decomposition(G, SignedClosedWalk(nodes, edges, (PLUS,) * 8))
    c1, c2 = split_walk(odd, 0, 4)
    assert c1.edges == (0, 1, 2, 3) and c2.edges == (0, 4, 5, 6)


def test_repeated_plus_fixtures():
    for G, walk, i, j in repeated_plus_walks(30, seed=3):
        assert walk.edges[i] == walk.edges[j] and walk.signs[i] == PLUS == walk.signs[j]
        assert check_redundancy_decomposition(G, walk, i, j).holds


def test_perfect_formulation_example(example_graph):
    assert verify_perfect_formulation(example_graph, trials=50)


def test_perfect_formulation_odd_cycle_graph():
    G = build_hypergraph(5, [{i, (i + 1) % 5} for i in range(5)])
    assert verify_perfect_formulation(G, trials=50, seed=1)


def test_perfect_formulation_guards():
    with pytest.raises(NotCycleHypergraph):
        verify_perfect_formulation(build_hypergraph(3, [{0, 1}, {1, 2}]))
    big = gen_cycle_hypergraph(8, (4, 4), (1, 1), seed=0)
    with pytest.raises(TooLarge):
        verify_perfect_formulation(big)


def test_sandwich_on_cycle_hypergraph():
    G = gen_cycle_hypergraph(4, (2, 4), (1, 2), seed=11)
    rng = np.random.default_rng(11)
    inst = instance_from_profits(G, rng.integers(-9, 10, G.node_count), rng.integers(-9, 10, G.edge_count))
    best, _ = brute_force_optimum(inst)
    bounds = [p.bound for p in run(inst).phases]
    assert bounds[0] >= bounds[1] >= bounds[2] >= best - 1e-9
    assert bounds[2] == pytest.approx(best, abs=1e-6)


@pytest.mark.parametrize("seed", range(5))
def test_validate_cuts_matches_single(seed):
    rng = np.random.default_rng(seed)
    G = random_hypergraph(rng, 6, 9)
    z = flower_relaxation_point(G, rng.random(G.variable_count))
    cuts = standard_cuts(G) + all_flower_cuts(G)
    cuts += [t.cut for t in separate_twin_paths(G, z, check=False)]
    # a cut that is violated by the all-zero point
    cuts.append(Cut(LinearForm({0: 1}, {}, 0), 1, "bogus"))
    assert validate_cuts(G, cuts) == [validate_cut(G, c) for c in cuts]
    assert validate_cuts(G, cuts)[-1] is False

import json
import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from betacuts.engine import (BoundReport, PhaseConfig, bound_after, build_model, compute_gap, normalize_phases,
                             reference_value, run)
from betacuts.errors import PhaseOrderError, TooLarge, ZeroReference
from betacuts.hypergraph import build_hypergraph
from betacuts.instances import LabsParams, gen_labs, instance_from_profits, linearize
from betacuts.oracle import brute_force_optimum, random_hypergraph, validate_cut


def single_edge(sense="max"):
    G = build_hypergraph(3, [{0, 1, 2}])
    return instance_from_profits(G, [-1, -1, -1], [5], constant=2, sense=sense, name="one-edge")


def test_single_edge_terminates_after_standard():
    inst = single_edge()
    report = run(inst, reference="auto")
    assert [p.name for p in report.phases] == ["standard", "flower", "beta-cycle"]
    assert all(p.cuts_added == 0 for p in report.phases)
    best, _ = brute_force_optimum(inst)
    assert best == 4
    assert all(p.bound == pytest.approx(best) for p in report.phases)
    assert report.gaps(table=False) == [pytest.approx(0)] * 3
    assert report.reference_source == "brute-force"


def test_compute_gap_examples():
    assert compute_gap(5, 5) == 0
    assert compute_gap(90, 100, "min") == pytest.approx(10.0)
    assert compute_gap(-110, -100, "max") == pytest.approx(10.0)
    with pytest.raises(ZeroReference):
        compute_gap(1, 0)
    with pytest.raises(ValueError):
        compute_gap(1, 2, "minimize")


@pytest.mark.parametrize("phases", [
    "",
    "standard,standard",
    "standard,standard-lazy",
    "flower,standard",
    "standard,beta-cycle",
    "standard,flower-1,beta-cycle",
    "standard,flower-2,flower-1",
    "standard,beta-cycle,flower",
])
def test_phase_order_errors(phases):
    with pytest.raises(PhaseOrderError):
        PhaseConfig(phases=phases)


def test_phase_names():
    assert normalize_phases("standard, flower1,flower2 ,beta") == ("standard", "flower-1", "flower-2", "beta-cycle")
    assert PhaseConfig(phases="standard-lazy,flower,beta-cycle").lazy
    assert not PhaseConfig().lazy
    with pytest.raises(ValueError):
        normalize_phases("standard,odd-cycle")
    with pytest.raises(ValueError):
        PhaseConfig(max_rounds=0)


def test_reference_value():
    inst = single_edge()
    assert reference_value(inst) == (None, "none")
    assert reference_value(inst, 3) == (3.0, "user")
    assert reference_value(inst, "7.5") == (7.5, "user")
    big = linearize(gen_labs(LabsParams(30, 4)))
    with pytest.raises(TooLarge):
        reference_value(big, "auto")


def test_lazy_model_drops_upper_rows():
    inst = linearize(gen_labs(LabsParams(20, 5)))
    full, lazy = build_model(inst), build_model(inst, lazy=True)
    assert full.row_count - lazy.row_count == sum(len(e) for e in inst.hypergraph.edges)


def labs_small():
    return linearize(gen_labs(LabsParams(12, 4)), "labs-12-04")


def test_lazy_and_eager_agree():
    inst = labs_small()
    eager = run(inst, PhaseConfig(phases="standard,flower-1,flower-2,beta-cycle"))
    lazy = run(inst, PhaseConfig(phases="standard-lazy,flower-1,flower-2,beta-cycle"))
    for a, b in zip(eager.phases, lazy.phases):
        assert a.bound == pytest.approx(b.bound, abs=1e-6)
    assert lazy.phases[0].cuts_added > 0


def test_bounds_improve_and_cuts_valid():
    inst = labs_small()
    best, _ = brute_force_optimum(inst)
    report = run(inst, reference=best, keep_cuts=True)
    bounds = [p.bound for p in report.phases]
    assert bounds == sorted(bounds)
    assert bounds[-1] <= best + 1e-6
    assert all(validate_cut(inst.hypergraph, c) for c in report.cuts)
    assert len(report.cuts) == sum(p.cuts_added for p in report.phases)
    assert report.phase("flower").families


def test_report_formats():
    report = run(labs_small(), reference="auto")
    text = report.to_text(timings=False)
    assert "seconds" not in text
    keys = dict(line.split(": ", 1) for line in text.splitlines())
    assert keys["instance"] == "labs-12-04" and keys["sense"] == "min"
    for p in report.phases:
        assert float(keys[f"phase.{p.name}.bound"]) == pytest.approx(p.bound)
        assert keys[f"gap.{p.name}"] == f"{p.table_gap:.2f}"
    assert "phase.standard.seconds" in report.to_text()
    rows = json.loads(report.to_json(timings=False))
    assert [r["name"] for r in rows] == ["standard", "flower", "beta-cycle"]
    assert all("seconds" not in r and r["reference_source"] == "brute-force" for r in rows)
    assert isinstance(report, BoundReport) and report.phase("beta-cycle").rounds >= 0
    with pytest.raises(KeyError):
        report.phase("flower-1")


def test_table_gap_drops_constant():
    report = run(labs_small(), reference="auto")
    c, r = report.constant, report.reference
    for p in report.phases:
        assert p.gap_percent == pytest.approx(compute_gap(p.bound, r))
        assert p.table_gap == pytest.approx(abs(p.bound - r) / abs(r - c))


def test_round_cap_reported(caplog):
    inst = labs_small()
    with caplog.at_level(logging.WARNING, logger="betacuts.engine"):
        report = run(inst, PhaseConfig(max_rounds=1, cuts_per_round=1))
    assert report.phase("flower").capped
    assert report.phase("flower").rounds == 1
    assert "round cap" in caplog.text
    # a capped phase still reports a valid bound below the full run's
    assert report.phases[-1].bound <= run(inst).phases[-1].bound + 1e-6


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_random_instances_sandwich(seed):
    rng = np.random.default_rng(seed)
    G = random_hypergraph(rng, max_edges=6, max_nodes=10)
    inst = instance_from_profits(G, rng.integers(-5, 6, G.node_count), rng.integers(-5, 6, G.edge_count))
    best, _ = brute_force_optimum(inst)
    report = run(inst, keep_cuts=True)
    bounds = [p.bound for p in report.phases]
    assert all(b >= best - 1e-6 for b in bounds)
    assert all(x >= y - 1e-9 for x, y in zip(bounds, bounds[1:]))
    assert all(validate_cut(G, c) for c in report.cuts)
    assert bound_after(inst) == pytest.approx(bounds[-1])

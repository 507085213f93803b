"""Phase-ordered cutting-plane loop with bound and gap reporting."""
from __future__ import annotations

import json
import logging
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import separation as sep
from .cuts import Cut, LinearForm, standard_cuts
from .errors import NumericalFailure, PhaseOrderError, TooLarge, ZeroReference
from .instances import Instance
from .lp import LpModel, solve

log = logging.getLogger(__name__)

PHASE_NAMES = ("standard", "standard-lazy", "flower-1", "flower-2", "flower", "beta-cycle")
ALIASES = {"betacycle": "beta-cycle", "beta": "beta-cycle", "lazy": "standard-lazy",
           "flower1": "flower-1", "flower2": "flower-2"}
# separator levels run by each phase, cumulatively
_LEVEL = {"standard": 0, "standard-lazy": 0, "flower-1": 1, "flower-2": 2, "flower": 2, "beta-cycle": 3}


def normalize_phases(phases) -> tuple[str, ...]:
    if isinstance(phases, str):
        phases = [p for p in phases.split(",") if p.strip()]
    out = []
    for p in phases:
        p = ALIASES.get(p.strip().lower(), p.strip().lower())
        if p not in PHASE_NAMES:
            raise ValueError(f"unknown phase {p!r}; expected one of {', '.join(PHASE_NAMES)}")
        out.append(p)
    return tuple(out)


@dataclass(frozen=True)
class PhaseConfig:
    """Which phases to run, in order, and the loop limits.

    ``standard`` solves the model with every standard row present. Starting
    with ``standard-lazy`` instead leaves the ``z_e <= z_v`` rows out and
    separates them. ``flower`` covers one- and two-neighbor flowers in one
    phase; ``flower-1``/``flower-2`` split it. ``beta-cycle`` needs two-neighbor
    flowers in an earlier phase, since its separator only accepts points of
    the flower relaxation.
    """

    phases: tuple = ("standard", "flower", "beta-cycle")
    max_rounds: int = 1000
    cuts_per_round: int = 200
    violation_tol: float = sep.VIOLATION_TOL
    backend: str = "highs"

    def __post_init__(self):
        phases = normalize_phases(self.phases)
        object.__setattr__(self, "phases", phases)
        if not phases:
            raise PhaseOrderError("no phases configured")
        if len(set(phases)) != len(phases):
            raise PhaseOrderError("a phase is listed twice")
        starts = [p for p in phases if p in ("standard", "standard-lazy")]
        if len(starts) > 1:
            raise PhaseOrderError("choose either standard or standard-lazy, not both")
        if starts and phases[0] != starts[0]:
            raise PhaseOrderError(f"{starts[0]} must come first")
        levels = [_LEVEL[p] for p in phases]
        if levels != sorted(levels):
            raise PhaseOrderError("phases must be ordered standard, flower-1, flower-2, beta-cycle")
        if "beta-cycle" in phases:
            earlier = phases[:phases.index("beta-cycle")]
            if "flower" not in earlier and not {"flower-1", "flower-2"} <= set(earlier):
                raise PhaseOrderError("beta-cycle requires one- and two-neighbor flower phases before it")
        if self.cuts_per_round < 1 or self.max_rounds < 1:
            raise ValueError("cuts_per_round and max_rounds must be positive")

    @property
    def lazy(self) -> bool:
        return "standard-lazy" in self.phases


@dataclass
class PhaseResult:
    name: str
    bound: float
    rounds: int
    cuts_added: int
    seconds: float
    capped: bool = False
    gap_percent: float | None = None
    table_gap: float | None = None
    families: dict = field(default_factory=dict)


@dataclass
class BoundReport:
    """Per-phase bounds; gaps are filled in when a reference value is known.

    ``gap_percent`` compares full objective values. ``table_gap``
    drops the polynomial's constant from both sides first, which is the
    normalization the published LABS figures follow.
    """

    instance: str
    sense: str
    constant: float
    phases: list[PhaseResult]
    reference: float | None = None
    reference_source: str = "none"
    lp_rows: int = 0
    cuts: list[Cut] = field(default_factory=list, repr=False)
    point: np.ndarray | None = field(default=None, repr=False)
    model: LpModel | None = field(default=None, repr=False)

    def phase(self, name: str) -> PhaseResult:
        for p in self.phases:
            if p.name == name:
                return p
        raise KeyError(name)

    def set_reference(self, value: float, source: str = "user"):
        """Attach a reference value found after the run and fill in the gaps."""
        self.reference, self.reference_source = float(value), source
        _fill_gaps(self)

    def gaps(self, table: bool = True) -> list[float | None]:
        return [p.table_gap if table else p.gap_percent for p in self.phases]

    def to_text(self, timings: bool = True) -> str:
        lines = [f"instance: {self.instance}", f"sense: {self.sense}", f"constant: {_fmt(self.constant)}",
                 f"reference: {_fmt(self.reference)}", f"reference_source: {self.reference_source}",
                 f"lp_rows: {self.lp_rows}"]
        for p in self.phases:
            pre = f"phase.{p.name}"
            lines += [f"{pre}.bound: {_fmt(p.bound)}", f"{pre}.rounds: {p.rounds}",
                      f"{pre}.cuts_added: {p.cuts_added}", f"{pre}.capped: {str(p.capped).lower()}"]
            if timings:
                lines.append(f"{pre}.seconds: {p.seconds:.3f}")
            for fam, c in sorted(p.families.items()):
                lines.append(f"{pre}.cuts.{fam}: {c}")
        for p in self.phases:
            if p.table_gap is not None:
                lines.append(f"gap.{p.name}: {p.table_gap:.2f}")
        return "\n".join(lines) + "\n"

    def to_json(self, timings: bool = True) -> str:
        rows = []
        for p in self.phases:
            d = asdict(p)
            if not timings:
                d.pop("seconds")
            d.update(instance=self.instance, sense=self.sense, reference=self.reference,
                     reference_source=self.reference_source)
            rows.append(d)
        return json.dumps(rows, indent=2, sort_keys=True) + "\n"


def _fmt(v) -> str:
    if v is None:
        return "none"
    v = float(v)
    return str(int(v)) if v.is_integer() else repr(v)


def compute_gap(bound: float, reference: float, sense: str = "min") -> float:
    """Percent distance ``100 |bound - reference| / |reference|``.

    ``sense`` is accepted for symmetry with the report; the absolute value makes
    the formula sense-independent.
    """
    if sense not in ("min", "max"):
        raise ValueError(f"unknown sense {sense!r}")
    if reference == 0:
        raise ZeroReference("gap is undefined for a zero reference value")
    return 100.0 * abs(bound - reference) / abs(reference)


def reference_value(instance: Instance, reference=None) -> tuple[float | None, str]:
    """Resolve ``reference``: a number, ``"auto"`` (brute force up to the oracle's limit) or ``None``."""
    if reference is None:
        return None, "none"
    if isinstance(reference, str):
        if reference != "auto":
            return float(reference), "user"
        from .oracle import MAX_BRUTE_FORCE_NODES, brute_force_optimum
        if instance.hypergraph.node_count > MAX_BRUTE_FORCE_NODES:
            raise TooLarge(f"--reference auto needs at most {MAX_BRUTE_FORCE_NODES} variables; pass a value")
        value, _ = brute_force_optimum(instance)
        return float(value), "brute-force"
    return float(reference), "user"


def build_model(instance: Instance, lazy: bool = False) -> LpModel:
    G = instance.hypergraph
    objective = LinearForm(dict(enumerate(instance.node_profit)), dict(enumerate(instance.edge_profit)),
                           instance.constant)
    model = LpModel(G.node_count, G.edge_count, objective, instance.sense)
    for cut in standard_cuts(G):
        if lazy and cut.family == "standard-1":
            continue
        model.add_cut(cut, f"{cut.family}_{len(model.rhs)}")
    return model


def _separate(G, x, level: int, lazy: bool, cfg: PhaseConfig) -> list[Cut]:
    """Cuts of the cheapest violated family up to ``level`` (the beta separator runs last)."""
    tol, cap = cfg.violation_tol, cfg.cuts_per_round
    cuts = sep.separate_standard(G, x, tol, cap) if lazy else []
    if cuts:
        return cuts
    if level >= 1:
        cuts = sep.separate_flowers(G, x, 2 if level >= 2 else 1, tol, cap)
        if cuts:
            return cuts
    if level >= 3:
        # no standard or flower cut is violated here, so x is in the flower relaxation
        return [t.cut for t in sep.separate_twin_paths(G, x, tol, check=False, limit=cap)]
    return []


def run(instance: Instance, config: PhaseConfig | None = None, reference=None,
        keep_cuts: bool = False) -> BoundReport:
    """Run the configured phases and report the bound reached by each."""
    cfg = config or PhaseConfig()
    G = instance.hypergraph
    ref, ref_source = reference_value(instance, reference)
    model = build_model(instance, cfg.lazy)
    results: list[PhaseResult] = []
    kept: list[Cut] = []
    sol = None
    for name in cfg.phases:
        t0 = time.perf_counter()
        level = _LEVEL[name]
        rounds = added = 0
        families: dict[str, int] = {}
        capped = False
        while True:
            sol = solve(model, cfg.backend)
            if not sol.optimal:
                raise NumericalFailure(f"LP is {sol.status} in phase {name}")
            if name == "standard":
                break
            cuts = _separate(G, sol.x, level, cfg.lazy, cfg)
            if not cuts:
                break
            if rounds >= cfg.max_rounds:
                capped = True
                log.warning("phase %s stopped at the round cap of %d with violated cuts left", name, cfg.max_rounds)
                break
            for cut in cuts:
                model.add_cut(cut, f"{cut.family}_{len(model.rhs)}")
                families[cut.family] = families.get(cut.family, 0) + 1
            if keep_cuts:
                kept.extend(cuts)
            added += len(cuts)
            rounds += 1
        results.append(PhaseResult(name, float(sol.objective), rounds, added, time.perf_counter() - t0,
                                   capped, families=families))
        log.info("phase %s: bound %.6g after %d rounds, %d cuts", name, sol.objective, rounds, added)
    report = BoundReport(instance.name, instance.sense, float(instance.constant), results, ref, ref_source,
                         model.row_count, kept, sol.x, model)
    if ref is not None:
        _fill_gaps(report)
    return report


def _fill_gaps(report: BoundReport):
    c = report.constant
    for p in report.phases:
        try:
            p.gap_percent = compute_gap(p.bound, report.reference, report.sense)
        except ZeroReference:
            p.gap_percent = None
        try:
            p.table_gap = compute_gap(p.bound - c, report.reference - c, report.sense) / 100.0
        except ZeroReference:
            p.table_gap = None


def bound_after(instance: Instance, phases=("standard", "flower", "beta-cycle"), **kw) -> float:
    """Final bound of the last phase (convenience for tests and the oracle)."""
    return run(instance, PhaseConfig(phases=tuple(phases), **kw)).phases[-1].bound

"""Command-line entry point: ``betacuts <command> ...``.

Exit codes: 0 success, 1 usage or input error, 2 numerical or verification failure.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import BetaCutsError, LpError, TooLarge

log = logging.getLogger("betacuts")

THREADS_ENV = "BETACUTS_THREADS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers like 2,4, got {text!r}") from None
    return a, b


def _reference(text: str):
    if text == "auto":
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("reference must be 'auto' or a number") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="betacuts", description="Cutting planes for binary polynomial optimization.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--threads", type=int, default=None,
                   help=f"worker threads for parallel kernels (overrides ${THREADS_ENV})")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate-labs", help="write a LABS energy polynomial")
    g.add_argument("N", type=int)
    g.add_argument("R", type=int)
    g.add_argument("out")

    g = sub.add_parser("generate-image", help="write an image restoration polynomial")
    g.add_argument("width", type=int)
    g.add_argument("height", type=int)
    g.add_argument("base")
    g.add_argument("perturbation")
    g.add_argument("seed", type=int)
    g.add_argument("out")

    g = sub.add_parser("generate-cycle", help="write a random objective on a random cycle hypergraph")
    g.add_argument("m", type=int)
    g.add_argument("--edge-sizes", type=_pair, default=(2, 4))
    g.add_argument("--overlaps", type=_pair, default=(1, 2))
    g.add_argument("--profit-range", type=int, default=10)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("out")

    for name, text in (("bound", "run the cutting-plane phases and report bounds"),
                       ("export-lp", "run the phases and write the final LP")):
        g = sub.add_parser(name, help=text)
        g.add_argument("file")
        g.add_argument("--phases", default="standard,flower,beta-cycle")
        g.add_argument("--max-rounds", type=int, default=1000)
        g.add_argument("--cuts-per-round", type=int, default=200)
        g.add_argument("--backend", choices=("highs", "highs-scipy", "simplex"), default="highs")
        if name == "bound":
            g.add_argument("--reference", type=_reference, default=None)
            g.add_argument("--report-out", default=None, help="key-value report (default: standard output)")
            g.add_argument("--json-out", default=None, help="structured report, one object per phase")
            g.add_argument("--timings", action="store_true", help="include wall-clock times in reports")
        else:
            g.add_argument("out")

    g = sub.add_parser("separate", help="print cuts violated by a point")
    g.add_argument("file")
    g.add_argument("point_file", help="whitespace-separated values: node variables, then edge variables")
    g.add_argument("--tol", type=float, default=1e-6)

    g = sub.add_parser("verify", help="check cuts and bounds against brute force")
    g.add_argument("file")
    return p


def _load(path: str):
    from .instances import linearize, parse_polynomial
    text = Path(path).read_text(encoding="utf-8")
    return linearize(parse_polynomial(text), Path(path).stem)


def _write(path: str, text: str):
    Path(path).write_text(text, encoding="utf-8")


def _config(args):
    from .engine import PhaseConfig
    return PhaseConfig(phases=args.phases, max_rounds=args.max_rounds, cuts_per_round=args.cuts_per_round,
                       backend=args.backend)


def cmd_generate_labs(args):
    from .instances import LabsParams, gen_labs, write_polynomial
    _write(args.out, write_polynomial(gen_labs(LabsParams(args.N, args.R))))
    return 0


def cmd_generate_image(args):
    from .instances import ImageParams, gen_image, write_polynomial
    params = ImageParams(args.width, args.height, args.base, args.perturbation, args.seed)
    _write(args.out, write_polynomial(gen_image(params)))
    return 0


def cmd_generate_cycle(args):
    from .instances import gen_cycle_hypergraph, instance_from_profits, write_polynomial
    G = gen_cycle_hypergraph(args.m, args.edge_sizes, args.overlaps, seed=args.seed)
    rng = np.random.default_rng(args.seed)
    r = args.profit_range
    inst = instance_from_profits(G, rng.integers(-r, r + 1, G.node_count), rng.integers(-r, r + 1, G.edge_count))
    _write(args.out, write_polynomial(inst.to_polynomial()))
    return 0


def cmd_bound(args):
    from .engine import run
    report = run(_load(args.file), _config(args), args.reference)
    text = report.to_text(timings=args.timings)
    if args.report_out:
        _write(args.report_out, text)
    else:
        sys.stdout.write(text)
    if args.json_out:
        _write(args.json_out, report.to_json(timings=args.timings))
    if any(p.capped for p in report.phases):
        print("warning: a phase hit the round cap", file=sys.stderr)
    return 0


def cmd_export_lp(args):
    from .engine import run
    from .lp import export_lp
    report = run(_load(args.file), _config(args))
    _write(args.out, export_lp(report.model))
    return 0


def _read_point(path: str, size: int) -> np.ndarray:
    values = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0]
        values += [float(t) for t in line.split()]
    if len(values) != size:
        raise UsageError(f"point file has {len(values)} values, expected {size}")
    return np.array(values)


def cmd_separate(args):
    from . import separation as sep
    from .errors import PointNotInFlowerRelaxation
    inst = _load(args.file)
    G = inst.hypergraph
    z = _read_point(args.point_file, G.variable_count)
    cuts = sep.separate_standard(G, z, args.tol) + sep.separate_flowers(G, z, 2, args.tol)
    try:
        cuts += [t.cut for t in sep.separate_twin_paths(G, z, args.tol)]
    except PointNotInFlowerRelaxation as exc:
        print(f"beta-cycle separation skipped: {exc}", file=sys.stderr)
    for cut in cuts:
        print(f"{cut.violation(z, G.node_count):.9g}; {cut.to_line()}")
    return 0


def cmd_verify(args):
    from .engine import run
    from .oracle import MAX_EXHAUSTIVE_NODES, brute_force_optimum, validate_cut
    inst = _load(args.file)
    if inst.hypergraph.node_count > MAX_EXHAUSTIVE_NODES:
        raise TooLarge(f"verify enumerates all assignments; {inst.hypergraph.node_count} variables is too many")
    best, _ = brute_force_optimum(inst)
    report = run(inst, keep_cuts=True, reference=best)
    ok = True
    bad = sum(1 for c in report.cuts if not validate_cut(inst.hypergraph, c))
    print(f"optimum: {best}")
    print(f"cuts checked: {len(report.cuts)}, invalid: {bad}")
    ok &= bad == 0
    sign = 1 if inst.sense == "min" else -1
    prev = -np.inf
    for p in report.phases:
        within = sign * p.bound <= sign * best + 1e-6 * max(1.0, abs(best))
        monotone = sign * p.bound >= prev - 1e-6 * max(1.0, abs(p.bound))
        prev = sign * p.bound
        print(f"phase {p.name}: bound {p.bound:.9g}, {'ok' if within and monotone else 'FAIL'}")
        ok &= within and monotone
    print("verify: " + ("pass" if ok else "FAIL"))
    return 0 if ok else 2


COMMANDS = {"generate-labs": cmd_generate_labs, "generate-image": cmd_generate_image,
            "generate-cycle": cmd_generate_cycle, "bound": cmd_bound, "export-lp": cmd_export_lp,
            "separate": cmd_separate, "verify": cmd_verify}


def _set_threads(requested):
    value = requested if requested is not None else os.environ.get(THREADS_ENV)
    if value is None:
        return
    import numba
    n = int(value)
    if not 1 <= n <= numba.config.NUMBA_NUM_THREADS:
        raise UsageError(f"thread count must be between 1 and {numba.config.NUMBA_NUM_THREADS}")
    numba.set_num_threads(n)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr,
                            format="%(levelname)s %(name)s: %(message)s")
        _set_threads(args.threads)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"betacuts: error: {exc}", file=sys.stderr)
        return 1
    except (LpError, TooLarge) as exc:
        print(f"betacuts: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (BetaCutsError, OSError, ValueError) as exc:
        print(f"betacuts: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

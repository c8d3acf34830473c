"""Command-line front end.

    mininfer jaynes -c constraints.txt
    mininfer compare -c constraints.txt --format json
    mininfer sweep --scenario chsh --from 0 --to 2.8 --step 0.1 --format csv
    mininfer threshold --scenario chsh --which jaynes

Exit status: 0 success, 2 usage or parse error, 3 infeasible constraints,
4 solver failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from .constraints import check_feasible
from .exceptions import (
    BoundaryMeansError,
    ConsistencyError,
    InfeasibleError,
    MininferError,
    NoConvergenceError,
)
from .grammar import parse_constraints
from .jaynes import jaynes_solve
from .minent import compare, minent_solve
from .report import RUN_COLUMNS, fmt_float, run_record, run_row, run_text, to_csv, to_json
from .scenarios import B_MAX, PREDICATES, SCENARIOS, ScenarioRow, find_threshold, sweep_grid, sweep_points, verify_lemma

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_SOLVER = 0, 2, 3, 4
CLAMP = 1e-9


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser, needs_file: bool) -> None:
    if needs_file:
        p.add_argument("-c", "--constraints", required=True, metavar="FILE", help="constraint file")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--seed", type=int, default=None, help="random seed (default $MININFER_SEED or 0)")
    p.add_argument("-o", "--output", metavar="FILE", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mininfer", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jaynes", help="maximum-entropy state")
    _common(p, True)

    for name, text in (("minent", "minimum-entanglement state"), ("compare", "run both and classify")):
        p = sub.add_parser(name, help=text)
        _common(p, True)
        p.add_argument("--force-general", action="store_true", help="skip the Bell-simplex reduction")
        p.add_argument("--restarts", type=int, default=64, help="random restarts of the general search")

    p = sub.add_parser("sweep", help="tabulate a scenario over a parameter range")
    _common(p, False)
    p.add_argument("--scenario", choices=SCENARIOS, required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--step", type=float, required=True)

    p = sub.add_parser("threshold", help="locate where a state becomes inseparable")
    _common(p, False)
    p.add_argument("--scenario", choices=SCENARIOS, required=True)
    p.add_argument("--which", required=True,
                   choices=("jaynes", "minent") + PREDICATES)

    p = sub.add_parser("verify-lemma", help="Monte Carlo check of Bell pinching inequalities")
    _common(p, False)
    p.add_argument("--samples", type=int, default=10_000)
    return parser


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("MININFER_SEED")
    if env is None or env.strip() == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"MININFER_SEED must be an integer, got {env!r}") from None


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_constraints(text)


def _runs(fmt: str, runs: list) -> str:
    if fmt == "json":
        records = [run_record(r, v) for r, v in runs]
        return to_json(records[0] if len(records) == 1 else records)
    if fmt == "csv":
        return to_csv(RUN_COLUMNS, [run_row(r, v) for r, v in runs])
    return "\n".join(run_text(r, v) for r, v in runs)


def _cmd_jaynes(args) -> str:
    c = _load(args.constraints)
    try:
        result = jaynes_solve(c)
    except BoundaryMeansError as exc:
        if exc.result is None:
            raise
        print(f"warning: {exc}; reporting the limit state", file=sys.stderr)
        result = exc.result
    except NoConvergenceError:
        if not check_feasible(c, seed=_seed(args)):
            raise InfeasibleError("no state reproduces the given means") from None
        raise
    return _runs(args.format, [(result, None)])


def _method(args) -> str:
    return "general" if args.force_general else "auto"


def _cmd_minent(args) -> str:
    c = _load(args.constraints)
    result = minent_solve(c, method=_method(args), seed=_seed(args), n_restarts=args.restarts)
    return _runs(args.format, [(result, None)])


def _cmd_compare(args) -> str:
    c = _load(args.constraints)
    cmp = compare(c, method=_method(args), seed=_seed(args), n_restarts=args.restarts)
    if cmp.jaynes_boundary:
        print("warning: means lie on the boundary; the Jaynes column is the limit state", file=sys.stderr)
    return _runs(args.format, [(cmp.jaynes, cmp.verdict), (cmp.minent, cmp.verdict)])


def _cmd_sweep(args) -> str:
    grid = sweep_grid(args.start, args.stop, args.step)
    if args.scenario != "singlet":
        edge = B_MAX - CLAMP
        hits = (grid > edge) & (grid <= B_MAX + 1e-12)
        if hits.any():
            print(f"warning: b clamped to 2*sqrt(2) - {CLAMP:g} at {int(hits.sum())} grid point(s)", file=sys.stderr)
            grid[hits] = edge
    rows = sweep_points(args.scenario, grid)
    header = ScenarioRow.field_names()
    if args.format == "json":
        return to_json([dict(zip(header, r.as_tuple())) for r in rows])
    if args.format == "csv":
        return to_csv(header, [r.as_tuple() for r in rows])
    widths = [max(len(h), 12) for h in header]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    for r in rows:
        cells = []
        for v, w in zip(r.as_tuple(), widths):
            if isinstance(v, bool):
                s = "true" if v else "false"
            elif isinstance(v, float):
                s = f"{v:.8f}"
            else:
                s = "" if v is None else str(v)
            cells.append(s.rjust(w))
        lines.append("  ".join(cells))
    return "\n".join(lines) + "\n"


def _cmd_threshold(args) -> str:
    which = args.which if args.which in PREDICATES else f"{args.which}-inseparable"
    value = find_threshold(args.scenario, which)
    if args.format == "json":
        return to_json({"scenario": args.scenario, "which": which, "threshold": value})
    if args.format == "csv":
        return to_csv(["scenario", "which", "threshold"], [[args.scenario, which, value]])
    return f"{fmt_float(value)}\n"


def _cmd_verify(args) -> str:
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    v = verify_lemma(args.samples, _seed(args))
    fields = ["samples", "ef_violations", "entropy_violations", "er_violations", "max_ef_gap", "max_entropy_gap", "seed"]
    values = [getattr(v, f) for f in fields]
    if args.format == "json":
        return to_json(dict(zip(fields, values)))
    if args.format == "csv":
        return to_csv(fields, [values])
    lines = [f"{f}: {fmt_float(x) if isinstance(x, float) else x}" for f, x in zip(fields, values)]
    ok = v.ef_violations == 0 and v.entropy_violations == 0 and v.er_violations == 0
    lines.append("inequalities hold on every sample" if ok else "VIOLATIONS FOUND")
    return "\n".join(lines) + "\n"


COMMANDS = {
    "jaynes": _cmd_jaynes,
    "minent": _cmd_minent,
    "compare": _cmd_compare,
    "sweep": _cmd_sweep,
    "threshold": _cmd_threshold,
    "verify-lemma": _cmd_verify,
}


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        _emit(COMMANDS[args.command](args), args.output)
    except InfeasibleError as exc:
        print(f"error: infeasible constraints: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (NoConvergenceError, ConsistencyError) as exc:
        print(f"error: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except BoundaryMeansError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (UsageError, MininferError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


run = main

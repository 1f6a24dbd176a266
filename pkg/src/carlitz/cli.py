"""Command-line interface.

Subcommands cover split enumeration, greedy and exhaustive optima,
lattice membership queries, power sums, the two verification sweeps, and
Newton polygons. Output is a table by default; ``--format json`` emits
one canonical JSON record per line and ``--format csv`` delimited rows.

Exit codes: 0 success, 1 sweep found failing cells, 2 empty result set,
3 enumeration budget exceeded, 4 valuation did not stabilize before the
truncation cap, 5 bad arguments.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .compositions import (
    DEFAULT_SPLIT_BUDGET,
    bruteforce_optimum,
    enumerate_splits,
    greedy_relaxed_split,
    greedy_split,
)
from .errors import (
    BudgetExceededError,
    EmptySetError,
    MonotoneViolationError,
    StabilizationInconclusiveError,
)
from .lattice import admits_split, is_part_vector, scaled_inverse_coords, split_rank
from .numerals import FieldShape, fold_counts_int
from .powersums import (
    DEFAULT_ELEMENT_BUDGET,
    FqField,
    monic_power_sum,
    monic_power_sum_combinatorial,
    power_sum_below,
    predicted_degree,
)
from .report import (
    canonical_json,
    composition_record,
    dual_repr,
    polygon_csv,
    polygon_svg,
    report_cells_csv,
    report_record,
    save_polygon_figure,
    save_sweep_figure,
)
from .verify import verify_power_sum_grid, verify_split_optimality
from .zeta import (
    DEFAULT_TRUNCATION_CAP,
    PadicExponent,
    polygon_for_integer,
    polygon_for_padic,
)

OK = 0
FAILED = 1
EMPTY_SET = 2
BUDGET = 3
INCONCLUSIVE = 4
USAGE = 5

BUDGET_ENV = "CARLITZ_BUDGET"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports bad arguments through our exit code."""

    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    shape: FieldShape
    fmt: str
    budget: int
    element_budget: int
    jobs: int
    out_dir: Path | None


def _default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_SPLIT_BUDGET
    try:
        value = int(raw)
    except ValueError as err:
        raise UsageError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from err
    if value < 1:
        raise UsageError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


def _add_common(sub: argparse.ArgumentParser, fmt: bool = True) -> None:
    sub.add_argument("--p", type=int, required=True, help="characteristic (prime)")
    sub.add_argument("--s", type=int, default=1, help="extension degree (default 1)")
    if fmt:
        sub.add_argument(
            "--format",
            choices=("table", "json", "csv"),
            default="table",
            help="output format (default table)",
        )
    sub.add_argument(
        "--budget",
        type=int,
        default=None,
        help=f"candidate-tuple budget (default {DEFAULT_SPLIT_BUDGET},"
        f" override with {BUDGET_ENV})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="carlitz", description=__doc__.split("\n\n")[0])
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser(
        "enumerate", help="list every valid split of a numeral"
    )
    _add_common(sub)
    sub.add_argument("--m", type=int, required=True, help="number of parts")
    sub.add_argument("--n", type=int, required=True, help="the numeral to split")
    sub.add_argument(
        "--mode",
        choices=("strict", "relaxed"),
        default="strict",
        help="relaxed admits a zero last part (default strict)",
    )
    sub.set_defaults(func=cmd_enumerate)

    sub = subs.add_parser("greedy", help="greedy maximal split of a numeral")
    _add_common(sub)
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument(
        "--mode", choices=("strict", "relaxed"), default="strict"
    )
    sub.set_defaults(func=cmd_greedy)

    sub = subs.add_parser(
        "optimal", help="exhaustive maximal-weight split with uniqueness flag"
    )
    _add_common(sub)
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.set_defaults(func=cmd_optimal)

    sub = subs.add_parser(
        "membership", help="fold-count vector and lattice membership of a numeral"
    )
    _add_common(sub)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument(
        "--max-m", type=int, default=6, help="largest split size to test (default 6)"
    )
    sub.set_defaults(func=cmd_membership)

    sub = subs.add_parser(
        "power-sum", help="direct and combinatorial power sums at one (k, n)"
    )
    _add_common(sub)
    sub.add_argument("--k", type=int, required=True, help="polynomial degree")
    sub.add_argument("--n", type=int, required=True, help="exponent")
    sub.add_argument(
        "--element-budget",
        type=int,
        default=DEFAULT_ELEMENT_BUDGET,
        help="cap on q**k field elements in direct sums",
    )
    sub.set_defaults(func=cmd_power_sum)

    sub = subs.add_parser(
        "verify-theorem12",
        help="sweep: exhaustive optimum is unique and equals the greedy split",
    )
    _add_common(sub)
    sub.add_argument("--max-m", type=int, required=True)
    sub.add_argument("--max-n", type=int, required=True)
    sub.add_argument("--jobs", type=int, default=1, help="worker processes")
    sub.add_argument("--out-dir", type=Path, default=None, help="write report files here")
    sub.set_defaults(func=cmd_verify_theorem12)

    sub = subs.add_parser(
        "verify-theorem14",
        help="sweep: power sum identities, vanishing, and degrees",
    )
    _add_common(sub)
    sub.add_argument("--max-k", type=int, required=True)
    sub.add_argument("--max-n", type=int, required=True)
    sub.add_argument(
        "--element-budget", type=int, default=DEFAULT_ELEMENT_BUDGET
    )
    sub.add_argument("--jobs", type=int, default=1)
    sub.add_argument("--out-dir", type=Path, default=None)
    sub.set_defaults(func=cmd_verify_theorem14)

    sub = subs.add_parser(
        "newton-polygon", help="polygon points, slopes, and hull verdict"
    )
    _add_common(sub)
    sub.add_argument(
        "--y",
        type=str,
        required=True,
        help="exponent: a nonnegative integer, or PRE:PERIOD base-p digits"
        " (little endian), e.g. 1:1 for the all-ones stream",
    )
    sub.add_argument(
        "--max-m",
        type=int,
        default=None,
        help="polygon index cap (required reach for digit streams, default 5)",
    )
    sub.add_argument(
        "--t-cap",
        type=int,
        default=DEFAULT_TRUNCATION_CAP,
        help=f"truncation cap for stabilization (default {DEFAULT_TRUNCATION_CAP})",
    )
    sub.add_argument(
        "--window",
        type=int,
        default=None,
        help="stabilization window (default: s + period length)",
    )
    sub.add_argument("--out-dir", type=Path, default=None)
    sub.set_defaults(func=cmd_newton_polygon)

    return parser


def _make_config(args: argparse.Namespace) -> RunConfig:
    try:
        shape = FieldShape(args.p, args.s)
    except (TypeError, ValueError) as err:
        raise UsageError(str(err)) from err
    budget = args.budget if getattr(args, "budget", None) else _default_budget()
    return RunConfig(
        shape=shape,
        fmt=getattr(args, "format", "table"),
        budget=budget,
        element_budget=getattr(args, "element_budget", DEFAULT_ELEMENT_BUDGET),
        jobs=getattr(args, "jobs", 1),
        out_dir=getattr(args, "out_dir", None),
    )


def cmd_enumerate(args: argparse.Namespace, cfg: RunConfig) -> int:
    relaxed = args.mode == "relaxed"
    comps = list(
        enumerate_splits(
            args.m, args.n, cfg.shape, allow_zero_tail=relaxed, budget=cfg.budget
        )
    )
    if cfg.fmt == "json":
        for comp in comps:
            print(canonical_json(composition_record(comp, cfg.shape)))
    elif cfg.fmt == "csv":
        print("weight,parts,base_p")
        for comp in comps:
            rec = composition_record(comp, cfg.shape)
            print(
                f"{rec['weight']},{' '.join(map(str, rec['parts']))},"
                f"{' '.join(rec['base_p'])}"
            )
    else:
        for comp in comps:
            rendered = " + ".join(dual_repr(x, cfg.shape.p) for x in comp.parts)
            print(f"weight {comp.weight:>8}  {rendered}")
        print(f"{len(comps)} split(s) of {args.n} into {args.m} parts for {cfg.shape}")
    return OK if comps else EMPTY_SET


def _print_composition(comp, cfg: RunConfig, note: str = "") -> None:
    if cfg.fmt == "json":
        record = composition_record(comp, cfg.shape)
        if note:
            record["note"] = note
        print(canonical_json(record))
    else:
        rendered = " + ".join(dual_repr(x, cfg.shape.p) for x in comp.parts)
        suffix = f"  [{note}]" if note else ""
        print(f"weight {comp.weight}  {rendered}{suffix}")


def cmd_greedy(args: argparse.Namespace, cfg: RunConfig) -> int:
    if args.mode == "relaxed":
        comp = greedy_relaxed_split(args.m, args.n, cfg.shape)
    else:
        comp = greedy_split(args.m, args.n, cfg.shape)
    _print_composition(comp, cfg)
    return OK


def cmd_optimal(args: argparse.Namespace, cfg: RunConfig) -> int:
    comp, unique = bruteforce_optimum(args.m, args.n, cfg.shape, cfg.budget)
    _print_composition(comp, cfg, note="unique" if unique else "not unique")
    return OK


def cmd_membership(args: argparse.Namespace, cfg: RunConfig) -> int:
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    u = fold_counts_int(args.n, cfg.shape)
    coords = scaled_inverse_coords(u, cfg.shape)
    record = {
        "n": args.n,
        "fold_counts": list(u),
        "numerators": list(coords.numerators),
        "denominator": coords.denominator,
        "part_vector": is_part_vector(u, cfg.shape) if any(u) else False,
        "split_rank": split_rank(u, cfg.shape),
        "admits_split": {
            str(m): admits_split(u, m, cfg.shape)
            for m in range(1, args.max_m + 1)
        },
    }
    if cfg.fmt == "json":
        print(canonical_json(record))
    else:
        print(f"n = {dual_repr(args.n, cfg.shape.p)}")
        print(f"fold counts      {u}")
        print(f"scaled coords    {coords.numerators} / {coords.denominator}")
        print(f"part vector      {record['part_vector']}")
        print(f"split rank       {record['split_rank']}")
        admitted = [m for m in range(1, args.max_m + 1) if record["admits_split"][str(m)]]
        print(f"admits splits    m in {admitted}")
    return OK


def cmd_power_sum(args: argparse.Namespace, cfg: RunConfig) -> int:
    field = FqField.for_shape(cfg.shape)
    direct = monic_power_sum(args.k, args.n, field, args.element_budget)
    rebuilt = monic_power_sum_combinatorial(args.k, args.n, cfg.shape, cfg.budget)
    below = power_sum_below(args.k, args.n, field, args.element_budget)
    degree_read = predicted_degree(args.k, args.n, cfg.shape)
    record = {
        "k": args.k,
        "n": args.n,
        "monic_sum": str(direct),
        "combinatorial_sum": str(rebuilt),
        "below_sum": str(below),
        "degree": direct.degree(),
        "predicted_degree": degree_read,
        "identity_agrees": direct == rebuilt,
        "degree_agrees": (direct.degree() == degree_read),
    }
    if cfg.fmt == "json":
        print(canonical_json(record))
    else:
        print(f"monic power sum (k={args.k}, n={args.n}) over {cfg.shape}")
        print(f"  direct         {record['monic_sum']}")
        print(f"  combinatorial  {record['combinatorial_sum']}")
        print(f"  below degree   {record['below_sum']}")
        print(f"  degree         {record['degree']} (predicted {degree_read})")
        print(f"  identity agrees: {record['identity_agrees']}")
    return OK if record["identity_agrees"] and record["degree_agrees"] else FAILED


def _finish_sweep(report, cfg: RunConfig) -> int:
    print(report.summary())
    for oc in report.failures()[:10]:
        print(f"  FAIL cell {oc.cell}: {canonical_json(oc.detail or {})}")
    if cfg.out_dir is not None:
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        (cfg.out_dir / "report.json").write_text(
            canonical_json(report_record(report)) + "\n"
        )
        (cfg.out_dir / "cells.csv").write_text(report_cells_csv(report))
        save_sweep_figure(report, str(cfg.out_dir / "summary.png"))
        print(f"report written to {cfg.out_dir}")
    return OK if report.ok() else FAILED


def cmd_verify_theorem12(args: argparse.Namespace, cfg: RunConfig) -> int:
    report = verify_split_optimality(
        cfg.shape, args.max_m, args.max_n, budget=cfg.budget, jobs=cfg.jobs
    )
    return _finish_sweep(report, cfg)


def cmd_verify_theorem14(args: argparse.Namespace, cfg: RunConfig) -> int:
    report = verify_power_sum_grid(
        cfg.shape,
        args.max_k,
        args.max_n,
        element_budget=args.element_budget,
        split_budget=cfg.budget,
        jobs=cfg.jobs,
    )
    return _finish_sweep(report, cfg)


def cmd_newton_polygon(args: argparse.Namespace, cfg: RunConfig) -> int:
    try:
        y = PadicExponent.parse(args.y, cfg.shape.p)
    except ValueError as err:
        raise UsageError(str(err)) from err
    if y.is_integer:
        polygon = polygon_for_integer(y.value(), cfg.shape, args.max_m)
        thresholds = None
    else:
        max_m = args.max_m if args.max_m is not None else 5
        polygon = polygon_for_padic(
            y, cfg.shape, max_m, window=args.window, t_cap=args.t_cap
        )
        thresholds = polygon.thresholds
    hull_ok = polygon.is_own_lower_hull()

    if cfg.fmt == "json":
        record = {
            "y": str(y),
            "points": [list(pt) for pt in polygon.points],
            "slopes": list(polygon.slopes),
            "hull_ok": hull_ok,
        }
        if thresholds is not None:
            record["thresholds"] = list(thresholds)
        print(canonical_json(record))
    elif cfg.fmt == "csv":
        sys.stdout.write(polygon_csv(polygon.points))
    else:
        print(f"newton polygon of y = {y} over {cfg.shape}")
        for i, (m, v) in enumerate(polygon.points):
            extra = ""
            if thresholds is not None:
                extra = f"  (accepted at t={thresholds[i]})"
            print(f"  m={m:<3} v={v}{extra}")
        print(f"slopes: {list(polygon.slopes)}")
        print(f"strictly increasing unit-step hull: {hull_ok}")
    if cfg.out_dir is not None:
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        (cfg.out_dir / "polygon.csv").write_text(polygon_csv(polygon.points))
        (cfg.out_dir / "polygon.svg").write_text(polygon_svg(polygon.points))
        save_polygon_figure(
            polygon.points,
            str(cfg.out_dir / "polygon.png"),
            title=f"y = {y}, {cfg.shape}",
        )
        print(f"polygon files written to {cfg.out_dir}")
    return OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _make_config(args)
        return args.func(args, cfg)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE
    except BudgetExceededError as err:
        print(f"budget exceeded: {err}", file=sys.stderr)
        return BUDGET
    except EmptySetError as err:
        print(f"empty: {err}", file=sys.stderr)
        return EMPTY_SET
    except StabilizationInconclusiveError as err:
        print(f"inconclusive: {err}", file=sys.stderr)
        return INCONCLUSIVE
    except MonotoneViolationError as err:
        print(f"monotonicity violated: {err}", file=sys.stderr)
        return FAILED
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front door: map generation, planning, benchmarking, rendering.

Exit codes: 0 on success, 2 on usage errors (argparse), 1 on runtime errors.
All outputs are deterministic functions of the flags unless --stamp is given.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .bench import (
    ALGORITHMS,
    ExperimentSpec,
    FileMapSource,
    RandomMapSource,
    aggregate_rows,
    rows_to_csv,
    run_experiment,
    spec_from_json,
)
from .errors import HeatpathError
from .heatgraph import VertexId, build_heat_graph
from .heatmap import ClassPalette, class_histogram, heatmap_to_csv, load_heatmap, random_heatmap
from .metrics import TimeModel, evaluate, mission_time
from .planners import (
    PlannerConfig,
    TERM_TRAP,
    orchestrate_multi,
    plan_from_json,
    plan_to_json,
)
from .render import RenderStyle, render_svg

_ALGO_ALIASES = {
    "zigzag": "zigzag",
    "na": "na-greedy",
    "na-greedy": "na-greedy",
    "heu": "heu-greedy",
    "heu-greedy": "heu-greedy",
    "svrec": "svrec",
}


def _parse_probs(parser: argparse.ArgumentParser, raw: str | None) -> list[float] | None:
    if raw is None:
        return None
    try:
        return [float(tok) for tok in raw.split(",")]
    except ValueError:
        parser.error(f"--probs must be comma-separated numbers, got {raw!r}")


def _parse_float_list(parser: argparse.ArgumentParser, raw: str, flag: str) -> list[float]:
    try:
        return [float(tok) for tok in raw.split(",")]
    except ValueError:
        parser.error(f"{flag} must be comma-separated numbers, got {raw!r}")


def _parse_int_list(parser: argparse.ArgumentParser, raw: str, flag: str) -> list[int]:
    try:
        return [int(tok) for tok in raw.split(",")]
    except ValueError:
        parser.error(f"{flag} must be comma-separated integers, got {raw!r}")


def _stamp_line() -> str:
    return f"# generated: {datetime.now(timezone.utc).isoformat()}\n"


def _cmd_gen_map(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    palette = ClassPalette.default()
    probs = _parse_probs(parser, args.probs)
    heatmap = random_heatmap(args.seed, args.width, args.height, palette, probs)
    text = heatmap_to_csv(heatmap)
    if args.stamp:
        text = _stamp_line() + text
    Path(args.out).write_text(text, encoding="utf-8")
    print(f"wrote {args.out}")
    histogram = class_histogram(heatmap, palette)
    total = heatmap.width * heatmap.height
    for label, value in palette.entries:
        count = histogram[label]
        print(f"{label} ({value:g}): {count} ({100.0 * count / total:.3f}%)")
    return 0


def _parse_depot(parser: argparse.ArgumentParser, raw: str) -> VertexId:
    parts = raw.split(",")
    if len(parts) != 2:
        parser.error(f"--depot must be 'i,j', got {raw!r}")
    try:
        return VertexId(int(parts[0]), int(parts[1]))
    except ValueError:
        parser.error(f"--depot must be two integers, got {raw!r}")


def _cmd_plan(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    palette = ClassPalette.default()
    heatmap = load_heatmap(args.map, palette)
    g = build_heat_graph(heatmap)
    if args.depot is not None:
        depot = _parse_depot(parser, args.depot)
    elif args.seed is not None:
        rng = np.random.Generator(np.random.PCG64(args.seed))
        depot = VertexId(int(rng.integers(g.rows)), int(rng.integers(g.cols)))
    else:
        depot = VertexId(0, 0)
    cfg = PlannerConfig(
        d_m_total=args.dm,
        n=args.n,
        r_th=args.r_th,
        r_min=args.r_min,
        vwrr_radius=args.vwrr_radius,
    )
    algorithm = _ALGO_ALIASES[args.algo]
    plan = orchestrate_multi(algorithm, g, [depot], cfg)
    metadata = {"map": str(args.map)}
    if args.seed is not None:
        metadata["depot_seed"] = args.seed
    Path(args.out).write_text(plan_to_json(plan, metadata), encoding="utf-8")
    result = evaluate(plan, g)
    timing = mission_time(plan, TimeModel(cell_size=heatmap.cell_size))
    d_text = ",".join(f"{d:.3f}" for d in result.d_per_uav)
    summary = (
        f"R={result.R_total:.3f} sigma={result.sigma_count} "
        f"d=[{d_text}] time={timing.makespan:.3f}s"
    )
    if any(t.terminated == TERM_TRAP for t in plan.trajectories):
        summary += " terminated=trap"
    print(summary)
    return 0


def _bench_spec_from_args(parser: argparse.ArgumentParser, args: argparse.Namespace) -> ExperimentSpec:
    if args.spec is not None:
        return spec_from_json(Path(args.spec).read_text(encoding="utf-8"))
    maps = []
    for raw in args.random_map or []:
        parts = _parse_int_list(parser, raw, "--random-map")
        if len(parts) != 3:
            parser.error(f"--random-map must be 'seed,width,height', got {raw!r}")
        maps.append(RandomMapSource(parts[0], parts[1], parts[2]))
    for path in args.map_file or []:
        maps.append(FileMapSource(path))
    if not maps:
        parser.error("bench needs --spec, --random-map or --map-file")
    if args.dm is None:
        parser.error("bench needs --dm (or a --spec file)")
    algorithms = []
    for name in args.algos.split(","):
        if name not in _ALGO_ALIASES:
            parser.error(f"unknown algorithm {name!r} in --algos")
        algorithms.append(_ALGO_ALIASES[name])
    time_targets = (
        tuple(_parse_float_list(parser, args.time_targets, "--time-targets"))
        if args.time_targets
        else ()
    )
    return ExperimentSpec(
        maps=tuple(maps),
        d_m_values=tuple(_parse_float_list(parser, args.dm, "--dm")),
        algorithms=tuple(algorithms),
        n_values=tuple(_parse_int_list(parser, args.n, "--n")),
        rounds=args.rounds,
        depot_seed=args.depot_seed,
        time_targets=time_targets,
    )


def _print_summary(rows, time_targets) -> None:
    aggregates = aggregate_rows(rows)
    cells = sorted({(a.map_id, a.n) for a in aggregates})
    for map_id, n in cells:
        subset = [a for a in aggregates if a.map_id == map_id and a.n == n]
        budgets = sorted({a.d_m for a in subset})
        print(f"map={map_id} n={n} (means over rounds)")
        header = ["algorithm"] + [f"d_m={b:g} sigma | R" for b in budgets]
        print("  " + " | ".join(header))
        for algorithm in dict.fromkeys(a.algorithm for a in subset):
            fields = [f"{algorithm:<10}"]
            for b in budgets:
                match = [a for a in subset if a.algorithm == algorithm and a.d_m == b]
                if match:
                    a = match[0]
                    fields.append(f"{a.mean_sigma_count:.3f} | {a.mean_R_total:.3f}")
                else:
                    fields.append("-")
            print("  " + " | ".join(fields))


def _cmd_bench(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    spec = _bench_spec_from_args(parser, args)
    rows = run_experiment(spec)
    text = rows_to_csv(rows, spec.time_targets)
    if args.stamp:
        text = _stamp_line() + text
    Path(args.out).write_text(text, encoding="utf-8")
    print(f"wrote {args.out} ({len(rows)} rows)")
    if args.summary:
        _print_summary(rows, spec.time_targets)
    return 0


def _cmd_render(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    palette = ClassPalette.default()
    heatmap = load_heatmap(args.map, palette)
    plan = plan_from_json(Path(args.plan).read_text(encoding="utf-8"))
    style = RenderStyle(cell_pixels=args.cell_pixels)
    svg = render_svg(heatmap, palette, plan, style)  # raises before any write
    Path(args.out).write_text(svg, encoding="utf-8")
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heatpath",
        description="Endurance-limited multi-UAV coverage planning on prior-risk heatmaps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen-map", help="generate a seeded random heatmap CSV")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--width", type=int, required=True)
    gen.add_argument("--height", type=int, required=True)
    gen.add_argument("--probs", help="comma-separated class probabilities (default uniform)")
    gen.add_argument("-o", "--out", required=True)
    gen.add_argument("--stamp", action="store_true", help="embed a generation timestamp")
    gen.set_defaults(func=_cmd_gen_map)

    plan = sub.add_parser("plan", help="plan one mission and write the plan JSON")
    plan.add_argument("--map", required=True)
    plan.add_argument("--algo", required=True, choices=sorted(_ALGO_ALIASES))
    plan.add_argument("--dm", type=float, required=True, help="total endurance budget (grid units)")
    plan.add_argument("--n", type=int, default=1, help="fleet size")
    plan.add_argument("--depot", help="depot as 'i,j' (default 0,0)")
    plan.add_argument("--seed", type=int, help="draw a random depot from this seed instead")
    plan.add_argument("--r-th", dest="r_th", type=float, default=0.0)
    plan.add_argument("--r-min", dest="r_min", type=float, default=1.0)
    plan.add_argument("--vwrr-radius", dest="vwrr_radius", type=int, default=1)
    plan.add_argument("-o", "--out", default="plan.json")
    plan.set_defaults(func=_cmd_plan)

    bench = sub.add_parser("bench", help="run a benchmark matrix and write a CSV")
    bench.add_argument("--spec", help="JSON experiment description (overrides inline flags)")
    bench.add_argument("--random-map", action="append", help="'seed,width,height' (repeatable)")
    bench.add_argument("--map-file", action="append", help="heatmap CSV path (repeatable)")
    bench.add_argument("--algos", default=",".join(ALGORITHMS))
    bench.add_argument("--dm", help="comma-separated budget values")
    bench.add_argument("--n", default="1", help="comma-separated fleet sizes")
    bench.add_argument("--rounds", type=int, default=1)
    bench.add_argument("--depot-seed", dest="depot_seed", type=int, default=0)
    bench.add_argument("--time-targets", dest="time_targets", help="comma-separated R targets")
    bench.add_argument("-o", "--out", default="bench.csv")
    bench.add_argument("--summary", action="store_true", help="print per-cell means")
    bench.add_argument("--stamp", action="store_true", help="embed a generation timestamp")
    bench.set_defaults(func=_cmd_bench)

    render = sub.add_parser("render", help="render a heatmap (and plan) to SVG")
    render.add_argument("--map", required=True)
    render.add_argument("--plan", required=True)
    render.add_argument("--cell-pixels", dest="cell_pixels", type=int, default=16)
    render.add_argument("-o", "--out", required=True)
    render.set_defaults(func=_cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except (HeatpathError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

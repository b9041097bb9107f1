"""Seeded benchmark harness and a brute-force oracle for tiny instances.

An experiment runs every (map, algorithm, n, d_m, round) combination; within a
round every algorithm and every budget sees the same randomly drawn depot, so
comparisons are paired. Output is a deterministic CSV.
"""

from __future__ import annotations

import bisect
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from io import StringIO
from pathlib import Path

import numpy as np

from .heatgraph import HeatGraph, VertexId, build_heat_graph, edge_weight, neighbors8
from .heatmap import ClassPalette, Heatmap, load_heatmap, random_heatmap
from .metrics import TimeModel, evaluate, mission_time, time_to_reach_R
from .planners import ALGORITHMS, EPS, PlannerConfig, orchestrate_multi

_BRUTE_MAX_VERTICES = 16
_BRUTE_MAX_BUDGET = 8.0


@dataclass(frozen=True)
class RandomMapSource:
    seed: int
    width: int
    height: int

    @property
    def map_id(self) -> str:
        return f"random-{self.seed}-{self.width}x{self.height}"


@dataclass(frozen=True)
class FileMapSource:
    path: str

    @property
    def map_id(self) -> str:
        return self.path


MapSource = RandomMapSource | FileMapSource


@dataclass(frozen=True)
class ExperimentSpec:
    """Full description of a benchmark matrix."""

    maps: tuple[MapSource, ...]
    d_m_values: tuple[float, ...]
    algorithms: tuple[str, ...] = ALGORITHMS
    n_values: tuple[int, ...] = (1,)
    rounds: int = 1
    depot_seed: int = 0
    time_targets: tuple[float, ...] = ()
    palette: ClassPalette = field(default_factory=ClassPalette.default)
    time_model: TimeModel = field(default_factory=TimeModel)

    def __post_init__(self) -> None:
        if not self.maps:
            raise ValueError("experiment needs at least one map")
        if not self.d_m_values:
            raise ValueError("experiment needs at least one budget value")
        if self.rounds < 1:
            raise ValueError("rounds must be at least 1")
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown:
            raise ValueError(f"unknown algorithms: {sorted(unknown)}")


@dataclass(frozen=True)
class ReportRow:
    map_id: str
    algorithm: str
    n: int
    d_m: float
    round_index: int
    depot: VertexId
    sigma_count: int
    sigma_pct: float
    R_total: float
    makespan_s: float
    times_to_R: tuple[float | None, ...] = ()


def _load_source(source: MapSource, palette: ClassPalette) -> Heatmap:
    if isinstance(source, RandomMapSource):
        return random_heatmap(source.seed, source.width, source.height, palette)
    path = Path(source.path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read map file {source.path!r}: {exc}") from exc
    return load_heatmap(StringIO(text), palette)


def _round_depots(g: HeatGraph, depot_seed: int, map_index: int, rounds: int) -> list[VertexId]:
    # One uniformly drawn depot per round, shared by every algorithm, budget
    # and fleet size on this map. Stream identity: PCG64 seeded with
    # SeedSequence((depot_seed, map_index)); row index then column index.
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((depot_seed, map_index))))
    return [
        VertexId(int(rng.integers(g.rows)), int(rng.integers(g.cols)))
        for _ in range(rounds)
    ]


def _run_cell(
    g: HeatGraph,
    map_id: str,
    algorithm: str,
    n: int,
    d_m: float,
    round_index: int,
    depot: VertexId,
    spec: ExperimentSpec,
) -> ReportRow:
    cfg = PlannerConfig(d_m_total=d_m, n=n)
    plan = orchestrate_multi(algorithm, g, [depot], cfg)
    result = evaluate(plan, g)
    timing = mission_time(plan, spec.time_model)
    times = tuple(
        time_to_reach_R(plan, g, spec.time_model, target) for target in spec.time_targets
    )
    return ReportRow(
        map_id=map_id,
        algorithm=algorithm,
        n=n,
        d_m=d_m,
        round_index=round_index,
        depot=depot,
        sigma_count=result.sigma_count,
        sigma_pct=result.sigma_pct,
        R_total=result.R_total,
        makespan_s=timing.makespan,
        times_to_R=times,
    )


def _compute_work_item(args: tuple) -> ReportRow:
    spec, map_index, algorithm, n, d_m, round_index, depot = args
    source = spec.maps[map_index]
    g = build_heat_graph(_load_source(source, spec.palette))
    return _run_cell(g, source.map_id, algorithm, n, d_m, round_index, depot, spec)


def _worker_count() -> int:
    raw = os.environ.get("HEATPATH_THREADS", "1")
    try:
        return max(int(raw), 1)
    except ValueError:
        return 1


def run_experiment(spec: ExperimentSpec) -> list[ReportRow]:
    """Run the full cartesian matrix; deterministic given the spec.

    Row order: maps, then algorithms, then fleet sizes, then budgets, then
    rounds. Set HEATPATH_THREADS > 1 to compute rows in parallel (results and
    ordering are unaffected).
    """
    graphs: list[HeatGraph] = []
    depots: list[list[VertexId]] = []
    for map_index, source in enumerate(spec.maps):
        g = build_heat_graph(_load_source(source, spec.palette))
        graphs.append(g)
        depots.append(_round_depots(g, spec.depot_seed, map_index, spec.rounds))

    items = [
        (spec, map_index, algorithm, n, d_m, round_index, depots[map_index][round_index])
        for map_index in range(len(spec.maps))
        for algorithm in spec.algorithms
        for n in spec.n_values
        for d_m in spec.d_m_values
        for round_index in range(spec.rounds)
    ]
    workers = _worker_count()
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_compute_work_item, items, chunksize=4))
    rows = []
    for spec_, map_index, algorithm, n, d_m, round_index, depot in items:
        rows.append(
            _run_cell(
                graphs[map_index],
                spec.maps[map_index].map_id,
                algorithm,
                n,
                d_m,
                round_index,
                depot,
                spec_,
            )
        )
    return rows


@dataclass(frozen=True)
class AggregateRow:
    """Per-cell means over rounds (time means ignore rounds that never got there)."""

    map_id: str
    algorithm: str
    n: int
    d_m: float
    rounds: int
    mean_sigma_count: float
    mean_sigma_pct: float
    mean_R_total: float
    mean_makespan_s: float
    mean_times_to_R: tuple[float | None, ...] = ()


def aggregate_rows(rows: list[ReportRow]) -> list[AggregateRow]:
    grouped: dict[tuple, list[ReportRow]] = {}
    for row in rows:
        grouped.setdefault((row.map_id, row.algorithm, row.n, row.d_m), []).append(row)
    out = []
    for (map_id, algorithm, n, d_m), members in grouped.items():
        k = len(members)
        target_count = len(members[0].times_to_R)
        mean_times = []
        for t in range(target_count):
            values = [m.times_to_R[t] for m in members if m.times_to_R[t] is not None]
            mean_times.append(sum(values) / len(values) if values else None)
        out.append(
            AggregateRow(
                map_id=map_id,
                algorithm=algorithm,
                n=n,
                d_m=d_m,
                rounds=k,
                mean_sigma_count=sum(m.sigma_count for m in members) / k,
                mean_sigma_pct=sum(m.sigma_pct for m in members) / k,
                mean_R_total=sum(m.R_total for m in members) / k,
                mean_makespan_s=sum(m.makespan_s for m in members) / k,
                mean_times_to_R=tuple(mean_times),
            )
        )
    return out


def _format_target(target: float) -> str:
    return f"{target:g}"


def rows_to_csv(rows: list[ReportRow], time_targets: tuple[float, ...] = ()) -> str:
    """Deterministic CSV: header plus one line per row; absent times are empty."""
    header = [
        "map_id",
        "algorithm",
        "n",
        "d_m",
        "round",
        "depot_i",
        "depot_j",
        "sigma_count",
        "sigma_pct",
        "R_total",
        "makespan_s",
    ] + [f"t_R{_format_target(t)}" for t in time_targets]
    lines = [",".join(header)]
    for row in rows:
        fields = [
            row.map_id,
            row.algorithm,
            str(row.n),
            f"{row.d_m:g}",
            str(row.round_index),
            str(row.depot.i),
            str(row.depot.j),
            str(row.sigma_count),
            f"{row.sigma_pct:.3f}",
            f"{row.R_total:.3f}",
            f"{row.makespan_s:.3f}",
        ] + ["" if t is None else f"{t:.3f}" for t in row.times_to_R]
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def spec_from_json(text: str) -> ExperimentSpec:
    """Load an ExperimentSpec from its JSON description (see README)."""
    doc = json.loads(text)
    maps: list[MapSource] = []
    for entry in doc["maps"]:
        kind = entry.get("kind")
        if kind == "random":
            maps.append(RandomMapSource(int(entry["seed"]), int(entry["width"]), int(entry["height"])))
        elif kind == "file":
            maps.append(FileMapSource(str(entry["path"])))
        else:
            raise ValueError(f"unknown map kind {kind!r}")
    palette = (
        ClassPalette(tuple((str(l), float(h)) for l, h in doc["palette"]))
        if "palette" in doc
        else ClassPalette.default()
    )
    tm = TimeModel(**doc["time_model"]) if "time_model" in doc else TimeModel()
    return ExperimentSpec(
        maps=tuple(maps),
        d_m_values=tuple(float(v) for v in doc["d_m_values"]),
        algorithms=tuple(doc.get("algorithms", ALGORITHMS)),
        n_values=tuple(int(v) for v in doc.get("n_values", (1,))),
        rounds=int(doc.get("rounds", 1)),
        depot_seed=int(doc.get("depot_seed", 0)),
        time_targets=tuple(float(v) for v in doc.get("time_targets", ())),
        palette=palette,
        time_model=tm,
    )


def brute_force_optimal(
    g: HeatGraph,
    depot: VertexId,
    d_m: float,
) -> tuple[float, list[VertexId]]:
    """Exact optimum over neighbour-step walks from the depot within budget.

    Exhaustive depth-first search (revisits allowed, weight accumulated on
    first visits only) with a top-k remaining-weight bound. Returns the best
    accumulated weight and the lexicographically smallest walk achieving it.
    Guarded to at most 16 vertices and d_m <= 8.
    """
    if g.rows * g.cols > _BRUTE_MAX_VERTICES:
        raise ValueError(
            f"instance has {g.rows * g.cols} vertices, brute force allows {_BRUTE_MAX_VERTICES}"
        )
    if d_m > _BRUTE_MAX_BUDGET:
        raise ValueError(f"budget {d_m} exceeds brute-force guard {_BRUTE_MAX_BUDGET}")
    if not g.in_bounds(depot):
        raise ValueError(f"depot {depot} outside {g.rows}x{g.cols} graph")

    covered = {depot}
    # Ascending weights of uncovered vertices; the top-k tail bounds what any
    # k further first visits could add.
    open_weights: list[float] = sorted(
        g.r_at(v) for v in g.vertices() if v != depot
    )
    best_R = -1.0
    best_path: list[VertexId] = []
    path = [depot]

    def dfs(pos: VertexId, budget_left: float, current_R: float) -> None:
        nonlocal best_R, best_path
        if current_R > best_R:
            best_R = current_R
            best_path = list(path)
        if budget_left + EPS < 1.0:  # cheapest possible move costs 1
            return
        k = int(budget_left + EPS)
        upper = current_R + sum(open_weights[-k:]) if k else current_R
        if upper <= best_R:
            return
        for nxt in neighbors8(g, pos):
            cost = edge_weight(pos, nxt)
            if cost > budget_left + EPS:
                continue
            fresh = nxt not in covered
            gained = 0.0
            if fresh:
                covered.add(nxt)
                gained = g.r_at(nxt)
                open_weights.remove(gained)
            path.append(nxt)
            dfs(nxt, budget_left - cost, current_R + gained)
            path.pop()
            if fresh:
                covered.remove(nxt)
                bisect.insort(open_weights, gained)

    dfs(depot, d_m, g.r_at(depot))
    return best_R, best_path

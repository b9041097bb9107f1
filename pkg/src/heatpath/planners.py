"""Budget-limited coverage planners over a weighted lattice.

Four planners share one contract: every UAV starts at a depot, consumes edge
weight against a per-UAV budget, and all UAVs in a fleet share a single
covered set, so no vertex's weight is accumulated twice. Fleet members advance
in strict round-robin order, one move per round.

- zigzag: boustrophedon sweep of a contiguous row band per UAV.
- na-greedy: step to the best uncovered neighbour; stalls when boxed in.
- heu-greedy: covered neighbours stay eligible at a score penalty, so the UAV
  can walk back out of a box (revisits accumulate no weight).
- svrec: greedy stepping plus two repairs: when boxed in or the uncovered
  neighbourhood is too poor on average, fly straight to the nearest uncovered
  vertex worth covering (a "skip" move, charged its Euclidean length, covering
  nothing along the way); when several neighbours tie on weight, prefer the
  one whose surrounding window promises the most uncovered weight.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .heatgraph import (
    HeatGraph,
    VertexId,
    edge_weight,
    neighbors8,
    nearest_above_threshold,
)

EPS = 1e-9

STEP = "step"
SKIP = "skip"

TERM_BUDGET = "budget"  # next move would exceed the remaining budget
TERM_TRAP = "trap"      # no admissible move exists (boxed in by covered cells)
TERM_DONE = "done"      # nothing worthwhile left (route finished / no skip target)

ZIGZAG = "zigzag"
NA_GREEDY = "na-greedy"
HEU_GREEDY = "heu-greedy"
SVREC = "svrec"
ALGORITHMS = (ZIGZAG, NA_GREEDY, HEU_GREEDY, SVREC)

_PLAN_FORMAT = "heatpath-plan-v1"


@dataclass(frozen=True)
class PlannerConfig:
    """Fleet size, budgets and planner thresholds.

    `per_uav_budget` defaults to an even split of `d_m_total` across the
    fleet. `r_th` is the strict lower bound on a skip target's weight,
    `r_min` the mean-neighbour-weight level below which svrec prefers to skip,
    `penalty` the score subtracted from covered candidates in heu-greedy, and
    `vwrr_radius` the half-width of the tie-break window (1 means 3x3).
    """

    d_m_total: float
    n: int = 1
    per_uav_budget: float | None = None
    r_th: float = 0.0
    r_min: float = 1.0
    penalty: float = 10.0
    vwrr_radius: int = 1

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("fleet size n must be at least 1")
        if self.d_m_total < 0:
            raise ValueError("total budget must be non-negative")
        if self.per_uav_budget is None:
            object.__setattr__(self, "per_uav_budget", self.d_m_total / self.n)
        if self.per_uav_budget < 0:
            raise ValueError("per-UAV budget must be non-negative")
        if self.vwrr_radius < 1:
            raise ValueError("vwrr_radius must be at least 1")


@dataclass(frozen=True)
class Trajectory:
    """One UAV's path: visited vertices, per-move annotations, totals."""

    uav_index: int
    vertices: tuple[VertexId, ...]
    moves: tuple[str, ...]
    d: float
    R: float
    terminated: str

    def __post_init__(self) -> None:
        if len(self.moves) != len(self.vertices) - 1:
            raise ValueError("need exactly one move annotation per consecutive pair")


@dataclass(frozen=True)
class MultiPlan:
    """A full fleet plan plus the shared covered set and its provenance."""

    planner: str
    rows: int
    cols: int
    cell_size: float
    config: PlannerConfig
    depots: tuple[VertexId, ...]
    trajectories: tuple[Trajectory, ...]
    close: frozenset[VertexId]

    @property
    def total_R(self) -> float:
        return sum(t.R for t in self.trajectories)


@dataclass
class _UavRun:
    index: int
    budget: float
    pos: VertexId
    vertices: list[VertexId]
    moves: list[str] = field(default_factory=list)
    d: float = 0.0
    R: float = 0.0
    terminated: str | None = None
    route: list[VertexId] | None = None  # zigzag only

    @property
    def remaining(self) -> float:
        return self.budget - self.d


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _walk(a: VertexId, b: VertexId) -> list[VertexId]:
    # Shortest 8-neighbour path from a to b: diagonal while both axes differ,
    # then straight. Excludes a, includes b.
    out: list[VertexId] = []
    i, j = a.i, a.j
    while (i, j) != (b.i, b.j):
        i += _sign(b.i - i)
        j += _sign(b.j - j)
        out.append(VertexId(i, j))
    return out


def _zigzag_route(g: HeatGraph, depot: VertexId, uav_index: int, n: int) -> list[VertexId]:
    """Planned vertex sequence after the depot for one zigzag UAV.

    Rows are split into n contiguous, maximally even bands. The UAV walks to
    the band cell nearest its depot, follows the band's serpentine order
    (first band row left to right, reversing each row) forward from there,
    and if it entered mid-band, walks back to the serpentine start and sweeps
    the remainder.
    """
    row_lo = uav_index * g.rows // n
    row_hi = (uav_index + 1) * g.rows // n
    if row_lo >= row_hi:
        return []
    serpentine: list[VertexId] = []
    for i in range(row_lo, row_hi):
        cols = range(g.cols) if (i - row_lo) % 2 == 0 else range(g.cols - 1, -1, -1)
        serpentine.extend(VertexId(i, j) for j in cols)
    entry = VertexId(min(max(depot.i, row_lo), row_hi - 1), depot.j)
    p = serpentine.index(entry)
    route = _walk(depot, entry)
    route.extend(serpentine[p + 1 :])
    if p > 0:
        route.extend(_walk(serpentine[-1], serpentine[0]))
        route.extend(serpentine[1:p])
    return route


_TERMINATE = object()


def _choose_zigzag(g, cfg, run, close):
    assert run.route is not None
    made = len(run.vertices) - 1
    if made >= len(run.route):
        return _TERMINATE, TERM_DONE
    return run.route[made], STEP


def _choose_na_greedy(g, cfg, run, close):
    best: VertexId | None = None
    best_r = 0.0
    for v in neighbors8(g, run.pos):  # row-major, so first max wins ties
        if v in close:
            continue
        r = g.r_at(v)
        if best is None or r > best_r:
            best, best_r = v, r
    if best is None:
        return _TERMINATE, TERM_TRAP
    return best, STEP


def _choose_heu_greedy(g, cfg, run, close):
    best: VertexId | None = None
    best_key: tuple[float, int] | None = None
    for v in neighbors8(g, run.pos):
        covered = v in close
        score = g.r_at(v) - (cfg.penalty if covered else 0.0)
        key = (score, 0 if covered else 1)  # uncovered outranks covered on ties
        if best_key is None or key > best_key:
            best, best_key = v, key
    if best is None:
        return _TERMINATE, TERM_TRAP  # 1x1 graph only
    return best, STEP


def _window_mean_uncovered(g: HeatGraph, center: VertexId, radius: int, close) -> float:
    total = 0.0
    count = 0
    for i in range(max(center.i - radius, 0), min(center.i + radius, g.rows - 1) + 1):
        for j in range(max(center.j - radius, 0), min(center.j + radius, g.cols - 1) + 1):
            v = VertexId(i, j)
            if v in close:
                continue
            total += g.r_at(v)
            count += 1
    return total / count if count else 0.0


def _choose_svrec(g, cfg, run, close):
    candidates = [v for v in neighbors8(g, run.pos) if v not in close]
    sparse = bool(candidates) and (
        sum(g.r_at(v) for v in candidates) / len(candidates) < cfg.r_min
    )
    if not candidates or sparse:
        # Boxed in, or the local neighbourhood is too poor: fly straight to
        # the nearest uncovered vertex that is worth covering at all.
        target = nearest_above_threshold(g, run.pos, close, cfg.r_th)
        if target is None:
            return _TERMINATE, TERM_DONE
        return target, SKIP
    best_r = max(g.r_at(v) for v in candidates)
    tied = [v for v in candidates if g.r_at(v) == best_r]
    if len(tied) == 1:
        return tied[0], STEP
    best = tied[0]
    best_score = _window_mean_uncovered(g, best, cfg.vwrr_radius, close)
    for v in tied[1:]:  # row-major residual tie-break via strict improvement
        score = _window_mean_uncovered(g, v, cfg.vwrr_radius, close)
        if score > best_score:
            best, best_score = v, score
    return best, STEP


_CHOOSERS = {
    ZIGZAG: _choose_zigzag,
    NA_GREEDY: _choose_na_greedy,
    HEU_GREEDY: _choose_heu_greedy,
    SVREC: _choose_svrec,
}


def _advance(planner: str, g: HeatGraph, cfg: PlannerConfig, run: _UavRun, close: set) -> None:
    target, kind = _CHOOSERS[planner](g, cfg, run, close)
    if target is _TERMINATE:
        run.terminated = kind
        return
    cost = edge_weight(run.pos, target)
    if cost > run.remaining + EPS:
        run.terminated = TERM_BUDGET
        return
    run.d += cost
    run.pos = target
    run.vertices.append(target)
    run.moves.append(kind)
    if target not in close:
        close.add(target)
        run.R += g.r_at(target)


def orchestrate_multi(
    planner: str,
    g: HeatGraph,
    depots: Sequence[VertexId],
    cfg: PlannerConfig,
) -> MultiPlan:
    """Run a fleet of `cfg.n` UAVs of one planner kind over a shared covered set.

    Accepts one depot (replicated fleet-wide) or exactly n depots. UAVs take
    one move each per round in index order; a terminated UAV is skipped; the
    run ends when every UAV has terminated. Depots count as covered at the
    start, attributed in index order.
    """
    if planner not in _CHOOSERS:
        raise ValueError(f"unknown planner {planner!r} (expected one of {ALGORITHMS})")
    depot_list = [VertexId(*d) for d in depots]
    if len(depot_list) == 1 and cfg.n > 1:
        depot_list = depot_list * cfg.n
    if len(depot_list) != cfg.n:
        raise ValueError(f"need 1 or {cfg.n} depots, got {len(depot_list)}")
    for d in depot_list:
        if not g.in_bounds(d):
            raise ValueError(f"depot {d} outside {g.rows}x{g.cols} graph")

    close: set[VertexId] = set()
    runs: list[_UavRun] = []
    for u, depot in enumerate(depot_list):
        run = _UavRun(index=u, budget=cfg.per_uav_budget, pos=depot, vertices=[depot])
        if depot not in close:
            close.add(depot)
            run.R += g.r_at(depot)
        runs.append(run)
    if planner == ZIGZAG:
        for run in runs:
            run.route = _zigzag_route(g, run.pos, run.index, cfg.n)

    while True:
        active = [run for run in runs if run.terminated is None]
        if not active:
            break
        for run in active:
            _advance(planner, g, cfg, run, close)

    trajectories = tuple(
        Trajectory(
            uav_index=run.index,
            vertices=tuple(run.vertices),
            moves=tuple(run.moves),
            d=run.d,
            R=run.R,
            terminated=run.terminated,
        )
        for run in runs
    )
    return MultiPlan(
        planner=planner,
        rows=g.rows,
        cols=g.cols,
        cell_size=g.cell_size,
        config=cfg,
        depots=tuple(depot_list),
        trajectories=trajectories,
        close=frozenset(close),
    )


def plan_zigzag(g: HeatGraph, depot: VertexId, cfg: PlannerConfig) -> MultiPlan:
    return orchestrate_multi(ZIGZAG, g, [depot], cfg)


def plan_na_greedy(g: HeatGraph, depot: VertexId, cfg: PlannerConfig) -> MultiPlan:
    return orchestrate_multi(NA_GREEDY, g, [depot], cfg)


def plan_heu_greedy(g: HeatGraph, depot: VertexId, cfg: PlannerConfig) -> MultiPlan:
    return orchestrate_multi(HEU_GREEDY, g, [depot], cfg)


def plan_svrec(g: HeatGraph, depot: VertexId, cfg: PlannerConfig) -> MultiPlan:
    return orchestrate_multi(SVREC, g, [depot], cfg)


def plan_to_json(plan: MultiPlan, metadata: Mapping[str, object] | None = None) -> str:
    """Serialize a plan to deterministic JSON (sorted keys, stable floats)."""
    doc: dict[str, object] = {
        "format": _PLAN_FORMAT,
        "planner": plan.planner,
        "rows": plan.rows,
        "cols": plan.cols,
        "cell_size": plan.cell_size,
        "config": {
            "d_m_total": plan.config.d_m_total,
            "n": plan.config.n,
            "per_uav_budget": plan.config.per_uav_budget,
            "r_th": plan.config.r_th,
            "r_min": plan.config.r_min,
            "penalty": plan.config.penalty,
            "vwrr_radius": plan.config.vwrr_radius,
        },
        "depots": [[d.i, d.j] for d in plan.depots],
        "trajectories": [
            {
                "uav": t.uav_index,
                "vertices": [[v.i, v.j] for v in t.vertices],
                "moves": list(t.moves),
                "d": t.d,
                "R": t.R,
                "terminated": t.terminated,
            }
            for t in plan.trajectories
        ],
    }
    if metadata:
        doc["metadata"] = {str(k): metadata[k] for k in sorted(metadata)}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def plan_from_json(text: str) -> MultiPlan:
    """Rebuild a plan from its JSON form; the covered set is recomputed."""
    doc = json.loads(text)
    if doc.get("format") != _PLAN_FORMAT:
        raise ValueError(f"not a plan document (format={doc.get('format')!r})")
    cfg = PlannerConfig(**doc["config"])
    trajectories = tuple(
        Trajectory(
            uav_index=entry["uav"],
            vertices=tuple(VertexId(i, j) for i, j in entry["vertices"]),
            moves=tuple(entry["moves"]),
            d=float(entry["d"]),
            R=float(entry["R"]),
            terminated=entry["terminated"],
        )
        for entry in doc["trajectories"]
    )
    close = frozenset(v for t in trajectories for v in t.vertices)
    return MultiPlan(
        planner=doc["planner"],
        rows=int(doc["rows"]),
        cols=int(doc["cols"]),
        cell_size=float(doc["cell_size"]),
        config=cfg,
        depots=tuple(VertexId(i, j) for i, j in doc["depots"]),
        trajectories=trajectories,
        close=close,
    )

"""Plan evaluation: coverage, accumulated weight, and the mission time model.

Timing model: the fleet launches together at t=0; a UAV cruises at
`speed` m/s along its path (cell_size metres per grid unit) and hovers
`hover` seconds over each cell it covers first. Revisits and cells flown over
during a skip move cost travel time only.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import PlanIntegrityError
from .heatgraph import HeatGraph, VertexId, edge_weight
from .planners import MultiPlan

_D_TOL = 1e-9


@dataclass(frozen=True)
class TimeModel:
    """Cruise speed (m/s), hover time per covered cell (s), cell size (m)."""

    speed: float = 15.0
    hover: float = 2.0
    cell_size: float = 40.0

    def __post_init__(self) -> None:
        if self.speed <= 0 or self.hover <= 0 or self.cell_size <= 0:
            raise ValueError("time model parameters must be strictly positive")


@dataclass(frozen=True)
class PlanMetrics:
    sigma_count: int
    sigma_pct: float
    R_total: float
    d_per_uav: tuple[float, ...]
    time_to_R: float | None = None


@dataclass(frozen=True)
class MissionTime:
    per_uav: tuple[float, ...]
    makespan: float


def first_visit_owners(plan: MultiPlan) -> dict[VertexId, int]:
    """Vertex -> index of the UAV that covered it first.

    Replays the round-robin timeline: within a round, lower UAV indices move
    first, so the k-th vertex of UAV u precedes the k-th vertex of UAV u+1.
    """
    owners: dict[VertexId, int] = {}
    longest = max(len(t.vertices) for t in plan.trajectories)
    for k in range(longest):
        for t in plan.trajectories:
            if k < len(t.vertices):
                v = t.vertices[k]
                if v not in owners:
                    owners[v] = t.uav_index
    return owners


def _check_dimensions(plan: MultiPlan, g: HeatGraph) -> None:
    if (plan.rows, plan.cols) != (g.rows, g.cols):
        raise ValueError(
            f"plan is {plan.rows}x{plan.cols} but graph is {g.rows}x{g.cols}"
        )


def evaluate(plan: MultiPlan, g: HeatGraph) -> PlanMetrics:
    """Recompute coverage and weight totals from the vertex lists.

    The stored per-UAV distance is cross-checked against a recomputation from
    the vertex list; any divergence beyond 1e-9 raises PlanIntegrityError.
    """
    _check_dimensions(plan, g)
    covered: set[VertexId] = set()
    d_per_uav = []
    for t in plan.trajectories:
        for v in t.vertices:
            if not g.in_bounds(v):
                raise ValueError(f"trajectory vertex {v} outside the graph")
        d = 0.0
        for a, b in zip(t.vertices, t.vertices[1:]):
            d += edge_weight(a, b)
        if abs(d - t.d) > _D_TOL:
            raise PlanIntegrityError(
                f"UAV {t.uav_index}: stored d={t.d!r} but recomputed {d!r}"
            )
        d_per_uav.append(d)
        covered.update(t.vertices)
    r_total = sum(g.r_at(v) for v in covered)
    return PlanMetrics(
        sigma_count=len(covered),
        sigma_pct=100.0 * len(covered) / (g.rows * g.cols),
        R_total=r_total,
        d_per_uav=tuple(d_per_uav),
    )


def mission_time(plan: MultiPlan, tm: TimeModel) -> MissionTime:
    """Per-UAV wall-clock time (travel plus first-visit hovers) and the makespan."""
    owners = first_visit_owners(plan)
    covered_per_uav = Counter(owners.values())
    per_uav = tuple(
        t.d * tm.cell_size / tm.speed + tm.hover * covered_per_uav.get(t.uav_index, 0)
        for t in plan.trajectories
    )
    return MissionTime(per_uav=per_uav, makespan=max(per_uav))


def time_to_reach_R(
    plan: MultiPlan,
    g: HeatGraph,
    tm: TimeModel,
    R_target: float,
) -> float | None:
    """Earliest time the fleet's cumulative covered weight reaches `R_target`.

    All UAVs fly their trajectories concurrently from t=0; a cell's weight is
    banked when its covering UAV finishes hovering over it. Returns None when
    the plan never accumulates `R_target`.
    """
    _check_dimensions(plan, g)
    if R_target <= 0:
        return 0.0
    owners = first_visit_owners(plan)
    events: list[tuple[float, float]] = []
    for t in plan.trajectories:
        clock = 0.0
        hovered: set[VertexId] = set()
        prev: VertexId | None = None
        for v in t.vertices:
            if prev is not None:
                clock += edge_weight(prev, v) * tm.cell_size / tm.speed
            if owners.get(v) == t.uav_index and v not in hovered:
                clock += tm.hover
                events.append((clock, g.r_at(v)))
                hovered.add(v)
            prev = v
    events.sort(key=lambda event: event[0])
    accumulated = 0.0
    for when, weight in events:
        accumulated += weight
        if accumulated >= R_target - _D_TOL:
            return when
    return None

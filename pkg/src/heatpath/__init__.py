"""Endurance-limited multi-UAV coverage planning on prior-risk heatmaps."""

from .bench import (
    AggregateRow,
    ExperimentSpec,
    FileMapSource,
    RandomMapSource,
    ReportRow,
    aggregate_rows,
    brute_force_optimal,
    rows_to_csv,
    run_experiment,
    spec_from_json,
)
from .errors import (
    HeatmapParseError,
    HeatpathError,
    PaletteValidationError,
    PlanIntegrityError,
)
from .heatgraph import (
    HeatGraph,
    VertexId,
    build_heat_graph,
    edge_weight,
    neighbors8,
    nearest_above_threshold,
    weight_from_heat,
)
from .heatmap import (
    ClassPalette,
    Heatmap,
    class_histogram,
    heatmap_from_class_grid,
    heatmap_to_csv,
    load_heatmap,
    random_heatmap,
    save_heatmap,
)
from .metrics import (
    MissionTime,
    PlanMetrics,
    TimeModel,
    evaluate,
    first_visit_owners,
    mission_time,
    time_to_reach_R,
)
from .planners import (
    ALGORITHMS,
    HEU_GREEDY,
    NA_GREEDY,
    SKIP,
    STEP,
    SVREC,
    TERM_BUDGET,
    TERM_DONE,
    TERM_TRAP,
    ZIGZAG,
    MultiPlan,
    PlannerConfig,
    Trajectory,
    orchestrate_multi,
    plan_from_json,
    plan_heu_greedy,
    plan_na_greedy,
    plan_svrec,
    plan_to_json,
    plan_zigzag,
)
from .render import RenderStyle, render_svg

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "AggregateRow",
    "ClassPalette",
    "ExperimentSpec",
    "FileMapSource",
    "HEU_GREEDY",
    "HeatGraph",
    "Heatmap",
    "HeatmapParseError",
    "HeatpathError",
    "MissionTime",
    "MultiPlan",
    "NA_GREEDY",
    "PaletteValidationError",
    "PlanIntegrityError",
    "PlanMetrics",
    "PlannerConfig",
    "RandomMapSource",
    "RenderStyle",
    "ReportRow",
    "SKIP",
    "STEP",
    "SVREC",
    "TERM_BUDGET",
    "TERM_DONE",
    "TERM_TRAP",
    "TimeModel",
    "Trajectory",
    "VertexId",
    "ZIGZAG",
    "aggregate_rows",
    "brute_force_optimal",
    "build_heat_graph",
    "class_histogram",
    "edge_weight",
    "evaluate",
    "first_visit_owners",
    "heatmap_from_class_grid",
    "heatmap_to_csv",
    "load_heatmap",
    "mission_time",
    "neighbors8",
    "nearest_above_threshold",
    "orchestrate_multi",
    "plan_from_json",
    "plan_heu_greedy",
    "plan_na_greedy",
    "plan_svrec",
    "plan_to_json",
    "plan_zigzag",
    "random_heatmap",
    "render_svg",
    "rows_to_csv",
    "run_experiment",
    "save_heatmap",
    "spec_from_json",
    "time_to_reach_R",
    "weight_from_heat",
]

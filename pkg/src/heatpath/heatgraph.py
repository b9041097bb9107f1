"""Weighted vertex lattice built from a heatmap.

Vertices map 1:1 onto heatmap cells and carry an efficiency weight: 10 for the
top heat class (h = 1.0), otherwise 10*h - 2, so the bottom class (h = 0.2) is
worth exactly 0. Edges are implicit: every vertex connects to its 8
neighbours, weighted by Euclidean distance in grid units (1 for side
neighbours, sqrt(2) for diagonals).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .heatmap import DEFAULT_CELL_SIZE, Heatmap


class VertexId(NamedTuple):
    """Lattice coordinate (row i, column j). Tuple order gives row-major sorting."""

    i: int
    j: int


TOP_WEIGHT = 10.0


def weight_from_heat(heat: float) -> float:
    """Efficiency weight of a heat-value: 10 at the top class, else 10*h - 2."""
    if heat == 1.0:
        return TOP_WEIGHT
    return 10.0 * heat - 2.0


@dataclass(frozen=True)
class HeatGraph:
    """Immutable lattice of efficiency weights, row-major like its heatmap."""

    rows: int
    cols: int
    r: tuple[float, ...]
    cell_size: float = DEFAULT_CELL_SIZE

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("graph dimensions must be at least 1x1")
        if len(self.r) != self.rows * self.cols:
            raise ValueError(
                f"weight count {len(self.r)} does not match {self.rows}x{self.cols}"
            )

    def in_bounds(self, v: VertexId) -> bool:
        return 0 <= v.i < self.rows and 0 <= v.j < self.cols

    def r_at(self, v: VertexId) -> float:
        return self.r[v.i * self.cols + v.j]

    def vertices(self) -> Iterator[VertexId]:
        for i in range(self.rows):
            for j in range(self.cols):
                yield VertexId(i, j)


def build_heat_graph(heatmap: Heatmap) -> HeatGraph:
    """Map a heatmap onto its weight lattice (identity on row/column indices)."""
    return HeatGraph(
        rows=heatmap.height,
        cols=heatmap.width,
        r=tuple(weight_from_heat(h) for h in heatmap.cells),
        cell_size=heatmap.cell_size,
    )


def edge_weight(a: VertexId, b: VertexId) -> float:
    """Euclidean distance between two distinct vertices, in grid units."""
    if a == b:
        raise ValueError(f"edge weight undefined for identical vertices {a}")
    return math.hypot(a.i - b.i, a.j - b.j)


_OFFSETS = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))


def neighbors8(g: HeatGraph, v: VertexId) -> list[VertexId]:
    """In-bounds 8-neighbourhood of `v`, in row-major order."""
    if not g.in_bounds(v):
        raise ValueError(f"vertex {v} outside {g.rows}x{g.cols} graph")
    out = []
    for di, dj in _OFFSETS:
        i, j = v.i + di, v.j + dj
        if 0 <= i < g.rows and 0 <= j < g.cols:
            out.append(VertexId(i, j))
    return out


def _ring(g: HeatGraph, c: VertexId, k: int) -> Iterator[VertexId]:
    # Cells at Chebyshev distance exactly k from c, clipped to the map.
    i_top, i_bot = c.i - k, c.i + k
    j_lo = max(c.j - k, 0)
    j_hi = min(c.j + k, g.cols - 1)
    if i_top >= 0:
        for j in range(j_lo, j_hi + 1):
            yield VertexId(i_top, j)
    if i_bot < g.rows:
        for j in range(j_lo, j_hi + 1):
            yield VertexId(i_bot, j)
    i_lo = max(i_top + 1, 0)
    i_hi = min(i_bot - 1, g.rows - 1)
    for i in range(i_lo, i_hi + 1):
        if c.j - k >= 0:
            yield VertexId(i, c.j - k)
        if c.j + k < g.cols:
            yield VertexId(i, c.j + k)


def nearest_above_threshold(
    g: HeatGraph,
    origin: VertexId,
    covered: Iterable[VertexId],
    r_th: float,
) -> VertexId | None:
    """Nearest uncovered vertex with weight strictly above `r_th`, or None.

    Distance is the Euclidean edge weight from `origin`; ties break row-major
    (smallest i, then smallest j). Implemented as an expanding-ring search;
    squared distances are compared as exact integers.
    """
    if not g.in_bounds(origin):
        raise ValueError(f"vertex {origin} outside {g.rows}x{g.cols} graph")
    covered_set = covered if isinstance(covered, (set, frozenset)) else set(covered)
    best: tuple[int, int, int] | None = None
    k_max = max(origin.i, g.rows - 1 - origin.i, origin.j, g.cols - 1 - origin.j)
    for k in range(1, k_max + 1):
        if best is not None and k * k > best[0]:
            break
        for v in _ring(g, origin, k):
            if v in covered_set or g.r_at(v) <= r_th:
                continue
            d2 = (v.i - origin.i) ** 2 + (v.j - origin.j) ** 2
            candidate = (d2, v.i, v.j)
            if best is None or candidate < best:
                best = candidate
    if best is None:
        return None
    return VertexId(best[1], best[2])

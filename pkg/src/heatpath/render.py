"""Static SVG rendering of heatmaps and planned paths.

Cells are drawn as a colour ramp keyed to the palette classes, trajectories as
per-UAV polylines, skip moves as dashed segments, and depots as circles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .heatmap import ClassPalette, Heatmap
from .planners import SKIP, MultiPlan

_DEFAULT_RAMP = ("#2c7bb6", "#abd9e9", "#ffffbf", "#fdae61", "#d7191c")
_DEFAULT_PATH_COLORS = (
    "#1a1a1a",
    "#7b3294",
    "#008837",
    "#0571b0",
    "#ca0020",
    "#e66101",
    "#66339a",
    "#006d5b",
)


@dataclass(frozen=True)
class RenderStyle:
    cell_pixels: int = 16
    heat_colors: tuple[str, ...] = _DEFAULT_RAMP
    path_colors: tuple[str, ...] = _DEFAULT_PATH_COLORS

    def __post_init__(self) -> None:
        if self.cell_pixels < 2:
            raise ValueError("cell_pixels must be at least 2")
        if len(self.heat_colors) < 2 or len(self.path_colors) < 1:
            raise ValueError("need at least 2 heat colours and 1 path colour")


def _hex_to_rgb(color: str) -> tuple[int, int, int]:
    color = color.lstrip("#")
    return int(color[0:2], 16), int(color[2:4], 16), int(color[4:6], 16)


def _rgb_to_hex(rgb: tuple[float, float, float]) -> str:
    return "#" + "".join(f"{round(c):02x}" for c in rgb)


def _sample_ramp(colors: tuple[str, ...], position: float) -> str:
    """Linear interpolation across the ramp stops at `position` in [0, 1]."""
    position = min(max(position, 0.0), 1.0)
    scaled = position * (len(colors) - 1)
    lo = int(scaled)
    hi = min(lo + 1, len(colors) - 1)
    frac = scaled - lo
    a, b = _hex_to_rgb(colors[lo]), _hex_to_rgb(colors[hi])
    return _rgb_to_hex(tuple(x + (y - x) * frac for x, y in zip(a, b)))


def _class_colors(palette: ClassPalette, style: RenderStyle) -> dict[float, str]:
    values = palette.heat_values
    k = len(values)
    return {
        value: _sample_ramp(style.heat_colors, idx / (k - 1))
        for idx, value in enumerate(values)
    }


def render_svg(
    heatmap: Heatmap,
    palette: ClassPalette,
    plan: MultiPlan | None = None,
    style: RenderStyle = RenderStyle(),
) -> str:
    """Build the SVG document; raises ValueError on plan/map dimension mismatch."""
    if plan is not None and (plan.rows, plan.cols) != (heatmap.height, heatmap.width):
        raise ValueError(
            f"plan is {plan.rows}x{plan.cols} but map is {heatmap.height}x{heatmap.width}"
        )
    px = style.cell_pixels
    width_px = heatmap.width * px
    height_px = heatmap.height * px
    colors = _class_colors(palette, style)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width_px}" '
        f'height="{height_px}" viewBox="0 0 {width_px} {height_px}">',
    ]
    for i in range(heatmap.height):
        for j in range(heatmap.width):
            color = colors[heatmap.value_at(i, j)]
            parts.append(
                f'<rect x="{j * px}" y="{i * px}" width="{px}" height="{px}" '
                f'fill="{color}" class="cell"/>'
            )

    def center(v) -> tuple[float, float]:
        return (v.j + 0.5) * px, (v.i + 0.5) * px

    if plan is not None:
        stroke_w = max(px // 8, 1)
        for t in plan.trajectories:
            color = style.path_colors[t.uav_index % len(style.path_colors)]
            # Consecutive neighbour steps merge into polylines; each skip is
            # its own dashed segment.
            run: list[tuple[float, float]] = [center(t.vertices[0])]
            for move, v in zip(t.moves, t.vertices[1:]):
                point = center(v)
                if move == SKIP:
                    if len(run) > 1:
                        pts = " ".join(f"{x:g},{y:g}" for x, y in run)
                        parts.append(
                            f'<polyline points="{pts}" fill="none" stroke="{color}" '
                            f'stroke-width="{stroke_w}" class="path"/>'
                        )
                    x1, y1 = run[-1]
                    parts.append(
                        f'<line x1="{x1:g}" y1="{y1:g}" x2="{point[0]:g}" y2="{point[1]:g}" '
                        f'stroke="{color}" stroke-width="{stroke_w}" '
                        f'stroke-dasharray="{px // 4 + 1},{px // 4 + 1}" class="skip"/>'
                    )
                    run = [point]
                else:
                    run.append(point)
            if len(run) > 1:
                pts = " ".join(f"{x:g},{y:g}" for x, y in run)
                parts.append(
                    f'<polyline points="{pts}" fill="none" stroke="{color}" '
                    f'stroke-width="{stroke_w}" class="path"/>'
                )
        for u, depot in enumerate(plan.depots):
            color = style.path_colors[u % len(style.path_colors)]
            x, y = center(depot)
            parts.append(
                f'<circle cx="{x:g}" cy="{y:g}" r="{px / 3:g}" fill="{color}" '
                f'stroke="white" stroke-width="1" class="depot"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

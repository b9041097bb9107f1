"""Prior-risk heatmaps: class palette, CSV ingestion/writing, seeded generation.

A heatmap is a rectangular grid of heat-values in (0, 1], one per 40 m cell by
default, encoding how worthwhile each cell is to search. Every cell value must
be one of the palette's class heat-values.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Sequence

import numpy as np

from .errors import HeatmapParseError, PaletteValidationError

DEFAULT_CELL_SIZE = 40.0

# Five risk classes; the top class carries heat 1.0 and the bottom class 0.2,
# which is exactly the value whose efficiency weight is zero.
DEFAULT_CLASSES: tuple[tuple[str, float], ...] = (
    ("water", 0.2),
    ("greenery", 0.4),
    ("road", 0.6),
    ("building", 0.8),
    ("crowd-venue", 1.0),
)

_SNAP_TOL = 1e-9


@dataclass(frozen=True)
class ClassPalette:
    """Ordered class-label -> heat-value table.

    Heat values must be strictly increasing in (0, 1], contain exactly one 1.0
    (the dominant class) and contain 0.2 (the class whose efficiency weight is
    zero, i.e. not worth covering).
    """

    entries: tuple[tuple[str, float], ...]

    def __post_init__(self) -> None:
        entries = tuple((str(label), float(value)) for label, value in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) < 2:
            raise PaletteValidationError("palette needs at least 2 classes")
        labels = [label for label, _ in entries]
        if len(set(labels)) != len(labels):
            raise PaletteValidationError("palette has duplicate class labels")
        values = [value for _, value in entries]
        for value in values:
            if not 0.0 < value <= 1.0:
                raise PaletteValidationError(f"heat value {value!r} outside (0, 1]")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise PaletteValidationError("heat values must be strictly increasing")
        if values.count(1.0) != 1:
            raise PaletteValidationError("exactly one class must have heat value 1.0")
        # 10*h - 2 == 0 only for h == 0.2; the worthless class must exist.
        if not any(10.0 * value - 2.0 == 0.0 for value in values):
            raise PaletteValidationError(
                "one class must map to efficiency weight 0 (heat value 0.2)"
            )

    @classmethod
    def default(cls) -> "ClassPalette":
        return cls(DEFAULT_CLASSES)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.entries)

    @property
    def heat_values(self) -> tuple[float, ...]:
        return tuple(value for _, value in self.entries)

    def heat_value(self, label: str) -> float:
        for known, value in self.entries:
            if known == label:
                return value
        raise PaletteValidationError(f"unknown class label {label!r}")

    def snap(self, value: float) -> float | None:
        """Return the palette heat-value matching `value` within 1e-9, else None."""
        for _, known in self.entries:
            if value == known or abs(value - known) <= _SNAP_TOL:
                return known
        return None


@dataclass(frozen=True)
class Heatmap:
    """Immutable grid of palette heat-values, row-major with row 0 at the top."""

    width: int
    height: int
    cells: tuple[float, ...]
    cell_size: float = DEFAULT_CELL_SIZE

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError("heatmap dimensions must be at least 1x1")
        if len(self.cells) != self.width * self.height:
            raise ValueError(
                f"cell count {len(self.cells)} does not match "
                f"{self.height} rows x {self.width} cols"
            )
        if self.cell_size <= 0:
            raise ValueError("cell_size must be positive")

    def value_at(self, i: int, j: int) -> float:
        if not (0 <= i < self.height and 0 <= j < self.width):
            raise ValueError(f"cell ({i}, {j}) outside {self.height}x{self.width} map")
        return self.cells[i * self.width + j]

    def rows(self) -> list[tuple[float, ...]]:
        w = self.width
        return [self.cells[i * w : (i + 1) * w] for i in range(self.height)]


def _read_text(source: IO[bytes] | IO[str] | str | Path) -> str:
    if isinstance(source, (str, Path)):
        return Path(source).read_text(encoding="utf-8")
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def load_heatmap(
    source: IO[bytes] | IO[str] | str | Path,
    palette: ClassPalette,
    *,
    cell_size: float = DEFAULT_CELL_SIZE,
) -> Heatmap:
    """Parse a heatmap CSV (one grid row per line, comma-separated heat-values).

    Lines starting with `#` are permitted and ignored. Raises
    HeatmapParseError for structural problems (naming the row index) and
    PaletteValidationError for values outside the palette (naming the cell).
    """
    text = _read_text(source)
    parsed: list[list[float]] = []
    width: int | None = None
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        row_index = len(parsed)
        tokens = stripped.split(",")
        values = []
        for token in tokens:
            try:
                values.append(float(token))
            except ValueError:
                raise HeatmapParseError(
                    f"row {row_index}: {token.strip()!r} is not a number"
                ) from None
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise HeatmapParseError(
                f"row {row_index} has {len(values)} values, expected {width}"
            )
        parsed.append(values)
    if not parsed or width is None:
        raise HeatmapParseError("heatmap file contains no data rows")

    cells: list[float] = []
    for i, row in enumerate(parsed):
        for j, value in enumerate(row):
            snapped = palette.snap(value)
            if snapped is None:
                raise PaletteValidationError(
                    f"cell ({i}, {j}): value {value!r} is not a palette heat-value"
                )
            cells.append(snapped)
    return Heatmap(width=width, height=len(parsed), cells=tuple(cells), cell_size=cell_size)


def heatmap_to_csv(heatmap: Heatmap) -> str:
    """Canonical CSV text: one decimal value per cell, no trailing separators."""
    lines = [",".join(repr(v) for v in row) for row in heatmap.rows()]
    return "\n".join(lines) + "\n"


def save_heatmap(heatmap: Heatmap, sink: IO[bytes] | IO[str] | str | Path) -> None:
    """Write the canonical CSV form of `heatmap` to a path or file object."""
    text = heatmap_to_csv(heatmap)
    if isinstance(sink, (str, Path)):
        Path(sink).write_text(text, encoding="utf-8")
        return
    if isinstance(sink, io.TextIOBase):
        sink.write(text)
    else:
        sink.write(text.encode("utf-8"))


def random_heatmap(
    seed: int,
    width: int,
    height: int,
    palette: ClassPalette,
    class_probs: Sequence[float] | None = None,
    *,
    cell_size: float = DEFAULT_CELL_SIZE,
) -> Heatmap:
    """Deterministic random heatmap: cells drawn i.i.d. over the palette classes.

    Generator identity (for cross-implementation replay): PCG64 keyed with the
    integer seed, one float64 per cell in row-major order, class index chosen
    by cumulative-probability inversion (searchsorted right).
    """
    if width < 1 or height < 1:
        raise ValueError("heatmap dimensions must be at least 1x1")
    k = len(palette.entries)
    if class_probs is None:
        probs = np.full(k, 1.0 / k)
    else:
        probs = np.asarray([float(p) for p in class_probs], dtype=float)
        if probs.shape != (k,):
            raise ValueError(f"class_probs needs {k} entries, got {probs.shape[0]}")
        if np.any(probs < 0.0):
            raise ValueError("class_probs must be non-negative")
        if abs(float(probs.sum()) - 1.0) > 1e-9:
            raise ValueError("class_probs must sum to 1 within 1e-9")
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.random(width * height)
    cumulative = np.cumsum(probs)
    cumulative[-1] = 1.0
    indices = np.minimum(np.searchsorted(cumulative, draws, side="right"), k - 1)
    values = palette.heat_values
    cells = tuple(values[t] for t in indices)
    return Heatmap(width=width, height=height, cells=cells, cell_size=cell_size)


def heatmap_from_class_grid(
    labels: Sequence[Sequence[str]],
    palette: ClassPalette,
    *,
    cell_size: float = DEFAULT_CELL_SIZE,
) -> Heatmap:
    """Convert a grid of class labels into a heatmap via the palette."""
    rows = [list(row) for row in labels]
    if not rows or not rows[0]:
        raise ValueError("label grid must be non-empty")
    width = len(rows[0])
    table = dict(palette.entries)
    cells: list[float] = []
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"label row {i} has {len(row)} entries, expected {width}")
        for j, label in enumerate(row):
            if label not in table:
                raise PaletteValidationError(
                    f"cell ({i}, {j}): unknown class label {label!r}"
                )
            cells.append(table[label])
    return Heatmap(width=width, height=len(rows), cells=tuple(cells), cell_size=cell_size)


def class_histogram(heatmap: Heatmap, palette: ClassPalette) -> dict[str, int]:
    """Cell count per palette class label."""
    counts = {label: 0 for label in palette.labels}
    by_value = {value: label for label, value in palette.entries}
    for cell in heatmap.cells:
        counts[by_value[cell]] += 1
    return counts

"""Exception types shared across the package."""


class HeatpathError(Exception):
    """Base class for all errors raised by this package."""


class HeatmapParseError(HeatpathError, ValueError):
    """A heatmap file is structurally malformed (bad token, ragged rows, empty)."""


class PaletteValidationError(HeatpathError, ValueError):
    """A value or label does not belong to the class palette in use."""


class PlanIntegrityError(HeatpathError, ValueError):
    """A stored plan quantity disagrees with its recomputation."""

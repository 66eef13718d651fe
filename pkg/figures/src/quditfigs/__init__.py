"""Render figures from the purification CLI's CSV outputs."""

from .plots import (
    RadiusRow,
    SchemaError,
    SweepRow,
    efficiency_series,
    load_radius,
    load_sweep,
    plot_efficiency,
    plot_radius,
    radius_series,
)

__all__ = [
    "RadiusRow",
    "SchemaError",
    "SweepRow",
    "efficiency_series",
    "load_radius",
    "load_sweep",
    "plot_efficiency",
    "plot_radius",
    "radius_series",
]

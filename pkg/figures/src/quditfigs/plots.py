"""CSV loading and figure rendering.

The plotted series are a pure function of the CSV contents; rendering style is
free, series content is contractual.  Styling follows the convention of the
comparison figures: solid line for the gxor protocol, dashed for the
horodecki baseline.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

RADIUS_HEADER = ["dim", "protocol", "f_min", "f_critical"]
SWEEP_HEADER = ["dim", "protocol", "f_initial", "converged", "steps", "eta"]

_STYLE = {"gxor": "-", "horodecki": "--"}


class SchemaError(ValueError):
    """CSV header or row does not match the expected schema."""


@dataclass(frozen=True)
class RadiusRow:
    dim: int
    protocol: str
    f_min: float
    f_critical: float


@dataclass(frozen=True)
class SweepRow:
    dim: int
    protocol: str
    f_initial: float
    converged: bool
    steps: int
    eta: float


def _read_rows(path, header: list[str]) -> list[dict[str, str]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            got = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file")
        if got != header:
            raise SchemaError(f"{path}: header {got} does not match {header}")
        rows = []
        for line in reader:
            if not line or line[0].startswith("#"):
                continue
            if len(line) != len(header):
                raise SchemaError(f"{path}: row {line} does not match {header}")
            rows.append(dict(zip(header, line)))
        return rows


def load_radius(path) -> list[RadiusRow]:
    try:
        return [
            RadiusRow(int(r["dim"]), r["protocol"], float(r["f_min"]), float(r["f_critical"]))
            for r in _read_rows(path, RADIUS_HEADER)
        ]
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}") from exc


def load_sweep(path) -> list[SweepRow]:
    rows = []
    for r in _read_rows(path, SWEEP_HEADER):
        if r["converged"] not in ("true", "false"):
            raise SchemaError(f"{path}: bad converged flag {r['converged']!r}")
        try:
            rows.append(
                SweepRow(
                    int(r["dim"]),
                    r["protocol"],
                    float(r["f_initial"]),
                    r["converged"] == "true",
                    int(r["steps"]),
                    float(r["eta"]),
                )
            )
        except ValueError as exc:
            raise SchemaError(f"{path}: {exc}") from exc
    return rows


def radius_series(rows: list[RadiusRow]) -> dict[str, tuple[list[int], list[float]]]:
    """Per-protocol (dims, f_min) series, plus the 1/D reference curve."""
    series: dict[str, tuple[list[int], list[float]]] = {}
    for row in rows:
        dims, values = series.setdefault(row.protocol, ([], []))
        dims.append(row.dim)
        values.append(row.f_min)
    dims = sorted({row.dim for row in rows})
    series["separability"] = (dims, [1.0 / d for d in dims])
    return series


def efficiency_series(rows: list[SweepRow]) -> dict[str, tuple[list[float], list[float]]]:
    """Per-protocol (f_initial, eta) series; non-converged points are omitted."""
    series: dict[str, tuple[list[float], list[float]]] = {}
    for row in rows:
        if not row.converged:
            continue
        xs, ys = series.setdefault(row.protocol, ([], []))
        xs.append(row.f_initial)
        ys.append(row.eta)
    return series


def plot_radius(csv_path, out_path) -> Path:
    """Minimal convergent fidelity vs dimension, one curve per protocol."""
    rows = load_radius(csv_path)
    series = radius_series(rows)
    fig, ax = plt.subplots()
    for protocol, (dims, values) in series.items():
        if protocol == "separability":
            ax.plot(dims, values, ":", color="gray", label="1/D")
        else:
            ax.plot(dims, values, _STYLE.get(protocol, "-"), marker="o", label=protocol)
    ax.set_xlabel("dimension D")
    ax.set_ylabel("minimal initial fidelity")
    ax.legend()
    fig.savefig(out_path)
    plt.close(fig)
    return Path(out_path)


def plot_efficiency(csv_path, out_path, log_eta: bool = False) -> Path:
    """Efficiency vs initial fidelity, converged points only."""
    rows = load_sweep(csv_path)
    series = efficiency_series(rows)
    if not series:
        warnings.warn("no convergent rows; emitting empty axes")
    fig, ax = plt.subplots()
    for protocol, (xs, ys) in series.items():
        ax.plot(xs, ys, _STYLE.get(protocol, "-"), marker="o", label=protocol)
    ax.set_xlabel("initial fidelity F")
    ax.set_ylabel("efficiency eta")
    if log_eta:
        ax.set_yscale("log")
    if series:
        ax.legend()
    fig.savefig(out_path)
    plt.close(fig)
    return Path(out_path)

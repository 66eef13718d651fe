"""Command-line front end: golden checks, protocol runs, efficiency sweeps and
convergence-radius scans, emitting CSV/JSON for downstream figure scripts."""

from __future__ import annotations

import json
import sys

import click
import numpy as np

from .gates import BellLabel, bell_state, random_ket, teleport_check
from .purification import (
    ProtocolKind,
    WernerSpec,
    convergence_radius,
    efficiency_sweep,
    purify,
)

_PROTOCOLS = {kind.value: kind for kind in ProtocolKind}


def _fmt(x: float) -> str:
    """Round-trip float formatting (17 significant digits)."""
    return format(float(x), ".17g")


def parse_target(text: str) -> float:
    """Parse a target fidelity; `1e-5@below1` means 1 - 1e-5."""
    if text.endswith("@below1"):
        return 1.0 - float(text[: -len("@below1")])
    return float(text)


def parse_grid(text: str) -> list[float]:
    """Parse `lo:hi:step` into an inclusive grid."""
    try:
        lo, hi, step = (float(part) for part in text.split(":"))
    except ValueError:
        raise click.BadParameter(f"grid spec {text!r} is not lo:hi:step")
    if step <= 0 or hi < lo:
        raise click.BadParameter(f"grid spec {text!r} is not increasing")
    count = int(round((hi - lo) / step)) + 1
    grid = [lo + i * step for i in range(count)]
    return [f for f in grid if f <= hi + 1e-12]


def parse_dims(text: str) -> list[int]:
    """Parse `lo:hi` or a comma list of dimensions."""
    if ":" in text:
        lo, hi = (int(part) for part in text.split(":"))
        return list(range(lo, hi + 1))
    return [int(part) for part in text.split(",")]


def parse_protocols(text: str) -> list[ProtocolKind]:
    kinds = []
    for name in text.split(","):
        if name not in _PROTOCOLS:
            raise click.BadParameter(
                f"unknown protocol {name!r}; choose from {sorted(_PROTOCOLS)}"
            )
        kinds.append(_PROTOCOLS[name])
    return kinds


def _emit(lines: list[str], out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@click.group()
def main():
    """Simulator for bipartite qudit purification via the generalized XOR gate."""


@main.command("bell")
@click.option("--dim", type=int, required=True)
@click.option("--l", "l", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
def cmd_bell(dim: int, l: int, m: int):
    """Print the amplitudes of the generalized Bell state |psi_lm>."""
    try:
        psi = bell_state(BellLabel(l, m, dim))
    except ValueError as exc:
        raise click.ClickException(str(exc))
    for i in range(dim):
        for j in range(dim):
            amp = psi.amplitudes[i * dim + j]
            click.echo(f"|{i} {j}>  {amp.real:+.12g}  {amp.imag:+.12g}j")


@main.command("teleport-check")
@click.option("--dim", type=int, required=True)
@click.option("--trials", type=int, default=50, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def cmd_teleport_check(dim: int, trials: int, seed: int):
    """Verify the teleportation identity on seeded random states."""
    if not 2 <= dim <= 20 or trials < 1:
        raise click.ClickException("need dim in [2, 20] and trials >= 1")
    rng = np.random.default_rng(seed)
    worst = 1.0
    for _ in range(trials):
        chi = random_ket(dim, rng)
        j = int(rng.integers(dim))
        k = int(rng.integers(dim))
        worst = min(worst, teleport_check(chi, j, k))
    click.echo(f"worst recovered fidelity {_fmt(worst)} over {trials} trials")
    if worst < 1.0 - 1e-9:
        raise click.ClickException("teleportation identity violated")


@main.command("purify")
@click.option("--dim", type=int, required=True)
@click.option("--protocol", type=click.Choice(sorted(_PROTOCOLS)), required=True)
@click.option("--fidelity", type=float, required=True, help="Initial Werner fidelity.")
@click.option("--target", required=True, help="Target fidelity, e.g. 0.99 or 1e-5@below1.")
@click.option("--max-steps", type=int, default=500, show_default=True)
@click.option("--out", type=click.Path(), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--baseline-single-outcome", is_flag=True, default=False,
              help="Restrict the baseline's success accounting to the p=(0,0) outcome.")
def cmd_purify(dim, protocol, fidelity, target, max_steps, out, fmt,
               baseline_single_outcome):
    """Run one purification protocol and emit the per-step iteration records."""
    try:
        spec = WernerSpec.from_fidelity(fidelity, dim)
        run = purify(spec, _PROTOCOLS[protocol], parse_target(target), max_steps,
                     baseline_single_outcome)
    except ValueError as exc:
        raise click.ClickException(str(exc))

    if fmt == "json":
        payload = {
            "dim": dim,
            "protocol": protocol,
            "initial_fidelity": fidelity,
            "target_fidelity": parse_target(target),
            "converged": run.converged,
            "steps": run.steps,
            "records": [
                {
                    "step": r.step,
                    "fidelity": r.fidelity,
                    "success_prob": r.success_probability,
                    "eta": r.cumulative_efficiency,
                }
                for r in run.records
            ],
        }
        _emit([json.dumps(payload, indent=2)], out)
        return

    lines = ["step,fidelity,success_prob,eta"]
    for r in run.records:
        lines.append(
            f"{r.step},{_fmt(r.fidelity)},{_fmt(r.success_probability)},"
            f"{_fmt(r.cumulative_efficiency)}"
        )
    lines.append(f"# converged={str(run.converged).lower()} steps={run.steps}")
    _emit(lines, out)


@main.command("sweep")
@click.option("--dim", type=int, required=True)
@click.option("--protocols", default="gxor,horodecki", show_default=True)
@click.option("--grid", required=True, help="Initial-fidelity grid lo:hi:step.")
@click.option("--target", required=True)
@click.option("--max-steps", type=int, default=500, show_default=True)
@click.option("--out", type=click.Path(), default=None)
@click.option("--baseline-single-outcome", is_flag=True, default=False)
def cmd_sweep(dim, protocols, grid, target, max_steps, out, baseline_single_outcome):
    """Efficiency sweep over a grid of initial fidelities."""
    kinds = parse_protocols(protocols)
    values = parse_grid(grid)
    try:
        rows = efficiency_sweep(dim, kinds, values, parse_target(target), max_steps,
                                baseline_single_outcome)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    lines = ["dim,protocol,f_initial,converged,steps,eta"]
    for row in rows:
        lines.append(
            f"{dim},{row.kind.value},{_fmt(row.initial_fidelity)},"
            f"{str(row.converged).lower()},{row.steps},{_fmt(row.efficiency)}"
        )
    _emit(lines, out)


@main.command("radius")
@click.option("--dims", required=True, help="Dimension range lo:hi or comma list.")
@click.option("--protocols", default="gxor,horodecki", show_default=True)
@click.option("--target", required=True)
@click.option("--max-steps", type=int, default=500, show_default=True)
@click.option("--tol", type=float, default=1e-4, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def cmd_radius(dims, protocols, target, max_steps, tol, out):
    """Minimal convergent initial fidelity per dimension and protocol."""
    dim_list = parse_dims(dims)
    if any(not 2 <= d <= 20 for d in dim_list):
        raise click.ClickException("dimensions must lie in [2, 20]")
    kinds = parse_protocols(protocols)
    lines = ["dim,protocol,f_min,f_critical"]
    for d in dim_list:
        for kind in kinds:
            f_min = convergence_radius(d, kind, parse_target(target), max_steps, tol)
            lines.append(f"{d},{kind.value},{_fmt(f_min)},{_fmt(1.0 / d)}")
    _emit(lines, out)


if __name__ == "__main__":
    main()

"""Command-line entry points for figure rendering."""

import click

from .plots import SchemaError, plot_efficiency, plot_radius


@click.group()
def main():
    """Render figures from purification sweep/radius CSV files."""


@main.command("radius")
@click.option("--in", "in_path", type=click.Path(exists=True), required=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
def cmd_radius(in_path, out_path):
    """Convergence-radius plot (radius-schema CSV)."""
    try:
        plot_radius(in_path, out_path)
    except SchemaError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"wrote {out_path}")


@main.command("efficiency")
@click.option("--in", "in_path", type=click.Path(exists=True), required=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
@click.option("--log-eta", is_flag=True, default=False)
def cmd_efficiency(in_path, out_path, log_eta):
    """Efficiency-vs-fidelity plot (sweep-schema CSV)."""
    try:
        plot_efficiency(in_path, out_path, log_eta=log_eta)
    except SchemaError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"wrote {out_path}")


if __name__ == "__main__":
    main()

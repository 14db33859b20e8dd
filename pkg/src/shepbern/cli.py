"""Command-line interface: node generation, model fitting, evaluation, benchmarks."""

import os
import sys

import click
import numpy as np

from . import bench, interp
from .errors import ShepBernError
from .interp import GridSpec
from .testfunctions import FUNCTION_IDS, get as get_function

EXIT_NUMERICAL = 3


def _int_list(text):
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part and not part.startswith("-"):
            lo, hi = part.split("-")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


@click.group()
def main():
    """Scattered-data interpolation with blended local polynomial operators."""


@main.command("gen-nodes")
@click.option("--kind", type=click.Choice(bench.NODE_KINDS), default="uniform-random")
@click.option("--n", type=int, required=True)
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--function", "fid", type=int, default=None,
              help="Also sample this test function into an f column.")
@click.option("--derivatives", is_flag=True,
              help="With --function, add exact partial columns fx..fyy.")
@click.option("--out", type=click.Path(), required=True)
def gen_nodes(kind, n, seed, fid, derivatives, out):
    """Generate a seeded node set and write it as CSV."""
    try:
        points = bench.generate_nodes(kind, n, seed)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    values = partials = None
    if fid is not None:
        if fid not in FUNCTION_IDS:
            raise click.UsageError(f"function id must be in {FUNCTION_IDS}")
        fn = get_function(fid)
        values = fn(points[:, 0], points[:, 1])
        if derivatives:
            partials = fn.partials
    elif derivatives:
        raise click.UsageError("--derivatives requires --function")
    bench.write_nodes_csv(out, points, values, partials)
    click.echo(f"wrote {len(points)} nodes to {out}")


@main.command()
@click.option("--nodes", "nodes_path", type=click.Path(exists=True), required=True)
@click.option("--m", type=int, default=3, show_default=True)
@click.option("--mode", type=click.Choice(interp.MODES), default="bernoulli")
@click.option("--jet-source", type=click.Choice(interp.JET_SOURCES),
              default="wls-quadratic", show_default=True)
@click.option("--n-w", type=int, default=9, show_default=True)
@click.option("--n-q", type=int, default=None)
@click.option("--mu", type=float, default=2.0, show_default=True)
@click.option("--fallback", type=click.Choice(interp.FALLBACKS), default="nearest")
@click.option("--out-model", type=click.Path(), required=True)
def fit(nodes_path, m, mode, jet_source, n_w, n_q, mu, fallback, out_model):
    """Fit an interpolant to a node CSV and persist it."""
    try:
        points, cols = bench.read_nodes_csv(nodes_path)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if "f" not in cols:
        raise click.UsageError(f"{nodes_path}: an f column is required for fitting")
    partials = None
    if jet_source == "analytic":
        names = {(0, 0): "f", (1, 0): "fx", (0, 1): "fy",
                 (2, 0): "fxx", (1, 1): "fxy", (0, 2): "fyy"}
        missing = [v for v in names.values() if v not in cols]
        if missing:
            raise click.UsageError(
                f"{nodes_path}: analytic jets need columns {missing}"
            )
        lookup = {(x, y): k for k, (x, y) in enumerate(map(tuple, points))}

        def partials(a, b, x, y):
            return cols[names[a, b]][lookup[x, y]]

    try:
        itp = interp.build(
            points, cols["f"], m=m, mode=mode, jet_source=jet_source,
            partials=partials, mu=mu, n_w=n_w, n_q=n_q, fallback=fallback,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))
    except ShepBernError as exc:
        click.echo(f"build failed: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)
    interp.save_model(itp, out_model)
    click.echo(f"wrote model to {out_model}")


@main.command("eval")
@click.option("--model", type=click.Path(exists=True), required=True)
@click.option("--grid", default="100,100", show_default=True, help="nx,ny")
@click.option("--x-range", default="0,1", show_default=True)
@click.option("--y-range", default="0,1", show_default=True)
@click.option("--out", type=click.Path(), required=True)
def eval_cmd(model, grid, x_range, y_range, out):
    """Evaluate a fitted model on a grid and write x,y,value rows."""
    try:
        nx, ny = (int(v) for v in grid.split(","))
        xr = tuple(float(v) for v in x_range.split(","))
        yr = tuple(float(v) for v in y_range.split(","))
        spec = GridSpec(x_range=xr, y_range=yr, nx=nx, ny=ny)
    except ValueError as exc:
        raise click.UsageError(f"bad grid spec: {exc}")
    itp = interp.load_model(model)
    try:
        z = interp.eval_grid(itp, spec)
    except ShepBernError as exc:
        click.echo(f"evaluation failed: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)
    xs, ys = spec.axes()
    with open(out, "w") as fh:
        fh.write("x,y,value\n")
        for j, y in enumerate(ys):
            for i, x in enumerate(xs):
                fh.write(f"{float(x)!r},{float(y)!r},{float(z[j, i])!r}\n")
    click.echo(f"wrote {nx * ny} values to {out}")


@main.command("bench")
@click.option("--functions", default="1-10", show_default=True)
@click.option("--operators", default="sb3,st2,bshep32,bshep33,qshep2d",
              show_default=True)
@click.option("--n", "sizes", default="202,777,2991", show_default=True)
@click.option("--kind", type=click.Choice(bench.NODE_KINDS), default="uniform-random")
@click.option("--n-w", type=int, default=9, show_default=True)
@click.option("--n-q", type=int, default=None,
              help="Override the per-operator default (13 quadratic, 17 cubic).")
@click.option("--mu", type=float, default=2.0, show_default=True)
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--grid", default="100,100", show_default=True, help="nx,ny")
@click.option("--out", type=click.Path(), required=True, help="Report CSV path.")
@click.option("--no-figures", is_flag=True, help="Skip PNG rendering.")
def bench_cmd(functions, operators, sizes, kind, n_w, n_q, mu, seed, grid, out,
              no_figures):
    """Run the operator comparison and write a report CSV plus, per function,
    a plot-data CSV and a rendered figure."""
    try:
        fids = _int_list(functions)
        ns = _int_list(sizes)
        nx, ny = (int(v) for v in grid.split(","))
        spec = GridSpec(nx=nx, ny=ny)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    bad = [f for f in fids if f not in FUNCTION_IDS]
    if bad:
        raise click.UsageError(f"unknown function ids {bad}")
    ops = [o.strip() for o in operators.split(",")]
    bad = [o for o in ops if o not in bench.OPERATORS]
    if bad:
        raise click.UsageError(
            f"unknown operators {bad}; known: {sorted(bench.OPERATORS)}"
        )
    reports = bench.run_benchmark(
        ops, fids, node_kind=kind, node_sizes=ns, grid=spec,
        n_w=n_w, n_q=n_q, mu=mu, seed=seed,
    )
    bench.write_report_csv(out, reports)
    click.echo(f"wrote {len(reports)} rows to {out}")
    stem, _ = os.path.splitext(out)
    for fid in fids:
        bench.write_plot_csv(f"{stem}_f{fid}.csv", reports, fid)
        if not no_figures:
            from .plots import plot_function_errors

            if plot_function_errors(reports, fid, f"{stem}_f{fid}.png"):
                click.echo(f"wrote {stem}_f{fid}.png")
    failed = [r for r in reports if r.error]
    for r in failed:
        click.echo(f"FAILED {r.operator} f{r.function} N={r.n}: {r.error}", err=True)
    if failed:
        sys.exit(EXIT_NUMERICAL)


if __name__ == "__main__":
    main()

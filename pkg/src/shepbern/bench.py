"""Benchmark orchestration: node generation, error reports, and file formats."""

import csv
import time
from dataclasses import dataclass, asdict

import numpy as np

from . import interp
from .errors import ShepBernError
from .interp import GridSpec
from .testfunctions import get as get_function

NODE_KINDS = ("uniform-random", "grid", "clustered")

# operator id -> build configuration
OPERATORS = {
    "sb1": dict(m=1, mode="bernoulli", jet_source="analytic"),
    "sb2": dict(m=2, mode="bernoulli", jet_source="analytic"),
    "sb3": dict(m=3, mode="bernoulli", jet_source="analytic"),
    "st2": dict(m=2, mode="taylor", jet_source="analytic"),
    "bshep32": dict(m=3, mode="bernoulli", jet_source="wls-quadratic"),
    "bshep33": dict(m=3, mode="bernoulli", jet_source="wls-cubic"),
    "qshep2d": dict(m=2, mode="taylor", jet_source="wls-quadratic"),
}


@dataclass(frozen=True)
class ErrorReport:
    operator: str
    function: int
    n: int
    n_w: int
    n_q: int  # -1 when no least-squares fit is involved
    seed: int
    max_abs: float
    rms: float
    runtime: float
    error: str = ""  # non-empty when the row failed


def generate_nodes(kind, n, seed):
    """Deterministic node sets in [0, 1]^2; points are pairwise distinct."""
    if n < 3:
        raise ValueError("need at least 3 nodes")
    rng = np.random.default_rng(seed)
    if kind == "grid":
        side = int(np.ceil(np.sqrt(n)))
        xs, ys = np.meshgrid(np.linspace(0, 1, side), np.linspace(0, 1, side))
        return np.column_stack([xs.ravel(), ys.ravel()])[:n]
    if kind == "uniform-random":
        draw = lambda k: rng.uniform(0.0, 1.0, (k, 2))
    elif kind == "clustered":
        centers = rng.uniform(0.15, 0.85, (5, 2))

        def draw(k):
            which = rng.integers(0, 5, k)
            return centers[which] + rng.normal(0.0, 0.1, (k, 2))

    else:
        raise ValueError(f"kind must be one of {NODE_KINDS}")
    pts = draw(n)
    while True:
        # resample out-of-range or duplicate points until n distinct remain
        ok = ((pts >= 0) & (pts <= 1)).all(axis=1)
        _, first = np.unique(pts, axis=0, return_index=True)
        distinct = np.zeros(len(pts), dtype=bool)
        distinct[first] = True
        keep = pts[ok & distinct]
        if len(keep) == n:
            return keep
        pts = np.vstack([keep, draw(n - len(keep))])


def run_benchmark(
    operators,
    functions,
    node_kind="uniform-random",
    node_sizes=(202, 777, 2991),
    grid=GridSpec(),
    n_w=9,
    n_q=None,
    mu=2.0,
    seed=1,
):
    """Build and evaluate each (operator, function, N) combination.

    Failures are recorded per row and do not abort the remaining rows.
    """
    reports = []
    for n in node_sizes:
        points = generate_nodes(node_kind, n, seed)
        for fid in functions:
            fn = get_function(fid)
            values = fn(points[:, 0], points[:, 1])
            for op in operators:
                cfg = dict(OPERATORS[op])
                analytic = cfg["jet_source"] == "analytic"
                row_nq = -1
                if not analytic:
                    row_nq = n_q if n_q is not None else (
                        13 if cfg["jet_source"] == "wls-quadratic" else 17
                    )
                    cfg["n_q"] = row_nq
                start = time.perf_counter()
                try:
                    itp = interp.build(
                        points,
                        values,
                        partials=fn.partials if analytic else None,
                        mu=mu,
                        n_w=n_w,
                        fallback="nearest",
                        **cfg,
                    )
                    err = interp.max_error(itp, fn, grid)
                    elapsed = time.perf_counter() - start
                    reports.append(
                        ErrorReport(
                            operator=op,
                            function=fid,
                            n=n,
                            n_w=n_w,
                            n_q=row_nq,
                            seed=seed,
                            max_abs=err["max_abs"],
                            rms=err["rms"],
                            runtime=elapsed,
                        )
                    )
                except (ShepBernError, ValueError) as exc:
                    elapsed = time.perf_counter() - start
                    reports.append(
                        ErrorReport(
                            operator=op,
                            function=fid,
                            n=n,
                            n_w=n_w,
                            n_q=row_nq,
                            seed=seed,
                            max_abs=float("nan"),
                            rms=float("nan"),
                            runtime=elapsed,
                            error=str(exc),
                        )
                    )
    return reports


def write_nodes_csv(path, points, values=None, partials=None):
    """Node file: x,y[,f[,fx,fy,fxx,fxy,fyy]] with a header row."""
    header = ["x", "y"]
    cols = [points[:, 0], points[:, 1]]
    if values is not None:
        header.append("f")
        cols.append(values)
    if partials is not None:
        for name, (a, b) in (
            ("fx", (1, 0)),
            ("fy", (0, 1)),
            ("fxx", (2, 0)),
            ("fxy", (1, 1)),
            ("fyy", (0, 2)),
        ):
            header.append(name)
            cols.append(
                np.array([partials(a, b, x, y) for x, y in points])
            )
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in zip(*cols):
            w.writerow([repr(float(v)) for v in row])


def read_nodes_csv(path):
    """Read a node file; returns (points, columns dict keyed by header name)."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0][:2] != ["x", "y"]:
        raise ValueError(f"{path}: header row starting with x,y required")
    header = rows[0]
    data = np.array([[float(v) for v in row] for row in rows[1:]])
    cols = {name: data[:, k] for k, name in enumerate(header)}
    points = np.column_stack([cols["x"], cols["y"]])
    return points, cols


def write_report_csv(path, reports):
    fields = list(asdict(reports[0])) if reports else [
        f.name for f in ErrorReport.__dataclass_fields__.values()
    ]
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=fields)
        w.writeheader()
        for r in reports:
            w.writerow(asdict(r))


def write_plot_csv(path, reports, fid):
    """Plot-ready table (N, operator, max_abs) for one test function."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "operator", "max_abs"])
        for r in reports:
            if r.function == fid and not r.error:
                w.writerow([r.n, r.operator, repr(r.max_abs)])

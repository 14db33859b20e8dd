"""Combined local operators: blended three-point expansions or nodal Taylor
polynomials under the compactly supported cardinal basis."""

import json
from dataclasses import dataclass, field

import numpy as np

from .assoc import TriangleAssignment, assign_all
from .errors import CoverageError
from .fitting import coefficients_to_jet, compute_rq_radii, wls_fit
from .gtpoly import GtData, gt_eval, gt_eval_many
from .jets import Jet, jet_from_callable, taylor_eval, taylor_eval_many
from .shepard import (
    COINCIDENCE_TOL,
    LocalSupport,
    NodeSet,
    active_nodes,
    compute_radii,
    raw_weight_many,
)

MODES = ("bernoulli", "taylor")
JET_SOURCES = ("analytic", "wls-quadratic", "wls-cubic")
FALLBACKS = ("error", "nearest")

MAX_DEGREE = 5


@dataclass(frozen=True)
class GridSpec:
    x_range: tuple = (0.0, 1.0)
    y_range: tuple = (0.0, 1.0)
    nx: int = 100
    ny: int = 100

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid must be at least 2x2")
        if self.x_range[0] >= self.x_range[1] or self.y_range[0] >= self.y_range[1]:
            raise ValueError("ranges must be increasing")

    def axes(self):
        xs = np.linspace(*self.x_range, self.nx)
        ys = np.linspace(*self.y_range, self.ny)
        return xs, ys


@dataclass(frozen=True)
class Interpolant:
    """Immutable fitted model, ready for point evaluation."""

    nodes: NodeSet
    values: np.ndarray
    support: LocalSupport
    degree: int
    mode: str
    jet_source: str
    fallback: str
    jets: tuple
    assignments: tuple = None  # bernoulli mode only
    _gtdata: tuple = field(default=None, repr=False)

    def __post_init__(self):
        if self.mode == "bernoulli":
            data = []
            for a in self.assignments:
                j, k = a.others
                tri = (
                    tuple(self.nodes.points[a.node]),
                    tuple(self.nodes.points[j]),
                    tuple(self.nodes.points[k]),
                )
                data.append(
                    GtData(
                        triangle=tri,
                        jets=(self.jets[a.node], self.jets[j], self.jets[k]),
                        degree=self.degree,
                    )
                )
            object.__setattr__(self, "_gtdata", tuple(data))

    def local_value(self, i, p):
        """Value of node i's local polynomial at p."""
        if self.mode == "bernoulli":
            return gt_eval(self._gtdata[i], p)
        return taylor_eval(self.jets[i], p)

    def _local_values_many(self, i, x, y):
        if self.mode == "bernoulli":
            return gt_eval_many(self._gtdata[i], x, y)
        return taylor_eval_many(self.jets[i], x, y)


def build(
    points,
    values,
    *,
    m,
    mode="bernoulli",
    jet_source="analytic",
    partials=None,
    mu=2.0,
    n_w=9,
    n_q=None,
    fallback="error",
):
    """Assemble an interpolant from nodes and nodal data.

    `partials(a, b, x, y)` supplies exact partial derivatives for the analytic
    jet source; the wls sources estimate them from the values alone.
    """
    if not 1 <= m <= MAX_DEGREE:
        raise ValueError(f"degree m must be in [1, {MAX_DEGREE}]")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if jet_source not in JET_SOURCES:
        raise ValueError(f"jet_source must be one of {JET_SOURCES}")
    if fallback not in FALLBACKS:
        raise ValueError(f"fallback must be one of {FALLBACKS}")
    nodes = NodeSet(points)
    values = np.asarray(values, dtype=float)
    if values.shape != (nodes.n,):
        raise ValueError("values must be one per node")
    support = LocalSupport(mu=mu, radii=compute_radii(nodes, n_w))

    jet_order = m - 1 if mode == "bernoulli" else m
    if jet_source == "analytic":
        if partials is None:
            raise ValueError("analytic jet source requires a partials evaluator")
        jets = tuple(
            jet_from_callable(partials, tuple(pt), jet_order) for pt in nodes.points
        )
    else:
        if jet_order > 2:
            raise ValueError(f"wls jets have order 2; mode/m need order {jet_order}")
        degree = 2 if jet_source == "wls-quadratic" else 3
        if n_q is None:
            n_q = 13 if degree == 2 else 17
        r_q = compute_rq_radii(nodes, n_q)
        jets = tuple(
            coefficients_to_jet(
                wls_fit(i, nodes, values, degree, r_q), values[i], nodes.points[i]
            )
            for i in range(nodes.n)
        )

    assignments = tuple(assign_all(nodes, support)) if mode == "bernoulli" else None
    return Interpolant(
        nodes=nodes,
        values=values,
        support=support,
        degree=m,
        mode=mode,
        jet_source=jet_source,
        fallback=fallback,
        jets=jets,
        assignments=assignments,
    )


def eval_point(itp, p):
    """Evaluate the blended operator at a single point."""
    p = (float(p[0]), float(p[1]))
    idx, d = active_nodes(p, itp.nodes, itp.support)
    if len(idx) == 0:
        if itp.fallback == "nearest":
            dist = np.hypot(*(itp.nodes.points - p).T)
            return itp.local_value(int(np.argmin(dist)), p)
        raise CoverageError(p)
    near = d < COINCIDENCE_TOL * itp.support.radii[idx]
    if near.any():
        return itp.local_value(int(idx[near][0]), p)
    w = raw_weight_many(d, itp.support.radii[idx], itp.support.mu)
    num = 0.0
    den = 0.0
    # accumulate in ascending node order so grid and point paths agree bitwise
    for i, wi in zip(idx, w):
        num += wi * itp.local_value(int(i), p)
        den += wi
    return num / den


def eval_grid(itp, grid):
    """Row-major table Z[j, i] = value at (x_i, y_j); matches eval_point."""
    xs, ys = grid.axes()
    num = np.zeros((grid.ny, grid.nx))
    den = np.zeros((grid.ny, grid.nx))
    coincident = {}
    for i in range(itp.nodes.n):
        xi, yi = itp.nodes.points[i]
        r = itp.support.radii[i]
        # bounding window of the node's disk in grid indices
        ci = np.nonzero(np.abs(xs - xi) < r)[0]
        cj = np.nonzero(np.abs(ys - yi) < r)[0]
        if len(ci) == 0 or len(cj) == 0:
            continue
        gx, gy = np.meshgrid(xs[ci], ys[cj])
        d = np.hypot(gx - xi, gy - yi)
        inside = d < r
        if not inside.any():
            continue
        near = inside & (d < COINCIDENCE_TOL * r)
        for jj, ii in zip(*np.nonzero(near)):
            coincident.setdefault((cj[jj], ci[ii]), i)
        w = np.where(inside, raw_weight_many(d, r, itp.support.mu), 0.0)
        vals = np.where(inside, itp._local_values_many(i, gx, gy), 0.0)
        num[np.ix_(cj, ci)] += w * vals
        den[np.ix_(cj, ci)] += w
    with np.errstate(invalid="ignore", divide="ignore"):
        z = num / den
    for (j, i), node in coincident.items():
        z[j, i] = itp.local_value(node, (xs[i], ys[j]))
    uncovered = den == 0
    if uncovered.any():
        jj, ii = np.nonzero(uncovered)
        if itp.fallback != "nearest":
            raise CoverageError((xs[ii[0]], ys[jj[0]]))
        for j, i in zip(jj, ii):
            p = (xs[i], ys[j])
            dist = np.hypot(*(itp.nodes.points - p).T)
            z[j, i] = itp.local_value(int(np.argmin(dist)), p)
    return z


def max_error(itp, truth, grid):
    """Max-abs and rms interpolation error against a truth evaluator on a grid."""
    xs, ys = grid.axes()
    gx, gy = np.meshgrid(xs, ys)
    z = eval_grid(itp, grid)
    t = np.asarray(truth(gx, gy), dtype=float)
    err = np.abs(z - t)
    j, i = np.unravel_index(np.argmax(err), err.shape)
    return {
        "max_abs": float(err[j, i]),
        "arg": (float(xs[i]), float(ys[j])),
        "rms": float(np.sqrt(np.mean(err**2))),
    }


def save_model(itp, path):
    """Persist a fitted model as a self-describing npz bundle."""
    meta = {
        "degree": itp.degree,
        "mode": itp.mode,
        "jet_source": itp.jet_source,
        "fallback": itp.fallback,
        "mu": itp.support.mu,
        "jet_order": itp.jets[0].order,
    }
    arrays = {
        "points": itp.nodes.points,
        "values": itp.values,
        "radii": itp.support.radii,
        "jet_tables": np.stack([j.table for j in itp.jets]),
        "meta": np.frombuffer(json.dumps(meta).encode(), dtype=np.uint8),
    }
    if itp.mode == "bernoulli":
        arrays["assignments"] = np.array(
            [[a.node, *a.others, a.enlarged] for a in itp.assignments], dtype=int
        )
        arrays["assignment_geom"] = np.array(
            [[a.r, a.s, a.quality] for a in itp.assignments]
        )
    np.savez(path, **arrays)


def load_model(path):
    """Rebuild an Interpolant saved by save_model."""
    data = np.load(path)
    meta = json.loads(bytes(data["meta"]).decode())
    nodes = NodeSet(data["points"])
    support = LocalSupport(mu=meta["mu"], radii=data["radii"])
    jets = tuple(
        Jet(center=tuple(pt), order=meta["jet_order"], table=tab)
        for pt, tab in zip(nodes.points, data["jet_tables"])
    )
    assignments = None
    if meta["mode"] == "bernoulli":
        assignments = tuple(
            TriangleAssignment(
                node=int(row[0]),
                others=(int(row[1]), int(row[2])),
                r=float(geo[0]),
                s=float(geo[1]),
                quality=float(geo[2]),
                enlarged=bool(row[3]),
            )
            for row, geo in zip(data["assignments"], data["assignment_geom"])
        )
    return Interpolant(
        nodes=nodes,
        values=np.asarray(data["values"], dtype=float),
        support=support,
        degree=meta["degree"],
        mode=meta["mode"],
        jet_source=meta["jet_source"],
        fallback=meta["fallback"],
        jets=jets,
        assignments=assignments,
    )

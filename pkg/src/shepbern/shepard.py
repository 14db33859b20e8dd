"""Node sets, radii of influence, and the compactly supported cardinal basis."""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CoverageError

# a point within COINCIDENCE_TOL * R of a node takes that node's cardinal value
COINCIDENCE_TOL = 1e-14


class NodeSet:
    """Ordered planar nodes with a uniform cell grid for disk queries."""

    def __init__(self, points):
        pts = np.ascontiguousarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError("points must be an (N, 2) array")
        if not np.isfinite(pts).all():
            raise ValueError("points must be finite")
        self.points = pts
        self.n = len(pts)
        self._build_grid()

    def _build_grid(self):
        lo = self.points.min(axis=0)
        hi = self.points.max(axis=0)
        diag = math.hypot(*(hi - lo))
        # cell size ~ diagonal / sqrt(N) keeps expected occupancy O(1)
        self._cell = diag / math.sqrt(self.n) if diag > 0 else 1.0
        self._diag = diag if diag > 0 else 1.0
        self._lo = lo
        cells = {}
        ij = np.floor((self.points - lo) / self._cell).astype(int)
        for idx, key in enumerate(map(tuple, ij)):
            cells.setdefault(key, []).append(idx)
        self._cells = {k: np.array(v) for k, v in cells.items()}

    def in_disk(self, center, radius):
        """Indices of nodes with |p - center| strictly less than radius."""
        cx, cy = center
        i0 = int(math.floor((cx - radius - self._lo[0]) / self._cell))
        i1 = int(math.floor((cx + radius - self._lo[0]) / self._cell))
        j0 = int(math.floor((cy - radius - self._lo[1]) / self._cell))
        j1 = int(math.floor((cy + radius - self._lo[1]) / self._cell))
        hits = []
        for i in range(i0, i1 + 1):
            for j in range(j0, j1 + 1):
                idx = self._cells.get((i, j))
                if idx is not None:
                    hits.append(idx)
        if not hits:
            return np.empty(0, dtype=int)
        cand = np.concatenate(hits)
        cand.sort()
        # hypot, not squared distance: must agree bitwise with the radius rule
        d = np.hypot(*(self.points[cand] - (cx, cy)).T)
        return cand[d < radius]

    def sorted_neighbors(self, i):
        """All other node indices ordered by (distance to node i, index)."""
        d = np.hypot(*(self.points - self.points[i]).T)
        order = np.argsort(d, kind="stable")
        order = order[order != i]
        return order, d[order]

    def nearest_neighbors(self, i, k):
        """The k nearest other nodes via expanding grid search, sorted by
        (distance, index); returns fewer when the set has fewer than k others."""
        p = self.points[i]
        r = 2.0 * self._cell
        limit = self._diag + self._cell
        while True:
            cand = self.in_disk(p, r)
            cand = cand[cand != i]
            if len(cand) >= k or r > limit:
                break
            r *= 2.0
        d = np.hypot(*(self.points[cand] - p).T)
        order = np.argsort(d, kind="stable")[:k]
        return cand[order], d[order]

    def neighbors_in_disk(self, i, radius):
        """Other nodes with |V - V_i| < radius, sorted by (distance, index)."""
        cand = self.in_disk(self.points[i], radius)
        cand = cand[cand != i]
        d = np.hypot(*(self.points[cand] - self.points[i]).T)
        order = np.argsort(d, kind="stable")
        return cand[order], d[order]


@dataclass(frozen=True)
class LocalSupport:
    """Weight exponent and per-node radii of influence."""

    mu: float
    radii: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.mu <= 0:
            raise ValueError("mu must be positive")
        r = np.asarray(self.radii, dtype=float)
        if (r <= 0).any():
            raise ValueError("radii must be positive")
        object.__setattr__(self, "radii", r)


def compute_radii(nodes, n_w):
    """Distance from each node to its (n_w+1)-th nearest neighbor, so that the
    open disk contains exactly n_w other nodes; 1.1x the farthest distance when
    fewer than n_w neighbors exist."""
    if nodes.n < 2:
        raise ValueError("need at least 2 nodes")
    if n_w < 1:
        raise ValueError("n_w must be >= 1")
    radii = np.empty(nodes.n)
    for i in range(nodes.n):
        _, dists = nodes.nearest_neighbors(i, n_w + 1)
        if len(dists) < n_w + 1:
            radii[i] = 1.1 * dists[-1]
        else:
            radii[i] = dists[n_w]
    return radii


def raw_weight(p, i, nodes, support):
    """Unnormalized compact-support weight of node i at p."""
    d = math.hypot(p[0] - nodes.points[i, 0], p[1] - nodes.points[i, 1])
    r = support.radii[i]
    if d >= r:
        return 0.0
    # (1/d - 1/R)_+ computed as (R - d)/(R d) to avoid cancellation at small d
    return ((r - d) / (r * d)) ** support.mu


def raw_weight_many(d, r, mu):
    """Vectorized raw weight from distance array d and radius r."""
    with np.errstate(divide="ignore"):
        w = np.where(d < r, ((r - d) / (r * d)) ** mu, 0.0)
    return w


def active_nodes(p, nodes, support, max_radius=None):
    """Indices i with |p - V_i| < R_i, with their distances."""
    if max_radius is None:
        max_radius = float(support.radii.max())
    cand = nodes.in_disk(p, max_radius)
    d = np.hypot(*(nodes.points[cand] - p).T)
    keep = d < support.radii[cand]
    return cand[keep], d[keep]


def basis(p, nodes, support):
    """Normalized weights over the active set at p, as {index: weight}.

    Cardinal at the nodes: a point coinciding with node k gets {k: 1}.
    """
    idx, d = active_nodes(p, nodes, support)
    if len(idx) == 0:
        raise CoverageError(p)
    near = d < COINCIDENCE_TOL * support.radii[idx]
    if near.any():
        return {int(idx[near][0]): 1.0}
    w = raw_weight_many(d, support.radii[idx], support.mu)
    w /= w.sum()
    return {int(i): float(wi) for i, wi in zip(idx, w)}


def classic_shepard_eval(p, nodes, values, mu):
    """Global inverse-distance weighted mean of the nodal values."""
    if mu <= 0:
        raise ValueError("mu must be positive")
    values = np.asarray(values, dtype=float)
    d = np.hypot(*(nodes.points - p).T)
    hit = np.nonzero(d < 1e-14)[0]
    if len(hit):
        return float(values[hit[0]])
    w = d ** (-float(mu))
    return float(w @ values / w.sum())

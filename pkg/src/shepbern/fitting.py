"""Weighted least-squares estimation of nodal derivative data from values only."""

from dataclasses import dataclass, field

import numpy as np

from .errors import FitError
from .jets import Jet
from .shepard import compute_radii

# monomial exponents (r, s) in coefficient order; the constant term is pinned
# to the nodal value and never fitted
_EXPONENTS = {
    2: [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)],
    3: [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)],
}

_COND_LIMIT = 1e12


@dataclass(frozen=True)
class WlsCoefficients:
    degree: int  # 2 or 3
    center: int  # node index
    coeffs: np.ndarray = field(repr=False)  # ordered as _EXPONENTS[degree]

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        want = len(_EXPONENTS[self.degree])
        if c.shape != (want,):
            raise ValueError(f"expected {want} coefficients, got {c.shape}")
        if not np.isfinite(c).all():
            raise ValueError("non-finite coefficients")
        object.__setattr__(self, "coeffs", c)


def compute_rq_radii(nodes, n_q):
    """Per-node fitting radii: same nearest-neighbor rule as the basis radii."""
    if nodes.n <= n_q:
        raise ValueError(f"need more than n_q={n_q} nodes, have {nodes.n}")
    return compute_radii(nodes, n_q)


def _design(i, nodes, values, degree, r_q):
    xi, yi = nodes.points[i]
    rq = r_q[i]
    idx = nodes.in_disk((xi, yi), rq)
    idx = idx[idx != i]
    d = np.hypot(*(nodes.points[idx] - (xi, yi)).T)
    keep = d > 0
    idx, d = idx[keep], d[keep]
    exps = _EXPONENTS[degree]
    if len(idx) < len(exps):
        raise FitError(i, f"only {len(idx)} neighbors for {len(exps)} coefficients")
    sw = (rq - d) / (rq * d)  # sqrt of the relative-distance weight
    dx = nodes.points[idx, 0] - xi
    dy = nodes.points[idx, 1] - yi
    a = np.column_stack([dx**r * dy**s for r, s in exps]) * sw[:, None]
    rhs = sw * (np.asarray(values, dtype=float)[idx] - values[i])
    return a, rhs


def wls_fit(i, nodes, values, degree, r_q):
    """Fit the non-constant coefficients of a local degree-2 or -3 polynomial,
    pinned to the nodal value, by relative-distance weighted least squares."""
    if degree not in _EXPONENTS:
        raise ValueError("degree must be 2 or 3")
    a, rhs = _design(i, nodes, values, degree, r_q)
    # normal equations with column equilibration; orthogonal fallback when the
    # equilibrated system is still badly conditioned
    m = a.T @ a
    scale = 1.0 / np.sqrt(np.diag(m))
    ms = m * scale[:, None] * scale[None, :]
    if np.isfinite(ms).all() and np.linalg.cond(ms) <= _COND_LIMIT:
        coeffs = scale * np.linalg.solve(ms, scale * (a.T @ rhs))
    else:
        coeffs, _, rank, _ = np.linalg.lstsq(a, rhs, rcond=None)
        if rank < a.shape[1]:
            raise FitError(i, f"rank-deficient fit (rank {rank} of {a.shape[1]})")
    return WlsCoefficients(degree=degree, center=i, coeffs=coeffs)


def coefficients_to_jet(c, f_value, center):
    """Order-2 jet from fitted coefficients (cubic terms, if any, are dropped)."""
    a10, a01, a20, a11, a02 = c.coeffs[:5]
    table = np.zeros((3, 3))
    table[0, 0] = f_value
    table[1, 0] = a10
    table[0, 1] = a01
    table[2, 0] = 2.0 * a20
    table[1, 1] = a11
    table[0, 2] = 2.0 * a02
    return Jet(center=(float(center[0]), float(center[1])), order=2, table=table)

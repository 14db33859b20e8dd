"""Three-point polynomial expansion on a triangle with respect to a referring vertex.

The degree-m polynomial is determined by jets of order m-1 at the three
vertices.  It interpolates f at every vertex, reproduces all polynomials of
total degree <= m, and collapses to the Taylor polynomial at the referring
vertex as the triangle shrinks.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import bernoulli
from .errors import GeometryError
from .geometry import is_degenerate, signed_area
from .jets import directional_derivative, taylor_eval

# branch threshold for the removable singularity on the line lambda2 + lambda3 = 0
_SINGULAR_TOL = 1e-14


@dataclass(frozen=True)
class GtData:
    """Triangle, per-vertex jets of order >= m-1, and precomputed side data."""

    triangle: tuple  # three (x, y) vertices; the first is the referring vertex
    jets: tuple  # jets centered at the vertices, same order
    degree: int
    _c1: np.ndarray = field(default=None, repr=False)
    _c2: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        m = self.degree
        if m < 1:
            raise ValueError("degree must be >= 1")
        if is_degenerate(self.triangle):
            raise GeometryError(f"degenerate triangle {self.triangle}")
        for jet, v in zip(self.jets, self.triangle):
            if jet.order < m - 1:
                raise ValueError(f"jet order {jet.order} < {m - 1}")
            if jet.center != tuple(v):
                raise ValueError("jet centers must coincide with the vertices")
        c1, c2 = _side_coefficients(self.triangle, self.jets, m)
        object.__setattr__(self, "_c1", c1)
        object.__setattr__(self, "_c2", c2)

    def eval_bary(self, l2, l3):
        """Evaluate from barycentric coordinates (vectorized over arrays)."""
        m = self.degree
        l2 = np.asarray(l2, dtype=float)
        l3 = np.asarray(l3, dtype=float)
        s = l2 + l3
        singular = np.abs(s) < _SINGULAR_TOL
        s_safe = np.where(singular, 1.0, s)
        ratio = l2 / s_safe
        val = np.full(np.broadcast(l2, l3).shape, self.jets[0].value)
        sj = [None] + [bernoulli.s_poly_eval(j, s) for j in range(1, m + 1)]
        for j in range(1, m + 1):
            val = val + self._c1[j] * sj[j] / math.factorial(j)
        for i in range(1, m + 1):
            # S_i(l2/s) * s^(i-1) extends continuously across s = 0:
            # the limit is l2 for i = 1 and 0 for i >= 2
            si = bernoulli.s_poly_eval(i, ratio) * s_safe ** (i - 1)
            si = np.where(singular, l2 if i == 1 else 0.0, si)
            for j in range(1, m - i + 2):
                val = val + (
                    self._c2[i, j]
                    * si
                    / math.factorial(i)
                    * sj[j]
                    / math.factorial(j)
                )
        return val if val.ndim else float(val)


def _side_coefficients(tri, jets, m):
    """Constant derivative-difference factors of the expansion, per (i, j)."""
    v1, v2, v3 = (np.asarray(v, dtype=float) for v in tri)
    j1, j2, j3 = jets
    u21, u31 = v2 - v1, v3 - v1
    u12, u32 = v1 - v2, v3 - v2
    u13, u23 = v1 - v3, v2 - v3

    c1 = np.zeros(m + 1)
    for j in range(1, m + 1):
        c1[j] = directional_derivative(j3, u21, u31, 0, j - 1) - directional_derivative(
            j1, u21, u31, 0, j - 1
        )
    c2 = np.zeros((m + 1, m + 2))
    for i in range(1, m + 1):
        for j in range(1, m - i + 2):
            d2 = directional_derivative(j2, u12, u32, j - 1, i - 1) - directional_derivative(
                j1, u12, u32, j - 1, i - 1
            )
            d3 = directional_derivative(j3, u13, u23, j - 1, i - 1) - directional_derivative(
                j1, u13, u23, j - 1, i - 1
            )
            c2[i, j] = (-1) ** (i + j) * d2 + (-1) ** j * d3
    return c1, c2


def _bary_many(tri, x, y):
    """Vectorized barycentric coordinates (lambda2, lambda3) for arrays x, y."""
    (x1, y1), (x2, y2), (x3, y3) = tri
    area = signed_area(tri)
    l2 = ((x - x1) * (y3 - y1) - (x3 - x1) * (y - y1)) / area
    l3 = ((x2 - x1) * (y - y1) - (x - x1) * (y2 - y1)) / area
    return l2, l3


def gt_eval(d, p):
    """Evaluate the expansion at a point p (anywhere in the plane)."""
    l2, l3 = _bary_many(d.triangle, float(p[0]), float(p[1]))
    return d.eval_bary(l2, l3)


def gt_eval_many(d, x, y):
    """Vectorized gt_eval over coordinate arrays."""
    l2, l3 = _bary_many(d.triangle, np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    return d.eval_bary(l2, l3)


def gt_minus_taylor(d, full_jet_v1, p):
    """Difference between the expansion and the Taylor polynomial at the
    referring vertex (diagnostic; shrinks as the triangle does)."""
    return gt_eval(d, p) - taylor_eval(full_jet_v1, p)


def quadratic_element_eval(d, p):
    """Explicit symmetric form of the degree-2 expansion (quadratic element).

    Lagrange part plus the three pairwise lambda-lambda corrections; equals
    the generic evaluation at degree 2.
    """
    if d.degree != 2:
        raise ValueError("quadratic element form requires degree 2")
    v1, v2, v3 = (np.asarray(v, dtype=float) for v in d.triangle)
    j1, j2, j3 = d.jets
    l2, l3 = _bary_many(d.triangle, float(p[0]), float(p[1]))
    l1 = 1.0 - l2 - l3
    u12, u31, u23 = v1 - v2, v3 - v1, v2 - v3

    def dd(jet, u):
        return directional_derivative(jet, u, (0.0, 0.0), 1, 0)

    val = l1 * j1.value + l2 * j2.value + l3 * j3.value
    val += 0.5 * l1 * l2 * (dd(j2, u12) - dd(j1, u12))
    val += 0.5 * l1 * l3 * (dd(j1, u31) - dd(j3, u31))
    val += 0.5 * l2 * l3 * (dd(j3, u23) - dd(j2, u23))
    return val

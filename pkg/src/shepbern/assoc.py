"""Per-node triangle association: the best-shaped triangle with a vertex there."""

import math
from dataclasses import dataclass

from .errors import AssociationError
from .geometry import longest_side, signed_area

# relative tolerance under which two qualities count as tied; ties go to the
# earlier pair in the distance-sorted enumeration
_TIE_TOL = 1e-12

_MAX_RADIUS_DOUBLINGS = 5


@dataclass(frozen=True)
class TriangleAssignment:
    node: int
    others: tuple  # companion node indices (j, k), j < k
    r: float  # longest side
    s: float  # 1 / |signed area determinant|
    quality: float  # r^3 * s
    enlarged: bool = False  # search radius was doubled beyond R_w


def select_triangle(i, nodes, support, radius=None, enlarged=False):
    """Minimum-quality triangle (V_i, V_a, V_b) over in-ball neighbor pairs.

    Neighbors are enumerated by increasing (distance, index); among pairs tied
    in quality the first in enumeration order wins.
    """
    if radius is None:
        radius = float(support.radii[i])
    inside, _ = nodes.neighbors_in_disk(i, radius)
    if len(inside) < 2:
        raise AssociationError(i, f"fewer than 2 neighbors within radius {radius:g}")
    vi = tuple(nodes.points[i])
    best = None
    best_q = math.inf
    for a_pos in range(len(inside)):
        va = tuple(nodes.points[inside[a_pos]])
        for b_pos in range(a_pos + 1, len(inside)):
            vb = tuple(nodes.points[inside[b_pos]])
            tri = (vi, va, vb)
            r = longest_side(tri)
            area = abs(signed_area(tri))
            if area <= 1e-12 * r * r:
                continue
            q = r * r * r / area
            if q < best_q * (1.0 - _TIE_TOL):
                best_q = q
                best = (int(inside[a_pos]), int(inside[b_pos]), r, 1.0 / area)
    if best is None:
        raise AssociationError(i, "all neighbor pairs are collinear with the node")
    a, b, r, s = best
    j, k = (a, b) if a < b else (b, a)
    return TriangleAssignment(
        node=i, others=(j, k), r=r, s=s, quality=r**3 * s, enlarged=enlarged
    )


def assign_all(nodes, support):
    """One triangle assignment per node, doubling the search radius (locally,
    for candidate enumeration only) when a node has too few usable neighbors."""
    if nodes.n < 3:
        raise AssociationError(-1, "need at least 3 nodes")
    out = []
    for i in range(nodes.n):
        radius = float(support.radii[i])
        enlarged = False
        for attempt in range(_MAX_RADIUS_DOUBLINGS + 1):
            try:
                out.append(select_triangle(i, nodes, support, radius, enlarged))
                break
            except AssociationError:
                if attempt == _MAX_RADIUS_DOUBLINGS:
                    raise
                radius *= 2.0
                enlarged = True
    return out

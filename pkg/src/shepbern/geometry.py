"""Planar points, triangles, barycentric coordinates, and triangle shape quality."""

import math
from typing import NamedTuple

from .errors import GeometryError


class Point(NamedTuple):
    x: float
    y: float


class Triangle(NamedTuple):
    v1: Point
    v2: Point
    v3: Point


# |signed_area| <= DEGENERACY_TOL * r^2 classifies a triangle as degenerate;
# scale-relative so the test is dimensionally consistent.
DEGENERACY_TOL = 1e-12


def signed_area(t):
    """Determinant of the homogeneous vertex matrix (twice the geometric area)."""
    (x1, y1), (x2, y2), (x3, y3) = t
    return (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)


def longest_side(t):
    v1, v2, v3 = t
    return max(
        math.hypot(v2[0] - v1[0], v2[1] - v1[1]),
        math.hypot(v3[0] - v1[0], v3[1] - v1[1]),
        math.hypot(v3[0] - v2[0], v3[1] - v2[1]),
    )


def is_degenerate(t):
    r = longest_side(t)
    return abs(signed_area(t)) <= DEGENERACY_TOL * r * r


def barycentric(p, t):
    """Area-ratio coordinates of p relative to t, summing to 1."""
    if is_degenerate(t):
        raise GeometryError(f"degenerate triangle {t}")
    v1, v2, v3 = t
    area = signed_area(t)
    l1 = signed_area((p, v2, v3)) / area
    l2 = signed_area((v1, p, v3)) / area
    l3 = signed_area((v1, v2, p)) / area
    return l1, l2, l3


def quality(t):
    """Shape objective r^3 / |signed_area|; +inf for degenerate triangles.

    Scales linearly with the triangle size, so among triangles of equal
    longest side the best-shaped (closest to equilateral) scores lowest.
    """
    r = longest_side(t)
    area = abs(signed_area(t))
    if area <= DEGENERACY_TOL * r * r:
        return math.inf
    return r * r * r / area

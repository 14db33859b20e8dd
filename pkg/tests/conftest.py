import math

import numpy as np
import pytest


def poly_partials(coeffs):
    """Exact partials evaluator for a polynomial {(a, b): c} -> sum c x^a y^b."""

    def partials(p, q, x, y):
        total = 0.0
        for (a, b), c in coeffs.items():
            if a >= p and b >= q:
                fall = (math.factorial(a) // math.factorial(a - p)) * (
                    math.factorial(b) // math.factorial(b - q)
                )
                total += c * fall * x ** (a - p) * y ** (b - q)
        return total

    return partials


def poly_eval(coeffs, x, y):
    return sum(c * x**a * y**b for (a, b), c in coeffs.items())


def random_triangle(rng, lo=-1.0, hi=2.0, max_shape=30.0):
    """Non-degenerate triangle with bounded shape distortion (r^2 S < max_shape)."""
    from shepbern.geometry import longest_side, quality

    while True:
        tri = tuple(tuple(rng.uniform(lo, hi, 2)) for _ in range(3))
        q = quality(tri)
        if math.isfinite(q) and q / longest_side(tri) < max_shape:
            return tri


def loglog_slope(hs, errs):
    hs = np.asarray(hs, dtype=float)
    errs = np.asarray(errs, dtype=float)
    return np.polyfit(np.log(hs), np.log(errs), 1)[0]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

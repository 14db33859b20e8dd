"""Renka's ten standard scattered-data test surfaces on [0, 1]^2.

Each function carries exact partial derivatives up to order 3, generated
symbolically once per function and cached.
"""

from functools import lru_cache

import numpy as np
import sympy as sp

MAX_PARTIAL_ORDER = 3

_X, _Y = sp.symbols("x y")


def _expressions():
    x, y = _X, _Y
    exponential = (
        sp.Rational(3, 4) * sp.exp(-((9 * x - 2) ** 2 + (9 * y - 2) ** 2) / 4)
        + sp.Rational(3, 4) * sp.exp(-((9 * x + 1) ** 2) / 49 - (9 * y + 1) / 10)
        + sp.Rational(1, 2) * sp.exp(-((9 * x - 7) ** 2 + (9 * y - 3) ** 2) / 4)
        - sp.Rational(1, 5) * sp.exp(-((9 * x - 4) ** 2) - (9 * y - 7) ** 2)
    )
    cliff = (sp.tanh(9 * (y - x)) + 1) / 9
    saddle = (sp.Rational(5, 4) + sp.cos(sp.Rational(27, 5) * y)) / (
        6 + 6 * (3 * x - 1) ** 2
    )
    gentle = sp.exp(-sp.Rational(81, 16) * ((x - sp.Rational(1, 2)) ** 2 + (y - sp.Rational(1, 2)) ** 2)) / 3
    steep = sp.exp(-sp.Rational(81, 4) * ((x - sp.Rational(1, 2)) ** 2 + (y - sp.Rational(1, 2)) ** 2)) / 3
    sphere = sp.sqrt(64 - 81 * ((x - sp.Rational(1, 2)) ** 2 + (y - sp.Rational(1, 2)) ** 2)) / 9 - sp.Rational(1, 2)
    trig = 2 * sp.cos(10 * x) * sp.sin(10 * y) + sp.sin(10 * x * y)
    synergistic = (
        sp.exp(-((5 - 10 * x) ** 2) / 2)
        + sp.Rational(3, 4) * sp.exp(-((5 - 10 * y) ** 2) / 2)
        + sp.Rational(3, 4)
        * sp.exp(-((5 - 10 * x) ** 2) / 2)
        * sp.exp(-((5 - 10 * y) ** 2) / 2)
    )
    e1 = sp.exp((10 - 20 * x) / 3)
    e2 = sp.exp((10 - 20 * y) / 3)
    t3 = 1 / (1 + e1)
    t4 = 1 / (1 + e2)
    cloverleaf = (
        (sp.Rational(20, 3) ** 3 * e1 * e2) ** 2
        * (t3 * t4) ** 5
        * (e1 - 2 * t3)
        * (e2 - 2 * t4)
    )
    rr = sp.sqrt((80 * x - 40) ** 2 + (90 * y - 45) ** 2)
    cosine_peak = sp.exp(-sp.Rational(1, 25) * rr) * sp.cos(sp.Rational(3, 20) * rr)
    return {
        1: ("exponential", exponential),
        2: ("cliff", cliff),
        3: ("saddle", saddle),
        4: ("gentle", gentle),
        5: ("steep", steep),
        6: ("sphere", sphere),
        7: ("trig", trig),
        8: ("synergistic", synergistic),
        9: ("cloverleaf", cloverleaf),
        10: ("cosine_peak", cosine_peak),
    }


FUNCTION_IDS = tuple(range(1, 11))


@lru_cache(maxsize=None)
def _lambdified(fid):
    name, expr = _expressions()[fid]
    funcs = {}
    for a in range(MAX_PARTIAL_ORDER + 1):
        for b in range(MAX_PARTIAL_ORDER + 1 - a):
            funcs[a, b] = sp.lambdify((_X, _Y), sp.diff(expr, _X, a, _Y, b), "numpy")
    return name, funcs


class TestFunction:
    """A benchmark surface: vectorized value plus exact partials."""

    def __init__(self, fid):
        if fid not in FUNCTION_IDS:
            raise ValueError(f"function id must be in {FUNCTION_IDS}")
        self.fid = fid
        self.name, self._partials = _lambdified(fid)

    def __call__(self, x, y):
        return np.asarray(self._partials[0, 0](x, y), dtype=float)

    def partials(self, a, b, x, y):
        if a + b > MAX_PARTIAL_ORDER:
            raise ValueError(f"partials available up to order {MAX_PARTIAL_ORDER}")
        return float(self._partials[a, b](x, y))


def get(fid):
    return TestFunction(fid)

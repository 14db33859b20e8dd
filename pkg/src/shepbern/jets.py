"""Partial-derivative tables at a point and directional-derivative algebra."""

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Jet:
    """Partials of f at `center` up to total order `order`.

    table[a, b] = d^(a+b) f / dx^a dy^b (center) for a + b <= order.
    """

    center: tuple
    order: int
    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        t = np.asarray(self.table, dtype=float)
        if t.shape != (self.order + 1, self.order + 1):
            raise ValueError(f"table must be {(self.order + 1,) * 2}, got {t.shape}")
        for a in range(self.order + 1):
            for b in range(self.order + 1 - a):
                if not np.isfinite(t[a, b]):
                    raise ValueError(f"non-finite partial at ({a},{b})")
        object.__setattr__(self, "table", t)

    @property
    def value(self):
        return self.table[0, 0]


def directional_derivative(j, u, v, p, q):
    """D_u^p D_v^q f at the jet's center for direction vectors u, v.

    Expanded binomially into the cartesian partials stored in the jet.
    """
    if p + q > j.order:
        raise ValueError(f"requested order {p + q} exceeds jet order {j.order}")
    ux, uy = u
    vx, vy = v
    total = 0.0
    for i in range(p + 1):
        cu = math.comb(p, i) * ux ** (p - i) * uy**i
        for k in range(q + 1):
            cv = math.comb(q, k) * vx ** (q - k) * vy**k
            total += cu * cv * j.table[p + q - i - k, i + k]
    return total


def taylor_eval(j, p):
    """Taylor polynomial of the jet's order, evaluated at p."""
    dx = p[0] - j.center[0]
    dy = p[1] - j.center[1]
    total = 0.0
    for a in range(j.order + 1):
        for b in range(j.order + 1 - a):
            total += (
                j.table[a, b]
                / (math.factorial(a) * math.factorial(b))
                * dx**a
                * dy**b
            )
    return total


def taylor_eval_many(j, x, y):
    """Vectorized taylor_eval over coordinate arrays x, y."""
    dx = np.asarray(x, dtype=float) - j.center[0]
    dy = np.asarray(y, dtype=float) - j.center[1]
    total = np.zeros(np.broadcast(dx, dy).shape)
    for a in range(j.order + 1):
        for b in range(j.order + 1 - a):
            total += (
                j.table[a, b]
                / (math.factorial(a) * math.factorial(b))
                * dx**a
                * dy**b
            )
    return total


def jet_from_callable(partials, center, order):
    """Build a jet from an evaluator partials(a, b, x, y) of cartesian partials."""
    table = np.zeros((order + 1, order + 1))
    for a in range(order + 1):
        for b in range(order + 1 - a):
            table[a, b] = partials(a, b, center[0], center[1])
    return Jet(center=(float(center[0]), float(center[1])), order=order, table=table)


def jet_from_function(f, center, order, step=None):
    """Finite-difference jet (central differences); test helper only."""
    x0, y0 = center
    if step is None:
        step = 1e-5 * (1.0 + math.hypot(x0, y0))

    def partial(a, b):
        # central-difference stencil applied a times in x and b times in y
        xs = [x0 + (i - a / 2.0) * 2 * step for i in range(a + 1)]
        ys = [y0 + (i - b / 2.0) * 2 * step for i in range(b + 1)]
        total = 0.0
        for i, xi in enumerate(xs):
            for k, yk in enumerate(ys):
                sign = (-1) ** ((a - i) + (b - k))
                total += sign * math.comb(a, i) * math.comb(b, k) * f(xi, yk)
        return total / (2 * step) ** (a + b)

    table = np.zeros((order + 1, order + 1))
    for a in range(order + 1):
        for b in range(order + 1 - a):
            table[a, b] = partial(a, b)
    return Jet(center=(float(x0), float(y0)), order=order, table=table)

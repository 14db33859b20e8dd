"""Bernoulli numbers and polynomials, and the two-point expansion built on them.

Polynomial coefficients are generated once by the exact rational recurrence
(B_0 = 1, B_n' = n B_{n-1}, zero mean on [0, 1]) and converted to doubles,
which avoids cancellation up to the supported degree cap.
"""

from fractions import Fraction
from functools import lru_cache

import numpy as np

N_MAX = 30


@lru_cache(maxsize=None)
def _bernoulli_exact(n):
    """Coefficients of B_n(x) as exact rationals, index k -> coeff of x^k."""
    if n == 0:
        return (Fraction(1),)
    prev = _bernoulli_exact(n - 1)
    coeffs = [Fraction(0)] + [Fraction(n) * c / (k + 1) for k, c in enumerate(prev)]
    # constant term fixed by the zero-mean condition on [0, 1]
    coeffs[0] = -sum(c / (k + 1) for k, c in enumerate(coeffs))
    return tuple(coeffs)


def _check_degree(n):
    if not 0 <= n <= N_MAX:
        raise ValueError(f"degree must be in [0, {N_MAX}], got {n}")


def bernoulli_numbers(n_max):
    """Return [B_0, ..., B_n_max] as floats."""
    _check_degree(n_max)
    return [float(_bernoulli_exact(k)[0]) for k in range(n_max + 1)]


def bernoulli_poly(n):
    """Coefficients of B_n(x) as a float array, ascending powers."""
    _check_degree(n)
    return np.array([float(c) for c in _bernoulli_exact(n)])


@lru_cache(maxsize=None)
def _s_coeffs(n):
    c = bernoulli_poly(n)
    c[0] = 0.0  # S_n(t) = B_n(t) - B_n(0); S_0 is identically zero
    c.flags.writeable = False
    return c


def s_poly_coeffs(n):
    """Coefficients of S_n(t) = B_n(t) - B_n(0), ascending powers."""
    _check_degree(n)
    return _s_coeffs(n)


def s_poly_eval(n, t):
    """Evaluate S_n at t (scalar or array) by Horner's rule."""
    return np.polynomial.polynomial.polyval(t, s_poly_coeffs(n))


def univariate_gt_eval(end_derivs_a, end_derivs_b, a, b, m, x):
    """Two-point degree-m expansion from derivative values at the interval ends.

    end_derivs_a[k] and end_derivs_b[k] hold f^(k) at a and b for k < m.  The
    result interpolates f at both end points and reproduces polynomials of
    degree <= m; it extends naturally to x outside [a, b].
    """
    if a >= b:
        raise ValueError("interval must satisfy a < b")
    if m < 1:
        raise ValueError("degree m must be >= 1")
    if len(end_derivs_a) != m or len(end_derivs_b) != m:
        raise ValueError(f"derivative lists must have length m={m}")
    h = b - a
    t = (x - a) / h
    val = end_derivs_a[0]
    kfact = 1.0
    for k in range(1, m + 1):
        kfact *= k
        val += s_poly_eval(k, t) / kfact * h ** (k - 1) * (
            end_derivs_b[k - 1] - end_derivs_a[k - 1]
        )
    return val

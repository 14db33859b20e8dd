import numpy as np
import pytest

from shepbern.errors import FitError
from shepbern.fitting import (
    WlsCoefficients,
    coefficients_to_jet,
    compute_rq_radii,
    wls_fit,
)
from shepbern.shepard import NodeSet, compute_radii

from conftest import poly_eval


def dense_oracle_coeffs(i, nodes, values, degree, r_q):
    """Solve min sum w_k (phi(V_k) . c - res_k)^2 by dense weighted normals."""
    exps = {
        2: [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)],
        3: [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)],
    }[degree]
    xi, yi = nodes.points[i]
    rq = r_q[i]
    m = np.zeros((len(exps), len(exps)))
    v = np.zeros(len(exps))
    for k in range(nodes.n):
        if k == i:
            continue
        d = np.hypot(nodes.points[k, 0] - xi, nodes.points[k, 1] - yi)
        if d >= rq:
            continue
        w = ((rq - d) / (rq * d)) ** 2
        dx, dy = nodes.points[k] - (xi, yi)
        phi = np.array([dx**r * dy**s for r, s in exps])
        m += w * np.outer(phi, phi)
        v += w * phi * (values[k] - values[i])
    return np.linalg.solve(m, v)


def test_rq_radii_shared_rule(rng):
    nodes = NodeSet(rng.uniform(0, 1, (50, 2)))
    assert np.array_equal(compute_rq_radii(nodes, 13), compute_radii(nodes, 13))


def test_rq_radii_neighbor_count(rng):
    pts = rng.uniform(0, 1, (50, 2))
    nodes = NodeSet(pts)
    r_q = compute_rq_radii(nodes, 13)
    for i in range(50):
        d = np.hypot(*(pts - pts[i]).T)
        assert np.count_nonzero(d < r_q[i]) - 1 == 13


def test_rq_radii_too_few_nodes(rng):
    nodes = NodeSet(rng.uniform(0, 1, (10, 2)))
    with pytest.raises(ValueError):
        compute_rq_radii(nodes, 13)


def test_coefficient_validation():
    with pytest.raises(ValueError):
        WlsCoefficients(degree=2, center=0, coeffs=np.zeros(4))
    with pytest.raises(ValueError):
        WlsCoefficients(degree=2, center=0, coeffs=np.full(5, np.nan))


def test_fit_exact_quadratic(rng):
    coeffs = {(0, 0): 0.4, (1, 0): 1.5, (0, 1): -2.0, (2, 0): 0.8, (1, 1): -0.3, (0, 2): 1.1}
    pts = rng.uniform(0, 1, (60, 2))
    nodes = NodeSet(pts)
    values = np.array([poly_eval(coeffs, x, y) for x, y in pts])
    r_q = compute_rq_radii(nodes, 13)
    for i in (0, 25, 59):
        c = wls_fit(i, nodes, values, 2, r_q)
        xi, yi = pts[i]
        # shifted-polynomial coefficients at the node
        want = [
            coeffs[1, 0] + 2 * coeffs[2, 0] * xi + coeffs[1, 1] * yi,
            coeffs[0, 1] + 2 * coeffs[0, 2] * yi + coeffs[1, 1] * xi,
            coeffs[2, 0],
            coeffs[1, 1],
            coeffs[0, 2],
        ]
        assert c.coeffs == pytest.approx(want, rel=1e-8)


def test_fit_exact_cubic(rng):
    coeffs = {(0, 0): 1.0, (1, 0): -0.5, (0, 1): 0.7, (3, 0): 0.9, (1, 2): -1.2}
    pts = rng.uniform(0, 1, (80, 2))
    nodes = NodeSet(pts)
    values = np.array([poly_eval(coeffs, x, y) for x, y in pts])
    r_q = compute_rq_radii(nodes, 17)
    i = 11
    c = wls_fit(i, nodes, values, 3, r_q)
    xi, yi = pts[i]
    shifted = {}
    # expand sum c (xi+dx)^a (yi+dy)^b exactly
    import math

    for (a, b), cv in coeffs.items():
        for p in range(a + 1):
            for q in range(b + 1):
                shifted[p, q] = shifted.get((p, q), 0.0) + (
                    cv * math.comb(a, p) * math.comb(b, q) * xi ** (a - p) * yi ** (b - q)
                )
    exps = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)]
    want = [shifted.get(e, 0.0) for e in exps]
    assert c.coeffs == pytest.approx(want, rel=1e-8, abs=1e-8)


def test_fit_constant_values(rng):
    pts = rng.uniform(0, 1, (40, 2))
    nodes = NodeSet(pts)
    values = np.full(40, 3.7)
    r_q = compute_rq_radii(nodes, 13)
    c = wls_fit(5, nodes, values, 2, r_q)
    assert np.abs(c.coeffs).max() < 1e-10


def test_fit_shift_invariance(rng):
    pts = rng.uniform(0, 1, (40, 2))
    nodes = NodeSet(pts)
    values = rng.uniform(-1, 1, 40)
    r_q = compute_rq_radii(nodes, 13)
    a = wls_fit(8, nodes, values, 2, r_q)
    b = wls_fit(8, nodes, values + 100.0, 2, r_q)
    assert a.coeffs == pytest.approx(b.coeffs, rel=1e-9, abs=1e-9)


def test_fit_matches_dense_oracle():
    for seed in range(50):
        r = np.random.default_rng(seed)
        pts = r.uniform(0, 1, (30, 2))
        nodes = NodeSet(pts)
        values = r.uniform(-2, 2, 30)
        degree = 2 if seed % 2 == 0 else 3
        n_q = 13 if degree == 2 else 17
        r_q = compute_rq_radii(nodes, n_q)
        i = int(r.integers(0, 30))
        got = wls_fit(i, nodes, values, degree, r_q).coeffs
        want = dense_oracle_coeffs(i, nodes, values, degree, r_q)
        rel = np.abs(got - want) / (1 + np.abs(want))
        assert rel.max() < 1e-9


def test_fit_too_few_neighbors():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [0.5, 0.5],
                    [0.2, 0.8], [10.0, 10.0]])
    nodes = NodeSet(pts)
    r_q = np.full(7, 0.01)
    with pytest.raises(FitError):
        wls_fit(0, nodes, np.zeros(7), 2, r_q)


def test_fit_bad_degree(rng):
    nodes = NodeSet(rng.uniform(0, 1, (20, 2)))
    with pytest.raises(ValueError):
        wls_fit(0, nodes, np.zeros(20), 4, np.ones(20))


def test_coefficients_to_jet():
    c = WlsCoefficients(degree=2, center=0, coeffs=np.array([1.0, -2.0, 3.0, 4.0, 5.0]))
    j = coefficients_to_jet(c, 9.0, (0.5, 0.25))
    assert j.value == 9.0
    assert j.center == (0.5, 0.25)
    assert j.table[1, 0] == 1.0
    assert j.table[0, 1] == -2.0
    assert j.table[2, 0] == 6.0
    assert j.table[1, 1] == 4.0
    assert j.table[0, 2] == 10.0


def test_coefficients_to_jet_zero():
    c = WlsCoefficients(degree=2, center=0, coeffs=np.zeros(5))
    j = coefficients_to_jet(c, 2.5, (0.0, 0.0))
    assert j.value == 2.5
    assert np.count_nonzero(j.table) == 1


def test_coefficients_to_jet_x_squared(rng):
    pts = rng.uniform(0, 1, (40, 2))
    nodes = NodeSet(pts)
    values = pts[:, 0] ** 2
    r_q = compute_rq_radii(nodes, 13)
    c = wls_fit(4, nodes, values, 2, r_q)
    j = coefficients_to_jet(c, values[4], pts[4])
    assert j.table[2, 0] == pytest.approx(2.0, rel=1e-7)


def test_cubic_jet_drops_cubic_terms(rng):
    pts = rng.uniform(0, 1, (60, 2))
    nodes = NodeSet(pts)
    values = rng.uniform(-1, 1, 60)
    r_q = compute_rq_radii(nodes, 17)
    c = wls_fit(2, nodes, values, 3, r_q)
    j = coefficients_to_jet(c, values[2], pts[2])
    assert j.order == 2
    assert j.table[1, 0] == c.coeffs[0]
    assert j.table[0, 2] == 2.0 * c.coeffs[4]

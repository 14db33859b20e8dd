import itertools
import math

import numpy as np
import pytest

from shepbern.assoc import assign_all, select_triangle
from shepbern.errors import AssociationError
from shepbern.geometry import longest_side, quality, signed_area
from shepbern.shepard import LocalSupport, NodeSet, compute_radii


def make(points, n_w):
    nodes = NodeSet(points)
    return nodes, LocalSupport(mu=2.0, radii=compute_radii(nodes, n_w))


def brute_force_best(i, nodes, radius):
    """Exhaustive minimum quality over pairs of in-ball neighbors."""
    d = np.hypot(*(nodes.points - nodes.points[i]).T)
    inside = [j for j in range(nodes.n) if j != i and d[j] < radius]
    best = math.inf
    for a, b in itertools.combinations(inside, 2):
        tri = (tuple(nodes.points[i]), tuple(nodes.points[a]), tuple(nodes.points[b]))
        best = min(best, quality(tri))
    return best


def test_select_triangle_example():
    nodes, support = make(
        [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [2.0, 0.0]], 3
    )
    asg = select_triangle(0, nodes, support)
    assert asg.others == (1, 2)
    tri = ((0, 0), (1, 0), (0, 1))
    assert asg.r == pytest.approx(longest_side(tri))
    assert asg.s == pytest.approx(1.0 / abs(signed_area(tri)))
    assert asg.quality == pytest.approx(quality(tri))
    assert not asg.enlarged


def test_select_triangle_unique_pair():
    nodes, support = make([[0.0, 0.0], [1.0, 0.0], [0.5, 0.8]], 2)
    asg = select_triangle(0, nodes, support)
    assert asg.others == (1, 2)


def test_select_triangle_collinear_neighbors():
    nodes, support = make([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]], 3)
    with pytest.raises(AssociationError):
        select_triangle(0, nodes, support)


def test_select_triangle_too_few_neighbors():
    nodes = NodeSet([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    support = LocalSupport(mu=2.0, radii=np.array([0.5, 0.5, 0.5]))
    with pytest.raises(AssociationError):
        select_triangle(0, nodes, support)


def test_assign_all_grid_oracle():
    xs, ys = np.meshgrid(np.arange(3.0), np.arange(3.0))
    nodes, support = make(np.column_stack([xs.ravel(), ys.ravel()]), 8)
    for asg in assign_all(nodes, support):
        want = brute_force_best(asg.node, nodes, support.radii[asg.node])
        assert asg.quality == pytest.approx(want, rel=1e-12)


def test_assign_all_three_nodes():
    nodes, support = make([[0.0, 0.0], [1.0, 0.0], [0.3, 0.9]], 2)
    out = assign_all(nodes, support)
    triples = {tuple(sorted((a.node, *a.others))) for a in out}
    assert triples == {(0, 1, 2)}


def test_assign_all_oracle_random_sets(rng):
    # exhaustive-pair oracle on 20 seeded node sets
    for seed in range(20):
        r = np.random.default_rng(seed)
        nodes, support = make(r.uniform(0, 1, (40, 2)), 9)
        for asg in assign_all(nodes, support):
            radius = support.radii[asg.node]
            if asg.enlarged:
                continue
            want = brute_force_best(asg.node, nodes, radius)
            assert asg.quality == pytest.approx(want, rel=1e-12)
            d = np.hypot(*(nodes.points[list(asg.others)] - nodes.points[asg.node]).T)
            assert (d < radius).all()


def test_assign_all_determinism(rng):
    nodes, support = make(rng.uniform(0, 1, (60, 2)), 9)
    assert assign_all(nodes, support) == assign_all(nodes, support)


def test_assign_all_quality_order_independent(rng):
    pts = rng.uniform(0, 1, (30, 2))
    nodes, support = make(pts, 9)
    byq = {tuple(pts[a.node]): a.quality for a in assign_all(nodes, support)}
    perm = rng.permutation(30)
    nodes2, support2 = make(pts[perm], 9)
    for a in assign_all(nodes2, support2):
        assert a.quality == pytest.approx(byq[tuple(pts[perm][a.node])], rel=1e-12)


def test_assign_all_scale_invariance(rng):
    pts = rng.uniform(0, 1, (30, 2))
    nodes, support = make(pts, 9)
    base = [(a.node, a.others) for a in assign_all(nodes, support)]
    nodes2, support2 = make(7.5 * pts, 9)
    scaled = [(a.node, a.others) for a in assign_all(nodes2, support2)]
    assert base == scaled


def test_assign_all_radius_doubling():
    # an outlier with one in-ball neighbor forces the enlargement fallback
    pts = [[0.0, 0.0], [0.1, 0.0], [0.05, 0.1], [5.0, 5.0], [5.05, 5.0]]
    nodes = NodeSet(pts)
    support = LocalSupport(mu=2.0, radii=compute_radii(nodes, 1))
    out = assign_all(nodes, support)
    assert any(a.enlarged for a in out)
    assert len(out) == 5


def test_assign_all_unrecoverable():
    nodes = NodeSet([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
    support = LocalSupport(mu=2.0, radii=compute_radii(nodes, 2))
    with pytest.raises(AssociationError):
        assign_all(nodes, support)
    with pytest.raises(AssociationError):
        assign_all(NodeSet([[0.0, 0.0], [1.0, 0.0]]), LocalSupport(mu=2.0, radii=np.ones(2)))

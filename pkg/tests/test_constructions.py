from __future__ import annotations

import numpy as np
import pytest

from minimalcodes.bounds import best_known_plan, length_lower_bounds
from minimalcodes.constructions import (
    PreconditionError,
    baer_code,
    baer_pair,
    baer_partition,
    best_known,
    build,
    default_pair,
    desarguesian_spread,
    even_lines_code,
    lift,
    line,
    rational_normal_tangent,
    spread_blocks,
    spread_cutting_set,
    tetrahedron,
    valid_pair,
)
from minimalcodes.linalg import rank_array
from minimalcodes.projgeom import enumerate_points, flat_points, hyperplanes, is_cutting


@pytest.mark.parametrize("q,r,t", [(2, 2, 2), (2, 2, 3), (3, 2, 2), (2, 3, 2), (4, 2, 2)])
def test_desarguesian_spread_partitions_the_space(q, r, t):
    spread = desarguesian_spread(q, r, t)
    F = spread[0].basis.field
    pts = np.vstack([flat_points(F, s.basis.data) for s in spread])
    total = enumerate_points(r * t - 1, F)
    assert len(pts) == len(total)
    assert len({tuple(p) for p in pts}) == len(total)
    assert all(s.r == r for s in spread)


@pytest.mark.parametrize("q,r", [(2, 2), (3, 2), (2, 3), (4, 3), (2, 4), (3, 4)])
def test_default_pair_is_valid(q, r):
    i, j = default_pair(q, r)
    assert (i, j) == (q**r - 1, 1)
    assert valid_pair(q, r, i, j)


def test_invalid_pair_is_rejected():
    # j - i divisible by q + 1 breaks the condition for r = 2
    with pytest.raises(PreconditionError):
        spread_blocks(2, 2, 2, {(0, 1): (1, 4)})


@pytest.mark.parametrize("q,r,t", [(2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3)])
def test_spread_blocks_are_disjoint_and_cutting(q, r, t):
    rep = spread_cutting_set(q, r, t)
    F = rep.pointset.field
    for a in range(len(rep.blocks)):
        for b in range(a + 1, len(rep.blocks)):
            assert rank_array(F, np.vstack([rep.blocks[a], rep.blocks[b]])) == 2 * r
    assert rep.verified_minimal
    assert rep.n == t * t * (q**r - 1) // (q - 1)


@pytest.mark.parametrize("q", [4, 9])
def test_baer_partition(q):
    s = int(round(q**0.5))
    parts = baer_partition(q)
    assert len(parts) == q - s + 1
    assert all(len(p) == q + s + 1 for p in parts)
    allpts = set().union(*(p.as_set() for p in parts))
    assert len(allpts) == q * q + q + 1
    # a Baer subplane meets every line in 1 or sqrt(q) + 1 points
    P = parts[0]
    for h in hyperplanes(2, P.field):
        meet = int(h.contains(P.points).sum())
        assert meet in (1, s + 1)


def test_baer_pair_sizes():
    assert baer_pair(4).n == 14
    assert baer_pair(9).n == 26
    assert baer_pair(9).verified_minimal


def test_rnt_sizes_and_preconditions():
    r = rational_normal_tangent(5, 3)
    assert r.n == 18 and r.verified_minimal
    r = rational_normal_tangent(7, 4)
    assert r.n == 40 and r.verified_minimal
    with pytest.raises(PreconditionError, match="requires q >= 2k-3"):
        rational_normal_tangent(3, 4)
    with pytest.raises(PreconditionError, match="requires p >= k"):
        rational_normal_tangent(8, 4)


def test_construction_preconditions():
    with pytest.raises(PreconditionError):
        even_lines_code(2, 5)
    with pytest.raises(PreconditionError):
        baer_code(2, 3)
    with pytest.raises(PreconditionError):
        baer_code(4, 4)
    with pytest.raises(PreconditionError):
        build("nonsense", 2, 3)
    with pytest.raises(PreconditionError):
        tetrahedron(6, 3)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_lift_growth_and_distance(q):
    r = line(q)
    for k in range(3, 6):
        prev = r.n
        r = lift(r)
        assert r.k == k
        assert r.n - prev == (q - 1) * (k - 1) + 1
        assert r.verified_minimal
        # lifting a line repeatedly meets the distance lower bound with equality
        assert r.verified_d == (q - 1) * (k - 1) + 1


def test_lift_of_tetrahedron_is_at_least_inner_plus_growth():
    inner = tetrahedron(3, 3)
    r = lift(inner)
    assert r.n == inner.n + (3 - 1) * 3 + 1
    assert r.verified_minimal


@pytest.mark.parametrize("q,k", [(2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4), (3, 5), (4, 3), (4, 4), (4, 6), (9, 3)])
def test_best_known_matches_plan_and_bounds(q, k):
    name, n = best_known_plan(q, k)
    r = best_known(q, k)
    assert r.n == n
    assert r.verified_minimal
    for v in length_lower_bounds(q, k, r.n):
        assert v.satisfied, v.name


@pytest.mark.parametrize("name,q,k,n", [
    ("tetrahedron", 3, 4, 16),
    ("even-lines", 2, 6, 27),
    ("baer", 4, 3, 14),
    ("lift:tetrahedron", 2, 4, 6 + 4),
    ("lift:lift:line", 3, 4, 4 + 5 + 7),
    ("line", 5, 2, 6),
])
def test_build_dispatch(name, q, k, n):
    assert build(name, q, k).n == n


def test_unverified_build_skips_checks():
    r = even_lines_code(2, 4, verify=False)
    assert not r.verified_minimal and r.verified_d is None
    assert is_cutting(r.pointset)

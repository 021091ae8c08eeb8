from __future__ import annotations

import numpy as np
import pytest

from conftest import random_code
from minimalcodes.code import weight_profile
from minimalcodes.constructions import baer_partition, tetrahedron
from minimalcodes.gf import field_of_order
from minimalcodes.linalg import Matrix
from minimalcodes.projgeom import (
    Flat,
    GeometryError,
    PointSet,
    canonical_basis,
    code_from_pointset,
    enumerate_points,
    gaussian_binomial,
    geometric_min_distance,
    hyperplane_counts,
    hyperplanes,
    is_cutting,
    is_tfold_blocking,
    iter_subspaces,
    pointset_from_code,
)


@pytest.mark.parametrize("N,q", [(1, 2), (2, 3), (2, 4), (3, 2), (3, 3)])
def test_point_and_hyperplane_counts(N, q):
    F = field_of_order(q)
    assert len(enumerate_points(N, F)) == (q ** (N + 1) - 1) // (q - 1)
    H = hyperplanes(N, F)
    assert len(H) == len(enumerate_points(N, F))
    for h in H[:5]:
        assert h.dim == N - 1
        assert len(h.points()) == (q**N - 1) // (q - 1)


@pytest.mark.parametrize("n,d,q", [(3, 1, 2), (4, 2, 2), (3, 2, 3), (4, 2, 3), (3, 1, 4)])
def test_gaussian_binomial_counts_subspaces(n, d, q):
    F = field_of_order(q)
    keys = {tuple(map(tuple, canonical_basis(F, b))) for b in iter_subspaces(F, n, d)}
    assert len(keys) == gaussian_binomial(n, d, q)


def test_pointset_normalizes_and_counts_multiplicity():
    F = field_of_order(3)
    ps = PointSet(F, 2, [[0, 2, 1], [0, 1, 2], [1, 0, 0], [2, 0, 0]])
    assert ps.distinct == 2
    assert len(ps) == 4
    assert ps.as_set() == {(0, 1, 2), (1, 0, 0)}
    assert PointSet.from_text(ps.to_text()) == ps
    assert len(ps.union(ps)) == 2


def test_pointset_rejects_bad_input():
    F = field_of_order(2)
    with pytest.raises(GeometryError):
        PointSet(F, 2, [[1, 0]])
    with pytest.raises(GeometryError):
        PointSet(F, 1, [[2, 0]])
    with pytest.raises(GeometryError):
        PointSet.from_text("PG 2 2\n1 0\n")


def test_flat_membership():
    F = field_of_order(5)
    fl = Flat(Matrix(F, [[1, 0, 0], [0, 1, 0]]))
    assert fl.contains(np.array([[3, 4, 0], [0, 0, 1]])).tolist() == [True, False]
    assert Flat.from_equations(F, fl.equations()).dim == 1


def test_code_pointset_round_trip():
    rng = np.random.default_rng(5)
    for _ in range(20):
        code = random_code(rng, 3, 3, 8)
        ps = pointset_from_code(code)
        back = code_from_pointset(ps)
        assert pointset_from_code(back) == ps
        # hyperplane intersections give the weights
        assert geometric_min_distance(ps) == weight_profile(code).d
        counts = hyperplane_counts(ps)
        assert sorted(len(ps) - counts) == sorted(
            int(w) for w, c in weight_profile(code).distribution.items() if w for _ in range(c // 2))


def test_degenerate_code_has_no_point_set():
    F = field_of_order(2)
    from minimalcodes.code import LinearCode

    with pytest.raises(GeometryError):
        pointset_from_code(LinearCode(Matrix(F, [[1, 0, 1], [0, 0, 1]])))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_tetrahedron_is_cutting_and_two_fold(q):
    ps = tetrahedron(q, 3).pointset
    assert is_cutting(ps)
    assert is_tfold_blocking(ps, 2)
    assert not is_tfold_blocking(ps, 3)


def test_single_baer_subplane_blocks_but_does_not_cut():
    B1, B2 = baer_partition(4)[:2]
    assert is_tfold_blocking(B1, 1)
    assert not is_tfold_blocking(B1, 2)
    scan = is_cutting(B1)
    assert not scan
    assert scan.witness_flat(B1.field).dim == 1
    assert is_cutting(B1.union(B2))


def test_line_is_not_cutting_in_the_plane():
    F = field_of_order(3)
    with pytest.raises(GeometryError):
        is_cutting(PointSet(F, 2, [[1, 0, 0], [0, 1, 0], [1, 1, 0]]))


def test_cutting_for_lines_is_codimension_two():
    # in PG(3, 2) a tetrahedron is cutting for planes; it meets every line
    ps = tetrahedron(2, 4).pointset
    assert is_cutting(ps, r=1)
    assert is_tfold_blocking(ps, 1, r=2)

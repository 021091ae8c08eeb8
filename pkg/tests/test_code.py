from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from conftest import random_code, small_params
from minimalcodes.bounds import feasibility, maximal_codeword_distance
from minimalcodes.code import (
    EnumerationLimitError,
    LinearCode,
    is_maximal_codeword,
    is_minimal_code,
    is_minimal_code_bruteforce,
    is_minimal_codeword,
    is_nondegenerate,
    is_projective,
    pless_moment,
    pless_second_moment_check,
    smaller_codeword,
    weight_profile,
)
from minimalcodes.gf import field_of_order
from minimalcodes.linalg import Matrix, projective_vectors


def simplex(q: int, k: int) -> LinearCode:
    F = field_of_order(q)
    return LinearCode(Matrix(F, projective_vectors(F, k).T))


def test_rejects_rank_deficient_generator():
    F = field_of_order(2)
    with pytest.raises(ValueError):
        LinearCode(Matrix(F, [[1, 1], [1, 1]]))


def test_identity_code_is_not_minimal_with_witness():
    code = LinearCode(Matrix(field_of_order(2), [[1, 0], [0, 1]]))
    res = is_minimal_code(code)
    assert not res
    small, big = res.witness
    assert small.tolist() == [1, 0] and big.tolist() == [1, 1]
    assert set(np.flatnonzero(small)) < set(np.flatnonzero(big))


def test_ternary_fixture_profile(ternary_fixture):
    prof = weight_profile(ternary_fixture)
    assert prof.mean == Fraction(189, 20)
    assert sum(prof.distribution.values()) == 81
    assert (prof.d, prof.w_max) == (7, 11)


@pytest.mark.parametrize("q,k", [(2, 3), (3, 3), (4, 2), (2, 4)])
def test_simplex_is_constant_weight(q, k):
    code = simplex(q, k)
    prof = weight_profile(code)
    assert prof.s == 1 and prof.d == q ** (k - 1)
    assert prof.variance == 0
    assert is_minimal_code(code)
    chk = pless_second_moment_check(code)
    assert chk.holds and chk.W2_dual == 0
    assert chk.margin == 0


def test_simplex_pless_value():
    chk = pless_second_moment_check(simplex(2, 3))
    assert chk.lhs == chk.rhs == 7 * 16


def test_duplicated_column_exceeds_projective_bound():
    F = field_of_order(3)
    code = LinearCode(Matrix(F, [[1, 0, 1, 2], [0, 1, 1, 0]]))
    chk = pless_second_moment_check(code)
    assert chk.holds
    assert chk.W2_dual == 2
    assert chk.margin > 0
    assert not is_projective(code)


def test_pless_with_zero_columns():
    F = field_of_order(2)
    code = LinearCode(Matrix(F, [[1, 0, 0, 1, 0], [0, 1, 0, 1, 0]]))
    assert not is_nondegenerate(code)
    chk = pless_second_moment_check(code)
    assert chk.W1_dual == 2
    assert chk.holds


def test_pless_moment_first_order():
    # first moment of a nondegenerate code: n (q-1) q^{k-1}
    assert pless_moment(7, 3, 2, [1, 0], r=1) == 7 * 4


def test_rank_criterion_matches_bruteforce():
    rng = np.random.default_rng(11)
    for _ in range(60):
        q, k, n = small_params(rng, max_size=2**9)
        code = random_code(rng, q, k, n, nondegenerate=False)
        res = is_minimal_code(code)
        assert res.minimal == is_minimal_code_bruteforce(code)
        if not res.minimal:
            small, big = res.witness
            s, b = set(np.flatnonzero(small)), set(np.flatnonzero(big))
            assert s < b


def test_minimal_codeword_properties():
    # minimal codewords weigh at most n - k + 1; maximal ones at least (q-1)(k-1)+1
    rng = np.random.default_rng(12)
    for _ in range(30):
        q, k, n = small_params(rng, max_size=2**8)
        code = random_code(rng, q, k, n)
        F = code.field
        for u in projective_vectors(F, k):
            w = int(np.count_nonzero(code.encode(u)))
            if is_minimal_codeword(code, u):
                assert w <= n - k + 1
            else:
                v = smaller_codeword(code, u)
                assert v is not None
                assert set(np.flatnonzero(code.encode(v))) < set(np.flatnonzero(code.encode(u)))
            if is_maximal_codeword(code, u):
                assert w >= maximal_codeword_distance(q, k)


def test_verified_minimal_codes_pass_feasibility():
    rng = np.random.default_rng(13)
    found = 0
    for _ in range(80):
        q, k, n = small_params(rng, max_size=2**9)
        code = random_code(rng, q, k, n)
        if not is_minimal_code(code):
            continue
        prof = weight_profile(code)
        rep = feasibility(q, k, n=n, d=prof.d, w=prof.w_max, s=prof.s)
        assert rep.feasible, (q, k, n, rep.failed)
        found += 1
    assert found > 5


def test_enumeration_limit_refuses():
    code = simplex(2, 5)
    with pytest.raises(EnumerationLimitError):
        weight_profile(code, max_enum=10)


def test_threads_do_not_change_results(binary_fixture):
    a = weight_profile(binary_fixture, threads=1)
    b = weight_profile(binary_fixture, threads=4)
    assert a == b
    assert is_minimal_code(binary_fixture, threads=4).minimal


def test_equal_supports_are_not_maximal():
    code = LinearCode(Matrix(field_of_order(3), [[1, 1], [1, 2]]))
    assert not is_maximal_codeword(code, [1, 0])
    assert not is_minimal_codeword(code, [1, 0])


def test_minimal_iff_all_codewords_maximal():
    rng = np.random.default_rng(14)
    for _ in range(40):
        q, k, n = small_params(rng, max_size=2**8)
        code = random_code(rng, q, k, n)
        all_max = all(is_maximal_codeword(code, u) for u in projective_vectors(code.field, k))
        assert all_max == is_minimal_code(code).minimal

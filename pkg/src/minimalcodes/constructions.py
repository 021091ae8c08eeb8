"""Explicit cutting blocking sets and the minimal codes they define.

Every builder returns a :class:`ConstructionReport` whose point set has been
re-checked by the hyperplane scan and whose minimum distance was measured by
enumeration.  Formula values are recorded next to the measured ones and a
mismatch raises :class:`VerificationError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import comb

import numpy as np

from .code import DEFAULT_MAX_ENUM, LinearCode, weight_profile
from .gf import GF, companion_matrix, field_of_order, integer_root, make_field, minimal_polynomial
from .linalg import Matrix, matmul, normalize_rows, projective_vectors, rank_array
from .projgeom import PointSet, code_from_pointset, flat_points, is_cutting


class PreconditionError(ValueError):
    pass


class VerificationError(RuntimeError):
    pass


@dataclass(frozen=True)
class SpreadElement:
    """An (r-1)-flat of PG(rt-1, q) given by an r x rt basis."""

    basis: Matrix

    @property
    def r(self) -> int:
        return self.basis.rows


@dataclass
class ConstructionReport:
    name: str
    q: int
    k: int
    pointset: PointSet
    code: LinearCode
    expected_n: int
    expected_d: int | None
    d_is_exact: bool
    verified_minimal: bool
    verified_d: int | None
    blocks: list[np.ndarray] = dc_field(default_factory=list, repr=False)

    @property
    def n(self) -> int:
        return len(self.pointset)


def _require(cond: bool, msg: str):
    if not cond:
        raise PreconditionError(msg)


def finish(name: str, ps: PointSet, expected_n: int, expected_d: int | None = None,
           d_is_exact: bool = False, blocks=None, verify: bool = True,
           max_enum: int = DEFAULT_MAX_ENUM, threads: int | None = None) -> ConstructionReport:
    """Wrap a point set into a report, verifying cutting and minimum distance."""
    q, k = ps.q, ps.N + 1
    code = code_from_pointset(ps)
    minimal, d = False, None
    if verify:
        minimal = bool(is_cutting(ps, max_enum=max_enum, threads=threads))
        d = weight_profile(code, max_enum=max_enum, threads=threads).d
    report = ConstructionReport(name, q, k, ps, code, expected_n, expected_d, d_is_exact,
                                minimal, d, list(blocks or []))
    if len(ps) != expected_n:
        raise VerificationError(f"{name}: built {len(ps)} points, formula gives {expected_n}")
    if verify:
        if not minimal:
            raise VerificationError(f"{name}({q},{k}) is not a cutting blocking set")
        if expected_d is not None:
            if d_is_exact and d != expected_d:
                raise VerificationError(f"{name}: minimum distance {d}, expected {expected_d}")
            if not d_is_exact and d < expected_d:
                raise VerificationError(f"{name}: minimum distance {d} below the bound {expected_d}")
    return report


def _unit(k: int, i: int) -> np.ndarray:
    e = np.zeros(k, dtype=np.int64)
    e[i] = 1
    return e


def _field(q: int) -> GF:
    try:
        return field_of_order(q)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None


# -- lines and tetrahedra ------------------------------------------------------


def line(q: int, verify: bool = True, **kw) -> ConstructionReport:
    """All q + 1 points of PG(1, q)."""
    F = _field(q)
    ps = PointSet(F, 1, projective_vectors(F, 2))
    return finish("line", ps, q + 1, q, True, [np.eye(2, dtype=np.int64)], verify, **kw)


def tetrahedron_points(F: GF, k: int) -> np.ndarray:
    pts = [_unit(k, i) for i in range(k)]
    for i, j in ((i, j) for i in range(k) for j in range(i + 1, k)):
        for lam in range(1, F.q):
            v = _unit(k, i)
            v[j] = lam
            pts.append(v)
    return np.array(pts, dtype=np.int64)


def tetrahedron(q: int, k: int, verify: bool = True, **kw) -> ConstructionReport:
    """Union of the lines joining k points in general position."""
    _require(k >= 2, "tetrahedron requires k >= 2")
    F = _field(q)
    ps = PointSet(F, k - 1, tetrahedron_points(F, k))
    blocks = [np.vstack([_unit(k, i), _unit(k, j)]) for i in range(k) for j in range(i + 1, k)]
    return finish("tetrahedron", ps, (q - 1) * comb(k, 2) + k, (q - 1) * (k - 1) + 1, True,
                  blocks, verify, **kw)


def rational_normal_tangent(q: int, k: int, verify: bool = True, **kw) -> ConstructionReport:
    """Tangent lines to the rational normal curve at 2k - 3 parameters.

    The lines are taken with multiplicity, so the code length is always
    (2k - 3)(q + 1); for k >= 4 the lines are pairwise disjoint anyway.
    """
    _require(k >= 2, "rational normal tangent set requires k >= 2")
    F = _field(q)
    problems = []
    if q < 2 * k - 3:
        problems.append(f"requires q >= 2k-3 (q = {q}, 2k-3 = {2 * k - 3})")
    if F.p < k:
        problems.append(f"requires p >= k (p = {F.p}, k = {k})")
    _require(not problems, "rational normal tangent set " + "; ".join(problems))
    pts, blocks = [], []
    for t in range(2 * k - 3):
        point = np.array([F.pow(t, j) for j in range(k)], dtype=np.int64)
        tangent = np.array([0] + [F.mul(j % F.p, F.pow(t, j - 1)) for j in range(1, k)], dtype=np.int64)
        basis = np.vstack([point, tangent])
        blocks.append(basis)
        pts.append(flat_points(F, basis))
    ps = PointSet(F, k - 1, np.vstack(pts))
    return finish("rnt", ps, (2 * k - 3) * (q + 1), None, False, blocks, verify, **kw)


# -- field reduction -----------------------------------------------------------


class FieldReduction:
    """GF(q^r) realized as the matrix algebra GF(q)[M] with M the companion
    matrix of the minimal polynomial of a primitive element."""

    def __init__(self, q: int, r: int):
        self.small = _field(q)
        self.r = r
        self.big = make_field(self.small.p, self.small.e * r)
        self.gamma = self.big.primitive
        self.minpoly = minimal_polynomial(self.gamma, self.big, self.small)
        if len(self.minpoly) != r + 1:  # pragma: no cover - primitive elements have full degree
            raise VerificationError("minimal polynomial of a primitive element has the wrong degree")
        self.M = companion_matrix(self.small, self.minpoly)
        self._pow = {0: Matrix.identity(self.small, r)}

    def power(self, i: int) -> np.ndarray:
        """M^i, the image of gamma^i."""
        i %= self.big.q - 1
        if i not in self._pow:
            self._pow[i] = self.M ** i
        return self._pow[i].data

    def phi(self, a: int) -> np.ndarray:
        if a == 0:
            return np.zeros((self.r, self.r), dtype=np.int64)
        return self.power(int(self.big.log(a)))

    def reduce_vector(self, v) -> np.ndarray:
        """(phi(v_1) | ... | phi(v_t)), an r x rt matrix over GF(q)."""
        return np.hstack([self.phi(int(a)) for a in v])

    def reduce_log_vector(self, logs) -> np.ndarray:
        """Same, with entries given as exponents of gamma (None for zero)."""
        zero = np.zeros((self.r, self.r), dtype=np.int64)
        return np.hstack([zero if i is None else self.power(i) for i in logs])


@lru_cache(maxsize=None)
def field_reduction(q: int, r: int) -> FieldReduction:
    return FieldReduction(q, r)


def desarguesian_spread(q: int, r: int, t: int, max_enum: int = DEFAULT_MAX_ENUM) -> list[SpreadElement]:
    """Images of all points of PG(t-1, q^r) as (r-1)-flats of PG(rt-1, q)."""
    _require(r >= 1 and t >= 1, "spread parameters must be positive")
    fr = field_reduction(q, r)
    count = (fr.big.q**t - 1) // (fr.big.q - 1)
    if count > max_enum:
        raise PreconditionError(f"spread has {count} elements, over the limit {max_enum}")
    return [SpreadElement(Matrix(fr.small, fr.reduce_vector(v))) for v in projective_vectors(fr.big, t)]


def valid_pair(q: int, r: int, i: int, j: int) -> bool:
    """j - i is nonzero modulo (q^s - 1)/(q - 1) for every divisor s > 1 of r."""
    return all((j - i) % ((q**s - 1) // (q - 1)) != 0 for s in range(2, r + 1) if r % s == 0)


def default_pair(q: int, r: int) -> tuple[int, int]:
    i, j = q**r - 1, 1
    if valid_pair(q, r, i, j):
        return i, j
    for i in range(1, q**r):  # pragma: no cover - the default is always valid
        for j in range(i + 1, q**r):
            if valid_pair(q, r, i, j):
                return i, j
    raise PreconditionError("no valid pair of exponents")  # pragma: no cover


def spread_blocks(q: int, r: int, t: int, pairs: dict | None = None) -> list[np.ndarray]:
    """The t^2 spread elements: images of e_l and of e_l + gamma^i e_m,
    e_l + gamma^j e_m for each pair l < m."""
    fr = field_reduction(q, r)
    pairs = dict(pairs or {})
    blocks = []
    for l in range(t):
        logs = [None] * t
        logs[l] = 0
        blocks.append(fr.reduce_log_vector(logs))
    for l in range(t):
        for m in range(l + 1, t):
            i, j = pairs.get((l, m), default_pair(q, r))
            for x in (i, j):
                if not 1 <= x <= q**r - 1:
                    raise PreconditionError(f"exponent {x} outside [1, q^r - 1]")
            if not valid_pair(q, r, i, j):
                raise PreconditionError(
                    f"pair ({i}, {j}) for blocks ({l}, {m}) violates j - i != 0 mod (q^s-1)/(q-1)"
                )
            for x in (i, j):
                logs = [None] * t
                logs[l] = 0
                logs[m] = x
                blocks.append(fr.reduce_log_vector(logs))
    return blocks


def spread_cutting_set(q: int, r: int, t: int, pairs: dict | None = None, verify: bool = True,
                       allow_single: bool = False, **kw) -> ConstructionReport:
    """Union of t^2 elements of a Desarguesian (r-1)-spread of PG(rt-1, q)."""
    _require(t >= 2 or (allow_single and t >= 1), "spread cutting set requires t >= 2")
    F = _field(q)
    blocks = spread_blocks(q, r, t, pairs)
    ps = PointSet(F, r * t - 1, np.vstack([flat_points(F, b) for b in blocks]))
    n = t * t * (q**r - 1) // (q - 1)
    return finish(f"spread(r={r})", ps, n, None, False, blocks, verify, **kw)


def even_lines_code(q: int, k: int, verify: bool = True, **kw) -> ConstructionReport:
    """k^2/4 lines of a Desarguesian line spread of PG(k-1, q)."""
    _require(k % 2 == 0 and k >= 2, f"even-lines construction requires even k (got k = {k})")
    rep = spread_cutting_set(q, 2, k // 2, verify=False, allow_single=True)
    return finish("even-lines", rep.pointset, (q + 1) * k * k // 4, q * (k - 1), True,
                  rep.blocks, verify, **kw)


# -- Baer subplanes ------------------------------------------------------------


def baer_partition(q: int) -> list[PointSet]:
    """PG(2, q), q square, split into q - sqrt(q) + 1 disjoint Baer subplanes.

    The points are e_1 M^i for a Singer cycle M; the subplanes are the orbits
    of the subgroup of order q + sqrt(q) + 1.
    """
    s = integer_root(q, 2)
    _require(s is not None, f"Baer subplanes require a square q (got q = {q})")
    fr = field_reduction(q, 3)
    F = fr.small
    order = q * q + q + 1
    pts = np.empty((order, 3), dtype=np.int64)
    v = _unit(3, 0)[None, :]
    for i in range(order):
        pts[i] = v[0]
        v = matmul(F, v, fr.M.data)
    pts = normalize_rows(F, pts)
    step = q - s + 1
    return [PointSet(F, 2, pts[np.arange(c, order, step)]) for c in range(step)]


def baer_pair(q: int, verify: bool = True, **kw) -> ConstructionReport:
    """Two disjoint Baer subplanes of PG(2, q)."""
    parts = baer_partition(q)
    ps = parts[0].union(parts[1])
    s = integer_root(q, 2)
    return finish("baer", ps, 2 * (q + s + 1), 2 * q, False, [np.eye(3, dtype=np.int64)], verify, **kw)


def substitute_blocks(field: GF, N: int, blocks, inners) -> PointSet:
    """Replace each block flat by the image of a cutting set of its own space.

    ``blocks`` are basis matrices (r_i x (N+1)); ``inners`` are point sets of
    PG(r_i - 1, q) mapped in through x -> x B_i.
    """
    out = []
    for B, inner in zip(blocks, inners, strict=True):
        B = np.atleast_2d(np.asarray(B, dtype=np.int64))
        if inner.N + 1 != B.shape[0]:
            raise PreconditionError("inner point set lives in a space of the wrong dimension")
        if rank_array(field, B) != B.shape[0]:
            raise PreconditionError("block basis is not independent")
        if not inner.spans():
            raise PreconditionError("inner point set does not span its flat")
        out.append(matmul(field, inner.points, B))
    return PointSet(field, N, np.vstack(out))


def baer_code(q: int, k: int, verify: bool = True, **kw) -> ConstructionReport:
    """k^2/9 planes of a Desarguesian plane spread, each replaced by two
    disjoint Baer subplanes."""
    s = integer_root(q, 2)
    _require(k % 3 == 0 and k >= 3, f"Baer construction requires k divisible by 3 (got k = {k})")
    _require(s is not None, f"Baer construction requires a square q (got q = {q})")
    F = _field(q)
    t = k // 3
    blocks = spread_blocks(q, 3, t) if t > 1 else [np.eye(3, dtype=np.int64)]
    pair = baer_pair(q, verify=False)
    ps = substitute_blocks(F, k - 1, blocks, [pair.pointset] * len(blocks))
    n = 2 * t * t * (q + s + 1)
    return finish("baer", ps, n, q * (4 * k // 3 - 2), False, blocks, verify, **kw)


# -- lifting to one dimension more ---------------------------------------------


def lift_pointset(inner: PointSet) -> tuple[PointSet, np.ndarray]:
    """Embed ``inner`` as the hyperplane x_k = 0 of PG(k, q) and add the
    lines from P = e_k to k spanning inner points, minus those points."""
    F, k = inner.field, inner.N + 1
    emb = np.hstack([inner.points, np.zeros((inner.distinct, 1), dtype=np.int64)])
    chosen = []
    for p in emb:
        if rank_array(F, np.array(chosen + [p])) == len(chosen) + 1:
            chosen.append(p)
        if len(chosen) == k:
            break
    if len(chosen) < k:
        raise PreconditionError("inner point set does not span its space")
    P = _unit(k + 1, k)
    new = [P] + [F.add(c, F.mul(lam, P)) for c in chosen for lam in range(1, F.q)]
    return PointSet(F, k, np.vstack([emb] + new)), np.array(chosen)


def lift(inner: ConstructionReport, verify: bool = True, **kw) -> ConstructionReport:
    q, k = inner.q, inner.k
    ps, chosen = lift_pointset(inner.pointset)
    return finish(f"lift:{inner.name}", ps, len(inner.pointset) + (q - 1) * k + 1,
                  (q - 1) * k + 1, True, [], verify, **kw)


# -- dispatch ------------------------------------------------------------------


def build(name: str, q: int, k: int, verify: bool = True, **kw) -> ConstructionReport:
    """Construct by CLI name: tetrahedron, rnt, even-lines, baer, line,
    best, or lift:<inner> (inner built for k - 1)."""
    if name.startswith("lift:"):
        _require(k >= 3, "lift needs k >= 3 (the inner set lives in PG(k-2, q))")
        inner = build(name[5:], q, k - 1, verify=verify, **kw)
        return lift(inner, verify=verify, **kw)
    if name == "tetrahedron":
        return tetrahedron(q, k, verify, **kw)
    if name == "rnt":
        return rational_normal_tangent(q, k, verify, **kw)
    if name == "even-lines":
        return even_lines_code(q, k, verify, **kw)
    if name == "baer":
        return baer_code(q, k, verify, **kw)
    if name == "line":
        _require(k == 2, "line requires k = 2")
        return line(q, verify, **kw)
    if name == "best":
        return best_known(q, k, verify, **kw)
    raise PreconditionError(f"unknown construction {name!r}")


def best_known(q: int, k: int, verify: bool = True, **kw) -> ConstructionReport:
    """The shortest of the explicit families applicable to (q, k)."""
    from .bounds import best_known_plan

    name, _ = best_known_plan(q, k)
    if name == "line":
        return line(q, verify, **kw)
    if k == 3 and name == "lift:even-lines":
        return tetrahedron(q, 3, verify, **kw)
    return build(name, q, k, verify, **kw)

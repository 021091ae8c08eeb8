"""Projective spaces PG(N, q), point multisets and blocking-set checks.

Points are rows of N + 1 element encodings scaled so that the first nonzero
coordinate is 1.  A flat of projective dimension D is the zero set of an
(N - D) x (N + 1) matrix of independent linear forms, which is how flats are
iterated here: a hyperplane is one normal vector, a general (N - r)-flat is
an r-dimensional space of forms in reduced echelon form.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterator

import numpy as np

from .code import DEFAULT_MAX_ENUM, EnumerationLimitError, LinearCode, is_nondegenerate
from .gf import GF, field_of_order
from .linalg import (
    Matrix,
    iter_projective_vectors,
    kernel,
    matmul,
    normalize_rows,
    projective_count,
    rank_array,
    rref,
)


class GeometryError(ValueError):
    pass


def normalize(field: GF, v) -> tuple[int, ...]:
    return tuple(int(x) for x in normalize_rows(field, v)[0])


def enumerate_points(N: int, field: GF, max_enum: int = DEFAULT_MAX_ENUM) -> np.ndarray:
    """All points of PG(N, q) in lexicographic order of their coordinates."""
    count = projective_count(field.q, N + 1)
    if count > max_enum:
        raise EnumerationLimitError(f"PG({N},{field.q}) has {count} points, over the limit {max_enum}")
    return np.vstack(list(iter_projective_vectors(field, N + 1)))


class PointSet:
    """A multiset of points of PG(N, q), kept sorted and deduplicated."""

    __slots__ = ("field", "N", "points", "mult")

    def __init__(self, field: GF, N: int, points, mult=None):
        pts = np.asarray(points, dtype=np.int64)
        if pts.size == 0:
            pts = pts.reshape(0, N + 1)
        pts = np.atleast_2d(pts)
        if pts.shape[1] != N + 1:
            raise GeometryError(f"points of PG({N},q) need {N + 1} coordinates")
        if pts.size and (pts.min() < 0 or pts.max() >= field.q):
            raise GeometryError("coordinates must be element encodings")
        m = np.ones(len(pts), dtype=np.int64) if mult is None else np.asarray(mult, dtype=np.int64)
        if len(m) != len(pts) or (m.size and m.min() < 1):
            raise GeometryError("multiplicities must be positive, one per point")
        if len(pts):
            pts = normalize_rows(field, pts)
            uniq, inv = np.unique(pts, axis=0, return_inverse=True)
            agg = np.zeros(len(uniq), dtype=np.int64)
            np.add.at(agg, inv.reshape(-1), m)
            pts, m = uniq, agg
        self.field = field
        self.N = N
        self.points = pts
        self.mult = m

    @property
    def q(self) -> int:
        return self.field.q

    def __len__(self) -> int:
        """Size counted with multiplicity."""
        return int(self.mult.sum())

    @property
    def distinct(self) -> int:
        return len(self.points)

    def expanded(self) -> np.ndarray:
        return np.repeat(self.points, self.mult, axis=0)

    def union(self, *others: "PointSet") -> "PointSet":
        """Set union: multiplicities are dropped."""
        for o in others:
            if o.field != self.field or o.N != self.N:
                raise GeometryError("point sets live in different spaces")
        pts = np.vstack([self.points] + [o.points for o in others])
        return PointSet(self.field, self.N, np.unique(pts, axis=0))

    def as_set(self) -> set[tuple[int, ...]]:
        return {tuple(int(x) for x in p) for p in self.points}

    def spans(self) -> bool:
        return rank_array(self.field, self.points) == self.N + 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PointSet)
            and self.field == other.field
            and self.N == other.N
            and np.array_equal(self.points, other.points)
            and np.array_equal(self.mult, other.mult)
        )

    def __repr__(self) -> str:
        return f"PointSet(PG({self.N},{self.q}), {len(self)} points)"

    def to_text(self) -> str:
        lines = [f"PG {self.N} {self.q}"]
        lines += [" ".join(str(int(x)) for x in p) for p in self.expanded()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PointSet":
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not rows or rows[0][0] != "PG" or len(rows[0]) != 3:
            raise GeometryError("point set file must start with 'PG N q'")
        N, q = int(rows[0][1]), int(rows[0][2])
        field = field_of_order(q)
        pts = [[int(x) for x in r] for r in rows[1:]]
        for i, r in enumerate(pts, start=2):
            if len(r) != N + 1:
                raise GeometryError(f"line {i}: expected {N + 1} coordinates, got {len(r)}")
        return cls(field, N, np.array(pts, dtype=np.int64).reshape(len(pts), N + 1))


@dataclass(frozen=True)
class Flat:
    """The projective flat spanned by the rows of ``basis``."""

    basis: Matrix

    def __post_init__(self):
        if rank_array(self.basis.field, self.basis.data) != self.basis.rows:
            raise GeometryError("flat basis rows must be independent")

    @property
    def dim(self) -> int:
        return self.basis.rows - 1

    @classmethod
    def from_equations(cls, field: GF, eqs) -> "Flat":
        return cls(kernel(Matrix(field, np.atleast_2d(eqs))))

    def equations(self) -> np.ndarray:
        return kernel(self.basis).data

    def contains(self, pts) -> np.ndarray:
        eqs = self.equations()
        pts = np.atleast_2d(pts)
        if eqs.shape[0] == 0:
            return np.ones(len(pts), dtype=bool)
        return ~np.any(matmul(self.basis.field, pts, eqs.T) != 0, axis=1)

    def points(self) -> np.ndarray:
        F = self.basis.field
        msgs = np.vstack(list(iter_projective_vectors(F, self.basis.rows)))
        return normalize_rows(F, matmul(F, msgs, self.basis.data))


# -- code <-> projective system ------------------------------------------------


def pointset_from_code(code: LinearCode) -> PointSet:
    if not is_nondegenerate(code):
        raise GeometryError("a degenerate code has a zero column, which is not a point")
    return PointSet(code.field, code.k - 1, code.G.data.T)


def code_from_pointset(ps: PointSet) -> LinearCode:
    if not ps.spans():
        raise GeometryError("the points lie in a hyperplane; the code would have smaller dimension")
    return LinearCode(Matrix(ps.field, ps.expanded().T))


# -- iterating flats -----------------------------------------------------------


def gaussian_binomial(n: int, d: int, q: int) -> int:
    if d < 0 or d > n:
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def iter_subspaces(field: GF, n: int, d: int) -> Iterator[np.ndarray]:
    """Every d-dimensional subspace of GF(q)^n as its d x n RREF basis."""
    q = field.q
    for piv in combinations(range(n), d):
        free = [(i, c) for i in range(d) for c in range(piv[i] + 1, n) if c not in piv]
        base = np.zeros((d, n), dtype=np.int64)
        for i, c in enumerate(piv):
            base[i, c] = 1
        for vals in product(range(q), repeat=len(free)):
            m = base.copy()
            for (i, c), v in zip(free, vals):
                m[i, c] = v
            yield m


def hyperplane_normals(N: int, field: GF, max_enum: int = DEFAULT_MAX_ENUM) -> np.ndarray:
    return enumerate_points(N, field, max_enum)


def hyperplanes(N: int, field: GF, max_enum: int = DEFAULT_MAX_ENUM) -> list[Flat]:
    return [Flat.from_equations(field, u) for u in hyperplane_normals(N, field, max_enum)]


def _eq_blocks(N: int, field: GF, r: int, max_enum: int, chunk: int = 1 << 12) -> Iterator[np.ndarray]:
    """Blocks of equation matrices (shape b x r x (N+1)) for the (N - r)-flats."""
    if not 1 <= r <= N:
        raise GeometryError(f"codimension r must lie in [1, {N}]")
    count = gaussian_binomial(N + 1, r, field.q)
    if count > max_enum:
        raise EnumerationLimitError(f"{count} flats exceed the enumeration limit {max_enum}")
    if r == 1:
        for blk in iter_projective_vectors(field, N + 1, chunk):
            yield blk[:, None, :]
        return
    buf = []
    for m in iter_subspaces(field, N + 1, r):
        buf.append(m)
        if len(buf) == chunk:
            yield np.stack(buf)
            buf = []
    if buf:
        yield np.stack(buf)


def _incidence(ps: PointSet, eqs: np.ndarray) -> np.ndarray:
    """Boolean (flats x points) matrix: point lies on the flat."""
    b, r, n1 = eqs.shape
    vals = matmul(ps.field, ps.points, eqs.reshape(b * r, n1).T)  # points x (b*r)
    return ~np.any(vals.reshape(len(ps.points), b, r) != 0, axis=2).T


@dataclass(frozen=True)
class FlatScan:
    ok: bool
    checked: int
    witness: np.ndarray | None = None  # equations of the first failing flat

    def __bool__(self) -> bool:
        return self.ok

    def witness_flat(self, field: GF) -> Flat | None:
        return None if self.witness is None else Flat.from_equations(field, self.witness)


def _scan(ps: PointSet, r: int, bad: Callable[[np.ndarray, np.ndarray], np.ndarray],
          max_enum: int, threads: int | None) -> FlatScan:
    """Run ``bad(eqs_block, incidence)`` per block; report the first failing flat."""

    def run(eqs):
        inc = _incidence(ps, eqs)
        hits = np.flatnonzero(bad(eqs, inc))
        return (len(eqs), None if hits.size == 0 else int(hits[0]))

    checked = 0
    blocks = _eq_blocks(ps.N, ps.field, r, max_enum)
    if threads and threads > 1:
        blocks = list(blocks)
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(run, blocks))
        pairs = zip(blocks, results)
    else:
        pairs = ((eqs, run(eqs)) for eqs in blocks)
    for eqs, (size, hit) in pairs:
        if hit is not None:
            return FlatScan(False, checked + hit + 1, eqs[hit])
        checked += size
    return FlatScan(True, checked)


def is_cutting(ps: PointSet, r: int = 1, max_enum: int = DEFAULT_MAX_ENUM, threads: int | None = None) -> FlatScan:
    """Every (N - r)-flat is spanned by the points of ``ps`` lying on it."""
    if not ps.spans():
        raise GeometryError("point set does not span the ambient space")
    F, target = ps.field, ps.N + 1 - r

    def bad(eqs, inc):
        out = np.zeros(len(eqs), dtype=bool)
        for i in range(len(eqs)):
            on = inc[i]
            out[i] = on.sum() < target or rank_array(F, ps.points[on]) < target
            if out[i]:
                break
        return out

    return _scan(ps, r, bad, max_enum, threads)


def is_tfold_blocking(ps: PointSet, t: int, r: int = 1, with_multiplicity: bool = False,
                      max_enum: int = DEFAULT_MAX_ENUM, threads: int | None = None) -> FlatScan:
    """Every (N - r)-flat meets ``ps`` in at least t points."""
    w = ps.mult if with_multiplicity else np.ones(ps.distinct, dtype=np.int64)
    return _scan(ps, r, lambda eqs, inc: inc.astype(np.int64) @ w < t, max_enum, threads)


def hyperplane_counts(ps: PointSet, max_enum: int = DEFAULT_MAX_ENUM) -> np.ndarray:
    """|H ∩ P| with multiplicity for every hyperplane, in normal-vector order."""
    out = [_incidence(ps, eqs).astype(np.int64) @ ps.mult for eqs in _eq_blocks(ps.N, ps.field, 1, max_enum)]
    return np.concatenate(out)


def geometric_min_distance(ps: PointSet, max_enum: int = DEFAULT_MAX_ENUM) -> int:
    return len(ps) - int(hyperplane_counts(ps, max_enum).max())


def span_rank(field: GF, pts) -> int:
    return rank_array(field, np.atleast_2d(pts))


def flat_points(field: GF, basis) -> np.ndarray:
    return Flat(Matrix(field, np.atleast_2d(basis))).points()


def canonical_basis(field: GF, basis) -> np.ndarray:
    """RREF of a flat basis, the canonical key of the flat."""
    m, piv = rref(Matrix(field, np.atleast_2d(basis)))
    return m.data[: len(piv)]

"""Dense exact linear algebra over GF(q).

Matrices hold element encodings in an int64 array.  Row reduction uses exact
field inverses, so there is no notion of a pivot tolerance.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .gf import GF


class Matrix:
    """A dense matrix over a finite field; compared structurally."""

    __slots__ = ("field", "data")

    def __init__(self, field: GF, data):
        a = np.array(data, dtype=np.int64)
        if a.ndim == 1:
            a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
        if a.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        if a.size and (a.min() < 0 or a.max() >= field.q):
            raise ValueError(f"entries must lie in [0, {field.q})")
        self.field = field
        self.data = a

    @classmethod
    def identity(cls, field: GF, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: GF, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.data.T)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if other.field != self.field:
            raise ValueError("matrices over different fields")
        return Matrix(self.field, matmul(self.field, self.data, other.data))

    def __getitem__(self, idx) -> "Matrix":
        return Matrix(self.field, np.atleast_2d(self.data[idx]))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.data.shape == other.data.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.field, self.data.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        body = "\n".join(" ".join(str(int(x)) for x in row) for row in self.data)
        return f"Matrix over {self.field} ({self.rows}x{self.cols})\n{body}"

    def __pow__(self, n: int) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if n < 0:
            return inverse(self) ** (-n)
        result = Matrix.identity(self.field, self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def hstack(self, *others: "Matrix") -> "Matrix":
        return Matrix(self.field, np.hstack([self.data] + [o.data for o in others]))

    def vstack(self, *others: "Matrix") -> "Matrix":
        return Matrix(self.field, np.vstack([self.data] + [o.data for o in others]))


def matmul(field: GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of two encoded arrays over ``field``."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[-1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if field.e == 1:
        # entries < p <= 2**20; partial sums stay far below 2**63 for any sane inner size
        return (a @ b) % field.p
    out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    for j in range(a.shape[-1]):
        out = field.add(out, field.mul(a[..., j, None], b[j]))
    return out


def _rref(field: GF, a: np.ndarray, max_rank: int | None = None) -> tuple[np.ndarray, list[int]]:
    a = np.array(a, dtype=np.int64)
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    limit = m if max_rank is None else min(m, max_rank)
    for c in range(n):
        if r >= limit:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = field.mul(field.inv(piv), a[r])
        col = a[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            a[rows] = field.sub(a[rows], field.mul(col[rows, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return a, pivots


def rank_array(field: GF, a: np.ndarray) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    # eliminate along the short side
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(_rref(field, a)[1])


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the strictly increasing pivot columns."""
    if m.data.size == 0:
        return Matrix(m.field, m.data.copy()), []
    r, piv = _rref(m.field, m.data)
    return Matrix(m.field, r), piv


def rank(m: Matrix) -> int:
    return rank_array(m.field, m.data)


def kernel(m: Matrix) -> Matrix:
    """Basis of the right null space, one vector per row."""
    field = m.field
    n = m.cols
    if m.rows == 0:
        return Matrix.identity(field, n)
    r, piv = _rref(field, m.data)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for i, pc in enumerate(piv):
            basis[row, pc] = field.neg(int(r[i, f]))
    return Matrix(field, basis.reshape(len(free), n))


def row_basis(m: Matrix) -> Matrix:
    """Nonzero rows of the RREF: canonical basis of the row space."""
    r, piv = rref(m)
    return Matrix(m.field, r.data[: len(piv)].reshape(len(piv), m.cols))


def same_rowspace(a: Matrix, b: Matrix) -> bool:
    if a.cols != b.cols:
        raise ValueError("row spaces live in spaces of different dimension")
    if a.field != b.field:
        raise ValueError("matrices over different fields")
    return row_basis(a) == row_basis(b)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = np.hstack([m.data, np.eye(n, dtype=np.int64)])
    r, piv = _rref(m.field, aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix(m.field, r[:, n:])


def complete_basis(field: GF, rows: np.ndarray) -> np.ndarray:
    """Extend independent rows to a basis of the full space with unit vectors."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
    n = rows.shape[1]
    out = [r for r in rows]
    rk = rank_array(field, rows)
    if rk != len(out):
        raise ValueError("rows are not independent")
    for i in range(n):
        if rk == n:
            break
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        cand = np.vstack(out + [e])
        if rank_array(field, cand) > rk:
            out.append(e)
            rk += 1
    return np.vstack(out)


# -- enumeration of vectors ---------------------------------------------------


def all_vectors(field: GF, k: int) -> np.ndarray:
    """All ``q**k`` vectors of GF(q)^k in lexicographic order."""
    q = field.q
    idx = np.arange(q**k, dtype=np.int64)
    return (idx[:, None] // q ** np.arange(k - 1, -1, -1, dtype=np.int64)) % q


def projective_count(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1)


def iter_projective_vectors(field: GF, k: int, chunk: int = 1 << 15) -> Iterator[np.ndarray]:
    """Normalized representatives (first nonzero entry 1) in lexicographic order."""
    q = field.q
    for lead in range(k - 1, -1, -1):
        tail = k - lead - 1
        total = q**tail
        place = q ** np.arange(tail - 1, -1, -1, dtype=np.int64)
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            block = np.zeros((idx.size, k), dtype=np.int64)
            block[:, lead] = 1
            if tail:
                block[:, lead + 1 :] = (idx[:, None] // place) % q
            yield block


def projective_vectors(field: GF, k: int) -> np.ndarray:
    return np.vstack(list(iter_projective_vectors(field, k)))


def normalize_rows(field: GF, a: np.ndarray) -> np.ndarray:
    """Scale each nonzero row so its first nonzero entry is 1."""
    a = np.atleast_2d(np.asarray(a, dtype=np.int64))
    nz = a != 0
    if not nz.any(axis=1).all():
        raise ValueError("cannot normalize a zero vector")
    lead = a[np.arange(a.shape[0]), nz.argmax(axis=1)]
    return field.mul(field.inv(lead)[:, None], a)

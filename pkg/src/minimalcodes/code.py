"""Linear codes: codeword enumeration, weight statistics, minimality.

Codewords are enumerated one per scalar class (messages whose first nonzero
entry is 1).  Supports are invariant under scaling, so every count over the
full code is the class count times ``q - 1``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterator

import numpy as np

from .gf import GF
from .linalg import (
    Matrix,
    iter_projective_vectors,
    kernel,
    matmul,
    normalize_rows,
    projective_count,
    rank,
    rank_array,
)

DEFAULT_MAX_ENUM = 2**26


class EnumerationLimitError(RuntimeError):
    pass


def support(v) -> tuple[int, ...]:
    return tuple(int(i) for i in np.flatnonzero(np.asarray(v)))


def weight(v) -> int:
    return int(np.count_nonzero(np.asarray(v)))


def check_enum(q: int, k: int, max_enum: int = DEFAULT_MAX_ENUM) -> int:
    classes = projective_count(q, k)
    if classes > max_enum:
        raise EnumerationLimitError(
            f"{classes} codeword classes exceed the enumeration limit {max_enum}"
        )
    return classes


@dataclass(frozen=True, eq=False)
class LinearCode:
    """An [n, k]_q code given by a full-rank k x n generator matrix."""

    G: Matrix

    def __post_init__(self):
        if self.G.rows < 1:
            raise ValueError("a code needs at least one generator row")
        if rank(self.G) != self.G.rows:
            raise ValueError("generator matrix must have full row rank")

    @classmethod
    def from_rows(cls, field: GF, rows) -> "LinearCode":
        return cls(Matrix(field, rows))

    @property
    def field(self) -> GF:
        return self.G.field

    @property
    def q(self) -> int:
        return self.G.field.q

    @property
    def n(self) -> int:
        return self.G.cols

    @property
    def k(self) -> int:
        return self.G.rows

    def __repr__(self) -> str:
        return f"LinearCode[{self.n},{self.k}]_{self.q}"

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearCode) and self.G == other.G

    def __hash__(self):
        return hash(self.G)

    def encode(self, u) -> np.ndarray:
        u = np.atleast_2d(np.asarray(u, dtype=np.int64))
        out = matmul(self.field, u, self.G.data)
        return out[0] if out.shape[0] == 1 else out

    def classes(self, chunk: int = 1 << 14, max_enum: int = DEFAULT_MAX_ENUM) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        """Yield ``(messages, codewords)`` blocks, one message per scalar class."""
        check_enum(self.q, self.k, max_enum)
        for msgs in iter_projective_vectors(self.field, self.k, chunk):
            yield msgs, matmul(self.field, msgs, self.G.data)

    @cached_property
    def profile(self) -> "WeightProfile":
        return weight_profile(self)


@dataclass(frozen=True)
class WeightProfile:
    distribution: dict[int, int]
    d: int
    w_max: int
    mean: Fraction
    variance: Fraction
    s: int
    sum_squares: int = dc_field(default=0, repr=False)


def _class_weights(code: LinearCode, max_enum: int, threads: int | None) -> np.ndarray:
    check_enum(code.q, code.k, max_enum)
    blocks = list(iter_projective_vectors(code.field, code.k))

    def run(msgs):
        return np.count_nonzero(matmul(code.field, msgs, code.G.data), axis=1)

    if threads and threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(run, blocks))
    else:
        parts = [run(b) for b in blocks]
    return np.concatenate(parts)


def weight_profile(code: LinearCode, max_enum: int = DEFAULT_MAX_ENUM, threads: int | None = None) -> WeightProfile:
    q, k = code.q, code.k
    w = _class_weights(code, max_enum, threads)
    vals, counts = np.unique(w, return_counts=True)
    dist = {0: 1}
    for v, c in zip(vals.tolist(), counts.tolist()):
        dist[v] = dist.get(v, 0) + c * (q - 1)
    nonzero = {v: c for v, c in dist.items() if v}
    total = q**k - 1
    s1 = sum(v * c for v, c in nonzero.items())
    s2 = sum(v * v * c for v, c in nonzero.items())
    mean = Fraction(s1, total)
    var = Fraction(s2, total) - mean * mean
    pos = sorted(nonzero)
    return WeightProfile(
        distribution=dict(sorted(dist.items())),
        d=pos[0] if pos else 0,
        w_max=pos[-1] if pos else 0,
        mean=mean,
        variance=var,
        s=len(pos),
        sum_squares=s2,
    )


def is_nondegenerate(code: LinearCode) -> bool:
    return bool(np.all(np.any(code.G.data != 0, axis=0)))


def proportional_pairs(code: LinearCode) -> int:
    """Number of unordered pairs of nonzero, proportional columns."""
    cols = code.G.data.T
    nz = cols[np.any(cols != 0, axis=1)]
    if len(nz) == 0:
        return 0
    _, counts = np.unique(normalize_rows(code.field, nz), axis=0, return_counts=True)
    return int(sum(comb(int(c), 2) for c in counts))


def is_projective(code: LinearCode) -> bool:
    return is_nondegenerate(code) and proportional_pairs(code) == 0


# -- minimality ----------------------------------------------------------------


@dataclass(frozen=True)
class MinimalityResult:
    minimal: bool
    checked: int
    # (smaller codeword, codeword whose support strictly contains it)
    witness: tuple[np.ndarray, np.ndarray] | None = None
    witness_messages: tuple[np.ndarray, np.ndarray] | None = None

    def __bool__(self) -> bool:
        return self.minimal


def _check_message(code: LinearCode, u) -> np.ndarray:
    u = np.asarray(u, dtype=np.int64).reshape(-1)
    if u.shape[0] != code.k:
        raise ValueError(f"message must have length {code.k}")
    if not u.any():
        raise ValueError("the zero message has no minimality status")
    return u


def _outside(code: LinearCode, c: np.ndarray) -> np.ndarray:
    return code.G.data[:, c == 0]


def is_minimal_codeword(code: LinearCode, u) -> bool:
    """uG is minimal iff the columns outside its support have rank k - 1.

    The messages v with supp(vG) inside supp(uG) are exactly the left kernel
    of those columns, so rank k - 1 leaves only the multiples of u.
    """
    u = _check_message(code, u)
    c = code.encode(u)
    return rank_array(code.field, _outside(code, c)) == code.k - 1


def smaller_codeword(code: LinearCode, u) -> np.ndarray | None:
    """A message v whose codeword support is strictly inside supp(uG), if any."""
    F = code.field
    u = normalize_rows(F, _check_message(code, u))[0]
    c = code.encode(u)
    outside = _outside(code, c)
    ker = kernel(Matrix(F, outside.T)) if outside.shape[1] else Matrix.identity(F, code.k)
    if ker.rows < 2:
        return None
    for v in ker.data:
        if not np.array_equal(normalize_rows(F, v)[0], u):
            break
    cv = code.encode(v)
    if np.count_nonzero(cv) == np.count_nonzero(c):
        # equal supports: cancel one coordinate of u - lam v
        i = int(np.flatnonzero(c)[0])
        lam = F.div(int(c[i]), int(cv[i]))
        v = F.sub(u, F.mul(lam, v))
    return normalize_rows(F, v)[0]


def is_minimal_code(code: LinearCode, max_enum: int = DEFAULT_MAX_ENUM, threads: int | None = None) -> MinimalityResult:
    """Rank criterion on every scalar class; reports the first failure."""
    F, k = code.field, code.k

    def scan(msgs):
        cws = matmul(F, msgs, code.G.data)
        for idx in range(len(msgs)):
            if rank_array(F, code.G.data[:, cws[idx] == 0]) != k - 1:
                return idx
        return None

    blocks = list(code.classes(chunk=1 << 12, max_enum=max_enum))
    checked = 0
    if threads and threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(threads) as ex:
            hits = list(ex.map(lambda b: scan(b[0]), blocks))
    else:
        hits = []
        for b in blocks:
            hits.append(scan(b[0]))
            if hits[-1] is not None:
                break
    for (msgs, _), hit in zip(blocks, hits):
        if hit is None:
            checked += len(msgs)
            continue
        u = msgs[hit]
        v = smaller_codeword(code, u)
        return MinimalityResult(
            minimal=False,
            checked=checked + hit + 1,
            witness=(code.encode(v), code.encode(u)),
            witness_messages=(v, u),
        )
    return MinimalityResult(minimal=True, checked=checked)


def is_minimal_code_bruteforce(code: LinearCode, max_enum: int = 2**13) -> bool:
    """Definitional check: no class support contains another class support."""
    check_enum(code.q, code.k, max_enum)
    cws = np.vstack([c for _, c in code.classes()])
    S = (cws != 0).astype(np.int64)
    inter = S @ S.T
    contained = inter == S.sum(axis=1)[:, None]
    np.fill_diagonal(contained, False)
    return not bool(contained.any())


def is_maximal_codeword(code: LinearCode, u, max_enum: int = DEFAULT_MAX_ENUM) -> bool:
    """True iff no non-proportional codeword has a support containing supp(uG).

    Equal supports count: over q > 2 two non-proportional codewords can share
    a support, and then neither is maximal.
    """
    u = normalize_rows(code.field, _check_message(code, u))[0]
    mask = code.encode(u) != 0
    for msgs, cws in code.classes(max_enum=max_enum):
        nz = cws != 0
        covers = np.all(nz[:, mask], axis=1) & ~np.all(msgs == u, axis=1)
        if covers.any():
            return False
    return True


# -- second moment -------------------------------------------------------------


def _stirling2(r: int, j: int) -> int:
    return sum((-1) ** (j - i) * comb(j, i) * i**r for i in range(j + 1)) // _fact(j)


def _fact(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def pless_moment(n: int, k: int, q: int, dual_counts: list[int], r: int = 2) -> int:
    """Right side of the r-th Pless power moment, sum_j j^r A_j.

    ``dual_counts[v]`` is the number of weight-v words of the dual code
    for v = 0..r.
    """
    total = Fraction(0)
    for nu in range(0, min(n, r) + 1):
        inner = Fraction(0)
        for j in range(nu, r + 1):
            inner += (
                _fact(j) * _stirling2(r, j) * Fraction(q) ** (k - j) * (q - 1) ** (j - nu) * comb(n - nu, n - j)
            )
        total += (-1) ** nu * dual_counts[nu] * inner
    if total.denominator != 1:
        raise ArithmeticError("power moment is not an integer")
    return int(total)


@dataclass(frozen=True)
class PlessCheck:
    lhs: int
    rhs: int
    W1_dual: int
    W2_dual: int
    projective_bound: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def margin(self) -> Fraction:
        return self.lhs - self.projective_bound


def pless_second_moment_check(code: LinearCode, max_enum: int = DEFAULT_MAX_ENUM) -> PlessCheck:
    """Compare sum of squared weights with the dual-weight expansion.

    Dual words of weight 1 and 2 are counted from the columns: each zero
    column gives q - 1 words of weight 1; each unordered pair of proportional
    nonzero columns gives q - 1 words of weight 2 and each pair of zero
    columns gives (q - 1)^2.
    """
    q, n, k = code.q, code.n, code.k
    lhs = weight_profile(code, max_enum).sum_squares
    zero_cols = int(np.sum(~np.any(code.G.data != 0, axis=0)))
    W1 = (q - 1) * zero_cols
    W2 = (q - 1) * proportional_pairs(code) + (q - 1) ** 2 * comb(zero_cols, 2)
    rhs = pless_moment(n, k, q, [1, W1, W2])
    bound = Fraction(q) ** (k - 2) * n * (q - 1) * (n * (q - 1) + 1)
    return PlessCheck(lhs, rhs, W1, W2, bound)

"""Support polynomials of codewords and their reduction modulo x_i^q - x_i.

For a generator matrix G with columns g_1..g_n and an index set I, the
support polynomial is the product of the linear forms x . g_i over i in I.
Its nonzeros on GF(q)^k are exactly the messages u with supp(uG) covering I.

Polynomials are dicts from exponent tuples (length k) to nonzero coefficient
encodings.  Reduction maps every positive exponent e to ((e-1) mod (q-1))+1,
which leaves the polynomial function on GF(q)^k unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .code import DEFAULT_MAX_ENUM, LinearCode, check_enum, weight
from .gf import GF
from .linalg import Matrix, all_vectors, complete_basis, inverse, normalize_rows, rank_array


def reduce_exponent(e: int, q: int) -> int:
    return e if e == 0 else (e - 1) % (q - 1) + 1


class SupportPolynomial:
    """Polynomial over GF(q) in k variables with exponent-tuple keys."""

    __slots__ = ("field", "k", "terms")

    def __init__(self, field: GF, k: int, terms: dict | None = None):
        self.field = field
        self.k = k
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(x) for x in mono)
            if len(mono) != k:
                raise ValueError(f"exponent vector {mono} has the wrong length")
            c = int(c)
            if c:
                clean[mono] = c
        self.terms = clean

    @classmethod
    def constant(cls, field: GF, k: int, c: int = 1) -> "SupportPolynomial":
        return cls(field, k, {(0,) * k: c})

    @classmethod
    def linear(cls, field: GF, coeffs: Sequence[int]) -> "SupportPolynomial":
        k = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            mono = [0] * k
            mono[i] = 1
            terms[tuple(mono)] = int(c)
        return cls(field, k, terms)

    @classmethod
    def variable(cls, field: GF, k: int, i: int) -> "SupportPolynomial":
        e = [0] * k
        e[i] = 1
        return cls.linear(field, e)

    def _like(self, terms: dict) -> "SupportPolynomial":
        return SupportPolynomial(self.field, self.k, terms)

    def _check(self, other: "SupportPolynomial"):
        if self.field != other.field or self.k != other.k:
            raise ValueError("polynomials over different rings")

    def __add__(self, other: "SupportPolynomial") -> "SupportPolynomial":
        self._check(other)
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.add(out.get(m, 0), c)
        return self._like(out)

    def __neg__(self) -> "SupportPolynomial":
        return self._like({m: self.field.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "SupportPolynomial") -> "SupportPolynomial":
        return self + (-other)

    def scale(self, a: int) -> "SupportPolynomial":
        return self._like({m: self.field.mul(a, c) for m, c in self.terms.items()})

    def mul(self, other: "SupportPolynomial", reduce: bool = False) -> "SupportPolynomial":
        self._check(other)
        F, q = self.field, self.field.q
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if reduce:
                    m = tuple(reduce_exponent(e, q) for e in m)
                out[m] = F.add(out.get(m, 0), F.mul(c1, c2))
        return self._like(out)

    __mul__ = mul

    def __pow__(self, n: int) -> "SupportPolynomial":
        out = SupportPolynomial.constant(self.field, self.k)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SupportPolynomial)
            and self.field == other.field
            and self.k == other.k
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, self.k, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_reduced(self) -> bool:
        return all(max(m, default=0) <= self.field.q - 1 for m in self.terms)

    def coefficient(self, exponents: Sequence[int]) -> int:
        return self.terms.get(tuple(int(e) for e in exponents), 0)

    def evaluate(self, v) -> int:
        return int(self.evaluate_many(np.atleast_2d(np.asarray(v, dtype=np.int64)))[0])

    def evaluate_many(self, pts: np.ndarray) -> np.ndarray:
        """Values at each row of ``pts``."""
        F = self.field
        pts = np.asarray(pts, dtype=np.int64)
        out = np.zeros(len(pts), dtype=np.int64)
        cache: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = F.pow(pts[:, i], e) if e else np.ones(len(pts), dtype=np.int64)
            return cache[key]

        for mono, c in self.terms.items():
            val = np.full(len(pts), c, dtype=np.int64)
            for i, e in enumerate(mono):
                if e:
                    val = F.mul(val, power(i, e))
            out = F.add(out, val)
        return out

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in descending graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = [
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(mono) if e
            ]
            if c != 1 or not factors:
                factors.insert(0, str(c))
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"SupportPolynomial[GF({self.field.q}), k={self.k}]({self})"


def reduce_mod_Iq(p: SupportPolynomial) -> SupportPolynomial:
    F, q = p.field, p.field.q
    out: dict = {}
    for m, c in p.terms.items():
        r = tuple(reduce_exponent(e, q) for e in m)
        out[r] = F.add(out.get(r, 0), c)
    return SupportPolynomial(F, p.k, out)


def build_support_poly(G: Matrix, I: Iterable[int], reduce: bool = False) -> SupportPolynomial:
    """Product of the linear forms x . g_i over the 0-based indices in ``I``.

    With ``reduce=True`` the product is reduced after every factor, which
    keeps the term count at most q^k.
    """
    F, k, n = G.field, G.rows, G.cols
    I = list(I)
    for i in I:
        if not 0 <= i < n:
            raise IndexError(f"column index {i} outside [0, {n})")
    p = SupportPolynomial.constant(F, k)
    for i in I:
        p = p.mul(SupportPolynomial.linear(F, G.data[:, i]), reduce=reduce)
    return p


def substitute(p: SupportPolynomial, A, reduce: bool = True) -> SupportPolynomial:
    """The polynomial x -> p(xA) for a k x k matrix A."""
    F, k = p.field, p.k
    A = np.asarray(A.data if isinstance(A, Matrix) else A, dtype=np.int64)
    forms = [SupportPolynomial.linear(F, A[:, j]) for j in range(k)]
    out = SupportPolynomial(F, k)
    for mono, c in p.terms.items():
        term = SupportPolynomial.constant(F, k, c)
        for j, e in enumerate(mono):
            for _ in range(e):
                term = term.mul(forms[j], reduce=reduce)
        out = out + term
    return reduce_mod_Iq(out) if reduce else out


def nonzero_set(p: SupportPolynomial, max_enum: int = DEFAULT_MAX_ENUM) -> np.ndarray:
    """Rows u of GF(q)^k with p(u) != 0, in lexicographic order."""
    if p.field.q ** p.k > max_enum:
        raise ValueError(f"{p.field.q ** p.k} evaluation points exceed the limit {max_enum}")
    pts = all_vectors(p.field, p.k)
    return pts[p.evaluate_many(pts) != 0]


def alon_furedi_bound(p, sizes: Sequence[int]) -> int:
    """Lower bound on the nonzeros of a polynomial over a grid A_1 x ... x A_k.

    ``p`` is a reduced polynomial (or just its degree) and ``sizes`` the grid
    side lengths.  With the sizes sorted decreasingly and the degree written
    as sum_{i>s}(n_i - 1) + l, 1 <= l <= n_s - 1, the bound is
    (n_s - l) * prod_{i<s} n_i.
    """
    if isinstance(p, SupportPolynomial):
        if p.is_zero():
            raise ValueError("the zero polynomial has no nonzeros")
        deg = p.degree
    else:
        deg = int(p)
    n = sorted((int(x) for x in sizes), reverse=True)
    if any(x < 2 for x in n):
        raise ValueError("grid sizes must be at least 2")
    if deg == 0:
        return int(np.prod(n, dtype=object))
    if deg > sum(x - 1 for x in n):
        raise ValueError("degree exceeds that of any reduced polynomial on this grid")
    tail = 0
    for s in range(len(n) - 1, -1, -1):
        ell = deg - tail
        if 1 <= ell <= n[s] - 1:
            out = n[s] - ell
            for x in n[:s]:
                out *= x
            return out
        tail += n[s] - 1
    raise AssertionError("unreachable")


# -- maximal codewords ---------------------------------------------------------


def pc_polynomial(field: GF, k: int, coeff: int, w: int) -> SupportPolynomial:
    """coeff * x_1^{w1} * prod_{i>=2} (1 - x_i^{q-1}) with w1 the reduced w."""
    q = field.q
    p = SupportPolynomial(field, k, {(reduce_exponent(w, q),) + (0,) * (k - 1): coeff})
    for i in range(1, k):
        mono = [0] * k
        mono[i] = q - 1
        p = p * SupportPolynomial(field, k, {(0,) * k: 1, tuple(mono): field.neg(1)})
    return p


@dataclass(frozen=True)
class CanonicalForm:
    pc: SupportPolynomial  # the normal form in coordinates where c is the first basis row
    reduced: SupportPolynomial  # reduction of p_{G, supp(c)} in the original coordinates
    transform: Matrix  # A with reduced(x) = pc(xA)
    agrees: bool


def canonical_form(code: LinearCode, u) -> CanonicalForm:
    """Compare the reduced support polynomial of c = uG with its normal form.

    When c is maximal the two agree after the change of variables x -> xA,
    where A^{-1} has u as its first row.
    """
    F, k = code.field, code.k
    u = np.asarray(u, dtype=np.int64).reshape(-1)
    c = code.encode(u)
    I = [int(i) for i in np.flatnonzero(c)]
    if not I:
        raise ValueError("zero codeword")
    coeff = 1
    for i in I:
        coeff = F.mul(coeff, int(c[i]))
    pc = pc_polynomial(F, k, coeff, len(I))
    B = Matrix(F, complete_basis(F, u))
    A = inverse(B)
    reduced = build_support_poly(code.G, I, reduce=True)
    return CanonicalForm(pc, reduced, A, substitute(pc, A) == reduced)


# -- covering witnesses for maximal codewords ----------------------------------


@dataclass(frozen=True)
class CoverWitness:
    j: int
    message: np.ndarray
    codeword: np.ndarray
    subset: tuple[int, ...]


@dataclass(frozen=True)
class CoverReport:
    witnesses: dict[int, CoverWitness]
    violations: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def is_cover_witness(code: LinearCode, c, j: int, z, check_membership: bool = True) -> bool:
    """z is not a multiple of c and covers (q-1)(k-1) positions of supp(c)
    other than j; with ``check_membership`` z must also lie in the code."""
    F = code.field
    c = np.asarray(c, dtype=np.int64)
    z = np.asarray(z, dtype=np.int64)
    if not z.any() or c[j] == 0:
        return False
    if check_membership and rank_array(F, np.vstack([code.G.data, z])) != code.k:
        return False
    if code.k > 1 and np.array_equal(normalize_rows(F, z)[0], normalize_rows(F, c)[0]):
        return False
    overlap = (z != 0) & (c != 0)
    overlap[j] = False
    return int(overlap.sum()) >= (code.q - 1) * (code.k - 1)


def support_cover_witnesses(code: LinearCode, u, max_enum: int = DEFAULT_MAX_ENUM) -> CoverReport:
    """For each j in supp(c), c = uG, find a codeword z not proportional to c
    and a set I_j of (q-1)(k-1) positions of supp(c) minus j covered by z.

    Candidates are tried by decreasing overlap with supp(c), ties broken by
    enumeration order; I_j is the lexicographically first valid subset.
    """
    F, q, k = code.field, code.q, code.k
    check_enum(q, k, max_enum)
    u = normalize_rows(F, np.asarray(u, dtype=np.int64).reshape(-1))[0]
    c = code.encode(u)
    cmask = c != 0
    need = (q - 1) * (k - 1)
    msgs, cws = [], []
    for m, cw in code.classes(max_enum=max_enum):
        msgs.append(m)
        cws.append(cw)
    msgs = np.vstack(msgs)
    cws = np.vstack(cws)
    if k > 1:
        # multiples of c cover everything trivially
        keep = ~np.all(msgs == u, axis=1)
        msgs, cws = msgs[keep], cws[keep]
    overlap = (cws != 0) & cmask
    order = np.argsort(-overlap.sum(axis=1), kind="stable")
    witnesses: dict[int, CoverWitness] = {}
    violations = []
    for j in (int(x) for x in np.flatnonzero(cmask)):
        for idx in order:
            ov = overlap[idx].copy()
            ov[j] = False
            if ov.sum() < need:
                if overlap[idx].sum() < need:
                    break
                continue
            subset = tuple(int(x) for x in np.flatnonzero(ov)[:need])
            witnesses[j] = CoverWitness(j, msgs[idx], cws[idx], subset)
            break
        else:
            violations.append(j)
            continue
        if j not in witnesses:
            violations.append(j)
    return CoverReport(witnesses, tuple(violations))


def support_poly_of_codeword(code: LinearCode, u) -> SupportPolynomial:
    """Reduced support polynomial of the codeword uG."""
    c = code.encode(np.asarray(u, dtype=np.int64).reshape(-1))
    return build_support_poly(code.G, [int(i) for i in np.flatnonzero(c)], reduce=True)


def codeword_weight(code: LinearCode, u) -> int:
    return weight(code.encode(u))

"""Finite fields GF(p^e) with a canonical integer encoding.

An element is stored as the integer ``sum(a_i * p**i)`` where
``a_0 + a_1 x + ... + a_{e-1} x^{e-1}`` is its residue modulo the field's
defining polynomial.  Polynomials over GF(p) (moduli, minimal polynomials)
are coefficient lists, lowest degree first.

All arithmetic entry points accept Python ints or numpy integer arrays and
broadcast like numpy.  Scalars in give scalars out.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

MAX_ORDER = 2**20
TABLE_LIMIT = 2**16


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise if q is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, e


def integer_root(q: int, m: int) -> int | None:
    """Exact integer m-th root of q, or None."""
    r = round(q ** (1.0 / m))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**m == q:
            return c
    return None


# -- polynomials over GF(p), coefficient lists low -> high -------------------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = [x % p for x in a]
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _poly_trim(a[:db])


def _monic_polys(p: int, degree: int):
    for code in range(p**degree):
        coeffs = [(code // p**i) % p for i in range(degree)]
        yield coeffs + [1]


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Irreducibility over GF(p) by trial division with every monic divisor."""
    coeffs = _poly_trim([c % p for c in coeffs])
    deg = len(coeffs) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    if coeffs[0] == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_rem(coeffs, g, p):
                return False
    return True


def encode_poly(coeffs: Sequence[int], p: int) -> int:
    return sum(int(c) * p**i for i, c in enumerate(coeffs))


def decode_poly(code: int, p: int) -> list[int]:
    out = []
    while code:
        code, r = divmod(code, p)
        out.append(r)
    return out


def smallest_irreducible(p: int, e: int) -> list[int]:
    """Smallest monic irreducible of degree e, ordered by (a_{e-1}, ..., a_0)."""
    for tail in range(p**e):
        coeffs = [(tail // p**i) % p for i in range(e)] + [1]
        if is_irreducible(coeffs, p):
            return coeffs
    raise FieldError(f"no irreducible polynomial of degree {e} over GF({p})")


# -- the field ---------------------------------------------------------------


class GF:
    """The finite field GF(p^e) under a fixed monic irreducible modulus.

    Use :func:`make_field` to obtain the canonical (cached) instance.
    """

    def __init__(self, p: int, e: int = 1, modulus: int | None = None, max_order: int = MAX_ORDER):
        if not is_prime(p):
            raise FieldError(f"p={p} is not prime")
        if e < 1:
            raise FieldError("extension degree must be >= 1")
        q = p**e
        if q > max_order:
            raise FieldError(f"field order {q} exceeds the limit {max_order}")
        self.p, self.e, self.q = p, e, q
        if modulus is None or (e == 1 and modulus in (0, p)):
            mod_coeffs = smallest_irreducible(p, e) if e > 1 else [0, 1]
        else:
            mod_coeffs = decode_poly(modulus, p)
            if len(mod_coeffs) != e + 1 or mod_coeffs[-1] != 1:
                raise FieldError(f"modulus {modulus} is not a monic polynomial of degree {e}")
            if not is_irreducible(mod_coeffs, p):
                raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.modulus_coeffs = tuple(mod_coeffs)
        self.modulus = encode_poly(mod_coeffs, p)
        self._powers = p ** np.arange(e, dtype=np.int64)
        self.use_tables = q <= TABLE_LIMIT
        self._exp = self._log = None
        self.primitive = self._find_primitive()
        if self.use_tables:
            self._build_tables()

    # -- encoding helpers --

    def digits(self, a) -> np.ndarray:
        """Polynomial-basis coordinates, shape ``(..., e)``."""
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._powers) % self.p

    def from_digits(self, d) -> np.ndarray:
        d = np.asarray(d, dtype=np.int64)
        return (d % self.p) @ self._powers

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, int(value))

    def __repr__(self) -> str:
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    # -- arithmetic --

    @staticmethod
    def _out(x, *inputs):
        if all(np.ndim(i) == 0 and not isinstance(i, np.ndarray) for i in inputs):
            return int(x)
        return x

    def add(self, a, b):
        a_, b_ = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.e == 1:
            r = (a_ + b_) % self.p
        elif self.p == 2:
            r = a_ ^ b_
        else:
            r = self.from_digits(self.digits(a_) + self.digits(b_))
        return self._out(r, a, b)

    def neg(self, a):
        a_ = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            r = (-a_) % self.p
        elif self.p == 2:
            r = a_
        else:
            r = self.from_digits(-self.digits(a_))
        return self._out(r, a)

    def sub(self, a, b):
        a_, b_ = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.e == 1:
            r = (a_ - b_) % self.p
        elif self.p == 2:
            r = a_ ^ b_
        else:
            r = self.from_digits(self.digits(a_) - self.digits(b_))
        return self._out(r, a, b)

    def mul_schoolbook(self, a, b):
        """Multiply by polynomial product and reduction; no tables."""
        a_, b_ = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return self._out((a_ * b_) % self.p, a, b)
        p, e = self.p, self.e
        da, db = self.digits(a_), self.digits(b_)
        shape = np.broadcast_shapes(da.shape, db.shape)[:-1]
        conv = np.zeros(shape + (2 * e - 1,), dtype=np.int64)
        for i in range(e):
            conv[..., i : i + e] += da[..., i : i + 1] * db
        conv %= p
        mod = self.modulus_coeffs
        for deg in range(2 * e - 2, e - 1, -1):
            c = conv[..., deg].copy()
            for i in range(e):
                if mod[i]:
                    conv[..., deg - e + i] -= c * mod[i]
            conv[..., deg] = 0
            conv %= p
        return self._out(self.from_digits(conv[..., :e]), a, b)

    def mul(self, a, b):
        a_, b_ = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return self._out((a_ * b_) % self.p, a, b)
        if self._exp is None:
            return self.mul_schoolbook(a, b)
        r = self._exp[self._log[a_] + self._log[b_]]
        r = np.where((a_ == 0) | (b_ == 0), 0, r)
        return self._out(r, a, b)

    def inv(self, a):
        a_ = np.asarray(a, dtype=np.int64)
        if np.any(a_ == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self._exp is not None:
            r = self._exp[(self.q - 1 - self._log[a_]) % (self.q - 1)]
        else:
            r = self.pow(a_, self.q - 2)
        return self._out(r, a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        a_ = np.asarray(a, dtype=np.int64)
        n = int(n)
        if n < 0:
            return self.pow(self.inv(a), -n)
        if self._exp is not None:
            if n == 0:
                r = np.ones_like(a_)
            else:
                r = self._exp[(self._log[a_] * n) % (self.q - 1)]
                r = np.where(a_ == 0, 0, r)
            return self._out(r, a)
        result = np.ones_like(a_)
        base = a_
        while n:
            if n & 1:
                result = self.mul_schoolbook(result, base)
            base = self.mul_schoolbook(base, base)
            n >>= 1
        return self._out(np.asarray(result), a)

    def log(self, a):
        """Discrete logarithm to the base of :attr:`primitive`."""
        a_ = np.asarray(a, dtype=np.int64)
        if np.any(a_ == 0):
            raise ValueError("log of zero")
        if self._exp is None:
            if np.ndim(a_):
                raise NotImplementedError("vectorised log needs tables")
            x, i = 1, 0
            while x != int(a_):
                x = self.mul_schoolbook(x, self.primitive)
                i += 1
            return i
        return self._out(self._log[a_], a)

    def exp(self, i):
        if self._exp is not None:
            i_ = np.asarray(i, dtype=np.int64)
            return self._out(self._exp[i_ % (self.q - 1)], i)
        return self.pow(self.primitive, int(i))

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        for r in prime_factors(self.q - 1):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    def sqrt_order(self) -> int | None:
        return integer_root(self.q, 2)

    # -- construction --

    def _find_primitive(self) -> int:
        n = self.q - 1
        factors = prime_factors(n)
        for g in range(1, self.q):
            if all(self.pow(g, n // r) != 1 for r in factors):
                return g
        raise FieldError("no primitive element")  # pragma: no cover

    def _build_tables(self):
        n = self.q - 1
        block = max(1, int(np.sqrt(n)) + 1)
        head = np.empty(block, dtype=np.int64)
        x = 1
        for i in range(block):
            head[i] = x
            x = self.mul_schoolbook(x, self.primitive)
        step = x  # primitive ** block
        rows = -(-n // block)
        starts = np.empty(rows, dtype=np.int64)
        y = 1
        for j in range(rows):
            starts[j] = y
            y = self.mul_schoolbook(y, step)
        exp = self.mul_schoolbook(starts[:, None], head[None, :]).reshape(-1)[:n]
        self._exp = np.concatenate([exp, exp])
        log = np.zeros(self.q, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        self._log = log


@lru_cache(maxsize=None)
def make_field(p: int, e: int = 1, max_order: int = MAX_ORDER) -> GF:
    """Canonical GF(p^e): smallest irreducible modulus, smallest primitive element."""
    return GF(p, e, max_order=max_order)


def field_of_order(q: int) -> GF:
    p, e = prime_power(q)
    return make_field(p, e)


@dataclass(frozen=True)
class FieldElement:
    field: GF
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise FieldError(f"{self.value} is not an element of {self.field}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed fields: {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def _wrap(self, v) -> "FieldElement":
        return FieldElement(self.field, int(v))

    def __add__(self, other):
        return self._wrap(self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return self._wrap(self.field.sub(self._coerce(other), self.value))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.value, self._coerce(other)))

    def __rtruediv__(self, other):
        return self._wrap(self.field.div(self._coerce(other), self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, n: int):
        return self._wrap(self.field.pow(self.value, n))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field}({self.value})"


# -- subfields, minimal polynomials, companion matrices -----------------------


def _check_compatible(big: GF, small: GF):
    if big.p != small.p or big.e % small.e:
        raise FieldError(f"{small} is not a subfield of {big}")


@lru_cache(maxsize=None)
def _embedding(small: GF, big: GF) -> np.ndarray:
    _check_compatible(big, small)
    if small.e == 1:
        return np.arange(small.q, dtype=np.int64)
    # a root of small's modulus inside big; prime-field constants encode identically
    xs = big.elements()
    acc = np.zeros_like(xs)
    for c in reversed(small.modulus_coeffs):
        acc = big.add(big.mul(acc, xs), c)
    rho = int(np.flatnonzero(acc == 0)[0])
    rho_pows = [1]
    for _ in range(small.e - 1):
        rho_pows.append(big.mul(rho_pows[-1], rho))
    d = small.digits(small.elements())
    img = np.zeros(small.q, dtype=np.int64)
    for i, rp in enumerate(rho_pows):
        img = big.add(img, big.mul(d[:, i], rp))
    return img


def embedding(small: GF, big: GF) -> np.ndarray:
    """Array mapping element encodings of ``small`` to its image in ``big``."""
    return _embedding(small, big)


def minimal_polynomial(a: int, big: GF, small: GF | None = None) -> list[int]:
    """Minimal polynomial of ``a`` in ``big`` over the subfield ``small``.

    Returns monic coefficients (low -> high) encoded in ``small``.
    """
    if small is None:
        small = make_field(big.p)
    _check_compatible(big, small)
    emb = embedding(small, big)
    conj = [int(a)]
    while True:
        nxt = big.pow(conj[-1], small.q)
        if nxt == conj[0]:
            break
        conj.append(nxt)
    poly = [1]
    for c in conj:
        # multiply by (x - c)
        nc = big.neg(c)
        shifted = [0] + poly
        scaled = [big.mul(nc, x) for x in poly] + [0]
        poly = [big.add(u, v) for u, v in zip(shifted, scaled)]
    lookup = {int(v): i for i, v in enumerate(emb)}
    try:
        return [lookup[int(c)] for c in poly]
    except KeyError:  # pragma: no cover - would mean a broken embedding
        raise FieldError("minimal polynomial has coefficients outside the subfield")


def companion_matrix(field: GF, coeffs: Sequence[int]):
    """Companion matrix acting on row vectors: ones on the subdiagonal,
    last column ``-a_0, ..., -a_{r-1}``.  Requires a monic polynomial."""
    from .linalg import Matrix

    coeffs = list(coeffs)
    if len(coeffs) < 2 or coeffs[-1] != 1:
        raise FieldError("companion matrix needs a monic polynomial of degree >= 1")
    r = len(coeffs) - 1
    m = np.zeros((r, r), dtype=np.int64)
    for i in range(r - 1):
        m[i + 1, i] = 1
    m[:, r - 1] = field.neg(np.asarray(coeffs[:r], dtype=np.int64))
    return Matrix(field, m)

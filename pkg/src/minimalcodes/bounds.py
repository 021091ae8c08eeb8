"""Parameter bounds for minimal codes and feasibility reports.

Everything here is exact integer or rational arithmetic.  The one float is
the non-constructive length estimate in :class:`MTableEntry`, which is
informational and never feeds a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import ceil, comb, isqrt, log
from typing import Optional

from .gf import integer_root, prime_power

LOWER_N, UPPER_N, LOWER_D, UPPER_D, CONSTRAINT = "lower_n", "upper_n", "lower_d", "upper_d", "constraint"


@dataclass(frozen=True)
class BoundVerdict:
    name: str
    kind: str
    value: object  # int or Fraction
    satisfied: Optional[bool]
    citation: str
    note: str = ""


@dataclass
class FeasibilityReport:
    params: dict
    verdicts: list[BoundVerdict]

    @property
    def failed(self) -> list[BoundVerdict]:
        return [v for v in self.verdicts if v.satisfied is False]

    @property
    def feasible(self) -> bool:
        return not self.failed

    @property
    def overall(self) -> str:
        if self.feasible:
            return "feasible-so-far"
        return "infeasible(" + ", ".join(v.name for v in self.failed) + ")"

    def verdict(self, name: str) -> BoundVerdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def d_range(self) -> tuple[int | None, int | None]:
        """Tightest distance interval implied by the distance verdicts."""
        lo = [int(v.value) for v in self.verdicts if v.kind == LOWER_D and v.value is not None]
        hi = [int(v.value) for v in self.verdicts if v.kind == UPPER_D and v.value is not None]
        return (max(lo) if lo else None, min(hi) if hi else None)

    def n_window(self) -> tuple[int | None, int | None]:
        lo = [int(v.value) for v in self.verdicts if v.kind == LOWER_N and v.value is not None]
        hi = [int(v.value) for v in self.verdicts if v.kind == UPPER_N and v.value is not None]
        return (max(lo) if lo else None, min(hi) if hi else None)


def _check_q(q: int):
    prime_power(q)


def _check_k(k: int):
    if k < 2:
        raise ValueError("bounds require k >= 2")


def is_square(q: int) -> bool:
    return integer_root(q, 2) is not None


def projective_size(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1)


# -- length lower bounds -------------------------------------------------------


def simple_length(q: int, k: int) -> int:
    return (k - 1) * q + 1


def griesmer_type_length(q: int, k: int) -> int:
    a = (k - 1) * (q - 1) + 1
    return a + sum(-(-a // q**i) for i in range(1, k))


def griesmer_type_sum(q: int, k: int) -> int:
    """The same quantity written as one sum starting at i = 0."""
    a = (q - 1) * (k - 1) + 1
    return sum(-(-a // q**i) for i in range(k))


def maximal_codeword_length(q: int, k: int) -> int:
    return (q + 1) * (k - 1)


def strict_length_applies(q: int, k: int) -> bool:
    return 3 <= k and k - 2 <= isqrt(q) and (q, k) != (2, 3)


def plane_two_fold_bound(q: int) -> tuple[int, str] | None:
    """Lower bound on 2-fold blocking sets of PG(2, q), if one is known."""
    p, e = prime_power(q)
    s = integer_root(q, 2)
    if q < 9:
        return 3 * q, "2-fold blocking sets of PG(2,q), q < 9: at least 3q"
    if s is not None:
        return 2 * q + 2 * s + 2, "2-fold blocking sets of PG(2,q), q > 4 square: at least 2q+2sqrt(q)+2"
    if q > 19 and e % 2 == 1:
        d = (e - 1) // 2
        pd = p**d
        return (2 * q + pd * (-(-(p ** (d + 1) + 1) // (pd + 1))) + 2,
                "2-fold blocking sets of PG(2,q), q = p^(2d+1) > 19")
    if q in (11, 13, 17, 19):
        return -(-(5 * q + 7) // 2), "2-fold blocking sets of PG(2,q), q in {11,13,17,19}: at least (5q+7)/2"
    return None


def length_lower_bounds(q: int, k: int, n: int | None = None) -> list[BoundVerdict]:
    """All applicable lower bounds on the length of a minimal [n, k]_q code."""
    _check_q(q)
    _check_k(k)

    def v(name, value, cite, note=""):
        return BoundVerdict(name, LOWER_N, value, None if n is None else n >= value, cite, note)

    out = [
        v("simple_length", simple_length(q, k), "n >= (k-1)q + 1"),
        v("griesmer_type_length", griesmer_type_length(q, k),
          "n >= (k-1)(q-1) + 1 + sum_{i=1}^{k-1} ceil(((k-1)(q-1)+1)/q^i)"),
    ]
    if k - 1 <= q:
        out.append(v("nfold_blocking_length", (q + 1) * (k - 1),
                     "cutting sets are (k-1)-fold blocking; n >= (q+1)(k-1) when k-1 <= q"))
    out.append(v("maximal_codeword_length", maximal_codeword_length(q, k),
                 "n >= (q+1)(k-1) from covering witnesses of a minimum-weight codeword"))
    if strict_length_applies(q, k):
        out.append(v("strict_length", (q + 1) * (k - 1) + 1,
                     "n >= (q+1)(k-1) + 1 when 3 <= k <= sqrt(q)+2, (q,k) != (2,3)"))
    if k == 3:
        pb = plane_two_fold_bound(q)
        if pb is not None:
            out.append(v("plane_two_fold", pb[0], pb[1]))
    return out


# -- statistical bounds --------------------------------------------------------


@dataclass(frozen=True)
class StatQuadratic:
    B: int
    C: int
    lhs: int
    satisfied: bool


def stat_coefficients(q: int, k: int) -> tuple[int, int]:
    B = q ** (k - 2) + (k - 1) * (2 * q ** (k - 1) - 1) + (q ** (k - 1) - 1) // (q - 1)
    C = (k - 1) ** 2 * (q**k - 1) + (k - 1) * (q**k - 1) // (q - 1)
    return B, C


def stat_quadratic(q: int, n: int, k: int) -> StatQuadratic:
    """q^{k-2} n^2 - B n + C, which is >= 0 for non-constant-weight minimal codes."""
    _check_k(k)
    B, C = stat_coefficients(q, k)
    lhs = q ** (k - 2) * n * n - B * n + C
    return StatQuadratic(B, C, lhs, lhs >= 0)


def stat_guard(q: int, n: int, k: int) -> bool:
    """n - k + 1 > n(q^k - q^{k-1})/(q^k - 1): needed by any non-constant-weight
    minimal code, since its maximum weight exceeds the mean."""
    return n * (q ** (k - 1) - 1) > (k - 1) * (q**k - 1)


def statistical_excludes(q: int, n: int, k: int) -> bool:
    """True when no non-constant-weight minimal [n, k]_q code can exist."""
    return not stat_guard(q, n, k) or not stat_quadratic(q, n, k).satisfied


def d_upper_minimal(q: int, n: int, k: int) -> int | None:
    """Largest minimum distance of a non-constant-weight minimal [n,k]_q code,
    or None when the denominator is not positive."""
    _check_k(k)
    den = n * (q ** (k - 1) - 1) - (k - 1) * (q**k - 1)
    if den <= 0:
        return None
    num = n * (q - 1) * q ** (k - 2) * (n - 1 - q * (k - 1))
    return num // den


def maximal_codeword_distance(q: int, k: int) -> int:
    """Every maximal codeword, hence the minimum distance of a minimal code,
    has weight at least (q-1)(k-1)+1."""
    return (q - 1) * (k - 1) + 1


def mean_weight(q: int, n: int, k: int) -> Fraction:
    return Fraction(n * (q - 1) * q ** (k - 1), q**k - 1)


def ell(q: int, n: int, k: int) -> Fraction:
    return Fraction(n * (q - 1), q**k - 1)


def variance_floor(q: int, n: int, k: int) -> Fraction:
    l = ell(q, n, k)
    return Fraction(q) ** (k - 2) * l * (1 - l)


def bhatia_davis_ok(q: int, n: int, k: int, d: int, w: int) -> bool:
    E = mean_weight(q, n, k)
    if w <= E:
        return False
    return d <= E - variance_floor(q, n, k) / (w - E)


def bhatia_davis_bound(q: int, n: int, k: int, w: int) -> int | None:
    """floor(E - q^{k-2} l (1-l) / (w - E)), or None when w <= E."""
    E = mean_weight(q, n, k)
    if w <= E:
        return None
    x = E - variance_floor(q, n, k) / (w - E)
    return x.numerator // x.denominator


@dataclass(frozen=True)
class LengthWindow:
    lo: int | None
    hi: int | None
    allowed: tuple[int, ...]

    @property
    def contiguous(self) -> bool:
        return not self.allowed or len(self.allowed) == self.hi - self.lo + 1

    def as_tuple(self) -> tuple[int | None, int | None]:
        return (self.lo, self.hi)


def bhatia_davis_window(q: int, k: int, d: int, w: int) -> LengthWindow:
    """Lengths n of a nondegenerate [n,k]_q code with minimum weight d and
    maximum weight w > d allowed by the mean and variance constraints."""
    if d >= w:
        raise ValueError("d >= w describes a constant-weight code; use the constant-weight length bound")
    # the mean grows with n and must stay below w
    n_max = (w * (q**k - 1) - 1) // (q ** (k - 1) * (q - 1))
    allowed = tuple(n for n in range(max(w, k), n_max + 1) if bhatia_davis_ok(q, n, k, d, w))
    if not allowed:
        return LengthWindow(None, None, ())
    return LengthWindow(allowed[0], allowed[-1], allowed)


def popoviciu_rhs(q: int, n: int, k: int, d: int, w: int) -> Fraction:
    return Fraction(q - 1, q**k - 1) + Fraction(1, 4) * Fraction(w - d, n) ** 2 * Fraction(
        q**k - 1, 1
    ) / (Fraction(q) ** (k - 2) * (q - 1))


def popoviciu_check(q: int, n: int, k: int, d: int, w: int) -> bool:
    if n < 1:
        raise ValueError("n must be positive")
    return Fraction(1, n) <= popoviciu_rhs(q, n, k, d, w)


def delsarte_sum(q: int, n: int, s: int) -> int:
    return sum(comb(n, i) * (q - 1) ** i for i in range(s + 1))


def delsarte_check(q: int, n: int, k: int, s: int) -> bool:
    if s < 1:
        raise ValueError("a nonzero code has s >= 1")
    return q**k <= delsarte_sum(q, n, s)


def delsarte_min_length(q: int, k: int, s: int) -> int:
    n = 1
    while not delsarte_check(q, n, k, s):
        n += 1
    return n


def constant_weight_length(q: int, k: int) -> int:
    return projective_size(q, k)


def statistical_min_length(q: int, k: int) -> int:
    """Smallest n the statistical constraints do not exclude, capped by the
    length at which a constant-weight (simplex) code becomes possible."""
    cap = projective_size(q, k)
    for n in range(k, cap):
        if not statistical_excludes(q, n, k):
            return n
    return cap


# -- table classification ------------------------------------------------------


def exclusion_class(q: int, n: int, k: int) -> str:
    """Which of the length bound (q+1)(k-1) and the statistical constraint
    exclude a minimal [n,k]_q code: 'both', 'length', 'statistical', 'none'."""
    by_len = n < maximal_codeword_length(q, k)
    by_stat = statistical_excludes(q, n, k) and n < projective_size(q, k)
    return {(True, True): "both", (True, False): "length", (False, True): "statistical"}.get(
        (by_len, by_stat), "none"
    )


# -- feasibility ---------------------------------------------------------------


def feasibility(q: int, k: int, n: int | None = None, d: int | None = None,
                w: int | None = None, s: int | None = None) -> FeasibilityReport:
    """Evaluate every applicable bound for a putative minimal code."""
    _check_q(q)
    _check_k(k)
    params = {"q": q, "n": n, "k": k, "d": d, "w": w, "s": s}
    out: list[BoundVerdict] = list(length_lower_bounds(q, k, n))
    cw = constant_weight_length(q, k)
    out.append(BoundVerdict("constant_weight_length", CONSTRAINT, cw,
                            None if n is None else True,
                            "a constant-weight code has n >= (q^k-1)/(q-1)",
                            "escape branch for the statistical bounds"))
    if n is not None:
        sq = stat_quadratic(q, n, k)
        guard = stat_guard(q, n, k)
        ok = (guard and sq.satisfied) or n >= cw
        note = f"B={sq.B}, C={sq.C}, stat_quadratic = {sq.lhs}"
        if not guard:
            note += "; n-k+1 does not exceed the mean weight"
        out.append(BoundVerdict("statistical_length", CONSTRAINT, sq.lhs, ok,
                                "q^{k-2} n^2 - B n + C >= 0 for non-constant-weight minimal codes", note))
        dmax = d_upper_minimal(q, n, k)
        out.append(BoundVerdict("statistical_distance", UPPER_D, dmax,
                                None if d is None or dmax is None else (d <= dmax or (n >= cw and mean_weight(q, n, k) == d)),
                                "d <= floor(n(q-1)q^{k-2}[n-1-q(k-1)] / (n(q^{k-1}-1)-(k-1)(q^k-1)))",
                                "applies to non-constant-weight minimal codes"))
        out.append(BoundVerdict("minimal_weight_ceiling", UPPER_D, n - k + 1,
                                None if d is None else d <= n - k + 1,
                                "every minimal codeword has weight <= n-k+1"))
        if w is not None:
            out.append(BoundVerdict("maximal_weight_ceiling", CONSTRAINT, n - k + 1, w <= n - k + 1,
                                    "every minimal codeword has weight <= n-k+1"))
    out.append(BoundVerdict("maximal_codeword_distance", LOWER_D, maximal_codeword_distance(q, k),
                            None if d is None else d >= maximal_codeword_distance(q, k),
                            "maximal codewords have weight >= (q-1)(k-1)+1"))
    if d is not None and w is not None and d < w:
        win = bhatia_davis_window(q, k, d, w)
        if n is not None:
            out.append(BoundVerdict("bhatia_davis", CONSTRAINT, bhatia_davis_bound(q, n, k, w),
                                    bhatia_davis_ok(q, n, k, d, w),
                                    "mean below w and d <= floor(E - q^{k-2} l(1-l)/(w-E))"))
        out.append(BoundVerdict("bhatia_davis_window_lo", LOWER_N, win.lo,
                                None if n is None or win.lo is None else n >= win.lo,
                                "smallest n allowed by the mean/variance constraints"))
        out.append(BoundVerdict("bhatia_davis_window_hi", UPPER_N, win.hi,
                                None if n is None or win.hi is None else n <= win.hi,
                                "largest n allowed by the mean/variance constraints",
                                "equality requires a projective two-weight code"))
    if d is not None and w is not None and n is not None:
        out.append(BoundVerdict("popoviciu", CONSTRAINT, popoviciu_rhs(q, n, k, d, w),
                                popoviciu_check(q, n, k, d, w),
                                "1/n <= (q-1)/(q^k-1) + (1/4)((w-d)/n)^2 (q^k-1)/(q^{k-2}(q-1))"))
    if s is not None:
        out.append(BoundVerdict("delsarte_length", LOWER_N, delsarte_min_length(q, k, s),
                                None if n is None else delsarte_check(q, n, k, s),
                                "q^k <= sum_{i=0}^{s} C(n,i)(q-1)^i"))
    return FeasibilityReport(params, out)


# -- explicit construction lengths and the m(k,q) table ------------------------


def construction_lengths(q: int, k: int) -> dict[str, int]:
    """Lengths of the explicit families applicable to (q, k)."""
    _check_k(k)
    s = integer_root(q, 2)
    out: dict[str, int] = {}
    if k == 2:
        out["line"] = q + 1
    if k % 2 == 0:
        out["even-lines"] = (q + 1) * k * k // 4
    if s is not None and k % 3 == 0:
        out["baer"] = 2 * (q + s + 1) * k * k // 9
    if s is not None and k % 3 == 1 and k >= 4:
        out["lift:baer"] = 2 * (q + s + 1) * (k - 1) ** 2 // 9 + (q - 1) * (k - 1) + 1
    if k % 2 == 1:
        out["lift:even-lines"] = (q + 1) * (k + 1) ** 2 // 4 - (2 * k + q - 2)
    return out


def best_known_plan(q: int, k: int) -> tuple[str, int]:
    """The shortest explicit family for (q, k) and its length."""
    lengths = construction_lengths(q, k)
    name = min(lengths, key=lambda x: lengths[x])
    return name, lengths[name]


def tetrahedron_length(q: int, k: int) -> int:
    return (q - 1) * comb(k, 2) + k


def nonconstructive_upper(q: int, k: int) -> float:
    return 2 * k / log(q * q / (q * q - q + 1), q)


def literature_lengths(q: int, k: int) -> dict[str, int]:
    """Known lengths quoted from other constructions; not built here."""
    out = {}
    if k == 5:
        out["eight_q_minus_three"] = 8 * q - 3
    if k == 6:
        out["seven_lines"] = 7 * (q + 1)
    if k == 4:
        q0 = integer_root(q, 3)
        if q0 is not None:
            out["three_subgeometries"] = 3 * (q + q0 * q0 + q0 + 1)
    return out


@dataclass
class MTableEntry:
    q: int
    k: int
    lower: int
    lower_source: str
    upper: int
    upper_source: str
    literature: dict[str, int] = dc_field(default_factory=dict)
    nonconstructive: float = 0.0

    @property
    def exact(self) -> int | None:
        return self.lower if self.lower == self.upper else None


def m_lower(q: int, k: int) -> tuple[int, str]:
    if k == 2:
        return q + 1, "line"
    cands = [(v.value, v.name) for v in length_lower_bounds(q, k)]
    cands.append((statistical_min_length(q, k), "statistical_length"))
    return max(cands, key=lambda t: t[0])


def m_table(q: int, k_max: int) -> list[MTableEntry]:
    """Interval [lower, upper] for m(k, q), 2 <= k <= k_max."""
    _check_q(q)
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    p, _ = prime_power(q)
    s = integer_root(q, 2)
    upper: dict[int, tuple[int, str]] = {2: (q + 1, "line")}
    for k in range(3, k_max + 1):
        cands = [(tetrahedron_length(q, k), "tetrahedron")]
        if p >= k and q >= 2 * k - 3:
            cands.append(((2 * k - 3) * (q + 1), "rnt"))
        if k == 3 and s is not None:
            cands.append((2 * (q + s + 1), "baer"))
        prev, src = upper[k - 1]
        cands.append((prev + (q - 1) * (k - 1) + 1, f"lift:{src}"))
        for a in range(2, k // 2 + 1):
            if k % a == 0:
                b = k // a
                ub, bsrc = upper[b]
                if b == 2:
                    name = "even-lines"
                elif b == 3 and bsrc == "baer":
                    name = "baer"
                else:
                    name = f"spread({a}^2 x {bsrc})"
                cands.append((a * a * ub, name))
        upper[k] = min(cands, key=lambda t: t[0])
    out = []
    for k in range(2, k_max + 1):
        lo, lsrc = m_lower(q, k)
        up, usrc = upper[k]
        if lo > up:  # pragma: no cover - would mean a wrong bound or construction
            raise ArithmeticError(f"m({k},{q}): lower bound {lo} exceeds construction {up}")
        out.append(MTableEntry(q, k, lo, lsrc, up, usrc, literature_lengths(q, k),
                               nonconstructive_upper(q, k)))
    return out

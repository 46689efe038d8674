"""Local data at a prime: reduction type, conductor exponent, traces, Euler factors.

Reduction types and conductor exponents come from Tate's algorithm run on a
model minimal at the prime in question.  Traces at good primes are computed by
point counting: exhaustive enumeration at 2 and 3, a quadratic-character sum
over the short Weierstrass form for larger primes.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import factor, is_prime, jacobi
from .errors import ComputationLimitError
from .weierstrass import CurveModel, Isomorphism, invariants, minimal_model_at, transform

_DEFAULT_MAX_ELL = 10**8
_CHUNK = 1 << 22


class ReductionType(enum.Enum):
    GOOD = "Good"
    SPLIT_MULTIPLICATIVE = "SplitMultiplicative"
    NONSPLIT_MULTIPLICATIVE = "NonsplitMultiplicative"
    ADDITIVE = "Additive"

    @property
    def is_multiplicative(self) -> bool:
        return self in (ReductionType.SPLIT_MULTIPLICATIVE, ReductionType.NONSPLIT_MULTIPLICATIVE)

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class LocalData:
    """Local invariants of a curve at one prime.

    trace follows the usual convention: the Frobenius trace at good primes,
    +1/-1 at split/nonsplit multiplicative primes, 0 at additive primes.
    kodaira is a diagnostic string ("I0", "I5", "III*", ...).
    """

    ell: int
    red_type: ReductionType
    cond_exp: int
    v_disc: int
    trace: int
    kodaira: str


@dataclass(frozen=True)
class EulerPoly:
    """Euler factor P_ell(X) as coefficients in ascending degree."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self) -> str:
        parts = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            if i == 0:
                parts.append(str(a))
            else:
                x = "X" if i == 1 else "X^%d" % i
                parts.append(("%dX" % a).replace("1X", x) if abs(a) == 1 else "%d%s" % (a, x))
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def max_counting_prime() -> int:
    """Point-counting ceiling; override with PARITYKIT_MAX_ELL."""
    raw = os.environ.get("PARITYKIT_MAX_ELL")
    if raw is None:
        return _DEFAULT_MAX_ELL
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 5:
        raise ValueError("PARITYKIT_MAX_ELL must be an integer >= 5, got %r" % raw)
    return value


def _require_prime(ell) -> None:
    if not isinstance(ell, int) or not is_prime(ell):
        raise ValueError("%r is not a prime" % (ell,))


def count_points(c: CurveModel, ell: int) -> int:
    """#E(F_ell) including the point at infinity; requires good reduction at ell."""
    _require_prime(ell)
    if ell > max_counting_prime():
        raise ComputationLimitError(
            "prime too large for naive counting: %d exceeds the ceiling %d"
            % (ell, max_counting_prime())
        )
    m = minimal_model_at(c, ell)
    if invariants(m).disc % ell == 0:
        raise ValueError("bad reduction at %d; use tate_local for local data" % ell)
    return _count_points_good(m, ell)


@lru_cache(maxsize=None)
def _count_points_good(m: CurveModel, ell: int) -> int:
    if ell <= 3:
        n = 1
        for x in range(ell):
            rhs = (x**3 + m.a2 * x * x + m.a4 * x + m.a6) % ell
            for y in range(ell):
                if (y * y + m.a1 * x * y + m.a3 * y - rhs) % ell == 0:
                    n += 1
    else:
        n = _count_short_form(m, ell)
    a = ell + 1 - n
    if a * a > 4 * ell:
        raise ArithmeticError("Hasse bound violated at %d (internal error)" % ell)
    return n


def _count_short_form(m: CurveModel, ell: int) -> int:
    # y^2 = x^3 + Ax + B with A = -27*c4, B = -54*c6 (valid away from 2 and 3).
    inv = invariants(m)
    a = (-27 * (inv.c4 % ell)) % ell
    b = (-54 * (inv.c6 % ell)) % ell
    squares = np.zeros(ell, dtype=bool)
    half = ell // 2
    for start in range(0, half + 1, _CHUNK):
        r = np.arange(start, min(start + _CHUNK, half + 1), dtype=np.int64)
        squares[(r * r) % ell] = True
    n = 1
    for start in range(0, ell, _CHUNK):
        x = np.arange(start, min(start + _CHUNK, ell), dtype=np.int64)
        f = ((x * x % ell) * x + a * x + b) % ell
        zero = f == 0
        n += 2 * int(np.count_nonzero(squares[f] & ~zero)) + int(np.count_nonzero(zero))
    return n


def _singular_point(m: CurveModel, p: int) -> tuple[int, int]:
    # The singular point of a bad Weierstrass reduction is affine and rational.
    for x in range(p):
        for y in range(p):
            on = (y * y + m.a1 * x * y + m.a3 * y - x**3 - m.a2 * x * x - m.a4 * x - m.a6) % p
            fy = (2 * y + m.a1 * x + m.a3) % p
            fx = (m.a1 * y - 3 * x * x - 2 * m.a2 * x - m.a4) % p
            if on == 0 and fy == 0 and fx == 0:
                return x, y
    raise ArithmeticError("no singular point found mod %d (internal error)" % p)


def _quad_roots(qa: int, qb: int, qc: int, p: int) -> list[int]:
    return [t for t in range(p) if (qa * t * t + qb * t + qc) % p == 0]


def _quad_separable(qa: int, qb: int, qc: int, p: int) -> bool:
    if p == 2:
        return qb % 2 != 0
    return (qb * qb - 4 * qa * qc) % p != 0


def _is_split_small(m: CurveModel, p: int) -> bool:
    # Tangent cone at the node: y^2 + a1*xy - a2*x^2 after moving the node to 0.
    x0, y0 = _singular_point(m, p)
    c = transform(m, Isomorphism.of(1, x0, 0, y0))
    roots = _quad_roots(1, c.a1, -c.a2, p)
    if len(roots) == 1:
        raise ArithmeticError("tangent cone degenerate at %d (internal error)" % p)
    return len(roots) == 2


def _v(n: int, p: int) -> int:
    # Valuation with a sentinel large enough to pass every >= test here.
    if n == 0:
        return 10**9
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _additive_type_large(m: CurveModel, ell: int, n: int) -> str:
    inv = invariants(m)
    v4 = _v(inv.c4, ell)
    if n == 2:
        return "II"
    if n == 3:
        return "III"
    if n == 4:
        return "IV"
    if n == 6:
        return "I0*"
    if v4 == 2 and n >= 7:
        return "I%d*" % (n - 6)
    if n == 8:
        return "IV*"
    if n == 9:
        return "III*"
    if n == 10:
        return "II*"
    raise ArithmeticError("impossible additive valuation %d at %d (internal error)" % (n, ell))


def _normalize_depths(c: CurveModel, p: int) -> CurveModel:
    # Reach p | a1, a2; p^2 | a3, a4; p^3 | a6 by a translation (s, t).
    for s in range(p):
        for t in range(p * p):
            cand = transform(c, Isomorphism.of(1, 0, s, t))
            if (
                cand.a1 % p == 0
                and cand.a2 % p == 0
                and cand.a3 % p**2 == 0
                and cand.a4 % p**2 == 0
                and cand.a6 % p**3 == 0
            ):
                return cand
    raise ArithmeticError("depth normalization failed mod %d (internal error)" % p)


def _cubic_root_multiplicities(b: int, c: int, d: int, p: int) -> dict[int, int]:
    # Multiplicities of the rational roots of T^3 + bT^2 + cT + d mod p.
    # Derivative tests misbehave in characteristic 2 and 3, so compare against
    # (T-t)^2 (T-u) with u forced by the T^2 coefficient.  Repeated roots of a
    # cubic over F_p are rational, so this sees every repetition.
    out = {}
    for t in range(p):
        if (t**3 + b * t * t + c * t + d) % p:
            continue
        u = (-b - 2 * t) % p
        if (c - (t * t + 2 * t * u)) % p == 0 and (d + t * t * u) % p == 0:
            out[t] = 3 if (u - t) % p == 0 else 2
        else:
            out[t] = 1
    return out


def _exact_div(n: int, d: int) -> int:
    q, r = divmod(n, d)
    if r:
        raise ArithmeticError("inexact division %d / %d (internal error)" % (n, d))
    return q


def _star_loop(c: CurveModel, p: int, n: int) -> tuple[str, int]:
    # I_k* chain: probe quadratics of increasing depth until one is separable.
    ix, iy = 3, 3
    mx, my = p * p, p * p
    for _ in range(n + 8):
        a2t = _exact_div(c.a2, p)
        a3t = _exact_div(c.a3, my)
        a6t = _exact_div(c.a6, mx * my)
        if _quad_separable(1, a3t, -a6t, p):
            k = ix + iy - 5
            return "I%d*" % k, n - k - 4
        (y0,) = set(_quad_roots(1, a3t, -a6t, p))
        c = transform(c, Isomorphism.of(1, 0, 0, my * y0))
        iy += 1
        my *= p
        a4t = _exact_div(c.a4, p * mx)
        a6t = _exact_div(c.a6, mx * my)
        if _quad_separable(a2t, a4t, a6t, p):
            k = ix + iy - 5
            return "I%d*" % k, n - k - 4
        (x0,) = set(_quad_roots(a2t, a4t, a6t, p))
        c = transform(c, Isomorphism.of(1, mx * x0, 0, 0))
        ix += 1
        mx *= p
    raise ArithmeticError("runaway I_k* chain mod %d (internal error)" % p)


def _additive_type_small(m: CurveModel, p: int, n: int) -> tuple[str, int]:
    x0, y0 = _singular_point(m, p)
    c = transform(m, Isomorphism.of(1, x0, 0, y0))
    if _v(c.a6, p) < 2:
        return "II", n
    if _v(invariants(c).b8, p) < 3:
        return "III", n - 1
    if _v(invariants(c).b6, p) < 3:
        return "IV", n - 2
    c = _normalize_depths(c, p)
    mults = _cubic_root_multiplicities(
        _exact_div(c.a2, p), _exact_div(c.a4, p**2), _exact_div(c.a6, p**3), p
    )
    worst = max(mults.values(), default=1)
    if worst == 1:
        return "I0*", n - 4
    (root,) = (t for t, k in mults.items() if k == worst)
    c = transform(c, Isomorphism.of(1, p * root, 0, 0))
    if worst == 2:
        return _star_loop(c, p, n)
    a3t, a6t = _exact_div(c.a3, p**2), _exact_div(c.a6, p**4)
    if _quad_separable(1, a3t, -a6t, p):
        return "IV*", n - 6
    (y1,) = set(_quad_roots(1, a3t, -a6t, p))
    c = transform(c, Isomorphism.of(1, 0, 0, p * p * y1))
    if _v(c.a4, p) < 4:
        return "III*", n - 7
    if _v(c.a6, p) < 6:
        return "II*", n - 8
    raise ArithmeticError("model not minimal at %d after reduction (internal error)" % p)


@lru_cache(maxsize=None)
def tate_local(c: CurveModel, ell: int) -> LocalData:
    """Reduction type, conductor exponent, v_ell of the minimal discriminant, trace."""
    _require_prime(ell)
    m = minimal_model_at(c, ell)
    inv = invariants(m)
    n = _v(inv.disc, ell)
    if n == 0:
        trace = ell + 1 - count_points(m, ell)
        return LocalData(ell, ReductionType.GOOD, 0, 0, trace, "I0")
    if inv.c4 % ell != 0:
        if ell >= 5:
            split = jacobi((-inv.c6) % ell, ell) == 1
        else:
            split = _is_split_small(m, ell)
        red = ReductionType.SPLIT_MULTIPLICATIVE if split else ReductionType.NONSPLIT_MULTIPLICATIVE
        return LocalData(ell, red, 1, n, 1 if split else -1, "I%d" % n)
    if ell >= 5:
        kodaira, f = _additive_type_large(m, ell, n), 2
    else:
        kodaira, f = _additive_type_small(m, ell, n)
    if f < 2:
        raise ArithmeticError("additive exponent below 2 at %d (internal error)" % ell)
    return LocalData(ell, ReductionType.ADDITIVE, f, n, 0, kodaira)


@lru_cache(maxsize=None)
def conductor(c: CurveModel) -> int:
    """Product over bad primes of ell^cond_exp."""
    disc = invariants(c).disc
    if disc == 0:
        raise ValueError("singular model: discriminant is zero")
    n = 1
    for q, _ in factor(disc):
        n *= q ** tate_local(c, q).cond_exp
    return n


def bad_reduction_data(c: CurveModel) -> list[LocalData]:
    """LocalData at every prime of bad reduction, ascending."""
    disc = invariants(c).disc
    if disc == 0:
        raise ValueError("singular model: discriminant is zero")
    out = [tate_local(c, q) for q, _ in factor(disc)]
    return [d for d in out if d.red_type is not ReductionType.GOOD]


def is_supersingular(c: CurveModel, p: int) -> bool:
    """True when a_p(E) = 0 exactly (the strict form, applied at every odd p)."""
    if p == 2 or not isinstance(p, int) or not is_prime(p):
        raise ValueError("p must be an odd prime, got %r" % (p,))
    m = minimal_model_at(c, p)
    if invariants(m).disc % p == 0:
        raise ValueError("p must be a good prime")
    return p + 1 - count_points(m, p) == 0


def euler_poly(d: LocalData) -> EulerPoly:
    """P_ell(X): 1 - a*X + ell*X^2 good, 1 -+ X multiplicative, 1 additive."""
    if d.red_type is ReductionType.GOOD:
        return EulerPoly((1, -d.trace, d.ell))
    if d.red_type.is_multiplicative:
        return EulerPoly((1, -d.trace))
    return EulerPoly((1,))

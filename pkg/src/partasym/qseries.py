"""Truncated power series, expansion coefficients of the correction factors,
finite q-products expanded at roots of unity, and direct evaluation of
log f near a root of unity (the oracle every closed expansion is checked
against).

A :class:`PowerSeries` stores coefficient ``i`` as the coefficient of
``t^(i * grading)``; ``grading`` is 1 for ordinary series and 1/2 for series in
``t^(1/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import dedekind
from .exact_oracle import FamilySpec, is_triangular, log_product_exponent
from .hp_core import (
    DEFAULT_PRECISION,
    PreciseComplex,
    PreciseReal,
    _zeta,
    _zeta_prime_minus1,
    bernoulli_number,
    bernoulli_poly,
    context,
    mpf_in,
    zeta_exact,
)


@dataclass(frozen=True)
class PowerSeries:
    values: tuple  # mpc coefficients in the context of ``precision``
    order: int
    grading: Fraction = Fraction(1)
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        if len(self.values) != self.order:
            raise ValueError("need exactly `order` coefficients")

    @classmethod
    def from_values(cls, values: Sequence, order: int | None = None, grading=Fraction(1),
                    precision: int = DEFAULT_PRECISION) -> "PowerSeries":
        ctx = context(precision)
        order = len(values) if order is None else order
        vals = [ctx.mpc(mpf_in(ctx, v) if _is_real_number(v) else v) for v in list(values)[:order]]
        vals += [ctx.mpc(0)] * (order - len(vals))
        return cls(tuple(vals), order, Fraction(grading), precision)

    @property
    def coeffs(self) -> tuple[PreciseComplex, ...]:
        return tuple(PreciseComplex.of(v, self.precision) for v in self.values)

    def __getitem__(self, i: int):
        """Raw coefficient of t^(i * grading); zero past the stored range is not reported."""
        if not 0 <= i < self.order:
            raise IndexError(f"coefficient {i} is at or beyond the truncation order {self.order}")
        return self.values[i]

    def real(self, i: int) -> PreciseReal:
        return PreciseReal(self[i].real, self.precision)

    def evaluate(self, t):
        """Sum c_i t^(i*grading) at real t > 0, in the series context."""
        ctx = context(self.precision)
        tv = mpf_in(ctx, t)
        step = ctx.power(tv, mpf_in(ctx, self.grading))
        acc = ctx.mpc(0)
        p = ctx.one
        for v in self.values:
            acc += v * p
            p *= step
        return acc


def _is_real_number(v) -> bool:
    return isinstance(v, (int, Fraction, float, str, PreciseReal)) or (
        hasattr(v, "_mpf_"))


def series_arith(op: str, a: PowerSeries, b: PowerSeries | None = None, *, scalar=None,
                 order: int | None = None) -> PowerSeries:
    """add / mul / scale / truncate on truncated series."""
    prec = a.precision if b is None else max(a.precision, b.precision)
    ctx = context(prec)
    if b is not None and a.grading != b.grading:
        raise ValueError(f"grading mismatch: {a.grading} vs {b.grading}")
    if op == "add":
        n = min(a.order, b.order)
        vals = [ctx.mpc(a.values[i]) + b.values[i] for i in range(n)]
    elif op == "mul":
        n = min(a.order, b.order)
        vals = [ctx.fsum(a.values[i] * b.values[m - i] for i in range(m + 1)) for m in range(n)]
        vals = [ctx.mpc(v) for v in vals]
    elif op == "scale":
        if scalar is None:
            raise ValueError("scale needs a scalar")
        s = ctx.mpc(scalar.value) if isinstance(scalar, (PreciseComplex,)) else (
            ctx.mpc(mpf_in(ctx, scalar)) if _is_real_number(scalar) else ctx.mpc(scalar))
        n = a.order
        vals = [ctx.mpc(v) * s for v in a.values]
    elif op == "truncate":
        if order is None:
            raise ValueError("truncate needs an order")
        n = min(order, a.order)
        vals = [ctx.mpc(v) for v in a.values[:n]]
    else:
        raise ValueError(f"unknown op {op!r}")
    return PowerSeries(tuple(vals), n, a.grading, prec)


def series_exp(s: PowerSeries) -> PowerSeries:
    """exp of a series with zero constant term, via E' = s' E."""
    ctx = context(s.precision)
    if s.order and s.values[0] != 0:
        raise ValueError("series_exp needs a zero constant term")
    n = s.order
    E = [ctx.mpc(0)] * n
    if n:
        E[0] = ctx.mpc(1)
    for m in range(1, n):
        E[m] = ctx.fsum(k * s.values[k] * E[m - k] for k in range(1, m + 1)) / m
    return PowerSeries(tuple(ctx.mpc(v) for v in E), n, s.grading, s.precision)


def series_log(s: PowerSeries) -> PowerSeries:
    """log of a series with constant term 1 (result has zero constant term)."""
    ctx = context(s.precision)
    n = s.order
    if n == 0:
        return s
    if abs(s.values[0] - 1) > ctx.ldexp(1, -ctx.prec + 8):
        raise ValueError("series_log needs constant term 1")
    L = [ctx.mpc(0)] * n
    for m in range(1, n):
        acc = s.values[m] * m - ctx.fsum(k * L[k] * s.values[m - k] for k in range(1, m))
        L[m] = acc / m
    return PowerSeries(tuple(ctx.mpc(v) for v in L), n, s.grading, s.precision)


def exp_rational(e: Sequence[Fraction]) -> list[Fraction]:
    """Exact exp of a rational series with zero constant term (same length)."""
    if e and e[0] != 0:
        raise ValueError("needs a zero constant term")
    n = len(e)
    E = [Fraction(0)] * n
    if n:
        E[0] = Fraction(1)
    for m in range(1, n):
        E[m] = sum((k * e[k] * E[m - k] for k in range(1, m + 1) if e[k]), Fraction(0)) / m
    return E


# --------------------------------------------------------------------------
# correction factors at the principal point and at x -> -1

def nsp_phi1_exponent(r: int, J: int) -> list[Fraction]:
    """B_{2j} B_{2j+1}(r) / (2j (2j+1)!) at index 2j, j = 1..J (length 2J+1)."""
    e = [Fraction(0)] * (2 * J + 1)
    for j in range(1, J + 1):
        e[2 * j] = bernoulli_number(2 * j) * bernoulli_poly(2 * j + 1, r) / (2 * j * math.factorial(2 * j + 1))
    return e


def nsp_phi2_exponent(r: int, J: int) -> list[Fraction]:
    if r % 2:
        raise ValueError("the x -> -1 expansion is defined for even r")
    e = [Fraction(0)] * (2 * J + 1)
    half, half1 = Fraction(r, 2), Fraction(r + 1, 2)
    for j in range(1, J + 1):
        p = 4 ** j
        e[2 * j] = (p * bernoulli_number(2 * j) / (2 * j * math.factorial(2 * j + 1))
                    * (bernoulli_poly(2 * j + 1, half) + (p - 1) * bernoulli_poly(2 * j + 1, half1)))
    return e


def nsp_phi1_coeffs_exact(r: int, J: int) -> list[Fraction]:
    if r < 2 or J < 1:
        raise ValueError("need r >= 2 and J >= 1")
    return exp_rational(nsp_phi1_exponent(r, J))


def nsp_phi2_coeffs_exact(r: int, J: int) -> list[Fraction]:
    if J < 1:
        raise ValueError("need J >= 1")
    return exp_rational(nsp_phi2_exponent(r, J))


def nsp_phi1_coeffs(r: int, J: int, precision: int = DEFAULT_PRECISION) -> PowerSeries:
    """c_{2j}, j = 0..J, of exp{sum B_{2j} B_{2j+1}(r) t^{2j} / (2j (2j+1)!)}."""
    return PowerSeries.from_values(nsp_phi1_coeffs_exact(r, J), precision=precision)


def nsp_phi2_coeffs(r: int, J: int, precision: int = DEFAULT_PRECISION) -> PowerSeries:
    """d_{2j}, j = 0..J, of the correction factor of f_r(-e^{-t}) (even r only)."""
    return PowerSeries.from_values(nsp_phi2_coeffs_exact(r, J), precision=precision)


def plane_exponent(J: int, variant: str) -> list[Fraction]:
    """Exponent series (index 2k, k = 1..J) of the strict-plane correction factor.

    principal:   zeta(1-2k) zeta(-1-2k) / (2 (2k)!)
    alternating: residue of the x -> -1 Mellin transform at s = -2k,
                 zeta(1-2k) (5*4^k - 2*16^k - 1) zeta(-1-2k) / (2 (2k)!)
    """
    if J < 1:
        raise ValueError("need J >= 1")
    e = [Fraction(0)] * (2 * J + 1)
    for k in range(1, J + 1):
        base = zeta_exact(1 - 2 * k) * zeta_exact(-1 - 2 * k) / (2 * math.factorial(2 * k))
        if variant == "principal":
            e[2 * k] = base
        elif variant == "alternating":
            e[2 * k] = base * (5 * 4 ** k - 2 * 16 ** k - 1)
        else:
            raise ValueError(f"unknown variant {variant!r}")
    return e


def plane_correction_coeffs_exact(J: int, variant: str) -> list[Fraction]:
    return exp_rational(plane_exponent(J, variant))


def plane_correction_coeffs(J: int, variant: str, precision: int = DEFAULT_PRECISION) -> PowerSeries:
    return PowerSeries.from_values(plane_correction_coeffs_exact(J, variant), precision=precision)


def concave_exponent(J: int, precision: int = DEFAULT_PRECISION) -> list:
    """Exponent in powers of t^(1/2): index 2k+1 holds sqrt(2 pi)/16 zeta(1/2-k) / (8^k (k+1)!)."""
    if J < 1:
        raise ValueError("need J >= 1")
    ctx = context(precision)
    work = context(precision + 10)
    e = [ctx.zero] * (J + 1)
    pref = work.sqrt(2 * work.pi) / 16
    for k in range((J - 1) // 2 + 1):
        if 2 * k + 1 > J:
            break
        e[2 * k + 1] = ctx.mpf(pref * _zeta(work, Fraction(1, 2) - k) / (8 ** k * math.factorial(k + 1)))
    return e


def concave_correction_coeffs(J: int, precision: int = DEFAULT_PRECISION) -> PowerSeries:
    """c_0..c_J of exp{sqrt(2pi)/16 sum zeta(1/2-k) t^{k+1/2} / (8^k (k+1)!)}, graded by t^(1/2)."""
    e = concave_exponent(J, precision)
    return series_exp(PowerSeries.from_values(e, grading=Fraction(1, 2), precision=precision))


# --------------------------------------------------------------------------
# finite products at roots of unity

def root_of_unity_power(ctx, h: int, k: int, j: int):
    """e^{2 pi i h j / k}, exactly 1 when k | hj."""
    num = (2 * h * j) % (2 * k)
    if num == 0:
        return ctx.mpc(1)
    return ctx.expjpi(ctx.mpf(num) / k)


def expand_finite_product(rmax: int, h: int, k: int, J: int, precision: int = DEFAULT_PRECISION) -> PowerSeries:
    """Taylor coefficients c_0..c_J in t of prod_{j=1}^{rmax} (1 - e^{j(2 pi i h/k - t)})."""
    if J < 1:
        raise ValueError("need J >= 1")
    if k < 1 or math.gcd(h, k) != 1 or not (0 <= h < k):
        raise ValueError(f"(h, k) = ({h}, {k}) must satisfy gcd = 1 and 0 <= h < k")
    ctx = context(precision + 10)
    n = J + 1
    P = [ctx.mpc(1)] + [ctx.mpc(0)] * J
    inv_fact = [ctx.one / ctx.factorial(m) for m in range(n)]
    for j in range(1, rmax + 1):
        w = root_of_unity_power(ctx, h, k, j)
        # 1 - w e^{-jt} = (1 - w) - w sum_{m>=1} (-j)^m t^m / m!
        f = [-w * (-j) ** m * inv_fact[m] for m in range(n)]
        f[0] = 1 - w if w != 1 else ctx.mpc(0)
        P = [ctx.fsum(P[i] * f[m - i] for i in range(m + 1)) for m in range(n)]
    out = context(precision)
    return PowerSeries(tuple(out.mpc(v) for v in P), n, Fraction(1), precision)


# --------------------------------------------------------------------------
# direct evaluation of log f near a root of unity

TERM_BUDGET = 2_000_000


def direct_log_f(family: FamilySpec, h: int, k: int, t, precision: int = DEFAULT_PRECISION,
                 term_budget: int = TERM_BUDGET) -> PreciseComplex:
    """log f(e^{2 pi i h/k - t}) = -sum_m mu(m) log(1 - x^m), summed until the tail is negligible.

    Each factor uses the principal logarithm, so the imaginary part is defined
    only modulo 2 pi.
    """
    ctx = context(precision + 10)
    tv = mpf_in(ctx, t.value if isinstance(t, PreciseReal) else t)
    if not tv > 0:
        raise ValueError("t must be positive")
    if k < 1 or math.gcd(h, k) != 1 or not (0 <= h < k):
        raise ValueError(f"(h, k) = ({h}, {k}) is not a singular point")
    eps = ctx.ldexp(1, -ctx.prec - 4)
    acc = ctx.mpc(0)
    decay = ctx.exp(-tv)
    if family.family == "concave":
        m_iter = (j * (j + 1) // 2 for j in range(1, term_budget + 1))
    else:
        m_iter = iter(range(1, term_budget + 1))
    for m in m_iter:
        mu = log_product_exponent(family, m)
        mag = decay ** m
        if mu:
            xm = root_of_unity_power(ctx, h, k, m) * mag
            acc -= mu * ctx.log(1 - xm)
        # remaining tail is bounded by sum mu(m') e^{-m' t}; mu grows at most linearly
        if mag * (m + 1) / (1 - decay) ** 2 < eps:
            break
    else:
        raise ArithmeticError(f"log-product did not converge within {term_budget} terms at t={t}")
    return PreciseComplex.of(acc, precision)


# --------------------------------------------------------------------------
# closed asymptotic expansions of log f as t -> 0

def _log_F_at(ctx, h: int, k: int, t):
    """Leading modular behaviour of log F(e^{2 pi i h/k - t}), F = prod 1/(1-x^j):
    pi i s(h,k) + log(k t / 2 pi)/2 + pi^2/(6 k^2 t) - t/24, exact up to O(e^{-4 pi^2/(k^2 t)})."""
    s = dedekind.dedekind_sum(h, k) if k > 1 else Fraction(0)
    return (ctx.mpc(0, ctx.pi * ctx.mpf(s.numerator) / s.denominator)
            + ctx.log(k * t / (2 * ctx.pi)) / 2 + ctx.pi ** 2 / (6 * k * k * t) - t / 24)


def _log_series_with_zeros(ctx, series: PowerSeries, t):
    """log of sum c_j t^j truncated, where the leading nonzero coefficient may sit at j > 0."""
    vals = series.values
    z0 = 0
    tiny = ctx.ldexp(1, -ctx.prec + 20)
    scale = max(abs(v) for v in vals) or ctx.one
    while z0 < len(vals) and abs(vals[z0]) <= tiny * scale:
        z0 += 1
    rest = [ctx.mpc(v) / vals[z0] for v in vals[z0:]]
    s = PowerSeries(tuple(rest), len(rest), Fraction(1), series.precision)
    L = series_log(s)
    return z0 * ctx.log(t) + ctx.log(vals[z0]) + L.evaluate(t), z0


def expansion_log_f(family: FamilySpec, h: int, k: int, t, J: int = 4,
                    precision: int = DEFAULT_PRECISION) -> PreciseComplex:
    """Closed small-t expansion of log f(e^{2 pi i h/k - t}) with J correction terms.

    Supported points: every family at (0,1) and (1,2); nsp at every (h,k).
    ``J`` counts correction terms of the power series part (for families whose
    expansion is exact up to exponentially small terms it is ignored).
    """
    ctx = context(precision + 10)
    tv = mpf_in(ctx, t.value if isinstance(t, PreciseReal) else t)
    fam = family.family
    point = (h, k)
    pi = ctx.pi
    if fam == "nsp":
        r = family.r
        if point == (0, 1):
            e = nsp_phi1_exponent(r, J)
            val = (ctx.log(ctx.factorial(r - 1)) + (r - 1) * ctx.log(tv) + ctx.log(tv / (2 * pi)) / 2
                   + pi ** 2 / (6 * tv) - mpf_in(ctx, bernoulli_poly(2, r) / 4) * tv
                   + ctx.fsum(mpf_in(ctx, e[i]) * tv ** i for i in range(len(e))))
        else:
            # log F at the point plus the finite product g = prod_{j<r} (1 - x^j), numerically
            # (1 - x^j) vanishes at t = 0 for every j divisible by k
            g = expand_finite_product(r - 1, h, k, J + (r - 1) // k, precision + 10)
            lg, _ = _log_series_with_zeros(ctx, g, tv)
            val = _log_F_at(ctx, h, k, tv) + lg
        return PreciseComplex.of(val, precision)
    if fam == "basic":
        if k % 2 == 0:
            raise ValueError("basic partitions have singular points only at odd k")
        # F(x)^2 / F(x^2); x^2 sits at (2h mod k, k) with t -> 2t
        val = 2 * _log_F_at(ctx, h, k, tv) - _log_F_at(ctx, (2 * h) % k, k, 2 * tv)
        return PreciseComplex.of(val, precision)
    if fam == "colored3":
        P = pi ** 2
        pref = ctx.log(tv / (3 ** 5 * 2 * pi)) / 2 + ctx.mpf(7) / 8 * tv
        if point == (0, 1):
            val = pref + ctx.log(ctx.exp(P / (2 * tv)) - 3 * ctx.exp(P / (18 * tv)))
        elif point == (1, 2):
            # prefactor 1/sqrt(243 pi) = 2^{1/2} / sqrt(486 pi)
            val = pref + ctx.log(2) / 2 + ctx.log(ctx.exp(P / (8 * tv)) + 3 * ctx.exp(P / (72 * tv)))
        else:
            raise ValueError("colored3 expansion implemented at (0,1) and (1,2)")
        return PreciseComplex.of(val, precision)
    if fam == "planestrict":
        z3 = _zeta(ctx, 3)
        zp = _zeta_prime_minus1(ctx)
        if point == (0, 1):
            e = plane_exponent(J, "principal")
            val = (z3 / (2 * tv ** 2) + pi ** 2 / (24 * tv) + zp / 2 - ctx.log(2) / 4
                   + ctx.log(tv) / 24 + tv / 48)
        elif point == (1, 2):
            e = plane_exponent(J, "alternating")
            val = (z3 / (16 * tv ** 2) - pi ** 2 / (48 * tv) + zp + ctx.log(2) / 24
                   + ctx.log(tv) / 12 + tv / 48)
        else:
            raise ValueError("planestrict expansion implemented at (0,1) and (1,2)")
        val += ctx.fsum(mpf_in(ctx, e[i]) * tv ** i for i in range(len(e)))
        return PreciseComplex.of(val, precision)
    if fam == "prings":
        c = prings_constants(ctx)
        if point == (0, 1):
            a, b = c["a"], c["b"]
        elif point == (1, 2):
            a, b = c["a2"], c["b2"]
        else:
            raise ValueError("prings expansion implemented at (0,1) and (1,2)")
        val = 3 * ctx.log(2 * pi) / 4 - ctx.log(tv) / 4 + a / tv + b / ctx.sqrt(tv)
        return PreciseComplex.of(val, precision)
    if fam == "concave":
        if point != (0, 1):
            raise ValueError("concave expansion implemented at (0,1)")
        a = ctx.sqrt(2 * pi) / 2 * _zeta(ctx, Fraction(3, 2))
        e = concave_exponent(J, precision + 10)
        val = (ctx.log(tv / (4 * pi)) + a / ctx.sqrt(tv)
               + ctx.fsum(e[i] * tv ** (ctx.mpf(i) / 2) for i in range(len(e))))
        return PreciseComplex.of(val, precision)
    raise AssertionError(fam)


def prings_constants(ctx) -> dict:
    """Exponent constants of the semisimple-ring generating function at x -> 1 and x -> -1.

    a  = zeta(2)^2,             b  = sqrt(pi)/2 zeta(1/2) zeta(3/2)
    a2 = 7 zeta(2)^2 / 16,      b2 = b (3 sqrt 2 - 1) / 4
    """
    z2 = ctx.pi ** 2 / 6
    b = ctx.sqrt(ctx.pi) / 2 * _zeta(ctx, Fraction(1, 2)) * _zeta(ctx, Fraction(3, 2))
    return {
        "a": z2 ** 2,
        "b": b,
        "a2": 7 * z2 ** 2 / 16,
        "b2": b * (3 * ctx.sqrt(2) - 1) / 4,
    }


__all__ = [
    "PowerSeries",
    "series_arith",
    "series_exp",
    "series_log",
    "exp_rational",
    "nsp_phi1_coeffs",
    "nsp_phi2_coeffs",
    "expand_finite_product",
    "plane_correction_coeffs",
    "concave_correction_coeffs",
    "direct_log_f",
    "expansion_log_f",
    "is_triangular",
]

"""Circle-method terms for basic partitions, 3-colored partitions, strict plane
partitions, semisimple p-rings and concave partitions, plus the
zeta-value identity used for the concave-partition correction terms.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .. import dedekind
from ..hp_core import (
    DEFAULT_PRECISION,
    PreciseReal,
    _bessel_i,
    _zeta,
    _zeta_prime_minus1,
    context,
    mpf_in,
    zeta_exact,
)
from ..qseries import concave_exponent, exp_rational, plane_exponent, prings_constants, series_exp, PowerSeries
from .transfer import transfer_double_raw, transfer_single_raw

# --------------------------------------------------------------------------
# basic partitions: prod (1 + x^j)/(1 - x^j)


def basic_phi_raw(ctx, n: int, k: int):
    if k % 2 == 0:
        raise ValueError("basic partitions have singular points only at odd k")
    if n <= 0:
        raise ValueError("the basic-partition terms need n >= 1 (the transfer diverges at xi = 0)")
    a = ctx.pi ** 2 / 4
    A = mpf_in(ctx, dedekind.a_tilde(k, n, int(ctx.prec / 3.33)))
    # t^(1/2) exp(a/(k^2 t))  ->  (a/(k^2 n))^(3/4) I_{-3/2}(2 sqrt(a n / k^2))
    return ctx.sqrt(ctx.mpf(k) / ctx.pi) / 2 * A * transfer_single_raw(ctx, Fraction(1, 2), a / (k * k), ctx.mpf(n))


def basic_phi(n: int, k: int, precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """Contribution of the denominator-k singular points (k odd), xi = n."""
    work = context(precision + 10)
    return PreciseReal(context(precision).mpf(basic_phi_raw(work, n, k)), precision)


# --------------------------------------------------------------------------
# 3-colored partitions: prod (1 - x^{9j})^3 / ((1 - x^{3j})(1 - x^j)^3)

COLORED3_SHIFT = Fraction(7, 8)
COLORED3_KMAX = 7


def colored3_phi_raw(ctx, n: int, k: int):
    if not 1 <= k <= COLORED3_KMAX:
        raise ValueError(f"3-colored terms are available for 1 <= k <= {COLORED3_KMAX}")
    xi = mpf_in(ctx, n + COLORED3_SHIFT)
    if xi <= 0:
        raise ValueError("xi = n + 7/8 must be positive")
    P = ctx.pi ** 2
    pi = ctx.pi

    def B(c):  # (c/xi)^(3/4) I_{-3/2}(2 sqrt(c xi))
        return transfer_single_raw(ctx, Fraction(1, 2), c, xi)

    def cos(num: Fraction):  # cos(pi * num)
        return ctx.cospi(ctx.mpf(num.numerator) / num.denominator)

    def c_n(j: int, k_: int, off: Fraction):  # cos(2 pi j n / k - off pi), reduced exactly
        return cos((Fraction(2 * j * n, k_) - off) % 2)

    if k == 1:
        return (B(P / 2) - 3 * B(P / 18)) / ctx.sqrt(486 * pi)
    if k == 2:
        return (-1) ** n * (B(P / 8) + 3 * B(P / 72)) / ctx.sqrt(243 * pi)
    if k == 3:
        return 2 * c_n(1, 3, Fraction(1, 6)) / ctx.sqrt(18 * pi) * B(P / 18)
    if k == 4:
        return 2 * c_n(1, 4, Fraction(-1, 8)) * ctx.sqrt(4 / (486 * pi)) * B(P / 32)
    if k == 5:
        cs = c_n(1, 5, Fraction(6, 5)) + c_n(2, 5, Fraction(1, 5))
        return 2 * cs * ctx.sqrt(5 / (486 * pi)) * B(P / 50)
    if k == 6:
        return 2 * c_n(1, 6, Fraction(5, 6)) / ctx.sqrt(9 * pi) * B(P / 72)
    cs = c_n(1, 7, Fraction(11, 14)) + c_n(2, 7, Fraction(1, 14)) + c_n(3, 7, Fraction(13, 14))
    return 2 * cs * ctx.sqrt(7 / (486 * pi)) * B(P / 98)


def colored3_phi(n: int, k: int, precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """Contribution of the denominator-k points, k = 1..7, with xi = n + 7/8."""
    work = context(precision + 10)
    return PreciseReal(context(precision).mpf(colored3_phi_raw(work, n, k)), precision)


# --------------------------------------------------------------------------
# plane partitions strictly decreasing along rows: prod (1 - x^j)^{-[(j+1)/2]}

PLANE_SHIFT = Fraction(1, 48)
PLANE_M_TERMS = 8


def plane_constants(ctx) -> dict:
    z3 = _zeta(ctx, 3)
    zp = _zeta_prime_minus1(ctx)
    return {
        "a": z3 / 2,
        "b": ctx.pi ** 2 / 24,
        "c": ctx.power(2, ctx.mpf(-1) / 4) * ctx.exp(zp / 2),
        "a2": z3 / 16,
        "b2": -ctx.pi ** 2 / 48,
        "c2": ctx.power(2, ctx.mpf(1) / 24) * ctx.exp(zp),
    }


def plane_correction(m_terms: int, variant: str, exponent: list[Fraction] | None = None) -> list[Fraction]:
    """Coefficients c_0, c_2, ..., c_{2(m_terms-1)} of the correction factor (exact)."""
    e = exponent if exponent is not None else plane_exponent(max(1, m_terms - 1), variant)
    e = list(e) + [Fraction(0)] * max(0, 2 * m_terms - 1 - len(e))
    coeffs = exp_rational(e[: 2 * m_terms - 1])
    return [coeffs[2 * m] for m in range(m_terms)]


def _plane_phi1_raw(ctx, xi, m_terms: int, J: int | None):
    K = plane_constants(ctx)
    a, b, c = K["a"], K["b"], K["c"]
    coeffs = plane_correction(m_terms, "principal")
    z = 2 * ctx.sqrt(b * xi)
    ratio = a * xi / b
    eps = ctx.ldexp(1, -ctx.prec)
    total = ctx.zero
    bessel: dict[int, object] = {}  # the order 2(j-m) - 25/24 depends on j - m only

    def I(d):
        v = bessel.get(d)
        if v is None:
            v = bessel[d] = _bessel_i(ctx, 2 * d - Fraction(25, 24), z)
        return v

    for m, cm in enumerate(coeffs):
        if cm == 0:
            continue
        # t^(1/24 + 2m) exp(a/t^2 + b/t): expand exp(a/t^2) and transfer each exp(b/t) term
        acc = ctx.zero
        biggest = ctx.zero
        w = ctx.one
        j = 0
        small = 0
        while True:
            term = w * I(j - m)
            acc += term
            biggest = max(biggest, abs(term))
            j += 1
            if J is not None and j >= J:
                break
            # I_nu(z) falls off like (z/2)^nu / nu!, so the terms decay for good past the peak
            small = small + 1 if abs(term) <= eps * biggest else 0
            if J is None and small >= 3:
                break
            w = w * ratio / j
        total += mpf_in(ctx, cm) * ctx.power(b / xi, ctx.mpf(25) / 48 + m) * acc
    return c * total


def _plane_phi2_raw(ctx, n: int, m_terms: int, exponent: list[Fraction] | None):
    coeffs = plane_correction(m_terms, "alternating", exponent)
    total = ctx.zero

    def a2(w):
        return _zeta(w, 3) / 16

    def b2(w):
        return -w.pi ** 2 / 48

    for m, dm in enumerate(coeffs):
        if dm == 0:
            continue
        # t^(1/12 + 2m) exp(a2/t^2 + b2/t) with b2 < 0: real double Gamma sum
        s = transfer_double_raw(ctx, Fraction(1, 12) + 2 * m, 2, a2, 1, b2, n + PLANE_SHIFT)
        total += mpf_in(ctx, dm) * s
    K = plane_constants(ctx)
    return (-1) ** n * K["c2"] * total


def plane_phi(n: int, which: int, m_terms: int = PLANE_M_TERMS, J: int | None = None,
              precision: int = DEFAULT_PRECISION, exponent: list[Fraction] | None = None) -> PreciseReal:
    """which=1: x -> 1 term; which=2: x -> -1 term; m_terms correction coefficients each.

    ``exponent`` overrides the x -> -1 exponent series (index 2k holds the t^{2k}
    coefficient); by default it is computed from the Mellin residues.
    """
    work = context(precision + 10)
    xi = mpf_in(work, n + PLANE_SHIFT)
    if xi <= 0:
        raise ValueError("xi = n + 1/48 must be positive")
    if m_terms < 1:
        raise ValueError("m_terms must be >= 1")
    if which == 1:
        val = _plane_phi1_raw(work, xi, m_terms, J)
    elif which == 2:
        val = _plane_phi2_raw(work, n, m_terms, exponent)
    else:
        raise ValueError("which must be 1 or 2")
    return PreciseReal(context(precision).mpf(val), precision)


# --------------------------------------------------------------------------
# semisimple p-rings: prod_{j,k} (1 - x^{j k^2})^{-1}


def prings_phi(n: int, which: int, K: int | None = None, precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """which=1: (2pi)^(3/4) sum (1/k!) (b (n/a)^(1/4))^k (a/n)^(3/8) I_{k/2-3/4}(2 sqrt(a n));
    which=2: (-1)^n times the analogous real double sum with a2, b2 < 0."""
    if n <= 0:
        raise ValueError("n must be positive")
    work = context(precision + 10)
    nv = work.mpf(n)
    if which == 1:
        C = prings_constants(work)
        a, b = C["a"], C["b"]
        z = 2 * work.sqrt(a * nv)
        u = b * work.power(nv / a, work.mpf(1) / 4)
        eps = work.ldexp(1, -work.prec)
        acc = work.zero
        biggest = work.zero
        w = work.one
        k = 0
        while True:
            term = w * _bessel_i(work, Fraction(2 * k - 3, 4), z)
            acc += term
            biggest = max(biggest, abs(term))
            k += 1
            if K is not None and k >= K:
                break
            if K is None and k > abs(u) and abs(term) <= eps * biggest:
                break
            w = w * u / k
        val = work.power(2 * work.pi, work.mpf(3) / 4) * work.power(a / nv, work.mpf(3) / 8) * acc
    elif which == 2:
        s = transfer_double_raw(work, Fraction(-1, 4), 1, lambda w: prings_constants(w)["a2"],
                                Fraction(1, 2), lambda w: prings_constants(w)["b2"], nv, None, K)
        val = (-1) ** n * work.power(2 * work.pi, work.mpf(3) / 4) * s
    else:
        raise ValueError("which must be 1 or 2")
    return PreciseReal(context(precision).mpf(val), precision)


def prings_closed_form(n: int, precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """(2 pi sqrt a)^(1/4) / (sqrt 2 n^(5/8)) exp{2 sqrt(a n) + b (n/a)^(1/4) - b^2/(16 a)}."""
    if n <= 0:
        raise ValueError("n must be positive")
    ctx = context(precision + 10)
    C = prings_constants(ctx)
    a, b = C["a"], C["b"]
    nv = ctx.mpf(n)
    val = (ctx.power(2 * ctx.pi * ctx.sqrt(a), ctx.mpf(1) / 4) / (ctx.sqrt(2) * ctx.power(nv, ctx.mpf(5) / 8))
           * ctx.exp(2 * ctx.sqrt(a * nv) + b * ctx.power(nv / a, ctx.mpf(1) / 4) - b * b / (16 * a)))
    return PreciseReal(context(precision).mpf(val), precision)


# --------------------------------------------------------------------------
# concave partitions: prod (1 - x^{j(j+1)/2})^{-1}

CONCAVE_CORRECTIONS = 4


def concave_a(ctx):
    return ctx.sqrt(2 * ctx.pi) / 2 * _zeta(ctx, Fraction(3, 2))


def concave_coefficient(ctx, k: int):
    """c_k of 1 + sum c_k t^(k/2)."""
    if k == 0:
        return ctx.one
    digits = int(ctx.prec / 3.33)
    e = concave_exponent(k, digits)
    return series_exp(PowerSeries.from_values(e, grading=Fraction(1, 2), precision=digits))[k].real


def concave_q(n: int, k: int, J: int | None = None, precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """q_k = c_k/(4 pi) sum_j a^j n^(j/2 - 2 - k/2) / (j! Gamma(j/2 - 1 - k/2))."""
    if n <= 0:
        raise ValueError("n must be positive")
    if k < 0:
        raise ValueError("k must be >= 0")
    work = context(precision + 10)
    ck = concave_coefficient(work, k)
    # t^(1 + k/2) exp(a t^(-1/2)); 1/Gamma vanishes at the poles
    s = transfer_double_raw(work, 1 + Fraction(k, 2), Fraction(1, 2), concave_a, 1, 0, work.mpf(n), J, 1)
    return PreciseReal(context(precision).mpf(ck / (4 * work.pi) * s), precision)


def concave_growth_constant(precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """A = 3 (a/2)^(2/3) = (3/2) pi^(1/3) zeta(3/2)^(2/3): log a_n ~ A n^(1/3)."""
    ctx = context(precision + 10)
    val = ctx.mpf(3) / 2 * ctx.cbrt(ctx.pi) * ctx.power(_zeta(ctx, Fraction(3, 2)), ctx.mpf(2) / 3)
    return PreciseReal(context(precision).mpf(val), precision)


def petersson_residual(k: int) -> Fraction:
    """|sum_{j=0}^k C(k,j) zeta(j-2k) - (-1)^k / (2 (2k+1) C(2k,k))| as an exact rational."""
    if k < 0:
        raise ValueError("k must be >= 0")
    lhs = sum((math.comb(k, j) * zeta_exact(j - 2 * k) for j in range(k + 1)), Fraction(0))
    rhs = Fraction((-1) ** k, 2 * (2 * k + 1) * math.comb(2 * k, k))
    return abs(lhs - rhs)


def petersson_check(k: int, precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """The identity's residual as a PreciseReal (exactly 0 for k >= 1)."""
    if k < 1:
        raise ValueError("the identity is checked for k >= 1 (it fails at k = 0)")
    return PreciseReal.of(petersson_residual(k), precision)

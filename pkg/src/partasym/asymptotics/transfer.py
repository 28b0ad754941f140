"""Transfer rules: the formal substitution t^(-s) -> xi^(s-1)/Gamma(s) applied to
t^a exp(c/t) (a Bessel function) and to t^tau exp(a t^(-p) + b t^(-q))
(a double Gamma sum, real for any sign of a and b).
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..hp_core import (
    DEFAULT_PRECISION,
    PreciseReal,
    _bessel_i,
    _rgamma,
    context,
    digits_of,
    exact_rational,
    mpf_in,
)


def _raw(x):
    return x.value if isinstance(x, PreciseReal) else x


def transfer_single_raw(ctx, a, c, xi):
    """(c/xi)^((1+a)/2) I_{-1-a}(2 sqrt(c xi)) in ``ctx``; ``a`` may be a Fraction."""
    q = exact_rational(a)
    av = mpf_in(ctx, a)
    order = (-1 - q) if q is not None else -1 - av
    return ctx.power(c / xi, (1 + av) / 2) * _bessel_i(ctx, order, 2 * ctx.sqrt(c * xi))


def transfer_single(a, c, xi, precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """Image of t^a exp(c/t): (c/xi)^((1+a)/2) I_{-1-a}(2 sqrt(c xi)), for c, xi > 0."""
    ctx = context(precision)
    work = context(precision + 10)
    cv, xv = mpf_in(work, _raw(c)), mpf_in(work, _raw(xi))
    if not (cv > 0 and xv > 0):
        raise ValueError("transfer_single needs c > 0 and xi > 0")
    return PreciseReal(ctx.mpf(transfer_single_raw(work, _raw(a), cv, xv)), precision)


def _fraction_gcd(x: Fraction, y: Fraction) -> Fraction:
    return Fraction(math.gcd(x.numerator * y.denominator, y.numerator * x.denominator),
                    x.denominator * y.denominator)


def _double_sum(ctx, t_power: Fraction, p: Fraction, a, q: Fraction, b, xi, J, K):
    """Returns (sum, largest |term|)."""
    eps = ctx.ldexp(1, -ctx.prec)
    g = _fraction_gcd(p, q)
    P, Q = int(p / g), int(q / g)
    x0 = -t_power
    # 1/Gamma(x0 + m g) and xi^(x0 + m g - 1), filled lazily along unit ladders
    rg: dict[int, object] = {}
    xg = ctx.power(xi, mpf_in(ctx, g))
    xpow: list = [ctx.power(xi, mpf_in(ctx, x0 - 1))]
    unit = int(1 / g) if (1 / g).denominator == 1 else None

    def rgamma_at(m):
        v = rg.get(m)
        if v is None:
            x = x0 + m * g
            if unit is not None and (m - unit) in rg and not (x - 1 <= 0 and (x - 1).denominator == 1):
                v = rg[m - unit] / mpf_in(ctx, x - 1)
            else:
                v = _rgamma(ctx, x)
            rg[m] = v
        return v

    def xi_at(m):
        while len(xpow) <= m:
            xpow.append(xpow[-1] * xg)
        return xpow[m]

    # Within a row the terms are unimodal in k, and the row maxima are unimodal
    # in j apart from isolated zeros at poles of Gamma; a run of negligible,
    # decreasing entries therefore marks the tail.
    total = ctx.zero
    biggest = ctx.zero
    aj = ctx.one  # a^j / j!
    j = 0
    j_small = 0
    prev_row = None
    while True:
        row_big = ctx.zero
        bk = ctx.one  # b^k / k!
        k = 0
        k_small = 0
        prev = None
        while True:
            m = P * j + Q * k
            term = aj * bk * xi_at(m) * rgamma_at(m)
            total += term
            at = abs(term)
            if at > row_big:
                row_big = at
            k += 1
            if b == 0 or (K is not None and k >= K):
                break
            bk = bk * b / k
            if K is None:
                tiny = at <= eps * max(row_big, biggest) and (prev is None or at <= prev)
                k_small = k_small + 1 if tiny else 0
                if k_small >= 3:
                    break
                if k > 10**5:
                    raise ArithmeticError("double transfer sum did not converge in k")
            prev = at
        if row_big > biggest:
            biggest = row_big
        j += 1
        if a == 0 or (J is not None and j >= J):
            break
        aj = aj * a / j
        if J is None:
            tiny = row_big <= eps * biggest and (prev_row is None or row_big <= prev_row)
            j_small = j_small + 1 if tiny else 0
            if j_small >= 3:
                break
            if j > 10**5:
                raise ArithmeticError("double transfer sum did not converge in j")
        prev_row = row_big
    return total, biggest


def transfer_double_raw(ctx, t_power, p, a, q, b, xi, J=None, K=None):
    """Double Gamma sum in ``ctx`` with a cancellation guard.

    ``a``, ``b`` and ``xi`` are numbers or callables ``ctx -> value``; callables are
    re-evaluated at the raised working precision, so inputs stay accurate when
    the alternating sum cancels many digits.
    """
    t_power, p, q = Fraction(t_power), Fraction(p), Fraction(q)
    if p <= 0 or q <= 0:
        raise ValueError("p and q must be positive")
    digits = digits_of(ctx)
    guard = 15
    while True:
        work = context(digits + guard)
        av, bv, xv = (work.mpf(v(work) if callable(v) else mpf_in(work, v)) for v in (a, b, xi))
        total, biggest = _double_sum(work, t_power, p, av, q, bv, xv, J, K)
        lost = guard if total == 0 else max(0.0, float(work.log10(biggest / abs(total))))
        if lost + 5 < guard:
            return ctx.mpf(total)
        guard = int(lost) + 20


def transfer_double(t_power, p, a, q, b, xi, J: int | None = None, K: int | None = None,
                    precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """sum_{j,k} a^j b^k xi^(pj+qk-t_power-1) / (j! k! Gamma(pj+qk-t_power)).

    The image of t^t_power exp(a t^(-p) + b t^(-q)) under the transfer rule;
    J and K cap the two indices (None: run until the terms are negligible).
    t_power, p and q must be rational; 1/Gamma is exactly 0 at its poles.
    """
    ctx = context(precision)
    work = context(precision + 10)
    xv = mpf_in(work, _raw(xi))
    if not xv > 0:
        raise ValueError("xi must be positive")
    val = transfer_double_raw(work, t_power, p, mpf_in(work, _raw(a)), q, mpf_in(work, _raw(b)), xv, J, K)
    return PreciseReal(ctx.mpf(val), precision)

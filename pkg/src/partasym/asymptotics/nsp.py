"""Circle-method terms for partitions without small parts (all parts >= r).

The generating function is F(x) * g(x) with F = prod 1/(1-x^j) and
g(x) = prod_{j<r} (1-x^j).  Near x = 1 and x = -1 the correction factor of g
has closed rational coefficients; near any other root of unity it is expanded
numerically.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .. import dedekind
from ..hp_core import DEFAULT_PRECISION, PreciseReal, bernoulli_poly, context, mpf_in
from ..qseries import expand_finite_product, nsp_phi1_coeffs_exact, nsp_phi2_coeffs_exact
from .transfer import transfer_single_raw

DEFAULT_J = 16


def principal_shift(r: int) -> Fraction:
    """xi - n at x -> +-1: -B_2(r)/4."""
    return -bernoulli_poly(2, r) / 4


HIGHER_SHIFT = Fraction(-1, 24)


def _xi(n: int, shift: Fraction) -> Fraction:
    xi = n + shift
    if xi <= 0:
        raise ValueError(f"shifted index xi = {xi} must be positive (n = {n} is too small)")
    return xi


def _check_r(r: int):
    if int(r) != r or r < 2:
        raise ValueError("r must be an integer >= 2")


def nsp_phi1_raw(ctx, r: int, n: int, J: int):
    xi = mpf_in(ctx, _xi(n, principal_shift(r)))
    c = ctx.pi ** 2 / 6
    coeffs = nsp_phi1_coeffs_exact(r, J)
    # t^(r - 1/2 + 2j) exp(zeta(2)/t)  ->  (zeta(2)/xi)^(r/2 + 1/4 + j) I_{-(r + 1/2 + 2j)}(2 sqrt(zeta(2) xi))
    acc = ctx.fsum(mpf_in(ctx, coeffs[2 * j]) * transfer_single_raw(ctx, Fraction(2 * r - 1, 2) + 2 * j, c, xi)
                   for j in range(J + 1))
    return math.factorial(r - 1) / ctx.sqrt(2 * ctx.pi) * acc


def nsp_phi1(r: int, n: int, J: int = DEFAULT_J, precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """Contribution of x -> 1, with the correction coefficients c_0..c_{2J}."""
    _check_r(r)
    work = context(precision + 10)
    return PreciseReal(context(precision).mpf(nsp_phi1_raw(work, r, n, J)), precision)


def nsp_phi2_raw(ctx, r: int, n: int, J: int):
    xi = mpf_in(ctx, _xi(n, principal_shift(r)))
    c4 = ctx.pi ** 2 / 24
    coeffs = nsp_phi2_coeffs_exact(r, J)
    # t^(r/2 - 1/2 + 2j) exp(zeta(2)/(4t))  ->  (zeta(2)/(4 xi))^(r/4 + 1/4 + j) I_{-(r/2 + 1/2 + 2j)}(sqrt(zeta(2) xi))
    acc = ctx.fsum(mpf_in(ctx, coeffs[2 * j]) * transfer_single_raw(ctx, Fraction(r - 1, 2) + 2 * j, c4, xi)
                   for j in range(J + 1))
    sign = -1 if n % 2 else 1
    return sign * 2 ** (r - 1) * math.factorial(r // 2 - 1) / ctx.sqrt(ctx.pi) * acc


def nsp_phi2(r: int, n: int, J: int = DEFAULT_J, precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """Contribution of x -> -1 (even r only), with d_0..d_{2J}."""
    _check_r(r)
    if r % 2:
        raise ValueError("the x -> -1 term in closed form is defined for even r")
    work = context(precision + 10)
    return PreciseReal(context(precision).mpf(nsp_phi2_raw(work, r, n, J)), precision)


def _phase(ctx, h: int, k: int, n: int):
    s = dedekind.dedekind_sum(h, k)
    q = (s - Fraction(2 * n * h, k)) % 2
    return ctx.expjpi(ctx.mpf(q.numerator) / q.denominator)


def nsp_phi_k_parts_raw(ctx, r: int, n: int, k: int, J: int) -> list[tuple[int, object]]:
    xi = mpf_in(ctx, _xi(n, HIGHER_SHIFT))
    c = ctx.pi ** 2 / (6 * k * k)
    # the Bessel factors depend on j only: t^(1/2 + j) exp(zeta(2)/(k^2 t))
    bessel = [transfer_single_raw(ctx, Fraction(1, 2) + j, c, xi) for j in range(J + 1)]
    pref = ctx.sqrt(ctx.mpf(k) / (2 * ctx.pi))
    digits = int(ctx.prec / 3.33)
    parts = []
    for h in dedekind.coprime_residues(k):
        if 2 * h > k:
            continue
        series = expand_finite_product(r - 1, h, k, J, digits)
        ph = _phase(ctx, h, k, n)
        mult = 1 if 2 * h == k else 2
        val = mult * pref * ctx.fsum(ctx.re(ctx.mpc(series[j]) * ph) * bessel[j] for j in range(J + 1))
        parts.append((h, val))
    return parts


def nsp_phi_k_parts(r: int, n: int, k: int, J: int = DEFAULT_J,
                    precision: int = DEFAULT_PRECISION) -> list[tuple[int, PreciseReal]]:
    """Per-h contributions (h < k/2 counted with its conjugate k-h; h = k/2 once)."""
    _check_r(r)
    if k < 2:
        raise ValueError("k must be >= 2")
    work = context(precision + 10)
    out = context(precision)
    return [(h, PreciseReal(out.mpf(v), precision)) for h, v in nsp_phi_k_parts_raw(work, r, n, k, J)]


def nsp_phi_k(r: int, n: int, k: int, J: int = DEFAULT_J, precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """Contribution of all singular points e^{2 pi i h/k}, gcd(h,k) = 1, k >= 2."""
    parts = nsp_phi_k_parts(r, n, k, J, precision)
    ctx = context(precision)
    return PreciseReal(ctx.fsum(v.value for _, v in parts), precision)

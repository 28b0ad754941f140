"""Dedekind sums and the root-of-unity phase sums built from them.

All sums are exact rationals; only the final phase exponential in
:func:`a_tilde` is evaluated in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .hp_core import DEFAULT_PRECISION, PreciseReal, context


@dataclass(frozen=True)
class SingularPoint:
    h: int
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.k == 1:
            if self.h != 0:
                raise ValueError("the principal point is (0, 1)")
        elif not (0 < self.h < self.k and math.gcd(self.h, self.k) == 1):
            raise ValueError(f"({self.h}, {self.k}) is not a reduced fraction in (0, 1)")


def sawtooth(x) -> Fraction:
    """((x)) = x - floor(x) - 1/2 off the integers, 0 on them."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def dedekind_sum_direct(h: int, k: int) -> Fraction:
    if k < 1:
        raise ValueError("k must be positive")
    h %= k
    return sum((sawtooth(Fraction(j * h, k)) * sawtooth(Fraction(j, k)) for j in range(1, k)), Fraction(0))


def dedekind_sum_reciprocity(h: int, k: int) -> Fraction:
    """s(h,k) by the Euclidean algorithm on the reciprocity law (needs gcd(h,k)=1)."""
    if k < 1:
        raise ValueError("k must be positive")
    if math.gcd(h, k) != 1:
        raise ValueError("reciprocity path requires gcd(h, k) = 1")
    total = Fraction(0)
    sign = 1
    h %= k
    while k > 1 and h:
        # s(h,k) = -s(k,h) - 1/4 + (h/k + k/h + 1/(hk))/12
        total += sign * (Fraction(-1, 4) + (Fraction(h, k) + Fraction(k, h) + Fraction(1, h * k)) / 12)
        sign = -sign
        h, k = k % h, h
    return total


def dedekind_sum(h: int, k: int) -> Fraction:
    """s(h,k) = sum_{j=1}^{k-1} ((jh/k)) ((j/k)), exactly."""
    return dedekind_sum_direct(h, k)


def t_sum(h: int, k: int) -> Fraction:
    """T(h,k) = 2 s(h,k) - s(2h,k); only odd k are singular for basic partitions."""
    if k % 2 == 0:
        raise ValueError("T(h,k) is defined for odd k only")
    if math.gcd(h, k) != 1:
        raise ValueError("gcd(h, k) must be 1")
    return 2 * dedekind_sum(h, k) - dedekind_sum(2 * h, k)


def coprime_residues(k: int) -> list[int]:
    """h in [1, k) with gcd(h, k) = 1 (empty for k = 1; the principal point is h = 0)."""
    if k < 1:
        raise ValueError("k must be positive")
    return [h for h in range(1, k) if math.gcd(h, k) == 1]


def inverse_mod(h: int, k: int) -> int:
    """h' in [0, k) with h h' = -1 (mod k)."""
    if math.gcd(h, k) != 1:
        raise ValueError(f"{h} is not invertible mod {k}")
    if k == 1:
        return 0
    return (-pow(h, -1, k)) % k


def _phase(ctx, q: Fraction):
    # exp(pi i q) with q reduced mod 2 first
    q = q % 2
    return ctx.expjpi(ctx.mpf(q.numerator) / q.denominator)


def a_tilde(k: int, n: int, precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """sum_{(h,k)=1} exp(pi i T(h,k) - 2 pi i n h / k) for odd k; the sum is real."""
    if k % 2 == 0:
        raise ValueError("a_tilde is defined for odd k only")
    ctx = context(precision + 10)
    hs = [0] if k == 1 else coprime_residues(k)
    total = ctx.mpc(0)
    for h in hs:
        t = Fraction(0) if k == 1 else t_sum(h, k)
        total += _phase(ctx, t - Fraction(2 * n * h, k))
    tol = ctx.mpf(10) ** (-(precision + 5))
    if abs(total.imag) > tol * max(1, abs(total.real)) * k:
        raise ArithmeticError(f"a_tilde({k}, {n}) has imaginary part {total.imag}")
    return PreciseReal(context(precision).mpf(total.real), precision)

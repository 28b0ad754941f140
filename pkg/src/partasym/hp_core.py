"""Arbitrary-precision numeric kernel.

Values are mpmath numbers bound to a private fixed-precision context, one
context per decimal precision.  Contexts are created on demand, cached, and
never mutated afterwards, so the module holds no shared mutable state that a
concurrent caller could observe.

Special functions (Gamma, modified Bessel I, Riemann zeta, Bernoulli data,
the Glaisher-Kinkelin constant) are implemented here directly; mpmath only
supplies the floating-point arithmetic and the elementary functions.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

import mpmath
from mpmath import libmp

DEFAULT_PRECISION = 30
GUARD_BITS = 32

__all__ = [
    "DEFAULT_PRECISION",
    "PoleError",
    "PreciseReal",
    "PreciseComplex",
    "context",
    "to_real",
    "gamma_real",
    "reciprocal_gamma",
    "bessel_i",
    "bessel_i_asymptotic",
    "zeta",
    "zeta_exact",
    "zeta_prime_minus1",
    "log_glaisher",
    "bernoulli_number",
    "bernoulli_poly",
    "pi",
    "euler_gamma",
]


class PoleError(ValueError):
    """Raised when a function is evaluated at one of its poles."""


def bits_for_digits(digits: int) -> int:
    return math.ceil(3.33 * digits) + GUARD_BITS


_contexts: dict[int, mpmath.ctx_mp.MPContext] = {}
_contexts_lock = threading.Lock()


def context(digits: int) -> mpmath.ctx_mp.MPContext:
    """Return the shared, read-only mpmath context for ``digits`` decimal digits."""
    if digits < 1:
        raise ValueError(f"precision must be positive, got {digits}")
    ctx = _contexts.get(digits)
    if ctx is None:
        with _contexts_lock:
            ctx = _contexts.get(digits)
            if ctx is None:
                ctx = mpmath.MPContext()
                ctx.prec = bits_for_digits(digits)
                _contexts[digits] = ctx
    return ctx


def digits_of(ctx) -> int:
    # inverse of bits_for_digits, as used to recover a context's nominal precision
    return int((ctx.prec - GUARD_BITS) / 3.33)


Number = Union[int, float, Fraction, str, "PreciseReal", mpmath.mpf]


def mpf_in(ctx, x):
    """Convert ``x`` to an mpf of ``ctx`` (exact for ints and rationals)."""
    if isinstance(x, PreciseReal):
        return ctx.mpf(x.value)
    if isinstance(x, bool):
        return ctx.mpf(int(x))
    if isinstance(x, int):
        return ctx.mpf(x)
    if isinstance(x, Rational):
        return ctx.mpf(x.numerator) / x.denominator
    return ctx.mpf(x)


def exact_rational(x) -> Fraction | None:
    """``x`` as a Fraction when it is exactly rational in the input, else None."""
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    return None


@dataclass(frozen=True)
class PreciseReal:
    """Real number with an explicit working precision in decimal digits."""

    value: mpmath.mpf
    precision: int

    @classmethod
    def of(cls, x: Number, precision: int = DEFAULT_PRECISION) -> "PreciseReal":
        ctx = context(precision)
        return cls(mpf_in(ctx, x), precision)

    @classmethod
    def from_string(cls, s: str, precision: int) -> "PreciseReal":
        return cls(context(precision).mpf(s), precision)

    def _coerce(self, other):
        if isinstance(other, PreciseReal):
            p = max(self.precision, other.precision)
        elif isinstance(other, (int, Rational, float, str, mpmath.mpf)):
            p = self.precision
        else:
            return None, None, None
        ctx = context(p)
        return ctx, mpf_in(ctx, self), mpf_in(ctx, other),

    def _binop(self, other, fn):
        coerced = self._coerce(other)
        if coerced[0] is None:
            return NotImplemented
        ctx, a, b = coerced
        return PreciseReal(fn(a, b), digits_of(ctx))

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._binop(other, lambda a, b: b + a)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._binop(other, lambda a, b: b * a)

    def __truediv__(self, other):
        return self._binop(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binop(other, lambda a, b: b / a)

    def __neg__(self):
        return PreciseReal(-self.value, self.precision)

    def __abs__(self):
        return PreciseReal(abs(self.value), self.precision)

    def _cmp(self, other):
        coerced = self._coerce(other)
        if coerced[0] is None:
            return None
        _, a, b = coerced
        return (a > b) - (a < b)

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __hash__(self):
        return hash((self.value, self.precision))

    def __float__(self):
        return float(self.value)

    def round(self) -> int:
        """Nearest integer (ties away from zero)."""
        v = self.value
        ctx = context(self.precision)
        return int(ctx.sign(v) * ctx.floor(abs(v) + ctx.mpf(0.5)))

    def to_string(self) -> str:
        """Scientific notation carrying enough digits to round-trip exactly."""
        dps = libmp.repr_dps(bits_for_digits(self.precision))
        return libmp.to_str(self.value._mpf_, dps, min_fixed=1, max_fixed=0)

    def to_decimal(self, digits: int | None = None) -> str:
        """Fixed-point rendering with ``digits`` significant digits."""
        digits = digits or self.precision
        return libmp.to_str(self.value._mpf_, digits, min_fixed=-math.inf, max_fixed=math.inf)

    def to_fixed(self, decimals: int) -> str:
        """Rounded to ``decimals`` places after the point, e.g. ``-8.29306``."""
        ctx = context(self.precision)
        scaled = ctx.floor(abs(self.value) * ctx.mpf(10) ** decimals + ctx.mpf(0.5))
        digits = str(int(scaled)).rjust(decimals + 1, "0")
        sign = "-" if self.value < 0 and int(scaled) else ""
        if decimals == 0:
            return sign + digits
        return f"{sign}{digits[:-decimals]}.{digits[-decimals:]}"

    def __repr__(self):
        return f"PreciseReal({self.to_decimal(min(self.precision, 25))}, precision={self.precision})"


@dataclass(frozen=True)
class PreciseComplex:
    re: PreciseReal
    im: PreciseReal

    def __post_init__(self):
        if self.re.precision != self.im.precision:
            raise ValueError("component precisions differ")

    @classmethod
    def of(cls, z, precision: int = DEFAULT_PRECISION) -> "PreciseComplex":
        ctx = context(precision)
        z = ctx.mpc(z)
        return cls(PreciseReal(z.real, precision), PreciseReal(z.imag, precision))

    @property
    def precision(self) -> int:
        return self.re.precision

    @property
    def value(self):
        return context(self.precision).mpc(self.re.value, self.im.value)

    def __abs__(self):
        return PreciseReal(abs(self.value), self.precision)


def to_real(x: Number, precision: int = DEFAULT_PRECISION) -> PreciseReal:
    return PreciseReal.of(x, precision)


# --------------------------------------------------------------------------
# Bernoulli numbers and polynomials (exact)

_bernoulli_table: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def _bernoulli_upto(m: int) -> list[Fraction]:
    if len(_bernoulli_table) <= m:
        with _bernoulli_lock:
            table = list(_bernoulli_table)
            for n in range(len(table), m + 1):
                # sum_{k=0}^{n} C(n+1, k) B_k = 0
                acc = Fraction(0)
                for k in range(n):
                    acc += math.comb(n + 1, k) * table[k]
                table.append(-acc / (n + 1))
            _bernoulli_table[len(_bernoulli_table):] = table[len(_bernoulli_table):]
    return _bernoulli_table


def bernoulli_number(m: int) -> Fraction:
    """Exact B_m with the convention B_1 = -1/2."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m > 1 and m % 2:
        return Fraction(0)
    return _bernoulli_upto(m)[m]


def bernoulli_poly(m: int, x) -> Fraction:
    """Exact B_m(x) = sum_k C(m,k) B_k x^(m-k) for rational x."""
    if m < 0:
        raise ValueError("m must be non-negative")
    x = Fraction(x)
    return sum((math.comb(m, k) * bernoulli_number(k) * x ** (m - k) for k in range(m + 1)), Fraction(0))


# --------------------------------------------------------------------------
# Gamma

def _is_nonpositive_integer(x) -> bool:
    q = exact_rational(x)
    if q is not None:
        return q.denominator == 1 and q <= 0
    return bool(x <= 0 and x == int(x))


def _stirling_log_gamma(ctx, x):
    """log Gamma(x) for large positive x via the Stirling series."""
    eps = ctx.ldexp(1, -ctx.prec)
    acc = (x - 0.5) * ctx.log(x) - x + ctx.log(2 * ctx.pi) / 2
    x2 = x * x
    xp = x
    last = None
    k = 1
    while True:
        b = bernoulli_number(2 * k)
        term = ctx.mpf(b.numerator) / (b.denominator * (2 * k) * (2 * k - 1)) / xp
        if abs(term) < eps * abs(acc):
            break
        if last is not None and abs(term) > abs(last):
            break
        acc += term
        last = term
        xp *= x2
        k += 1
    return acc


def _gamma(ctx, x):
    """Gamma(x) in ``ctx``; ``x`` may be int, Fraction or mpf."""
    if _is_nonpositive_integer(x):
        raise PoleError(f"Gamma has a pole at {x}")
    q = exact_rational(x)
    if q is not None and q.denominator == 1:
        return ctx.mpf(math.factorial(int(q) - 1))
    xv = mpf_in(ctx, x)
    if xv < 0.5:
        # reflection
        return ctx.pi / (ctx.sinpi(xv) * _gamma(ctx, 1 - xv))
    digits = digits_of(ctx)
    threshold = max(12, int(0.45 * (digits + 10)) + 1)
    shift = 0
    y = xv
    prod = ctx.mpf(1)
    while y < threshold:
        prod *= y
        y += 1
        shift += 1
    return ctx.exp(_stirling_log_gamma(ctx, y)) / prod


def _rgamma(ctx, x):
    """1/Gamma(x), exactly zero at the poles."""
    if _is_nonpositive_integer(x):
        return ctx.zero
    return 1 / _gamma(ctx, x)


def _rgamma_ladder(ctx, x0, count: int):
    """[1/Gamma(x0 + i) for i in range(count)] via the unit-step recurrence."""
    out = []
    q0 = exact_rational(x0)
    cur = None
    for i in range(count):
        x = (q0 + i) if q0 is not None else mpf_in(ctx, x0) + i
        if cur is None or _is_nonpositive_integer(x - 1) or _is_nonpositive_integer(x):
            cur = _rgamma(ctx, x)
        else:
            cur = cur / mpf_in(ctx, x - 1)
        out.append(cur)
    return out


def gamma_real(x: Number, precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """Gamma(x) for real x; raises PoleError at non-positive integers."""
    ctx = context(precision + 10)
    out = context(precision)
    return PreciseReal(out.mpf(_gamma(ctx, x if not isinstance(x, PreciseReal) else x.value)), precision)


def reciprocal_gamma(x: Number, precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """1/Gamma(x), returning exactly zero at the poles of Gamma."""
    ctx = context(precision + 10)
    out = context(precision)
    return PreciseReal(out.mpf(_rgamma(ctx, x if not isinstance(x, PreciseReal) else x.value)), precision)


# --------------------------------------------------------------------------
# Modified Bessel I

def _bessel_i_series(ctx, nu, z):
    """Ascending series in ``ctx``.  Returns (sum, largest |term|)."""
    q = exact_rational(nu)
    if q is None and nu == int(nu):
        q = Fraction(int(nu))
        nu = q
    if q is not None and q.denominator == 1 and q < 0:
        nu = -q  # I_{-n} = I_n
        q = -q
    nuv = mpf_in(ctx, nu)
    h = z / 2
    h2 = h * h
    eps = ctx.ldexp(1, -ctx.prec)
    term = ctx.power(h, nuv) * _rgamma(ctx, nu + 1)
    total = term
    biggest = abs(term)
    m = 0
    while True:
        denom = (m + 1) * (nuv + m + 1)
        term = term * h2 / denom
        m += 1
        total += term
        a = abs(term)
        if a > biggest:
            biggest = a
        # past the peak, terms shrink monotonically
        if nuv + m + 1 > 0 and h2 < (m + 1) * (nuv + m + 1) / 2 and a <= eps * biggest:
            break
    return total, biggest


def _bessel_i(ctx, nu, z):
    """I_nu(z) for z >= 0 in ``ctx`` with an adaptive guard against cancellation."""
    if z < 0:
        raise ValueError("bessel_i requires z >= 0")
    q = exact_rational(nu)
    if z == 0:
        nuv = q if q is not None else nu
        if nuv == 0:
            return ctx.one
        if nuv > 0 or _is_nonpositive_integer(nuv):
            return ctx.zero
        raise PoleError(f"I_{nu}(0) is infinite")
    digits = digits_of(ctx)
    guard = 15
    while True:
        work = context(digits + guard)
        total, biggest = _bessel_i_series(work, nu, work.mpf(z))
        if total == 0:
            lost = guard
        else:
            lost = max(0.0, float(work.log10(biggest / abs(total))))
        if lost + 5 < guard:
            return ctx.mpf(total)
        guard = int(lost) + 20


def bessel_i(order: Number, z: Number, precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """Modified Bessel function of the first kind, any real order, z >= 0."""
    ctx = context(precision)
    order_in = order.value if isinstance(order, PreciseReal) else order
    zv = mpf_in(context(precision + 10), z)
    return PreciseReal(_bessel_i(ctx, order_in, zv), precision)


def _bessel_i_asymptotic(ctx, nu, z, terms: int):
    mu = 4 * mpf_in(ctx, nu) ** 2
    acc = ctx.zero
    term = ctx.one
    for m in range(terms):
        if m:
            term = -term * (mu - (2 * m - 1) ** 2) / (m * 8 * z)
        acc += term
    return ctx.exp(z) / ctx.sqrt(2 * ctx.pi * z) * acc


def bessel_i_asymptotic(order: Number, z: Number, terms: int, precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """Large-z expansion e^z/sqrt(2 pi z) * (1 - (4v^2-1)/(8z) + ...), ``terms`` terms."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    ctx = context(precision)
    order_in = order.value if isinstance(order, PreciseReal) else order
    return PreciseReal(_bessel_i_asymptotic(ctx, order_in, mpf_in(ctx, z), terms), precision)


# --------------------------------------------------------------------------
# Riemann zeta

@lru_cache(maxsize=64)
def _borwein_weights(n: int) -> tuple[Fraction, ...]:
    # d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    out = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += Fraction(math.factorial(n + i - 1) * 4 ** i, math.factorial(n - i) * math.factorial(2 * i))
        out.append(n * acc)
    return tuple(out)


def _eta(ctx, s):
    """Dirichlet eta(s) for real s > 0 by Borwein's alternating-series acceleration."""
    digits = digits_of(ctx)
    n = int(1.31 * (digits + 10)) + 5
    d = _borwein_weights(n)
    dn = d[n]
    sv = mpf_in(ctx, s)
    q = exact_rational(s)
    integer_s = q is not None and q.denominator == 1
    acc = ctx.zero
    for k in range(n):
        if integer_s:
            p = ctx.mpf(k + 1) ** int(q)
        else:
            p = ctx.power(k + 1, sv)
        diff = d[k] - dn
        w = ctx.mpf(diff.numerator) / diff.denominator / p
        acc += w if k % 2 == 0 else -w
    return -acc / (ctx.mpf(dn.numerator) / dn.denominator)


def zeta_exact(s: int) -> Fraction:
    """zeta(s) as an exact rational for integers s <= 0."""
    if s > 0:
        raise ValueError("exact values only for s <= 0")
    if s == 0:
        return Fraction(-1, 2)
    m = -s
    if m % 2 == 0:
        return Fraction(0)
    return -bernoulli_number(m + 1) / (m + 1)


def _zeta(ctx, s):
    q = exact_rational(s)
    if q is not None and q == 1:
        raise PoleError("zeta has a pole at s=1")
    if q is not None and q.denominator == 1 and q <= 0:
        z = zeta_exact(int(q))
        return ctx.mpf(z.numerator) / z.denominator
    sv = mpf_in(ctx, s)
    if sv == 1:
        raise PoleError("zeta has a pole at s=1")
    if sv >= 0.5:
        work = context(digits_of(ctx) + 10)
        sw = s if q is not None else work.mpf(sv)
        eta = _eta(work, sw)
        if q is not None:
            factor = 1 - work.power(2, mpf_in(work, 1 - q))
        else:
            factor = 1 - work.power(2, 1 - sw)
        return ctx.mpf(eta / factor)
    # functional equation: zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)
    work = context(digits_of(ctx) + 10)
    one_minus = (1 - q) if q is not None else 1 - work.mpf(sv)
    sw = mpf_in(work, s)
    val = (work.power(2, sw) * work.power(work.pi, sw - 1) * work.sinpi(sw / 2)
           * _gamma(work, one_minus) * _zeta(work, one_minus))
    return ctx.mpf(val)


def zeta(s: Number, precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """Riemann zeta at real s != 1."""
    ctx = context(precision)
    s_in = s.value if isinstance(s, PreciseReal) else s
    return PreciseReal(_zeta(ctx, s_in), precision)


def _log_glaisher_em(ctx):
    """log A by Euler-Maclaurin on sum_{k<=N} k log k."""
    digits = digits_of(ctx)
    work = context(digits + 10)
    n = max(20, int(0.4 * (digits + 20)) + 1)
    nn = work.mpf(n)
    acc = work.zero
    for k in range(2, n + 1):
        acc += k * work.log(k)
    acc -= (nn * nn / 2 + nn / 2 + work.mpf(1) / 12) * work.log(nn) - nn * nn / 4
    eps = work.ldexp(1, -work.prec)
    j = 2
    while True:
        b = bernoulli_number(2 * j)
        term = work.mpf(b.numerator) / (b.denominator * (2 * j) * (2 * j - 1) * (2 * j - 2)) / nn ** (2 * j - 2)
        acc += term
        if abs(term) < eps:
            break
        j += 1
    return ctx.mpf(acc)


def _log_glaisher_zeta2(ctx):
    """log A = (gamma + log 2pi)/12 - zeta'(2)/(2 pi^2), zeta'(2) from an accelerated eta'(2)."""
    digits = digits_of(ctx)
    work = context(digits + 10)
    n = int(1.31 * (digits + 10)) + 5
    # Cohen-Villegas-Zagier acceleration of sum (-1)^k a_k, a_k = log(k+1)/(k+1)^2
    d = (3 + work.sqrt(8)) ** n
    d = (d + 1 / d) / 2
    b = work.mpf(-1)
    c = -d
    s = work.zero
    for k in range(n):
        c = b - c
        s += c * work.log(k + 1) / (k + 1) ** 2
        b = (k + n) * (k - n) * b / ((k + work.mpf(0.5)) * (k + 1))
    eta_prime = -s / d
    eta2 = work.pi ** 2 / 12
    zeta_prime2 = 2 * eta_prime - 2 * eta2 * work.ln2
    return ctx.mpf((work.euler + work.log(2 * work.pi)) / 12 - zeta_prime2 / (2 * work.pi ** 2))


def log_glaisher(precision: int = DEFAULT_PRECISION, method: str = "euler-maclaurin") -> PreciseReal:
    """log of the Glaisher-Kinkelin constant A."""
    ctx = context(precision)
    if method == "euler-maclaurin":
        return PreciseReal(_log_glaisher_em(ctx), precision)
    if method == "zeta2":
        return PreciseReal(_log_glaisher_zeta2(ctx), precision)
    raise ValueError(f"unknown method {method!r}")


def _zeta_prime_minus1(ctx):
    return ctx.mpf(1) / 12 - _log_glaisher_em(ctx)


def zeta_prime_minus1(precision: int = DEFAULT_PRECISION) -> PreciseReal:
    """zeta'(-1) = 1/12 - log A."""
    ctx = context(precision)
    return PreciseReal(_zeta_prime_minus1(ctx), precision)


# --------------------------------------------------------------------------
# constants

def pi(precision: int = DEFAULT_PRECISION) -> PreciseReal:
    ctx = context(precision)
    return PreciseReal(+ctx.pi, precision)


def euler_gamma(precision: int = DEFAULT_PRECISION) -> PreciseReal:
    ctx = context(precision)
    return PreciseReal(+ctx.euler, precision)

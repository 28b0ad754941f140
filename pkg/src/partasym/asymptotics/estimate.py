"""Assemble the per-singularity terms of one family into an estimate of a_n."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from ..exact_oracle import FamilySpec, count
from ..hp_core import PreciseReal, context, mpf_in
from . import families, nsp

# exact oracle values are attached automatically up to this n
ORACLE_LIMIT = 5000


@dataclass(frozen=True)
class EstimateConfig:
    kmax: int
    J: int
    precision: int | None = None  # None: 30 + estimated digits of the answer
    double_run: bool = False

    def __post_init__(self):
        if self.kmax < 1:
            raise ValueError("kmax must be >= 1")
        if self.J < 1:
            raise ValueError("J must be >= 1")
        if self.precision is not None and self.precision < 10:
            raise ValueError("precision must be >= 10")


# kmax: number of singular-point classes (concave: number of q_k terms);
# J: Bessel-sum length for nsp, correction terms for planestrict
DEFAULTS = {
    "nsp": (16, 16),
    "basic": (13, 1),
    "colored3": (7, 1),
    "planestrict": (2, families.PLANE_M_TERMS),
    "prings": (2, 1),
    "concave": (families.CONCAVE_CORRECTIONS + 1, 1),
}


def default_config(spec: FamilySpec, **overrides) -> EstimateConfig:
    kmax, J = DEFAULTS[spec.family]
    base = EstimateConfig(kmax=kmax, J=J)
    return replace(base, **{k: v for k, v in overrides.items() if v is not None})


@dataclass(frozen=True)
class PhiBreakdown:
    family: FamilySpec
    n: int
    xi: PreciseReal
    terms: tuple[tuple[int, PreciseReal], ...]
    total: PreciseReal
    rounded: int
    exact: int | None = None
    error: PreciseReal | None = None
    precision: int = 0
    agreement_digits: int | None = None
    notes: tuple[str, ...] = field(default=())


def xi_shift(spec: FamilySpec) -> Fraction:
    """xi - n recorded for the family (nsp: the x -> +-1 shift)."""
    fam = spec.family
    if fam == "nsp":
        return nsp.principal_shift(spec.r)
    return {
        "basic": Fraction(0),
        "colored3": families.COLORED3_SHIFT,
        "planestrict": families.PLANE_SHIFT,
        "prings": Fraction(0),
        "concave": Fraction(0),
    }[fam]


def estimated_digits(spec: FamilySpec, n: int) -> int:
    """Decimal digits of a_n from the leading exponential growth."""
    x = max(float(n + xi_shift(spec)), 1.0)
    fam = spec.family
    z2 = math.pi ** 2 / 6
    if fam == "nsp":
        e = 2 * math.sqrt(z2 * x)
    elif fam == "basic":
        e = 2 * math.sqrt(math.pi ** 2 / 4 * x)
    elif fam == "colored3":
        e = 2 * math.sqrt(math.pi ** 2 / 2 * x)
    elif fam == "prings":
        e = 2 * math.sqrt(z2 ** 2 * x)
    elif fam == "planestrict":
        a = 1.2020569031595942 / 2
        e = 3 * (a * x * x / 4) ** (1 / 3)
    else:
        a = math.sqrt(2 * math.pi) / 2 * 2.612375348685488
        e = 3 * (a / 2) ** (2 / 3) * x ** (1 / 3)
    return int(e / math.log(10)) + 1


def default_precision(spec: FamilySpec, n: int) -> int:
    return 30 + estimated_digits(spec, n)


def _family_terms(spec: FamilySpec, n: int, cfg: EstimateConfig, precision: int):
    fam = spec.family
    notes: list[str] = []
    terms: list[tuple[int, PreciseReal]] = []
    if fam == "nsp":
        r = spec.r
        for k in range(1, cfg.kmax + 1):
            if k == 1:
                v = nsp.nsp_phi1(r, n, cfg.J, precision)
            elif k == 2 and r % 2 == 0:
                v = nsp.nsp_phi2(r, n, cfg.J, precision)
            else:
                v = nsp.nsp_phi_k(r, n, k, cfg.J, precision)
            terms.append((k, v))
        if r % 2:
            notes.append("odd r: the k = 2 term uses the numerical root-of-unity expansion")
    elif fam == "basic":
        for k in range(1, cfg.kmax + 1, 2):
            terms.append((k, families.basic_phi(n, k, precision)))
    elif fam == "colored3":
        if cfg.kmax > families.COLORED3_KMAX:
            raise ValueError(f"3-colored estimates support kmax <= {families.COLORED3_KMAX}")
        for k in range(1, cfg.kmax + 1):
            terms.append((k, families.colored3_phi(n, k, precision)))
    elif fam == "planestrict":
        if cfg.kmax > 2:
            raise ValueError("strict plane partitions support kmax <= 2")
        for k in range(1, cfg.kmax + 1):
            terms.append((k, families.plane_phi(n, k, cfg.J, None, precision)))
        notes.append("x -> -1 residues recomputed from the Mellin transform: "
                     "t^2 coefficient +13/5760, t^6 coefficient 7873/87091200")
    elif fam == "prings":
        if cfg.kmax > 2:
            raise ValueError("semisimple p-rings support kmax <= 2")
        for k in range(1, cfg.kmax + 1):
            terms.append((k, families.prings_phi(n, k, None, precision)))
        notes.append("x -> -1 term uses b2 = b (3 sqrt 2 - 1)/4")
    elif fam == "concave":
        for k in range(cfg.kmax):
            terms.append((k, families.concave_q(n, k, None, precision)))
        notes.append("terms are the corrections q_0..q_{kmax-1} of the single x -> 1 singularity")
    else:
        raise AssertionError(fam)
    return terms, notes


def _agreement(a: PreciseReal, b: PreciseReal, scale) -> int:
    """Digits to which a and b agree, measured against ``scale`` (the size of the total)."""
    ctx = context(max(a.precision, b.precision))
    diff = abs(a.value - b.value)
    if diff == 0:
        return min(a.precision, b.precision)
    if scale == 0:
        return 0
    return max(0, int(-ctx.log10(diff / scale)))


def estimate(spec: FamilySpec, n: int, config: EstimateConfig | None = None,
             with_exact: bool | None = None, cache_dir=None) -> PhiBreakdown:
    """All terms up to config.kmax, their ascending-k sum, and the oracle comparison."""
    if n < 0:
        raise ValueError("n must be non-negative")
    cfg = config or default_config(spec)
    precision = cfg.precision or default_precision(spec, n)
    terms, notes = _family_terms(spec, n, cfg, precision)
    ctx = context(precision)
    total = PreciseReal(ctx.fsum(v.value for _, v in terms), precision)
    xi = PreciseReal(mpf_in(ctx, n + xi_shift(spec)), precision)
    exact = None
    error = None
    if with_exact or (with_exact is None and n <= ORACLE_LIMIT):
        exact = count(spec, n, cache_dir)
        error = PreciseReal(total.value - exact, precision)
    agreement = None
    if cfg.double_run:
        terms2, _ = _family_terms(spec, n, cfg, precision + 20)
        total2 = PreciseReal(context(precision + 20).fsum(v.value for _, v in terms2), precision + 20)
        scale = abs(total.value)
        agreement = min([_agreement(total, total2, scale)]
                        + [_agreement(v1, v2, scale) for (_, v1), (_, v2) in zip(terms, terms2)])
    return PhiBreakdown(
        family=spec,
        n=n,
        xi=xi,
        terms=tuple(terms),
        total=total,
        rounded=total.round(),
        exact=exact,
        error=error,
        precision=precision,
        agreement_digits=agreement,
        notes=tuple(notes),
    )


def leading_digit_agreement(value: PreciseReal, exact: int) -> int:
    """Number of leading significant digits of ``value`` (rounded to an integer) that match ``exact``."""
    a = str(abs(value.round()))
    b = str(abs(exact))
    if len(a) != len(b):
        return 0
    count_ = 0
    for x, y in zip(a, b):
        if x != y:
            break
        count_ += 1
    return count_

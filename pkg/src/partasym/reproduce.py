"""Regenerate the stored reference tables and grade each row.

Expected values live in ``data/reference_values.json``; every row names the
computation that regenerates it (``compute``) and how to grade it (``kind``):

    abs       |value - expected| <= tol
    bound     |value| <= tol
    exact     integer equality
    rational  exact rational equality
    min       value (an integer, e.g. matching digits) >= expected
    factor    expected / tol <= value <= expected * tol
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from . import dedekind
from .asymptotics import families, nsp
from .asymptotics.estimate import default_config, default_precision, estimate, leading_digit_agreement
from .exact_oracle import FamilySpec, count
from .hp_core import PreciseReal, context
from .qseries import expand_finite_product, plane_correction_coeffs_exact, plane_exponent

TABLES = ("sec2", "sec3", "sec4", "sec5", "sec6", "sec7", "dedekind", "identities")


def load_fixtures() -> dict:
    with resources.files("partasym").joinpath("data/reference_values.json").open() as fh:
        return json.load(fh)


@dataclass(frozen=True)
class RowResult:
    table: str
    id: str
    kind: str
    value: str
    expected: str
    passed: bool
    source: str
    note: str = ""


def _spec(c: dict) -> FamilySpec:
    return FamilySpec(c["family"], c.get("r"))


@lru_cache(maxsize=None)
def _estimate(spec: FamilySpec, n: int, extra_digits: int, cache_dir):
    cfg = default_config(spec)
    cfg = replace(cfg, precision=default_precision(spec, n) + extra_digits)
    return estimate(spec, n, cfg, with_exact=True, cache_dir=cache_dir)


def _plane_phi2_printed_sign(n: int, precision: int) -> PreciseReal:
    e = plane_exponent(families.PLANE_M_TERMS - 1, "alternating")
    e[2] = -e[2]
    return families.plane_phi(n, 2, precision=precision, exponent=e)


def _phase_sum_residual(c: dict, precision: int) -> PreciseReal:
    """max over n = 0..25 of |closed form - phase sum|."""
    ctx = context(precision)
    k = c["k"]
    worst = ctx.zero
    for n in range(26):
        if "constant" in c:
            closed = ctx.mpf(c["constant"])
        else:
            closed = 2 * ctx.fsum(ctx.cospi((Fraction(2 * j * n, k) - Fraction(off)) % 2)
                                  for j, off in c["cosines"])
        worst = max(worst, abs(closed - dedekind.a_tilde(k, n, precision).value))
    return PreciseReal(worst, precision)


def compute(c: dict, extra_digits: int = 0, cache_dir=None):
    """Value of one row's computation: PreciseReal, int or Fraction."""
    op = c["op"]
    if op in ("term", "total", "rounded", "error", "term_digits", "total_digits"):
        spec = _spec(c)
        b = _estimate(spec, c["n"], extra_digits, cache_dir)
        if op == "term":
            return dict(b.terms)[c["k"]]
        if op == "total":
            return b.total
        if op == "rounded":
            return b.rounded
        if op == "error":
            return b.error
        if op == "term_digits":
            return leading_digit_agreement(dict(b.terms)[c["k"]], b.exact)
        return leading_digit_agreement(b.total, b.exact)
    if op == "exact":
        return count(_spec(c), c["n"], cache_dir)
    if op == "nsp_part":
        spec = FamilySpec("nsp", c["r"])
        precision = default_precision(spec, c["n"]) + extra_digits
        return dict(nsp.nsp_phi_k_parts(c["r"], c["n"], c["k"], nsp.DEFAULT_J, precision))[c["h"]]
    if op == "product_coeff":
        precision = 30 + extra_digits
        z = expand_finite_product(c["rmax"], c["h"], c["k"], c["j"] + 1, precision).coeffs[c["j"]]
        return z.re if c["part"] == "re" else z.im
    if op == "plane_phi2_printed_sign":
        spec = FamilySpec("planestrict")
        return _plane_phi2_printed_sign(c["n"], default_precision(spec, c["n"]) + extra_digits)
    if op == "plane_coeff":
        return plane_correction_coeffs_exact(c["index"] // 2, c["variant"])[c["index"]]
    if op == "plane_exponent":
        return plane_exponent(c["index"] // 2, c["variant"])[c["index"]]
    if op == "prings_closed_form":
        return families.prings_closed_form(c["n"], 30 + extra_digits)
    if op == "concave_growth_constant":
        return families.concave_growth_constant(30 + extra_digits)
    if op == "dedekind_sum":
        return dedekind.dedekind_sum(c["h"], c["k"])
    if op == "phase_sum_closed_form":
        return _phase_sum_residual(c, 50 + extra_digits)
    if op == "petersson":
        return families.petersson_residual(c["k"])
    raise ValueError(f"unknown computation {op!r}")


def grade(row: dict, value) -> tuple[bool, str]:
    kind = row["kind"]
    expected = row["expected"]
    if kind in ("abs", "bound", "factor"):
        precision = value.precision
        ctx = context(precision)
        v = value.value
        exp = ctx.mpf(expected)
        tol = ctx.mpf(row["tol"])
        if kind == "abs":
            ok = abs(v - exp) <= tol
        elif kind == "bound":
            ok = abs(v) <= tol
        else:
            ok = exp / tol <= v <= exp * tol
        decimals = row.get("decimals", 5)
        if kind == "bound" and decimals == 0:
            shown = ctx.nstr(v, 3)
        elif kind == "factor":
            shown = ctx.nstr(v, 6)
        else:
            shown = value.to_fixed(decimals)
        return bool(ok), shown
    if kind == "exact":
        return int(value) == int(expected), str(int(value))
    if kind == "rational":
        return Fraction(value) == Fraction(expected), str(Fraction(value))
    if kind == "min":
        return int(value) >= int(expected), str(int(value))
    raise ValueError(f"unknown row kind {kind!r}")


def run_table(name: str, extra_digits: int = 0, cache_dir=None) -> list[RowResult]:
    fixtures = load_fixtures()["tables"]
    if name not in fixtures:
        raise KeyError(name)
    out = []
    for row in fixtures[name]["rows"]:
        ok, shown = grade(row, compute(row["compute"], extra_digits, cache_dir))
        out.append(RowResult(name, row["id"], row["kind"], shown, row["expected"], ok,
                             row["source"], row.get("note", "")))
    return out

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partasym.exact_oracle import FamilySpec
from partasym.hp_core import bernoulli_number, bernoulli_poly
from partasym.qseries import (
    PowerSeries,
    concave_correction_coeffs,
    concave_exponent,
    direct_log_f,
    exp_rational,
    expand_finite_product,
    expansion_log_f,
    nsp_phi1_coeffs,
    nsp_phi1_coeffs_exact,
    nsp_phi2_coeffs_exact,
    nsp_phi2_exponent,
    plane_correction_coeffs_exact,
    plane_exponent,
    series_arith,
    series_exp,
    series_log,
)


def close(a, b, tol=1e-25):
    return abs(complex(a) - complex(b)) <= tol


def test_series_arith_examples():
    a = PowerSeries.from_values([1, 2, 3], precision=30)
    b = PowerSeries.from_values([0, 1, 1, 5], precision=30)
    assert [complex(v) for v in series_arith("add", a, b).values] == [1, 3, 4]
    assert [complex(v) for v in series_arith("mul", a, b).values] == [0, 1, 3]
    assert [complex(v) for v in series_arith("scale", a, scalar=Fraction(1, 2)).values] == [0.5, 1, 1.5]
    assert series_arith("truncate", b, order=2).order == 2


def test_grading_mismatch_rejected():
    a = PowerSeries.from_values([1, 1])
    b = PowerSeries.from_values([1, 1], grading=Fraction(1, 2))
    with pytest.raises(ValueError, match="grading"):
        series_arith("add", a, b)


def test_index_past_truncation_raises():
    with pytest.raises(IndexError):
        PowerSeries.from_values([1, 2])[2]


def test_exp_of_geometric_log():
    # exp(-log(1 - t)) = 1/(1 - t)
    s = PowerSeries.from_values([0] + [Fraction(1, m) for m in range(1, 12)], precision=40)
    assert all(close(v, 1) for v in series_exp(s).values)


def test_exp_needs_zero_constant():
    with pytest.raises(ValueError):
        series_exp(PowerSeries.from_values([1, 1]))
    with pytest.raises(ValueError):
        series_log(PowerSeries.from_values([2, 1]))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=20), min_size=1, max_size=10))
def test_log_exp_inverse(tail):
    s = PowerSeries.from_values([0] + tail, precision=40)
    back = series_log(series_exp(s))
    assert all(close(x, y, 1e-30) for x, y in zip(back.values, s.values))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=12), min_size=1, max_size=8))
def test_exact_exp_matches_numeric(tail):
    e = [Fraction(0)] + tail
    num = series_exp(PowerSeries.from_values(e, precision=40))
    assert all(close(x, float(y), 1e-12 * (1 + abs(float(y))))
               for x, y in zip(num.values, exp_rational(e)))


def test_nsp_c2_at_r12():
    c = nsp_phi1_coeffs_exact(12, 3)
    assert c[2] == Fraction(1518, 72)
    assert c[1] == c[3] == 0
    assert close(nsp_phi1_coeffs(12, 3, 30)[2], 21.083333333333333333333333333333, 1e-25)


def test_nsp_c4_from_two_exponent_terms():
    r = 7
    e2 = bernoulli_number(2) * bernoulli_poly(3, r) / (2 * math.factorial(3))
    e4 = bernoulli_number(4) * bernoulli_poly(5, r) / (4 * math.factorial(5))
    assert nsp_phi1_coeffs_exact(r, 2)[4] == e2 ** 2 / 2 + e4


def test_nsp_d2_at_r2():
    # 4 B_2 / 12 * (B_3(1) + 3 B_3(3/2)); B_3(1) = 0, B_3(3/2) = 3/4
    assert nsp_phi2_coeffs_exact(2, 1)[2] == Fraction(4, 6 * 12) * 3 * Fraction(3, 4)
    with pytest.raises(ValueError):
        nsp_phi2_exponent(3, 2)


def test_plane_coefficients():
    c = plane_correction_coeffs_exact(3, "principal")
    assert c[2] == Fraction(-1, 5760)
    assert plane_exponent(2, "principal")[4] == Fraction(-313, 464486400) - c[2] ** 2 / 2
    e = plane_exponent(3, "principal")
    assert e[2] == Fraction(-1, 5760)
    assert e[4] == Fraction(-313, 464486400) - Fraction(1, 2 * 5760 ** 2)
    assert c[4] == Fraction(-313, 464486400)
    assert c[6] == Fraction(-91207, 8026324992000)


def test_plane_alternating_exponent():
    e = plane_exponent(3, "alternating")
    assert e[2] == Fraction(13, 5760)
    assert e[4] == Fraction(433, 1451520)
    assert e[6] == Fraction(7873, 87091200)
    with pytest.raises(ValueError):
        plane_exponent(2, "other")


def test_concave_coefficients():
    e = concave_exponent(5, 40)
    ref = mpmath.sqrt(2 * mpmath.pi) / 16 * mpmath.zeta(0.5)
    assert abs(e[1] - ref) < mpmath.mpf(10) ** -35
    assert abs(float(e[1]) + 0.2287854) < 1e-7
    assert e[2] == e[4] == 0
    c = concave_correction_coeffs(4, 40)
    assert close(c[1], e[1], 1e-35)
    assert close(c[2], e[1] ** 2 / 2, 1e-35)
    assert c.grading == Fraction(1, 2)


# --------------------------------------------------------------------------
# finite products at roots of unity

def numeric_product(rmax, h, k, t):
    with mpmath.workdps(60):
        x = mpmath.expjpi(mpmath.mpf(2 * h) / k) * mpmath.exp(-t)
        return mpmath.fprod(1 - x ** j for j in range(1, rmax + 1))


@pytest.mark.parametrize("rmax,h,k", [(3, 0, 1), (5, 1, 2), (4, 1, 3), (6, 2, 5), (11, 5, 7)])
def test_finite_product_matches_evaluation(rmax, h, k):
    s = expand_finite_product(rmax, h, k, 40, 60)
    t = mpmath.mpf("0.01")
    assert abs(s.evaluate(t) - numeric_product(rmax, h, k, t)) < mpmath.mpf(10) ** -40


def test_finite_product_leading_terms_at_one():
    s = expand_finite_product(4, 0, 1, 6, 30)
    # prod_{j<=4} j t (1 - j t / 2 + ...) = 24 t^4 (1 - 5 t + ...)
    assert all(close(s[i], 0) for i in range(4))
    assert close(s[4], 24)
    assert close(s[5], -120)


@pytest.mark.parametrize("rmax", [2, 3, 5, 8])
@pytest.mark.parametrize("k", [2, 3, 4, 5, 7, 9])
def test_constant_term_vanishes_iff_k_small(rmax, k):
    s = expand_finite_product(rmax, 1, k, 2, 30)
    assert close(s[0], 0) == (k <= rmax)


@pytest.mark.parametrize("h,k", [(1, 5), (2, 7), (3, 8), (5, 12)])
def test_conjugate_symmetry(h, k):
    a = expand_finite_product(6, h, k, 6, 30)
    b = expand_finite_product(6, k - h, k, 6, 30)
    assert all(close(x, y.conjugate()) for x, y in zip(a.values, b.values))


def test_finite_product_rejects_non_coprime():
    with pytest.raises(ValueError):
        expand_finite_product(4, 2, 4, 3)
    with pytest.raises(ValueError):
        expand_finite_product(4, 1, 3, 0)


# --------------------------------------------------------------------------
# direct log-product vs closed expansions

def test_direct_log_matches_euler_product():
    t = mpmath.mpf("0.3")
    with mpmath.workdps(50):
        ref = -mpmath.log(mpmath.qp(mpmath.exp(-t)))
    got = direct_log_f(FamilySpec("nsp", 2), 0, 1, t, 40).value
    # nsp(2) drops the m = 1 factor
    assert abs(got - (ref + mpmath.log(1 - mpmath.exp(-t)))) < mpmath.mpf(10) ** -35


def test_direct_log_rejects_bad_input():
    with pytest.raises(ValueError):
        direct_log_f(FamilySpec("basic"), 0, 1, 0)
    with pytest.raises(ValueError):
        direct_log_f(FamilySpec("basic"), 2, 4, 0.1)


def test_basic_expansion_is_exact_to_all_orders():
    d = direct_log_f(FamilySpec("basic"), 0, 1, 0.1, 40).value
    e = expansion_log_f(FamilySpec("basic"), 0, 1, 0.1, precision=40).value
    assert abs(d - e) < mpmath.mpf(10) ** -30


def test_alternating_residue_sign(slope):
    """The +13/5760 sign at x -> -1 is the one the direct product supports."""
    spec = FamilySpec("planestrict")
    e2 = float(plane_exponent(1, "alternating")[2])
    ts = [0.05, 0.08, 0.12, 0.2]
    kept, flipped = [], []
    for t in ts:
        d = direct_log_f(spec, 1, 2, t, 40).value.real
        e = expansion_log_f(spec, 1, 2, t, J=1, precision=40).value.real
        kept.append(float(d - e))
        flipped.append(float(d - e) + 2 * e2 * t ** 2)
    assert abs(slope(ts, kept) - 4) < 0.3
    assert abs(slope(ts, flipped) - 2) < 0.3

import cmath
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bpsrh.errors import BranchCut, OutOfRange, PoleAt, PoleAtOne
from bpsrh.special import (
    AsymptoticSeries,
    bernoulli,
    eulerian_row,
    lambda_fn,
    log_barnes_g,
    log_gamma,
    log_lambda,
    log_upsilon,
    polylog_neg,
    stirling_series,
    upsilon_fn,
    upsilon_series,
    zeta_prime_minus_one,
)

mpmath.mp.dps = 30


def _mod_2pi_i(a, b):
    d = complex(a) - complex(b)
    k = round(d.imag / (2 * math.pi))
    return abs(d - 2j * math.pi * k)


# -- gamma and Lambda ---------------------------------------------------------


@pytest.mark.parametrize("w, expected", [(1, 0.0), (0.5, 0.5 * math.log(math.pi)), (4, math.log(6))])
def test_log_gamma_values(w, expected):
    assert abs(log_gamma(w) - expected) < 1e-14


def test_log_gamma_poles():
    for w in (0, -1, -7):
        with pytest.raises(PoleAt):
            log_gamma(w)


@settings(max_examples=100, deadline=None)
@given(st.complex_numbers(max_magnitude=40).filter(lambda w: abs(w.imag) > 1e-3 or w.real > 0.01))
def test_log_gamma_against_mpmath(w):
    ref = complex(mpmath.loggamma(w))
    assert abs(log_gamma(w) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_lambda_values():
    assert abs(lambda_fn(1) - math.e / math.sqrt(2 * math.pi)) < 1e-14
    assert abs(lambda_fn(0.5) - math.exp(0.5) / math.sqrt(2)) < 1e-14
    assert abs(lambda_fn(1j) * lambda_fn(-1j) - 1 / (1 - math.exp(-2 * math.pi))) < 1e-13


def test_lambda_branch_cut():
    for w in (0, -0.5, -3):
        with pytest.raises(BranchCut):
            log_lambda(w)


def test_lambda_tends_to_one():
    for w in (5, 7 + 3j, 1 + 20j, 40 - 40j, 1 - 5j):
        assert abs(lambda_fn(w) - 1) < 2 / (12 * abs(w) - 1)


@settings(max_examples=60, deadline=None)
@given(
    st.floats(0.05, 10),
    st.floats(-10, 10),
)
def test_reflection(im, re):
    w = complex(re, im)
    if abs(w) > 10:
        return
    val = lambda_fn(w) * lambda_fn(-w) * (1 - cmath.exp(2j * math.pi * w))
    assert abs(val - 1) < 1e-10


# -- Bernoulli and Stirling --------------------------------------------------


def test_bernoulli_values():
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)
    with pytest.raises(OutOfRange):
        bernoulli(3)
    with pytest.raises(OutOfRange):
        bernoulli(62)


def test_bernoulli_against_mpmath():
    for k in range(2, 61, 2):
        assert bernoulli(k) == Fraction(mpmath.bernfrac(k)[0], mpmath.bernfrac(k)[1])


def test_stirling_leading_term():
    w = 3.7 - 1.1j
    assert abs(stirling_series(w, 1) - 1 / (12 * w)) < 1e-16


def test_stirling_against_lambda():
    assert abs(stirling_series(10, 5) - log_lambda(10)) < 1e-11
    ref = float(mpmath.loggamma(20) + 20 - mpmath.log(2 * mpmath.pi) / 2 - 19.5 * mpmath.log(20))
    assert abs(stirling_series(20, 5) - ref) < 1e-11


def test_stirling_odd():
    for G in (1, 4, 9):
        assert stirling_series(-2 + 1j, G) == -stirling_series(2 - 1j, G)


def test_stirling_optimal_truncation():
    w = 3.0
    exact = complex(mpmath.loggamma(w)) + w - 0.5 * math.log(2 * math.pi) - (w - 0.5) * math.log(w)
    errs = [abs(stirling_series(w, G) - exact) for G in range(1, 26)]
    k = int(np.argmin(errs))
    assert 0 < k < 24
    assert errs[-1] > errs[k] * 10


def test_series_bounds():
    with pytest.raises(OutOfRange):
        stirling_series(5, 0)
    with pytest.raises(OutOfRange):
        upsilon_series(5, 1)


def test_asymptotic_series_object():
    series = AsymptoticSeries.upsilon(6)
    assert abs(series(20) - upsilon_series(20, 6)) < 1e-15
    assert AsymptoticSeries.stirling(3)(4) == pytest.approx(stirling_series(4, 3))


# -- zeta'(-1) ---------------------------------------------------------------


def test_zeta_prime():
    z = zeta_prime_minus_one()
    assert -0.1655 < z < -0.1654
    assert abs(z - float(mpmath.zeta(-1, derivative=1))) < 1e-13
    assert math.exp(-z) == pytest.approx(1.17989, abs=1e-5)
    glaisher = float(mpmath.glaisher)
    assert abs(glaisher * math.exp(z - 1 / 12) - 1) < 1e-13


# -- Barnes G and Upsilon ----------------------------------------------------


@pytest.mark.parametrize("w", [0, 1, 2])
def test_barnes_trivial_values(w):
    assert abs(log_barnes_g(w)) < 1e-14


def test_barnes_pole():
    with pytest.raises(PoleAt):
        log_barnes_g(-1)


@settings(max_examples=80, deadline=None)
@given(st.complex_numbers(max_magnitude=45).filter(lambda w: abs(w.imag) > 1e-2 or w.real > -0.9))
def test_barnes_against_mpmath(w):
    ref = complex(mpmath.log(mpmath.barnesg(w + 1)))
    assert _mod_2pi_i(log_barnes_g(w), ref) <= 1e-10 * max(1.0, abs(ref))


def test_upsilon_one():
    expected = math.exp(0.75 - zeta_prime_minus_one()) / math.sqrt(2 * math.pi)
    assert abs(upsilon_fn(1) - expected) < 1e-14
    assert upsilon_fn(1).real == pytest.approx(0.996488, abs=1e-6)


def test_upsilon_branch_cut():
    with pytest.raises(BranchCut):
        log_upsilon(-2.5)


def test_upsilon_series_g2_term():
    w = 2.5 + 1j
    diff = upsilon_series(w, 2) + cmath.log(w) / 12
    assert abs(diff - (-1 / 240) / w**2) < 1e-16


def test_upsilon_series_matches():
    assert abs(upsilon_series(20, 5) - log_upsilon(20)) < 1e-10


def test_upsilon_leading_behaviour():
    vals = [abs(upsilon_fn(w) * w ** (1 / 12) - 1) for w in (10, 100, 1000)]
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] < 1e-8


def test_upsilon_continuity_around_origin():
    # continuous across the positive axis and near the cut from above and below
    for r in (0.3, 4, 25, 35):
        for phi in np.linspace(-3.1, 3.1, 41):
            a = log_upsilon(r * cmath.exp(1j * phi))
            b = log_upsilon(r * cmath.exp(1j * (phi + 1e-7)))
            assert abs(a - b) < 1e-4 * max(1, r * r)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.21, 20), st.floats(-20, 20))
def test_upsilon_lambda_derivative_identity(re, im):
    w = complex(re, im)
    if abs(w) > 20:
        return
    h = 1e-5
    du = (log_upsilon(w + h) - log_upsilon(w - h)) / (2 * h)
    dl = (log_lambda(w + h) - log_lambda(w - h)) / (2 * h)
    assert abs(du - w * dl) < 1e-6


def test_upsilon_lambda_identity_at_two():
    h = 1e-5
    du = (log_upsilon(2 + h) - log_upsilon(2 - h)) / (2 * h)
    dl = (log_lambda(2 + h) - log_lambda(2 - h)) / (2 * h)
    assert abs(du - 2 * dl) < 1e-6


def test_nonvanishing():
    rng = np.random.default_rng(5)
    for _ in range(200):
        w = complex(rng.uniform(-30, 30), rng.uniform(-30, 30))
        if abs(w.imag) < 1e-3 and w.real <= 0:
            continue
        assert cmath.isfinite(log_lambda(w))
        assert cmath.isfinite(log_upsilon(w))


# -- polylogarithms ----------------------------------------------------------


def test_polylog_values():
    half = Fraction(1, 2)
    assert polylog_neg(-1, half) == 2
    assert polylog_neg(-3, half) == 26
    x = Fraction(3, 7)
    assert polylog_neg(0, x) + 1 == 1 / (1 - x)


def test_polylog_errors():
    with pytest.raises(PoleAtOne):
        polylog_neg(-2, 1)
    with pytest.raises(OutOfRange):
        polylog_neg(2, 0.5)


def test_eulerian():
    assert eulerian_row(3) == (1, 4, 1)
    assert sum(eulerian_row(6)) == math.factorial(6)


@settings(max_examples=60, deadline=None)
@given(st.integers(-10, 1), st.complex_numbers(max_magnitude=0.95))
def test_polylog_against_mpmath(order, x):
    ref = complex(mpmath.polylog(order, x))
    assert abs(complex(polylog_neg(order, x)) - ref) <= 1e-11 * max(1.0, abs(ref))

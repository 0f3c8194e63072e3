"""Special-function checks against independent references."""

import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscdetect.special import (
    assoc_laguerre,
    bessel_i0,
    bessel_i0_scaled,
    bessel_j0,
    laguerre,
    ln_factorial,
)

mpmath.mp.dps = 30


# ---------------------------------------------------------------------------
# Laguerre
# ---------------------------------------------------------------------------

def test_laguerre_trivial():
    assert laguerre(0, 5.0) == 1.0
    assert laguerre(1, 1.0) == 0.0


def test_laguerre_cubic_hand_expansion():
    # oracle: L3(x) = 1 - 3x + 3x^2/2 - x^3/6 expanded by hand
    x = 2.0
    oracle = 1.0 - 3.0 * x + 1.5 * x * x - x ** 3 / 6.0
    assert oracle == pytest.approx(-1.0 / 3.0, abs=1e-15)
    assert laguerre(3, x) == pytest.approx(oracle, abs=1e-14)


def test_laguerre_at_zero_up_to_500():
    for n in range(501):
        assert laguerre(n, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_assoc_laguerre_trivial():
    assert assoc_laguerre(0, 3, 7.0) == 1.0
    # L_1^{(k)}(x) = k + 1 - x
    assert assoc_laguerre(1, 2, 1.0) == pytest.approx(2.0, abs=1e-15)


def test_assoc_laguerre_at_zero_is_binomial():
    for n in range(0, 40, 3):
        for k in range(0, 12, 2):
            assert assoc_laguerre(n, k, 0.0) == pytest.approx(
                math.comb(n + k, n), rel=1e-12)


def test_assoc_laguerre_matches_plain_at_k0():
    for n in (0, 1, 5, 50, 200):
        for x in (0.0, 0.3, 1.0, 17.5, 50.0):
            ref = laguerre(n, x)
            assert assoc_laguerre(n, 0, x) == pytest.approx(
                ref, rel=1e-12, abs=1e-300)


def test_laguerre_domain_errors():
    with pytest.raises(ValueError):
        laguerre(-1, 1.0)
    with pytest.raises(ValueError):
        laguerre(2, float("nan"))
    with pytest.raises(ValueError):
        assoc_laguerre(2, 1, -0.5)


# ---------------------------------------------------------------------------
# Bessel J0
# ---------------------------------------------------------------------------

def _j0_partial_sums(x: float) -> float:
    # independent oracle: partial sums of sum (-1)^m (x/2)^{2m} / (m!)^2
    total, term, m = 1.0, 1.0, 0
    while abs(term) > 1e-20:
        m += 1
        term *= -(0.25 * x * x) / (m * m)
        total += term
    return total


def test_j0_trivial_and_series_value():
    assert bessel_j0(0.0) == 1.0
    oracle = _j0_partial_sums(1.0)
    assert oracle == pytest.approx(0.7651976866, abs=1e-10)
    assert bessel_j0(1.0) == pytest.approx(oracle, abs=1e-13)


def test_j0_first_zero():
    # oracle: bisection on the power series over [2, 3]
    lo, hi = 2.0, 3.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _j0_partial_sums(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    zero = 0.5 * (lo + hi)
    assert zero == pytest.approx(2.404825557695773, abs=1e-12)
    assert abs(bessel_j0(zero)) < 1e-10


def test_j0_against_mpmath_grid():
    worst = 0.0
    for i in range(401):
        x = 100.0 * i / 400.0
        worst = max(worst, abs(bessel_j0(x) - float(mpmath.besselj(0, x))))
    assert worst <= 1e-12


def test_j0_large_argument():
    for x in (150.0, 1234.5):
        assert bessel_j0(x) == pytest.approx(float(mpmath.besselj(0, x)), abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-100.0, max_value=100.0))
def test_j0_bounded(x):
    assert -1.0 <= bessel_j0(x) <= 1.0


def test_j0_domain_error():
    with pytest.raises(ValueError):
        bessel_j0(float("inf"))


# ---------------------------------------------------------------------------
# Modified Bessel I0
# ---------------------------------------------------------------------------

def _i0_partial_sums(x: float) -> float:
    total, term, m = 1.0, 1.0, 0
    while term > 1e-20 * total:
        m += 1
        term *= (0.25 * x * x) / (m * m)
        total += term
    return total


def test_i0_values():
    assert bessel_i0(0.0) == 1.0
    oracle = _i0_partial_sums(1.0)
    assert oracle == pytest.approx(1.2660658778, abs=1e-10)
    assert bessel_i0(1.0) == pytest.approx(oracle, rel=1e-14)


def test_i0_scaled_consistency_and_asymptote():
    for x in (0.0, 0.5, 3.0, 14.9, 15.1, 40.0):
        assert bessel_i0_scaled(x) * math.exp(x) == pytest.approx(
            bessel_i0(x), rel=1e-12)
    # I0(x) ~ e^x / sqrt(2 pi x): scaled value within 1% of the leading term
    lead = 1.0 / math.sqrt(2.0 * math.pi * 700.0)
    assert bessel_i0_scaled(700.0) == pytest.approx(lead, rel=0.01)


def test_i0_against_mpmath():
    for x in (0.1, 1.0, 7.7, 15.0, 16.0, 123.0, 5000.0):
        ref = float(mpmath.besseli(0, x) * mpmath.exp(-x))
        assert bessel_i0_scaled(x) == pytest.approx(ref, rel=1e-13)


def test_i0_monotone_and_bounds():
    prev = 1.0
    for i in range(1, 200):
        x = 0.5 * i
        cur = bessel_i0(x) if x <= 700 else float("inf")
        assert cur >= prev
        prev = cur
    assert bessel_i0(0.0) == 1.0


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=0.0, max_value=1e6))
def test_i0_scaled_in_unit_interval(x):
    v = bessel_i0_scaled(x)
    assert 0.0 < v <= 1.0


def test_i0_domain_error():
    with pytest.raises(ValueError):
        bessel_i0(-1.0)
    with pytest.raises(ValueError):
        bessel_i0_scaled(-0.1)


# ---------------------------------------------------------------------------
# Log-factorials
# ---------------------------------------------------------------------------

def test_ln_factorial_values():
    assert ln_factorial(0) == 0.0
    assert ln_factorial(5) == pytest.approx(math.log(120.0), rel=1e-15)
    # oracle: cumulative sum of logs
    acc = 0.0
    for i in range(2, 171):
        acc += math.log(i)
    assert acc == pytest.approx(706.5731, abs=1e-4)
    assert ln_factorial(170) == pytest.approx(acc, rel=1e-13)


def test_ln_factorial_vs_lgamma():
    for n in (1, 2, 255, 256, 257, 300, 1000, 10 ** 5, 10 ** 7):
        assert ln_factorial(n) == pytest.approx(math.lgamma(n + 1.0), rel=1e-12)


def test_ln_factorial_domain():
    with pytest.raises(ValueError):
        ln_factorial(-3)

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import jv

from creutz_cqed.bessel import MAX_ORDER, SERIES_MAX_X, bessel_jn
from creutz_cqed.errors import BesselRangeError, DomainError

from oracles import bessel_integral, bisect


def test_origin():
    assert bessel_jn(0, 0.0) == 1.0
    assert bessel_jn(1, 0.0) == 0.0
    assert bessel_jn(5, 0.0) == 0.0


def test_j1_of_2_against_integral():
    ref = bessel_integral(1, 2.0)
    assert abs(ref - 0.576725) < 1e-6
    assert abs(bessel_jn(1, 2.0) - ref) < 1e-12


def test_first_zero_of_j0():
    ref = bisect(lambda x: bessel_integral(0, x), 2.0, 3.0)
    assert abs(ref - 2.404826) < 1e-5
    assert abs(bessel_jn(0, ref)) < 1e-12


@pytest.mark.parametrize("x", [0.1, 1.0, 3.9, SERIES_MAX_X, 4.1, 7.5, 12.0, 19.9, 20.0])
@pytest.mark.parametrize("n", [0, 1, 2, 5, 11, 30])
def test_against_integral_representation(n, x):
    assert abs(bessel_jn(n, x) - bessel_integral(n, x)) < 1e-12


def test_against_scipy_grid():
    xs = np.linspace(-20, 20, 161)
    worst = max(abs(bessel_jn(n, x) - jv(n, x)) for n in range(-MAX_ORDER, MAX_ORDER + 1, 3) for x in xs)
    assert worst < 1e-12


def test_continuous_at_switchover():
    lo = np.nextafter(SERIES_MAX_X, 0)
    hi = np.nextafter(SERIES_MAX_X, 10)
    for n in range(6):
        assert abs(bessel_jn(n, lo) - bessel_jn(n, hi)) < 1e-13


@given(st.integers(-20, 20), st.floats(-20, 20))
def test_reflection_symmetries(n, x):
    sign = -1.0 if n % 2 else 1.0
    assert bessel_jn(-n, x) == pytest.approx(sign * bessel_jn(n, x), abs=1e-15)
    assert bessel_jn(n, -x) == pytest.approx(sign * bessel_jn(n, x), abs=1e-15)


@given(st.floats(0, 5))
def test_normalisation_sum(x):
    total = sum(bessel_jn(n, x) ** 2 for n in range(-40, 41))
    assert abs(total - 1) < 1e-10


@given(st.integers(1, 30), st.floats(0.5, 20))
def test_three_term_recurrence(n, x):
    lhs = bessel_jn(n - 1, x) + bessel_jn(n + 1, x)
    assert lhs == pytest.approx(2 * n / x * bessel_jn(n, x), abs=1e-11)


@given(st.integers(0, 10), st.floats(-20, 20))
def test_bounded_by_one(n, x):
    assert abs(bessel_jn(n, x)) <= 1.0


@pytest.mark.parametrize(
    "n, x",
    [(MAX_ORDER + 1, 1.0), (-MAX_ORDER - 1, 1.0), (1.5, 1.0), (0, math.inf), (0, math.nan)],
)
def test_range_errors(n, x):
    with pytest.raises(BesselRangeError):
        bessel_jn(n, x)


def test_range_error_is_domain_and_overflow():
    assert issubclass(BesselRangeError, DomainError)
    assert issubclass(BesselRangeError, OverflowError)


def test_large_argument_stays_finite():
    assert abs(bessel_jn(3, 500.0) - jv(3, 500.0)) < 1e-12
    assert abs(bessel_jn(64, 1e4) - jv(64, 1e4)) < 1e-12

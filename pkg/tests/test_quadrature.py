import math

import pytest
from hypothesis import given, strategies as st

from bundlezeta.errors import PreconditionError, QuadratureError
from bundlezeta.quadrature import (
    QuadratureResult,
    QuadratureSpec,
    TailRule,
    integrate_interval,
    integrate_semi_infinite,
)


def test_interval_polynomial_exact():
    res = integrate_interval(lambda t: 3.0 * t * t, 0.0, 2.0)
    assert res.value == pytest.approx(8.0, abs=1e-13)
    assert res.error_estimate <= 1e-12


def test_interval_with_split_points():
    spec = QuadratureSpec(split_points=(1.0,))
    res = integrate_interval(lambda t: abs(t - 1.0), 0.0, 2.0, spec)
    assert res.value == pytest.approx(1.0, abs=1e-13)


def test_semi_infinite_exponential():
    res = integrate_semi_infinite(lambda t: math.exp(-t), 0.0)
    assert res.value == pytest.approx(1.0, abs=1e-12)
    assert res.error_estimate <= 1e-10  # default rel_tol budget


def test_semi_infinite_power_tail():
    # int_1^inf t^{-3/2} dt = 2
    res = integrate_semi_infinite(
        lambda t: t**-1.5, 1.0, tail=TailRule("power", 1.5)
    )
    assert res.value == pytest.approx(2.0, abs=1e-12)


def test_semi_infinite_gaussian_against_closed_form():
    res = integrate_semi_infinite(
        lambda t: math.exp(-t * t), 0.0, tail=TailRule("exp", 2.0)
    )
    assert res.value == pytest.approx(0.5 * math.sqrt(math.pi), abs=1e-12)


def test_singular_endpoint_power():
    # int_0^inf t^{-1/2} e^{-t} dt = Gamma(1/2) = sqrt(pi)
    res = integrate_semi_infinite(
        lambda t: math.exp(-t) / math.sqrt(t),
        0.0,
        tail=TailRule("exp", 1.0),
        singular_exponent=-0.5,
    )
    assert res.value == pytest.approx(math.sqrt(math.pi), abs=1e-11)


def test_positive_singular_exponent_rectification():
    # int_0^1 t^{0.25} dt + exponential tail of zero: use finite interval form
    res = integrate_semi_infinite(
        lambda t: t**0.25 * math.exp(-t),
        0.0,
        tail=TailRule("exp", 1.0),
        singular_exponent=0.25,
    )
    assert res.value == pytest.approx(math.gamma(1.25), abs=1e-11)


def test_lattice_constant_style_integrand_vanishes_in_dimension_one():
    # int_0^inf (e^{-2t} I_0(2t) - e^{-t}) dt/t = 0 (minus the d = 1 constant)
    from bundlezeta.special_functions import bessel_i_scaled

    res = integrate_semi_infinite(
        lambda t: (bessel_i_scaled(0, 2.0 * t) - math.exp(-t)) / t,
        0.0,
        QuadratureSpec(abs_tol=1e-10, rel_tol=1e-10, max_subdivisions=8000),
        tail=TailRule("power", 1.5),
    )
    assert abs(res.value) <= 1e-8


def test_self_consistency_under_tolerance_halving():
    spec_coarse = QuadratureSpec(abs_tol=1e-8, rel_tol=1e-7)
    spec_fine = QuadratureSpec(abs_tol=5e-9, rel_tol=5e-8)
    f = lambda t: math.exp(-2.0 * t) * math.cos(3.0 * t) ** 2
    coarse = integrate_semi_infinite(f, 0.0, spec_coarse, TailRule("exp", 2.0))
    fine = integrate_semi_infinite(f, 0.0, spec_fine, TailRule("exp", 2.0))
    assert abs(coarse.value - fine.value) <= coarse.error_estimate + 1e-15


def test_non_convergence_is_reported():
    spec = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-13, max_subdivisions=3)
    with pytest.raises(QuadratureError):
        integrate_interval(lambda t: math.sin(50.0 * t) / (1e-4 + abs(t - 0.31)), 0.0, 1.0, spec)


def test_bad_inputs_refused():
    with pytest.raises(PreconditionError):
        QuadratureSpec(abs_tol=-1.0)
    with pytest.raises(PreconditionError):
        TailRule("power", 0.5)
    with pytest.raises(PreconditionError):
        TailRule("nope", 1.0)
    with pytest.raises(PreconditionError):
        integrate_semi_infinite(lambda t: 0.0, -1.0)


@given(st.floats(0.3, 4.0), st.floats(0.2, 3.0))
def test_exponential_moments(rate, power):
    # int_0^inf t^{p} e^{-c t} dt = Gamma(p+1) / c^{p+1}
    res = integrate_semi_infinite(
        lambda t: t**power * math.exp(-rate * t),
        0.0,
        tail=TailRule("exp", rate),
    )
    expected = math.gamma(power + 1.0) / rate ** (power + 1.0)
    assert res.value == pytest.approx(expected, rel=1e-9)


def test_result_is_frozen_record():
    res = QuadratureResult(1.0, 0.0, 15)
    with pytest.raises(Exception):
        res.value = 2.0

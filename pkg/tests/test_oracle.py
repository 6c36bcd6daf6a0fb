"""Tests for the quadrature oracles.

The oracles exist to check the closed forms, so these tests mostly check
the *machinery*: the regulator extrapolation on families with known exact
limits, the error-estimate honesty bands, the calibration guard, and the
structure of the verification records.  Cross-validation of physics values
happens in test_closedform.py (frozen tables) and test_acceptance.py.
"""

import math

import pytest

from gwharvest import oracle
from gwharvest.closedform import (
    c_minkowski,
    transition_probability,
    x_minkowski,
)
from gwharvest.oracle import (
    DEFAULT_SCHEDULE,
    MINIMAL_VERIFY_GRID,
    NoConvergence,
    RegulatorSchedule,
    SignConventionMismatch,
    all_passed,
    oracle_CM,
    oracle_I2,
    oracle_I4,
    oracle_P,
    oracle_P_full,
    oracle_XM,
    oracle_delta_prime,
    quad_adaptive,
    verify_suite,
)

SQRT_PI = math.sqrt(math.pi)


# --- regulator schedule and extrapolation engine ----------------------------


def test_default_schedule_is_geometric():
    assert DEFAULT_SCHEDULE.values() == (0.1, 0.05, 0.025, 0.0125)
    custom = RegulatorSchedule(start=0.2, ratio=0.1, count=3).values()
    assert len(custom) == 3
    for got, want in zip(custom, (0.2, 0.02, 0.002)):
        assert math.isclose(got, want, rel_tol=1e-15)


def test_quad_adaptive_exact_on_linear_family():
    # Integrand exp(-x^2) * (1 + eps): linear in the regulator, so Neville
    # extrapolation recovers sqrt(pi) to machine precision.
    est = quad_adaptive(
        lambda eps: (lambda x: math.exp(-x * x) * (1.0 + eps)),
        -10.0,
        10.0,
    )
    assert abs(est.value - SQRT_PI) < 1e-13
    assert est.converged
    assert est.regulator_schedule == DEFAULT_SCHEDULE.values()
    assert est.abs_error_estimate < 1e-10


def test_quad_adaptive_square_variable_path():
    # A family even in the regulator extrapolates in eps^2.
    est = quad_adaptive(
        lambda eps: (lambda x: math.exp(-x * x) * (1.0 + eps * eps)),
        -10.0,
        10.0,
        square_variable=True,
    )
    assert abs(est.value - SQRT_PI) < 1e-13
    assert est.converged


def test_quad_adaptive_honest_unconverged_band():
    # An eps^5 contamination is beyond the cubic model of a four-point
    # schedule: the residual (~5e-6) exceeds tol but stays below
    # 1000 * tol, so the estimate comes back flagged, not raised.
    est = quad_adaptive(
        lambda eps: (lambda x: math.exp(-x * x) * (1.0 + eps**5)),
        -10.0,
        10.0,
        tol=1e-8,
    )
    assert not est.converged
    assert est.abs_error_estimate > 1e-8
    # ... and the flagged value is still much better than the estimate.
    assert abs(est.value - SQRT_PI) < 1e-6


def test_quad_adaptive_raises_on_erratic_family():
    with pytest.raises(NoConvergence):
        quad_adaptive(
            lambda eps: (lambda x: math.exp(-x * x) * math.sin(1.0 / eps)),
            -10.0,
            10.0,
        )


def test_quad_adaptive_tail_bound_enters_estimate():
    est = quad_adaptive(
        lambda eps: (lambda x: math.exp(-x * x) * (1.0 + eps)),
        -10.0,
        10.0,
        tail_bound=1e-7,
    )
    assert est.abs_error_estimate >= 1e-7


# --- kernel oracles ----------------------------------------------------------


def test_oracle_p_hits_exact_anchor():
    est = oracle_P(0.0)
    assert abs(est.value - 1.0 / (4.0 * math.pi)) < 1e-7
    assert abs(est.value.imag) < 1e-7


def test_oracle_p_matches_closed_form_away_from_anchor():
    for Om in (0.5, 1.0, -0.25):
        est = oracle_P(Om)
        assert abs(est.value - transition_probability(Om)) < 1e-6


def test_oracle_p_calibration_guard(monkeypatch):
    # A corrupted calibration residue must trip the sign-convention guard
    # before any value is returned.
    monkeypatch.setitem(oracle._CAL_CACHE, "P", 1.0)
    with pytest.raises(SignConventionMismatch):
        oracle_P(1.0)


def test_oracle_xm_methods_are_independent_and_agree():
    reg = oracle_XM(1.0, 1.0, 0.0)
    pv = oracle_XM(1.0, 1.0, 0.0, method="pv_subtraction")
    assert reg.regulator_schedule == DEFAULT_SCHEDULE.values()
    assert pv.regulator_schedule == ()  # no regulator ladder involved
    assert abs(reg.value - pv.value) < 1e-6
    # The PV-subtraction oracle is analytic except for one regular
    # quadrature; it reproduces the closed form essentially exactly.
    assert abs(pv.value - x_minkowski(1.0, 1.0, 0.0)) < 1e-14


def test_oracle_xm_rejects_unknown_method():
    with pytest.raises(ValueError):
        oracle_XM(1.0, 1.0, 0.0, method="zeta_function")


def test_oracle_cm_matches_closed_form():
    est = oracle_CM(1.0, 1.0)
    assert abs(est.value - c_minkowski(1.0, 1.0)) < 1e-6
    assert abs(est.value.imag) < 1e-8


def test_oracle_p_full_strain_independent_on_static_worldline():
    # The transverse factor of a single static worldline vanishes, so the
    # first-order strain term contributes exactly zero: identical
    # estimates for any amplitude, all matching the Minkowski P.
    base = oracle_P_full(1.0, 0.0, 2.0)
    with_strain = oracle_P_full(1.0, 0.05, 2.0)
    assert with_strain.value == base.value
    assert abs(base.value - transition_probability(1.0)) < 1e-6


# --- s-integral and nascent-delta' oracles -----------------------------------


def test_oracle_i2_i4_machine_accurate():
    i2 = oracle_I2(2.0, 1.0)
    assert i2.converged
    assert i2.abs_error_estimate < 1e-10
    assert abs(i2.value.imag) == 0.0
    i4 = oracle_I4(2.0, 1.0, 1.0)
    assert i4.converged
    assert i4.abs_error_estimate < 1e-10


def test_oracle_delta_prime_parities():
    d1 = oracle_delta_prime("I1", 2.0, 0.0, 1.0)
    assert d1.value.real == 0.0  # I1 is purely imaginary
    assert abs(d1.value.imag - 0.9562676566864755) <= 1e-9
    d3 = oracle_delta_prime("I3", 2.0, 1.0, 1.0)
    assert d3.value.imag == 0.0  # I3 is purely real
    assert abs(d3.value.real - (-1.05315419439168)) <= 1e-9


def test_oracle_delta_prime_rejects_unknown_target():
    with pytest.raises(ValueError):
        oracle_delta_prime("I7", 2.0, 0.0, 1.0)


def test_dprime_window_bracket_equations():
    # The window endpoints solve a - D^2/a = -/+ halfwidth * eta exactly.
    for D, eta in [(1.5, 0.01), (0.5, 0.1), (4.0, 1e-3)]:
        lo, hi = oracle._dprime_window(D, eta)
        assert math.isclose(lo - D * D / lo, -12.0 * eta, abs_tol=1e-12)
        assert math.isclose(hi - D * D / hi, 12.0 * eta, abs_tol=1e-12)
        assert 0.0 < lo < D < hi


# --- verification suite ------------------------------------------------------


def test_verify_suite_minimal_grid():
    records = verify_suite(MINIMAL_VERIFY_GRID)
    assert len(records) == 9
    assert all_passed(records)
    names = [r.quantity for r in records]
    assert sorted(names) == sorted(
        [
            "transition_probability",
            "x_minkowski",
            "x_minkowski_pv",
            "x_minkowski_consistency",
            "c_minkowski",
            "integral_I1",
            "integral_I2",
            "integral_I3",
            "integral_I4",
        ]
    )
    for rec in records:
        assert rec.passed
        assert rec.rel_error <= rec.tolerance
        assert rec.params == tuple(sorted(rec.params))
        assert all(isinstance(k, str) and isinstance(v, float)
                   for k, v in rec.params)
    consistency = [r for r in records if r.quantity == "x_minkowski_consistency"]
    assert len(consistency) == 1
    assert consistency[0].note == "independent regularizations of the same kernel"


def test_all_passed_detects_failures():
    records = verify_suite(MINIMAL_VERIFY_GRID)
    assert all_passed(records)
    import dataclasses

    broken = records[:-1] + [dataclasses.replace(records[-1], passed=False)]
    assert not all_passed(broken)

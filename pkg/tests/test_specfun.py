"""Tests for the overflow-safe special-function layer.

Reference constants were computed with 30-digit arbitrary-precision
arithmetic and are frozen here as literals; structural identities are
checked on seeded random samples against independent evaluations.
"""

import math

import numpy as np
import pytest

from gwharvest import specfun
from gwharvest.specfun import (
    DomainTooLarge,
    dawson,
    erf_complex,
    erf_real,
    erfc_real,
    faddeeva_w,
    scaled_erf_product,
    sinc,
)

SQRT_PI = math.sqrt(math.pi)


def test_erf_real_reference_values():
    assert abs(erf_real(1.0) - 0.84270079294971486934) < 1e-15
    assert erf_real(0.0) == 0.0
    assert abs(erf_real(-1.0) + 0.84270079294971486934) < 1e-15


def test_erfc_real_accurate_in_far_tail():
    # erfc(10) underflows to 0 in the naive 1 - erf(10) evaluation.
    ref = 2.088487583762544757e-45
    assert abs(erfc_real(10.0) - ref) / ref < 1e-13


def test_faddeeva_at_origin():
    assert faddeeva_w(0.0) == pytest.approx(1.0, abs=1e-15)


def test_faddeeva_reference_values():
    ref_upper = 0.30474420525691259246 + 0.20821893820283162729j
    assert abs(faddeeva_w(1 + 1j) - ref_upper) < 1e-14
    # Lower half-plane goes through the functional-equation fold.
    ref_lower = -0.12293249482276237412 + 0.32755513633331258763j
    assert abs(faddeeva_w(2 - 0.5j) - ref_lower) < 1e-13


def test_faddeeva_against_defining_integral():
    # For Im z > 0, w(z) = (i/pi) * integral of exp(-t^2)/(z - t) dt.  The
    # trapezoid rule on an analytic integrand converges geometrically, so a
    # modest uniform grid is already far below the comparison tolerance.
    z = 1.0 + 1.0j
    ts = np.linspace(-10.0, 10.0, 401)
    vals = np.exp(-ts * ts) / (z - ts)
    ref = 1j / math.pi * np.trapezoid(vals, ts)
    assert abs(faddeeva_w(z) - ref) < 1e-11


def test_faddeeva_reflection_symmetries():
    rng = np.random.default_rng(20250819)
    pts = rng.uniform(-8.0, 8.0, size=(1000, 2))
    for x, y in pts:
        z = complex(x, y)
        w = faddeeva_w(z)
        # w(-conj(z)) = conj(w(z)) for all z.
        assert abs(faddeeva_w(-z.conjugate()) - w.conjugate()) <= 1e-13 * abs(w)
        # Functional equation w(-z) = 2 exp(-z^2) - w(z).  The difference
        # is judged against the largest term entering the subtraction: when
        # 2 exp(-z^2) is exponentially larger than w(-z) the right-hand
        # side cancels catastrophically and only that scaled bound is
        # meaningful in floating point.
        gauss = 2.0 * np.exp(-z * z)
        rhs = gauss - w
        scale = max(abs(gauss), abs(w), 1.0)
        assert abs(faddeeva_w(-z) - rhs) <= 1e-12 * scale


def test_erf_complex_reference_values():
    ref = 1.3161512816979476449 + 0.19045346923783468628j
    assert abs(erf_complex(1 + 1j) - ref) < 1e-14
    ref2 = 76.00304652657264075 - 61.010112413398781654j
    assert abs(erf_complex(0.5 + 2.5j) - ref2) / abs(ref2) < 1e-13


def test_erf_complex_odd_and_conjugate():
    rng = np.random.default_rng(7)
    pts = rng.uniform(-3.0, 3.0, size=(200, 2))
    for x, y in pts:
        z = complex(x, y)
        assert abs(erf_complex(-z) + erf_complex(z)) < 1e-14 * max(
            1.0, abs(erf_complex(z))
        )
        assert abs(
            erf_complex(z.conjugate()) - erf_complex(z).conjugate()
        ) < 1e-13 * max(1.0, abs(erf_complex(z)))


def test_erf_complex_rejects_overflowing_imaginary_part():
    with pytest.raises(DomainTooLarge):
        erf_complex(1.0 + 31.0j)


def test_scaled_erf_product_matches_separate_factors_in_safe_range():
    # Where the bare factors are representable the scaled product must
    # equal their literal product.
    for p, z in [(1.0, 2.0 + 1.0j), (3.0, 0.5 + 2.5j), (0.0, 1.0 + 1.0j)]:
        direct = math.exp(-p * p) * erf_complex(z)
        assert abs(scaled_erf_product(p, z) - direct) <= 1e-13 * max(
            abs(direct), 1e-30
        )


def test_scaled_erf_product_beyond_bare_overflow():
    # e^{-36} erf(6 + 6i): erf alone peaks near e^{36}, far outside the
    # safe window of the unscaled route, but the product is tiny.
    ref = 2.4532067660420161103e-16 - 7.6866933216173717401e-18j
    val = scaled_erf_product(6.0, 6.0 + 6.0j)
    assert abs(val - ref) / abs(ref) < 1e-12


def test_scaled_erf_product_purely_imaginary_is_dawson():
    # e^{-p^2} erf(ip) = 2i D(p)/sqrt(pi); stays bounded to p = 30.
    ref5 = 2j * 0.10213407442427683544 / SQRT_PI
    assert abs(scaled_erf_product(5.0, 5.0j) - ref5) < 1e-15
    for p in np.linspace(0.5, 30.0, 60):
        val = scaled_erf_product(p, 1j * p)
        expected = 2j * dawson(p) / SQRT_PI
        assert abs(val - expected) <= 1e-13 * abs(expected)
        assert abs(val) < 1.0  # bounded like 1/(p sqrt(pi)) for large p


def test_scaled_erf_product_odd_in_z():
    rng = np.random.default_rng(11)
    for _ in range(100):
        p = rng.uniform(0.0, 4.0)
        z = complex(rng.uniform(-4, 4), rng.uniform(-p, p))
        a = scaled_erf_product(p, z)
        b = scaled_erf_product(p, -z)
        assert abs(a + b) <= 1e-13 * max(abs(a), 1e-30)


def test_scaled_erf_product_overflow_guard():
    # Exponent real part y^2 - x^2 - p^2 = 1600 > 700 must refuse rather
    # than return inf.
    with pytest.raises(DomainTooLarge):
        scaled_erf_product(0.0, 40.0j)


def test_dawson_reference():
    assert abs(dawson(5.0) - 0.10213407442427683544) < 1e-15
    assert dawson(0.0) == 0.0
    assert dawson(-1.0) == -dawson(1.0)


def test_sinc_basics_and_cutoff_continuity():
    assert sinc(0.0) == 1.0
    assert abs(sinc(2.0) - math.sin(2.0) / 2.0) < 1e-16
    assert abs(sinc(-2.0) - sinc(2.0)) == 0.0
    # Both branches around the Taylor/direct switch reproduce sin(x)/x to
    # full precision (the truncation error x^6/5040 ~ 2e-28 is invisible).
    for x in (0.999e-4, 1.001e-4):
        assert abs(sinc(x) - math.sin(x) / x) < 1e-15
    # Taylor branch agrees with the exact series value.
    x = 5e-5
    assert abs(sinc(x) - (1.0 - x * x / 6.0)) < 1e-18

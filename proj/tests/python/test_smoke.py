"""Smoke tests for the python bindings."""

import math

import pytest

import mcflab


def test_tail_coefficients_n2():
    coeffs = dict(mcflab.tail_coefficients(2, 9))
    assert coeffs[1] == "1"
    assert coeffs[-1] == "-1"
    assert coeffs[-3] == "-2"
    assert coeffs[-5] == "-11"
    assert coeffs[-7] == "-90"
    assert coeffs[-9] == "-943"


def test_symbolic_coefficients():
    coeffs = dict(mcflab.tail_coefficients_symbolic(9))
    assert coeffs[-3] == "n^2 - 5*n + 4"
    assert "4315" in coeffs[-9]


def test_origin_series():
    coeffs = dict(mcflab.origin_coefficients(2, 5))
    assert coeffs[1] == "1/2"
    assert coeffs[3] == "1/32"


def test_eval_tail_two_terms():
    assert mcflab.eval_tail(2, 1, 10.0) == pytest.approx(9.9, abs=1e-14)


def test_integrate_phi_matches_series():
    prof = mcflab.integrate_phi(2, 1.0, 0.0, 50.0, 1e-10)
    phi50 = prof["phi"][-1]
    series = 50.0 - 1.0 / 50 - 2.0 / 50**3 - 11.0 / 50**5
    assert abs(phi50 - series) < 1e-4


def test_bowl_residual_small():
    b = mcflab.bowl(2, 12.0, tol=1e-10, resample=0.01)
    # restrict to the uniform tail of the sampling for the stencil check
    r, u = [], []
    for x, y in zip(b["r"], b["u"]):
        k = x / 0.01
        if abs(k - round(k)) < 1e-6 and x >= 0.01:
            r.append(x)
            u.append(y)
    rho = mcflab.translator_residual(r, u, 2)
    assert max(abs(v) for v in rho) < 1e-4


def test_wings_offsets():
    w = mcflab.build_wings(2, 1.0, 22.0, epsilon=0.05)
    assert w["c_plus"] == pytest.approx(0.05, abs=1e-6)
    assert w["c_minus"] == pytest.approx(-0.05, abs=1e-6)
    gap = w["w_plus"][-1] - w["w_minus"][-1]
    assert gap == pytest.approx(0.1, abs=1e-6)


def test_catenoid_residual():
    assert abs(mcflab.catenoid_static_residual(3, 1.0, 2.0)) < 1e-12
    with pytest.raises(ValueError):
        mcflab.catenoid_static_residual(2, 1.0, 2.0)


def test_small_stability_run():
    rep = mcflab.run_soliton_stability(
        n=2, epsilon=0.1, r_wing=3.0, r_max=25.0, h=0.1, T=20.0,
        amplitude=0.5, rho=2.0,
    )
    assert rep["t_star"] is not None
    assert rep["barrier_violation_max"] <= 20 * 0.1**2
    s = rep["sup_dev"]
    assert s[-1] <= 2 * 0.1
    assert all(v >= 0 for v in s)


def test_growth_check():
    excess = mcflab.quadratic_growth_check(n=2, C=1.0, r_max=4.0, h=0.05, tau=0.05)
    assert excess <= 20 * 0.05**2

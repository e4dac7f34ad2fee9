"""Orthogonal-polynomial families, kernels, moments, and the triangular
su(1,1) identities."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm
from scipy.special import eval_laguerre

from icewall.errors import SingularParameterError
from icewall.hankel import cot_derivative_poly
from icewall.orthopoly import (cd_kernel, cd_kernel_direct, connection_coeffs,
                               exp_jplus_entries, hyp2f1_terminating,
                               inm_closed, inm_quadrature,
                               key_conjugation_check, laguerre_deriv,
                               laguerre_eval, leading_coefficient,
                               masked_commutator_residuals, meixner_eval,
                               meixner_poly, moment_via_contour, mp_deriv,
                               mp_eval, mp_eval_hyp, p_n_deriv, p_n_eval,
                               su11_matrices, weight_omega, weight_shifted)
from icewall.quadrature import QuadraturePlan


# --------------------------------------------------------------------------
# recurrences vs terminating hypergeometric sums


@settings(max_examples=40, deadline=None)
@given(n=st.integers(0, 12), lam=st.floats(0.2, 2.0),
       x=st.floats(-3.0, 3.0), phi=st.floats(0.2, 2.9))
def test_mp_recurrence_matches_hypergeometric(n, lam, x, phi):
    a = mp_eval(n, lam, x, phi)
    b = mp_eval_hyp(n, lam, x, phi)
    assert abs(a - b) < 1e-9 * (1 + abs(a))


@settings(max_examples=25, deadline=None)
@given(n=st.integers(1, 10), lam=st.floats(0.3, 1.5), x=st.floats(-2.0, 2.0))
def test_mp_derivative_by_finite_differences(n, lam, x):
    phi, h = 0.9, 1e-6
    fd = (mp_eval(n, lam, x + h, phi) - mp_eval(n, lam, x - h, phi)) / (2 * h)
    assert abs(mp_deriv(n, lam, x, phi) - fd) < 1e-7 * (1 + abs(fd))


def test_meixner_polynomial_object_agrees_with_recurrence():
    for n in range(6):
        poly = meixner_poly(n, 1.0, 0.55)
        for x in (0.0, 1.0, 3.5):
            assert poly(x) == pytest.approx(
                complex(meixner_eval(n, x, 1.0, 0.55)).real, rel=1e-12, abs=1e-12)


@given(n=st.integers(0, 10), x=st.floats(0.0, 20.0))
def test_laguerre_against_scipy(n, x):
    assert laguerre_eval(n, x) == pytest.approx(eval_laguerre(n, x),
                                                rel=1e-9, abs=1e-9)


def test_laguerre_derivative_near_zero():
    for n in (1, 3, 6):
        h = 1e-6
        fd = (laguerre_eval(n, h) - laguerre_eval(n, 0.0)) / h
        assert laguerre_deriv(n, 1e-10) == pytest.approx(fd, abs=1e-4)


def test_terminating_hypergeometric_is_finite_sum():
    # 2F1(-2, 1; 1; z) = (1-z)^2
    for z in (0.3, -1.2, 2.5):
        assert hyp2f1_terminating(2, 1.0, 1.0, z) == pytest.approx((1 - z) ** 2)


# --------------------------------------------------------------------------
# the orthonormal family and its kernel


def test_leading_coefficient_ratio():
    phi = 0.9
    for n in (1, 4, 9):
        ratio = leading_coefficient(n - 1, phi) / leading_coefficient(n, phi)
        assert ratio == pytest.approx(n / math.sin(phi))


def test_cd_kernel_confluent_switch():
    for n in (2, 5):
        for x, y in [(0.4, 0.4), (0.4, 0.4 + 1e-9), (0.7, -0.2)]:
            a = cd_kernel(n, x, y, 1.1)
            b = cd_kernel_direct(n, x, y, 1.1)
            assert abs(a - b) < 1e-8 * (1 + abs(b))


def test_orthonormal_family_derivative():
    h, phi = 1e-6, 1.1
    for n in (1, 3, 6):
        fd = (p_n_eval(n, 0.3 + h, phi) - p_n_eval(n, 0.3 - h, phi)) / (2 * h)
        assert abs(p_n_deriv(n, 0.3, phi) - fd) < 1e-7 * (1 + abs(fd))


def test_weight_normalization():
    # integral of e^{phi x}/(1 + e^{pi x}) over the real axis is 1/sin(phi)
    phi = 0.9
    plan = QuadraturePlan.on_interval(-45.0, 25.0)
    total = np.sum(weight_shifted(plan.nodes, phi) * plan.weights)
    assert complex(total).real == pytest.approx(1 / math.sin(phi), rel=1e-12)


def test_weight_no_overflow_far_out():
    vals = weight_shifted(np.array([-500.0, 500.0]), 1.8)
    assert np.all(np.isfinite(vals))


def test_principal_value_weight_pole():
    with pytest.raises(ZeroDivisionError):
        weight_omega(0.0, 0.9)


def test_moments_reproduce_cot_polynomials():
    phi = 0.9
    c = 1 / math.tan(phi)
    for m in range(6):
        mom = moment_via_contour(m, phi)
        expected = cot_derivative_poly(m)(c) - (1j if m == 0 else 0)
        assert abs(mom - expected) < 1e-10 * (1 + abs(expected))


# --------------------------------------------------------------------------
# parameter-connection identities


@settings(max_examples=20, deadline=None)
@given(n=st.integers(0, 10), x=st.floats(-2.0, 2.0))
def test_connection_formula(n, x):
    tau, phi = 0.7, 1.1
    coeffs = connection_coeffs(n, 0.5, tau, phi)
    expanded = sum(c * mp_eval(k, 0.5, x, phi) for k, c in enumerate(coeffs))
    assert abs(mp_eval(n, 0.5, x, tau) - expanded) < 1e-11 * (1 + abs(expanded))


@pytest.mark.parametrize("lam", [0.5, 1.0])
def test_overlap_integral_closed_form(lam):
    tau, omega, phi = 1.1, 0.7, 0.9
    for n in range(5):
        for m in range(5):
            closed = inm_closed(n, m, lam, tau, omega, phi)
            quad = inm_quadrature(n, m, lam, tau, omega, phi)
            assert abs(closed - quad) < 1e-10 * (1 + abs(closed))


def test_overlap_integral_degenerate_parameters():
    # tau = phi truncates the connection sum; stays finite and correct
    lam, phi = 0.5, 0.9
    v = inm_closed(2, 3, lam, phi, 0.7, phi)
    q = inm_quadrature(2, 3, lam, phi, 0.7, phi)
    assert abs(v - q) < 1e-10


# --------------------------------------------------------------------------
# su(1,1) triangular machinery


@pytest.mark.parametrize("convention,lam", [("fixed-half", 0.5), ("general", 0.5),
                                            ("general", 1.0)])
def test_masked_commutators(convention, lam):
    su = su11_matrices(9, lam, convention=convention)
    assert max(masked_commutator_residuals(su).values()) < 1e-12


def test_exp_jplus_matches_scaling_and_squaring():
    m, alpha, lam = 8, 0.45, 0.5
    su = su11_matrices(m, lam, convention="general")
    direct = expm(alpha * np.asarray(su.j_plus, dtype=complex))
    closed = exp_jplus_entries(alpha, lam, m)
    assert np.max(np.abs(direct - closed)) < 1e-12


@settings(max_examples=15, deadline=None)
@given(alpha=st.floats(-1.2, 1.2), m=st.integers(3, 12))
def test_key_conjugation_identity(alpha, m):
    assert key_conjugation_check(alpha, 0.5, m) < 1e-10


def test_key_conjugation_general_weight():
    for lam in (0.5, 1.0, 1.5):
        assert key_conjugation_check(0.6, lam, 10) < 1e-11

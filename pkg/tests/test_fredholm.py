"""Nystrom / truncation evaluations of the three integrable kernels."""

import cmath
import math
import warnings

import numpy as np
import pytest

from icewall.enumeration import enumerate_configs
from icewall.errors import ConvergenceWarning, SingularParameterError
from icewall.fredholm import (KernelSpec, default_plan, discrete_cutoff,
                              fredholm_det, full_partition_fredholm,
                              kernel_disordered, kernel_discrete,
                              kernel_rational, operator_matrix, trace_moments)
from icewall.logscale import PrecisionContext
from icewall.orthopoly import laguerre_eval, meixner_poly, mp_eval
from icewall.params import ModelParams, VertexWeights, symmetric_weights
from icewall.wmatrix import BetaGamma, rational_z_tilde, w_matrix, z_tilde_det

P_REF = ModelParams(0.9, 0.3)


# --------------------------------------------------------------------------
# kernel scalars


def test_disordered_kernel_real_for_real_parameters():
    v = kernel_disordered(0.4, -0.3, 3, P_REF)
    assert abs(complex(v).imag) < 1e-14


def test_disordered_kernel_rank_one_case():
    # N=1 bracket is the difference quotient of a linear polynomial:
    # constant 2 sin(phi_-) times the weight in y
    phi_m, phi_p = 0.6, 1.2
    for x, y in [(0.5, -0.7), (0.0, 2.0), (1.3, 1.3)]:
        w = math.exp(2 * phi_p * y) / (1 + math.exp(2 * math.pi * y))
        expected = 2 * math.sin(phi_m) * w
        assert complex(kernel_disordered(x, y, 1, P_REF)).real == \
            pytest.approx(expected, rel=1e-12)


def test_disordered_kernel_decay():
    assert abs(kernel_disordered(0.2, 30.0, 2, P_REF)) < 1e-30


def test_disordered_validity_strip():
    with pytest.raises(SingularParameterError):
        KernelSpec.disordered(2, ModelParams(2.9, 0.5))  # Re phi_+ > pi


def test_rational_kernel_rank_one_case():
    for x, y in [(0.3, 1.7), (2.0, 0.1), (0.8, 0.8)]:
        assert kernel_rational(x, y, 1, 1.0) == pytest.approx(math.exp(-y))


def test_rational_kernel_confluent_limit():
    x = 1.3
    near = kernel_rational(x, x + 1e-9, 3, 0.7)
    diag = kernel_rational(x, x, 3, 0.7)
    assert near == pytest.approx(diag, rel=1e-6)


def test_discrete_kernel_bracket_symmetry():
    # antisymmetric numerator over antisymmetric (x - y) leaves a symmetric
    # bracket; only the one-sided weight e^{-2 phi~_+ y} breaks x <-> y
    pt_p, pt_m = 0.7, 0.4
    n = 2
    for x, y in [(0, 1), (2, 5), (1, 4)]:
        a = kernel_discrete(x, y, n, pt_p, pt_m)
        b = kernel_discrete(y, x, n, pt_p, pt_m)
        ratio = math.exp(-2 * pt_p * y) / math.exp(-2 * pt_p * x)
        assert complex(a) == pytest.approx(complex(b) * ratio, rel=1e-10)


def test_discrete_kernel_polynomial_oracle():
    # rebuild the (0,1) entry from the Meixner recurrence by hand
    pt_p, pt_m, n = 0.7, 0.4, 2
    c = math.exp(-2 * pt_m)
    m2, m1 = meixner_poly(2, 1.0, c), meixner_poly(1, 1.0, c)
    bracket = -(m2(0.0) * m1(1.0) - m1(0.0) * m2(1.0)) / (0.0 - 1.0)
    expected = (n * math.exp(-2 * n * pt_m) * bracket * math.exp(-2 * pt_p))
    assert complex(kernel_discrete(0, 1, n, pt_p, pt_m)).real == \
        pytest.approx(expected, rel=1e-12)


def test_discrete_kernel_confluent_diagonal():
    # x = y matches the direct Christoffel-Darboux sum over normalized terms
    pt_p, pt_m, n = 0.7, 0.4, 3
    c = math.exp(-2 * pt_m)
    x = 2
    polys = [meixner_poly(k, 1.0, c) for k in range(n + 1)]
    # CD sum: N e^{-2N phi~_-} sum-free form is awkward; compare against a
    # tiny finite difference of the off-diagonal bracket instead
    h = 1e-6
    mn, mn1 = polys[n], polys[n - 1]
    bracket = -(mn(x) * mn1(x + h) - mn1(x) * mn(x + h)) / (-h)
    expected = (n * math.exp(-2 * n * pt_m) * bracket
                * math.exp(-2 * pt_p * x))
    assert complex(kernel_discrete(x, x, n, pt_p, pt_m)).real == \
        pytest.approx(expected, rel=1e-4)


# --------------------------------------------------------------------------
# determinants against the finite representations


def test_disordered_determinant_matches_finite():
    ctx = PrecisionContext.for_size(5)
    for n in range(1, 6):
        zt = fredholm_det(KernelSpec.disordered(n, P_REF))
        assert zt.rel_diff(z_tilde_det(n, P_REF, ctx)) < 1e-8


def test_full_partition_fredholm_vs_enumeration():
    w = VertexWeights.symmetric(*symmetric_weights(P_REF))
    for n in range(1, 5):
        ref = enumerate_configs(n, w).z_value
        assert full_partition_fredholm(n, P_REF).rel_diff(ref) < 1e-8


def test_rational_determinant_matches_finite():
    lam, eta = 0.9, 0.3
    xi = (lam - eta) / (lam + eta)
    for n in range(1, 5):
        zt = fredholm_det(KernelSpec.rational(n, xi))
        assert zt.rel_diff(rational_z_tilde(n, lam, eta)) < 1e-8


def test_discrete_determinant_matches_continuation():
    # ferroelectric regime: phi_pm = i phi~_pm
    p = ModelParams(0.55j, 0.25j)
    ctx = PrecisionContext.for_size(4)
    for n in range(1, 5):
        zt = fredholm_det(KernelSpec.discrete(n, 0.8, 0.3))
        assert zt.rel_diff(z_tilde_det(n, p, ctx)) < 1e-8


def test_discrete_truncation_stability():
    spec = KernelSpec.discrete(3, 0.8, 0.3)
    x_max = discrete_cutoff(spec)
    a = np.linalg.slogdet(np.eye(x_max) - operator_matrix(spec, x_max=x_max))[1]
    b = np.linalg.slogdet(np.eye(x_max + 10)
                          - operator_matrix(spec, x_max=x_max + 10))[1]
    assert abs(a - b) < 1e-10


def test_no_convergence_warnings_on_defaults():
    with warnings.catch_warnings():
        warnings.simplefilter("error", ConvergenceWarning)
        fredholm_det(KernelSpec.disordered(3, P_REF))
        fredholm_det(KernelSpec.rational(3, 0.5))
        fredholm_det(KernelSpec.discrete(3, 0.8, 0.3))


def test_trace_moments_match_finite_traces():
    bg = BetaGamma.from_params(P_REF)
    for n in (2, 3):
        w = w_matrix(n, bg)
        tm = trace_moments(KernelSpec.disordered(n, P_REF), n_max=3)
        for k in (1, 2, 3):
            target = bg.zeta ** k * np.trace(np.linalg.matrix_power(w, k))
            assert abs(tm[k - 1] - target) < 1e-8 * (1 + abs(target))


def test_trace_moment_order_limit():
    with pytest.raises(ValueError):
        trace_moments(KernelSpec.rational(2, 0.5), n_max=7)


def test_non_integer_order_smoke():
    # analytic continuation in N: experimental, only well-definedness is
    # claimed, so a coarse plan keeps the hypergeometric evaluations cheap
    from icewall.quadrature import QuadraturePlan
    plan = QuadraturePlan.on_interval(-12.0, 8.0, panel_width=2.0,
                                      nodes_per_panel=8)
    zt = fredholm_det(KernelSpec.disordered(2.5, P_REF), plan=plan,
                      check_convergence=False)
    assert np.isfinite(zt.log_magnitude)


# --------------------------------------------------------------------------
# degeneration limits


def test_polynomial_rational_limit():
    # P_n^{(1/2)}(x/eps; eps*phi) -> L_n(-2 phi x) as eps -> 0
    eps, phi = 1e-4, 0.8
    for n in (1, 2, 4):
        for x in (-0.7, 0.3, 1.1):
            lhs = mp_eval(n, 0.5, x / eps, eps * phi)
            rhs = laguerre_eval(n, -2 * phi * x)
            assert abs(lhs - rhs) < 1e-5 * (1 + abs(rhs))


def test_weight_step_function_limit():
    # e^{eps phi_+ (y/eps)} / (1 + e^{pi y/eps}) -> e^{phi_+ y} theta(-y)
    eps, phi_p = 1e-4, 1.2
    for y in (-0.8, -0.2):
        lhs = math.exp(phi_p * y) / (1 + math.exp(math.pi * y / eps))
        assert lhs == pytest.approx(math.exp(phi_p * y), rel=1e-5)
    for y in (0.2, 0.8):
        lhs = math.exp(phi_p * y - np.logaddexp(0.0, math.pi * y / eps))
        assert abs(lhs) < 1e-5

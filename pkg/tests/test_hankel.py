"""Moment (Hankel-type) determinant route and the closed-form determinants."""

import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icewall.enumeration import enumerate_configs
from icewall.errors import PrecisionWarning, SingularParameterError
from icewall.hankel import (alpha_det, alpha_det_deviation, cot_derivative_poly,
                            det_A_closed, det_a_deviation, hankel_H, matrix_A,
                            partition_hankel, z_tilde_via_ratio)
from icewall.logscale import PrecisionContext
from icewall.params import ModelParams, VertexWeights, symmetric_weights
from icewall.wmatrix import z_tilde_det


def test_cot_polynomial_table():
    assert cot_derivative_poly(0).coeffs == (0, 1)            # T0 = c
    assert cot_derivative_poly(1).coeffs == (-1, 0, -1)       # T1 = -(1+c^2)
    assert cot_derivative_poly(2).coeffs == (0, 2, 0, 2)      # T2 = 2c(1+c^2)


@given(k=st.integers(0, 12))
def test_cot_polynomial_shape(k):
    poly = cot_derivative_poly(k)
    coeffs = poly.coeffs
    assert len(coeffs) == k + 2                    # degree k+1
    assert coeffs[-1] == (-1) ** k * math.factorial(k)


@settings(max_examples=30, deadline=None)
@given(k=st.integers(0, 10), c=st.floats(-3.0, 3.0))
def test_cot_polynomial_recurrence(k, c):
    # T_{k+1}(c) = -(1+c^2) T_k'(c), with the derivative taken exactly
    cur = cot_derivative_poly(k)
    nxt = cot_derivative_poly(k + 1)
    deriv = sum(j * cur.coeffs[j] * c ** (j - 1)
                for j in range(1, len(cur.coeffs)))
    assert nxt(c) == pytest.approx(-(1 + c * c) * deriv, rel=1e-10, abs=1e-10)


def test_moment_derivative_consistency():
    # T_m(cot phi) equals the m-th phi-derivative structure: check the
    # first two values directly against trig identities
    phi = 0.8
    c = 1 / math.tan(phi)
    assert cot_derivative_poly(1)(c) == pytest.approx(-1 / math.sin(phi) ** 2)


def test_hankel_structure():
    h = hankel_H(4, ModelParams(0.9, 0.3))
    for j in range(3):
        for k in range(1, 4):
            assert mpmath.almosteq(h[j, k], h[j + 1, k - 1])


def test_partition_hankel_vs_enumeration():
    p = ModelParams(0.9, 0.3)
    w = VertexWeights.symmetric(*symmetric_weights(p))
    for n in range(1, 5):
        ref = enumerate_configs(n, w).z_value
        assert partition_hankel(n, p).rel_diff(ref) < 1e-12


def test_partition_hankel_complex_parameters():
    p = ModelParams(0.7 + 0.1j, 0.25 - 0.05j)
    w = VertexWeights.symmetric(*symmetric_weights(p))
    for n in range(1, 5):
        ref = enumerate_configs(n, w).z_value
        assert partition_hankel(n, p).rel_diff(ref) < 1e-12


def test_closed_determinant_small_cases():
    # N=1: A = (T_0(cot phi) - i) = cot phi - i = e^{-i phi}/sin(phi)
    phi = 0.8
    val = det_A_closed(1, phi).value
    direct = 1 / math.tan(phi) - 1j
    assert val == pytest.approx(direct)


@settings(max_examples=20, deadline=None)
@given(re=st.floats(0.3, 2.8), im=st.floats(-0.4, 0.4))
def test_closed_determinant_matches_lu(re, im):
    phi = complex(re, im)
    ctx = PrecisionContext.for_size(8)
    assert det_a_deviation(8, phi, ctx) < ctx.tolerance


@settings(max_examples=15, deadline=None)
@given(re=st.floats(0.3, 2.8), a_re=st.floats(-1.5, 1.5), a_im=st.floats(-1.5, 1.5))
def test_alpha_variant_matches_lu(re, a_re, a_im):
    ctx = PrecisionContext.for_size(6)
    assert alpha_det_deviation(6, complex(re), complex(a_re, a_im), ctx) < ctx.tolerance


def test_alpha_variant_reduces_to_baseline():
    # alpha = -i collapses cos(N phi) + alpha sin(N phi) to e^{-i N phi}
    phi = 1.1
    assert alpha_det(5, phi, -1j).rel_diff(det_A_closed(5, phi)) < 1e-14


def test_determinant_ratio_route():
    p = ModelParams(0.9, 0.3)
    ctx = PrecisionContext.for_size(5)
    for n in range(1, 6):
        assert z_tilde_via_ratio(n, p, ctx).rel_diff(z_tilde_det(n, p, ctx)) < 1e-12


def test_large_size_uses_enough_precision():
    p = ModelParams(0.9, 0.3)
    with warnings.catch_warnings():
        warnings.simplefilter("error", PrecisionWarning)
        value = partition_hankel(12, p)
    assert np.isfinite(value.log_magnitude)


def test_singular_phi_rejected():
    with pytest.raises(SingularParameterError):
        matrix_A(3, 0.0)


def test_matrix_a_corner_entry():
    # only the (0,0) entry carries the -i from the contour closing
    a = matrix_A(2, 0.8)
    c = 1 / math.tan(0.8)
    assert complex(a[0, 0]) == pytest.approx(c - 1j)
    assert complex(a[0, 1]) == pytest.approx(-(1 + c * c))

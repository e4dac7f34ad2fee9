"""Orthogonal-polynomial layer: the three classical families that show up
in the determinant representations, their kernels, and the triangular
su(1,1) machinery behind the parameter-connection identities.

Default evaluation is always the three-term recurrence; terminating
hypergeometric sums are kept as an independent verification path.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import gammaln, loggamma

from .errors import BranchError, SingularParameterError
from .params import SIN_CUTOFF
from .quadrature import QuadraturePlan, decay_cutoff

# --------------------------------------------------------------------------
# basic families


def hyp2f1_terminating(n: int, b: complex, c: complex, z: complex) -> complex:
    """2F1(-n, b; c; z) as the exact terminating sum."""
    acc = 1.0 + 0j
    term = 1.0 + 0j
    for k in range(n):
        denom = (c + k) * (k + 1)
        if denom == 0:
            raise SingularParameterError(f"Pochhammer ({c})_{k + 1} vanishes")
        term *= (-n + k) * (b + k) / denom * z
        acc += term
    return acc


def mp_eval(n: int, lam: complex, x: complex, phi: complex) -> complex:
    """Meixner-Pollaczek P_n^{(lam)}(x; phi) by upward recurrence:
    (n+1) P_{n+1} = [2x sin phi + 2(n+lam) cos phi] P_n - (n+2 lam-1) P_{n-1}.
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    s, co = cmath.sin(complex(phi)), cmath.cos(complex(phi))
    p_prev = 1.0 + 0j
    if n == 0:
        return p_prev
    p_cur = 2 * (lam * co + x * s)
    for k in range(1, n):
        p_next = ((2 * x * s + 2 * (k + lam) * co) * p_cur
                  - (k + 2 * lam - 1) * p_prev) / (k + 1)
        p_prev, p_cur = p_cur, p_next
    return p_cur


def mp_eval_hyp(n: int, lam: complex, x: complex, phi: complex) -> complex:
    """Verification path: (2 lam)_n / n! e^{i n phi} 2F1(-n, lam + ix; 2 lam; 1 - e^{-2 i phi})."""
    poch = 1.0 + 0j
    for k in range(n):
        poch *= (2 * lam + k) / (k + 1)
    z = 1 - cmath.exp(-2j * complex(phi))
    return poch * cmath.exp(1j * n * complex(phi)) * hyp2f1_terminating(n, lam + 1j * x, 2 * lam, z)


def mp_deriv(n: int, lam: complex, x: complex, phi: complex) -> complex:
    """d/dx P_n^{(lam)}(x; phi), by differentiating the recurrence and
    carrying (P_k, P_k') pairs upward."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    if n == 0:
        return 0j
    s, co = cmath.sin(complex(phi)), cmath.cos(complex(phi))
    p_prev, dp_prev = 1.0 + 0j, 0j
    p_cur, dp_cur = 2 * (lam * co + x * s), 2 * s
    for k in range(1, n):
        coeff = 2 * x * s + 2 * (k + lam) * co
        p_next = (coeff * p_cur - (k + 2 * lam - 1) * p_prev) / (k + 1)
        dp_next = (2 * s * p_cur + coeff * dp_cur
                   - (k + 2 * lam - 1) * dp_prev) / (k + 1)
        p_prev, p_cur = p_cur, p_next
        dp_prev, dp_cur = dp_cur, dp_next
    return dp_cur


def meixner_eval(n: int, x: complex, beta: complex, c: complex) -> complex:
    """Meixner M_n(x; beta, c) = 2F1(-n, -x; beta; 1 - 1/c)."""
    return hyp2f1_terminating(n, -x, beta, 1 - 1 / c)


def meixner_poly(n: int, beta: float, c: float) -> np.polynomial.Polynomial:
    """M_n(x; beta, c) as a polynomial in x (for exact derivatives)."""
    z = 1 - 1 / c
    acc = np.polynomial.Polynomial([1.0])
    term = np.polynomial.Polynomial([1.0])
    for k in range(n):
        # factor of (-n)_k/(beta)_k/k! times (-x + k)
        term = term * np.polynomial.Polynomial([k, -1.0])
        term = term * ((-n + k) * z / ((beta + k) * (k + 1)))
        acc = acc + term
    return acc


def laguerre_eval(n: int, x: float) -> float:
    """L_n(x) by the standard recurrence."""
    p_prev, p_cur = 1.0, 1.0 - x
    if n == 0:
        return p_prev
    for k in range(1, n):
        p_prev, p_cur = p_cur, ((2 * k + 1 - x) * p_cur - k * p_prev) / (k + 1)
    return p_cur


def laguerre_deriv(n: int, x: float) -> float:
    """L_n'(x) = -L_{n-1}^{(1)}(x) via x L_n'(x) = n (L_n(x) - L_{n-1}(x))."""
    if n == 0:
        return 0.0
    if abs(x) > 1e-8:
        return n * (laguerre_eval(n, x) - laguerre_eval(n - 1, x)) / x
    # series around zero: L_n'(0) = -n; second order from L_n''(0) = n(n-1)/2
    return -n + x * n * (n - 1) / 2


# --------------------------------------------------------------------------
# the orthonormal family behind the moment matrix of cot phi - i


def p_n_eval(n: int, x: complex, phi: complex) -> complex:
    """Orthonormal p_n(x) = e^{i phi/2} sqrt(sin phi) P_n^{(1/2)}((x+i)/2; phi)."""
    s = cmath.sin(complex(phi))
    if abs(s) < SIN_CUTOFF:
        raise SingularParameterError("sin(phi) vanishes")
    if s.real < 0 and abs(s.imag) < 1e-300:
        raise BranchError("sqrt(sin phi) on the negative real axis; "
                          "principal branch would be discontinuous here")
    return cmath.exp(0.5j * complex(phi)) * cmath.sqrt(s) * mp_eval(n, 0.5, (x + 1j) / 2, phi)


def p_n_deriv(n: int, x: complex, phi: complex) -> complex:
    s = cmath.sin(complex(phi))
    if abs(s) < SIN_CUTOFF:
        raise SingularParameterError("sin(phi) vanishes")
    return (0.5 * cmath.exp(0.5j * complex(phi)) * cmath.sqrt(s)
            * mp_deriv(n, 0.5, (x + 1j) / 2, phi)) if n else 0j


def leading_coefficient(n: int, phi: complex) -> complex:
    """kappa_n = e^{i phi/2} (sin phi)^{n+1/2} / n!."""
    s = cmath.sin(complex(phi))
    return cmath.exp(0.5j * complex(phi)) * s ** (n + 0.5) / math.factorial(n)


def cd_kernel(n: int, x: complex, y: complex, phi: complex) -> complex:
    """Christoffel-Darboux sum K_n(x, y) = sum_{k<n} p_k(x) p_k(y) in its
    two-term closed form, with the confluent formula near the diagonal."""
    ratio = n / cmath.sin(complex(phi))  # kappa_{n-1}/kappa_n
    if abs(x - y) < 1e-6 * (1 + abs(x) + abs(y)):
        return ratio * (p_n_deriv(n, x, phi) * p_n_eval(n - 1, x, phi)
                        - p_n_deriv(n - 1, x, phi) * p_n_eval(n, x, phi))
    return ratio * (p_n_eval(n, x, phi) * p_n_eval(n - 1, y, phi)
                    - p_n_eval(n - 1, x, phi) * p_n_eval(n, y, phi)) / (x - y)


def cd_kernel_direct(n: int, x: complex, y: complex, phi: complex) -> complex:
    """Oracle: the defining sum, term by term."""
    return sum(p_n_eval(k, x, phi) * p_n_eval(k, y, phi) for k in range(n))


# --------------------------------------------------------------------------
# weight functions


def weight_shifted(x, phi):
    """Pole-free weight e^{phi x} / (1 + e^{pi x}) after the contour shift.

    The caller owns the e^{-i phi} prefactor of the shifted orthogonality
    relation.  Valid for 0 < Re phi < pi; evaluated in a form that never
    overflows for large |x|.
    """
    phi = complex(phi)
    if not 0 < phi.real < math.pi:
        raise SingularParameterError("shifted weight needs 0 < Re phi < pi")
    x = np.asarray(x, dtype=float)
    # log(1 + e^{pi x}) is stable via logaddexp; the full exponent keeps a
    # bounded real part for any x.
    out = np.exp(phi * x - np.logaddexp(0.0, math.pi * x))
    if out.ndim == 0:
        return complex(out)
    return out


def weight_omega(x: float, phi: complex) -> complex:
    """Principal-value weight e^{phi x} / (1 - e^{pi x}); singular at x = 0."""
    if x == 0:
        raise ZeroDivisionError("omega has a pole at x = 0; use the shifted form")
    return cmath.exp(complex(phi) * x) / (1 - math.exp(math.pi * x))


def moment_via_contour(m: int, phi: complex, plan: Optional[QuadraturePlan] = None) -> complex:
    """v.p. integral of x^m omega(x) evaluated on the shifted contour:
    e^{-i phi} int (x - i)^m e^{phi x}/(1 + e^{pi x}) dx.

    Equals T_m(cot phi) - i [m = 0]; used as the quadrature oracle for the
    moment-matrix entries.
    """
    phi = complex(phi)
    if plan is None:
        lo = -decay_cutoff(phi.real, poly_order=m)
        hi = decay_cutoff(math.pi - phi.real, poly_order=m)
        plan = QuadraturePlan.on_interval(lo, hi)
    x = plan.nodes
    vals = (x - 1j) ** m * weight_shifted(x, phi)
    return cmath.exp(-1j * phi) * complex(np.sum(vals * plan.weights))


# --------------------------------------------------------------------------
# parameter-connection identities


def _gamma_ratio(n: int, k: int, two_lam: float) -> float:
    # Gamma(n + 2 lam) / Gamma(k + 2 lam)
    return math.exp(gammaln(n + two_lam) - gammaln(k + two_lam))


def connection_coeffs(n: int, lam: float, tau: complex, phi: complex) -> list:
    """Coefficients C_k with P_n^{(lam)}(x; tau) = sum_k C_k P_k^{(lam)}(x; phi).

    C_k = Gamma(n+2 lam)/(Gamma(k+2 lam) (n-k)!) *
          [sin(phi - tau)]^{n-k} (sin tau)^k / (sin phi)^n,
    from cot tau - cot phi = sin(phi - tau)/(sin tau sin phi).
    """
    s_phi = cmath.sin(complex(phi))
    if abs(s_phi) < SIN_CUTOFF:
        raise SingularParameterError("sin(phi) vanishes")
    s_tau = cmath.sin(complex(tau))
    s_diff = cmath.sin(complex(phi) - complex(tau))
    out = []
    for k in range(n + 1):
        c = _gamma_ratio(n, k, 2 * lam) / math.factorial(n - k)
        c *= _pow(s_diff, n - k) * _pow(s_tau, k) / _pow(s_phi, n)
        out.append(c)
    return out


def _pow(z: complex, p: int) -> complex:
    return 1.0 + 0j if p == 0 else z ** p


def inm_closed(n: int, m: int, lam: float, tau: complex, omega: complex,
               phi: float) -> complex:
    """Closed form of the cross-parameter overlap integral

    (1/2 pi) int P_n^{(lam)}(x; tau) P_m^{(lam)}(x; omega)
             |Gamma(lam + ix)|^2 e^{(2 phi - pi) x} dx

    as the finite sum over the shared connection index; degenerate
    tau = phi or omega = phi just truncates the sum.
    """
    if not 0 < phi < math.pi or lam <= 0:
        raise SingularParameterError("need real lam > 0 and 0 < phi < pi")
    s_phi = math.sin(phi)
    if s_phi < SIN_CUTOFF:
        raise SingularParameterError("sin(phi) vanishes")
    st, so = cmath.sin(complex(tau)), cmath.sin(complex(omega))
    dt, do = cmath.sin(phi - complex(tau)), cmath.sin(phi - complex(omega))
    norm = (2 * s_phi) ** (-2 * lam)
    acc = 0j
    for k in range(min(n, m) + 1):
        c = math.exp(gammaln(n + 2 * lam) + gammaln(m + 2 * lam) - gammaln(k + 2 * lam)
                     - gammaln(n - k + 1) - gammaln(m - k + 1) - gammaln(k + 1))
        acc += (c * _pow(dt, n - k) * _pow(do, m - k) * _pow(st * so, k)
                / _pow(s_phi, n + m))
    return norm * acc


def inm_quadrature(n: int, m: int, lam: float, tau: complex, omega: complex,
                   phi: float, plan: Optional[QuadraturePlan] = None) -> complex:
    """Direct quadrature of the overlap integral; |Gamma(lam+ix)|^2 goes
    through log-gamma so large |x| never overflows."""
    if not 0 < phi < math.pi or lam <= 0:
        raise SingularParameterError("need real lam > 0 and 0 < phi < pi")
    if plan is None:
        order = n + m + int(2 * lam)
        hi = decay_cutoff(2 * math.pi - 2 * phi, poly_order=order)
        lo = -decay_cutoff(2 * phi, poly_order=order)
        plan = QuadraturePlan.on_interval(lo, hi)
    x = plan.nodes
    log_w = 2 * np.real(loggamma(lam + 1j * x)) + (2 * phi - math.pi) * x
    pn = np.array([mp_eval(n, lam, xi, tau) for xi in x])
    pm = np.array([mp_eval(m, lam, xi, omega) for xi in x])
    vals = pn * pm * np.exp(log_w)
    return complex(np.sum(vals * plan.weights)) / (2 * math.pi)


# --------------------------------------------------------------------------
# su(1,1) triangular matrices


@dataclass(frozen=True)
class Su11Matrices:
    dimension: int
    convention: str
    j_plus: np.ndarray
    j_zero: np.ndarray
    j_minus: np.ndarray


def su11_matrices(m: int, lam: float = 0.5, convention: str = "fixed-half") -> Su11Matrices:
    """Truncated raising/diagonal/lowering matrices.

    'fixed-half' is the lam = 1/2 realization (J_+ entries n, J_0 entries
    n + 1/2); 'general' carries arbitrary lam (J_+ entries n + 2 lam - 1,
    J_0 entries n + lam).  Commutators close exactly on the top-left
    (m-1) x (m-1) block; the truncation corrupts the final row/column.
    """
    if m < 2:
        raise ValueError("need dimension >= 2")
    if convention == "fixed-half":
        lam = 0.5
    elif convention != "general":
        raise ValueError(f"unknown convention {convention!r}")
    n_idx = np.arange(m, dtype=float)
    j_plus = np.diag(n_idx[1:] + 2 * lam - 1, k=-1)
    j_zero = np.diag(n_idx + lam)
    j_minus = np.diag(n_idx[1:], k=1)
    return Su11Matrices(m, convention, j_plus, j_zero, j_minus)


def exp_jplus_entries(alpha: complex, lam: float, m: int) -> np.ndarray:
    """Closed-form exp(alpha J_+): entries Gamma(n+2 lam)/(Gamma(k+2 lam) (n-k)!)
    alpha^{n-k}; binomials when lam = 1/2."""
    out = np.zeros((m, m), dtype=complex)
    for n in range(m):
        for k in range(n + 1):
            out[n, k] = (_gamma_ratio(n, k, 2 * lam) / math.factorial(n - k)
                         * _pow(complex(alpha), n - k))
    return out


def key_conjugation_check(alpha: complex, lam: float, m: int) -> float:
    """Residual of exp(a J_+)(J_- + J_+) = [J_- - 2a J_0 + (1+a^2) J_+] exp(a J_+)
    on the masked top-left block."""
    if m < 3:
        raise ValueError("need dimension >= 3")
    su = su11_matrices(m, lam, convention="general")
    e = exp_jplus_entries(alpha, lam, m)
    lhs = e @ (su.j_minus + su.j_plus)
    rhs = (su.j_minus - 2 * alpha * su.j_zero + (1 + alpha * alpha) * su.j_plus) @ e
    resid = (lhs - rhs)[: m - 1, : m - 1]
    scale = max(1.0, float(np.max(np.abs(lhs[: m - 1, : m - 1]))))
    return float(np.max(np.abs(resid))) / scale


def masked_commutator_residuals(su: Su11Matrices) -> dict:
    """Deviation of [J_-, J_+] = 2 J_0 and [J_pm, J_0] = -/+ J_pm on the
    truncation-safe block."""
    k = su.dimension - 1
    c1 = su.j_minus @ su.j_plus - su.j_plus @ su.j_minus - 2 * su.j_zero
    c2 = su.j_plus @ su.j_zero - su.j_zero @ su.j_plus + su.j_plus
    c3 = su.j_minus @ su.j_zero - su.j_zero @ su.j_minus - su.j_minus
    return {
        "[J-,J+]-2J0": float(np.max(np.abs(c1[:k, :k]))),
        "[J+,J0]+J+": float(np.max(np.abs(c2[:k, :k]))),
        "[J-,J0]-J-": float(np.max(np.abs(c3[:k, :k]))),
    }

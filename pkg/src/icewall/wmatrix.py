"""Finite-size determinant route: the symmetric W matrix in closed form,
its Gauss decomposition, det(I - zeta W), and the matrix-level trace
identities that back the reconstruction formula.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import mpmath
import numpy as np
from scipy.linalg import expm

from .determinants import mp_logdet
from .errors import BranchError, SingularParameterError
from .logscale import LogScaledValue, PrecisionContext
from .orthopoly import exp_jplus_entries, hyp2f1_terminating, mp_eval, su11_matrices
from .params import ModelParams
from .quadrature import QuadraturePlan, decay_cutoff


@dataclass(frozen=True)
class BetaGamma:
    """The two R-matrix amplitudes plus the loop-counting factor zeta."""

    beta: complex
    gamma: complex
    zeta: complex

    @classmethod
    def from_params(cls, p: ModelParams) -> "BetaGamma":
        sp = cmath.sin(p.phi_plus)
        return cls(
            beta=cmath.sin(p.phi_minus) / sp,
            gamma=cmath.sin(2 * p.eta) / sp,
            zeta=cmath.exp(-2j * p.eta),
        )

    @classmethod
    def rational(cls, lam: float, eta: float) -> "BetaGamma":
        """sin(*) -> (*) degeneration of the weights; zeta degenerates to 1."""
        if lam + eta == 0:
            raise SingularParameterError("rational weights need lambda + eta != 0")
        return cls(beta=(lam - eta) / (lam + eta), gamma=2 * eta / (lam + eta), zeta=1.0)


def w_entry(j: int, k: int, bg: BetaGamma, branch: str = "binomial") -> complex:
    """W_jk = sum_n C(j,n) C(k,n) beta^{2n+1} gamma^{j+k-2n}; symmetric in (j, k).

    The equivalent hypergeometric branch beta gamma^{j+k} 2F1(-j,-k;1;(beta/gamma)^2)
    is kept for cross-checks and needs gamma != 0; the binomial sum handles
    gamma = 0 (only the diagonal survives) without special-casing.
    """
    if branch == "hyp":
        if bg.gamma == 0:
            raise ZeroDivisionError("hypergeometric branch needs gamma != 0")
        return (bg.beta * bg.gamma ** (j + k)
                * hyp2f1_terminating(min(j, k), -max(j, k), 1.0,
                                     (bg.beta / bg.gamma) ** 2))
    if branch != "binomial":
        raise ValueError(f"unknown branch {branch!r}")
    acc = 0j
    for n in range(min(j, k) + 1):
        power = j + k - 2 * n
        g = bg.gamma ** power if power else 1.0
        acc += math.comb(j, n) * math.comb(k, n) * bg.beta ** (2 * n + 1) * g
    return acc


def w_matrix(n: int, bg: BetaGamma) -> np.ndarray:
    out = np.empty((n, n), dtype=complex)
    for j in range(n):
        for k in range(j + 1):
            out[j, k] = out[k, j] = w_entry(j, k, bg)
    return out


def w_matrix_gauss(n: int, bg: BetaGamma) -> np.ndarray:
    """Gauss decomposition exp(gamma J_+) diag(beta^{2m+1}) exp(gamma J_-)."""
    lower = exp_jplus_entries(bg.gamma, 0.5, n)
    diag = np.diag([bg.beta ** (2 * m + 1) for m in range(n)])
    return lower @ diag @ lower.T


def w_entry_integral(j: int, k: int, p: ModelParams,
                     plan: Optional[QuadraturePlan] = None) -> complex:
    """Quadrature oracle: 2 sin(phi_-) int P_j P_k e^{2 x phi_+}/(1 + e^{2 pi x}) dx
    with P = P^{(1/2)}(.; phi_-)."""
    pp = complex(p.phi_plus)
    if not 0 < pp.real < math.pi:
        raise SingularParameterError("integral form needs 0 < Re phi_+ < pi")
    if plan is None:
        hi = decay_cutoff(2 * math.pi - 2 * pp.real, poly_order=j + k)
        lo = -decay_cutoff(2 * pp.real, poly_order=j + k)
        plan = QuadraturePlan.on_interval(lo, hi)
    x = plan.nodes
    weight = np.exp(2 * pp * x - np.logaddexp(0.0, 2 * math.pi * x))
    pj = np.array([mp_eval(j, 0.5, xi, p.phi_minus) for xi in x])
    pk = np.array([mp_eval(k, 0.5, xi, p.phi_minus) for xi in x])
    return 2 * cmath.sin(p.phi_minus) * complex(np.sum(pj * pk * weight * plan.weights))


def _w_matrix_mp(n: int, p: ModelParams):
    """W and zeta recomputed from the spectral parameters at mp precision."""
    lam, eta = mpmath.mpc(p.lam), mpmath.mpc(p.eta)
    sp = mpmath.sin(lam + eta)
    beta = mpmath.sin(lam - eta) / sp
    gamma = mpmath.sin(2 * eta) / sp
    zeta = mpmath.exp(-2j * eta)
    w = mpmath.zeros(n, n)
    for j in range(n):
        for k in range(j + 1):
            acc = mpmath.mpc(0)
            for m in range(min(j, k) + 1):
                acc += (math.comb(j, m) * math.comb(k, m)
                        * beta ** (2 * m + 1) * gamma ** (j + k - 2 * m))
            w[j, k] = w[k, j] = acc
    return w, zeta


def z_tilde_det(n: int, p: ModelParams,
                ctx: Optional[PrecisionContext] = None) -> LogScaledValue:
    """det(I - zeta W) at ctx precision; zeta is always recomputed from eta."""
    ctx = ctx or PrecisionContext.for_size(n)
    with ctx.workprec():
        w, zeta = _w_matrix_mp(n, p)
        m = mpmath.eye(n) - zeta * w
    return mp_logdet(m, ctx, warn_label="w-det")


def full_partition(n: int, p: ModelParams,
                   ctx: Optional[PrecisionContext] = None) -> LogScaledValue:
    """Restore the symmetric-weight normalization:
    Z_N = det(I - zeta W) [sin phi_+]^{N^2} e^{-i nu N}."""
    zt = z_tilde_det(n, p, ctx)
    log = n * n * cmath.log(cmath.sin(p.phi_plus)) - 1j * complex(p.nu) * n
    return zt.scale_log(log)


def full_partition_gauss(n: int, p: ModelParams) -> LogScaledValue:
    """Same normalization as full_partition, but with W assembled from its
    triangular Gauss factors (double precision; independent construction)."""
    bg = BetaGamma.from_params(p)
    m = np.eye(n) - bg.zeta * w_matrix_gauss(n, bg)
    sign, logabs = np.linalg.slogdet(m)
    zt = LogScaledValue(float(logabs), float(np.angle(sign)))
    log = n * n * cmath.log(cmath.sin(p.phi_plus)) - 1j * complex(p.nu) * n
    return zt.scale_log(log)


def rational_z_tilde(n: int, lam: float, eta: float) -> LogScaledValue:
    """det(I - W) for the rational degeneration (zeta = 1)."""
    bg = BetaGamma.rational(lam, eta)
    m = np.eye(n) - bg.zeta * w_matrix(n, bg)
    sign, logabs = np.linalg.slogdet(m)
    return LogScaledValue(float(logabs), float(np.angle(sign)))


def k_infty_matrix(m: int, nu: complex) -> np.ndarray:
    """Truncated Jacobi matrix (J_- + J_+ - 2 cos(nu) J_0) / sin(nu)."""
    if m < 2:
        raise ValueError("need dimension >= 2")
    s = cmath.sin(complex(nu))
    if abs(s) < 1e-12:
        raise SingularParameterError("sin(nu) vanishes")
    su = su11_matrices(m, convention="fixed-half")
    k = (su.j_minus + su.j_plus - 2 * cmath.cos(complex(nu)) * su.j_zero) / s
    if abs(complex(nu).imag) == 0:
        return k.real
    return k


def k_n_log(n: int, p: ModelParams) -> np.ndarray:
    """K_N = ln(W) / (2 eta) through the eigendecomposition of symmetric W.

    Restricted to real spectral parameters: the principal branch for a
    complex W spectrum is ambiguous, so that case is refused.
    """
    if abs(p.lam.imag) > 1e-14 or abs(p.eta.imag) > 1e-14:
        raise BranchError("matrix log restricted to real (lambda, eta)")
    bg = BetaGamma.from_params(p)
    w = w_matrix(n, bg).real
    evals, evecs = np.linalg.eigh(w)
    if np.any(evals <= 0):
        raise BranchError("W has eigenvalues on the closed negative real axis")
    return (evecs * (np.log(evals) / (2 * p.eta.real))) @ evecs.T


def trace_identity_check(matrices: list, multiplier: complex = 1.0,
                         reference: Optional[complex] = None) -> float:
    """|det(I + multiplier * prod_i exp(A_i)) - reference|.

    Without an explicit reference the comparison target is
    det(I + multiplier * exp(sum A_i)), exact whenever the A_i commute.
    """
    dims = {m.shape for m in matrices}
    if len(dims) != 1 or any(s[0] != s[1] for s in dims):
        raise ValueError("matrices must share one square dimension")
    n = matrices[0].shape[0]
    prod = np.eye(n, dtype=complex)
    for m in matrices:
        prod = prod @ expm(np.asarray(m, dtype=complex))
    lhs = np.linalg.det(np.eye(n) + multiplier * prod)
    if reference is None:
        total = sum(np.asarray(m, dtype=complex) for m in matrices)
        reference = np.linalg.det(np.eye(n) + multiplier * expm(total))
    return float(abs(lhs - reference))


def reconstruction_deviation(n: int, p: ModelParams) -> float:
    """det(I - zeta W) against det(I + (-zeta) e^{gamma J_+} beta^{2 J_0} e^{gamma J_-}),
    the exponentials evaluated by scaling-and-squaring rather than closed form."""
    bg = BetaGamma.from_params(p)
    su = su11_matrices(n, convention="fixed-half")
    mats = [bg.gamma * su.j_plus,
            2 * cmath.log(bg.beta) * su.j_zero,
            bg.gamma * su.j_minus]
    reference = np.linalg.det(np.eye(n) - bg.zeta * w_matrix(n, bg))
    return trace_identity_check(mats, multiplier=-bg.zeta, reference=reference)

"""The Hankel-determinant route to the partition function.

Entries of the moment matrices are high-order derivatives of cot, taken
symbolically: d^k/dphi^k cot(phi) = T_k(cot phi) for exact integer
polynomials T_k with T_0(c) = c and T_{k+1} = -(1 + c^2) T_k'.  Numerical
differencing is hopeless here (entries grow like (j+k)!), the polynomial
route costs one Horner evaluation per entry at working precision.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from typing import Optional

import mpmath

from .determinants import lu_det, mp_logdet
from .errors import SingularParameterError
from .logscale import LogScaledValue, PrecisionContext
from .params import SIN_CUTOFF, ModelParams


@dataclass(frozen=True)
class CotDerivPoly:
    """Exact integer coefficients of T_k (index = power of cot phi)."""

    k: int
    coeffs: tuple

    def __call__(self, c):
        acc = 0 * c
        for coef in reversed(self.coeffs):
            acc = acc * c + coef
        return acc


@functools.lru_cache(maxsize=None)
def cot_derivative_poly(k: int) -> CotDerivPoly:
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    if k == 0:
        return CotDerivPoly(0, (0, 1))
    prev = cot_derivative_poly(k - 1).coeffs
    deriv = tuple(i * prev[i] for i in range(1, len(prev)))
    out = [0] * (len(prev) + 1)
    for i, d in enumerate(deriv):
        out[i] -= d
        out[i + 2] -= d
    return CotDerivPoly(k, tuple(out))


def _require_regular(phi: complex, label: str = "phi"):
    if abs(cmath.sin(complex(phi))) < SIN_CUTOFF:
        raise SingularParameterError(f"sin({label}) vanishes at {phi}")


def hankel_H(n: int, p: ModelParams, ctx: Optional[PrecisionContext] = None):
    """N x N matrix H_jk = T_{j+k}(cot phi_minus) - T_{j+k}(cot phi_plus)."""
    ctx = ctx or PrecisionContext.for_size(n)
    with ctx.workprec():
        cot_m = mpmath.cot(mpmath.mpc(p.phi_minus))
        cot_p = mpmath.cot(mpmath.mpc(p.phi_plus))
        moments = [cot_derivative_poly(s)(cot_m) - cot_derivative_poly(s)(cot_p)
                   for s in range(2 * n - 1)]
        return mpmath.matrix([[moments[j + k] for k in range(n)] for j in range(n)])


def matrix_A(n: int, phi: complex, ctx: Optional[PrecisionContext] = None,
             alpha: complex = -1j):
    """N x N matrix of derivatives of cot(phi) + alpha (alpha = -i default)."""
    _require_regular(phi)
    ctx = ctx or PrecisionContext.for_size(n)
    with ctx.workprec():
        cot = mpmath.cot(mpmath.mpc(phi))
        moments = [cot_derivative_poly(s)(cot) for s in range(2 * n - 1)]
        moments[0] += mpmath.mpc(alpha)
        return mpmath.matrix([[moments[j + k] for k in range(n)] for j in range(n)])


def _log_factorial_sq_sum(n: int) -> float:
    # 2 * sum_{k=1}^{N-1} log k!
    return 2.0 * sum(math.lgamma(k + 1) for k in range(1, n))


def partition_hankel(n: int, p: ModelParams,
                     ctx: Optional[PrecisionContext] = None) -> LogScaledValue:
    """Z_N = [sin phi_- sin phi_+]^{N^2} / prod (k!)^2 * det H, log-scaled."""
    ctx = ctx or PrecisionContext.for_size(n)
    logdet = mp_logdet(hankel_H(n, p, ctx), ctx, warn_label="hankel")
    pref = n * n * (cmath.log(cmath.sin(p.phi_minus)) + cmath.log(cmath.sin(p.phi_plus)))
    pref -= _log_factorial_sq_sum(n)
    return logdet.scale_log(pref)


def det_A_closed(n: int, phi: complex) -> LogScaledValue:
    """Closed form e^{-i N phi} (sin phi)^{-N^2} prod (n!)^2, log-scaled."""
    _require_regular(phi)
    log = -1j * n * complex(phi) - n * n * cmath.log(cmath.sin(complex(phi)))
    log += _log_factorial_sq_sum(n)
    return LogScaledValue.from_log(log)


def alpha_det(n: int, phi: complex, alpha: complex) -> LogScaledValue:
    """Closed form [cos N phi + alpha sin N phi] (sin phi)^{-N^2} prod (n!)^2."""
    _require_regular(phi)
    head = cmath.cos(n * complex(phi)) + complex(alpha) * cmath.sin(n * complex(phi))
    if head == 0:
        return LogScaledValue(float("-inf"), 0.0)
    log = cmath.log(head) - n * n * cmath.log(cmath.sin(complex(phi)))
    log += _log_factorial_sq_sum(n)
    return LogScaledValue.from_log(log)


def alpha_det_deviation(n: int, phi: complex, alpha: complex,
                        ctx: Optional[PrecisionContext] = None) -> float:
    """|LU det / closed form - 1| for the cot+alpha moment matrix, computed
    entirely at ctx precision (the interesting tolerances sit far below
    double resolution)."""
    ctx = ctx or PrecisionContext.for_size(n)
    with ctx.workprec():
        det, _ = lu_det(matrix_A(n, phi, ctx, alpha=alpha))
        phi_mp = mpmath.mpc(phi)
        head = mpmath.cos(n * phi_mp) + mpmath.mpc(alpha) * mpmath.sin(n * phi_mp)
        closed = head * mpmath.sin(phi_mp) ** (-n * n)
        for k in range(1, n):
            closed *= mpmath.factorial(k) ** 2
        return float(abs(det / closed - 1))


def det_a_deviation(n: int, phi: complex,
                    ctx: Optional[PrecisionContext] = None) -> float:
    """alpha = -i special case: LU versus e^{-i N phi}(sin phi)^{-N^2} prod (n!)^2."""
    return alpha_det_deviation(n, phi, -1j, ctx)


def z_tilde_via_ratio(n: int, p: ModelParams,
                      ctx: Optional[PrecisionContext] = None) -> LogScaledValue:
    """Quantum-group-normalized partition value from the Hankel route:
    Z / ([sin phi_+]^{N^2} e^{-i N phi_-})."""
    z = partition_hankel(n, p, ctx)
    log = -n * n * cmath.log(cmath.sin(p.phi_plus)) + 1j * n * complex(p.phi_minus)
    return z.scale_log(log)

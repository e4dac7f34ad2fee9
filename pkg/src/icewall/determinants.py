"""Pivoted LU determinants in mpmath extended precision."""

from __future__ import annotations

import math
import warnings

import mpmath

from .errors import PrecisionWarning
from .logscale import LogScaledValue, PrecisionContext


def lu_det(matrix):
    """Determinant of an mpmath matrix by pivoted LU at the caller's precision.

    Returns (det, pivot_growth) where pivot_growth = max|pivot| / min|pivot|
    is a cheap conditioning estimate.
    """
    n = matrix.rows
    m = matrix.copy()
    det = mpmath.mpc(1)
    max_piv = mpmath.mpf(0)
    min_piv = mpmath.inf
    for col in range(n):
        pivot_row = max(range(col, n), key=lambda r: abs(m[r, col]))
        if m[pivot_row, col] == 0:
            return mpmath.mpc(0), mpmath.inf
        if pivot_row != col:
            for k in range(col, n):
                m[col, k], m[pivot_row, k] = m[pivot_row, k], m[col, k]
            det = -det
        piv = m[col, col]
        det *= piv
        max_piv = max(max_piv, abs(piv))
        min_piv = min(min_piv, abs(piv))
        for r in range(col + 1, n):
            factor = m[r, col] / piv
            for k in range(col + 1, n):
                m[r, k] -= factor * m[col, k]
    return det, max_piv / min_piv


def mp_logdet(matrix, ctx: PrecisionContext, warn_label: str = "determinant") -> LogScaledValue:
    """Log-scaled LU determinant; warns when pivot growth eats more than
    half of the mantissa budget."""
    with ctx.workprec():
        det, growth = lu_det(matrix)
        if det == 0:
            return LogScaledValue(float("-inf"), 0.0)
        if mpmath.isfinite(growth):
            growth_bits = math.log2(max(float(growth), 1.0))
            if growth_bits > ctx.mantissa_bits / 2:
                warnings.warn(
                    f"{warn_label}: pivot growth ~2^{growth_bits:.0f} exceeds half "
                    f"of the {ctx.mantissa_bits}-bit budget",
                    PrecisionWarning,
                )
        return LogScaledValue.from_mpc(det)

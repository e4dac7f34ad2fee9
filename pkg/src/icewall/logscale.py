"""Overflow-safe scalar values and the extended-precision policy.

Partition functions carry factors like prod (k!)^2 and (sin phi)^(N^2),
which overflow doubles long before N gets interesting.  Everything that
can be huge is passed around as a (log-magnitude, phase-angle) pair.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath


@dataclass(frozen=True)
class LogScaledValue:
    """A complex number stored as exp(log_magnitude) * exp(i * angle)."""

    log_magnitude: float
    angle: float

    @classmethod
    def from_complex(cls, z: complex) -> "LogScaledValue":
        z = complex(z)
        if z == 0:
            return cls(float("-inf"), 0.0)
        return cls(math.log(abs(z)), cmath.phase(z))

    @classmethod
    def from_mpc(cls, z) -> "LogScaledValue":
        """Build from an mpmath scalar, taking the log at mp precision."""
        if z == 0:
            return cls(float("-inf"), 0.0)
        w = mpmath.log(z)
        return cls(float(mpmath.re(w)), float(mpmath.im(w)))

    @classmethod
    def from_log(cls, log_z: complex) -> "LogScaledValue":
        return cls(float(log_z.real), _wrap_angle(float(log_z.imag)))

    @property
    def phase(self) -> complex:
        """Unit-modulus phase factor."""
        return cmath.exp(1j * self.angle)

    @property
    def value(self) -> complex:
        """Plain complex value; overflows for log_magnitude > ~709."""
        return cmath.exp(complex(self.log_magnitude, self.angle))

    def __mul__(self, other: "LogScaledValue") -> "LogScaledValue":
        return LogScaledValue(
            self.log_magnitude + other.log_magnitude,
            _wrap_angle(self.angle + other.angle),
        )

    def __truediv__(self, other: "LogScaledValue") -> "LogScaledValue":
        return LogScaledValue(
            self.log_magnitude - other.log_magnitude,
            _wrap_angle(self.angle - other.angle),
        )

    def scale_log(self, log_factor: complex) -> "LogScaledValue":
        """Multiply by exp(log_factor) without leaving log space."""
        return LogScaledValue(
            self.log_magnitude + log_factor.real,
            _wrap_angle(self.angle + log_factor.imag),
        )

    def rel_diff(self, other: "LogScaledValue") -> float:
        """|a - b| / max(|a|, |b|), computed safely in log space."""
        m = max(self.log_magnitude, other.log_magnitude)
        if m == float("-inf"):
            return 0.0
        a = cmath.exp(complex(self.log_magnitude - m, self.angle))
        b = cmath.exp(complex(other.log_magnitude - m, other.angle))
        return abs(a - b) / max(abs(a), abs(b))


def _wrap_angle(theta: float) -> float:
    return math.remainder(theta, 2.0 * math.pi)


@dataclass(frozen=True)
class PrecisionContext:
    """Mantissa budget for the extended-precision determinant paths.

    Comparison tolerance follows the half-mantissa policy: results are
    trusted to 2^(-mantissa_bits/2).
    """

    mantissa_bits: int = 128

    def __post_init__(self):
        if self.mantissa_bits < 64:
            raise ValueError("mantissa_bits must be >= 64")

    @classmethod
    def for_size(cls, n: int) -> "PrecisionContext":
        # Cancellation in det H grows with prod (k!)^2; empirical headroom x2.
        return cls(max(128, 64 + 16 * n))

    @property
    def tolerance(self) -> float:
        return 2.0 ** (-self.mantissa_bits / 2)

    def workprec(self):
        return mpmath.workprec(self.mantissa_bits)

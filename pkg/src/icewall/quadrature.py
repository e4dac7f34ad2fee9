"""Piecewise Gauss-Legendre plans for the integral representations.

All integrands here are analytic on the (shifted) real contour, so fixed
panels of unit width with a few dozen nodes converge far below the target
tolerances; panel placement just has to cover the exponential tails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class QuadraturePlan:
    nodes: np.ndarray
    weights: np.ndarray
    lo: float = 0.0
    hi: float = 0.0

    def __len__(self) -> int:
        return len(self.nodes)

    @classmethod
    def on_interval(cls, a: float, b: float, panel_width: float = 1.0,
                    nodes_per_panel: int = 32, max_nodes: int = 2000) -> "QuadraturePlan":
        n_panels = max(1, int(math.ceil((b - a) / panel_width)))
        while n_panels * nodes_per_panel > max_nodes and nodes_per_panel > 8:
            nodes_per_panel //= 2
        if n_panels * nodes_per_panel > max_nodes:
            n_panels = max_nodes // nodes_per_panel
        x, w = np.polynomial.legendre.leggauss(nodes_per_panel)
        edges = np.linspace(a, b, n_panels + 1)
        nodes, weights = [], []
        for lo, hi in zip(edges[:-1], edges[1:]):
            half = 0.5 * (hi - lo)
            mid = 0.5 * (hi + lo)
            nodes.append(mid + half * x)
            weights.append(half * w)
        return cls(np.concatenate(nodes), np.concatenate(weights), float(a), float(b))

    def refined(self) -> "QuadraturePlan":
        """Same interval with doubled node density (for convergence checks)."""
        a, b = self.lo, self.hi
        n = 2 * len(self.nodes)
        per_panel = 32
        panels = max(1, n // per_panel)
        width = (b - a) / panels
        return QuadraturePlan.on_interval(a, b, panel_width=width,
                                          nodes_per_panel=per_panel,
                                          max_nodes=2 * n)


def decay_cutoff(rate: float, poly_order: int = 0, log_tol: float = -18 * math.log(10)) -> float:
    """Smallest L with exp(-rate*L) * L^poly_order below the tolerance.

    `rate` must be positive; poly_order accounts for polynomial growth of
    the non-exponential part of the integrand.
    """
    if rate <= 0:
        raise ValueError("decay rate must be positive")
    L = (-log_tol + 5.0) / rate
    for _ in range(40):
        new = (-log_tol + 5.0 + poly_order * math.log(max(L, 2.0))) / rate
        if abs(new - L) < 1e-9:
            break
        L = new
    return L

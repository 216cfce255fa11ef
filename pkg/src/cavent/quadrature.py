"""Gauss-Legendre nodes and weights on [-1, 1].

Nodes are computed as roots of the Legendre polynomial P_n by Newton
iteration started from the Chebyshev approximation
x_i ~ cos(pi (4i+3) / (4n+2)); weights are 2 / ((1-x^2) P_n'(x)^2).
The result is cached per order since sweep evaluations reuse one grid.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = ["gauss_legendre_nodes"]


def _legendre_and_deriv(n: int, x: np.ndarray):
    """P_n(x) and P_n'(x) by the three-term recurrence."""
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    # derivative from P_n and P_{n-1}
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


@lru_cache(maxsize=64)
def _cached(n: int):
    if n < 1:
        raise ValueError("order must be >= 1")
    if n == 1:
        return np.array([0.0]), np.array([2.0])
    i = np.arange(n)
    x = np.cos(np.pi * (4 * i + 3) / (4 * n + 2))
    for _ in range(100):
        p, dp = _legendre_and_deriv(n, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    p, dp = _legendre_and_deriv(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    # enforce the exact symmetry of the rule and return ascending nodes
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return x[::-1].copy(), w[::-1].copy()


def gauss_legendre_nodes(n: int):
    """Return (nodes, weights); nodes ascending, weights summing to 2."""
    x, w = _cached(n)
    return x.copy(), w.copy()

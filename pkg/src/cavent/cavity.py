"""Effective cavity photon propagator.

The two layers sit at depths d1, d2 inside a cavity of length L.  Each
standing-wave mode n couples to the pair through the geometric weight
zeta_n = sin(n pi d1 / L) sin(n pi d2 / L); the mode sum

    D(q) = sum_n zeta_n / (q^2 - (n pi / L)^2 + i eps),   q^2 = (q^0)^2 - |q|^2

is truncated at n_max.  The n = 0 weight vanishes identically, so the sum
starts at n = 1.  Overall coupling constants are applied by the kernel.
"""

from __future__ import annotations

import numpy as np

__all__ = ["mode_weights", "propagator_d"]


def mode_weights(d1: float, d2: float, L: float, n_max: int) -> np.ndarray:
    """Geometric mode weights zeta_n for n = 1 .. n_max."""
    if not (0.0 <= d1 <= L and 0.0 <= d2 <= L):
        raise ValueError("layer positions must lie in [0, L]")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    n = np.arange(1, n_max + 1)
    return np.sin(n * np.pi * d1 / L) * np.sin(n * np.pi * d2 / L)


def propagator_d(q0, q_spatial, weights: np.ndarray, L: float, eps: float):
    """Truncated mode sum D(q0, |q|).

    Broadcasts over the leading shape of q0/q_spatial; the mode axis is
    summed out.  eps > 0 keeps every term finite on resonance.
    """
    q0 = np.asarray(q0, dtype=float)
    qs = np.asarray(q_spatial, dtype=float)
    n = np.arange(1, len(weights) + 1)
    q2 = q0 * q0 - qs * qs
    den = q2[..., None] - (n * np.pi / L) ** 2 + 1j * eps
    return (weights / den).sum(axis=-1)

"""Dirac spinor algebra in 2+1 dimensions.

Conventions: gamma^0 = sigma_z, gamma^1 = sigma_z sigma_x,
gamma^2 = sigma_z sigma_y.  Band index +1 is an electron (u spinor,
p^0 = +E), -1 a hole (v spinor, p^0 = -E).  The two-body pseudospin basis
is ordered (A1A2, A1B2, B1A2, B1B2) throughout.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "CHANNELS",
    "energy",
    "chi",
    "spinor",
    "vertex_product",
    "vertex_matrix",
]

# the four band channels, in the fixed order used everywhere
CHANNELS = (("ee", +1, +1), ("eh", +1, -1), ("he", -1, +1), ("hh", -1, -1))


def energy(p, m):
    """Dispersion E(p) = sqrt(p^2 + m^2), elementwise."""
    return np.hypot(p, m)


def chi(p, m, band):
    """Band factor chi_band = p / (band*E + m).

    Near the hole cancellation band*E + m -> 0 the algebraically equivalent
    form (band*E - m) / p is used instead; at p = 0 this yields -inf for the
    hole branch, which downstream code treats as the limit spinor (0, e^{i phi}).
    """
    p = np.asarray(p, dtype=float)
    e = energy(p, m)
    den = band * e + m
    # switch well before band*E + m loses precision to cancellation: the
    # rounding of E makes p/den inaccurate once |den| ~ eps*m/|den| matters
    safe = np.abs(den) > m * 1e-4
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        primary = p / np.where(safe, den, 1.0)
        alternate = (band * e - m) / np.where(p == 0.0, 0.0, p)
    out = np.where(safe, primary, alternate)
    if out.ndim == 0:
        return float(out)
    return out


def _ab(c):
    """Stable (1, chi)/sqrt(1+chi^2) amplitudes, handling chi up to +-inf
    (hypot avoids overflow of chi^2 for huge finite chi)."""
    c = np.asarray(c, dtype=float)
    inf = np.isinf(c)
    cs = np.where(inf, 1.0, c)
    h = np.hypot(1.0, cs)
    a = np.where(inf, 0.0, 1.0 / h)
    b = np.where(inf, np.sign(c), cs / h)
    return a, b


def spinor(p, phi, m, band):
    """Normalized band spinor (1, chi e^{i phi}) / sqrt(1 + chi^2).

    Returns an array of shape (2,) (or (2,) + broadcast shape).  The p = 0
    hole spinor is the continuity limit (0, -e^{i phi}).
    """
    a, b = _ab(chi(p, m, band))
    return np.array([a + 0j, b * np.exp(1j * np.asarray(phi))])


def vertex_matrix():
    """4x4 matrix of the photon-exchange vertex g_{mu nu} gamma^mu x gamma^nu
    contraction: gamma^0 x gamma^0 - gamma^1 x gamma^1 - gamma^2 x gamma^2."""
    sx = np.array([[0, 1], [1, 0]], complex)
    sy = np.array([[0, -1j], [1j, 0]], complex)
    sz = np.array([[1, 0], [0, -1]], complex)
    g0, g1, g2 = sz, sz @ sx, sz @ sy
    return np.kron(g0, g0) - np.kron(g1, g1) - np.kron(g2, g2)


def vertex_product(p1, phi1, m1, band1, p2, phi2, m2, band2):
    """Action of the exchange vertex on spinor1 x spinor2, in closed form.

    With a_i, b_i the normalized spinor amplitudes and e_i = e^{i phi_i}, the
    matrix [[1,0,0,0],[0,-1,2,0],[0,2,-1,0],[0,0,0,1]] acting on the product
    basis gives the four components below.  Broadcasts over trailing axes;
    output shape (4,) + broadcast shape.
    """
    a1, b1 = _ab(chi(p1, m1, band1))
    a2, b2 = _ab(chi(p2, m2, band2))
    e1 = np.exp(1j * np.asarray(phi1))
    e2 = np.exp(1j * np.asarray(phi2))
    return np.array([
        a1 * a2 + 0j * e1,
        -a1 * b2 * e2 + 2.0 * b1 * a2 * e1,
        2.0 * a1 * b2 * e2 - b1 * a2 * e1,
        b1 * b2 * e1 * e2,
    ])

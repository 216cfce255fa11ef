"""Delta-reduced Born kernel.

One photon of planar momentum q is exchanged between the layers: layer 1
scatters p1 -> p1 - q, layer 2 scatters p2 -> p2 + q.  Energy conservation
on the band shells defines the kinematic constraint

    F(q, phi_q) = s1 E1 + s2 E2 - s1 E1'(q) - s2 E2'(q)

whose positive radial root q0(phi_q) is known in closed form per channel.
The radial integral collapses onto that root with Jacobian q0 / |F'(q0)|
(the q0 factor comes from d^2q = q dq dphi; it was confirmed against direct
two-dimensional integration with a smeared constraint, see oracles.py), and
the remaining angular integral is evaluated by Gauss-Legendre quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cavity import propagator_d
from .quadrature import gauss_legendre_nodes
from .spinors import energy, vertex_product

__all__ = [
    "KinematicConstraint",
    "ChannelIntegrals",
    "constraint_f",
    "constraint_f_prime",
    "q0_root",
    "angular_integrand",
    "channel_integrals",
]

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class KinematicConstraint:
    """Band signs, momenta, angles and masses of one exchange channel."""

    s1: int
    s2: int
    p1: float
    p2: float
    phi1: float
    phi2: float
    m1: float
    m2: float
    E1: float = field(init=False)
    E2: float = field(init=False)

    def __post_init__(self):
        if self.s1 not in (-1, 1) or self.s2 not in (-1, 1):
            raise ValueError("band signs must be +-1")
        object.__setattr__(self, "E1", float(energy(self.p1, self.m1)))
        object.__setattr__(self, "E2", float(energy(self.p2, self.m2)))


@dataclass(frozen=True)
class ChannelIntegrals:
    """The four angular integrals in basis order (AA, AB, BA, BB)."""

    i_aa: complex
    i_ab: complex
    i_ba: complex
    i_bb: complex
    skipped_nodes: int = 0

    @property
    def vec(self) -> np.ndarray:
        return np.array([self.i_aa, self.i_ab, self.i_ba, self.i_bb])


def _shifted_energies(kc: KinematicConstraint, q, c1, c2):
    e1p = np.sqrt(kc.p1 ** 2 + q * q - 2.0 * kc.p1 * q * c1 + kc.m1 ** 2)
    e2p = np.sqrt(kc.p2 ** 2 + q * q + 2.0 * kc.p2 * q * c2 + kc.m2 ** 2)
    return e1p, e2p


def constraint_f(kc: KinematicConstraint, q, phi_q):
    """Energy-conservation constraint F(q, phi_q); F(0, .) = 0 identically."""
    q = np.asarray(q, dtype=float)
    c1 = np.cos(kc.phi1 - np.asarray(phi_q))
    c2 = np.cos(kc.phi2 - np.asarray(phi_q))
    e1p, e2p = _shifted_energies(kc, q, c1, c2)
    return kc.s1 * (kc.E1 - e1p) + kc.s2 * (kc.E2 - e2p)


def constraint_f_prime(kc: KinematicConstraint, q, phi_q):
    """dF/dq in closed form."""
    q = np.asarray(q, dtype=float)
    c1 = np.cos(kc.phi1 - np.asarray(phi_q))
    c2 = np.cos(kc.phi2 - np.asarray(phi_q))
    e1p, e2p = _shifted_energies(kc, q, c1, c2)
    return -kc.s1 * (q - kc.p1 * c1) / e1p - kc.s2 * (q + kc.p2 * c2) / e2p


# relative residual bound used to reject spurious roots of the squared
# (rationalized) constraint equation
_ROOT_RESIDUAL_REL = 1e-9


def _root_arrays(kc: KinematicConstraint, phi_q, degeneracy_tol):
    """Vectorized closed-form root of F along with an acceptance mask.

    Returns (q0, accept, degenerate): the root array, which angles carry a
    genuine positive root, and which were skipped because the closed-form
    denominator is degenerate.
    """
    phi_q = np.asarray(phi_q, dtype=float)
    c1 = np.cos(kc.phi1 - phi_q)
    c2 = np.cos(kc.phi2 - phi_q)
    E1, E2, p1, p2 = kc.E1, kc.E2, kc.p1, kc.p2
    if kc.s1 == kc.s2:
        num = 2.0 * (E1 + E2) * (E2 * p1 * c1 - E1 * p2 * c2)
        den = (E1 + E2) ** 2 - (p1 * c1 + p2 * c2) ** 2
    else:
        num = 2.0 * (E1 - E2) * (E2 * p1 * c1 + E1 * p2 * c2)
        den = (p1 * c1 + p2 * c2) ** 2 - (E1 - E2) ** 2
    degenerate = np.abs(den) < degeneracy_tol
    q0 = np.where(degenerate, 0.0, num / np.where(degenerate, 1.0, den))
    accept = ~degenerate & (q0 > 0.0)
    # the closed form descends from a twice-squared equation; discard roots
    # that do not actually zero F
    resid = np.abs(constraint_f(kc, np.where(accept, q0, 0.0), phi_q))
    accept &= resid < _ROOT_RESIDUAL_REL * (E1 + E2)
    return q0, accept, degenerate


def q0_root(kc: KinematicConstraint, phi_q: float, degeneracy_tol: float = 1e-10):
    """Positive radial root of F at one angle, or None (no contribution)."""
    q0, accept, _ = _root_arrays(kc, np.asarray([phi_q]), degeneracy_tol)
    return float(q0[0]) if accept[0] else None


def angular_integrand(kc: KinematicConstraint, phi_q, weights, L, eps, kappa,
                      degeneracy_tol: float = 1e-10):
    """Delta-reduced integrand at angle(s) phi_q.

    Returns (values, skipped): a (4, N) complex array over the pseudospin
    product basis (zero columns where no root contributes) and the count of
    angles skipped because of a degenerate closed-form denominator or a
    vanishing |F'| on an otherwise valid root.
    """
    phi_q = np.atleast_1d(np.asarray(phi_q, dtype=float))
    q0, accept, degenerate = _root_arrays(kc, phi_q, degeneracy_tol)
    c1 = np.cos(kc.phi1 - phi_q)
    c2 = np.cos(kc.phi2 - phi_q)
    fprime = constraint_f_prime(kc, q0, phi_q)
    singular = accept & (np.abs(fprime) < degeneracy_tol)
    accept &= ~singular
    skipped = int(np.count_nonzero(degenerate) + np.count_nonzero(singular))

    q = np.where(accept, q0, 0.0)
    # shifted momenta via Cartesian components (branch-safe angles)
    k1x = kc.p1 * np.cos(kc.phi1) - q * np.cos(phi_q)
    k1y = kc.p1 * np.sin(kc.phi1) - q * np.sin(phi_q)
    k2x = kc.p2 * np.cos(kc.phi2) + q * np.cos(phi_q)
    k2y = kc.p2 * np.sin(kc.phi2) + q * np.sin(phi_q)
    k1 = np.hypot(k1x, k1y)
    k2 = np.hypot(k2x, k2y)
    g1 = np.arctan2(k1y, k1x)
    g2 = np.arctan2(k2y, k2x)

    e1p, _ = _shifted_energies(kc, q, c1, c2)
    q_freq = kc.s1 * (kc.E1 - e1p)  # photon frequency from the layer-1 shift
    d_prop = propagator_d(q_freq, q, weights, L, eps)
    vert = vertex_product(k1, g1, kc.m1, kc.s1, k2, g2, kc.m2, kc.s2)

    jac = np.where(accept, q / np.where(accept, np.abs(fprime), 1.0), 0.0)
    scalar = -kappa / TWO_PI ** 2 * jac * d_prop
    return scalar * vert, skipped


def _angular_grid(kc: KinematicConstraint, n_phi: int):
    """Composite two-panel Gauss-Legendre grid covering [0, 2 pi).

    The panels are anchored at the mean of the two external angles, which
    makes the rule exactly covariant under global rotations and under the
    layer swap (both map the node set onto itself), so the corresponding
    symmetries of the entropy hold to machine precision rather than only to
    quadrature accuracy.
    """
    x, w = gauss_legendre_nodes(n_phi // 2 if n_phi % 2 == 0 and n_phi >= 4 else n_phi)
    anchor = 0.5 * (kc.phi1 + kc.phi2)
    if n_phi % 2 == 0 and n_phi >= 4:
        half = np.pi * (x + 1.0) / 2.0
        nodes = np.concatenate([half, half + np.pi]) + anchor
        wts = np.concatenate([np.pi * w / 2.0, np.pi * w / 2.0])
    else:
        nodes = np.pi * (x + 1.0) + anchor
        wts = np.pi * w
    return nodes, wts


def channel_integrals(kc: KinematicConstraint, weights, L, eps, kappa,
                      n_phi: int = 512, degeneracy_tol: float = 1e-10) -> ChannelIntegrals:
    """Gauss-Legendre angular integral of the delta-reduced kernel."""
    nodes, wts = _angular_grid(kc, n_phi)
    vals, skipped = angular_integrand(kc, nodes, weights, L, eps, kappa, degeneracy_tol)
    total = vals @ wts
    return ChannelIntegrals(total[0], total[1], total[2], total[3], skipped)

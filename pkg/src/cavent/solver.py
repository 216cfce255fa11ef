"""Born-level two-body state assembly.

For each band channel the free state is the tensor product of the two layer
spinors; the first-order correction solves the dressed-propagator linear
system

    (S1^-1 (x) (S2^-1)^T) Psi1 = I

where S_i^-1 is the 2x2 single-layer inverse propagator at the on-shell
frequency p^0 = band * E and I is the channel integral vector.  The
Kronecker structure reduces the solve to two analytic 2x2 inversions:
Psi1 = S1 @ mat(I) @ S2^T.  The channel superposition is normalized and the
Born ratio ||Psi1_tot|| / ||Psi0_tot|| recorded as the perturbative
diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import Kinematics
from .spinors import energy, spinor

__all__ = [
    "SingularPropagator",
    "ZeroState",
    "TotalState",
    "inverse_propagator",
    "free_state",
    "solve_correction",
    "total_state",
]

_DET_GUARD = 1e-30


class SingularPropagator(ArithmeticError):
    """Dressed propagator not invertible (on a quasiparticle pole with Gamma = 0)."""


class ZeroState(ArithmeticError):
    """Channel superposition has vanishing norm; cannot normalize."""


@dataclass(frozen=True)
class TotalState:
    vec: np.ndarray  # 4 complex amplitudes, unit norm
    born_ratio: float


def inverse_propagator(p: float, phi: float, m: float, sigma: complex, band: int) -> np.ndarray:
    """Single-layer 2x2 inverse propagator at p^0 = band * E(p)."""
    p0 = band * energy(p, m)
    off = p * np.exp(1j * phi)
    return np.array([[p0 - m - sigma, -np.conj(off)],
                     [off, -p0 - m - sigma]])


def _inv2(mat: np.ndarray) -> np.ndarray:
    det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
    if abs(det) < _DET_GUARD:
        raise SingularPropagator(
            "inverse propagator determinant below guard; "
            "set Im(sigma) > 0 to move off the quasiparticle pole")
    return np.array([[mat[1, 1], -mat[0, 1]],
                     [-mat[1, 0], mat[0, 0]]]) / det


def free_state(s1: int, s2: int, kin: Kinematics, m1: float, m2: float) -> np.ndarray:
    """Unperturbed channel state: spinor1 (x) spinor2, unit norm."""
    u1 = spinor(kin.p1, kin.phi1, m1, s1)
    u2 = spinor(kin.p2, kin.phi2, m2, s2)
    return np.kron(u1, u2)


def solve_correction(integrals_vec: np.ndarray, s1_inv: np.ndarray, s2_inv: np.ndarray) -> np.ndarray:
    """First-order correction Psi1 from the channel integrals.

    With the product basis vectorized row-major, (A (x) B) vec(X) =
    vec(A X B^T), so Psi1 reshaped to 2x2 equals A^-1 @ mat(I) @ (B^-1)^T.
    This is the unique dressing that commutes with global rotations (both
    pseudospin B components pick up the same phase).
    """
    a_inv = _inv2(s1_inv)
    b_inv = _inv2(s2_inv)
    mat = np.asarray(integrals_vec, dtype=complex).reshape(2, 2)
    return (a_inv @ mat @ b_inv.T).reshape(4)


def total_state(psi0_by_channel, psi1_by_channel, weights) -> TotalState:
    """Weighted channel superposition, normalized, with the Born diagnostic."""
    tot0 = np.zeros(4, dtype=complex)
    tot1 = np.zeros(4, dtype=complex)
    for w, psi0, psi1 in zip(weights, psi0_by_channel, psi1_by_channel):
        tot0 += w * psi0
        tot1 += w * psi1
    norm0 = np.linalg.norm(tot0)
    if norm0 < _DET_GUARD:
        raise ZeroState("free channel superposition has zero norm")
    born = float(np.linalg.norm(tot1) / norm0)
    tot = tot0 + tot1
    norm = np.linalg.norm(tot)
    if norm < _DET_GUARD:
        raise ZeroState("total state has zero norm")
    return TotalState(vec=tot / norm, born_ratio=born)

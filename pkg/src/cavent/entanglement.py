"""Reduced density matrix and von Neumann entropy of layer 1's pseudospin,
plus the end-to-end single-point evaluation entropy_at().
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cavity import mode_weights
from .config import RunConfig
from .kernel import KinematicConstraint, channel_integrals
from .solver import free_state, inverse_propagator, solve_correction, total_state
from .spinors import CHANNELS

__all__ = ["reduce_state", "entropy", "entropy_at", "EntropyResult"]

LN2 = math.log(2.0)


def reduce_state(vec: np.ndarray, layer: int = 1) -> np.ndarray:
    """Trace the pure product-basis state (c_AA, c_AB, c_BA, c_BB) down to the
    2x2 pseudospin density matrix of one layer; result is symmetrized."""
    c = np.asarray(vec, dtype=complex).reshape(2, 2)  # rows: layer 1, cols: layer 2
    if layer == 1:
        rho = c @ c.conj().T
    elif layer == 2:
        rho = c.T @ c.conj()
    else:
        raise ValueError("layer must be 1 or 2")
    return 0.5 * (rho + rho.conj().T)


def entropy(rho: np.ndarray, base: str = "e") -> float:
    """Von Neumann entropy from the closed-form 2x2 eigenvalues.

    Eigenvalues are clamped to [0, 1] and renormalized by their sum before
    taking -sum(nu ln nu); 0 ln 0 = 0.  base '2' rescales by 1/ln 2.
    """
    half_gap = math.sqrt(0.25 * (rho[0, 0].real - rho[1, 1].real) ** 2
                         + abs(rho[0, 1]) ** 2)
    nu = np.clip(np.array([0.5 + half_gap, 0.5 - half_gap]), 0.0, 1.0)
    nu /= nu.sum()
    s = -sum(float(v) * math.log(v) for v in nu if v > 0.0)
    if base == "2":
        s /= LN2
    return s


@dataclass(frozen=True)
class EntropyResult:
    S: float
    born_ratio: float
    diagnostics: dict


def entropy_at(config: RunConfig) -> EntropyResult:
    """Entropy and Born diagnostic for one parameter point.

    The diagnostics dict carries the quadrature skip counter plus cheap
    internal consistency numbers (hermiticity/trace residuals of rho, the
    raw eigenvalue range before clamping, and the layer-2 entropy, which
    must match the layer-1 value for a pure state).
    """
    m1 = config.layer1.mass
    m2 = config.layer2.mass
    weights = mode_weights(config.layer1.d, config.layer2.d,
                           config.cavity.length_L, config.cavity.n_max)
    kin = config.kin
    psi0 = []
    psi1 = []
    skipped = 0
    for _, s1, s2 in CHANNELS:
        kc = KinematicConstraint(s1, s2, kin.p1, kin.p2, kin.phi1, kin.phi2, m1, m2)
        ints = channel_integrals(kc, weights, config.cavity.length_L,
                                 config.cavity.epsilon_reg, config.cavity.coupling,
                                 config.quad.n_phi, config.quad.degeneracy_tol)
        skipped += ints.skipped_nodes
        psi0.append(free_state(s1, s2, kin, m1, m2))
        s1_inv = inverse_propagator(kin.p1, kin.phi1, m1, config.layer1.sigma, s1)
        s2_inv = inverse_propagator(kin.p2, kin.phi2, m2, config.layer2.sigma, s2)
        psi1.append(solve_correction(ints.vec, s1_inv, s2_inv))
    state = total_state(psi0, psi1, config.weights)

    # When the first-order correction vanishes identically (coupling off, or
    # every radial root rejected as in the degenerate p1 = p2 configuration)
    # and the channel-weight matrix factorizes, the total state is an exact
    # tensor product: report S = 0 without picking up eigenvalue rounding.
    w = np.asarray(config.weights, dtype=complex).reshape(2, 2)
    weights_factorize = (w[0, 0] * w[1, 1] - w[0, 1] * w[1, 0]) == 0.0
    correction_zero = all(np.all(p == 0.0) for p in psi1)
    if correction_zero and weights_factorize:
        diagnostics = {
            "skipped_nodes": skipped,
            "rho_herm_residual": 0.0,
            "rho_trace_residual": 0.0,
            "eig_min": 0.0,
            "eig_max": 1.0,
            "S_layer2": 0.0,
        }
        return EntropyResult(S=0.0, born_ratio=state.born_ratio, diagnostics=diagnostics)

    c = state.vec.reshape(2, 2)
    rho_raw = c @ c.conj().T
    rho = 0.5 * (rho_raw + rho_raw.conj().T)
    half_gap = math.sqrt(0.25 * (rho[0, 0].real - rho[1, 1].real) ** 2
                         + abs(rho[0, 1]) ** 2)
    s_val = entropy(rho, config.entropy_base)
    diagnostics = {
        "skipped_nodes": skipped,
        "rho_herm_residual": float(np.max(np.abs(rho_raw - rho_raw.conj().T))),
        "rho_trace_residual": abs(float(np.trace(rho).real) - 1.0),
        "eig_min": 0.5 - half_gap,
        "eig_max": 0.5 + half_gap,
        "S_layer2": entropy(reduce_state(state.vec, layer=2), config.entropy_base),
    }
    return EntropyResult(S=s_val, born_ratio=state.born_ratio, diagnostics=diagnostics)

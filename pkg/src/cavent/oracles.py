"""Independent numerical oracles for the analytic kernel and solver paths.

These deliberately avoid the closed forms they check:

* quadrature exactness  — polynomial moments integrated exactly;
* root consistency      — accepted closed-form roots must zero the
                          constraint F directly;
* derivative check      — F' against central finite differences;
* smeared-delta         — the delta-reduced channel integrals against direct
                          two-dimensional integration of the kernel with a
                          Gaussian-smeared constraint, extrapolated to zero
                          width;
* dense solve           — the Kronecker-structured 2x2 solve against a full
                          4x4 LU solve.

The `validate` CLI subcommand runs all of them from a fixed seed.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import brentq

from .cavity import propagator_d
from .kernel import (KinematicConstraint, channel_integrals, constraint_f,
                     constraint_f_prime, q0_root)
from .quadrature import gauss_legendre_nodes
from .solver import solve_correction
from .spinors import vertex_product

__all__ = [
    "smeared_channel_integrals",
    "ORACLE_CONFIGS",
    "check_quadrature",
    "check_roots_and_derivative",
    "check_smeared_delta",
    "check_kronecker_solve",
    "run_all",
]

TWO_PI = 2.0 * np.pi


# ---------------------------------------------------------------------------
# smeared-delta brute force
# ---------------------------------------------------------------------------

def _merge_windows(windows):
    windows = sorted((a, b) for a, b in windows if b > a)
    merged = []
    for a, b in windows:
        if merged and a <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], b))
        else:
            merged.append((a, b))
    return merged


def _smeared_once(kc: KinematicConstraint, weights, L, eps, kappa, width,
                  n_phi=400, n_q=96, q_max=8.0):
    """Direct 2-D integral of the kernel with exp(-F^2/2w^2)/(w sqrt(2 pi))
    in place of delta(F).  Radial integration is restricted to merged windows
    around the zeros of F (including q = 0, where F vanishes identically)."""
    x, wq = gauss_legendre_nodes(n_phi)
    phis = np.pi * (x + 1.0)
    wphi = np.pi * wq
    xr, wr = gauss_legendre_nodes(n_q)
    total = np.zeros(4, dtype=complex)
    for phi_q, w_ang in zip(phis, wphi):
        qs = np.linspace(1e-9, q_max, 800)
        vals = constraint_f(kc, qs, phi_q)
        sign_change = np.nonzero(np.diff(np.sign(vals)))[0]
        roots = [brentq(lambda q: float(constraint_f(kc, q, phi_q)),
                        qs[i], qs[i + 1]) for i in sign_change]
        windows = [(0.0, 60.0 * width)]  # F(0) = 0 exactly
        for r in roots:
            slope = abs(float(constraint_f_prime(kc, r, phi_q)))
            hw = 15.0 * width / max(slope, 1e-3)
            windows.append((max(r - hw, 0.0), r + hw))
        for a, b in _merge_windows(windows):
            q = 0.5 * (b - a) * (xr + 1.0) + a
            w_rad = 0.5 * (b - a) * wr
            f_val = constraint_f(kc, q, phi_q)
            smeared = np.exp(-f_val ** 2 / (2.0 * width ** 2)) / (width * np.sqrt(TWO_PI))
            c1 = np.cos(kc.phi1 - phi_q)
            e1p = np.sqrt(kc.p1 ** 2 + q * q - 2.0 * kc.p1 * q * c1 + kc.m1 ** 2)
            k1x = kc.p1 * np.cos(kc.phi1) - q * np.cos(phi_q)
            k1y = kc.p1 * np.sin(kc.phi1) - q * np.sin(phi_q)
            k2x = kc.p2 * np.cos(kc.phi2) + q * np.cos(phi_q)
            k2y = kc.p2 * np.sin(kc.phi2) + q * np.sin(phi_q)
            vert = vertex_product(np.hypot(k1x, k1y), np.arctan2(k1y, k1x), kc.m1, kc.s1,
                                  np.hypot(k2x, k2y), np.arctan2(k2y, k2x), kc.m2, kc.s2)
            d_prop = propagator_d(kc.s1 * (kc.E1 - e1p), q, weights, L, eps)
            integrand = -kappa / TWO_PI ** 2 * q * d_prop * smeared * vert
            total += (integrand * w_rad).sum(axis=1) * w_ang
    return total


def smeared_channel_integrals(kc, weights, L, eps, kappa,
                              widths=(1e-3, 1e-4), **kw):
    """Width -> 0 limit of the smeared 2-D integral (linear Richardson).

    The q = 0 endpoint contributes O(width) through the half Gaussian, so the
    leading error is linear in the width and two widths suffice:
    I0 = (w1 I(w2) - w2 I(w1)) / (w1 - w2).
    """
    w1, w2 = widths
    i1 = _smeared_once(kc, weights, L, eps, kappa, w1, **kw)
    i2 = _smeared_once(kc, weights, L, eps, kappa, w2, **kw)
    return (w1 * i2 - w2 * i1) / (w1 - w2)


# five fixed non-degenerate configurations used by the acceptance gate; the
# opposite-band entries sit in the closed kinematic regime
# |E1 - E2| > p1 + p2 (different masses), where the root set is bounded
ORACLE_CONFIGS = (
    KinematicConstraint(+1, +1, 0.8, 1.3, 0.3, 2.0, 2.1258, 2.1258),
    KinematicConstraint(-1, -1, 1.1, 0.7, -1.2, 0.4, 2.1258, 2.1258),
    KinematicConstraint(+1, +1, 2.5, 1.8, 1.0, -2.2, 1.0, 1.5),
    KinematicConstraint(+1, -1, 0.35, 0.45, 0.7, -0.6, 2.2, 0.5),
    KinematicConstraint(-1, +1, 0.5, 0.3, -2.8, 1.9, 0.45, 2.4),
)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def check_quadrature(orders=(1, 2, 3, 8, 33, 64, 301)):
    """Moment exactness: an order-n rule integrates x^k, k <= 2n-1, exactly."""
    worst = 0.0
    for n in orders:
        x, w = gauss_legendre_nodes(n)
        if abs(w.sum() - 2.0) > 1e-12:
            return False, f"order {n}: weights sum to {w.sum()!r}"
        for k in range(0, min(2 * n, 40)):
            exact = 0.0 if k % 2 else 2.0 / (k + 1)
            err = abs((w * x ** k).sum() - exact)
            worst = max(worst, err)
            if err > 1e-12:
                return False, f"order {n}: moment k={k} off by {err:.2e}"
    return True, f"max moment error {worst:.2e}"


def _random_kc(rng):
    s1, s2 = rng.choice([-1, 1], size=2)
    return KinematicConstraint(int(s1), int(s2),
                               float(rng.uniform(0.0, 3.0)), float(rng.uniform(0.0, 3.0)),
                               float(rng.uniform(-np.pi, np.pi)), float(rng.uniform(-np.pi, np.pi)),
                               float(rng.uniform(0.3, 3.0)), float(rng.uniform(0.3, 3.0)))


def check_roots_and_derivative(n_draws=10_000, seed=20240517):
    """Accepted closed-form roots must zero F; F' must match finite differences."""
    rng = np.random.default_rng(seed)
    worst_resid = 0.0
    worst_fd = 0.0
    accepted = 0
    for _ in range(n_draws):
        kc = _random_kc(rng)
        phi_q = float(rng.uniform(0.0, TWO_PI))
        q0 = q0_root(kc, phi_q)
        if q0 is not None:
            accepted += 1
            resid = abs(float(constraint_f(kc, q0, phi_q))) / (kc.E1 + kc.E2)
            worst_resid = max(worst_resid, resid)
            if resid > 1e-9:
                return False, f"root residual {resid:.2e} at {kc}"
        q = float(rng.uniform(0.0, 4.0))
        # 5-point central stencil: truncation O(h^4) so the step can be large
        # enough to keep roundoff below the tight relative tolerance even
        # where |F'| is small (F extends smoothly to small negative q)
        h = 1e-4 * max(q, kc.m1)
        f = [float(constraint_f(kc, q + k * h, phi_q)) for k in (-2, -1, 1, 2)]
        fd = (f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * h)
        an = float(constraint_f_prime(kc, q, phi_q))
        if abs(an) > 1e-6:
            rel = abs(fd - an) / abs(an)
            worst_fd = max(worst_fd, rel)
            if rel > 1e-5:
                return False, f"F' mismatch {rel:.2e} at q={q}, {kc}"
    return True, (f"{accepted} accepted roots, worst residual {worst_resid:.2e}, "
                  f"worst F' rel err {worst_fd:.2e}")


def check_smeared_delta(tol=0.01, kappa=1.5e-3, L=2.0, eps=1e-9, verbose=False):
    """Analytic channel integrals vs the brute-force smeared-delta integral."""
    from .cavity import mode_weights
    weights = mode_weights(0.9, 1.1, L, 50)
    worst = 0.0
    details = []
    for kc in ORACLE_CONFIGS:
        analytic = channel_integrals(kc, weights, L, eps, kappa, n_phi=800).vec
        brute = smeared_channel_integrals(kc, weights, L, eps, kappa)
        scale = max(np.max(np.abs(analytic)), np.max(np.abs(brute)))
        rel = float(np.max(np.abs(analytic - brute)) / scale)
        worst = max(worst, rel)
        details.append(f"({kc.s1:+d},{kc.s2:+d}): {rel:.2e}")
        if rel > tol:
            return False, f"smeared-delta mismatch {rel:.2e} for {kc}"
    msg = f"worst component error {worst:.2e}"
    if verbose:
        msg += " [" + ", ".join(details) + "]"
    return True, msg


def check_kronecker_solve(n_systems=1000, seed=987):
    """Kronecker-structured solve vs dense 4x4 elimination."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_systems):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        ivec = rng.normal(size=4) + 1j * rng.normal(size=4)
        kron = solve_correction(ivec, a, b)
        # row-major vec over the product basis: kron(A, B) vec(X) = vec(A X B^T)
        dense = np.linalg.solve(np.kron(a, b), ivec)
        rel = np.linalg.norm(kron - dense) / max(np.linalg.norm(dense), 1e-300)
        worst = max(worst, rel)
        if rel > 1e-10:
            return False, f"Kronecker/dense mismatch {rel:.2e}"
    return True, f"worst relative error {worst:.2e}"


def run_all(seed=20240517, verbose=False):
    """Run every suite; returns (all_ok, list of (name, ok, message))."""
    results = [
        ("quadrature-exactness", *check_quadrature()),
        ("root-consistency+finite-difference", *check_roots_and_derivative(seed=seed)),
        ("kronecker-solve", *check_kronecker_solve(seed=seed % 2**31)),
        ("smeared-delta", *check_smeared_delta(verbose=verbose)),
    ]
    return all(ok for _, ok, _ in results), results

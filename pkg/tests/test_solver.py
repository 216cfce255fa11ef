import numpy as np
import pytest

from cavent.config import Kinematics
from cavent.solver import (SingularPropagator, ZeroState, free_state,
                           inverse_propagator, solve_correction, total_state)
from cavent.spinors import CHANNELS, spinor


def test_inverse_propagator_rest_frame():
    m, sig = 1.3, 0.01 + 0.002j
    el = inverse_propagator(0.0, 0.0, m, sig, +1)
    assert np.allclose(el, np.diag([-sig, -2 * m - sig]))
    ho = inverse_propagator(0.0, 0.0, m, sig, -1)
    assert np.allclose(ho, np.diag([-2 * m - sig, -sig]))


def test_inverse_propagator_determinant_depends_only_on_sigma():
    """On shell the kinetic part cancels: det = 2 m sigma + sigma^2."""
    m, sig = 2.1258, 4.2e-3 + 1e-6j
    for p, phi, band in [(0.13, 0.0, 1), (0.8, -2.1, -1), (0.0, 0.5, 1)]:
        mat = inverse_propagator(p, phi, m, sig, band)
        det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
        assert abs(det - (2 * m * sig + sig * sig)) < 1e-12


def test_free_state_examples():
    kin = Kinematics(0.0, 0.0, 0.4, 1.1)
    ee = free_state(+1, +1, kin, 1.0, 1.0)
    assert np.allclose(ee, [1, 0, 0, 0])
    hh = free_state(-1, -1, kin, 1.0, 1.0)
    assert abs(hh[3] - np.exp(1j * (0.4 + 1.1))) < 1e-14
    assert np.allclose(hh[:3], 0.0)


def test_free_state_unit_norm():
    kin = Kinematics(0.37, 1.2, -0.8, 2.0)
    for _, s1, s2 in CHANNELS:
        v = free_state(s1, s2, kin, 1.7, 0.9)
        assert abs(np.linalg.norm(v) - 1.0) < 1e-12


def test_solve_correction_trivial_cases():
    ident = np.eye(2, dtype=complex)
    ivec = np.array([1, 2, 3, 4], dtype=complex)
    assert np.allclose(solve_correction(ivec, ident, ident), ivec)
    assert np.all(solve_correction(np.zeros(4), ident, ident) == 0.0)


def test_solve_correction_matches_dense():
    rng = np.random.default_rng(42)
    for _ in range(50):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        ivec = rng.normal(size=4) + 1j * rng.normal(size=4)
        dense = np.linalg.solve(np.kron(a, b), ivec)
        assert np.linalg.norm(solve_correction(ivec, a, b) - dense) < 1e-10 * np.linalg.norm(dense)


def test_singular_propagator_raised_on_pole():
    # at p = 0 with sigma = 0 the determinant vanishes exactly
    m = 1.0
    mat = inverse_propagator(0.0, 0.0, m, 0.0 + 0.0j, +1)
    with pytest.raises(SingularPropagator):
        solve_correction(np.ones(4, complex), mat, mat)


def test_no_singularity_with_tiny_width():
    m = 1.0
    mat = inverse_propagator(0.0, 0.0, m, 1e-9j, +1)
    solve_correction(np.ones(4, complex), mat, mat)  # must not raise


def test_total_state_free_superposition_is_product():
    """Equal weights give (u1 + v1) x (u2 + v2) up to normalization."""
    kin = Kinematics(0.33, 0.81, 0.4, -1.3)
    m1, m2 = 1.9, 1.1
    psi0 = [free_state(s1, s2, kin, m1, m2) for _, s1, s2 in CHANNELS]
    psi1 = [np.zeros(4, complex)] * 4
    state = total_state(psi0, psi1, (1, 1, 1, 1))
    assert state.born_ratio == 0.0
    mat = state.vec.reshape(2, 2)
    s = np.linalg.svd(mat, compute_uv=False)
    assert s[1] < 1e-12  # rank one <=> tensor product
    left = spinor(kin.p1, kin.phi1, m1, +1) + spinor(kin.p1, kin.phi1, m1, -1)
    right = spinor(kin.p2, kin.phi2, m2, +1) + spinor(kin.p2, kin.phi2, m2, -1)
    expected = np.kron(left, right)
    expected /= np.linalg.norm(expected)
    phase = np.vdot(expected, state.vec)
    assert abs(abs(phase) - 1.0) < 1e-12


def test_born_ratio_linear_in_coupling():
    rng = np.random.default_rng(7)
    psi0 = [v / np.linalg.norm(v) for v in
            (rng.normal(size=(4,)) + 1j * rng.normal(size=(4,)) for _ in range(4))]
    psi1 = [rng.normal(size=4) + 1j * rng.normal(size=4) for _ in range(4)]
    full = total_state(psi0, psi1, (1, 1, 1, 1)).born_ratio
    half = total_state(psi0, [0.5 * p for p in psi1], (1, 1, 1, 1)).born_ratio
    assert abs(half / full - 0.5) < 1e-6


def test_zero_state_raised():
    psi0 = [np.zeros(4, complex)] * 4
    with pytest.raises(ZeroState):
        total_state(psi0, psi0, (1, 1, 1, 1))

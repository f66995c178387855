import numpy as np
import pytest

from lmgcavity.effective import EffectiveParams, PhysicalParams
from lmgcavity.lindblad import (
    DegenerateSteadyStateError,
    JointState,
    QubitState,
    adiabatic_cavity_prediction,
    build_driven_dicke_liouvillian,
    build_qubit_liouvillian,
    evolve,
    fock_populations,
    initial_fock_cutoff,
    photon_number,
    propagate_expm,
    qubit_spin_expectations,
    steady_state,
    steady_state_by_evolution,
)
from lmgcavity.spins import DickeVector, SpinSector, build_spin_operators, rotate_basis


def cavity_only(eta0=0.0, delta_c=0.0, cutoff=8):
    """Joint Liouvillian with the qubits decoupled (g0 = 0, N = 1)."""
    p = PhysicalParams(g0=0.0, eta0=eta0, delta_c=delta_c, delta_a=0.0, n_qubits=1)
    return p, build_driven_dicke_liouvillian(p, SpinSector(1), cutoff)


def random_hermitian(dim, rng):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    h = a + a.conj().T
    return h / np.trace(h).real


def vec(rho):
    return rho.reshape(-1, order="F")


# ------------------------------------------------------------- superoperators


def test_liouvillians_annihilate_trace(rng):
    _, lio_c = cavity_only(eta0=0.3, delta_c=2.0, cutoff=5)
    sector = SpinSector(4)
    lio_q = build_qubit_liouvillian(EffectiveParams(h=1.0, lam=5.0, delta_a=0.2), 0.2, 0.1, sector)
    for lio, dim in ((lio_c, 12), (lio_q, 5)):
        for _ in range(10):
            rho = random_hermitian(dim, rng)
            drho = (lio @ vec(rho)).reshape((dim, dim), order="F")
            assert abs(np.trace(drho)) < 1e-10


def test_damped_cavity_decay_rate():
    """<a^dag a>(t) = n0 exp(-2 kappa t) for the empty damped cavity."""
    _, lio = cavity_only(cutoff=6)
    rho0 = np.zeros((14, 14), dtype=complex)
    rho0[2 * 2, 2 * 2] = 1.0  # two photons, qubit in its lower state
    times, states = evolve(lio, rho0, t_final=1.0, dt=0.002, sample_every=100)
    sector = SpinSector(1)
    for t, rho in zip(times, states):
        n_t = fock_populations(6, sector, rho) @ np.arange(7)
        assert n_t == pytest.approx(2.0 * np.exp(-2.0 * t), abs=1e-6)


def test_zero_generator_is_identity_evolution(rng):
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    rho0 = a @ a.conj().T
    rho0 /= np.trace(rho0).real
    _, states = evolve(np.zeros((36, 36)), rho0, t_final=1.0, dt=0.1)
    assert np.allclose(states[-1], rho0, atol=1e-14)


def test_propagate_expm_matches_rk4(rng):
    _, lio = cavity_only(eta0=0.2, delta_c=1.0, cutoff=4)
    rho0 = np.zeros((10, 10), dtype=complex)
    rho0[0, 0] = 1.0
    _, states = evolve(lio, rho0, t_final=2.0, dt=0.001)
    direct = propagate_expm(lio, rho0, 2.0)
    assert np.max(np.abs(states[-1] - direct)) < 1e-8


def test_vacuum_is_damped_cavity_steady_state():
    _, lio = cavity_only(cutoff=5)
    rho = steady_state(lio, check_unique=False)  # qubit sector is dark at g0 = 0
    pops = fock_populations(5, SpinSector(1), rho)
    assert pops[0] == pytest.approx(1.0, abs=1e-10)


def test_driven_cavity_coherent_steady_state():
    p, lio = cavity_only(eta0=0.4, delta_c=1.5, cutoff=10)
    rho = steady_state(lio, check_unique=False)
    alpha = p.eta0 * 1.0 / (1.0 + 1.5j)  # eta0 sqrt(N), N = 1
    a = np.kron(np.diag(np.sqrt(np.arange(1, 11)), k=1), np.eye(2))
    assert np.trace(a @ rho) == pytest.approx(alpha, abs=1e-9)
    # the decoupled qubit comes out maximally mixed; judge the coherent-state
    # purity on the cavity marginal
    rho_c = np.einsum("isjs->ij", rho.reshape(11, 2, 11, 2))
    assert np.trace(rho_c @ rho_c).real > 1.0 - 1e-6


def test_joint_degeneracy_reported_at_zero_detuning():
    # delta_a = 0 conserves S_x: one stationary state per S_x sector
    p = PhysicalParams(g0=10.0, eta0=5.0, delta_c=200.0, delta_a=0.0, n_qubits=2)
    lio = build_driven_dicke_liouvillian(p, SpinSector(2), 4)
    with pytest.raises(DegenerateSteadyStateError) as err:
        steady_state(lio)
    assert err.value.dimension == 3


def test_adiabatic_prediction_formula():
    p = PhysicalParams(g0=100.0, eta0=0.0, delta_c=2000.0, delta_a=0.0, n_qubits=4)
    a_ss = adiabatic_cavity_prediction(p, 2.0)  # <S_x> = S = N/2
    assert a_ss == pytest.approx(-1j * 100.0 / (1 + 2000j), abs=1e-15)
    p2 = PhysicalParams(g0=100.0, eta0=30.0, delta_c=2000.0, delta_a=0.0, n_qubits=4)
    assert adiabatic_cavity_prediction(p2, 0.0) == pytest.approx(60.0 / (1 + 2000j))
    assert initial_fock_cutoff(p2) >= 4


# -------------------------------------------------------------- qubit system


def test_unitary_limit_preserves_purity():
    sector = SpinSector(6)
    lio = build_qubit_liouvillian(EffectiveParams(h=1.0, lam=5.0), 0.0, 0.0, sector)
    amp = np.zeros(7)
    amp[3] = 1.0
    rho0 = np.outer(amp, amp).astype(complex)
    _, states = evolve(lio, rho0, t_final=2.0, dt=0.001)
    purity = np.trace(states[-1] @ states[-1]).real
    assert purity == pytest.approx(1.0, abs=1e-8)


def test_total_spin_conserved_under_collective_jumps(rng):
    sector = SpinSector(5)
    lio = build_qubit_liouvillian(EffectiveParams(h=2.0, lam=5.0, delta_a=0.3), 0.4, 0.2, sector)
    s2 = build_spin_operators(sector).ssquared.matrix
    rho = random_hermitian(6, rng)
    drho = (lio @ vec(rho)).reshape((6, 6), order="F")
    assert abs(np.trace(s2 @ drho)) < 1e-8


def test_pure_dephasing_keeps_sx_populations():
    """gamma' only, H = 0: S_x-diagonal populations stay put, coherences decay."""
    sector = SpinSector(4)
    lio = build_qubit_liouvillian(EffectiveParams(h=0.0, lam=0.0), 0.0, 0.5, sector)
    psi_x = rotate_basis(DickeVector.basis_state(sector, 2, "x"), "x", "z")
    rho0 = np.outer(psi_x.amplitudes, psi_x.amplitudes.conj())
    superpos = rotate_basis(DickeVector.basis_state(sector, -2, "x"), "x", "z").amplitudes
    rho_mix = 0.5 * rho0 + 0.5 * np.outer(superpos, superpos.conj())
    coh = 0.5 * (np.outer(psi_x.amplitudes, superpos.conj())
                 + np.outer(superpos, psi_x.amplitudes.conj()))
    rho_c = rho_mix + 0.4 * coh
    _, states = evolve(lio, rho_c, t_final=12.0, dt=0.005)
    final = states[-1]
    sx = build_spin_operators(sector).sx.matrix
    # S_x populations unchanged
    assert np.trace(sx @ final).real == pytest.approx(np.trace(sx @ rho_c).real, abs=1e-8)
    # the ee'-coherence (off-diagonal in the S_x basis) has decayed
    overlap0 = abs(psi_x.amplitudes.conj() @ rho_c @ superpos)
    overlap1 = abs(psi_x.amplitudes.conj() @ final @ superpos)
    assert overlap1 < 0.05 * overlap0


def test_pumped_steady_state_at_zero_drive_sits_at_north_pole():
    """gamma > 0, h = 0: steady state concentrates at S_z = +S, matching the
    (0, 0, 1) mean-field fixed point.

    Pole concentration needs the pump to beat the quantum fluctuations of
    the lam interaction (gamma not small against lam); at gamma << lam the
    finite-N steady state stays depolarized no matter how large N gets.
    """
    sector = SpinSector(12)
    lio = build_qubit_liouvillian(EffectiveParams(h=0.0, lam=0.5), 1.0, 0.0, sector)
    rho = steady_state(lio)
    bloch = qubit_spin_expectations(QubitState(sector, rho)) * (2.0 / 12)
    assert np.linalg.norm(bloch - np.array([0.0, 0.0, 1.0])) < 0.05


def test_steady_state_cross_check_by_evolution():
    sector = SpinSector(4)
    lio = build_qubit_liouvillian(EffectiveParams(h=1.0, lam=5.0), 0.2, 0.0, sector)
    rho_null = steady_state(lio)
    rho0 = np.eye(5, dtype=complex) / 5.0
    rho_evolved = steady_state_by_evolution(lio, rho0, dt=0.01, tol=1e-10)
    # trace distance
    dist = 0.5 * np.sum(np.abs(np.linalg.eigvalsh(rho_null - rho_evolved)))
    assert dist < 1e-7


# -------------------------------------------------------------- state guards


def test_joint_state_flags_inadequate_cutoff():
    sector = SpinSector(1)
    rho = np.zeros((8, 8), dtype=complex)
    rho[6, 6] = 1.0  # all population in the top Fock level
    with pytest.raises(ValueError, match="cutoff"):
        JointState(3, sector, rho)


def test_qubit_state_validation(rng):
    sector = SpinSector(3)
    with pytest.raises(ValueError):
        QubitState(sector, np.eye(4, dtype=complex))  # trace 4
    rho = np.eye(4, dtype=complex) / 4.0
    QubitState(sector, rho)  # fine


def test_rate_validation():
    with pytest.raises(ValueError):
        build_qubit_liouvillian(EffectiveParams(h=0.0, lam=5.0), -0.1, 0.0, SpinSector(2))

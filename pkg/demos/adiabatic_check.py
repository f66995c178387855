"""How good is the slaved-cavity (adiabatically eliminated) description?

Evolves the full cavity + two-qubit master equation to late times and
compares the simulated cavity amplitude <a> with the slaved-field formula
a_ss = (eta0 sqrt(N) - i g0 <S_x>/sqrt(N)) / (kappa + i Delta_c), keeping
the effective drive fixed while the detuning grows.  The residual error is
the lag of the cavity behind the slowly moving spin and shrinks with
Delta_c/g0 -- the quantitative content of the dispersive-regime condition
|kappa + i Delta_c| >> g0.

Run:  python3 demos/adiabatic_check.py
"""

import warnings

import numpy as np

from lmgcavity import PhysicalParams, SpinSector, build_effective_hamiltonian, effective_params, ground_state
from lmgcavity.lindblad import (
    JointState,
    adiabatic_cavity_prediction,
    build_driven_dicke_liouvillian,
    cavity_amplitude,
    initial_fock_cutoff,
    joint_spin_expectations,
    propagate_expm,
)

warnings.filterwarnings("ignore", message="dispersive regime")

N = 2
sector = SpinSector(N)
print(f"{'Dc/kappa':>9} {'Dc/g0':>6} {'cutoff':>7} {'|<a>|':>8} {'rel. error':>11}")

for delta_c in (500.0, 1000.0, 2000.0):
    eta0 = 0.2 * delta_c  # keeps h = -2 g0 eta0/(1 + Dc^2) essentially fixed
    p = PhysicalParams(g0=100.0, eta0=eta0, delta_c=delta_c, delta_a=0.2, n_qubits=N)
    cutoff = max(6, initial_fock_cutoff(p))
    lio = build_driven_dicke_liouvillian(p, sector, cutoff)

    # start from the effective-model ground state and an empty cavity
    gs = ground_state(build_effective_hamiltonian(effective_params(p), sector))
    rho_q = np.outer(gs.state.amplitudes, gs.state.amplitudes.conj())
    rho_c = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    rho_c[0, 0] = 1.0
    rho = propagate_expm(lio, np.kron(rho_c, rho_q), 15.0)

    state = JointState(cutoff, sector, rho)
    a_sim = cavity_amplitude(state)
    a_pred = adiabatic_cavity_prediction(p, joint_spin_expectations(state)[0])
    rel = abs(a_sim - a_pred) / abs(a_pred)
    print(f"{delta_c:9.0f} {delta_c/100:6.0f} {cutoff:7d} {abs(a_sim):8.4f} {rel:11.3e}")

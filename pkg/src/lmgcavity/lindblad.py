"""Small-scale Lindblad simulations: driven cavity-spin model and qubit-only limit.

Two master equations are represented as dense superoperators acting on
column-stacked density matrices:

1. the full driven model, H = Delta_c a^dag a - i eta (a - a^dag)
   + Delta_a S_z + g (a + a^dag) S_x with g = g0/sqrt(N), eta = eta0 sqrt(N),
   and photon loss kappa (2 a rho a^dag - a^dag a rho - rho a^dag a); used to
   validate the slaved-cavity (adiabatic elimination) approximation;

2. the qubit-only model, H_eff plus collective pumping
   (gamma/N)(2 S_+ rho S_- - S_- S_+ rho - rho S_- S_+) and collective
   dephasing (gamma'/N)(2 S_x rho S_x - S_x^2 rho - rho S_x^2); used to
   compare finite-N quantum steady states against mean-field fixed points.

Vectorization is column-stacking, so vec(A rho B) = (B^T kron A) vec(rho).
Dimensions are deliberately capped (dense matrices everywhere): joint
simulations at N <= 6, qubit-only at N <= 30.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .effective import EffectiveParams, PhysicalParams, build_effective_hamiltonian
from .spins import SpinSector, build_spin_operators

__all__ = [
    "JointState",
    "QubitState",
    "DegenerateSteadyStateError",
    "build_driven_dicke_liouvillian",
    "build_qubit_liouvillian",
    "evolve",
    "propagate_expm",
    "steady_state",
    "steady_state_by_evolution",
    "adiabatic_cavity_prediction",
    "initial_fock_cutoff",
    "solve_joint_steady_state",
    "fock_populations",
    "cavity_amplitude",
    "photon_number",
    "joint_spin_expectations",
    "qubit_spin_expectations",
]

_HERM_TOL = 1e-10
_TRACE_TOL = 1e-10
_EIG_TOL = -1e-8
_TOP_FOCK_TOL = 1e-6


class DegenerateSteadyStateError(RuntimeError):
    """Null space of the Liouvillian is not one-dimensional."""

    def __init__(self, dimension: int):
        self.dimension = dimension
        super().__init__(f"Liouvillian null space has dimension {dimension}")


def _check_density_matrix(rho: np.ndarray, what: str) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if np.max(np.abs(rho - rho.conj().T)) > _HERM_TOL:
        raise ValueError(f"{what} is not Hermitian within {_HERM_TOL}")
    if abs(np.trace(rho).real - 1.0) > _TRACE_TOL:
        raise ValueError(f"{what} has trace {np.trace(rho).real!r}")
    if np.linalg.eigvalsh(rho).min() < _EIG_TOL:
        raise ValueError(f"{what} has an eigenvalue below {_EIG_TOL}")
    return rho


@dataclass(frozen=True)
class JointState:
    """Density matrix on the (cavity Fock) x (Dicke) product space.

    Index order: Fock first, i.e. rho acts on C^(n_max+1) (x) C^(N+1).
    """

    fock_cutoff: int
    sector: SpinSector
    rho: np.ndarray

    def __post_init__(self):
        dim = (self.fock_cutoff + 1) * self.sector.dim
        rho = np.asarray(self.rho, dtype=complex)
        if rho.shape != (dim, dim):
            raise ValueError(f"expected shape {(dim, dim)}, got {rho.shape}")
        rho = _check_density_matrix(rho, "joint state")
        top = fock_populations(self.fock_cutoff, self.sector, rho)[-1]
        if top > _TOP_FOCK_TOL:
            raise ValueError(
                f"top Fock level holds population {top:.3e}; raise the cutoff"
            )
        object.__setattr__(self, "rho", rho)


@dataclass(frozen=True)
class QubitState:
    """Density matrix on the (N+1)-dimensional Dicke sector."""

    sector: SpinSector
    rho: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        if rho.shape != (self.sector.dim, self.sector.dim):
            raise ValueError(f"expected shape {(self.sector.dim,) * 2}, got {rho.shape}")
        object.__setattr__(self, "rho", _check_density_matrix(rho, "qubit state"))


def _destroy(n_max: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), k=1).astype(complex)


def _hamiltonian_superop(h: np.ndarray) -> np.ndarray:
    dim = h.shape[0]
    eye = np.eye(dim)
    return -1j * (np.kron(eye, h) - np.kron(h.T, eye))


def _dissipator_superop(c: np.ndarray, rate: float) -> np.ndarray:
    """rate * (2 C rho C^dag - C^dag C rho - rho C^dag C), vectorized."""
    dim = c.shape[0]
    eye = np.eye(dim)
    cdc = c.conj().T @ c
    return rate * (
        2.0 * np.kron(c.conj(), c) - np.kron(eye, cdc) - np.kron(cdc.T, eye)
    )


def build_driven_dicke_liouvillian(
    p: PhysicalParams, sector: SpinSector, fock_cutoff: int
) -> np.ndarray:
    """Dense superoperator of the full driven model with photon loss."""
    n = sector.n_qubits
    a = _destroy(fock_cutoff)
    eye_f = np.eye(fock_cutoff + 1, dtype=complex)
    ops = build_spin_operators(sector)
    eye_s = np.eye(sector.dim, dtype=complex)
    g = p.g0 / np.sqrt(n)
    eta = p.eta0 * np.sqrt(n)
    h = (
        p.delta_c * np.kron(a.conj().T @ a, eye_s)
        - 1j * eta * np.kron(a - a.conj().T, eye_s)
        + p.delta_a * np.kron(eye_f, ops.sz.matrix)
        + g * np.kron(a + a.conj().T, ops.sx.matrix)
    )
    return _hamiltonian_superop(h) + _dissipator_superop(np.kron(a, eye_s), p.kappa)


def build_qubit_liouvillian(
    eff: EffectiveParams,
    gamma: float,
    gamma_prime: float,
    sector: SpinSector,
) -> np.ndarray:
    """Superoperator of the qubit-only master equation on the Dicke sector.

    Collective jumps commute with S^2, so the dynamics never leaves the
    maximum-spin sector.
    """
    if gamma < 0 or gamma_prime < 0:
        raise ValueError("dissipation rates must be non-negative")
    if (sector.dim) ** 2 > 10_000:
        raise ValueError("sector too large for a dense superoperator")
    n = sector.n_qubits
    ops = build_spin_operators(sector)
    lio = _hamiltonian_superop(build_effective_hamiltonian(eff, sector).matrix.astype(complex))
    if gamma > 0:
        lio = lio + _dissipator_superop(ops.splus.matrix, gamma / n)
    if gamma_prime > 0:
        lio = lio + _dissipator_superop(ops.sx.matrix, gamma_prime / n)
    return lio


def evolve(lio: np.ndarray, rho0: np.ndarray, t_final: float, dt: float, sample_every: int = 10):
    """Fixed-step fourth-order propagation of d rho/dt = L[rho].

    The state is re-Hermitized after every step; trace drift beyond 1e-8 or
    an eigenvalue below -1e-7 at a sampled time aborts the run (step-size
    instability).  Returns (times, states) with states[k] the density matrix
    at times[k].
    """
    dim = int(round(np.sqrt(lio.shape[0])))
    rho = np.asarray(rho0, dtype=complex)
    if rho.shape != (dim, dim):
        raise ValueError(f"state shape {rho.shape} does not match Liouvillian dim {dim}")
    if dt <= 0 or t_final <= 0:
        raise ValueError("dt and t_final must be positive")

    def deriv(r):
        return (lio @ r.reshape(-1, order="F")).reshape((dim, dim), order="F")

    n_steps = int(round(t_final / dt))
    times = [0.0]
    states = [rho.copy()]
    for k in range(n_steps):
        k1 = deriv(rho)
        k2 = deriv(rho + 0.5 * dt * k1)
        k3 = deriv(rho + 0.5 * dt * k2)
        k4 = deriv(rho + dt * k3)
        rho = rho + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        rho = (rho + rho.conj().T) / 2.0
        if (k + 1) % sample_every == 0 or k == n_steps - 1:
            tr = np.trace(rho).real
            if abs(tr - 1.0) > 1e-8:
                raise RuntimeError(f"trace drifted to {tr!r}; reduce the step size")
            if np.linalg.eigvalsh(rho).min() < -1e-7:
                raise RuntimeError("state lost positivity; reduce the step size")
            times.append((k + 1) * dt)
            states.append(rho.copy())
    return np.array(times), states


def steady_state(lio: np.ndarray, check_unique: bool = True) -> np.ndarray:
    """Stationary density matrix from the null space of the superoperator.

    Solved as a least-squares problem with the trace condition appended;
    uniqueness is certified by the singular spectrum of L (the second
    smallest singular value must be well separated from zero).
    """
    n2 = lio.shape[0]
    dim = int(round(np.sqrt(n2)))
    trace_row = np.zeros(n2, dtype=complex)
    trace_row[:: dim + 1] = 1.0  # vec indices of the diagonal (column stacking)
    system = np.vstack([lio, trace_row])
    rhs = np.zeros(n2 + 1, dtype=complex)
    rhs[-1] = 1.0
    sol, *_ = np.linalg.lstsq(system, rhs, rcond=None)
    rho = sol.reshape((dim, dim), order="F")
    rho = (rho + rho.conj().T) / 2.0
    rho = rho / np.trace(rho).real
    resid = np.linalg.norm(lio @ rho.reshape(-1, order="F"))
    scale = max(1.0, np.linalg.norm(lio, ord=np.inf))
    if resid > 1e-9 * scale:
        raise RuntimeError(f"stationarity residual {resid:.3e} too large")
    if check_unique:
        # genuine null singular values sit at the round-off floor (~eps * s_max),
        # many orders below physically slow decay modes, so a tight relative
        # threshold separates them reliably
        svals = np.linalg.svd(lio, compute_uv=False)
        null_dim = int(np.sum(svals < 1e-11 * max(svals[0], 1.0)))
        if null_dim != 1:
            raise DegenerateSteadyStateError(null_dim)
    return rho


def steady_state_by_evolution(
    lio: np.ndarray,
    rho0: np.ndarray,
    dt: float,
    t_block: float = 5.0,
    max_blocks: int = 200,
    tol: float = 1e-9,
) -> np.ndarray:
    """Independent cross-check: integrate until ||L[rho]|| < tol."""
    rho = np.asarray(rho0, dtype=complex)
    for _ in range(max_blocks):
        _, states = evolve(lio, rho, t_block, dt, sample_every=10**9)
        rho = states[-1]
        if np.linalg.norm(lio @ rho.reshape(-1, order="F")) < tol:
            return rho
    raise RuntimeError(f"no convergence to ||L[rho]|| < {tol} within the time budget")


def propagate_expm(lio: np.ndarray, rho0: np.ndarray, t: float) -> np.ndarray:
    """Propagate rho0 by exp(L t) exactly (scaling-and-squaring exponential).

    Preferred over step-by-step integration for the stiff joint cavity-spin
    problem, where the detuning forces prohibitively small RK4 steps.
    """
    from scipy.linalg import expm

    dim = rho0.shape[0]
    prop = expm(lio * t)
    rho = (prop @ np.asarray(rho0, dtype=complex).reshape(-1, order="F")).reshape(
        (dim, dim), order="F"
    )
    return (rho + rho.conj().T) / 2.0


def adiabatic_cavity_prediction(p: PhysicalParams, sx_expect: float) -> complex:
    """Slaved-cavity amplitude a_ss = (eta0 sqrt(N) - i g0 <S_x>/sqrt(N)) / (kappa + i Delta_c)."""
    rn = np.sqrt(p.n_qubits)
    return (p.eta0 * rn - 1j * p.g0 * sx_expect / rn) / (p.kappa + 1j * p.delta_c)


def initial_fock_cutoff(p: PhysicalParams, sx_expect: float = 0.0) -> int:
    """Starting cutoff ceil(4 (|a_ss|^2 + 1)) from the expected field scale."""
    a_ss = adiabatic_cavity_prediction(p, sx_expect)
    return int(np.ceil(4.0 * (abs(a_ss) ** 2 + 1.0)))


def fock_populations(fock_cutoff: int, sector: SpinSector, rho: np.ndarray) -> np.ndarray:
    """Photon-number distribution of a joint density matrix (spin traced out)."""
    d_s = sector.dim
    blocks = rho.reshape(fock_cutoff + 1, d_s, fock_cutoff + 1, d_s)
    return np.einsum("nini->n", blocks).real


def solve_joint_steady_state(p: PhysicalParams, sector: SpinSector, max_doublings: int = 5) -> JointState:
    """Steady state of the full driven model at an adaptively chosen cutoff.

    The cutoff starts at the slaved-cavity estimate and doubles until the top
    Fock level holds less than 1e-6 population.

    At delta_a = 0 the joint Hamiltonian conserves S_x, so the stationary
    manifold is (N+1)-dimensional (one slaved cavity state per S_x sector)
    and the solver returns one particular stationary mixture.  Every quantity
    the slaved-cavity approximation predicts is linear in <S_x>, so the
    validation is insensitive to which mixture is picked.
    """
    cutoff = initial_fock_cutoff(p)
    for _ in range(max_doublings + 1):
        lio = build_driven_dicke_liouvillian(p, sector, cutoff)
        rho = steady_state(lio, check_unique=(p.delta_a != 0))
        if fock_populations(cutoff, sector, rho)[-1] < _TOP_FOCK_TOL:
            return JointState(cutoff, sector, rho)
        cutoff *= 2
    raise RuntimeError("Fock cutoff did not converge; field larger than predicted")


def cavity_amplitude(state: JointState) -> complex:
    a = np.kron(_destroy(state.fock_cutoff), np.eye(state.sector.dim))
    return complex(np.trace(a @ state.rho))


def photon_number(state: JointState) -> float:
    pops = fock_populations(state.fock_cutoff, state.sector, state.rho)
    return float(pops @ np.arange(state.fock_cutoff + 1))


def joint_spin_expectations(state: JointState) -> np.ndarray:
    """(<S_x>, <S_y>, <S_z>) of the qubits in a joint state."""
    ops = build_spin_operators(state.sector)
    eye_f = np.eye(state.fock_cutoff + 1)
    out = []
    for op in (ops.sx, ops.sy, ops.sz):
        out.append(np.trace(np.kron(eye_f, op.matrix) @ state.rho).real)
    return np.array(out)


def qubit_spin_expectations(state: QubitState) -> np.ndarray:
    """(<S_x>, <S_y>, <S_z>) of a Dicke-sector density matrix."""
    ops = build_spin_operators(state.sector)
    return np.array(
        [np.trace(op.matrix @ state.rho).real for op in (ops.sx, ops.sy, ops.sz)]
    )

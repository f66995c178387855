"""Effective collective-spin model of pumped qubits dispersively coupled to a cavity.

With the cavity field slaved to the spins (valid for |kappa + i Delta_c| >>
g0), the qubits are governed by

    H = Delta_a S_z - h S_x - (lambda/N) (S_y^2 + S_z^2)

with drive h = -2 g0 eta0 kappa / (kappa^2 + Delta_c^2) and coupling
lambda = g0^2 Delta_c / (kappa^2 + Delta_c^2).  Units: hbar = 1 and all
rates/frequencies in units of the photon decay rate kappa.

At Delta_a = 0 the model conserves S_x; its spectrum is available in closed
form and the exact diagonalization here is checked against it.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .spins import CollectiveOperator, DickeVector, SpinSector, build_spin_operators

__all__ = [
    "PhysicalParams",
    "EffectiveParams",
    "GroundStateResult",
    "effective_params",
    "build_effective_hamiltonian",
    "ground_state",
    "analytic_isotropic_ground",
    "photon_number_ss",
    "verify_lmg_equivalence",
    "EigensolverError",
]


class EigensolverError(RuntimeError):
    """Raised when the dense symmetric eigensolver fails or its residual is bad."""


@dataclass(frozen=True)
class PhysicalParams:
    """Cavity-level inputs, all rates in units of kappa.

    g0 is the collective coupling (single-qubit coupling times sqrt(N));
    eta0 is the pump amplitude per sqrt(N).
    """

    g0: float
    eta0: float
    delta_c: float
    delta_a: float
    n_qubits: int
    kappa: float = 1.0

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be >= 1")
        if abs(self.kappa + 1j * self.delta_c) < 10 * abs(self.g0):
            warnings.warn(
                "dispersive regime is marginal: |kappa + i*delta_c| < 10*g0; "
                "the slaved-cavity model may be inaccurate",
                stacklevel=2,
            )


@dataclass(frozen=True)
class EffectiveParams:
    """Parameters (h, lam, delta_a) of the effective spin Hamiltonian."""

    h: float
    lam: float
    delta_a: float = 0.0


@dataclass(frozen=True)
class GroundStateResult:
    energy_per_qubit: float
    state: DickeVector
    s_x: float    # <S_x>/N, in [-1/2, 1/2]
    s_x2: float   # <S_x^2>/N^2


def effective_params(p: PhysicalParams) -> EffectiveParams:
    """Map cavity parameters to the effective (h, lambda, delta_a)."""
    denom = p.kappa**2 + p.delta_c**2
    h = -2.0 * p.g0 * p.eta0 * p.kappa / denom
    lam = p.g0**2 * p.delta_c / denom
    return EffectiveParams(h=h, lam=lam, delta_a=p.delta_a)


def build_effective_hamiltonian(
    eff: EffectiveParams, sector: SpinSector, basis_axis: str = "z"
) -> CollectiveOperator:
    """Assemble H = Delta_a S_z - h S_x - (lam/N)(S_y^2 + S_z^2), real symmetric.

    In the z basis the matrix is pentadiagonal (S_y^2 couples M to M +- 2).
    Since S_y^2 + S_z^2 = S^2 - S_x^2, the x-quantized basis is the natural
    one: there H is tridiagonal, and exactly diagonal at Delta_a = 0, so
    eigenvectors of the ordered phase come out as clean basis vectors.  The
    x representation uses S_x -> diag(M) and S_z -> -(standard tridiagonal
    S_x matrix), i.e. the frame rotation x->z, z->-x.
    """
    ops = build_spin_operators(sector)
    n = sector.n_qubits
    if basis_axis == "z":
        mat = (
            eff.delta_a * ops.sz.matrix
            - eff.h * ops.sx.matrix
            - (eff.lam / n) * (ops.sy.matrix @ ops.sy.matrix + ops.sz.matrix @ ops.sz.matrix)
        )
    elif basis_axis == "x":
        s = sector.n_qubits / 2.0
        m = sector.m_values()
        mat = (
            eff.delta_a * (-ops.sx.matrix)
            - eff.h * np.diag(m)
            - (eff.lam / n) * np.diag(s * (s + 1) - m**2)
        )
    else:
        raise ValueError(f"unsupported basis axis {basis_axis!r}")
    assert np.max(np.abs(mat.imag)) < 1e-12 * max(1.0, np.max(np.abs(mat.real)))
    return CollectiveOperator(sector, mat.real, basis_axis)


def ground_state(H: CollectiveOperator) -> GroundStateResult:
    """Lowest eigenpair of a Hermitian collective Hamiltonian, plus observables."""
    mat = np.asarray(H.matrix)
    if np.max(np.abs(mat - mat.conj().T)) > 1e-10 * max(1.0, np.max(np.abs(mat))):
        raise ValueError("Hamiltonian is not Hermitian")
    try:
        evals, evecs = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"dense eigensolver failed: {exc}") from exc
    e0 = evals[0]
    v0 = evecs[:, 0].astype(complex)
    norm_h = np.linalg.norm(mat)
    resid = np.linalg.norm(mat @ v0 - e0 * v0)
    if resid > 1e-9 * max(1.0, norm_h):
        raise EigensolverError(f"eigenpair residual {resid:.3e} exceeds tolerance")
    n = H.sector.n_qubits
    if H.basis_axis == "x":
        sx = np.diag(H.sector.m_values()).astype(complex)
    else:
        sx = build_spin_operators(H.sector).sx.matrix
    s_x = float((v0.conj() @ (sx @ v0)).real) / n
    s_x2 = float((v0.conj() @ (sx @ (sx @ v0))).real) / n**2
    psi = DickeVector(H.sector, v0 / np.linalg.norm(v0), H.basis_axis)
    return GroundStateResult(energy_per_qubit=float(e0) / n, state=psi, s_x=s_x, s_x2=s_x2)


def _isotropic_energy_per_qubit(h: float, lam: float, n: int, m: np.ndarray) -> np.ndarray:
    s = n / 2.0
    return -(h / n) * m - (lam / n**2) * (s * (s + 1) - m**2)


def analytic_isotropic_ground(h: float, lam: float, sector: SpinSector) -> tuple[float, float]:
    """Exact ground state of the S_x-conserving model (delta_a = 0, lam > 0).

    Returns (M0, energy per qubit) where M0 is the S_x quantum number of the
    ground level, found by enumerating E(M)/N = -hM/N - (lam/N^2)(S(S+1)-M^2)
    over all M.  The closed-form shortcut M0 = clamp(round(hN/(2 lam)), -S, S)
    is evaluated as a cross-check; a mismatch in energy raises.

    Exact +-M degeneracies (hN/(2 lam) halfway between levels) are broken by
    preferring the larger |M|, then the positive sign.
    """
    if lam <= 0:
        raise ValueError("lam must be positive (ferromagnetic coupling)")
    n = sector.n_qubits
    m = sector.m_values()
    energies = _isotropic_energy_per_qubit(h, lam, n, m)
    e_min = energies.min()
    # tie-break among numerically degenerate minima: larger |M|, then M > 0
    tied = m[energies <= e_min + 1e-15 * max(1.0, abs(e_min))]
    m0 = max(tied, key=lambda mm: (abs(mm), mm))
    # closed-form fast path, validated against the enumeration; 2M must share
    # the parity of N, so snap to the two neighbouring grid levels
    target = h * n / lam  # = 2 * hN/(2 lam)
    lo = int(np.floor(target))
    candidates = {tm for tm in (lo - 1, lo, lo + 1, lo + 2) if (tm + n) % 2 == 0}
    candidates = [min(max(tm, -n), n) / 2.0 for tm in candidates]
    e_fast = min(
        float(_isotropic_energy_per_qubit(h, lam, n, np.array([mm]))[0])
        for mm in candidates
    )
    if e_fast > e_min + 1e-10 * max(1.0, abs(e_min)):
        raise AssertionError(
            f"closed-form fast path disagrees with enumeration M0={m0}"
        )
    return float(m0), float(e_min)


def photon_number_ss(p: PhysicalParams, s_x2: float) -> float:
    """Steady-state cavity photon number for a given <S_x^2> (absolute, not /N^2)."""
    if s_x2 < 0:
        raise ValueError("<S_x^2> must be non-negative")
    denom = p.kappa**2 + p.delta_c**2
    return p.eta0**2 * p.n_qubits / denom + p.g0**2 * s_x2 / (p.n_qubits * denom)


def verify_lmg_equivalence(eff: EffectiveParams, sector: SpinSector) -> float:
    """Spectral distance between H (at delta_a=0) and its axis-cycled partner.

    The unitary exp[-i (2 pi/3)(S_x+S_y+S_z)/sqrt(3)] cyclically permutes
    (x, y, z), so -h S_x - (lam/N)(S_y^2+S_z^2) and
    -h S_y - (lam/N)(S_z^2+S_x^2) are isospectral.  Returns the maximum
    absolute difference of the sorted spectra.
    """
    if eff.delta_a != 0:
        raise ValueError("axis-cycling equivalence only holds at delta_a = 0")
    ops = build_spin_operators(sector)
    n = sector.n_qubits
    h_orig = (
        -eff.h * ops.sx.matrix
        - (eff.lam / n) * (ops.sy.matrix @ ops.sy.matrix + ops.sz.matrix @ ops.sz.matrix)
    )
    h_cycled = (
        -eff.h * ops.sy.matrix
        - (eff.lam / n) * (ops.sz.matrix @ ops.sz.matrix + ops.sx.matrix @ ops.sx.matrix)
    )
    spec_a = np.linalg.eigvalsh(h_orig)
    spec_b = np.linalg.eigvalsh(h_cycled)
    return float(np.max(np.abs(spec_a - spec_b)))

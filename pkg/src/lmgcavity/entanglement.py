"""Pairwise entanglement of symmetric multi-qubit states.

A permutation-symmetric pure state of N qubits reduces, after tracing out
N-2 parties, to a 4x4 two-qubit density matrix that can be assembled
combinatorially from the Dicke amplitudes (no 2^N objects needed):

    |D_k^N> = sum_j sqrt( C(2,j) C(N-2,k-j) / C(N,k) ) |D_j^2> (x) |D_{k-j}^{N-2}>

with j in {0,1,2} and k the excitation number.  The Wootters concurrence of
the reduced pair is the usual spin-flip construction; for the eigenstates
|S,M> of one spin component it has the closed form

    C_R(M) = (1/2N) [ N^2 - 4M^2 - sqrt((N^2-4M^2)((N-2)^2-4M^2)) ]

where C_R is the concurrence rescaled by (N-1).  (The factor N-1 is forced
by the closed form itself: C_R(M=0) = 1 while the pair concurrence of the
half-filled Dicke state is 1/(N-1).)
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np
from scipy.special import gammaln

from .spins import DickeVector, SpinSector

__all__ = [
    "TwoQubitState",
    "reduced_two_qubit",
    "concurrence",
    "rescaled_concurrence_numeric",
    "rescaled_concurrence_analytic",
    "rescaled_concurrence_closed_form",
]

# basis order {|ee>, |eg>, |ge>, |gg>}
_SIGMA_YY = np.kron(
    np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]])
).real  # sigma_y (x) sigma_y is real: diag-flip with signs


@dataclass(frozen=True)
class TwoQubitState:
    """4x4 density matrix in the basis {|ee>, |eg>, |ge>, |gg>}."""

    matrix: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.matrix, dtype=complex)
        if rho.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
            raise ValueError("two-qubit state is not Hermitian")
        if abs(np.trace(rho).real - 1.0) > 1e-12:
            raise ValueError(f"two-qubit state has trace {np.trace(rho).real!r}")
        if np.linalg.eigvalsh(rho).min() < -1e-10:
            raise ValueError("two-qubit state is not positive semidefinite")
        swap = rho[np.ix_([0, 2, 1, 3], [0, 2, 1, 3])]
        if np.max(np.abs(rho - swap)) > 1e-12:
            raise ValueError("two-qubit state is not symmetric under qubit exchange")
        object.__setattr__(self, "matrix", rho)


def _log_binom(n: int, k: int) -> float:
    if k < 0 or k > n:
        return -np.inf
    if n <= 60:
        return float(np.log(comb(n, k)))
    return float(gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1))


def reduced_two_qubit(psi: DickeVector) -> TwoQubitState:
    """Two-qubit reduced density matrix of a symmetric pure state.

    The local basis {|e>, |g>} is the one matching the state's quantization
    axis; local-unitary invariant quantities (concurrence in particular) do
    not depend on this choice.
    """
    n = psi.sector.n_qubits
    if n < 2:
        raise ValueError("need at least two qubits to form a pair")
    amps = psi.amplitudes  # index k = M + S = excitation number, ascending
    # accumulate over environment Dicke states; j indexes pair excitations
    rho3 = np.zeros((3, 3), dtype=complex)  # basis |D_0^2>, |D_1^2>, |D_2^2>
    for m_env in range(n - 1):
        if not np.any(amps[m_env:m_env + 3]):
            continue
        v = np.zeros(3, dtype=complex)
        for j in range(3):
            k = m_env + j
            if 0 <= k <= n:
                logw = 0.5 * (
                    _log_binom(2, j) + _log_binom(n - 2, m_env) - _log_binom(n, k)
                )
                v[j] = amps[k] * np.exp(logw)
        rho3 += np.outer(v, v.conj())
    # embed the pair Dicke basis into {|ee>, |eg>, |ge>, |gg>}
    embed = np.zeros((4, 3), dtype=complex)
    embed[0, 2] = 1.0
    embed[1, 1] = embed[2, 1] = 1.0 / np.sqrt(2.0)
    embed[3, 0] = 1.0
    rho = embed @ rho3 @ embed.conj().T
    rho = (rho + rho.conj().T) / 2.0
    rho /= np.trace(rho).real
    return TwoQubitState(rho)


def concurrence(rho: TwoQubitState) -> float:
    """Wootters concurrence, in [0, 1].

    C = max(0, mu1 - mu2 - mu3 - mu4) with mu_i the descending square roots
    of the eigenvalues of rho (sy(x)sy) rho* (sy(x)sy); tiny negative
    eigenvalues from round-off are clamped to zero.
    """
    mat = rho.matrix
    flipped = _SIGMA_YY @ mat.conj() @ _SIGMA_YY
    evals = np.linalg.eigvals(mat @ flipped)
    mu = np.sort(np.sqrt(np.clip(evals.real, 0.0, None)))[::-1]
    return float(max(0.0, mu[0] - mu[1] - mu[2] - mu[3]))


def rescaled_concurrence_numeric(psi: DickeVector) -> float:
    """(N-1) times the pair concurrence of a symmetric state."""
    n = psi.sector.n_qubits
    return (n - 1) * concurrence(reduced_two_qubit(psi))


def rescaled_concurrence_closed_form(n_qubits: int, m: float) -> float:
    """Closed-form rescaled concurrence at a (possibly continuous) spin projection.

    For |m| between (N-2)/2 and N/2 the inner square root turns negative and
    the expression ceases to exist; the curve is continued by zero there,
    which is what produces an abrupt cutoff when m is fed a continuously
    varying order parameter.
    """
    n = n_qubits
    a = n**2 - 4.0 * m * m
    b = (n - 2) ** 2 - 4.0 * m * m
    if a <= 0 or b < 0:
        return 0.0
    return (a - np.sqrt(a * b)) / (2.0 * n)


def rescaled_concurrence_analytic(sector: SpinSector, two_m: int) -> float:
    """Closed form C_R for the eigenstate |S,M> (M passed as 2M).

    Equals (N-1) times the Wootters concurrence of the reduced pair state.
    """
    n = sector.n_qubits
    if abs(two_m) > n:
        raise ValueError(f"|M| = {abs(two_m)/2} exceeds S = {n/2}")
    if (two_m + n) % 2 != 0:
        raise ValueError(f"2M = {two_m} is not on the M grid of N = {n}")
    return rescaled_concurrence_closed_form(n, two_m / 2.0)

"""Collective spin algebra in the maximum-spin (Dicke) sector.

N identical two-level systems restricted to total spin S = N/2 live in an
(N+1)-dimensional space spanned by |S,M> with M = -S, ..., S.  Basis states
are ordered by ascending M, so S_z is diagonal with ascending entries and
the ladder operators occupy single off-diagonal bands:

    S_z |M> = M |M>
    S_+- |M> = sqrt(S(S+1) - M(M+-1)) |M +- 1>

All matrices are dense; the dimension never exceeds a few hundred here.
Half-integer M (odd N) is tracked exactly as twice-M integers internally;
floating-point values appear only inside matrix elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import expm

__all__ = [
    "SpinSector",
    "CollectiveOperator",
    "DickeVector",
    "SpinOperators",
    "build_spin_operators",
    "expectation",
    "rotate_basis",
]

_AXES = ("x", "z")


@dataclass(frozen=True)
class SpinSector:
    """The symmetric (maximum total spin) sector of N qubits."""

    n_qubits: int

    def __post_init__(self):
        if not isinstance(self.n_qubits, (int, np.integer)) or self.n_qubits < 1:
            raise ValueError(f"n_qubits must be a positive integer, got {self.n_qubits!r}")

    @property
    def total_spin(self) -> Fraction:
        """S = N/2, kept exact (half-integer for odd N)."""
        return Fraction(self.n_qubits, 2)

    @property
    def dim(self) -> int:
        return self.n_qubits + 1

    def two_m_values(self) -> np.ndarray:
        """2M for M = -S..S, ascending; exact integers."""
        return np.arange(-self.n_qubits, self.n_qubits + 1, 2)

    def m_values(self) -> np.ndarray:
        """M = -S..S ascending as floats (exact: halves are binary-representable)."""
        return self.two_m_values() / 2.0


@dataclass(frozen=True)
class CollectiveOperator:
    """A dense operator on a spin sector, tagged with its quantization axis."""

    sector: SpinSector
    matrix: np.ndarray
    basis_axis: str = "z"

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if m.shape != (self.sector.dim, self.sector.dim):
            raise ValueError(
                f"matrix shape {m.shape} does not match sector dim {self.sector.dim}"
            )
        if self.basis_axis not in _AXES:
            raise ValueError(f"unsupported basis axis {self.basis_axis!r}")
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class DickeVector:
    """Normalized state amplitudes over |S,M>, M ascending, in a given axis."""

    sector: SpinSector
    amplitudes: np.ndarray
    basis_axis: str = "z"

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (self.sector.dim,):
            raise ValueError(
                f"amplitude length {amp.shape} does not match sector dim {self.sector.dim}"
            )
        norm2 = float(np.sum(np.abs(amp) ** 2))
        if abs(norm2 - 1.0) > 1e-12:
            raise ValueError(f"state not normalized: |psi|^2 = {norm2!r}")
        if self.basis_axis not in _AXES:
            raise ValueError(f"unsupported basis axis {self.basis_axis!r}")
        object.__setattr__(self, "amplitudes", amp)

    @classmethod
    def basis_state(cls, sector: SpinSector, two_m: int, basis_axis: str = "z") -> "DickeVector":
        """|S,M> with M given as 2M (so half-integers stay exact)."""
        two_ms = sector.two_m_values()
        idx = np.where(two_ms == two_m)[0]
        if len(idx) != 1:
            raise ValueError(f"2M={two_m} outside sector with N={sector.n_qubits}")
        amp = np.zeros(sector.dim, dtype=complex)
        amp[idx[0]] = 1.0
        return cls(sector, amp, basis_axis)


@dataclass(frozen=True)
class SpinOperators:
    """The standard operator set on one sector (z quantization)."""

    sector: SpinSector
    sx: CollectiveOperator
    sy: CollectiveOperator
    sz: CollectiveOperator
    splus: CollectiveOperator
    sminus: CollectiveOperator
    ssquared: CollectiveOperator


def build_spin_operators(sector: SpinSector) -> SpinOperators:
    """Construct S_x, S_y, S_z, S_+, S_-, S^2 as dense matrices (z basis).

    Matrix elements are the textbook angular-momentum ones; S^2 comes out
    S(S+1) times the identity since the sector is a single spin multiplet.
    """
    dim = sector.dim
    s = sector.n_qubits / 2.0
    m = sector.m_values()
    sz = np.diag(m).astype(complex)
    sp = np.zeros((dim, dim), dtype=complex)
    for i in range(dim - 1):
        sp[i + 1, i] = np.sqrt(s * (s + 1) - m[i] * (m[i] + 1))
    sm = sp.conj().T
    sx = (sp + sm) / 2.0
    sy = (sp - sm) / 2.0j
    s2 = sx @ sx + sy @ sy + sz @ sz

    def op(mat):
        return CollectiveOperator(sector, mat, "z")

    return SpinOperators(sector, op(sx), op(sy), op(sz), op(sp), op(sm), op(s2))


def expectation(op: CollectiveOperator, psi: DickeVector) -> complex:
    """<psi| op |psi>.  Sector and quantization axis must match."""
    if op.sector != psi.sector:
        raise ValueError("operator and state live on different sectors")
    if op.basis_axis != psi.basis_axis:
        raise ValueError(
            f"basis mismatch: operator in {op.basis_axis!r}, state in {psi.basis_axis!r}"
        )
    return complex(psi.amplitudes.conj() @ (op.matrix @ psi.amplitudes))


def _y_rotation(sector: SpinSector) -> np.ndarray:
    """R = exp(-i pi S_y / 2), satisfying R S_z R^dag = S_x, so |M>_x = R |M>_z."""
    ops = build_spin_operators(sector)
    return expm(-0.5j * np.pi * ops.sy.matrix)


def rotate_basis(psi: DickeVector, from_axis: str, to_axis: str) -> DickeVector:
    """Re-express a state between x and z quantization axes.

    The same physical state is returned with amplitudes relative to the other
    axis' eigenbasis; norm is preserved and a round trip is the identity.
    """
    for ax in (from_axis, to_axis):
        if ax not in _AXES:
            raise ValueError(f"unsupported axis {ax!r}")
    if psi.basis_axis != from_axis:
        raise ValueError(
            f"state is quantized along {psi.basis_axis!r}, not {from_axis!r}"
        )
    if from_axis == to_axis:
        return psi
    rot = _y_rotation(psi.sector)
    if from_axis == "x":  # x -> z
        amp = rot @ psi.amplitudes
    else:  # z -> x
        amp = rot.conj().T @ psi.amplitudes
    amp = amp / np.linalg.norm(amp)
    return DickeVector(psi.sector, amp, to_axis)

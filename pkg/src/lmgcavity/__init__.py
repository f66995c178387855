"""Driven collective-spin (LMG-type) model of qubits coupled through a lossy cavity.

Subpackages:
    spins         Dicke-sector operators, states, and basis rotations
    effective     slaved-cavity effective Hamiltonian and exact ground states
    entanglement  pairwise (Wootters) concurrence of symmetric states
    meanfield     dissipative Bloch equations, fixed points, bifurcations
    lindblad      dense-superoperator master-equation simulations
    cli           `lmgcavity` command-line sweeps (CSV + JSON sidecar)
"""

__version__ = "0.1.0"

from .effective import (
    EffectiveParams,
    GroundStateResult,
    PhysicalParams,
    analytic_isotropic_ground,
    build_effective_hamiltonian,
    effective_params,
    ground_state,
    photon_number_ss,
)
from .entanglement import (
    TwoQubitState,
    concurrence,
    reduced_two_qubit,
    rescaled_concurrence_analytic,
    rescaled_concurrence_closed_form,
    rescaled_concurrence_numeric,
)
from .meanfield import (
    FixedPoint,
    MeanFieldParams,
    all_fixed_points,
    bifurcation_sweep,
    bloch_rhs,
    integrate_trajectory,
)
from .spins import (
    CollectiveOperator,
    DickeVector,
    SpinSector,
    build_spin_operators,
    expectation,
    rotate_basis,
)

__all__ = [
    "__version__",
    "SpinSector", "DickeVector", "CollectiveOperator",
    "build_spin_operators", "expectation", "rotate_basis",
    "PhysicalParams", "EffectiveParams", "GroundStateResult",
    "effective_params", "build_effective_hamiltonian", "ground_state",
    "analytic_isotropic_ground", "photon_number_ss",
    "TwoQubitState", "reduced_two_qubit", "concurrence",
    "rescaled_concurrence_numeric", "rescaled_concurrence_analytic",
    "rescaled_concurrence_closed_form",
    "MeanFieldParams", "FixedPoint", "bloch_rhs", "integrate_trajectory",
    "all_fixed_points", "bifurcation_sweep",
]

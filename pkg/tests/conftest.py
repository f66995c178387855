"""Shared test helpers: independent brute-force constructions in the full 2^N space.

These deliberately avoid the library's combinatorial shortcuts so they can
serve as oracles for them.
"""

from itertools import combinations
from math import comb

import numpy as np
import pytest


def dicke_state_full(n: int, k: int) -> np.ndarray:
    """|D_k^N> as a dense vector in the 2^N computational basis.

    Qubit 0 is the most significant bit; bit value 1 means excited.
    """
    vec = np.zeros(2**n)
    for excited in combinations(range(n), k):
        idx = sum(1 << (n - 1 - q) for q in excited)
        vec[idx] = 1.0
    return vec / np.sqrt(comb(n, k))


def symmetric_state_full(n: int, amps: np.ndarray) -> np.ndarray:
    """Full 2^N vector of a symmetric state with Dicke amplitudes amps[k]."""
    vec = np.zeros(2**n, dtype=complex)
    for k, a in enumerate(amps):
        vec += a * dicke_state_full(n, k)
    return vec


def pair_rdm_bruteforce(n: int, psi_full: np.ndarray) -> np.ndarray:
    """Two-qubit RDM of qubits (0, 1) by explicit partial trace over 2^(N-2).

    Returned in the basis {|ee>, |eg>, |ge>, |gg>} to match the library's
    convention (qubit 0 = most significant bit, |e> = bit 1 listed first).
    """
    psi = psi_full.reshape(4, 2 ** (n - 2))
    rho = psi @ psi.conj().T
    # computational order of the two leading bits is |00>,|01>,|10>,|11> =
    # |gg>,|ge>,|eg>,|ee>; flip to {ee, eg, ge, gg}
    perm = [3, 2, 1, 0]
    return rho[np.ix_(perm, perm)]


@pytest.fixture
def rng():
    return np.random.default_rng(20260824)


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, shown after the normal summary."""
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

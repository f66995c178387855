"""Dissipative mean-field dynamics of the driven collective-spin model.

In the thermodynamic limit the Bloch vector s = (s_x, s_y, s_z) (unit-sphere
normalization, s = 2<S>/N) obeys

    ds_x/dt = -Delta_a s_y - gamma s_z s_x
    ds_y/dt =  Delta_a s_x + h s_z - lambda s_z s_x - gamma s_z s_y
    ds_z/dt = -h s_y + lambda s_y s_x + gamma (s_x^2 + s_y^2)

which conserves |s| exactly (s . ds/dt = 0 identically).  Fixed points with
gamma > 0 require s_x = 0 or s_z = 0:

* s_x = 0 branch (Delta_a = 0): s_y = h/gamma, s_z = +-sqrt(1-(h/gamma)^2),
  existing only for |h| < gamma.
* s_z = 0 branch: eliminating s_x between -h s_y + lambda s_x s_y
  + gamma = 0 and s_x^2 + s_y^2 = 1 gives the quartic

      s_y^4 - [1-(h/lambda)^2] s_y^2 - (2 h gamma / lambda^2) s_y
            + (gamma/lambda)^2 = 0

  solved via companion-matrix eigenvalues; every root is re-verified
  against the equations of motion before being accepted.

Linear stability note: on the s_z = 0 branch the flow restricted to the
sphere is trace-free, so the non-radial eigenvalue pair is either real
(saddle) or purely imaginary (center).  Asymptotically attracting points
exist only on the s_x = 0 branch; the "stable" solid branches of the
bifurcation diagram are neutrally stable centers and classify as marginal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "MeanFieldParams",
    "FixedPoint",
    "Trajectory",
    "bloch_rhs",
    "integrate_trajectory",
    "jacobian",
    "classify_stability",
    "energy_density",
    "fixed_points_sx_zero",
    "fixed_points_sz_zero",
    "all_fixed_points",
    "bifurcation_sweep",
]

_NORM_TOL = 1e-9
_RHS_TOL = 1e-9


@dataclass(frozen=True)
class MeanFieldParams:
    h: float
    lam: float
    gamma: float
    delta_a: float = 0.0

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError("gamma must be non-negative")
        if self.lam <= 0:
            raise ValueError("lam must be positive")


@dataclass(frozen=True)
class FixedPoint:
    point: np.ndarray            # (s_x, s_y, s_z) on the unit sphere
    branch: str                  # "sx_zero" | "sz_zero"
    jacobian_eigs: np.ndarray    # all three eigenvalues, incl. the radial zero
    stability: str               # "stable" | "unstable" | "marginal"
    energy_density: float


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    points: np.ndarray           # shape (len(times), 3)
    renormalized: bool


def _check_on_sphere(s: np.ndarray) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    if s.shape != (3,):
        raise ValueError("Bloch vector must have three components")
    if abs(s @ s - 1.0) > 1e-9:
        raise ValueError(f"Bloch vector norm^2 = {s @ s!r} is off the unit sphere")
    return s


def bloch_rhs(s, p: MeanFieldParams) -> np.ndarray:
    """Right-hand side of the Bloch equations; s . rhs = 0 identically."""
    x, y, z = np.asarray(s, dtype=float)
    return np.array([
        -p.delta_a * y - p.gamma * z * x,
        p.delta_a * x + p.h * z - p.lam * z * x - p.gamma * z * y,
        -p.h * y + p.lam * y * x + p.gamma * (x * x + y * y),
    ])


def jacobian(s, p: MeanFieldParams) -> np.ndarray:
    """Analytic derivative of bloch_rhs with respect to (s_x, s_y, s_z)."""
    x, y, z = np.asarray(s, dtype=float)
    g, lam, h, da = p.gamma, p.lam, p.h, p.delta_a
    return np.array([
        [-g * z, -da, -g * x],
        [da - lam * z, -g * z, h - lam * x - g * y],
        [lam * y + 2 * g * x, -h + lam * x + 2 * g * y, 0.0],
    ])


def classify_stability(eigs, zero_tol: float = 1e-7) -> str:
    """Three-way stability class from the Jacobian spectrum.

    The eigenvalue with smallest |Re| is discarded as the radial (norm
    conserving) direction; the tolerance scales with the spectral radius.
    """
    eigs = sorted(np.asarray(eigs, dtype=complex), key=lambda e: abs(e.real))
    rest = eigs[1:]
    tol = zero_tol * max(1.0, max(abs(e) for e in eigs))
    if any(e.real > tol for e in rest):
        return "unstable"
    if all(e.real < -tol for e in rest):
        return "stable"
    return "marginal"


def energy_density(s, p: MeanFieldParams) -> float:
    """E = -h s_x - lambda (s_y^2 + s_z^2), in units of hbar*kappa."""
    x, y, z = np.asarray(s, dtype=float)
    return -p.h * x - p.lam * (y * y + z * z)


def integrate_trajectory(
    s0,
    p: MeanFieldParams,
    t_final: float,
    dt: float,
    renormalize: bool = False,
    sample_every: int = 1,
) -> Trajectory:
    """Classic fixed-step fourth-order integration on the sphere.

    The step is rejected up front if dt * max|rhs(s0)| > 0.1.  Without
    renormalization the norm drift stays below ~1e-9 over t_final = 100 at
    the default step sizes used in the tests.
    """
    s = _check_on_sphere(s0).copy()
    if dt <= 0 or t_final <= 0:
        raise ValueError("dt and t_final must be positive")
    if dt * np.max(np.abs(bloch_rhs(s, p))) > 0.1:
        raise ValueError("time step too large for the local velocity")
    n_steps = int(round(t_final / dt))
    times = [0.0]
    points = [s.copy()]
    for k in range(n_steps):
        k1 = bloch_rhs(s, p)
        k2 = bloch_rhs(s + 0.5 * dt * k1, p)
        k3 = bloch_rhs(s + 0.5 * dt * k2, p)
        k4 = bloch_rhs(s + dt * k3, p)
        s = s + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if renormalize:
            s /= np.linalg.norm(s)
        if (k + 1) % sample_every == 0 or k == n_steps - 1:
            times.append((k + 1) * dt)
            points.append(s.copy())
    return Trajectory(np.array(times), np.array(points), renormalize)


def _make_fixed_point(s: np.ndarray, branch: str, p: MeanFieldParams) -> FixedPoint:
    eigs = np.linalg.eigvals(jacobian(s, p))
    return FixedPoint(
        point=s,
        branch=branch,
        jacobian_eigs=eigs,
        stability=classify_stability(eigs),
        energy_density=energy_density(s, p),
    )


def fixed_points_sx_zero(p: MeanFieldParams) -> list[FixedPoint]:
    """Fixed points with s_x = 0: (0, h/gamma, +-sqrt(1-(h/gamma)^2)).

    Both s_z signs are returned; stability separates them.  Empty for
    |h| >= gamma.
    """
    if p.gamma == 0:
        raise ValueError("the s_x = 0 branch is undefined at gamma = 0")
    if p.delta_a != 0:
        raise ValueError("branch formulas assume delta_a = 0")
    if abs(p.h) >= p.gamma:
        return []
    y = p.h / p.gamma
    z = np.sqrt(1.0 - y * y)
    out = []
    for s in (np.array([0.0, y, z]), np.array([0.0, y, -z])):
        assert np.linalg.norm(bloch_rhs(s, p)) < _RHS_TOL
        out.append(_make_fixed_point(s, "sx_zero", p))
    return out


def fixed_points_sz_zero(p: MeanFieldParams) -> list[FixedPoint]:
    """Fixed points with s_z = 0, from the quartic in s_y.

    All real roots with |s_y| <= 1 are taken from the companion-matrix
    eigenvalues (numpy.roots); for each root both signs of
    s_x = +-sqrt(1-s_y^2) are tested and only combinations with
    ||rhs|| < 1e-9 are kept.
    """
    if p.delta_a != 0:
        raise ValueError("branch formulas assume delta_a = 0")
    h, lam, g = p.h, p.lam, p.gamma
    coeffs = [1.0, 0.0, -(1.0 - (h / lam) ** 2), -2.0 * h * g / lam**2, (g / lam) ** 2]
    out = []
    seen = []
    for root in np.roots(coeffs):
        if abs(root.imag) > 1e-9 or abs(root.real) > 1.0 + 1e-12:
            continue
        y = float(np.clip(root.real, -1.0, 1.0))
        x_mag = np.sqrt(max(0.0, 1.0 - y * y))
        for x in (x_mag, -x_mag):
            s = np.array([x, y, 0.0])
            if np.linalg.norm(bloch_rhs(s, p)) >= _RHS_TOL:
                continue
            if any(np.linalg.norm(s - q) < 1e-9 for q in seen):
                continue
            seen.append(s)
            out.append(_make_fixed_point(s, "sz_zero", p))
    return out


def all_fixed_points(p: MeanFieldParams) -> list[FixedPoint]:
    """Both branches, ordered by branch label then ascending s_x."""
    fps = list(fixed_points_sz_zero(p))
    if p.gamma > 0:
        fps += fixed_points_sx_zero(p)
    return sorted(fps, key=lambda f: (f.branch, f.point[0]))


def bifurcation_sweep(h_values, lam: float, gamma: float, delta_a: float = 0.0):
    """Fixed points of every branch over a drive grid.

    Returns a list of (h, FixedPoint) pairs, grid-ordered, with a
    deterministic (branch, ascending s_x) ordering within each h.
    """
    h_values = np.asarray(h_values, dtype=float)
    if len(h_values) >= 2 and not (np.all(np.diff(h_values) > 0) or np.all(np.diff(h_values) < 0)):
        raise ValueError("h grid must be monotone")
    rows = []
    for h in h_values:
        p = MeanFieldParams(h=float(h), lam=lam, gamma=gamma, delta_a=delta_a)
        for fp in all_fixed_points(p):
            rows.append((float(h), fp))
    return rows

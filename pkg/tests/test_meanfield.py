import numpy as np
import pytest

from lmgcavity.meanfield import (
    MeanFieldParams,
    all_fixed_points,
    bifurcation_sweep,
    bloch_rhs,
    classify_stability,
    energy_density,
    fixed_points_sx_zero,
    fixed_points_sz_zero,
    integrate_trajectory,
    jacobian,
)

LAM = 4.99999875


def params(h, gamma=0.2, delta_a=0.0):
    return MeanFieldParams(h=h, lam=LAM, gamma=gamma, delta_a=delta_a)


def random_unit(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def test_flow_is_tangent_to_sphere(rng):
    for _ in range(200):
        p = params(rng.uniform(-10, 10), gamma=rng.uniform(0, 1), delta_a=rng.uniform(-1, 1))
        s = random_unit(rng)
        assert abs(s @ bloch_rhs(s, p)) < 1e-13


def test_jacobian_matches_finite_differences(rng):
    eps = 1e-6
    for _ in range(100):
        p = params(rng.uniform(-10, 10), gamma=rng.uniform(0, 1), delta_a=rng.uniform(-1, 1))
        s = random_unit(rng)
        jac = jacobian(s, p)
        num = np.empty((3, 3))
        for j in range(3):
            dv = np.zeros(3)
            dv[j] = eps
            num[:, j] = (bloch_rhs(s + dv, p) - bloch_rhs(s - dv, p)) / (2 * eps)
        assert np.max(np.abs(jac - num)) / max(1.0, np.max(np.abs(jac))) < 1e-5


def test_parameter_validation():
    with pytest.raises(ValueError):
        MeanFieldParams(h=1.0, lam=5.0, gamma=-0.1)
    with pytest.raises(ValueError):
        MeanFieldParams(h=1.0, lam=0.0, gamma=0.1)


# ------------------------------------------------------------------ dynamics


def test_norm_conservation_long_run():
    traj = integrate_trajectory([0.0, 0.6, 0.8], params(2.0), t_final=100.0, dt=0.005)
    norms = np.linalg.norm(traj.points, axis=1)
    assert np.max(np.abs(norms - 1.0)) < 1e-9
    assert not traj.renormalized


def test_oversized_step_rejected():
    with pytest.raises(ValueError, match="time step"):
        integrate_trajectory([0.0, 0.6, 0.8], params(8.0), t_final=1.0, dt=0.5)


def test_off_sphere_start_rejected():
    with pytest.raises(ValueError, match="unit sphere"):
        integrate_trajectory([0.0, 0.0, 0.5], params(1.0), t_final=1.0, dt=0.01)


def test_trajectory_settles_on_attractor():
    # |h| < gamma: the north-side s_x = 0 point is a genuine attractor
    p = params(0.1, gamma=0.2)
    (target,) = [f for f in fixed_points_sx_zero(p) if f.stability == "stable"]
    traj = integrate_trajectory([0.05, 0.45, np.sqrt(1 - 0.05**2 - 0.45**2)], p,
                                t_final=300.0, dt=0.01, sample_every=100)
    assert np.linalg.norm(traj.points[-1] - target.point) < 1e-6


# --------------------------------------------------------------- fixed points


def test_sx_zero_branch_window():
    assert fixed_points_sx_zero(params(0.25, gamma=0.2)) == []
    pts = fixed_points_sx_zero(params(0.1, gamma=0.2))
    assert len(pts) == 2
    kinds = sorted(f.stability for f in pts)
    assert kinds == ["stable", "unstable"]
    for f in pts:
        assert f.point[0] == 0.0
        assert f.point[1] == pytest.approx(0.5)


def test_sx_zero_branch_guards():
    with pytest.raises(ValueError):
        fixed_points_sx_zero(MeanFieldParams(h=0.1, lam=5.0, gamma=0.0))
    with pytest.raises(ValueError):
        fixed_points_sx_zero(MeanFieldParams(h=0.1, lam=5.0, gamma=0.2, delta_a=0.1))


@pytest.mark.parametrize("h", [-9.0, -3.0, -0.5, 0.5, 1.0, 3.0, 4.0, 7.0, 9.5])
def test_sz_zero_points_are_stationary(h):
    for f in fixed_points_sz_zero(params(h)):
        assert np.linalg.norm(bloch_rhs(f.point, params(h))) < 1e-9
        assert f.point[2] == 0.0
        assert np.linalg.norm(f.point) == pytest.approx(1.0, abs=1e-9)


def test_branch_counts_track_drive():
    # below the knee four s_z = 0 roots survive; far above only two remain
    assert len(fixed_points_sz_zero(params(0.5))) == 4
    assert len(fixed_points_sz_zero(params(7.0))) == 2


def test_weak_damping_approaches_lossless_envelope():
    """gamma -> 0: the ordered branch tends to |s_x| = min(|h|/lam, 1)."""
    for h in (1.0, 2.5, 4.0, 6.0):
        pts = fixed_points_sz_zero(MeanFieldParams(h=h, lam=LAM, gamma=1e-4))
        best = min(abs(abs(f.point[0]) - min(h / LAM, 1.0)) for f in pts)
        assert best < 1e-3


def test_classify_stability_cases():
    assert classify_stability([0.0, -1.0, -2.0]) == "stable"
    assert classify_stability([0.0, 1.0, -2.0]) == "unstable"
    assert classify_stability([0.0, 1j, -1j]) == "marginal"
    assert classify_stability([1e-12, -1e-12 + 3j, -1e-12 - 3j]) == "marginal"


def test_energy_density_values():
    p = params(2.0)
    assert energy_density([1.0, 0.0, 0.0], p) == pytest.approx(-2.0)
    assert energy_density([0.0, 0.0, 1.0], p) == pytest.approx(-LAM)


def test_all_fixed_points_ordering():
    pts = all_fixed_points(params(0.1))
    keys = [(f.branch, f.point[0]) for f in pts]
    assert keys == sorted(keys)


def test_sweep_requires_monotone_grid():
    with pytest.raises(ValueError, match="monotone"):
        bifurcation_sweep([0.0, 1.0, 0.5], lam=LAM, gamma=0.2)


def test_sweep_rows_follow_grid():
    rows = bifurcation_sweep(np.linspace(-1, 1, 5), lam=LAM, gamma=0.2)
    hs = [h for h, _ in rows]
    assert hs == sorted(hs)
    assert all(np.linalg.norm(bloch_rhs(f.point, MeanFieldParams(h, LAM, 0.2))) < 1e-9
               for h, f in rows)

"""Command-line front end: parameter sweeps to CSV with a JSON sidecar.

Modes
-----
ground-sweep       exact-diagonalization sweep over the drive h (Fig.-style
                   order parameter / entanglement / photon number data)
bifurcation        mean-field fixed points and stability over an h grid
trajectory         a single mean-field trajectory on the Bloch sphere
validate-adiabatic full-model vs slaved-cavity amplitude at small N
qubit-lindblad     qubit-only Lindblad steady states over an h grid

All rates and frequencies are in units of the photon decay rate kappa.
`s_x` in ground-sweep output is <S_x>/N (range +-1/2); in bifurcation output
it is the unit-sphere Bloch component (range +-1).  Floats are written with
12 significant digits and runs are serial, so a fixed config reproduces its
CSV byte for byte.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .effective import (
    EffectiveParams,
    PhysicalParams,
    analytic_isotropic_ground,
    build_effective_hamiltonian,
    effective_params,
    ground_state,
    photon_number_ss,
)
from .entanglement import rescaled_concurrence_numeric, reduced_two_qubit  # noqa: F401
from .lindblad import (
    QubitState,
    adiabatic_cavity_prediction,
    build_qubit_liouvillian,
    cavity_amplitude,
    joint_spin_expectations,
    photon_number,
    qubit_spin_expectations,
    solve_joint_steady_state,
    steady_state,
)
from .meanfield import MeanFieldParams, bifurcation_sweep, integrate_trajectory
from .spins import SpinSector

__all__ = ["main", "run", "build_parser", "PRESETS", "format_csv"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

_FLOAT_FMT = "%.12g"

GROUND_HEADER = [
    "h_over_kappa", "delta_a_over_kappa", "N", "energy_per_qubit",
    "s_x", "s_x_squared_over_N2", "C_R", "n_ss",
]
BIFURCATION_HEADER = [
    "h_over_kappa", "branch", "s_x", "s_y", "s_z",
    "re_eig1", "im_eig1", "re_eig2", "im_eig2", "stability", "energy_density",
]
TRAJECTORY_HEADER = ["t", "s_x", "s_y", "s_z"]
ADIABATIC_HEADER = [
    "delta_c_over_kappa", "eta0_over_kappa", "fock_cutoff", "n_ss",
    "a_sim_re", "a_sim_im", "a_pred_re", "a_pred_im", "rel_error",
]
QUBIT_HEADER = ["h_over_kappa", "N", "s_x", "s_y", "s_z", "purity"]

# preset parameter sets, per-figure (all values in units of kappa)
PRESETS = {
    "fig1": dict(
        mode="ground-sweep", n=200, g0=100.0, deltac=2000.0,
        deltaa_list=(0.0, 0.2), h_min=-10.0, h_max=10.0, h_steps=400,
    ),
    "fig2a": dict(
        mode="bifurcation", g0=100.0, deltac=2000.0, gamma=0.2,
        h_min=-10.0, h_max=10.0, h_steps=400,
    ),
    "fig2b": dict(
        mode="bifurcation", g0=100.0, deltac=2000.0, gamma=0.02,
        h_min=-10.0, h_max=10.0, h_steps=400,
    ),
}


class ConfigError(Exception):
    pass


def format_csv(header: list[str], rows: list[list]) -> str:
    """Locale-independent CSV with fixed 12-significant-digit floats."""
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, str):
                cells.append(cell)
            elif isinstance(cell, (int, np.integer)):
                cells.append(str(int(cell)))
            else:
                val = float(cell)
                if not np.isfinite(val):
                    raise ValueError(f"non-finite value {val!r} in output row {row}")
                cells.append(_FLOAT_FMT % val)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _read_config_file(path: str) -> dict:
    """Flat key=value file; '#' starts a comment."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, val = (part.strip() for part in line.split("=", 1))
            out[key.replace("-", "_")] = val
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lmgcavity",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in ("ground-sweep", "bifurcation", "trajectory", "validate-adiabatic", "qubit-lindblad"):
        sp = sub.add_parser(mode, help=f"{mode} run")
        sp.add_argument("--preset", choices=sorted(PRESETS), help="named parameter set")
        sp.add_argument("--config", help="key=value config file (units of kappa)")
        sp.add_argument("--n", type=int, help="number of qubits")
        sp.add_argument("--g0", type=float, help="collective coupling / kappa")
        sp.add_argument("--deltac", type=float, help="cavity detuning / kappa")
        sp.add_argument("--deltaa", type=float, help="qubit detuning / kappa")
        sp.add_argument("--gamma", type=float, help="collective pump rate / kappa")
        sp.add_argument("--gamma-prime", type=float, help="collective dephasing rate / kappa")
        sp.add_argument("--h-min", type=float, help="drive grid start / kappa")
        sp.add_argument("--h-max", type=float, help="drive grid stop / kappa")
        sp.add_argument("--h-steps", type=int, help="number of grid points")
        sp.add_argument("--eta0-min", type=float,
                        help="pump grid start; converted to an h grid via h = -2 g0 eta0 / (1 + deltac^2)")
        sp.add_argument("--eta0-max", type=float, help="pump grid stop (see --eta0-min)")
        sp.add_argument("--eta0", type=float, help="pump amplitude (validate-adiabatic)")
        sp.add_argument("--s0", type=float, nargs=3, metavar=("SX", "SY", "SZ"),
                        help="initial Bloch vector (trajectory)")
        sp.add_argument("--t-final", type=float, help="integration time (trajectory)")
        sp.add_argument("--dt", type=float, help="integration step (trajectory)")
        sp.add_argument("--seed", type=int, default=0, help="seed echoed to the sidecar")
        sp.add_argument("--out", required=True, help="output CSV path")
    return parser


_DEFAULTS = dict(
    n=200, g0=100.0, deltac=2000.0, deltaa=0.0, gamma=0.2, gamma_prime=0.0,
    h_min=-10.0, h_max=10.0, h_steps=400, eta0=None, eta0_min=None, eta0_max=None,
    s0=(0.0, 0.0, 1.0), t_final=50.0, dt=0.005, seed=0,
)

_CASTS = dict(
    n=int, h_steps=int, seed=int,
    g0=float, deltac=float, deltaa=float, gamma=float, gamma_prime=float,
    h_min=float, h_max=float, eta0=float, eta0_min=float, eta0_max=float,
    t_final=float, dt=float,
)


def _resolve_config(args: argparse.Namespace) -> dict:
    """Layer defaults < preset < config file < explicit flags."""
    cfg = dict(_DEFAULTS)
    cfg["mode"] = args.mode
    cfg["deltaa_list"] = None
    if args.preset:
        preset = PRESETS[args.preset]
        if preset["mode"] != args.mode:
            raise ConfigError(
                f"preset {args.preset!r} belongs to mode {preset['mode']!r}, not {args.mode!r}"
            )
        cfg.update(preset)
        cfg["preset"] = args.preset
    else:
        cfg["preset"] = None
    if args.config:
        for key, raw in _read_config_file(args.config).items():
            if key not in _CASTS:
                raise ConfigError(f"unknown config key {key!r}")
            try:
                cfg[key] = _CASTS[key](raw)
            except ValueError as exc:
                raise ConfigError(f"config key {key!r}: {exc}") from None
    for key in _CASTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if args.s0 is not None:
        cfg["s0"] = tuple(args.s0)
    cfg["out"] = args.out
    _validate(cfg)
    return cfg


def _validate(cfg: dict) -> None:
    if cfg["n"] < 1:
        raise ConfigError(f"n: must be >= 1, got {cfg['n']}")
    for key in ("gamma", "gamma_prime"):
        if cfg[key] < 0:
            raise ConfigError(f"{key}: rates must be non-negative, got {cfg[key]}")
    if cfg["mode"] in ("ground-sweep", "bifurcation", "qubit-lindblad"):
        if cfg["h_steps"] < 2:
            raise ConfigError(f"h_steps: sweep grid needs >= 2 points, got {cfg['h_steps']}")
    if (cfg["eta0_min"] is None) != (cfg["eta0_max"] is None):
        raise ConfigError("eta0_min/eta0_max: both or neither must be given")


def _h_grid(cfg: dict) -> np.ndarray:
    if cfg["eta0_min"] is not None:
        # pump-amplitude grid mapped through the slaved-cavity drive formula
        scale = -2.0 * cfg["g0"] / (1.0 + cfg["deltac"] ** 2)
        lo, hi = scale * cfg["eta0_min"], scale * cfg["eta0_max"]
        if lo > hi:
            lo, hi = hi, lo
        return np.linspace(lo, hi, cfg["h_steps"])
    return np.linspace(cfg["h_min"], cfg["h_max"], cfg["h_steps"])


def _eta0_for_h(cfg: dict, h: float) -> float:
    return -h * (1.0 + cfg["deltac"] ** 2) / (2.0 * cfg["g0"])


def _lam(cfg: dict) -> float:
    return cfg["g0"] ** 2 * cfg["deltac"] / (1.0 + cfg["deltac"] ** 2)


def _run_ground_sweep(cfg: dict) -> tuple[list[str], list[list]]:
    n = cfg["n"]
    sector = SpinSector(n)
    deltaa_values = cfg["deltaa_list"] or (cfg["deltaa"],)
    rows = []
    for deltaa in deltaa_values:
        for h in _h_grid(cfg):
            eta0 = _eta0_for_h(cfg, h)
            phys = PhysicalParams(
                g0=cfg["g0"], eta0=eta0, delta_c=cfg["deltac"],
                delta_a=deltaa, n_qubits=n,
            )
            eff = effective_params(phys)
            gs = ground_state(build_effective_hamiltonian(eff, sector, basis_axis="x"))
            if deltaa == 0.0:
                # cross-check exact diagonalization against the closed form
                _, e_analytic = analytic_isotropic_ground(eff.h, eff.lam, sector)
                if abs(gs.energy_per_qubit - e_analytic) > 1e-9 * max(1.0, abs(e_analytic)):
                    raise RuntimeError(
                        f"h={h}: diagonalization disagrees with the closed-form "
                        f"ground energy ({gs.energy_per_qubit} vs {e_analytic})"
                    )
            c_r = rescaled_concurrence_numeric(gs.state)
            n_ss = photon_number_ss(phys, gs.s_x2 * n**2)
            rows.append([h, deltaa, n, gs.energy_per_qubit, gs.s_x, gs.s_x2, c_r, n_ss])
    return GROUND_HEADER, rows


def _run_bifurcation(cfg: dict) -> tuple[list[str], list[list]]:
    lam = _lam(cfg)
    rows = []
    for h, fp in bifurcation_sweep(_h_grid(cfg), lam=lam, gamma=cfg["gamma"]):
        # drop the radial (norm-conserving) eigenvalue: smallest magnitude
        eigs = sorted(fp.jacobian_eigs, key=abs)[1:]
        eigs = sorted(eigs, key=lambda e: (e.real, e.imag))
        rows.append([
            h, fp.branch, fp.point[0], fp.point[1], fp.point[2],
            eigs[0].real, eigs[0].imag, eigs[1].real, eigs[1].imag,
            fp.stability, fp.energy_density,
        ])
    return BIFURCATION_HEADER, rows


def _run_trajectory(cfg: dict) -> tuple[list[str], list[list]]:
    p = MeanFieldParams(h=cfg["h_min"], lam=_lam(cfg), gamma=cfg["gamma"], delta_a=cfg["deltaa"])
    traj = integrate_trajectory(np.array(cfg["s0"]), p, cfg["t_final"], cfg["dt"])
    rows = [[t, s[0], s[1], s[2]] for t, s in zip(traj.times, traj.points)]
    return TRAJECTORY_HEADER, rows


def _run_validate_adiabatic(cfg: dict) -> tuple[list[str], list[list]]:
    n = cfg["n"] if cfg["n"] <= 6 else 2
    eta0 = cfg["eta0"] if cfg["eta0"] is not None else 0.35 * cfg["deltac"]
    sector = SpinSector(n)
    phys = PhysicalParams(
        g0=cfg["g0"], eta0=eta0, delta_c=cfg["deltac"], delta_a=cfg["deltaa"], n_qubits=n,
    )
    state = solve_joint_steady_state(phys, sector)
    a_sim = cavity_amplitude(state)
    sx = float(joint_spin_expectations(state)[0])
    a_pred = adiabatic_cavity_prediction(phys, sx)
    rel = abs(a_sim - a_pred) / abs(a_pred)
    rows = [[cfg["deltac"], eta0, state.fock_cutoff, photon_number(state),
             a_sim.real, a_sim.imag, a_pred.real, a_pred.imag, rel]]
    return ADIABATIC_HEADER, rows


def _run_qubit_lindblad(cfg: dict) -> tuple[list[str], list[list]]:
    n = cfg["n"] if cfg["n"] <= 30 else 20
    sector = SpinSector(n)
    lam = _lam(cfg)
    rows = []
    for h in _h_grid(cfg):
        lio = build_qubit_liouvillian(
            EffectiveParams(h=float(h), lam=lam, delta_a=cfg["deltaa"]),
            cfg["gamma"], cfg["gamma_prime"], sector,
        )
        state = QubitState(sector, steady_state(lio))
        bloch = qubit_spin_expectations(state) * (2.0 / n)
        purity = float(np.trace(state.rho @ state.rho).real)
        rows.append([h, n, bloch[0], bloch[1], bloch[2], purity])
    return QUBIT_HEADER, rows


_RUNNERS = {
    "ground-sweep": _run_ground_sweep,
    "bifurcation": _run_bifurcation,
    "trajectory": _run_trajectory,
    "validate-adiabatic": _run_validate_adiabatic,
    "qubit-lindblad": _run_qubit_lindblad,
}


def _write_outputs(cfg: dict, header: list[str], rows: list[list]) -> None:
    with open(cfg["out"], "w", newline="") as fh:
        fh.write(format_csv(header, rows))
    meta = {
        "config": {k: v for k, v in sorted(cfg.items()) if k != "deltaa_list"},
        "delta_a_values": list(cfg["deltaa_list"]) if cfg["deltaa_list"] else None,
        "conventions": {
            "units": "all rates and frequencies in units of kappa; hbar = 1",
            "s_x_ground_sweep": "<S_x>/N, range [-1/2, 1/2]",
            "s_x_bifurcation": "unit-sphere Bloch component 2<S_x>/N, range [-1, 1]",
            "mean_field_scaling": "mean-field Bloch components are twice the ground-sweep s_x",
            "float_format": _FLOAT_FMT,
        },
        "derived": {"lambda_over_kappa": _lam(cfg)},
        "version": __version__,
        "rows": len(rows),
    }
    with open(cfg["out"] + ".meta.json", "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def run(argv: list[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve_config(args)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        header, rows = _RUNNERS[cfg["mode"]](cfg)
        _write_outputs(cfg, header, rows)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (RuntimeError, np.linalg.LinAlgError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

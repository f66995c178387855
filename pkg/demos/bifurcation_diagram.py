"""Imperfect bifurcation of the dissipative mean-field equations.

Tabulates the fixed points of the Bloch-sphere flow for two pump strengths
of the incoherent drive gamma.  At gamma = kappa/50 the diagram hugs the
lossless envelope |s_x| = min(|h|/lambda, 1); at gamma = kappa/5 the branch
crossing is visibly broken up and the low-|s_x| ordered branch terminates
well before |h| reaches lambda.

Stability labels: "stable" marks attracting points (these exist only on the
s_x = 0 branch, |h| < gamma), "marginal" marks neutrally stable centers --
the solid branches of the usual diagram -- and "unstable" marks saddles.

Run:  python3 demos/bifurcation_diagram.py
"""

import numpy as np

from lmgcavity import MeanFieldParams, all_fixed_points

LAM = 4.99999875  # g0 = 100 kappa, Delta_c = 2000 kappa

for gamma in (0.2, 0.02):
    print(f"\n# gamma = {gamma} kappa, lambda = {LAM} kappa")
    print(f"{'h/kappa':>8} {'branch':>8} {'s_x':>8} {'s_y':>8} {'s_z':>8}  stability")
    for h in np.linspace(-8.0, 8.0, 17):
        p = MeanFieldParams(h=float(h), lam=LAM, gamma=gamma)
        for fp in all_fixed_points(p):
            x, y, z = fp.point
            print(f"{h:8.2f} {fp.branch:>8} {x:8.4f} {y:8.4f} {z:8.4f}  {fp.stability}")

"""
Entangled states with a known closest separable state
=====================================================

Take a separable state sigma on the boundary face of a witness w and move
away from it along rho(x) = sigma - x L^{-1}(w).  The subadditivity gap
E + Q + C_sigma - T_rho stays non-positive along the way.
"""

import numpy as np

from qcorr import bloch_state, gap_direct, materialize, rho_of_x, trace_condition, witness, x_max
from qcorr.css_family import edge_gap, vertex_gap
from qcorr.oracle import ppt_check

sigma = bloch_state([-0.25, -0.25], -0.5)
w = witness(1, "00")
print("witness eigenvalues:", w.eigenvalues)
print("trace condition    :", trace_condition(sigma, w))
limit = x_max(sigma, w)
print("x_max              :", limit)

print(f"{'x':>5s} {'E':>8s} {'Q':>8s} {'C':>8s} {'T':>8s} {'gap':>8s} {'PT min':>8s}")
for x in np.linspace(0.25, limit, 8):
    r = gap_direct(sigma, w, x)
    pt = ppt_check(materialize(rho_of_x(sigma, w, x).rho()))
    print(f"{x:5.2f} {r.E:8.4f} {r.Q:8.4f} {r.C_sigma:8.4f} {r.T_rho:8.4f} {r.gap_direct:8.4f} {pt:8.4f}")

# the gap vanishes at the vertices of the separable region
print("vertex gaps:", [vertex_gap(n) for n in (1, 2, 3)])

# and is convex along the equal-axis edge, touching zero at t = 0
ts = np.linspace(-0.5, 0, 6)
print("edge gap n=1:", np.round([edge_gap(1, t) for t in ts], 4))

"""
Generalized Bloch-sphere states
===============================

Only the 2n single-generator terms and the gamma_s (x) gamma_s term are
present.  Separability reduces to an L1 bound, and the discord has a closed
form in the largest coefficient.
"""

import numpy as np

from qcorr import bloch_state, discord
from qcorr.correlation_measures import bloch_discord_closed_form

for axis, t_all in [([-0.25, -0.25], -0.5), ([0.6, 0.3], -0.2), ([0.5, 0.0], 0.0)]:
    s = bloch_state(axis, t_all)
    print(axis, t_all, "bound", s.coefficient_bound, "separable", s.is_separable)
    print("   spectrum", s.spectrum)

# n = 2: 16 x 16 states, 15 commuting subgroups to scan
s = bloch_state([0.3, 0.0, 0.0, 0.0], 0.2)
print("n=2 generic discord :", discord(s).bits)
print("n=2 closed form     :", bloch_discord_closed_form(s))

rng = np.random.default_rng(0)
worst = 0.0
for _ in range(200):
    c = rng.uniform(-1, 1, 5)
    c *= rng.uniform() / np.abs(c).sum()
    s = bloch_state(c[:4], c[4])
    worst = max(worst, abs(discord(s).bits - bloch_discord_closed_form(s)))
print("max disagreement over 200 separable states:", worst)

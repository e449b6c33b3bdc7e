"""
Gamma matrices and commuting label sets
=======================================

Build the Clifford generators by the d -> d + 2 recursion, check the algebra
exactly, and list the commuting exponent-label subgroups for two pairs of
qubits.
"""

import numpy as np

from qcorr.pauli_algebra import (
    build_gamma_set,
    enumerate_abelian_subgroups,
    exponent_commutes,
    exponent_to_pauli,
    verify_clifford,
)

for d in (2, 4, 6):
    g = build_gamma_set(d)
    print(f"d={d}:", " ".join(str(p) for p in g.paulis), verify_clifford(g).ok)

# Gamma_a is the ordered product gamma_1^a1 ... gamma_d^ad
g4 = build_gamma_set(4)
for label in ("1000", "0101", "1101", "1111"):
    print(label, "->", exponent_to_pauli(g4, label))

print("1000 vs 0101 commute:", exponent_commutes("1000", "0101"))
print("1000 vs 0100 commute:", exponent_commutes("1000", "0100"))

groups = enumerate_abelian_subgroups(2)
print(f"{len(groups)} maximal commuting subgroups for n=2")
for grp in groups:
    print("  ", grp.labels())

# counts grow quickly with n
print({n: len(enumerate_abelian_subgroups(n)) for n in (1, 2, 3)})
print("gamma_s squared is I:", np.array_equal(g4.gamma_s @ g4.gamma_s, np.eye(4)))

"""Random state generators shared by the test modules."""

import numpy as np

from qcorr.bell_state import bloch_state, state_from_spectrum
from qcorr.css_family import face_state
from qcorr.errors import NotAStateError


def random_state(rng: np.random.Generator, n: int):
    """Bell-diagonal state with a Dirichlet-distributed spectrum."""
    return state_from_spectrum(rng.dirichlet(np.ones(4**n)))


def random_bloch(rng: np.random.Generator, n: int, separable: bool | None = None):
    """Valid Bloch-sphere state; ``separable`` forces one side of the bound."""
    while True:
        coeffs = rng.uniform(-1, 1, size=2 * n + 1) * rng.uniform(0.05, 1.0)
        bound = np.abs(coeffs).sum()
        if separable is True:
            coeffs *= rng.uniform(0, 1) / bound
        try:
            state = bloch_state(coeffs[:-1], coeffs[-1])
        except NotAStateError:
            continue
        if separable is False and state.coefficient_bound <= 1:
            continue
        return state


def random_boundary(rng: np.random.Generator, n: int, sign_bits: int = 0):
    """Strictly positive separable state on the face of ``witness(n, sign_bits)``."""
    return face_state(n, rng.dirichlet(np.ones(2 * n + 1)), sign_bits)

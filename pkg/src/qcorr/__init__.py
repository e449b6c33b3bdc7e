"""Quantum correlations of Bell-diagonal states on two 2**n-dimensional parties."""

from .bell_state import (
    BellDiagonalState,
    BlochSphereState,
    bloch_state,
    materialize,
    spectrum_from_tensor,
    state_from_spectrum,
    tensor_from_spectrum,
    validate,
)
from .correlation_measures import (
    ccs_for_subgroup,
    correlation_report,
    discord,
    entropy,
    relative_entropy,
)
from .css_family import gap_analytic, gap_direct, rho_of_x, trace_condition, witness, x_max
from .errors import QcorrError
from .pauli_algebra import (
    AbelianSubgroup,
    build_gamma_set,
    enumerate_abelian_subgroups,
    exponent_commutes,
    verify_clifford,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianSubgroup",
    "BellDiagonalState",
    "BlochSphereState",
    "QcorrError",
    "bloch_state",
    "build_gamma_set",
    "ccs_for_subgroup",
    "correlation_report",
    "discord",
    "entropy",
    "enumerate_abelian_subgroups",
    "exponent_commutes",
    "gap_analytic",
    "gap_direct",
    "materialize",
    "relative_entropy",
    "rho_of_x",
    "spectrum_from_tensor",
    "state_from_spectrum",
    "tensor_from_spectrum",
    "trace_condition",
    "validate",
    "verify_clifford",
    "witness",
    "x_max",
]

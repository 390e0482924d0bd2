"""Barut-Girardello type SU(1,1) coherent states for the Calogero-Sutherland model.

Truncated Fock-space construction of BGCS, NBGCS and PABGCS states, their
photon statistics and squeezing (direct sums and hypergeometric closed forms),
and numerical checks of the underlying operator identities.
"""

from .algebra import (
    FockVector,
    IrrepParams,
    TruncationPolicy,
    basis,
    hamiltonian_phase,
    j3,
    lower,
    raise_,
    raise_power,
    verify_commutators,
)
from .observables import (
    ObservableReport,
    expectation_suite,
    nbgcs_closed_suite,
    pabgcs_closed_suite,
)
from .states import (
    Family,
    StateSpec,
    TruncationError,
    build_state,
    evolve_check,
    nbgcs,
    nbgcs_norm,
    nbgcs_overlap_closed,
    overlap,
    pabgcs,
    pabgcs_from_diagram,
    pabgcs_norm,
    pabgcs_overlap_closed,
)

__version__ = "0.1.0"

__all__ = [
    "Family",
    "FockVector",
    "IrrepParams",
    "ObservableReport",
    "StateSpec",
    "TruncationError",
    "TruncationPolicy",
    "basis",
    "build_state",
    "evolve_check",
    "expectation_suite",
    "hamiltonian_phase",
    "j3",
    "lower",
    "nbgcs",
    "nbgcs_closed_suite",
    "nbgcs_norm",
    "nbgcs_overlap_closed",
    "overlap",
    "pabgcs",
    "pabgcs_closed_suite",
    "pabgcs_from_diagram",
    "pabgcs_norm",
    "pabgcs_overlap_closed",
    "raise_",
    "raise_power",
    "verify_commutators",
]

"""Quantum-optical states in finite-dimensional Hilbert spaces.

Generalized (operator-exponential) and truncated (renormalized Fock)
constructions of coherent, phase coherent, displaced number, cat and
squeezed vacuum states, their discrete number-phase Wigner functions,
and tools to check closed forms, overlap series and quasiperiods.
"""
from .errors import (
    ConfigError,
    ConsistencyError,
    DegenerateStateError,
    FDStatesError,
    MatrixNormError,
    NoReturnError,
    RegimeError,
    RootConvergenceError,
    ToleranceError,
)
from .hilbert import FockVector, PhaseBasis
from .kernels import BACKEND
from .states import Family, StateSpec, Variant, build_state, oracle_state, overlap
from .wigner import WignerGrid, wigner_from_state, wigner_pure_coeffs

__version__ = "0.1.0"

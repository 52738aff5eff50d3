"""Chiral and flavor oscillations of Dirac neutrinos as multi-qubit quantum states.

Submodules
----------
dirac     gamma matrices, plane-wave bispinors, free evolution
tensor    labeled qubit states, density matrices, partial trace
measures  entropies, coherence, predictability, concurrence
ccr       complete complementarity relations
single    single oscillating neutrino
pair      lepton/antineutrino pair from pion decay
runner    scenario sweeps, CSV output, invariant verification
cli       command-line entry point
"""

from .ccr import CCRReport, ccr_mixed, ccr_pure, ccr_qubit
from .dirac import Handedness, PhysParams
from .tensor import DensityMatrix, LabeledState, density, kron, partial_trace, reduced_density

__all__ = [
    "CCRReport",
    "DensityMatrix",
    "Handedness",
    "LabeledState",
    "PhysParams",
    "ccr_mixed",
    "ccr_pure",
    "ccr_qubit",
    "density",
    "kron",
    "partial_trace",
    "reduced_density",
]

__version__ = "0.1.0"

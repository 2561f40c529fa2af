"""Heisenberg-Weyl and Clifford groups in prime dimensions, and the SICs they carry."""

from .clifford import CliffordOp, enumerate_clifford, synthesize
from .symplectic import AffineSymplectic, ConjClassLabel, class_census, classify
from .weyl import SicCandidate, displacement, is_fiducial, sic_from_fiducial

__all__ = [
    "AffineSymplectic",
    "CliffordOp",
    "ConjClassLabel",
    "SicCandidate",
    "class_census",
    "classify",
    "displacement",
    "enumerate_clifford",
    "is_fiducial",
    "sic_from_fiducial",
    "synthesize",
]

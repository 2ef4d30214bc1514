"""Exact computations with finite Calabi-Yau A∞ categories.

Hochschild and Connes cyclic homology on truncated word complexes, the
involutive Lie bialgebra on cyclic cochains, and its noncommutative
symplectic counterpart, all over exact rationals.
"""

from cyclix.ainfty import AInftyData, DegreeMismatch, NotComposable, UnknownMorphism, verify_ainfty
from cyclix.calabi_yau import DegeneratePairing, PairingData, SymplecticForm, induced_omega, verify_cy
from cyclix.cyclic import Necklaces, canonicalize, connes_homology, t_bar
from cyclix.document import ParseError, load, save
from cyclix.exactlin import QQ, Field
from cyclix.hochschild import ExplosionGuard, b_apply, enumerate_words, hochschild_homology
from cyclix.liebialg import CyclicLieBialgebra, axiom_suite
from cyclix.modelzoo import fixture
from cyclix.ncsymp import quillen_compare

__version__ = "0.1.0"

__all__ = [
    "AInftyData",
    "CyclicLieBialgebra",
    "DegeneratePairing",
    "DegreeMismatch",
    "ExplosionGuard",
    "Field",
    "Necklaces",
    "NotComposable",
    "PairingData",
    "ParseError",
    "QQ",
    "SymplecticForm",
    "UnknownMorphism",
    "axiom_suite",
    "b_apply",
    "canonicalize",
    "connes_homology",
    "enumerate_words",
    "fixture",
    "hochschild_homology",
    "induced_omega",
    "load",
    "quillen_compare",
    "save",
    "t_bar",
    "verify_ainfty",
    "verify_cy",
]

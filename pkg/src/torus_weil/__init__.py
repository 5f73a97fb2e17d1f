"""Finite Heisenberg and Weil representations over F_p, Hecke tori and the rational quantum torus."""

from .arith import CyclicCharacter, cyclic_characters, gauss_coefficient, legendre, psi
from .hecke import (
    HeckeTorus,
    MultiplicityTwoError,
    NotHyperbolicError,
    NotSplitError,
    ParabolicPrimeError,
    WignerValue,
    hecke_torus,
    wigner,
)
from .heisenberg import HeisenbergElement, h_mul, pi_heis, pi_vector
from .lagrangian import OrientedLagrangian, canonical_weil, theta
from .qtorus import RationalPlanck, TwistedCharacter, build_irrep, fixed_twisted_character
from .weil import egorov_check, rho

__version__ = "0.1.0"

__all__ = [
    "CyclicCharacter",
    "cyclic_characters",
    "gauss_coefficient",
    "legendre",
    "psi",
    "HeckeTorus",
    "MultiplicityTwoError",
    "NotHyperbolicError",
    "NotSplitError",
    "ParabolicPrimeError",
    "WignerValue",
    "hecke_torus",
    "wigner",
    "HeisenbergElement",
    "h_mul",
    "pi_heis",
    "pi_vector",
    "OrientedLagrangian",
    "canonical_weil",
    "theta",
    "RationalPlanck",
    "TwistedCharacter",
    "build_irrep",
    "fixed_twisted_character",
    "egorov_check",
    "rho",
]

"""Exact computer algebra for Higgs complexes on compactified ball quotients.

The engine builds equivariant Higgs systems from the two uniformizing
generators, realizes them on the generic fiber over exact rationals, reduces
their Higgs complexes to zero-differential normal form, and derives vanishing
and non-vanishing statements with explicit provenance chains.
"""

from .characters import Character, ext_power, multiply, schur_character, sym_power
from .labels import FormalBundle, IrrepLabel, canonicalize, decompose_character
from .kernels import BACKEND

__version__ = "0.1.0"

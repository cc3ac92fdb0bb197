"""Singer-cycle lattices in Ã₂ and C̃₂ buildings: construction and verification."""

from __future__ import annotations

__version__ = "0.1.0"

from .ffield import FieldSpec, NotPrimePower, make_field
from .hjelmslev import HjelmslevPlane
from .lattices import LatticeSpec, a2_cyclic_lattice, c2_one_panel_lattice, c2_two_panel_lattice
from .reports import VerificationReport
from .singer import OrderedDifferenceSet, UnsupportedOrder, classical_plane, extract_difference_set, slanted_quadrangle

__all__ = [
    "FieldSpec", "HjelmslevPlane", "LatticeSpec", "NotPrimePower", "OrderedDifferenceSet",
    "UnsupportedOrder", "VerificationReport", "a2_cyclic_lattice", "c2_one_panel_lattice",
    "c2_two_panel_lattice", "classical_plane", "extract_difference_set", "make_field", "slanted_quadrangle",
]

"""Degree-3 cohomological invariants of split semisimple groups via character lattices."""
__version__ = "0.1.0"

from .rootsystem import CartanType, RootSystem, build_root_system, weyl_orbit
from .isogeny import CharacterLattice, GroupSpec, lattice_for
from .truncring import TruncRing, to_sym2
from .invariants import (InvariantConfig, InvariantReport, c2, compute_report, dec_group,
                         f_bound, ind_group, over_sdec, sym2_w_invariants)

__all__ = [
    "CartanType", "RootSystem", "build_root_system", "weyl_orbit",
    "CharacterLattice", "GroupSpec", "lattice_for",
    "TruncRing", "to_sym2",
    "InvariantConfig", "InvariantReport", "c2", "compute_report", "dec_group",
    "f_bound", "ind_group", "over_sdec", "sym2_w_invariants",
]

"""Rowmotion on order ideals, minuscule posets and their heaps, and cyclic sieving checks."""

from .catalog import all_entries, entry, exceptional, propeller, rectangle, shifted_staircase
from .coxeter import (
    coset_canonicalize, coxeter_element, parabolic_quotient, reduced_word, root_system,
    weight_quotient,
)
from .csp import check_free_orbits_staircase, check_orbit_divisibility, verify_csp
from .heap import (
    bipartite_ordering, coxeter_toggle_word, heap_of, label_toggle, minuscule_heap, phi,
    phi_inverse, verify_equivariance,
)
from .poset import Poset, chain, from_covers, ideal_lattice, ideals, is_isomorphic, product
from .qpoly import QPolynomial, bender_knuth, eval_at_root, gaussian_product, macmahon, qbinomial
from .toggle import IdealSpace, orbit_structure, rowmotion, toggle

__version__ = "0.1.0"

__all__ = [
    "all_entries", "bender_knuth", "bipartite_ordering", "chain", "check_free_orbits_staircase",
    "check_orbit_divisibility", "coset_canonicalize", "coxeter_element", "coxeter_toggle_word",
    "entry", "eval_at_root", "exceptional", "from_covers", "gaussian_product", "heap_of",
    "ideal_lattice", "ideals", "IdealSpace", "is_isomorphic", "label_toggle", "macmahon",
    "minuscule_heap", "orbit_structure", "parabolic_quotient", "phi", "phi_inverse", "Poset",
    "product", "propeller", "qbinomial", "QPolynomial", "rectangle", "reduced_word",
    "root_system", "rowmotion", "shifted_staircase", "toggle", "verify_csp",
    "verify_equivariance", "weight_quotient",
]

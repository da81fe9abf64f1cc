"""Legendrian contact homology over F2: capacities and cobordism length bounds.

The package is organized around the Chekanov-Eliashberg DGA of a Legendrian
submanifold, presented combinatorially:

- ``algebra``: free unital tensor algebra over F2 on graded, height-weighted
  Reeb chords; differentials, Leibniz extension, validation.
- ``diagram``: compiles a Lagrangian-projection diagram of a knot or link in
  R^3 into its DGA by immersed-disk enumeration.
- ``augment``: augmentations, twisted differentials, A-infinity operations.
- ``cohomology``: linearized cochain complexes, height filtration, capacities,
  component-pair splitting.
- ``cobordism``: chain maps between DGAs, induced maps on cohomology, and the
  exact logarithmic lower bounds on cobordism length.
- ``profile``: feasibility of interpolation profiles (upper bounds) and the
  cylinder-packing region.
- ``cli``: command-line front end and JSON formats.

All arithmetic on heights and capacities is exact rational; bounds are formal
logarithms ``ln(p/q)`` rendered to decimals only for display.
"""

from legcob.bounds import LengthBound
from legcob.algebra import Dga, Generator, ValidationReport, differential_extend, monomial_height, validate_dga
from legcob.augment import Augmentation, TwistedDga, a_infinity_ops, check_a_infinity, enumerate_augmentations, twist
from legcob.cohomology import CochainComplex, CohomologyClass, capacity, cohomology, linearized_complex, split_by_components
from legcob.cobordism import (
    ChainMap,
    LinearizedCobordismMap,
    best_capacity_bound,
    capacity_lower_bound,
    chain_action_bound,
    chord_diff_bound,
    induced_cohomology_map,
    linearize_map,
    product_bound,
    push_augmentation,
    split_cylinder_bound,
    validate_chain_map,
)
from legcob.diagram import LagrangianDiagram, compile_diagram, validate_diagram
from legcob.profile import (
    FeasibilityResult,
    ProfileConstraint,
    ProfileProblem,
    packing_constraints_to_profile,
    packing_feasible,
    profile_min_length,
)

__all__ = [
    "Augmentation",
    "ChainMap",
    "CochainComplex",
    "CohomologyClass",
    "Dga",
    "FeasibilityResult",
    "Generator",
    "LagrangianDiagram",
    "LengthBound",
    "LinearizedCobordismMap",
    "ProfileConstraint",
    "ProfileProblem",
    "TwistedDga",
    "ValidationReport",
    "a_infinity_ops",
    "best_capacity_bound",
    "capacity",
    "capacity_lower_bound",
    "chain_action_bound",
    "check_a_infinity",
    "chord_diff_bound",
    "cohomology",
    "compile_diagram",
    "differential_extend",
    "enumerate_augmentations",
    "induced_cohomology_map",
    "linearize_map",
    "linearized_complex",
    "monomial_height",
    "packing_constraints_to_profile",
    "packing_feasible",
    "product_bound",
    "profile_min_length",
    "push_augmentation",
    "split_by_components",
    "split_cylinder_bound",
    "twist",
    "validate_chain_map",
    "validate_diagram",
    "validate_dga",
]

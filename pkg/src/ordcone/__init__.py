"""Exact computations with rational polyhedra, affine monoids and
finitely presented partially ordered abelian groups."""

from .catalog import catalog_entry, example_catalog
from .errors import OrdconeError
from .linalg import (UnimodularMap, bezout, hermite_normal_form, kernel_lattice_basis,
                     primitive_vector, smith_normal_form)
from .monoid import (FinGenMonoid, MembershipCertificate, algebraic_leq, cone_membership_rational,
                     contains, interval, is_unperforated, minimal_elements,
                     non_archimedean_witness, saturation_hilbert_basis, upward_closure_basis)
from .ordgroup import (GroupPresentation, Inconclusive, NormalizedGroup, group_normal_form,
                       induced_subgroup, is_directed, positive_normalization_lattice,
                       positive_normalization_vs, realize, verify_fp_conditions)
from .polyhedra import (AffineFunctional, ConvexDomain, VPolytope, eliminate_variable,
                        functional_range, halfspaces_to_hull, hull_membership, hull_to_halfspaces,
                        is_satisfiable, project, separate_from_origin, separate_on_hyperplane)
from .vspace import QSpaceCone, dominated_by, is_simplicial_basis, simplicial_extension_search

__all__ = [
    "AffineFunctional", "ConvexDomain", "FinGenMonoid", "GroupPresentation", "Inconclusive",
    "MembershipCertificate", "NormalizedGroup", "OrdconeError", "QSpaceCone", "UnimodularMap",
    "VPolytope", "algebraic_leq", "bezout", "catalog_entry", "cone_membership_rational",
    "contains", "dominated_by", "eliminate_variable", "example_catalog", "functional_range",
    "group_normal_form", "halfspaces_to_hull", "hermite_normal_form", "hull_membership",
    "hull_to_halfspaces", "induced_subgroup", "interval", "is_directed", "is_satisfiable",
    "is_simplicial_basis", "is_unperforated", "kernel_lattice_basis", "minimal_elements",
    "non_archimedean_witness", "positive_normalization_lattice", "positive_normalization_vs",
    "primitive_vector", "project", "realize", "saturation_hilbert_basis", "separate_from_origin",
    "separate_on_hyperplane", "simplicial_extension_search", "smith_normal_form",
    "upward_closure_basis", "verify_fp_conditions",
]

"""Finite weighted quivers with group actions, their quotients and bundle classification."""

from .action import (QuiverAction, component_orbits, is_free, orbit_constant_weights, orbits,
                     quotient_quiver, validate_action)
from .algebra import ck_presentation, k_theory, smith_normal_form
from .constructions import (PrincipalBundleData, bundle_quiver, classify_action, coset_action,
                            coset_quiver, double_coset_quotient, relation_action, relation_quiver,
                            semidirect_skew_check, skew_product, trivial_bundle, validate_bundle)
from .documents import Workspace, emit_workspace, parse_document
from .errors import ConsistencyError, InvalidInput, ParseError, PropertyFailure, QuiverkitError, Report
from .groups import (FiniteGroup, GroupHom, Subgroup, binary_octahedral, coset_partition, cyclic,
                     dihedral, direct_product, generated_subgroup, make_semidirect,
                     power_endomorphism, quaternion8, symmetric)
from .quiver import FiniteQuiver, QuiverMorphism, connected_components, quiver_isomorphic

__version__ = "0.1.0"

"""Verification tools for finite higher groupoids.

The package covers truncated simplicial sets with Kan conditions, finite
2-groupoids, finite groupoids with bibundles, stacky-groupoid data, the
translation between 2-groupoids and stacky groupoids, and equivalence /
Morita-equivalence checks.  Every verifier returns a ``Report`` whose
failing checks carry an explicit counterexample witness.
"""

from .bibundle import (Bibundle, FiniteGroupoid, bibundle_morphism_search,
                       compose_bibundles, group_groupoid,
                       groupoid_isomorphism_search, identity_bibundle,
                       is_biprincipal, pair_groupoid, unit_groupoid,
                       verify_bibundle, verify_groupoid)
from .equivalence import (StrictTwoGroupoidMap, arrow_refinement,
                          bounded_one_morita_search, compose_strict_maps,
                          fiber_product_two_groupoid, is_equivalence,
                          is_one_equivalence, nerve_map,
                          pullback_two_groupoid, strict_inverse_search,
                          verify_morita_witness, verify_strict_map)
from .groups import FiniteGroup, cyclic_group, symmetric_group, trivial_group
from .report import Check, Report
from .serialize import Document, DocumentError, emit, parse
from .simplicial import (SimplicialMap, TruncatedSimplicialSet, check_kan,
                         standard_simplex, verify_simplicial)
from .stacky import (StackyGroupoidData, from_ordinary_groupoid,
                     from_two_groupoid, inverse_bibundle, to_two_groupoid,
                     verify_stacky)
from .twogroupoid import (TwoGroupoidData, cech_groupoid,
                          crossed_module_fixture, groupoid_nerve,
                          truncate_to_data, two_groupoid_to_simplicial,
                          verify_two_groupoid)

__all__ = [
    "Bibundle", "Check", "Document", "DocumentError", "FiniteGroup",
    "FiniteGroupoid", "Report", "SimplicialMap", "StackyGroupoidData",
    "StrictTwoGroupoidMap", "TruncatedSimplicialSet", "TwoGroupoidData",
    "arrow_refinement", "bibundle_morphism_search",
    "bounded_one_morita_search", "cech_groupoid", "check_kan",
    "compose_bibundles", "compose_strict_maps", "crossed_module_fixture",
    "cyclic_group", "emit", "fiber_product_two_groupoid",
    "from_ordinary_groupoid", "from_two_groupoid", "group_groupoid",
    "groupoid_isomorphism_search", "groupoid_nerve", "identity_bibundle",
    "inverse_bibundle", "is_biprincipal", "is_equivalence",
    "is_one_equivalence", "nerve_map", "pair_groupoid", "parse",
    "pullback_two_groupoid", "standard_simplex", "strict_inverse_search",
    "symmetric_group", "to_two_groupoid", "trivial_group",
    "truncate_to_data", "two_groupoid_to_simplicial",
    "unit_groupoid", "verify_bibundle", "verify_groupoid",
    "verify_morita_witness", "verify_simplicial", "verify_stacky",
    "verify_strict_map", "verify_two_groupoid",
]

"""Finite groups, right transversals and the right loops they induce.

The library half provides exact Cayley-table machinery: group constructors
and queries, transversal enumeration, induced loop operations, torsion
groups, congruence closure and derived series.  The harness half sweeps a
catalog of small groups and verifies the structure theorems connecting
loop-level solvability to group-level solvability.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .congruences import (  # noqa: F401
    Congruence,
    InvariantSubloop,
    all_invariant_subloops,
    congruence_closure,
    congruence_from_invariant,
    derived_subloop,
    identity_class,
    is_invariant_subloop,
    is_solvable,
    order2_invariant_subloops,
    quotient_loop,
    smallest_abelian_group_congruence,
    smallest_group_congruence,
    subloop_as_loop,
)
from .groups import (  # noqa: F401
    ElementSet,
    FiniteGroup,
    SubgroupRef,
    all_subgroups,
    core,
    cyclic,
    derived_series,
    derived_subgroup,
    dihedral,
    direct_product,
    from_permutations,
    is_elementary_abelian_2,
    is_isomorphic,
    is_normal,
    is_solvable_group,
    quaternion8,
    quotient_group,
    right_cosets,
    set_product,
    subgroup,
    subgroup_closure,
    symmetric,
    validate_group,
)
from .loops import (  # noqa: F401
    RightLoop,
    TorsionGroup,
    TranslationGroup,
    as_loop,
    deviation_map,
    is_associative,
    loop_isomorphic,
    right_solve,
    torsion_group,
    translation_group,
    validate_right_loop,
)
from .transversals import (  # noqa: F401
    InducedLoop,
    Transversal,
    check_derived_chain,
    check_factor_compatibility,
    check_normal_lift,
    check_quotient_correspondence,
    coset_action,
    enumerate_transversals,
    find_generating_transversal,
    h_factor,
    induced_loop,
    is_generating,
    iso_classes,
    sample_transversals,
)

"""Chain groups, relative centers and Clifford relations for finite groups."""

from .chain import (
    GroupContext,
    canonical_map,
    chain_presentation,
    dual_group,
    relative_center,
    verify_caniso,
    verify_chain_functoriality,
    verify_iso_theorem,
)
from .charmodp import central_character, character_table_modp, choose_prime, multiplicity
from .clifford import const_support, sim_B_partition, sim_H_partition, verify_partition_duality
from .fusion import (
    branching_from_groups,
    fusion_from_group,
    induce,
    load_fusion_file,
    non_disjoint,
    restrict,
    validate,
)
from .groups import FiniteGroup, Subgroup, group_from_generators
from .presentations import (
    FiniteAbelianGroup,
    GroupPresentation,
    abelianization,
    certify_abelian_iso,
    smith_normal_form,
    todd_coxeter,
)
from .specs import parse_group_spec, parse_subgroup_spec

__version__ = "0.1.0"

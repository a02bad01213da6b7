"""Tabloid modules of symmetric groups: characters at roots of unity, marked
cycle tabloids and the bijection between them and eigen tabloids."""

from .bijection import EigenSet, eigen_tabloids, is_eigen, phi, psi, row_law_holds
from .characters import (
    ModuleSpec,
    character,
    character_trace_oracle,
    module_dimension,
    weighted_character_sum,
    weighted_character_sum_approx,
)
from .core import (
    MultiPartitionInstance,
    Partition,
    Permutation,
    RootSumValue,
    conjugator,
    cycle_type,
    flatten_sort,
    gamma_of,
    is_l_partition,
    partitions_of,
    root_sum_add,
    root_sum_eval,
    root_sum_scale_exponent,
    sigma_rho,
    validate_instance,
    validate_partition,
)
from .cycle_tabloids import (
    CycleTabloid,
    MarkedCycleTabloid,
    compress,
    count_marked,
    enumerate_cycle_tabloids,
    enumerate_marked,
    parse_marked,
    render_marked,
    validate_cycle_tabloid,
)
from .tabloids import (
    FixedPointProfile,
    Numbering,
    Tabloid,
    a_permutation,
    canonical_numbering,
    canonicalize,
    enumerate_tabloids,
    fixed_point_profile,
    left_act,
    orbit_representatives,
    right_act_a,
    tabloid_count,
)
from .verify import VerificationReport, verify_bijection, verify_catalog, verify_main_theorem

__version__ = "0.1.0"

"""Algorithms for media: reset sequences, shortest paths, complements,
closed orientations and black-box state enumeration."""

from .core import (
    LengthFunction,
    Medium,
    MediumError,
    Orientation,
    TokenTable,
    VerifyReport,
    apply_message,
    apply_token,
    compute_content,
    content_orientation,
    effective_tokens,
    find_isomorphism,
    is_consistent,
    is_stepwise_effective,
    is_straight_path,
    is_vacuous,
    medium_stats,
    verify_medium,
)
from .generators import (
    SetFamily,
    acyclic_orientation_medium,
    binary_tree_height_medium,
    binary_tree_medium,
    downward_closed_medium,
    from_well_graded_family,
    independent_set_medium,
    is_well_graded,
    permutation_medium,
    positive_content_family,
    powerset_medium,
    topological_ordering_medium,
)
from .paths import (
    ApspTable,
    ResetResult,
    all_complementary_pairs,
    all_pairs_shortest_paths,
    complement_of,
    content_dag,
    distances_to_state,
    reset_sequence,
    single_source_distances,
    straight_path_between,
)
from .orientations import (
    TwoSatInstance,
    ViolatingTriple,
    canonical_message,
    find_closed_orientation,
    find_violating_triple,
    is_closed,
    positive_effective_count,
    two_sat_solve,
)
from .blackbox import (
    BadMediumError,
    BlackBoxMedium,
    black_box_reset_sequence,
    enumerate_states,
    set_family_oracle,
    wrap_explicit,
)

__version__ = "0.1.0"

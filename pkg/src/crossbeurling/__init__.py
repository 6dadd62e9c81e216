"""Exact finite-group realizations of crossed products of normed algebras,
generalized Beurling algebras, and the correspondences between their
representation theories."""

from .algebras import (
    NormedAlgebra,
    algebra_from_name,
    column_algebra,
    diagonal_algebra,
    left_regular,
    make_algebra,
    matrix_algebra,
    opposite_algebra,
    scalars,
)
from .convolution import (
    BeurlingAlgebra,
    afunction_from_json,
    afunction_to_json,
    apply_s_chi,
    apply_t_chi,
    canonical_trivial_pair,
    check_anti_iso,
    check_conjugator,
    delta_function,
    hat_anti_iso,
    hat_conjugator,
    table2_action,
    table3_action,
    twisted_convolve,
    weighted_norm,
)
from .correspondence import (
    RepOnAlgebra,
    anti_pair_to_antirep,
    antirep_to_anti_pair,
    bimodule_correspondence,
    bimodule_pairs_from_reps,
    centralizer_extend,
    induced_pair,
    left_regular_sandwich,
    make_rep_on_algebra,
    pair_to_rep,
    rep_to_pair,
    retype_pair,
    verify_inequality_chain,
)
from .crossed import (
    CovariantPair,
    CrossedProduct,
    RepClass,
    build_crossed_product,
    canonical_maps,
    compare_classes,
    direct_sum_realization,
    integrated_form,
    seminorm,
)
from .dynamics import (
    DynamicalSystem,
    conjugation_action,
    coordinate_permutation_action,
    make_system,
    opposite_system,
    sign_flip_action,
    trivial_action,
)
from .groups import (
    Character,
    FiniteGroup,
    Weight,
    cyclic_group,
    dihedral_group,
    group_from_name,
    make_group,
    opposite_group,
    symmetric_group,
    trivial_character,
    trivial_weight,
    validate_character,
    validate_weight,
    weight_unit_bound,
)
from .fixtures import FIXTURE_IDS, fixture
from .harness import Report, emit_report, resolve_config, run_suite
from .spaces import NormBounds, PNormSpace, WeightedL1Space, check_leq
from .tensor import (
    TensorAlgebra,
    TensorRep,
    decompose_rep,
    n_fold_correspondence,
    odot,
    projective_norm_bounds,
)

__version__ = "0.1.0"

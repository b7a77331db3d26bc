"""Exact factorization of Cayley-graph adjacency matrices over finite groups."""

from .characters import (
    CharacterTable,
    cayley_eigenvalue_rows,
    cayley_eigenvalues,
    char_sum,
    character_table,
    criterion_check,
)
from .cyclic import (
    CrtIso,
    MaskPolynomial,
    antipode_augment,
    convolution,
    crt_compose,
    crt_split,
    dstar,
    dstar_witness,
    mask_poly,
    product_form_components,
    sidon_pair,
    table1_family,
    table1_half_shift,
    table1_index_sets,
    table1_multiplier,
    table1_pm_d,
    verify_via_mask,
)
from .dihedral import (
    DihedralSplit,
    PecherCorrespondence,
    PreimageNotSymmetric,
    are_equivalent,
    canonical_triple,
    equivalence_classes,
    involution_equivalent,
    is_strongly_symmetric,
    pecher_correspondence,
    pecher_forward,
    pecher_inverse,
    pullback_equivalence_condition,
    split_RM,
    table2_family,
    transfer_backward,
    transfer_forward,
    ur_um_decomposition,
)
from .factor import (
    FactorTriple,
    TheoremViolation,
    VerificationReport,
    adjacency,
    involution_count,
    is_near_factorization,
    matrix_cross_check,
    parity_check,
    product_if_unique,
    rep_counts,
    transform_triple,
    transversal_identity,
    triple_from_json,
    triple_to_json,
    verify_triple,
)
from .groups import (
    Automorphism,
    CyclicGroup,
    DihedralGroup,
    ElementSet,
    FiniteGroup,
    ProductGroup,
    Subgroup,
    TableGroup,
    UnsupportedAutomorphisms,
    all_subgroups,
    apply_automorphism,
    automorphisms,
    conjugacy_classes,
    conjugate_set,
    direct_product,
    element_order,
    find_isomorphism,
    group_from_descriptor,
    group_from_spec,
    involutions,
    is_class_closed,
    is_symmetric,
    make_cyclic,
    make_dihedral,
    multiply_sets,
    parse_set,
    subgroup_generated,
    symmetric_atoms,
)
from .search import (
    SearchOptions,
    SearchReport,
    SearchStats,
    enumerate_triples,
    find_factor_pairs,
    is_connected,
    near_factorization_census,
)

__version__ = "0.1.0"

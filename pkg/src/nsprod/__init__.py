"""Finite groups as Cayley tables, with the machinery to classify normal
subgroups of direct products as standard (a product of factor subgroups)
or non-standard, decide whether a pair of groups can only produce
standard ones, and construct explicit non-standard witnesses otherwise.
"""

from .errors import (
    CapExceeded,
    GroupError,
    InternalInvariantViolation,
    InvalidCayleyFile,
    MismatchedParent,
    NotAGroup,
    NotASubgroup,
    NotNormal,
    OrderCapExceeded,
    ParseError,
    PreconditionViolated,
)
from .groups import (
    Caps,
    DEFAULT_CAPS,
    ElementSet,
    FiniteGroup,
    ProductGroup,
    center,
    commutator,
    conjugacy_classes,
    direct_product,
    element_orders,
    from_cayley_table,
    make_family,
    prime_factors,
    read_cayley_file,
    subgroup_as_group,
    write_cayley_file,
)
from .lattice import (
    QuotientGroup,
    all_normal_subgroups,
    generated_subgroup,
    intersect_with_factor,
    is_normal,
    project,
    quotient,
)
from .iso import (
    CommonSubgroupWitness,
    InvariantSignature,
    Isomorphism,
    derived_subgroup,
    find_isomorphism,
    have_common_subgroup,
    minimal_generating_set,
    signature,
)
from .structure import (
    CommonFactor,
    CompositionSeries,
    FactorLabel,
    FactorMultiset,
    composition_factors,
    composition_series,
    identify,
    is_simple,
    leinster_common_member,
    multiset_disjoint_union,
)
from .standardness import (
    GoursatData,
    NsReport,
    NsViolation,
    PairwiseNs,
    StandardnessVerdict,
    all_normal_subgroups_standard,
    build_nonstandard_witness,
    classify_normal_subgroups,
    find_ns_violation_witness,
    goursat_extract,
    goursat_reconstruct,
    is_leinster_perfect,
    ns_prime_sets,
    pairwise_ns,
    satisfies_ns_direct,
    satisfies_ns_gcd,
    section_quotient,
    sum_of_normal_orders,
)
from .expr import (
    FamilyAtom,
    FileAtom,
    GroupExpr,
    Product,
    evaluate,
    format_group_expr,
    parse_group_expr,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "Caps",
    "CommonFactor",
    "CommonSubgroupWitness",
    "CompositionSeries",
    "DEFAULT_CAPS",
    "ElementSet",
    "FactorLabel",
    "FactorMultiset",
    "FamilyAtom",
    "FileAtom",
    "FiniteGroup",
    "GoursatData",
    "GroupError",
    "GroupExpr",
    "InternalInvariantViolation",
    "InvalidCayleyFile",
    "InvariantSignature",
    "Isomorphism",
    "MismatchedParent",
    "NotAGroup",
    "NotASubgroup",
    "NotNormal",
    "NsReport",
    "NsViolation",
    "OrderCapExceeded",
    "PairwiseNs",
    "ParseError",
    "PreconditionViolated",
    "Product",
    "ProductGroup",
    "QuotientGroup",
    "StandardnessVerdict",
    "all_normal_subgroups",
    "all_normal_subgroups_standard",
    "build_nonstandard_witness",
    "center",
    "classify_normal_subgroups",
    "commutator",
    "composition_factors",
    "composition_series",
    "conjugacy_classes",
    "derived_subgroup",
    "direct_product",
    "element_orders",
    "evaluate",
    "find_isomorphism",
    "find_ns_violation_witness",
    "format_group_expr",
    "from_cayley_table",
    "generated_subgroup",
    "goursat_extract",
    "goursat_reconstruct",
    "have_common_subgroup",
    "identify",
    "intersect_with_factor",
    "is_leinster_perfect",
    "is_normal",
    "is_simple",
    "leinster_common_member",
    "make_family",
    "minimal_generating_set",
    "multiset_disjoint_union",
    "ns_prime_sets",
    "pairwise_ns",
    "parse_group_expr",
    "prime_factors",
    "project",
    "quotient",
    "read_cayley_file",
    "satisfies_ns_direct",
    "satisfies_ns_gcd",
    "section_quotient",
    "signature",
    "subgroup_as_group",
    "sum_of_normal_orders",
    "write_cayley_file",
]

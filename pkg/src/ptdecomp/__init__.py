"""Extremal decompositions of monomorphisms of points in small finite varieties."""
from .algebra import (
    Hom,
    Structure,
    Sub,
    Variety,
    generated_sub,
    kernel_sub,
    parse_variety,
    preimage_sub,
    validate_hom,
    validate_structure,
)
from .decomp import (
    Decomposition,
    decompose,
    decompose_stable_check,
    extremal_decompose,
    extremal_decompose_schreier,
    is_outsider,
    schreier_retraction,
)
from .groupoids import (
    FiniteGroupoid,
    InternalGroupoidInGp,
    WideSubgroupoid,
    dif_decompose_internal_gp,
    equivalence_relation_as_groupoid,
    grd_y_is_normal,
    grd_y_normalizer,
    internal_groupoid_gp,
    is_discrete_fibration,
)
from .normalizers import (
    RelationSub,
    extend_relation,
    is_normal,
    largest_normal_congruence,
    normalizer,
)
from .oracle import (
    Certificate,
    brute_normalizer,
    maltsev_probe,
    verify_extremal,
    verify_largest,
    verify_pullback,
)
from .points import Point, PtMono, is_cartesian, make_point, make_pt_mono, pullback_point

validate_internal_groupoid_gp = internal_groupoid_gp

__all__ = [
    "Certificate",
    "Decomposition",
    "FiniteGroupoid",
    "Hom",
    "InternalGroupoidInGp",
    "Point",
    "PtMono",
    "RelationSub",
    "Structure",
    "Sub",
    "Variety",
    "WideSubgroupoid",
    "brute_normalizer",
    "decompose",
    "decompose_stable_check",
    "dif_decompose_internal_gp",
    "equivalence_relation_as_groupoid",
    "extend_relation",
    "extremal_decompose",
    "extremal_decompose_schreier",
    "generated_sub",
    "grd_y_is_normal",
    "grd_y_normalizer",
    "internal_groupoid_gp",
    "is_cartesian",
    "is_discrete_fibration",
    "is_normal",
    "is_outsider",
    "kernel_sub",
    "largest_normal_congruence",
    "make_point",
    "make_pt_mono",
    "maltsev_probe",
    "normalizer",
    "parse_variety",
    "preimage_sub",
    "pullback_point",
    "schreier_retraction",
    "validate_hom",
    "validate_internal_groupoid_gp",
    "validate_structure",
    "verify_extremal",
    "verify_largest",
    "verify_pullback",
]

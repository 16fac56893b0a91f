"""Classification and cohomology of invariant D-modules on algebraic groups."""

from .errors import (
    InvDModError,
    InvalidRank,
    GroupMismatch,
    DimensionMismatch,
    IrrationalSpectrum,
    NonSemisimpleTuple,
    NonCommutingData,
    NonUnitDeterminant,
    UnsupportedSize,
    PreconditionFailed,
    DegreeLimitExceeded,
    ConfigError,
    MalformedInput,
)
from .config import Settings, get_settings, reset_settings
from .rootdata import (
    CartanType,
    CartanMatrix,
    FiniteAbelianGroup,
    SubgroupSpec,
    EmbeddedSubgroup,
    SemisimpleGroup,
    SmithDecomposition,
    parse_cartan_type,
    cartan_matrix,
    smith_normal_form,
    subgroup,
    CenterPresentation,
    center_of_sc,
    center_presentation,
    coweight_class,
    weight_class,
    center_pairing,
    simply_connected,
    adjoint,
    special_linear_quotient,
)
from .finab import (
    Character,
    RepClass,
    characters,
    character_order,
    classify_semisimple,
    class_count,
    invariants_dim,
    tensor,
    dual,
    direct_sum,
    hom_dim,
    isotypic_decomposition,
    trivial_class,
    central_character,
    descends,
)
from .torusconn import (
    ConstantTorusConnection,
    MonodromyClass,
    LaurentMatrix,
    check_flat,
    monodromy_class,
    equivalent,
    verify_gauge,
    apply_gauge,
    tensor_monodromy,
    dual_monodromy,
    enumerate_monodromy_classes,
    trivial_connection,
)
from .glred import (
    GlrConnectionSpec,
    scalar_form,
    reduce_to_gm,
    glr_equivalent,
    classify_glr_statement,
    tensor_glr,
)
from .lieverify import (
    LieAlgebraPresentation,
    LinearRep,
    FormExpr,
    is_lie_hom,
    builtin,
    adjoint_rep,
    standard_rep,
    check_jacobi,
    maurer_cartan_check,
    trace_dlogdet_check,
)
from .reductive import (
    ReductiveProductGroup,
    ReductiveClass,
    construct_class,
    mu_der,
    in_ab_image,
    ab_pullback,
    tensor_classes,
    reductive_poincare,
)
from .cohomo import (
    WeylDegrees,
    PoincarePolynomial,
    weyl_degrees,
    poincare,
    dmod_betti,
    local_system_betti,
    monodromy_factors_through,
    exponents,
    coxeter_number,
    weyl_group_order,
    group_dimension,
    coxeter_degrees,
)

__all__ = [
    "InvDModError",
    "InvalidRank",
    "GroupMismatch",
    "DimensionMismatch",
    "IrrationalSpectrum",
    "NonSemisimpleTuple",
    "NonCommutingData",
    "NonUnitDeterminant",
    "UnsupportedSize",
    "PreconditionFailed",
    "DegreeLimitExceeded",
    "ConfigError",
    "MalformedInput",
    "Settings",
    "get_settings",
    "reset_settings",
    "CartanType",
    "CartanMatrix",
    "FiniteAbelianGroup",
    "SubgroupSpec",
    "EmbeddedSubgroup",
    "SemisimpleGroup",
    "SmithDecomposition",
    "parse_cartan_type",
    "cartan_matrix",
    "smith_normal_form",
    "subgroup",
    "CenterPresentation",
    "center_of_sc",
    "center_presentation",
    "coweight_class",
    "weight_class",
    "center_pairing",
    "simply_connected",
    "adjoint",
    "special_linear_quotient",
    "Character",
    "RepClass",
    "characters",
    "character_order",
    "classify_semisimple",
    "class_count",
    "invariants_dim",
    "tensor",
    "dual",
    "direct_sum",
    "hom_dim",
    "isotypic_decomposition",
    "trivial_class",
    "central_character",
    "descends",
    "ConstantTorusConnection",
    "MonodromyClass",
    "LaurentMatrix",
    "check_flat",
    "monodromy_class",
    "equivalent",
    "verify_gauge",
    "apply_gauge",
    "tensor_monodromy",
    "dual_monodromy",
    "enumerate_monodromy_classes",
    "trivial_connection",
    "GlrConnectionSpec",
    "scalar_form",
    "reduce_to_gm",
    "glr_equivalent",
    "classify_glr_statement",
    "tensor_glr",
    "LieAlgebraPresentation",
    "LinearRep",
    "FormExpr",
    "is_lie_hom",
    "builtin",
    "adjoint_rep",
    "standard_rep",
    "check_jacobi",
    "maurer_cartan_check",
    "trace_dlogdet_check",
    "ReductiveProductGroup",
    "ReductiveClass",
    "construct_class",
    "mu_der",
    "in_ab_image",
    "ab_pullback",
    "tensor_classes",
    "reductive_poincare",
    "WeylDegrees",
    "PoincarePolynomial",
    "weyl_degrees",
    "poincare",
    "dmod_betti",
    "local_system_betti",
    "monodromy_factors_through",
    "exponents",
    "coxeter_number",
    "weyl_group_order",
    "group_dimension",
    "coxeter_degrees",
]

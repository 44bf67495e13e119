"""frontlab: numerical differential geometry of wave fronts.

Singular-curve tracing, cuspidal-edge/swallowtail classification, singular
curvature, Gauss-Bonnet bookkeeping, zigzag words, and hypersurface fronts.
"""

from .errors import (
    ExprDomainError,
    FrontContractError,
    FrontlabError,
    InapplicableError,
    TraceError,
)
from .expr import Expr, Jet2, ParseError, eval_jet, finite_difference_jet, parse, to_source
from .front import (
    CurvatureSample,
    Domain,
    Front,
    FundamentalForms,
    ValidationReport,
    curvature,
    forms,
    lambda_value,
    parallel_surface,
    read_description,
    validate,
    write_description,
)
from .gallery import gallery, gallery_names
from .gaussbonnet import (
    GaussBonnetReport,
    degree_of_gauss_map,
    euler_characteristics,
    euler_report,
    integrate_K_dA,
    integrate_K_dAhat,
    integrate_kappa_s,
    report_to_dict,
    swallowtail_signs,
)
from .singular import (
    HalfSpaceSigns,
    NormalCurvature,
    SingularClass,
    SingularCurve,
    SingularPoint,
    TailSide,
    classify,
    curve_to_csv,
    curve_to_dict,
    half_space_signs,
    kappa_s_measure,
    lambda_jets,
    limiting_normal_curvature,
    peak_arc_count,
    sign_meaning_check,
    singular_curvature,
    singular_curvature_intrinsic,
    swallowtail_sign,
    tail_side,
    trace,
)
from .zigzag import (
    Crossing,
    NullLoop,
    PlaneFront,
    ZigzagResult,
    axis_loop,
    classify_crossings_surface,
    classify_cusps_plane,
    loop_gallery,
    loop_gallery_names,
    mirror_plane_front,
    normal_rotation_index,
    null_loop,
    plane_gallery,
    plane_gallery_names,
    plane_position,
    reduce_word,
    reverse_loop,
    rotation_number_plane,
    rotation_number_surface,
    zigzag_over_loops,
    zigzag_plane,
    zigzag_surface,
    zigzag_to_dict,
)

__version__ = "0.1.0"

__all__ = [
    "CurvatureSample",
    "Domain",
    "Expr",
    "ExprDomainError",
    "Front",
    "FrontContractError",
    "FrontlabError",
    "FundamentalForms",
    "GaussBonnetReport",
    "HalfSpaceSigns",
    "InapplicableError",
    "Jet2",
    "NormalCurvature",
    "ParseError",
    "SingularClass",
    "SingularCurve",
    "SingularPoint",
    "TailSide",
    "TraceError",
    "ValidationReport",
    "Crossing",
    "NullLoop",
    "PlaneFront",
    "ZigzagResult",
    "axis_loop",
    "classify",
    "classify_crossings_surface",
    "classify_cusps_plane",
    "curvature",
    "curve_to_csv",
    "curve_to_dict",
    "degree_of_gauss_map",
    "euler_characteristics",
    "euler_report",
    "eval_jet",
    "finite_difference_jet",
    "forms",
    "gallery",
    "gallery_names",
    "half_space_signs",
    "integrate_K_dA",
    "integrate_K_dAhat",
    "integrate_kappa_s",
    "kappa_s_measure",
    "lambda_jets",
    "lambda_value",
    "limiting_normal_curvature",
    "loop_gallery",
    "loop_gallery_names",
    "mirror_plane_front",
    "normal_rotation_index",
    "null_loop",
    "parallel_surface",
    "parse",
    "peak_arc_count",
    "plane_gallery",
    "plane_gallery_names",
    "plane_position",
    "read_description",
    "reduce_word",
    "report_to_dict",
    "reverse_loop",
    "rotation_number_plane",
    "rotation_number_surface",
    "sign_meaning_check",
    "singular_curvature",
    "singular_curvature_intrinsic",
    "swallowtail_sign",
    "swallowtail_signs",
    "tail_side",
    "to_source",
    "trace",
    "validate",
    "write_description",
    "zigzag_over_loops",
    "zigzag_plane",
    "zigzag_surface",
    "zigzag_to_dict",
    "__version__",
]

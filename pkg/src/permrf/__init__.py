"""Exact arithmetic in towers of finite fields and batch verification of
trace-quotient permutation rational functions x -> L(x) + c/(Tr(x) + b).

Everything is deterministic: field elements are canonical integer
encodings, random sampling is seeded, and reports serialize to stable
bytes.  See the README for the command line surface.
"""

from .bivariate import (
    BivarPoly,
    build_f2,
    build_f3,
    build_f3_kernel,
    conjugate_factor_search,
    count_offdiag_points,
    eval_poly,
    norm_poly,
    trace_poly,
    weil_holds,
    weil_threshold,
)
from .errors import PermRFError, SizeBudgetExceeded, UsageError
from .gf_core import (
    DEFAULT_SIZE_BUDGET,
    Element,
    FieldTower,
    basis_det_b,
    dual_basis,
    frobenius,
    invert,
    is_in_subfield,
    make_tower,
    norm,
    trace,
    trace_rel,
)
from .linmaps import (
    LinearizedPoly,
    compose,
    eval_lin,
    from_matrix,
    invert_lin,
    matrix_of,
    rank_kernel_image,
    trace_decompose,
)
from .ratfunc import (
    Criterion,
    KernelCriterion,
    RatFuncSpec,
    TwistedForm,
    classify_c,
    closed_form_c,
    eval_rf,
    eval_twisted,
    is_permutation,
    is_permutation_direct,
    is_permutation_reduced,
    is_permutation_twisted,
    kernel_criterion,
    lifted_c_set,
    normalize_spec,
    pairwise_criterion,
    remark2_transform,
    remark3_check,
)
from .verify import (
    RunConfig,
    SuiteReport,
    reports_to_csv,
    reports_to_json,
    run_battery,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "BivarPoly",
    "Criterion",
    "DEFAULT_SIZE_BUDGET",
    "Element",
    "FieldTower",
    "KernelCriterion",
    "LinearizedPoly",
    "PermRFError",
    "RatFuncSpec",
    "RunConfig",
    "SizeBudgetExceeded",
    "SuiteReport",
    "TwistedForm",
    "UsageError",
    "basis_det_b",
    "build_f2",
    "build_f3",
    "build_f3_kernel",
    "classify_c",
    "closed_form_c",
    "compose",
    "conjugate_factor_search",
    "count_offdiag_points",
    "dual_basis",
    "eval_lin",
    "eval_poly",
    "eval_rf",
    "eval_twisted",
    "from_matrix",
    "frobenius",
    "invert",
    "invert_lin",
    "is_in_subfield",
    "is_permutation",
    "is_permutation_direct",
    "is_permutation_reduced",
    "is_permutation_twisted",
    "kernel_criterion",
    "lifted_c_set",
    "make_tower",
    "matrix_of",
    "norm",
    "norm_poly",
    "normalize_spec",
    "pairwise_criterion",
    "rank_kernel_image",
    "remark2_transform",
    "remark3_check",
    "reports_to_csv",
    "reports_to_json",
    "run_battery",
    "run_suite",
    "trace",
    "trace_decompose",
    "trace_poly",
    "trace_rel",
    "weil_holds",
    "weil_threshold",
]

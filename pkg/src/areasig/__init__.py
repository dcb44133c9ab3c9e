"""Exact tensor/shuffle algebra with area operators and discrete signatures."""

from .errors import (
    AlphabetMismatch,
    EmptyWordOperand,
    ExpressionSyntaxError,
    TermBudgetExceeded,
)
from .guard import get_term_budget, set_term_budget
from .tensor import (
    CoproductTerms,
    TensorElem,
    antipode,
    area,
    concat,
    dynkin_r,
    exp_conc,
    grading_d,
    grading_d_inv,
    half_shuffle,
    invert_r,
    is_grouplike,
    is_lie_element,
    letter_elem,
    lie_bracket,
    log_conc,
    pairing,
    pi1,
    pi1_transpose,
    proj,
    proj_at_least,
    rho,
    shuffle,
    unit,
    unshuffle,
    word_elem,
    zero,
)
from .hall import (
    HallBasis,
    HallWord,
    dual_pbw,
    hall_bracketing,
    hall_set,
    lyndon_words,
    witt_dimension,
    zeta_first_kind,
)
from .double_tensor import (
    DoubleTensor,
    box_bracket,
    box_mul,
    coeval_at,
    dendriform,
    eval_at,
    exp_box,
    lambda_element,
    log_box,
    nested_box_bracket,
    pre_lie,
    pre_lie_sym,
    r_element,
    s_element,
    tensor_pair,
)
from .trees import (
    area_eval,
    coeff_b,
    coeff_c,
    coeff_e,
    enumerate_mixed,
    enumerate_trees,
    format_tree,
    lambda_via_trees,
    lie_eval,
    mixed_eval,
    parse_tree,
    r_via_trees,
    rho_hall,
    zeta_via_trees,
)
from .span import (
    SpanReport,
    area_span_basis,
    area_span_membership,
    areas_generate_check,
    arealb,
    generation_rank,
    leftbracket_span_check,
    rho_image_in_area_span,
    rho_permutation,
    special_tree_reduction,
    theta_expansion,
    tortkara_check,
    vol,
    vol_n,
    volume_invariant,
    words_as_rho_shuffles,
)
from .discrete import (
    ScalarSeries,
    TimeSeries,
    discrete_area,
    discrete_area_tree,
    discrete_integral,
    load_timeseries,
    signature_pwl,
)
from .expr import evaluate_text, format_expression, parse_expression

__version__ = "0.1.0"

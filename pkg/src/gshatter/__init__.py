"""Exact shattering certificates for group-convolution classifiers.

The package builds finite groups, convolves exact rational functions
over them, enumerates every label pattern a two-bias ReLU classifier
with a fixed kernel can realize, synthesizes kernels that provably
shatter m functions, and checks the matching capacity bounds.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    build_bound_report,
    lower_bound,
    lower_bound_at_most,
    required_group_size,
    upper_bound_implicit,
    upper_bound_refined,
    upper_bound_simple,
    upper_bound_simple_ceil,
    wallis_check,
)
from .classifier import (
    NuProfile,
    Ranking,
    StepFn,
    build_nu_profile,
    classify,
    nu,
    order_at,
    ranking_of_values,
    step_function,
)
from .errors import (
    GroupSpecError,
    GroupTooSmallError,
    GShatterError,
    MissingElementError,
    SynthesisVerificationError,
)
from .gfunc import (
    GroupFunction,
    Measure,
    constant,
    convolve,
    counting_measure,
    indicator,
    translate,
)
from .groups import (
    FiniteGroup,
    GroupSpec,
    build_group,
    cyclic_group,
    dihedral_group,
    find_order_ge3_element,
    find_order_two_element,
    parse_group_spec,
    product_group,
    validate_group,
)
from .orders import (
    OrderSet,
    build_complete_orders,
    completeness_lower_bound,
    f_map,
    f_map_base,
    is_complete,
    mask_elements,
    mask_from_elements,
    peel_chain,
    sigma_tilde,
)
from .shatter import (
    CriticalSet,
    Dichotomy,
    ShatterCertificate,
    VCSearchResult,
    check_order_criterion,
    critical_points,
    enumerate_dichotomies,
    is_shattered,
    order_set,
    vc_search,
)
from .synth import (
    SynthConfig,
    SynthResult,
    UTower,
    build_u_tower,
    choose_subsets,
    solve_k_vector,
    synth_epsilon,
    synth_kernel,
    verify_synth,
)

"""
banachlab - cones, numerical ranges, roots and ideals in finite-dimensional Banach algebras
"""

__version__ = "1.0.0"

from .algebra import (
    AlgebraSpec,
    Element,
    build_algebra,
    invert,
    linf_sum,
    multiply,
    norm,
    quasiproduct,
    random_element,
    resolvent,
    spectrum,
    unitize,
)
from .config import DEFAULT_TOLERANCES, Tolerances, configure_logging
from .exceptions import BanachLabError, ClaimFailed
from .ideals import (
    IdealBasis,
    cohen_factorize,
    comm_join,
    hsa_factorize,
    min_norm_left_identity,
    principal_left_ideal,
    principal_right_ideal,
    pseudo_invert,
    support_idempotent,
    support_join,
    ws_equivalences_report,
)
from .io import load_algebra, parse_coefficients, save_algebra
from .mideals import (
    MIdealIdeal,
    central_ideal,
    cssw_lift,
    mideal_join,
    mideal_meet,
    quotient_numrange,
    real_positive_lift,
    segment_lift,
)
from .numrange import (
    cone_report,
    decompose_unital,
    min_re_abscissa,
    numrange,
    numrange_inner,
    numrange_outer,
    preceq,
)
from .roots import (
    commuting_power_lipschitz_check,
    f_transform,
    inverse_f_transform,
    power,
    power_balakrishnan,
    power_series,
    root_defect_profile,
)
from .schemas import NormSpec, NumericalRangeEstimate, PowerMethod

__all__ = [
    "AlgebraSpec",
    "Element",
    "build_algebra",
    "invert",
    "linf_sum",
    "multiply",
    "norm",
    "quasiproduct",
    "random_element",
    "resolvent",
    "spectrum",
    "unitize",
    "DEFAULT_TOLERANCES",
    "Tolerances",
    "configure_logging",
    "BanachLabError",
    "ClaimFailed",
    "IdealBasis",
    "cohen_factorize",
    "comm_join",
    "hsa_factorize",
    "min_norm_left_identity",
    "principal_left_ideal",
    "principal_right_ideal",
    "pseudo_invert",
    "support_idempotent",
    "support_join",
    "ws_equivalences_report",
    "load_algebra",
    "parse_coefficients",
    "save_algebra",
    "MIdealIdeal",
    "central_ideal",
    "cssw_lift",
    "mideal_join",
    "mideal_meet",
    "quotient_numrange",
    "real_positive_lift",
    "segment_lift",
    "cone_report",
    "decompose_unital",
    "min_re_abscissa",
    "numrange",
    "numrange_inner",
    "numrange_outer",
    "preceq",
    "commuting_power_lipschitz_check",
    "f_transform",
    "inverse_f_transform",
    "power",
    "power_balakrishnan",
    "power_series",
    "root_defect_profile",
    "NormSpec",
    "NumericalRangeEstimate",
    "PowerMethod",
]

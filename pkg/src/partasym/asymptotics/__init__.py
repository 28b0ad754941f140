"""Transfer rules and per-family circle-method terms."""

from .transfer import transfer_double, transfer_single
from .nsp import nsp_phi1, nsp_phi2, nsp_phi_k, nsp_phi_k_parts
from .families import (
    basic_phi,
    colored3_phi,
    concave_growth_constant,
    concave_q,
    petersson_check,
    petersson_residual,
    plane_phi,
    prings_closed_form,
    prings_phi,
)

__all__ = [
    "transfer_single",
    "transfer_double",
    "nsp_phi1",
    "nsp_phi2",
    "nsp_phi_k",
    "nsp_phi_k_parts",
    "basic_phi",
    "colored3_phi",
    "plane_phi",
    "prings_phi",
    "prings_closed_form",
    "concave_q",
    "concave_growth_constant",
    "petersson_check",
    "petersson_residual",
]

from .estimate import (  # noqa: E402
    EstimateConfig,
    PhiBreakdown,
    default_config,
    default_precision,
    estimate,
    leading_digit_agreement,
)

__all__ += [
    "EstimateConfig",
    "PhiBreakdown",
    "default_config",
    "default_precision",
    "estimate",
    "leading_digit_agreement",
]

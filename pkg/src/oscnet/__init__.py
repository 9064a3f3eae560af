"""Osculating-space network codes from Veronese varieties over finite fields."""

__version__ = "0.1.0"

from .gf import Field, FieldElem, FieldError  # noqa: E402
from .linalg import Subspace, intersect, intersect_oracle, span, subspace_distance, subspace_sum  # noqa: E402
from .veronese import DensePoly, LinearForm, monomial_basis, osculating_cone, poly_mul, veronese_point  # noqa: E402
from .code import Code, CodeParams, build_code, code_params, enum_projective_points, predicted_params, verify_theorem  # noqa: E402
from .channel import ChannelConfig, ChannelOutcome, md_decode, simulate, transmit  # noqa: E402

__all__ = [
    "Field", "FieldElem", "FieldError",
    "Subspace", "span", "subspace_sum", "intersect", "intersect_oracle", "subspace_distance",
    "DensePoly", "LinearForm", "monomial_basis", "poly_mul", "veronese_point", "osculating_cone",
    "Code", "CodeParams", "build_code", "code_params", "enum_projective_points", "predicted_params", "verify_theorem",
    "ChannelConfig", "ChannelOutcome", "transmit", "md_decode", "simulate",
]

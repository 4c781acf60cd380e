"""Exact symbolic toolkit for codimension-one foliations with a cuspidal separatrix."""

from .algebra import (
    ExtElement,
    ExtField,
    Rational,
    SparsePoly,
    WeightVector,
    divide_exact,
    ext_invert,
    find_quasihomogeneous_weights,
    order_at_origin,
    partial_derivative,
    substitute,
    weighted_valuation,
)
from .cuspidal import (
    CuspDecomposition,
    CuspidalSpec,
    GPoly,
    assemble_generator,
    build_cuspidal_spec,
    cuspidal_decompose,
    expand_phi,
    expand_psi,
    h_poly,
    singular_locus,
    surface,
)
from .forms import (
    DiffForm,
    FreeBasisResult,
    SaitoTriple,
    differential,
    exterior_derivative,
    is_integrable,
    is_logarithmic,
    is_logarithmic_meromorphic,
    log_quotient,
    pullback,
    saito_decompose,
    saito_free_basis_check,
    wedge,
)
from .parser import format_form, format_poly, parse_form, parse_poly
from .resolution import (
    ChartMap,
    ChartReport,
    GSVerdict,
    gs_condition,
    gterm_inequalities,
    loray_condition_2d,
    resolve,
    step1_map,
    step1_transform,
    step2_map,
    step2_transform,
    step3_map,
    step3_transform,
)

__all__ = [
    "assemble_generator",
    "build_cuspidal_spec",
    "ChartMap",
    "ChartReport",
    "CuspDecomposition",
    "cuspidal_decompose",
    "CuspidalSpec",
    "differential",
    "DiffForm",
    "divide_exact",
    "expand_phi",
    "expand_psi",
    "ext_invert",
    "ExtElement",
    "exterior_derivative",
    "ExtField",
    "find_quasihomogeneous_weights",
    "format_form",
    "format_poly",
    "FreeBasisResult",
    "GPoly",
    "gs_condition",
    "GSVerdict",
    "gterm_inequalities",
    "h_poly",
    "is_integrable",
    "is_logarithmic",
    "is_logarithmic_meromorphic",
    "log_quotient",
    "loray_condition_2d",
    "order_at_origin",
    "parse_form",
    "parse_poly",
    "partial_derivative",
    "pullback",
    "Rational",
    "resolve",
    "saito_decompose",
    "saito_free_basis_check",
    "SaitoTriple",
    "singular_locus",
    "SparsePoly",
    "step1_map",
    "step1_transform",
    "step2_map",
    "step2_transform",
    "step3_map",
    "step3_transform",
    "substitute",
    "surface",
    "wedge",
    "weighted_valuation",
    "WeightVector",
]

__version__ = "0.1.0"

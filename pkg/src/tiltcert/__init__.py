"""Exact-rational certificates for tilt-stability computations on the
smooth quadric threefold: twisted Chern characters, slope and central-charge
closed forms, subobject analysis for the skyscraper sheaf in an exceptional
heart, and a sound polynomial sign-certification engine, all over Q.
"""

from .kernel import (
    BivariatePoly,
    RationalInterval,
    bernstein_coefficients,
    format_rational,
    parse_rational,
    poly_equal,
    poly_eval,
    poly_format,
    poly_interval_eval,
    poly_parse,
)
from .chern import (
    ChernCharacter,
    CatalogObject,
    PROJECTIVE_SPACE,
    QUADRIC,
    Threefold,
    catalog_lookup,
    line_bundle_ch,
    load_chern,
    quadric_catalog,
    shift,
    spinor_ch_minus_one,
    tensor_line,
    twist,
)
from .tilt import (
    ComplexRational,
    ExtendedSlope,
    INFINITE_SLOPE,
    TiltParams,
    bg_margin,
    bg_margin_from_squared,
    central_charge,
    cross_polynomial,
    lambda_slope,
    mu,
    nu,
    nu_zero_alpha_squared,
    twisted_ch_polynomials,
    wall_polynomial,
    z_polynomials,
    z_value,
)
from .heart import (
    BASE_VECTORS,
    CandidateSet,
    DerivationError,
    DimensionVector,
    GENERATOR_LABELS,
    ImSignFact,
    DEFAULT_SIGN_FACTS,
    SKYSCRAPER_VECTOR,
    heart_ch,
    heart_z,
    reduce_candidates,
    skyscraper_candidates,
)
from .certify import (
    Factor,
    FactoredClaim,
    Region,
    SignCertificate,
    certify_sign,
    default_region,
)
from .suite import (
    Report,
    ReportItem,
    verify_all,
    verify_half_plane,
    verify_lemma_computation,
    verify_skyscraper_condition,
)
from .svg import emit_wall_svg, emit_zvectors_svg, wall_contour_segments

__version__ = "0.1.0"

__all__ = [
    "BivariatePoly",
    "RationalInterval",
    "bernstein_coefficients",
    "format_rational",
    "parse_rational",
    "poly_equal",
    "poly_eval",
    "poly_format",
    "poly_interval_eval",
    "poly_parse",
    "ChernCharacter",
    "CatalogObject",
    "PROJECTIVE_SPACE",
    "QUADRIC",
    "Threefold",
    "catalog_lookup",
    "line_bundle_ch",
    "load_chern",
    "quadric_catalog",
    "shift",
    "spinor_ch_minus_one",
    "tensor_line",
    "twist",
    "ComplexRational",
    "ExtendedSlope",
    "INFINITE_SLOPE",
    "TiltParams",
    "bg_margin",
    "bg_margin_from_squared",
    "central_charge",
    "cross_polynomial",
    "lambda_slope",
    "mu",
    "nu",
    "nu_zero_alpha_squared",
    "twisted_ch_polynomials",
    "wall_polynomial",
    "z_polynomials",
    "z_value",
    "BASE_VECTORS",
    "CandidateSet",
    "DerivationError",
    "DimensionVector",
    "GENERATOR_LABELS",
    "ImSignFact",
    "DEFAULT_SIGN_FACTS",
    "SKYSCRAPER_VECTOR",
    "heart_ch",
    "heart_z",
    "reduce_candidates",
    "skyscraper_candidates",
    "Factor",
    "FactoredClaim",
    "Region",
    "SignCertificate",
    "certify_sign",
    "default_region",
    "Report",
    "ReportItem",
    "verify_all",
    "verify_half_plane",
    "verify_lemma_computation",
    "verify_skyscraper_condition",
    "emit_wall_svg",
    "emit_zvectors_svg",
    "wall_contour_segments",
    "__version__",
]

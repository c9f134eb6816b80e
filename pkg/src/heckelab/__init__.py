"""Exact Hecke transforms and optimal extensions across the exceptional divisor
of the blow-up of C^n at the origin."""

from .blowup_bundle import (
    BlowupBundle,
    HeckeTrace,
    adapt_frame,
    hecke_transform,
    involution_check,
    optimize,
    restrict_to_D,
    twist_by_divisor,
)
from .errors import (
    FrameNotAdaptedError,
    HeckeLabError,
    NotDivisibleError,
    NotInvertibleError,
    PrecisionError,
    ProfileError,
)
from .exact_algebra import JetLaurentMatrix, JetLaurentPoly, Scalar, mat_det, mat_invert
from .hn_profile import (
    HNProfile,
    PartialHN,
    cone_equivalent,
    equivalent,
    gr_tilde,
    hecke_bound,
    hecke_profile,
    normalize_twist,
    partial_hn,
)
from .p1_bundle import (
    BirkhoffFactorization,
    P1Transition,
    SplittingType,
    birkhoff,
    h0_oracle,
    hn_blocks,
    splitting_from_h0,
)

__version__ = "0.1.0"

__all__ = [
    "BirkhoffFactorization",
    "BlowupBundle",
    "FrameNotAdaptedError",
    "HNProfile",
    "HeckeLabError",
    "HeckeTrace",
    "JetLaurentMatrix",
    "JetLaurentPoly",
    "NotDivisibleError",
    "NotInvertibleError",
    "P1Transition",
    "PartialHN",
    "PrecisionError",
    "ProfileError",
    "Scalar",
    "SplittingType",
    "adapt_frame",
    "birkhoff",
    "cone_equivalent",
    "equivalent",
    "gr_tilde",
    "h0_oracle",
    "hecke_bound",
    "hecke_profile",
    "hecke_transform",
    "hn_blocks",
    "involution_check",
    "mat_det",
    "mat_invert",
    "normalize_twist",
    "optimize",
    "partial_hn",
    "restrict_to_D",
    "splitting_from_h0",
    "twist_by_divisor",
]

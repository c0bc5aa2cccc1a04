"""Numerical audit of closed-form zeta/eta claims built from power sums of complex progressions."""

__version__ = "0.1.0"

from .claims import (  # noqa: E402
    ClaimId,
    ClaimSpec,
    ClaimVerdict,
    Classification,
    GammaMode,
    ZeroCandidate,
    ZeroSource,
    audit_claim,
    audit_zero_candidate,
    build_zero_candidate,
    claimed_eta,
    claimed_zeta,
    claimed_zeta_reflection,
    claimed_zeta_strip,
    nonuniqueness_probe,
    theorem14_consistency_check,
)
from .policy import DEFAULT_POLICY, PrecisionPolicy  # noqa: E402
from .power_sums import ComplexPair, ProgressionQuery, ResidualReport  # noqa: E402
from .reference import EvalResult, functional_equation_rhs, ref_eta, ref_gamma, ref_zeta  # noqa: E402

__all__ = [
    "ClaimId", "ClaimSpec", "ClaimVerdict", "Classification", "GammaMode", "ZeroCandidate", "ZeroSource",
    "audit_claim", "audit_zero_candidate", "build_zero_candidate", "claimed_eta", "claimed_zeta",
    "claimed_zeta_reflection", "claimed_zeta_strip", "nonuniqueness_probe", "theorem14_consistency_check",
    "DEFAULT_POLICY", "PrecisionPolicy", "ComplexPair", "ProgressionQuery", "ResidualReport",
    "EvalResult", "functional_equation_rhs", "ref_eta", "ref_gamma", "ref_zeta",
]

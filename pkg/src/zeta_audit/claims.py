"""Claimed closed forms, candidate zeros, and the verdicts that audit them.

Each claim is rebuilt from its printed formula, evaluated, and compared
against an independent reference (brute-force power sums, or the accelerated
zeta/eta evaluators).  Classification bands::

    CONFIRMED     abs_residual <= tol * max(1, |reference|)
    REFUTED       abs_residual >= 10 * tol * max(1, |reference|)
    INCONCLUSIVE  in between
    DEGENERATE    a precondition guard fired or the formula is undefined
"""
from __future__ import annotations

import cmath
import enum
import itertools
import math
from dataclasses import dataclass, field, replace
from math import factorial

import numpy as np

from .errors import AuditError, DegenerateError, DomainError, InvalidInput
from .parameterization import solve_parameters
from .policy import DEFAULT_POLICY, PrecisionPolicy
from .power_sums import (
    N_CAP,
    ComplexPair,
    ProgressionQuery,
    alternating_rhs,
    limit_l_term,
    limit_s_term,
    plain_rhs,
    theorem1_residual,
    theorem2_residual,
)
from .reference import (
    DEGENERATE_RADIUS,
    LN2,
    LOG_2PI,
    complex_sinpi,
    eta_factor,
    ref_eta,
    ref_gamma,
    ref_zeta,
)

NAN = complex(math.nan, math.nan)
SNAP_TOL = 1e-12
FIXED_POINT_TOL = 1e-10


class ClaimId(str, enum.Enum):
    T1_IDENTITY = "T1_IDENTITY"
    T2_IDENTITY = "T2_IDENTITY"
    T7_CLOSED_FORM = "T7_CLOSED_FORM"
    T8_CLOSED_FORM = "T8_CLOSED_FORM"
    T10_ZETA = "T10_ZETA"
    T11_ETA = "T11_ETA"
    T12_STRIP = "T12_STRIP"
    T13_REFLECTION = "T13_REFLECTION"
    T14_ZERO = "T14_ZERO"
    T15_ZERO = "T15_ZERO"
    C2_RH_ZERO = "C2_RH_ZERO"
    NONUNIQUENESS = "NONUNIQUENESS"


class GammaMode(str, enum.Enum):
    """How the target argument Z is handed to the parameter solver."""

    GAMMA_EQUALS_Z = "GAMMA_EQUALS_Z"
    GAMMA_EQUALS_Z_OVER_NM1 = "GAMMA_EQUALS_Z_OVER_NM1"

    @classmethod
    def parse(cls, text: str) -> "GammaMode":
        aliases = {"gz": cls.GAMMA_EQUALS_Z, "gzn": cls.GAMMA_EQUALS_Z_OVER_NM1}
        key = text.strip()
        if key.lower() in aliases:
            return aliases[key.lower()]
        return cls(key.upper())

    @property
    def short(self) -> str:
        return "gz" if self is GammaMode.GAMMA_EQUALS_Z else "gzn"


class Classification(str, enum.Enum):
    CONFIRMED = "CONFIRMED"
    REFUTED = "REFUTED"
    DEGENERATE = "DEGENERATE"
    INCONCLUSIVE = "INCONCLUSIVE"


class ZeroSource(str, enum.Enum):
    T14 = "T14"
    T15 = "T15"
    C2_ARCCOS = "C2_ARCCOS"
    C2_ARCSIN = "C2_ARCSIN"


ZERO_CLAIM = {
    ZeroSource.T14: ClaimId.T14_ZERO,
    ZeroSource.T15: ClaimId.T15_ZERO,
    ZeroSource.C2_ARCCOS: ClaimId.C2_RH_ZERO,
    ZeroSource.C2_ARCSIN: ClaimId.C2_RH_ZERO,
}

_IDENTITY = {ClaimId.T1_IDENTITY, ClaimId.T2_IDENTITY}
_ZERO = {ClaimId.T14_ZERO, ClaimId.T15_ZERO, ClaimId.C2_RH_ZERO}
_MODED = {ClaimId.T10_ZETA, ClaimId.T11_ETA, ClaimId.T12_STRIP, ClaimId.T13_REFLECTION}


def _check_pair(k: int, m: int) -> None:
    if k < 2 or m < 2:
        raise InvalidInput(f"k and m must exceed 1, got ({k}, {m})")
    if k == m:
        raise InvalidInput(f"k and m must differ, got k = m = {k}")


@dataclass(frozen=True)
class ClaimSpec:
    """One auditable claim instance.

    ``Z`` is the target argument (the exponent s for the two infinite-sum
    claims and the candidate s for zero claims).  ``params`` is used only by
    the finite identities, where ``k`` is the term count.
    """

    claim_id: ClaimId
    Z: complex = 0j
    n: int = 3
    k: int = 2
    m: int = 3
    t: int = 0
    gamma_mode: GammaMode = GammaMode.GAMMA_EQUALS_Z
    source: ZeroSource | None = None
    params: ComplexPair | None = None
    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "claim_id", ClaimId(self.claim_id))
        object.__setattr__(self, "gamma_mode", GammaMode(self.gamma_mode))
        object.__setattr__(self, "Z", complex(self.Z))
        cid = self.claim_id
        if cid in _IDENTITY:
            if self.params is None:
                raise InvalidInput(f"{cid.value} needs progression parameters")
            if self.k < 1:
                raise InvalidInput("term count k must be >= 1")
            if not 3 <= self.n <= N_CAP:
                raise InvalidInput(f"n must be in [3, {N_CAP}], got {self.n}")
            return
        if cid in _ZERO:
            if self.source is None:
                raise InvalidInput(f"{cid.value} needs a candidate source")
            object.__setattr__(self, "source", ZeroSource(self.source))
            if ZERO_CLAIM[self.source] is not cid:
                raise InvalidInput(f"source {self.source.value} does not belong to {cid.value}")
            if self.n < 2:
                raise InvalidInput(f"n must be >= 2, got {self.n}")
            _check_pair(self.k, self.m)
            return
        if not 3 <= self.n <= N_CAP:
            raise InvalidInput(f"n must be in [3, {N_CAP}], got {self.n}")
        if cid is ClaimId.NONUNIQUENESS:
            pairs = tuple((int(k), int(m)) for k, m in self.pairs)
            if len(pairs) < 2:
                raise InvalidInput("non-uniqueness probe needs at least two (k, m) pairs")
            for k, m in pairs:
                _check_pair(k, m)
            object.__setattr__(self, "pairs", pairs)
            return
        _check_pair(self.k, self.m)

    def inputs(self) -> dict:
        """The inputs that matter for this claim, in a fixed order."""
        cid = self.claim_id
        out: dict = {}
        if cid in _IDENTITY:
            out.update(a=self.params.a, d=self.params.d, k=self.k, n=self.n)
            return out
        out["Z"] = self.Z
        out["n"] = self.n
        if cid is ClaimId.NONUNIQUENESS:
            out["pairs"] = ";".join(f"{k}:{m}" for k, m in self.pairs)
            return out
        out.update(k=self.k, m=self.m)
        if cid in _MODED:
            out["gamma_mode"] = self.gamma_mode.value
        if cid in _ZERO:
            out["t"] = self.t
            out["source"] = self.source.value
        return out


@dataclass(frozen=True)
class ClaimVerdict:
    spec: ClaimSpec
    claimed: complex
    reference: complex
    abs_residual: float
    classification: Classification
    notes: str = ""


def classify(abs_residual: float, reference: complex, tol: float) -> Classification:
    if not math.isfinite(abs_residual):
        return Classification.DEGENERATE
    scale = max(1.0, abs(reference))
    if abs_residual <= tol * scale:
        return Classification.CONFIRMED
    if abs_residual >= 10 * tol * scale:
        return Classification.REFUTED
    return Classification.INCONCLUSIVE


@dataclass
class _Trace:
    """Collects guard notes while a claim is evaluated."""

    enforce: bool = True
    notes: list[str] = field(default_factory=list)
    guarded: bool = False

    def guard(self, ok: bool, message: str) -> None:
        if ok:
            return
        if self.enforce:
            raise DomainError(message)
        self.guarded = True
        self.notes.append(f"guard: {message}")

    def note(self, message: str) -> None:
        self.notes.append(message)


# --------------------------------------------------------- closed forms


def resolve_gamma(spec: ClaimSpec) -> complex:
    if spec.gamma_mode is GammaMode.GAMMA_EQUALS_Z:
        return spec.Z
    return spec.Z / (spec.n - 1)


def _progression(gamma: complex, k: int, m: int, trace: _Trace) -> ComplexPair:
    sol = solve_parameters(gamma.real, gamma.imag, k, m)
    a, d = sol.params.a, sol.params.d
    if d == 0:
        raise DegenerateError(f"solved step d is exactly zero for gamma={gamma}")
    if sol.degenerate:
        trace.note("degenerate step: " + ",".join(sorted(sol.degenerate)))
    if a != d and abs(a - d) <= SNAP_TOL * max(abs(a), abs(d)):
        trace.note(f"a = d within {SNAP_TOL:g}; snapped")
        a = d
    elif a == d:
        trace.note("a = d exactly")
    return ComplexPair.from_complex(a, d, allow_zero_d=True)


def _zeta_form(spec: ClaimSpec, trace: _Trace) -> complex:
    trace.guard(spec.Z.real > 1, f"Re(Z) = {spec.Z.real:g} is not > 1")
    n = spec.n
    p = _progression(resolve_gamma(spec), spec.k, spec.m, trace)
    rhs = plain_rhs(p.d, n, [limit_s_term(p, n, i) for i in range(n - 2)])
    return factorial(n - 1) * factorial(n - 3) / p.d * rhs


def _eta_form(spec: ClaimSpec, trace: _Trace) -> complex:
    trace.guard(spec.Z.real > 0, f"Re(Z) = {spec.Z.real:g} is not > 0")
    n = spec.n
    p = _progression(resolve_gamma(spec), spec.k, spec.m, trace)
    rhs = plain_rhs(p.d, n, [limit_l_term(p, n, i) for i in range(n - 2)])
    return factorial(n - 1) * factorial(n - 3) / p.d * rhs


def _near_factor_zero(z: complex, radius: float = DEGENERATE_RADIUS) -> bool:
    j = round(z.imag * LN2 / (2 * math.pi))
    return abs(z - complex(1.0, 2 * math.pi * j / LN2)) < radius


def _strip_form(spec: ClaimSpec, trace: _Trace) -> complex:
    if _near_factor_zero(spec.Z):
        raise DegenerateError(f"Z={spec.Z} is within {DEGENERATE_RADIUS:g} of a zero of 1 - 2^(1-Z)")
    return _eta_form(spec, trace) / eta_factor(spec.Z)


def _reflection_form(spec: ClaimSpec, trace: _Trace) -> complex:
    Z = spec.Z
    trace.guard(Z.real < 0, f"Re(Z) = {Z.real:g} is not < 0")
    sine = 2 * complex_sinpi(Z / 2)
    if sine == 0:
        trace.note("sin(pi Z / 2) = 0 exactly")
        return 0j
    inner = replace(spec, claim_id=ClaimId.T10_ZETA, Z=1 - Z)
    gamma = ref_gamma(1 - Z).value
    return gamma * cmath.exp((Z - 1) * LOG_2PI) * sine * _zeta_form(inner, trace)


def claimed_zeta(spec: ClaimSpec, enforce_domain: bool = True) -> complex:
    """Closed-form value offered for zeta(Z), after solving for (a, d) per ``gamma_mode``."""
    return _zeta_form(spec, _Trace(enforce_domain))


def claimed_eta(spec: ClaimSpec, enforce_domain: bool = True) -> complex:
    return _eta_form(spec, _Trace(enforce_domain))


def claimed_zeta_strip(spec: ClaimSpec, enforce_domain: bool = True) -> complex:
    """``claimed_eta / (1 - 2^(1-Z))``."""
    return _strip_form(spec, _Trace(enforce_domain))


def claimed_zeta_reflection(spec: ClaimSpec, enforce_domain: bool = True) -> complex:
    """Functional-equation transport of the closed form from 1 - Z to Z (Re Z < 0)."""
    return _reflection_form(spec, _Trace(enforce_domain))


def infinite_sum_forms(spec: ClaimSpec, trace: _Trace | None = None) -> tuple[complex, ComplexPair]:
    """Right-hand side of the plain or alternating infinite-sum claim at exponent s = Z."""
    trace = trace or _Trace()
    n, s = spec.n, spec.Z
    if spec.claim_id is ClaimId.T7_CLOSED_FORM:
        trace.guard(s.real > 1, f"Re(s) = {s.real:g} is not > 1")
        p = _progression(s, spec.k, spec.m, trace)
        return plain_rhs(p.d, n, [limit_s_term(p, n, i) for i in range(n - 2)]), p
    if spec.claim_id is ClaimId.T8_CLOSED_FORM:
        trace.guard(s.real > 0, f"Re(s) = {s.real:g} is not > 0")
        p = _progression(s, spec.k, spec.m, trace)
        return alternating_rhs(p.d, n, [limit_l_term(p, n, i) for i in range(n - 2)]), p
    raise InvalidInput(f"{spec.claim_id.value} is not an infinite-sum claim")


def partial_sum(w: complex, alternating: bool = False, terms: int = 10**6) -> tuple[complex, float]:
    """Direct partial sum of ``sum r^-w`` (optionally alternating) with a tail estimate.

    The plain series gets an Euler-Maclaurin tail correction; the returned
    error estimate is the size of the first omitted correction term.
    """
    w = complex(w)
    r = np.arange(1, terms + 1, dtype=np.float64)
    vals = np.exp(-w * np.log(r))
    if alternating:
        vals[1::2] *= -1
        total = complex(vals.sum())
        nxt = cmath.exp(-w * math.log(terms + 1))
        sign = 1 if terms % 2 == 0 else -1
        # averaging the last two partial sums halves the alternating tail
        return total + sign * nxt / 2, abs(w) * abs(nxt) / (terms + 1)
    if not w.real > 1:
        raise DomainError(f"plain Dirichlet series diverges for Re(w) = {w.real:g}")
    N = float(terms)
    tail = cmath.exp((1 - w) * math.log(N)) / (w - 1) - cmath.exp(-w * math.log(N)) / 2
    tail += w * cmath.exp((-w - 1) * math.log(N)) / 12
    err = abs(w * (w + 1) * (w + 2)) * math.exp((-w.real - 3) * math.log(N)) / 720
    return complex(vals.sum()) + tail, err


# ------------------------------------------------------- zero candidates


@dataclass(frozen=True)
class ZeroCandidate:
    gamma1: float
    gamma2: float
    t: int
    k: int
    m: int
    source: ZeroSource
    feasible: bool
    note: str = ""

    @property
    def s(self) -> complex:
        return complex(self.gamma1, self.gamma2)


def build_zero_candidate(t: int, k: int, m: int, source: ZeroSource | str) -> ZeroCandidate:
    """Candidate zero s = gamma1 + i gamma2 from the integer index t and the pair (k, m).

    For the T14/T15 construction the log argument ``cos(g2 ln m)/cos(g2 ln k)``
    equals ``(-1)^t``, so odd t yields an infeasible candidate.  The
    critical-line constructions check their cosine/sine bounds before any
    inverse trig function is taken.
    """
    source = ZeroSource(source)
    _check_pair(k, m)
    t = int(t)
    lk, lm = math.log(k), math.log(m)
    span = lk - lm
    if source in (ZeroSource.T14, ZeroSource.T15):
        g2 = t * math.pi / span
        ck = math.cos(g2 * lk)
        if abs(ck) < 1e-12:
            raise DomainError(f"cos(gamma2 ln k) = {ck:.3e} vanishes: candidate undefined")
        ratio = math.cos(g2 * lm) / ck
        if ratio <= 0:
            return ZeroCandidate(math.nan, g2, t, k, m, source, False,
                                 f"log argument cos(g2 ln m)/cos(g2 ln k) = {ratio:.17g} is not positive")
        g1 = 1 + math.log(ratio) / span
        return ZeroCandidate(g1, g2, t, k, m, source, True)

    theta = t * math.pi * lk / span
    c, s = math.cos(theta), math.sin(theta)
    bound = math.sqrt(k / m)
    if not (-bound <= c <= bound and -bound <= s <= bound):
        return ZeroCandidate(0.5, math.nan, t, k, m, source, False,
                             f"bounds fail: cos={c:.6f}, sin={s:.6f}, sqrt(k/m)={bound:.6f}")
    scale = math.sqrt(m / k)
    if source is ZeroSource.C2_ARCCOS:
        g2 = math.acos(max(-1.0, min(1.0, scale * c))) / lm
    else:
        g2 = math.asin(max(-1.0, min(1.0, scale * s))) / lm
    return ZeroCandidate(0.5, g2, t, k, m, source, True)


def _zero_spec(c: ZeroCandidate, n: int) -> ClaimSpec:
    Z = complex(c.gamma1, c.gamma2)
    return ClaimSpec(ZERO_CLAIM[c.source], Z=Z, n=n, k=c.k, m=c.m, t=c.t, source=c.source)


def audit_zero_candidate(c: ZeroCandidate, n: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> ClaimVerdict:
    """Compare the claimed value 0 with zeta((n-1)s), or eta((n-1)s) for T15."""
    spec = _zero_spec(c, n)
    notes = []
    if c.source in (ZeroSource.C2_ARCCOS, ZeroSource.C2_ARCSIN):
        if n != 2:
            notes.append(f"critical-line construction fixes n=2; audited with n={n}")
        else:
            notes.append("n=2 is below the finite-identity range n>=3")
    if not c.feasible:
        notes.append(f"infeasible candidate: {c.note}")
        return ClaimVerdict(spec, 0j, NAN, math.nan, Classification.DEGENERATE, "; ".join(notes))
    w = (n - 1) * c.s
    alternating = c.source is ZeroSource.T15
    try:
        ref = (ref_eta(w, policy) if alternating else ref_zeta(w, policy)).value
    except AuditError as exc:
        notes.append(f"reference undefined at (n-1)s={w}: {exc}")
        return ClaimVerdict(spec, 0j, NAN, math.nan, Classification.DEGENERATE, "; ".join(notes))
    if w.real <= (0 if alternating else 1):
        notes.append(f"Dirichlet series diverges at Re((n-1)s)={w.real:.6g}; analytic continuation used")
    if c.source in (ZeroSource.T14, ZeroSource.T15) and not c.gamma1 > (0 if alternating else 1):
        notes.append(f"gamma1 = {c.gamma1:.17g} fails the stated lower bound")
    res = abs(ref)
    return ClaimVerdict(spec, 0j, ref, res, classify(res, ref, policy.tol_claim), "; ".join(notes))


def theorem14_consistency_check(t: int, k: int, m: int) -> ClaimVerdict:
    """Does the T14 candidate really solve to a progression with a = d?"""
    try:
        c = build_zero_candidate(t, k, m, ZeroSource.T14)
    except DomainError as exc:
        spec = ClaimSpec(ClaimId.T14_ZERO, Z=NAN, n=2, k=k, m=m, t=t, source=ZeroSource.T14)
        return ClaimVerdict(spec, NAN, NAN, math.nan, Classification.DEGENERATE, f"fixed-point check: {exc}")
    spec = _zero_spec(c, 2)
    if not c.feasible:
        return ClaimVerdict(spec, NAN, NAN, math.nan, Classification.DEGENERATE,
                            f"fixed-point check: infeasible candidate: {c.note}")
    sol = solve_parameters(c.gamma1, c.gamma2, k, m)
    a, d = sol.params.a, sol.params.d
    gap = max(abs(sol.params.a1 - sol.params.d1), abs(sol.params.a2 - sol.params.d2))
    scale = max(abs(a), abs(d), 1e-300)
    rel = gap / scale
    if rel <= FIXED_POINT_TOL:
        cls = Classification.CONFIRMED
    elif rel >= 10 * FIXED_POINT_TOL:
        cls = Classification.REFUTED
    else:
        cls = Classification.INCONCLUSIVE
    notes = [f"fixed-point check a=d: relative gap {rel:.3e}"]
    if sol.degenerate:
        notes.append("degenerate step: " + ",".join(sorted(sol.degenerate)))
    return ClaimVerdict(spec, a, d, abs(a - d), cls, "; ".join(notes))


def candidate_claim_spec(c: ZeroCandidate, n: int, claim_id: ClaimId = ClaimId.T10_ZETA,
                         mode: GammaMode = GammaMode.GAMMA_EQUALS_Z_OVER_NM1) -> ClaimSpec:
    """Closed-form claim whose solver input is exactly the candidate s."""
    Z = c.s if mode is GammaMode.GAMMA_EQUALS_Z else (n - 1) * c.s
    return ClaimSpec(claim_id, Z=Z, n=n, k=c.k, m=c.m, gamma_mode=mode)


# ----------------------------------------------------- non-uniqueness


@dataclass(frozen=True)
class ProbeRow:
    k: int
    m: int
    gamma_mode: GammaMode
    claimed: complex
    abs_residual: float
    note: str = ""


@dataclass(frozen=True)
class ProbeReport:
    Z: complex
    n: int
    reference: complex
    rows: tuple[ProbeRow, ...]
    spread: dict
    max_spread: float
    nonunique: bool


def _spread(values: list[complex]) -> float:
    finite = [v for v in values if cmath.isfinite(v)]
    return max((abs(x - y) for x, y in itertools.combinations(finite, 2)), default=0.0)


def nonuniqueness_probe(Z: complex, n: int, pairs, policy: PrecisionPolicy = DEFAULT_POLICY) -> ProbeReport:
    """Evaluate the zeta closed form for several (k, m) at one Z under both gamma modes."""
    Z = complex(Z)
    pairs = [tuple(p) for p in pairs]
    if len(pairs) < 2:
        raise InvalidInput("need at least two (k, m) pairs")
    if not Z.real > 1:
        raise DomainError(f"Re(Z) = {Z.real:g} is not > 1")
    reference = ref_zeta(Z, policy).value
    rows = []
    spread = {}
    for mode in GammaMode:
        values = []
        for k, m in pairs:
            try:
                v = claimed_zeta(ClaimSpec(ClaimId.T10_ZETA, Z=Z, n=n, k=k, m=m, gamma_mode=mode))
                rows.append(ProbeRow(k, m, mode, v, abs(v - reference)))
            except AuditError as exc:
                v = NAN
                rows.append(ProbeRow(k, m, mode, v, math.nan, str(exc)))
            values.append(v)
        spread[mode.value] = _spread(values)
    max_spread = max(spread.values())
    return ProbeReport(Z, n, reference, tuple(rows), spread, max_spread, max_spread > policy.tol_claim)


# ------------------------------------------------------------ dispatch


def _degenerate(spec: ClaimSpec, message: str, claimed: complex = NAN, reference: complex = NAN) -> ClaimVerdict:
    res = abs(claimed - reference)
    return ClaimVerdict(spec, claimed, reference, res if math.isfinite(res) else math.nan,
                        Classification.DEGENERATE, message)


def _finish(spec: ClaimSpec, claimed: complex, reference: complex, trace: _Trace,
            policy: PrecisionPolicy, extra: list[str] | None = None) -> ClaimVerdict:
    notes = trace.notes + (extra or [])
    res = abs(claimed - reference)
    cls = Classification.DEGENERATE if trace.guarded else classify(res, reference, policy.tol_claim)
    return ClaimVerdict(spec, claimed, reference, res, cls, "; ".join(notes))


def _audit_identity(spec: ClaimSpec, policy: PrecisionPolicy) -> ClaimVerdict:
    q = ProgressionQuery(spec.params, spec.k, spec.n)
    if spec.params.d == 0:
        return _degenerate(spec, "d = 0")
    fn = theorem1_residual if spec.claim_id is ClaimId.T1_IDENTITY else theorem2_residual
    rep = fn(q, policy.residual_floor)
    notes = [f"rel_residual={rep.rel_residual:.17g}"]
    if spec.params.degenerate:
        notes.append("degenerate step component")
    cls = classify(rep.abs_residual, rep.lhs, policy.tol_claim)
    return ClaimVerdict(spec, rep.rhs, rep.lhs, rep.abs_residual, cls, "; ".join(notes))


def _audit_moded(spec: ClaimSpec, policy: PrecisionPolicy) -> ClaimVerdict:
    trace = _Trace(enforce=False)
    cid = spec.claim_id
    form = {
        ClaimId.T10_ZETA: _zeta_form,
        ClaimId.T11_ETA: _eta_form,
        ClaimId.T12_STRIP: _strip_form,
        ClaimId.T13_REFLECTION: _reflection_form,
    }[cid]
    try:
        claimed = form(spec, trace)
    except AuditError as exc:
        return _degenerate(spec, "; ".join(trace.notes + [f"claimed value undefined: {exc}"]))
    try:
        ref = (ref_eta(spec.Z, policy) if cid is ClaimId.T11_ETA else ref_zeta(spec.Z, policy)).value
    except AuditError as exc:
        return _degenerate(spec, "; ".join(trace.notes + [f"reference undefined: {exc}"]), claimed=claimed)
    return _finish(spec, claimed, ref, trace, policy)


def _audit_infinite_sum(spec: ClaimSpec, policy: PrecisionPolicy, partial_terms: int) -> ClaimVerdict:
    trace = _Trace(enforce=False)
    try:
        claimed, p = infinite_sum_forms(spec, trace)
    except AuditError as exc:
        return _degenerate(spec, "; ".join(trace.notes + [f"claimed value undefined: {exc}"]))
    w = (spec.n - 1) * spec.Z
    alternating = spec.claim_id is ClaimId.T8_CLOSED_FORM
    try:
        series = (ref_eta(w, policy) if alternating else ref_zeta(w, policy)).value
    except AuditError as exc:
        return _degenerate(spec, "; ".join(trace.notes + [f"reference undefined: {exc}"]), claimed=claimed)
    n = spec.n
    ref = series if alternating else p.d / (factorial(n - 1) * factorial(n - 3)) * series
    extra = []
    if partial_terms and w.real > (0 if alternating else 1):
        est, err = partial_sum(w, alternating, partial_terms)
        extra.append(f"partial-sum check ({partial_terms} terms): |direct - reference| = "
                     f"{abs(est - series):.3e}, tail estimate {err:.3e}")
    return _finish(spec, claimed, ref, trace, policy, extra)


def _audit_zero(spec: ClaimSpec, policy: PrecisionPolicy) -> ClaimVerdict:
    try:
        c = build_zero_candidate(spec.t, spec.k, spec.m, spec.source)
    except DomainError as exc:
        return _degenerate(spec, f"candidate undefined: {exc}", claimed=0j)
    return audit_zero_candidate(c, spec.n, policy)


def _audit_nonuniqueness(spec: ClaimSpec, policy: PrecisionPolicy) -> ClaimVerdict:
    try:
        probe = nonuniqueness_probe(spec.Z, spec.n, spec.pairs, policy)
    except AuditError as exc:
        return _degenerate(spec, f"probe undefined: {exc}")
    spread = complex(probe.max_spread, 0.0)
    notes = [f"spread[{k}]={v:.17g}" for k, v in probe.spread.items()]
    notes.append("NONUNIQUE" if probe.nonunique else "unique within tolerance")
    return ClaimVerdict(spec, spread, 0j, probe.max_spread,
                        classify(probe.max_spread, 0j, policy.tol_claim), "; ".join(notes))


def audit_claim(spec: ClaimSpec, policy: PrecisionPolicy = DEFAULT_POLICY, partial_terms: int = 0) -> ClaimVerdict:
    """Evaluate one claim and classify it; never raises for domain problems."""
    cid = spec.claim_id
    try:
        if cid in _IDENTITY:
            return _audit_identity(spec, policy)
        if cid in _MODED:
            return _audit_moded(spec, policy)
        if cid in (ClaimId.T7_CLOSED_FORM, ClaimId.T8_CLOSED_FORM):
            return _audit_infinite_sum(spec, policy, partial_terms)
        if cid in _ZERO:
            return _audit_zero(spec, policy)
        return _audit_nonuniqueness(spec, policy)
    except AuditError as exc:
        return _degenerate(spec, f"evaluation failed: {exc}")


# ------------------------------------------------------------- anchors


@dataclass(frozen=True)
class AnchorCheck:
    name: str
    value: complex
    expected: complex
    error: float
    tolerance: float
    passed: bool


APERY = 1.2020569031595942853997381615114
FIRST_ZERO_PROBE = complex(0.5, 14.134725)
ANCHOR_TOL = 1e-9
ZERO_PROBE_TOL = 1e-5


def check_reference_anchors(policy: PrecisionPolicy = DEFAULT_POLICY) -> list[AnchorCheck]:
    """Known values every audit batch re-validates before it runs."""
    tol = min(ANCHOR_TOL, max(policy.tol_ref, 1e-15))
    rows = []
    for name, fn, arg, expected in (
        ("zeta(2)", ref_zeta, 2, math.pi**2 / 6),
        ("zeta(3)", ref_zeta, 3, APERY),
        ("eta(1)", ref_eta, 1, math.log(2)),
        ("zeta(-1)", ref_zeta, -1, -1 / 12),
    ):
        value = fn(arg, policy).value
        err = abs(value - expected)
        rows.append(AnchorCheck(name, value, complex(expected), err, tol, err <= tol))
    value = ref_zeta(FIRST_ZERO_PROBE, policy).value
    rows.append(AnchorCheck("|zeta(1/2+14.134725i)|", value, 0j, abs(value), ZERO_PROBE_TOL,
                            abs(value) < ZERO_PROBE_TOL))
    return rows

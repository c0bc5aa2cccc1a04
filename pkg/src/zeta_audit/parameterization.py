"""Complex-exponent parameterization ``x^s = a + (x - 1) d``.

The exponent is recovered through a principal-branch arctangent (B1) and
one of two log quotients (A1 from the real part with a cosine, A2 from the
imaginary part with a sine).  Every formula is evaluated as printed; no
quadrant correction is applied.  Where the printed form and the algebra
disagree, the mismatch is flagged, not repaired.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

from .errors import ConsistencyError, DomainError, InvalidInput
from .power_sums import ComplexPair

Branch = Literal["cos", "sin"]

SOLVER_TOL = 1e-12


def _check_x(x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0 or x == 1:
        raise InvalidInput(f"x must be a positive real number other than 1, got {x!r}")
    return x


def _real_part(x: float, p: ComplexPair) -> float:
    return p.a1 + (x - 1) * p.d1


def _imag_part(x: float, p: ComplexPair) -> float:
    return p.a2 + (x - 1) * p.d2


def _angle(x: float, p: ComplexPair) -> float:
    re = _real_part(x, p)
    if re == 0:
        raise DomainError(f"a1 + (x-1) d1 = 0 at x={x}: arctangent ratio undefined")
    return math.atan(_imag_part(x, p) / re)


def compute_B1(x: float, p: ComplexPair) -> float:
    x = _check_x(x)
    return _angle(x, p) / math.log(x)


def compute_A1(x: float, p: ComplexPair, B1: float) -> float:
    x = _check_x(x)
    quotient = _real_part(x, p) / math.cos(B1 * math.log(x))
    if not quotient > 0:
        raise DomainError(f"log argument (a1 + (x-1) d1) / cos(B1 ln x) = {quotient!r} is not positive")
    return math.log(quotient) / math.log(x)


def compute_A2(x: float, p: ComplexPair, B1: float) -> float:
    x = _check_x(x)
    s = math.sin(B1 * math.log(x))
    if s == 0:
        raise DomainError("sin(B1 ln x) = 0: imaginary-part log quotient undefined")
    quotient = _imag_part(x, p) / s
    if not quotient > 0:
        raise DomainError(f"log argument (a2 + (x-1) d2) / sin(B1 ln x) = {quotient!r} is not positive")
    return math.log(quotient) / math.log(x)


@dataclass(frozen=True)
class ExponentParts:
    """Both exponent recoveries at one point, with whatever failed recorded in ``issues``."""

    x: float
    B1: float
    A1: float | None
    A2: float | None
    quadrant_mismatch: bool
    issues: tuple[str, ...] = ()

    @property
    def s1(self) -> complex | None:
        return None if self.A1 is None else complex(self.A1, self.B1)

    @property
    def s2(self) -> complex | None:
        return None if self.A2 is None else complex(self.A2, self.B1)

    @property
    def divergence(self) -> float | None:
        """``|A1 - A2|`` when both are defined."""
        if self.A1 is None or self.A2 is None:
            return None
        return abs(self.A1 - self.A2)


def exponent_parts(x: float, p: ComplexPair) -> ExponentParts:
    x = _check_x(x)
    B1 = compute_B1(x, p)
    issues = []
    A1 = A2 = None
    try:
        A1 = compute_A1(x, p, B1)
    except DomainError as exc:
        issues.append(f"A1: {exc}")
    try:
        A2 = compute_A2(x, p, B1)
    except DomainError as exc:
        issues.append(f"A2: {exc}")
    mismatch = _real_part(x, p) <= 0
    if mismatch:
        issues.append("a1 + (x-1) d1 <= 0: principal arctangent is in the wrong quadrant")
    return ExponentParts(x, B1, A1, A2, mismatch, tuple(issues))


def _prefactor(x: float, p: ComplexPair, branch: Branch) -> tuple[float, float]:
    """Return (modulus-like prefactor, angle) for the chosen branch."""
    B1 = compute_B1(x, p)
    theta = _angle(x, p)
    if branch == "cos":
        return _real_part(x, p) / math.cos(B1 * math.log(x)), theta
    if branch == "sin":
        s = math.sin(B1 * math.log(x))
        if s == 0:
            raise DomainError("sin(B1 ln x) = 0: sine branch undefined")
        return _imag_part(x, p) / s, theta
    raise InvalidInput(f"branch must be 'cos' or 'sin', got {branch!r}")


def reconstruct_xs(x: float, p: ComplexPair, branch: Branch = "cos") -> complex:
    """Printed product form of ``x^s``.

    Both branches reduce algebraically to ``a + (x-1) d`` whenever they are
    defined; the cosine branch is the default.
    """
    x = _check_x(x)
    pref, theta = _prefactor(x, p, branch)
    return pref * complex(math.cos(theta), math.sin(theta))


def reconstruct_x_negs(x: float, p: ComplexPair, branch: Branch = "cos") -> complex:
    """Printed product form of ``x^-s``.

    The sine branch carries a leading minus sign as printed, so its product
    with :func:`reconstruct_xs` is -1 rather than 1.
    """
    x = _check_x(x)
    B1 = compute_B1(x, p)
    theta = _angle(x, p)
    rotor = complex(math.cos(theta), -math.sin(theta))
    if branch == "cos":
        return math.cos(B1 * math.log(x)) / _real_part(x, p) * rotor
    if branch == "sin":
        im = _imag_part(x, p)
        if im == 0:
            raise DomainError("a2 + (x-1) d2 = 0: sine branch undefined")
        return -math.sin(B1 * math.log(x)) / im * rotor
    raise InvalidInput(f"branch must be 'cos' or 'sin', got {branch!r}")


def tail_decay_magnitude(x: float, p: ComplexPair) -> float:
    """``|cos(arctan(ratio)) / (a1 + (x-1) d1)|``, i.e. ``|x^-s|``."""
    x = _check_x(x)
    theta = _angle(x, p)
    return abs(math.cos(theta) / _real_part(x, p))


def tail_decay_bound(p: ComplexPair) -> tuple[float, float]:
    """Constants (C, x0) with ``tail_decay_magnitude(x) <= C / x`` for every x >= x0.

    From ``|a + (x-1) d| = |(a - d) + x d| >= x |d| - |a - d| >= x |d| / 2``
    once ``x >= 2 |a - d| / |d|``.
    """
    d = abs(p.d)
    if d == 0:
        raise DomainError("d = 0: no decay")
    if p.d1 == 0 and p.a1 == 0:
        raise DomainError("a1 = d1 = 0: real part vanishes for every x")
    x0 = max(2 * abs(p.a - p.d) / d, 1.0 + 1e-9)
    if p.d1 != 0:
        # stay clear of the single x where the real part vanishes
        x_zero = 1 - p.a1 / p.d1
        x0 = max(x0, x_zero + 1.0)
    return 2 / d, x0


@dataclass(frozen=True)
class ParamSolution:
    params: ComplexPair
    gamma1: float
    gamma2: float
    k: int
    m: int
    degenerate: frozenset[str] = field(default_factory=frozenset)
    consistency: float = 0.0

    @property
    def is_degenerate(self) -> bool:
        return bool(self.degenerate)


def _anchor_targets(gamma1: float, gamma2: float, x: int) -> tuple[float, float]:
    lx = math.log(x)
    mag = math.exp(gamma1 * lx)
    return math.cos(gamma2 * lx) * mag, math.sin(gamma2 * lx) * mag


def _rel_gap(lhs: float, rhs: float, *parts: float) -> float:
    scale = max(abs(rhs), *(abs(v) for v in parts), 1e-300)
    return abs(lhs - rhs) / scale


def _check_pair(k: int, m: int) -> None:
    for name, v in (("k", k), ("m", m)):
        if isinstance(v, bool) or int(v) != v or v < 2:
            raise InvalidInput(f"{name} must be an integer > 1, got {v!r}")
    if k == m:
        raise InvalidInput(f"k and m must differ, got k = m = {k}")


def solve_parameters(gamma1: float, gamma2: float, k: int, m: int) -> ParamSolution:
    """Progression (a, d) whose values at x = k and x = m equal ``x^gamma``.

    The consistency of both anchors is checked on every call; a relative gap
    above 1e-12 raises :class:`ConsistencyError`.
    """
    _check_pair(k, m)
    gamma1, gamma2 = float(gamma1), float(gamma2)
    if not (math.isfinite(gamma1) and math.isfinite(gamma2)):
        raise InvalidInput("gamma must be finite")
    ck, sk = _anchor_targets(gamma1, gamma2, k)
    cm, sm = _anchor_targets(gamma1, gamma2, m)
    d1 = (ck - cm) / (k - m)
    a1 = ck - (k - 1) * d1
    d2 = (sk - sm) / (k - m)
    a2 = sk - (k - 1) * d2
    flags = set()
    if d1 == 0:
        flags.add("d1_zero")
    if d2 == 0:
        flags.add("d2_zero")
    params = ComplexPair(a1, a2, d1, d2, allow_zero_d=True)

    gap = 0.0
    for x, (c, s) in ((k, (ck, sk)), (m, (cm, sm))):
        gap = max(
            gap,
            _rel_gap(a1 + (x - 1) * d1, c, a1, (x - 1) * d1),
            _rel_gap(a2 + (x - 1) * d2, s, a2, (x - 1) * d2),
        )
    if gap > SOLVER_TOL:
        raise ConsistencyError(f"anchor consistency gap {gap:.3e} exceeds {SOLVER_TOL:g}")
    return ParamSolution(params, gamma1, gamma2, int(k), int(m), frozenset(flags), gap)

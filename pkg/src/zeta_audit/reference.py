"""Trusted double-precision evaluators for Gamma, eta and zeta.

* Gamma: Lanczos approximation (g = 7, nine coefficients) for Re(s) >= 1/2,
  reflection below.
* eta: Borwein's Chebyshev-weighted acceleration of the alternating series.
  The weights ``(d_n - d_k) / d_n`` are built from exact rationals once per
  depth and cached.
* zeta: ``eta(s) / (1 - 2^(1-s))`` for Re(s) > -2, the functional equation
  below that.

``est_error`` is an error *model* (truncation bound plus a rounding term),
not a guarantee.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import DegenerateError, DomainError, PoleError
from .policy import DEFAULT_POLICY, PrecisionPolicy

EPS = 2.0**-52
ETA_MIN_RE = -2.0
ETA_MAX_IM = 50.0
DEGENERATE_RADIUS = 1e-6
LN2 = math.log(2.0)
LOG_2PI = math.log(2 * math.pi)
_BORWEIN_RATE = math.log(3 + math.sqrt(8))
_MAX_TERMS = 400


class Method(str, enum.Enum):
    ETA_ACCEL = "ETA_ACCEL"
    FUNCTIONAL_EQ = "FUNCTIONAL_EQ"
    REFLECTION = "REFLECTION"
    DIRECT = "DIRECT"


@dataclass(frozen=True)
class EvalResult:
    value: complex
    est_error: float
    method: Method


# ---------------------------------------------------------------- helpers


def sinpi(x: float) -> float:
    """``sin(pi x)`` with exact zeros at the integers."""
    if not math.isfinite(x):
        return math.nan
    if x == math.floor(x):
        return 0.0
    r = math.fmod(x, 2.0)
    if r < 0:
        r += 2.0
    if r < 0.5:
        return math.sin(math.pi * r)
    if r < 1.5:
        return math.cos(math.pi * (r - 0.5))
    return -math.sin(math.pi * (2.0 - r))


def cospi(x: float) -> float:
    """``cos(pi x)`` with exact zeros at the half-integers."""
    return sinpi(x + 0.5)


def complex_sinpi(z: complex) -> complex:
    """``sin(pi z)`` for complex z, exact zero on the real integers."""
    z = complex(z)
    y = math.pi * z.imag
    return complex(sinpi(z.real) * math.cosh(y), cospi(z.real) * math.sinh(y))


def _is_nonpositive_integer(s: complex) -> bool:
    return s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real)


# ------------------------------------------------------------------ Gamma

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2 * math.pi)


def _lanczos(s: complex) -> complex:
    z = s - 1
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * acc


def _gamma_rel_error(s: complex) -> float:
    mag = abs(s) + 1.0
    return EPS * (16.0 + 4.0 * mag * max(1.0, math.log(mag)))


def ref_gamma(s: complex) -> EvalResult:
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise PoleError(f"Gamma has a pole at s={s.real:g}")
    if s.real >= 0.5:
        value = _lanczos(s)
        return EvalResult(value, abs(value) * _gamma_rel_error(s), Method.DIRECT)
    denom = complex_sinpi(s) * _lanczos(1 - s)
    value = math.pi / denom
    rel = _gamma_rel_error(1 - s) + EPS * (4.0 + math.pi * abs(s))
    return EvalResult(value, abs(value) * rel, Method.REFLECTION)


# -------------------------------------------------------------------- eta


@lru_cache(maxsize=None)
def borwein_weights(n: int) -> tuple[float, ...]:
    """Weights ``(d_n - d_k) / d_n`` for k = 0..n-1, from exact rationals."""
    partial = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += Fraction(factorial(n + i - 1) * 4**i, factorial(n - i) * factorial(2 * i))
        partial.append(n * acc)
    d_n = partial[n]
    return tuple(float((d_n - partial[k]) / d_n) for k in range(n))


def _eta_truncation(s: complex, n: int) -> float:
    t = abs(s.imag)
    # proven for Re(s) >= 1/2; widened polynomially for smaller real parts
    widen = (n + 1.0) ** max(0.0, 0.5 - s.real)
    return 3.0 * (1 + 2 * t) * math.exp(math.pi * t / 2 - n * _BORWEIN_RATE) * widen


def _eta_depth(s: complex, policy: PrecisionPolicy) -> int:
    t = abs(s.imag)
    need = math.log(3.0 * (1 + 2 * t)) + math.pi * t / 2 + 40.0
    need += max(0.0, 0.5 - s.real) * math.log(200.0)
    return min(_MAX_TERMS, max(policy.series_terms, math.ceil(need / _BORWEIN_RATE)))


def ref_eta(s: complex, policy: PrecisionPolicy = DEFAULT_POLICY) -> EvalResult:
    """Alternating zeta function, accelerated; audit window Re(s) > -2, |Im(s)| <= 50."""
    s = complex(s)
    if not (s.real > ETA_MIN_RE and abs(s.imag) <= ETA_MAX_IM):
        raise DomainError(f"s={s} is outside the eta window Re(s) > {ETA_MIN_RE}, |Im(s)| <= {ETA_MAX_IM}")
    n = _eta_depth(s, policy)
    weights = borwein_weights(n)
    total = 0j
    magnitude = 0.0
    for k in range(n):
        term = weights[k] * cmath.exp(-s * math.log(k + 1))
        magnitude += abs(term)
        total += term if k % 2 == 0 else -term
    rounding = EPS * magnitude * (4.0 + abs(s) * math.log(n + 1))
    return EvalResult(total, _eta_truncation(s, n) + rounding, Method.ETA_ACCEL)


# ------------------------------------------------------------------- zeta


def eta_factor(s: complex) -> complex:
    """``1 - 2^(1-s)``, the eta-to-zeta relation denominator."""
    return 1 - cmath.exp((1 - s) * LN2)


def near_relation_degenerate(s: complex, radius: float = DEGENERATE_RADIUS) -> bool:
    """True when s lies within ``radius`` of a zero ``1 + 2 pi i j / ln 2`` of the relation factor (j != 0)."""
    j = round(s.imag * LN2 / (2 * math.pi))
    if j == 0:
        return False
    return abs(s - complex(1.0, 2 * math.pi * j / LN2)) < radius


def ref_zeta(s: complex, policy: PrecisionPolicy = DEFAULT_POLICY, fallback: bool = False) -> EvalResult:
    """Riemann zeta.

    Uses the eta relation for Re(s) > -2 and the functional equation for
    Re(s) <= -2.  Points within 1e-6 of a non-trivial zero of
    ``1 - 2^(1-s)`` raise unless ``fallback`` routes them through the
    functional equation.
    """
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s=1")
    if s.real <= ETA_MIN_RE:
        return functional_equation_rhs(s, policy)
    if near_relation_degenerate(s):
        if not fallback:
            raise DegenerateError(f"s={s} is within {DEGENERATE_RADIUS:g} of a zero of 1 - 2^(1-s)")
        return functional_equation_rhs(s, policy)
    eta = ref_eta(s, policy)
    factor = eta_factor(s)
    value = eta.value / factor
    est = eta.est_error / abs(factor) + abs(value) * EPS * (4.0 + abs(s))
    return EvalResult(value, est, Method.ETA_ACCEL)


def functional_equation_rhs(s: complex, policy: PrecisionPolicy = DEFAULT_POLICY) -> EvalResult:
    """``Gamma(1-s) (2 pi)^(s-1) 2 sin(pi s / 2) zeta(1-s)``."""
    s = complex(s)
    w = 1 - s
    if _is_nonpositive_integer(w):
        raise PoleError(f"Gamma(1-s) has a pole at s={s.real:g}")
    if w == 1:
        raise PoleError("zeta(1-s) has a pole at s=0")
    if not w.real > ETA_MIN_RE:
        raise DomainError(f"1-s={w} is outside the primary zeta window Re > {ETA_MIN_RE}")
    sine = 2 * complex_sinpi(s / 2)
    if sine == 0:
        return EvalResult(0j, 0.0, Method.FUNCTIONAL_EQ)
    gamma = ref_gamma(w)
    zeta = ref_zeta(w, policy)
    power = cmath.exp((s - 1) * LOG_2PI)
    front = gamma.value * power * sine
    value = front * zeta.value
    est = (
        abs(front) * zeta.est_error
        + abs(value) * (gamma.est_error / abs(gamma.value) + EPS * (8.0 + abs(s) * LOG_2PI + math.pi * abs(s)))
    )
    return EvalResult(value, est, Method.FUNCTIONAL_EQ)

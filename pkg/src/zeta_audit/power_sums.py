"""Power sums over complex arithmetic progressions.

Brute-force oracles for ``sum_{r=1}^k (a + (r-1) d)^(n-1)`` and its
alternating twin, the closed-form terms S and L exactly as printed, their
``k -> infinity`` limit forms, and residual reports comparing the two sides
of each identity.  Nothing here assumes an identity holds; the residual
functions only measure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb, factorial

from .errors import FactorialCapError, InvalidInput

#: largest n for which the closed-form sides are evaluated (20! < 2**63)
N_CAP = 20
RESIDUAL_FLOOR = 1e-300


@dataclass(frozen=True)
class ComplexPair:
    """Progression start ``a = a1 + i a2`` and step ``d = d1 + i d2``."""

    a1: float
    a2: float
    d1: float
    d2: float
    allow_zero_d: bool = False

    def __post_init__(self) -> None:
        for name in ("a1", "a2", "d1", "d2"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidInput(f"{name} must be finite, got {value!r}")
        if self.d1 == 0 and self.d2 == 0 and not self.allow_zero_d:
            raise InvalidInput("step d must be non-zero")

    @classmethod
    def from_complex(cls, a: complex, d: complex, allow_zero_d: bool = False) -> "ComplexPair":
        a, d = complex(a), complex(d)
        return cls(a.real, a.imag, d.real, d.imag, allow_zero_d=allow_zero_d)

    @property
    def a(self) -> complex:
        return complex(self.a1, self.a2)

    @property
    def d(self) -> complex:
        return complex(self.d1, self.d2)

    @property
    def degenerate(self) -> bool:
        """True when a component of d is zero (outside the nominal domain d1, d2 != 0)."""
        return self.d1 == 0 or self.d2 == 0

    def scaled(self, lam: float) -> "ComplexPair":
        return ComplexPair(lam * self.a1, lam * self.a2, lam * self.d1, lam * self.d2, self.allow_zero_d)


@dataclass(frozen=True)
class ProgressionQuery:
    params: ComplexPair
    k: int
    n: int

    def __post_init__(self) -> None:
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 1:
            raise InvalidInput(f"k must be a positive integer, got {self.k!r}")
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 2:
            raise InvalidInput(f"n must be an integer >= 2, got {self.n!r}")


@dataclass(frozen=True)
class ResidualReport:
    lhs: complex
    rhs: complex
    abs_residual: float
    rel_residual: float
    scale: float

    @classmethod
    def compare(cls, lhs: complex, rhs: complex, floor: float = RESIDUAL_FLOOR) -> "ResidualReport":
        abs_res = abs(lhs - rhs)
        scale = max(abs(lhs), abs(rhs))
        return cls(lhs, rhs, abs_res, abs_res / max(scale, floor), scale)


def _fsum_complex(terms) -> complex:
    terms = list(terms)
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def brute_force_sum(q: ProgressionQuery, compensated: bool = False) -> complex:
    """Term-by-term ``sum_{r=1}^k (a + (r-1) d)^(n-1)``, accumulated left to right."""
    a, d, e = q.params.a, q.params.d, q.n - 1
    if compensated:
        return _fsum_complex((a + (r - 1) * d) ** e for r in range(1, q.k + 1))
    total = 0j
    for r in range(1, q.k + 1):
        total += (a + (r - 1) * d) ** e
    return total


def brute_force_alternating_sum(q: ProgressionQuery, compensated: bool = False) -> complex:
    a, d, e = q.params.a, q.params.d, q.n - 1
    terms = ((-1) ** (r - 1) * (a + (r - 1) * d) ** e for r in range(1, q.k + 1))
    if compensated:
        return _fsum_complex(terms)
    total = 0j
    for t in terms:
        total += t
    return total


def _check_index(n: int, i: int) -> None:
    if n < 3:
        raise InvalidInput(f"closed-form terms need n >= 3, got n={n}")
    if not 0 <= i <= n - 3:
        raise InvalidInput(f"index i must satisfy 0 <= i <= n-3 = {n - 3}, got {i}")


def _check_cap(n: int) -> None:
    if n > N_CAP:
        raise FactorialCapError(f"n={n} exceeds the exact-factorial cap {N_CAP}")


def s_term(params: ComplexPair, k: int, n: int, i: int) -> complex:
    """Finite-k closing term S_{n-i} of the plain power-sum identity."""
    _check_index(n, i)
    a, d = params.a, params.d
    p = n - i
    top = a + k * d
    return (p / 2 - 1) * k * d**p - (p / 2) * d ** (p - 2) * (top**2 - a**2) + top**p - a**p


def l_term(params: ComplexPair, k: int, n: int, i: int) -> complex:
    """Finite-k closing term L_{n-i} of the alternating identity."""
    _check_index(n, i)
    a, d = params.a, params.d
    p = n - i
    top = a + k * d - d
    low = a - d
    sign = -1 if (p - 1) % 2 else 1
    return (p / 2 - 1) * k * d**p + (p / 2) * d ** (p - 2) * (top**2 - low**2) + sign * (top**p - low**p)


def limit_s_term(params: ComplexPair, n: int, i: int) -> complex:
    """``k -> infinity`` form of S_{n-i}; vanishes term by term when a == d."""
    _check_index(n, i)
    a, d = params.a, params.d
    p = n - i
    return (p / 2 - 1) * (d - a) * d ** (p - 1) - (p / 2) * d ** (p - 2) * (d**2 - a**2) + d**p - a**p


def limit_l_term(params: ComplexPair, n: int, i: int) -> complex:
    _check_index(n, i)
    a, d = params.a, params.d
    p = n - i
    diff = d - a
    return (p / 2 - 1) * diff * d ** (p - 1) - (p / 2) * d ** (p - 2) * diff**2 + diff**p


def plain_coefficient(n: int, i: int) -> float:
    """``1 / (i! (n-i)! (n-3-i)!)``, from exact integers."""
    return 1 / (factorial(i) * factorial(n - i) * factorial(n - 3 - i))


def alternating_coefficient(n: int, i: int) -> int:
    """``C(n-3, i) * n! / (n-i)!`` as an exact integer."""
    return comb(n - 3, i) * (factorial(n) // factorial(n - i))


def plain_rhs(d: complex, n: int, terms) -> complex:
    """``sum_i coef_i (d/2)^i (-1)^i T_i`` for a sequence of closing terms T_0..T_{n-3}."""
    total = 0j
    for i, t in enumerate(terms):
        total += plain_coefficient(n, i) * (d / 2) ** i * (-1) ** i * t
    return total


def alternating_rhs(d: complex, n: int, terms) -> complex:
    """``(1/(n d)) sum_i C(n-3,i) (d/2)^i n!/(n-i)! (-1)^(i+1) T_i``."""
    total = 0j
    for i, t in enumerate(terms):
        total += alternating_coefficient(n, i) * (d / 2) ** i * (-1) ** (i + 1) * t
    return total / (n * d)


def _require_closed_form(q: ProgressionQuery) -> None:
    if q.n < 3:
        raise InvalidInput(f"closed-form identities need n >= 3, got n={q.n}")
    _check_cap(q.n)
    if q.params.d == 0:
        raise InvalidInput("closed-form identities need d != 0")


def theorem1_residual(q: ProgressionQuery, floor: float = RESIDUAL_FLOOR) -> ResidualReport:
    """Compare ``d/((n-1)!(n-3)!) * brute sum`` with the S-term expansion."""
    _require_closed_form(q)
    n, d = q.n, q.params.d
    lhs = d / (factorial(n - 1) * factorial(n - 3)) * brute_force_sum(q)
    rhs = plain_rhs(d, n, (s_term(q.params, q.k, n, i) for i in range(n - 2)))
    return ResidualReport.compare(lhs, rhs, floor)


def theorem2_residual(q: ProgressionQuery, floor: float = RESIDUAL_FLOOR) -> ResidualReport:
    """Compare the brute alternating sum with the L-term expansion."""
    _require_closed_form(q)
    n, d = q.n, q.params.d
    lhs = brute_force_alternating_sum(q)
    rhs = alternating_rhs(d, n, (l_term(q.params, q.k, n, i) for i in range(n - 2)))
    return ResidualReport.compare(lhs, rhs, floor)

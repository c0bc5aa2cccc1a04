from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zeta_audit.errors import FactorialCapError, InvalidInput
from zeta_audit.power_sums import (
    ComplexPair,
    ProgressionQuery,
    ResidualReport,
    alternating_coefficient,
    brute_force_alternating_sum,
    brute_force_sum,
    l_term,
    limit_l_term,
    limit_s_term,
    plain_coefficient,
    s_term,
    theorem1_residual,
    theorem2_residual,
)

from .conftest import disk, nonzero_disk


def pair(a, d):
    return ComplexPair.from_complex(a, d)


# --------------------------------------------------- exact oracle
# Integer a, d: both sides of the plain identity in exact rationals,
# written out independently of the package code.


def exact_lhs(a, d, k, n):
    total = sum(Fraction(a + (r - 1) * d) ** (n - 1) for r in range(1, k + 1))
    return Fraction(d) * total / (_fact(n - 1) * _fact(n - 3))


def _fact(x):
    out = 1
    for i in range(2, x + 1):
        out *= i
    return out


def exact_s(a, d, k, p):
    a, d = Fraction(a), Fraction(d)
    top = a + k * d
    return (Fraction(p, 2) - 1) * k * d**p - Fraction(p, 2) * d ** (p - 2) * (top**2 - a**2) + top**p - a**p


def exact_rhs(a, d, k, n):
    total = Fraction(0)
    for i in range(n - 2):
        coef = Fraction(1, _fact(i) * _fact(n - i) * _fact(n - 3 - i))
        total += coef * (Fraction(d, 2)) ** i * (-1) ** i * exact_s(a, d, k, n - i)
    return total


@pytest.mark.parametrize("a,d", [(1, 1), (2, 3), (-1, 2), (5, -2)])
@pytest.mark.parametrize("k", [1, 2, 5, 11])
def test_plain_identity_exact_for_n3_n4(a, d, k):
    for n in (3, 4):
        assert exact_lhs(a, d, k, n) == exact_rhs(a, d, k, n)
        rep = theorem1_residual(ProgressionQuery(pair(a, d), k, n))
        assert rep.rel_residual <= 1e-13


@pytest.mark.parametrize("a,d,k", [(1, 1, 2), (2, 3, 4), (1, 2, 7)])
def test_plain_identity_breaks_from_n5(a, d, k):
    for n in (5, 6):
        lhs, rhs = exact_lhs(a, d, k, n), exact_rhs(a, d, k, n)
        assert lhs != rhs
        rep = theorem1_residual(ProgressionQuery(pair(a, d), k, n))
        assert rep.lhs == pytest.approx(complex(float(lhs)), rel=1e-12)
        assert rep.rhs == pytest.approx(complex(float(rhs)), rel=1e-12)


# ------------------------------------------- hand-checked values


@pytest.mark.parametrize("k,n,expected", [(1, 3, 2.0), (2, 4, 16.0), (2, 3, 2.0)])
def test_alternating_hand_refutations(k, n, expected):
    rep = theorem2_residual(ProgressionQuery(pair(1, 1), k, n))
    assert abs(rep.abs_residual - expected) <= 1e-12


def test_plain_anchor_residual_zero():
    for k in (1, 2):
        assert theorem1_residual(ProgressionQuery(pair(1, 1), k, 3)).abs_residual == 0


def test_brute_sums_small():
    q = ProgressionQuery(pair(1, 1), 3, 3)
    assert brute_force_sum(q) == 1 + 4 + 9
    assert brute_force_alternating_sum(q) == 1 - 4 + 9


def test_limit_terms_corrected_values():
    # exact evaluation of the printed limit forms
    assert limit_s_term(pair(1, 2), 3, 0) == 0
    assert limit_l_term(pair(1, 3), 3, 0) == -1


def test_coefficients():
    assert plain_coefficient(3, 0) == pytest.approx(1 / 6)
    assert plain_coefficient(5, 1) == pytest.approx(1 / 24)
    assert plain_coefficient(6, 1) == pytest.approx(1 / (120 * 2))
    assert alternating_coefficient(5, 2) == 1 * 20
    assert alternating_coefficient(4, 0) == 1


# --------------------------------------------------------- guards


def test_complex_pair_guards():
    with pytest.raises(InvalidInput):
        ComplexPair(1, 0, 0, 0)
    with pytest.raises(InvalidInput):
        ComplexPair(float("nan"), 0, 1, 0)
    assert ComplexPair(1, 0, 0, 0, allow_zero_d=True).degenerate
    assert pair(1, 1).degenerate
    assert not pair(1, 1 + 1j).degenerate


@pytest.mark.parametrize("k,n", [(0, 3), (1, 1), (2.5, 3), (True, 3)])
def test_query_guards(k, n):
    with pytest.raises(InvalidInput):
        ProgressionQuery(pair(1, 1), k, n)


def test_term_index_guards():
    p = pair(1, 1j)
    for fn in (lambda: s_term(p, 2, 3, 1), lambda: l_term(p, 2, 3, -1), lambda: limit_s_term(p, 2, 0)):
        with pytest.raises(InvalidInput):
            fn()


def test_factorial_cap():
    with pytest.raises(FactorialCapError):
        theorem1_residual(ProgressionQuery(pair(1, 1j), 2, 21))
    with pytest.raises(InvalidInput):
        theorem2_residual(ProgressionQuery(pair(1, 1j), 2, 2))


def test_residual_floor():
    rep = ResidualReport.compare(0j, 0j)
    assert rep.abs_residual == 0 and rep.rel_residual == 0


# ------------------------------------------------------ properties


@given(disk(), nonzero_disk(), st.integers(1, 40), st.integers(3, 6))
def test_compensated_matches_plain(a, d, k, n):
    q = ProgressionQuery(pair(a, d), k, n)
    plain, comp = brute_force_sum(q), brute_force_sum(q, compensated=True)
    scale = sum(abs(a + r * d) ** (n - 1) for r in range(k)) + 1e-300
    assert abs(plain - comp) <= 1e-13 * scale
    plain, comp = brute_force_alternating_sum(q), brute_force_alternating_sum(q, compensated=True)
    assert abs(plain - comp) <= 1e-13 * scale


@given(disk(), nonzero_disk(), st.integers(1, 30), st.integers(3, 4))
def test_plain_identity_holds_for_small_n(a, d, k, n):
    rep = theorem1_residual(ProgressionQuery(pair(a, d), k, n))
    # both sides can cancel to ~0 (e.g. a = 0, k = 1), so compare like the verdict bands do
    assert rep.abs_residual <= 1e-9 * max(1.0, rep.scale)


@given(disk(), nonzero_disk(), st.integers(1, 20), st.integers(3, 6),
       st.floats(0.25, 4.0))
def test_residual_scale_invariance(a, d, k, n, lam):
    p = pair(a, d)
    r1 = theorem1_residual(ProgressionQuery(p, k, n))
    r2 = theorem1_residual(ProgressionQuery(p.scaled(lam), k, n))
    assert r2.lhs == pytest.approx(r1.lhs * lam**n, rel=1e-9, abs=1e-12 * lam**n)
    assert r2.rhs == pytest.approx(r1.rhs * lam**n, rel=1e-9, abs=1e-12 * lam**n * (1 + abs(r1.rhs)))


@given(disk(), st.integers(3, 12), st.data())
def test_limit_terms_vanish_at_a_equals_d(a, n, data):
    i = data.draw(st.integers(0, n - 3))
    p = ComplexPair.from_complex(a, a, allow_zero_d=True)
    scale = max(1.0, abs(a)) ** (n - i)
    assert abs(limit_s_term(p, n, i)) <= 1e-13 * scale
    assert abs(limit_l_term(p, n, i)) <= 1e-13 * scale

import pytest
import sympy
from hypothesis import given, strategies as st

from klschow.poly import (ONE, X, ZERO, DegreeError, InexactDivision, Poly, analyze, divide_by_x_minus_1,
                          divide_exact, divmod_poly, gamma_expand, gamma_extract, interlaces, real_root_count,
                          rev, w_poly)

xs = sympy.Symbol("x")
coeffs = st.lists(st.integers(-30, 30), max_size=8)
polys = coeffs.map(Poly)


def to_sympy(p: Poly):
    return sum(a * xs ** i for i, a in enumerate(p.c)) if p else sympy.Integer(0)


def from_sympy(e) -> Poly:
    return Poly(reversed(sympy.Poly(e, xs).all_coeffs())) if e != 0 else ZERO


@given(polys, polys)
def test_arithmetic_matches_sympy(p, q):
    assert from_sympy(sympy.expand(to_sympy(p) * to_sympy(q))) == p * q
    assert from_sympy(sympy.expand(to_sympy(p) + to_sympy(q))) == p + q
    assert from_sympy(sympy.expand(to_sympy(p) - to_sympy(q))) == p - q


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p


def test_trailing_zeros_and_degree():
    assert Poly([1, 2, 0, 0]) == Poly([1, 2])
    assert Poly([0, 0]).degree == -1
    assert ZERO.is_zero() and not ONE.is_zero()
    assert Poly([0, 0, 3]).valuation == 2
    assert Poly([1, 2]) == 1 + 2 * X
    assert str(Poly([1, 4, 1])) == "x^2 + 4*x + 1"


@given(polys, st.integers(0, 4))
def test_rev_is_an_involution(p, extra):
    d = max(p.degree, 0) + extra
    assert rev(rev(p, d), d) == p
    assert rev(p * q_shift(extra), d + extra) == rev(p, d)


def q_shift(k: int) -> Poly:
    return Poly.monomial(k)


def test_rev_known_values():
    assert rev(Poly([1, 2]), 3) == Poly([0, 0, 2, 1])
    assert rev(ZERO, 4) == ZERO
    with pytest.raises(DegreeError):
        rev(Poly([1, 2, 3]), 1)


@given(polys)
def test_synthetic_division(p):
    q = p * Poly([-1, 1])
    assert divide_by_x_minus_1(q) == p
    assert divide_exact(q, Poly([-1, 1])) == p


def test_inexact_division_reports_remainder():
    with pytest.raises(InexactDivision) as e:
        divide_by_x_minus_1(Poly([1, 1]))
    assert e.value.remainder == Poly.const(2)
    with pytest.raises(InexactDivision):
        divide_exact(Poly([1, 0, 1]), Poly([1, 1]))
    quo, rem = divmod_poly(Poly([2, 0, 1]), Poly([1, 1]))
    assert quo * Poly([1, 1]) + rem == Poly([2, 0, 1])
    with pytest.raises(ZeroDivisionError):
        divmod_poly(ONE, ZERO)


@given(st.lists(st.integers(-9, 9), max_size=4), st.integers(0, 4))
def test_gamma_round_trip(g, slack):
    g = Poly(g)
    d = 2 * max(g.degree, 0) + slack
    p = gamma_expand(g, d)
    assert gamma_extract(p, d) == g


def test_gamma_of_asymmetric_is_none():
    assert gamma_extract(Poly([1, 2]), 1) is None
    assert gamma_extract(Poly([1, 2, 2]), 2) is None


@pytest.mark.parametrize("r", range(-1, 9))
def test_w_poly_expands_to_geometric_sum(r):
    geometric = Poly([1] * (r + 1))
    assert gamma_expand(w_poly(r), r) == geometric


def test_w_poly_rejects_small_r():
    with pytest.raises(ValueError):
        w_poly(-2)


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=7))
def test_real_root_count_matches_sympy(cs):
    p = Poly(cs)
    if p.degree < 1:
        assert real_root_count(p) == 0
        return
    assert real_root_count(p) == len(sympy.real_roots(sympy.Poly(to_sympy(p), xs)))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5))
def test_real_rooted_products_of_linear_factors(roots):
    p = ONE
    for a in roots:
        p = p * Poly([-a, 1])
    assert real_root_count(p) == len(roots)
    assert analyze(p).is_real_rooted


def test_analyze_known_polynomials():
    rep = analyze(Poly([1, 16, 39, 16, 1]))
    assert rep.is_symmetric and rep.is_unimodal and rep.is_real_rooted
    assert rep.gamma == Poly([1, 12, 9]) and rep.is_gamma_positive
    rep = analyze(Poly([1, 12, 6, 12, 1]))
    assert rep.is_symmetric and not rep.is_unimodal
    assert rep.gamma == Poly([1, 8, -16]) and not rep.is_gamma_positive
    assert rep.witness["gamma"] == [2, -16]
    rep = analyze(Poly([1, -1, 1]), center_hint=1)
    assert not rep.is_nonnegative and rep.witness["negative"] == [1, -1]
    assert not rep.is_real_rooted


def test_analyze_center_hint_detects_offset_symmetry():
    # x + x^2 is symmetric about 3/2 but not about 1
    assert analyze(Poly([0, 1, 1])).is_symmetric
    assert not analyze(Poly([0, 1, 1]), center_hint=1).is_symmetric
    assert analyze(ZERO).is_zero


@given(polys)
def test_json_round_trip(p):
    assert Poly.from_json(p.to_json()) == p


def test_json_big_integers_are_strings():
    big = 2 ** 70
    data = Poly([1, big]).to_json()
    assert data == [1, str(big)]
    assert Poly.from_json(data) == Poly([1, big])


def test_interlacing():
    assert interlaces(Poly([-1, 0, 1]), Poly([0, 1]))
    assert not interlaces(Poly([2, -3, 1]), Poly([-5, 1]))

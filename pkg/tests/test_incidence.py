import random

import pytest
from hypothesis import given, strategies as st

from klschow.incidence import (ConsistencyError, IncElem, IncidenceError, KernelData, KernelError, check_kernel,
                               chow, chow_by_recursion, chow_column, convolve, f_perp, g_perp, invert,
                               kernel_from_chow, kls_right, ncd_check, reduce_kernel, rev_elem,
                               structure_check, unimodality_transfer_check, z_function)
from klschow.kernels import adhoc_b3, characteristic, eulerian_unchecked, kernel_from_g
from klschow.poly import ONE, ZERO, Poly, X
from klschow.poset import boolean, chain, graded_rank, load

from conftest import fixture_path
from strategies import graded_posets, poset_with_g, random_elem


def c2():
    P = chain(2)
    return P, graded_rank(P)


@given(graded_posets(4), st.integers(0, 10 ** 6))
def test_convolution_is_associative_and_rev_is_multiplicative(P, seed):
    rho = graded_rank(P)
    rng = random.Random(seed)
    a, b, c = (random_elem(P, rho, rng) for _ in range(3))
    assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))
    assert rev_elem(convolve(a, b)) == convolve(rev_elem(a), rev_elem(b))
    assert rev_elem(rev_elem(a)) == a


@given(graded_posets(4), st.integers(0, 10 ** 6))
def test_inverse_is_two_sided(P, seed):
    rho = graded_rank(P)
    a = random_elem(P, rho, random.Random(seed), unit=True)
    delta = IncElem.delta(P, rho)
    ai = invert(a)
    assert convolve(a, ai) == delta and convolve(ai, a) == delta


def test_zeta_squared_counts_multichains():
    P, rho = c2()
    z = IncElem.zeta(P, rho)
    assert convolve(z, z)[(0, 1)] == Poly([2])
    P = chain(3)
    rho = graded_rank(P)
    z = IncElem.zeta(P, rho)
    assert convolve(z, z)[(0, 2)] == Poly([3])


def test_non_unit_diagonal_cannot_be_inverted():
    P, rho = c2()
    a = IncElem.from_function(P, rho, lambda s, t: Poly([2]) if s == t else ONE)
    with pytest.raises(IncidenceError):
        invert(a)


def test_mismatched_posets_are_rejected():
    P, rho = c2()
    Q = chain(3)
    with pytest.raises(IncidenceError):
        convolve(IncElem.zeta(P, rho), IncElem.zeta(Q, graded_rank(Q)))


@given(graded_posets(5))
def test_characteristic_kernel_structure(P):
    rho = graded_rank(P)
    chi = characteristic(P, rho)
    chk = check_kernel(chi)
    assert chk.is_kernel and chk.is_nondegenerate
    d = KernelData(chi)
    assert d.g == IncElem.zeta(P, rho)
    assert structure_check(chi, d).ok
    assert ncd_check(chi, d).ok
    assert chow_by_recursion(chi) == d.H


@given(poset_with_g(5))
def test_kernel_from_random_g(data):
    P, rho, g = data
    kappa = kernel_from_g(g)
    assert check_kernel(kappa)
    d = KernelData(kappa)
    assert d.g == g
    rep = structure_check(kappa, d)
    assert rep.ok, rep.failed()
    rep = ncd_check(kappa, d)
    assert rep.ok, rep.failed()


@given(poset_with_g(4))
def test_kernel_chow_round_trip(data):
    P, rho, g = data
    kappa = kernel_from_g(g)
    H = chow(kappa)
    assert kernel_from_chow(H) == kappa
    assert chow(kernel_from_chow(H)) == H


@given(poset_with_g(4))
def test_perp_functions_invert_augmented_chow(data):
    P, rho, g = data
    d = KernelData(kernel_from_g(g))
    assert invert(f_perp(d.f)) == d.F
    assert invert(g_perp(d.g)) == d.G


def test_chow_column_matches_full_table():
    P, rho = load(fixture_path("graded10"))
    rho = graded_rank(P)
    chi = characteristic(P, rho)
    H = chow(chi)
    _, top = P.require_bounded()
    col = chow_column(P, rho, chi.get, top)
    assert all(col[s] == H[(s, top)] for s in col)


def test_kls_on_the_two_element_chain():
    P, rho = c2()
    for c in (-2, 0, 3):
        kappa = IncElem.from_function(P, rho, lambda s, t: ONE if s == t else Poly([-c, c]))
        assert check_kernel(kappa)
        d = KernelData(kappa)
        assert d.f[(0, 1)] == Poly([c])
        assert d.H[(0, 1)] == Poly([c])
        assert d.Z[(0, 1)] == Poly([c, c])


def test_reduced_kernel():
    P, rho = c2()
    kb = reduce_kernel(characteristic(P, rho))
    assert kb[(0, 1)] == ONE and kb[(0, 0)] == Poly([-1])
    P = boolean(3)
    rho = graded_rank(P)
    kb = reduce_kernel(eulerian_unchecked(P, rho))
    assert all(kb[p] == Poly([-1, 1]) ** (rho(*p) - 1) for p in kb.pairs() if p[0] != p[1])


def test_non_kernels_are_rejected():
    P = chain(3)
    rho = graded_rank(P)
    eps = eulerian_unchecked(P, rho)
    chk = check_kernel(eps)
    assert not chk and chk.failing_interval == (0, 2)
    with pytest.raises(KernelError):
        kls_right(eps)
    with pytest.raises(KernelError):
        chow(eps)
    bad = IncElem.from_function(P, rho, lambda s, t: ONE if s == t else Poly([1, 1]))
    with pytest.raises(KernelError):
        reduce_kernel(bad)


def test_kernel_from_chow_examples():
    P, rho = c2()
    H = IncElem.from_function(P, rho, lambda s, t: ONE)
    assert kernel_from_chow(H)[(0, 1)] == X - 1
    # an off-diagonal zero H on a chain gives the (degenerate) kernel delta
    D = IncElem.delta(P, rho)
    assert kernel_from_chow(D) == D
    H = IncElem.from_function(P, rho, lambda s, t: ONE if s == t else Poly([1, 1]))
    with pytest.raises(IncidenceError):
        kernel_from_chow(H)


def test_kernel_from_chow_recovers_chi_on_b3():
    P = boolean(3)
    rho = graded_rank(P)
    chi = characteristic(P, rho)
    assert kernel_from_chow(chow(chi)) == chi


def test_z_function_two_forms():
    P = boolean(2)
    rho = graded_rank(P)
    Z = z_function(characteristic(P, rho))
    assert Z[(0, 3)] == Poly([1, 2, 1])


def test_split_detects_inconsistent_residue():
    from klschow.incidence import _split_half

    assert _split_half(Poly([-1, 0, 1]), 2, (0, 1)) == Poly([1])
    with pytest.raises(ConsistencyError):
        _split_half(Poly([1, 1, 1]), 2, (0, 1))


@pytest.mark.parametrize("m", [-8, -7, 0, 5])
def test_adhoc_kernel_family(m):
    kappa = adhoc_b3(m)
    d = KernelData(kappa)
    b, t = kappa.P.require_bounded()
    assert d.f[(b, t)] == Poly([1, m + 3])
    assert all(d.f[p] == ONE for p in d.f.pairs() if p != (b, t))
    assert all(d.Z[p] == Poly([1, 1]) ** kappa.rho(*p) for p in d.Z.pairs() if p != (b, t))
    assert d.F[(b, t)] == d.G[(b, t)]
    rep = unimodality_transfer_check(kappa, d)
    assert rep.ok
    if m == -8:
        assert not rep.f_nonnegative and not rep.H_nonneg_unimodal
        assert (b, t) in rep.negative_f
    if m == 0:
        assert rep.f_nonnegative and rep.H_nonneg_unimodal


def test_json_round_trip():
    P = boolean(2)
    rho = graded_rank(P)
    H = chow(characteristic(P, rho))
    assert IncElem.from_json(P, rho, H.to_json()) == H
    assert H.top() == Poly([1, 1])
    assert ZERO == IncElem.delta(P, rho)[(0, 3)]

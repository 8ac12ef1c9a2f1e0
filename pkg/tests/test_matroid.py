import itertools
from math import comb

import pytest

from klschow.matroid import (Matroid, MatroidError, chain_formula, chi_G, chi_chow, chi_chow_identities,
                             fy_hilbert, fy_hilbert_augmented, gamma_from_alpha, gamma_from_flags, graphic,
                             is_good, lattice_of_flats, uniform)
from klschow.matroid import from_json as matroid_from_json
from klschow.poly import Poly, gamma_extract
from klschow.poset import boolean, graded_rank, load

from conftest import fixture_path, seeded_posets

K4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def eulerian_polynomial(n):
    counts = [0] * max(n, 1)
    for perm in itertools.permutations(range(n)):
        counts[sum(perm[i] > perm[i + 1] for i in range(n - 1))] += 1
    return Poly(counts)


def brute_flats(M):
    out = []
    for A in range(1 << M.n):
        r = M.rank(A)
        if all(M.rank(A | 1 << e) > r for e in range(M.n) if not A >> e & 1):
            out.append(A)
    return sorted(out, key=lambda F: (M.rank(F), F))


@pytest.mark.parametrize("k,n", [(1, 3), (2, 4), (3, 5), (4, 4), (2, 6)])
def test_uniform_flats(k, n):
    M = uniform(k, n)
    assert M.check_axioms()
    assert M.flats() == brute_flats(M)
    assert len(M.flats()) == sum(comb(n, i) for i in range(k)) + 1


def test_graphic_matroid_of_k4():
    M = graphic(K4)
    assert M.r == 3 and len(M.bases) == 16
    assert M.check_axioms()
    assert M.flats() == brute_flats(M)
    assert len(M.flats()) == 1 + 6 + 7 + 1


def test_bad_inputs():
    with pytest.raises(MatroidError):
        Matroid(3, [[0], [1, 2]])
    with pytest.raises(MatroidError):
        Matroid(3, [])
    with pytest.raises(MatroidError):
        Matroid(2, [[5]])
    assert not Matroid(4, [[0, 1], [2, 3]]).check_axioms()
    with pytest.raises(MatroidError):
        fy_hilbert(Matroid(2, [[0]]))


@pytest.mark.parametrize("n", range(1, 6))
def test_boolean_matroid_gives_eulerian_polynomial(n):
    M = uniform(n, n)
    assert fy_hilbert(M) == eulerian_polynomial(n)
    P, rho = lattice_of_flats(M)
    assert chi_chow(P, rho) == eulerian_polynomial(n)


@pytest.mark.parametrize("M", [uniform(2, 3), uniform(3, 4), uniform(3, 5), graphic(K4),
                               graphic([(0, 1), (1, 2), (2, 0), (2, 3)])], ids=["U23", "U34", "U35", "K4", "paw"])
def test_fy_basis_matches_characteristic_chow(M):
    P, rho = lattice_of_flats(M)
    assert fy_hilbert(M) == chi_chow(P, rho)
    assert fy_hilbert_augmented(M) == chi_G(P, rho)


def test_rank_two_matroids():
    for n in range(2, 6):
        assert fy_hilbert(uniform(2, n)) == Poly([1, 1])
    assert fy_hilbert(graphic(K4)) == Poly([1, 8, 1])


def test_chain_formula_on_random_posets():
    for P in seeded_posets(30, seed=41):
        rho = graded_rank(P)
        assert chain_formula(P, rho) == chi_chow(P, rho)


def test_good_sets():
    assert is_good([]) and is_good([2, 4]) and is_good([3])
    assert not is_good([1]) and not is_good([2, 3])


def test_gamma_formulas_on_random_posets():
    for P in seeded_posets(30, seed=42):
        rho = graded_rank(P)
        H = chi_chow(P, rho)
        b, t = P.require_bounded()
        gam = gamma_extract(H, rho(b, t) - 1)
        assert gamma_from_flags(P, rho) == gam
        assert gamma_from_alpha(P, rho) == gam


def test_chi_identities_on_fixtures():
    for name in ("graded10", "eulerian18", "negative_gamma", "cm_negative_f", "b4"):
        P, rho = load(fixture_path(name))
        rep = chi_chow_identities(P, rho)
        assert rep.ok, (name, rep.failed())


def test_chi_identities_on_random_posets():
    for P in seeded_posets(10, seed=43, max_rank=5):
        rep = chi_chow_identities(P)
        assert rep.ok, rep.failed()


def test_matroid_json():
    assert matroid_from_json({"uniform": [2, 3]}).r == 2
    assert matroid_from_json({"graph": K4}).r == 3
    assert matroid_from_json({"n": 2, "bases": [[0], [1]]}).r == 1
    assert boolean(3).n == len(lattice_of_flats(uniform(3, 3))[0])

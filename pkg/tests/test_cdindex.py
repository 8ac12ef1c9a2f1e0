import pytest
from hypothesis import given, strategies as st

from klschow.cdindex import (NcPoly, NotInCDSubalgebra, ab_index, cd_index, chow_from_complete_cd,
                             complete_cd_from_paths, complete_cd_from_words, expand_cd, gal_gamma,
                             gamma_from_complete_cd, to_cd)
from klschow.coxeter import all_intervals, chow_by_algebra, reflection_order, symmetric_group
from klschow.poly import Poly, gamma_extract
from klschow.poset import (boolean, chain, crosspolytope_face_lattice, cube_face_lattice, flag_vectors,
                           load, order_complex_h, polygon_face_lattice)

from conftest import fixture_path

cd_words = st.lists(st.sampled_from("cd"), max_size=5).map("".join)



@given(st.dictionaries(cd_words, st.integers(-5, 5), max_size=6))
def test_expand_then_rewrite_is_identity(terms):
    phi = NcPoly(terms)
    assert to_cd(expand_cd(phi)) == phi


def test_algebra_of_ncpoly():
    c, d = NcPoly({"c": 1}), NcPoly({"d": 1})
    assert (c * c + d * 2).terms == {"cc": 1, "d": 2}
    assert (c - c).terms == {}
    assert expand_cd(d).terms == {"ab": 1, "ba": 1}
    assert str(NcPoly({"ccd": 2, "d": -1, "": 1})) == "2c^2d - d + 1"
    assert NcPoly.from_json(NcPoly({"cd": 3}).to_json()) == NcPoly({"cd": 3})


def test_known_cd_indices():
    assert cd_index(boolean(2)) == NcPoly({"c": 1})
    assert cd_index(polygon_face_lattice(4)) == NcPoly({"cc": 1, "d": 2})
    assert cd_index(boolean(4)) == NcPoly({"ccc": 1, "cd": 2, "dc": 2})
    # octahedron and cube are dual: reversed cd-words
    cube = cd_index(cube_face_lattice(3))
    octa = cd_index(crosspolytope_face_lattice(3))
    assert octa == NcPoly({w[::-1]: c for w, c in cube.terms.items()})


def test_non_eulerian_has_no_cd_index():
    with pytest.raises(NotInCDSubalgebra) as e:
        cd_index(chain(3))
    assert e.value.word == "a"


def test_eulerian18_cd_index():
    P, rho = load(fixture_path("eulerian18"))
    phi = cd_index(P, rho)
    assert phi == NcPoly({"cccc": 1, "ccd": 2, "dcc": 2, "dd": -4})
    h = order_complex_h(P, rho)
    assert gal_gamma(phi) == gamma_extract(h, 4)


@pytest.mark.parametrize("P", [boolean(3), boolean(5), cube_face_lattice(4), crosspolytope_face_lattice(4),
                               polygon_face_lattice(7)], ids=["B3", "B5", "cube4", "cross4", "heptagon"])
def test_gal_gamma_matches_order_complex(P):
    phi = cd_index(P)
    h = order_complex_h(P)
    assert gal_gamma(phi) == gamma_extract(h, h.degree)
    assert expand_cd(phi) == ab_index(flag_vectors(P))


def test_complete_cd_on_every_s4_interval():
    G = symmetric_group(4)
    order = reflection_order(G)
    for u, v in all_intervals(G):
        if u == v:
            continue
        r = G.length[v] - G.length[u]
        psi = complete_cd_from_paths(G, u, v, order)
        H = chow_by_algebra(G, u, v)
        assert chow_from_complete_cd(psi, r) == H
        assert gamma_from_complete_cd(psi, r) == gamma_extract(H, r - 1)


def test_reference_complete_cd_index():
    G = symmetric_group(4)
    v = G.from_word("1 2 3 2 1")
    psi = complete_cd_from_paths(G, 0, v)
    assert psi == NcPoly({"cccc": 1, "dcc": 1, "cdc": 2, "ccd": 2, "dd": 2, "cc": 2, "": 1})
    assert gamma_from_complete_cd(psi, 5) == Poly([1, 12, 9])


def test_parity_errors():
    with pytest.raises(ValueError):
        chow_from_complete_cd(NcPoly({"c": 1}), 3)
    with pytest.raises(ValueError):
        gamma_from_complete_cd(NcPoly({"c": 1}), 3)
    assert complete_cd_from_words({"b": 1, "a": 1, "": 1}) == NcPoly({"c": 1, "": 1})

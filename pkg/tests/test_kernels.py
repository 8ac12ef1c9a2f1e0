import json

import pytest

from klschow.incidence import IncElem, IncidenceError, check_kernel, convolve, rev_elem
from klschow.kernels import (NotEulerianError, adhoc_b3, characteristic, eulerian, from_spec, kernel_from_g,
                             kernel_from_table, mobius_elem, zeta)
from klschow.poly import ONE, Poly, X
from klschow.poset import boolean, chain, graded_rank, load

from conftest import fixture_path, seeded_posets


def test_characteristic_is_mobius_times_reversed_zeta():
    for P in seeded_posets(20, seed=31):
        rho = graded_rank(P)
        assert characteristic(P, rho) == convolve(mobius_elem(P, rho), rev_elem(zeta(P, rho)))


def test_characteristic_on_boolean_lattice():
    P = boolean(3)
    chi = characteristic(P)
    b, t = P.require_bounded()
    assert chi[(b, t)] == (X - 1) ** 3


def test_characteristic_on_chain_is_x_power_minus_lower():
    P = chain(4)
    chi = characteristic(P)
    assert chi[(0, 3)] == Poly([0, 0, -1, 1])
    assert chi[(0, 1)] == X - 1


def test_eulerian_requires_eulerian_poset():
    P, _ = load(fixture_path("eulerian18"))
    assert check_kernel(eulerian(P))
    with pytest.raises(NotEulerianError) as e:
        eulerian(chain(3))
    assert e.value.interval == (0, 2)


def test_adhoc_on_wrong_poset():
    with pytest.raises(IncidenceError):
        adhoc_b3(0, chain(4))


def test_adhoc_top_entry():
    k = adhoc_b3(5)
    assert k.top() == Poly([-1, -5, 5, 1])


def test_kernel_from_g_validates_input():
    P = chain(3)
    rho = graded_rank(P)
    bad_diag = IncElem.from_function(P, rho, lambda s, t: Poly([2]) if s == t else Poly([0]))
    with pytest.raises(IncidenceError):
        kernel_from_g(bad_diag)
    too_big = IncElem.from_function(P, rho, lambda s, t: ONE if s == t else Poly([0, 1]))
    with pytest.raises(IncidenceError):
        kernel_from_g(too_big)


def test_kernel_from_g_on_two_element_chain():
    P = chain(2)
    rho = graded_rank(P)
    for c in (0, 1, 4):
        g = IncElem.from_function(P, rho, lambda s, t: ONE if s == t else Poly([c]))
        assert kernel_from_g(g)[(0, 1)] == Poly([-c, c])


def test_from_spec(tmp_path):
    P = boolean(3)
    rho = graded_rank(P)
    assert from_spec("chi", P, rho) == characteristic(P, rho)
    assert from_spec("eps", P, rho) == eulerian(P, rho)
    assert from_spec("adhoc:m=-7", P, rho).table == adhoc_b3(-7).table
    table = {f"{P.labels[s]},{P.labels[t]}": v.to_json() for (s, t), v in adhoc_b3(2).table.items()}
    path = tmp_path / "k.json"
    path.write_text(json.dumps({"table": table}))
    assert from_spec(f"file:{path}", P, rho).table == adhoc_b3(2).table
    with pytest.raises(ValueError):
        from_spec("nonsense", P, rho)


def test_kernel_table_errors():
    P = chain(2)
    rho = graded_rank(P)
    with pytest.raises(IncidenceError):
        kernel_from_table(P, rho, {})
    with pytest.raises(IncidenceError):
        kernel_from_table(P, rho, {"0,1": [1, 1]})
    assert kernel_from_table(P, rho, {"0,1": [-1, 1]})[(0, 1)] == X - 1

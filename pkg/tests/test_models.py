from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fmcalc.exact import MultiPoly, RMatrix, mat_inverse
from fmcalc.models import (BPSCharge, ChernData, ModelError, ReconciliationError, bps_to_chern,
                           central_charge_bps, central_charge_geometric, chern_to_bps,
                           default_registry, derived_s_i, gamma_shift_on_bps,
                           gamma_shift_on_bps_vertical, get_model, matching_conventions,
                           model_to_dict, monodromy_from_prepotential, period_vector,
                           registry_from_yaml, registry_to_yaml, shift_matrix,
                           twist_matrix_on_bps, twist_matrix_on_bps_vertical)

REG = default_registry()
t1, t2 = MultiPoly.var("t1"), MultiPoly.var("t2")


def _h(m, a, b, c):
    return m.triple_in_kahler(a, b, c)


@pytest.mark.parametrize("name,h3,h2l,c2h,c2l", [
    ("deg8", 8, 4, 56, 24),
    ("deg12", 4, 2, 52, 24),
    ("deg18", 9, 3, 102, 36),
])
def test_intersection_data_in_kahler_basis(name, h3, h2l, c2h, c2l):
    m = REG[name]
    assert _h(m, "H", "H", "H") == h3
    assert _h(m, "H", "H", "L") == h2l
    assert m.c2_dot(m.divisor_coords("H")) == c2h
    assert m.c2_dot(m.divisor_coords("L")) == c2l


def test_deg18_c2_comes_from_the_ring():
    m = REG["deg18"]
    assert m.c2_pairings is None
    assert m.c2_vector() == (-6, 36)
    assert _h(m, "H", "L", "L") == 1


@pytest.mark.parametrize("name", ["deg8", "deg12"])
def test_prepotential_cubic_and_linear_terms(name):
    m = REG[name]
    F = m.prepotential
    assert F.coefficient((3, 0)) == -Fraction(_h(m, "H", "H", "H"), 6)
    assert F.coefficient((2, 1)) == -Fraction(_h(m, "H", "H", "L"), 2)
    assert F.coefficient((1, 0)) == Fraction(m.c2_dot(m.divisor_coords("H")), 24)
    assert F.coefficient((0, 1)) == Fraction(m.c2_dot(m.divisor_coords("L")), 24)


def test_period_vector_shape():
    pi = period_vector(REG["deg12"])
    assert pi[3] == MultiPoly.constant(1) and pi[4] == t1 and pi[5] == t2


@pytest.mark.parametrize("name", ["deg8", "deg12"])
@pytest.mark.parametrize("direction", ["t1", "t2"])
def test_monodromy_single_convention(name, direction):
    m = REG[name]
    assert matching_conventions(m, direction) == ["A"]
    a, tag = monodromy_from_prepotential(m, direction)
    assert tag == "A"
    pi = period_vector(m)
    shifted = tuple(p.shift(direction, 1) for p in pi)
    assert all(s == sum((a[i, j] * pi[j] for j in range(6)), MultiPoly()) for i, s in enumerate(shifted))


def test_shift_matrix_inverse_shift():
    pi = period_vector(REG["deg8"])
    assert shift_matrix(pi, "t1", 1) @ shift_matrix(pi, "t1", -1) == RMatrix.identity(6)


def test_reconciliation_error_carries_both_matrices():
    m = REG["deg8"]
    bad = REG.with_matrix("deg8", "S_L", RMatrix.identity(6))["deg8"]
    with pytest.raises(ReconciliationError) as info:
        monodromy_from_prepotential(bad, "t2")
    assert info.value.printed == RMatrix.identity(6)
    assert info.value.derived == monodromy_from_prepotential(m, "t2")[0]


@pytest.mark.parametrize("name", ["deg8", "deg12"])
def test_lattice_maps_match_printed_monodromies(name):
    m = REG[name]
    for d in ("L", "H"):
        assert twist_matrix_on_bps(m, d) == mat_inverse(m.matrices[f"S_{d}"])
    assert gamma_shift_on_bps(m) == mat_inverse(m.matrices["T"])


def test_deg18_lattice_maps_two_routes():
    m = REG["deg18"]
    for d in ("E", "L", "H"):
        assert twist_matrix_on_bps(m, d) == twist_matrix_on_bps_vertical(m, d)
        assert twist_matrix_on_bps(m, d) == mat_inverse(m.matrices[f"S_{d}"])
    assert gamma_shift_on_bps(m) == gamma_shift_on_bps_vertical(m)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["deg8", "deg12", "deg18"]), st.lists(st.integers(-5, 5), min_size=2, max_size=2),
       st.lists(st.integers(-5, 5), min_size=2, max_size=2))
def test_twists_form_a_group_action(name, d1, d2):
    m = REG[name]
    total = [a + b for a, b in zip(d1, d2)]
    assert twist_matrix_on_bps(m, d1) @ twist_matrix_on_bps(m, d2) == twist_matrix_on_bps(m, total)
    assert twist_matrix_on_bps(m, (0, 0)) == RMatrix.identity(6)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["deg8", "deg12"]), st.lists(st.integers(-20, 20), min_size=6, max_size=6))
def test_central_charge_dictionary(name, values):
    m = REG[name]
    n = BPSCharge.of(*values)
    assert central_charge_bps(m, n) == central_charge_geometric(m, bps_to_chern(m, n))
    assert chern_to_bps(m, bps_to_chern(m, n)) == n


def test_central_charge_of_d0():
    # a point has ch3 = 1 and nothing else
    m = REG["deg12"]
    assert central_charge_geometric(m, ChernData(0, (0, 0), (0, 0), 1)) == MultiPoly.constant(-1)


def test_printed_s_i_keeps_its_digits():
    m = REG["deg18"]
    assert m.matrices["S_I"][3, 4] == 1
    assert derived_s_i(m)[3, 4] == -1
    diff = m.matrices["S_I"] - derived_s_i(m)
    assert [(i, j) for i in range(6) for j in range(6) if diff[i, j]] == [(3, 4)]


def test_printed_small_m_is_not_unimodular():
    assert REG["deg8"].matrices["m"].determinant() == -4
    assert REG["deg8"].matrices["K"].determinant() == 1


def test_registry_yaml_round_trip():
    again = registry_from_yaml(registry_to_yaml(REG))
    assert again.names() == REG.names()
    for name in REG.names():
        assert model_to_dict(again[name]) == model_to_dict(REG[name])
    assert again.k3_matrices == REG.k3_matrices


def test_with_matrix_leaves_original_alone():
    changed = REG.with_matrix("deg18", "S_L", RMatrix.identity(6))
    assert changed["deg18"].matrices["S_L"] == RMatrix.identity(6)
    assert REG["deg18"].matrices["S_L"] != RMatrix.identity(6)


def test_unknown_model():
    with pytest.raises(ModelError):
        get_model("quintic")
    with pytest.raises(ModelError):
        REG["deg8"].divisor_coords("Z")

from fractions import Fraction

import pytest
from hypothesis import given, settings

from fmcalc.chow import exp_divisor, projective_plane, todd_X
from fmcalc.fibre_square import FibreSquareClass, ch_diagonal_structure_sheaf, ch_ideal, grr_transform, pull2
from fmcalc.kontsevich import (KernelDescriptor, ch_diagonal_ideal, ch_fibre_ideal, ch_g_table,
                               ch_J, euler_pairing, factor_inverse_fm, factor_inverse_fm_steps,
                               gamma_shift, line_bundle_twist)
from fmcalc.transforms import fm_inverse
from strategies import geom_and_charges


@settings(max_examples=40, deadline=None)
@given(geom_and_charges(2))
def test_twist_is_the_diagonal_kernel_with_a_line_bundle(data):
    g, v, w = data
    d = w.degree_part(1)
    kernel = ch_diagonal_structure_sheaf(g) * pull2(exp_divisor(d))
    assert grr_transform(v, kernel, "forward") == line_bundle_twist(v, d)


@settings(max_examples=40, deadline=None)
@given(geom_and_charges(3))
def test_twists_compose(data):
    g, v, a, b = data
    d1, d2 = a.degree_part(1), b.degree_part(1)
    assert line_bundle_twist(line_bundle_twist(v, d1), d2) == line_bundle_twist(v, d1 + d2)


@settings(max_examples=40, deadline=None)
@given(geom_and_charges(1))
def test_fibre_ideal_matches_grr(data):
    g, v = data
    assert grr_transform(v, ch_ideal(g), "forward") == ch_fibre_ideal(v)


@settings(max_examples=60, deadline=None)
@given(geom_and_charges(1))
def test_kernel_identities(data):
    g, v = data
    assert ch_diagonal_ideal(v) == ch_fibre_ideal(v) + ch_J(v)
    assert ch_diagonal_ideal(v) == -gamma_shift(v)
    assert ch_g_table(v) == line_bundle_twist(v, g.sigma())


@settings(max_examples=60, deadline=None)
@given(geom_and_charges(1, x_zero=True))
def test_factorization_of_the_inverse(data):
    g, v = data
    steps = factor_inverse_fm_steps(v)
    assert steps.g_charge == line_bundle_twist(v, g.sigma())
    assert steps.result == factor_inverse_fm(v) == fm_inverse(v)


@settings(max_examples=30, deadline=None)
@given(geom_and_charges(1))
def test_factorization_holds_beyond_degree_zero(data):
    g, v = data
    assert factor_inverse_fm(v) == fm_inverse(v)


def test_gamma_shift_kills_euler_characteristic_of_o():
    g = projective_plane()
    assert euler_pairing(g.one()) == 0
    assert euler_pairing(g.point()) == 1
    assert gamma_shift(g.point()) == g.point() - g.one()
    assert euler_pairing(todd_X(g)) == 0


def test_kernel_descriptor_dispatch():
    g = projective_plane()
    v = g.vclass(r=1, x=2, S=[1], eta=[Fraction(1, 2)], a=3, s=-1)
    assert KernelDescriptor("diagonal_twist", g.sigma()).apply(v) == line_bundle_twist(v, g.sigma())
    assert KernelDescriptor("diagonal_twist").apply(v) == v
    assert KernelDescriptor("diagonal_ideal").apply(v) == ch_diagonal_ideal(v)
    assert KernelDescriptor("fibre_ideal").apply(v) == ch_fibre_ideal(v)
    assert KernelDescriptor("fibre_ideal_complement").apply(v) == ch_J(v)
    with pytest.raises(ValueError):
        KernelDescriptor("nonsense").apply(v)

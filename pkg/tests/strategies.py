"""Hypothesis strategies and small builders shared by the test modules."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from fmcalc.chow import BaseSurfaceData, projective_plane
from fmcalc.exact import MultiPoly, RMatrix
from fmcalc.verify import synthetic_geometries

GEOMETRIES = [projective_plane(), *synthetic_geometries()]

fractions = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 8))
small_ints = st.integers(-9, 9)


def geometries():
    return st.sampled_from(GEOMETRIES)


def charges(geom: BaseSurfaceData, x_zero: bool = False):
    k = geom.rank
    vec = st.lists(fractions, min_size=k, max_size=k)
    x = st.just(0) if x_zero else fractions
    return st.builds(geom.vclass, fractions, x, vec, vec, fractions, fractions)


def geom_and_charges(count: int = 1, x_zero: bool = False):
    return geometries().flatmap(
        lambda g: st.tuples(st.just(g), *[charges(g, x_zero) for _ in range(count)]))


def matrices(n: int, elements=small_ints):
    return st.lists(elements, min_size=n * n, max_size=n * n).map(lambda e: RMatrix(n, n, e))


def polys(max_degree: int = 3):
    keys = st.tuples(st.integers(0, max_degree), st.integers(0, max_degree))
    return st.dictionaries(keys, fractions, max_size=6).map(MultiPoly)

"""Closed-form fibrewise Fourier-Mukai transforms on charge vectors.

Transforms return the alternating sum ``ch(S(V)) = sum_i (-1)^i ch(S^i(V))``.
All pairings go through the ring in :mod:`fmcalc.chow`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chow import (BaseSurfaceData, K3Class, VerticalClass, exp_divisor,
                   series_inverse, series_sqrt, todd_N, todd_N_inverse_bundle, todd_X)
from .exact import RMatrix, Scalar, rational


class PreconditionError(ValueError):
    pass


class RepresentationError(ValueError):
    pass


def _ints(geom: BaseSurfaceData, v: VerticalClass):
    """The three pairings entering the closed forms, computed in the ring."""
    c1 = geom.c1_class()
    sig = geom.sigma()
    sc1sq = (sig * c1 * c1).s
    eta_c1 = (geom.vclass(eta=v.eta) * c1).s
    sc1S = (sig * c1 * geom.pullback(v.S)).s
    return sc1sq, eta_c1, sc1S


def _half(vec, k=Fraction(1, 2)):
    return tuple(k * c for c in vec)


def fm_forward(ch: VerticalClass, geom: BaseSurfaceData | None = None) -> VerticalClass:
    g = geom or ch.geom
    n, x, S, eta, a, s = ch.slots()
    sc1sq, eta_c1, sc1S = _ints(g, ch)
    c1 = g.c1
    return g.vclass(
        r=x,
        x=-n,
        S=[e - x * c / 2 for e, c in zip(eta, c1)],
        eta=[n * c / 2 - t for c, t in zip(c1, S)],
        a=s - eta_c1 / 2 + x * sc1sq / 12,
        s=-n * sc1sq / 6 - a + sc1S / 2,
    )


def fm_inverse(ch: VerticalClass, geom: BaseSurfaceData | None = None) -> VerticalClass:
    """Inverse transform.

    Unlike :func:`fm_inverse_as_printed` this carries no ``x * sigma c1^2`` term
    in the top slot; without it the map agrees with the GRR computation and
    inverts :func:`fm_forward` up to the shift sign.
    """
    g = geom or ch.geom
    n, x, S, eta, a, s = ch.slots()
    sc1sq, eta_c1, sc1S = _ints(g, ch)
    c1 = g.c1
    return g.vclass(
        r=x,
        x=-n,
        S=[e + x * c / 2 for e, c in zip(eta, c1)],
        eta=[-n * c / 2 - t for c, t in zip(c1, S)],
        a=s + eta_c1 / 2 + x * sc1sq / 12,
        s=-n * sc1sq / 6 - a - sc1S / 2,
    )


def fm_inverse_as_printed(ch: VerticalClass, geom: BaseSurfaceData | None = None) -> VerticalClass:
    """The inverse closed form including the extra ``x * sigma c1^2`` in ch_3."""
    g = geom or ch.geom
    sc1sq = _ints(g, ch)[0]
    return fm_inverse(ch, g) + g.vclass(s=ch.x * sc1sq)


def double_transform(ch: VerticalClass, geom: BaseSurfaceData | None = None) -> VerticalClass:
    g = geom or ch.geom
    return fm_inverse(fm_forward(ch, g), g)


def m_apply(v: VerticalClass) -> VerticalClass:
    """M (n, x, S, eta, a, s) = (x, -n, eta, -S, s, -a)."""
    return VerticalClass(v.geom, v.x, -v.r, v.eta, tuple(-c for c in v.S), v.s, -v.a)


def twisted_charge(ch: VerticalClass, shift_parity: int, geom: BaseSurfaceData | None = None) -> VerticalClass:
    """ch * sqrt(Td N)^((-1)^(shift_parity + 1))."""
    g = geom or ch.geom
    root = series_sqrt(todd_N(g))
    return ch * (root if shift_parity % 2 else series_inverse(root))


def mukai_charge(ch: VerticalClass, geom: BaseSurfaceData | None = None) -> VerticalClass:
    g = geom or ch.geom
    return ch * series_sqrt(todd_X(g))


# --- vector/matrix views ---------------------------------------------------------------

def class_to_vector(v: VerticalClass) -> tuple[Fraction, ...]:
    return (v.r, v.x, *v.S, *v.eta, v.a, v.s)


def vector_to_class(vec: Sequence[Scalar], geom: BaseSurfaceData) -> VerticalClass:
    k = geom.rank
    vec = [rational(c) for c in vec]
    if len(vec) != 4 + 2 * k:
        raise RepresentationError(f"expected {4 + 2 * k} entries, got {len(vec)}")
    return geom.vclass(vec[0], vec[1], vec[2:2 + k], vec[2 + k:2 + 2 * k], vec[2 + 2 * k], vec[3 + 2 * k])


def _basis(geom: BaseSurfaceData) -> list[VerticalClass]:
    dim = 4 + 2 * geom.rank
    return [vector_to_class([int(i == j) for i in range(dim)], geom) for j in range(dim)]


def linear_map_matrix(fn, geom: BaseSurfaceData) -> RMatrix:
    """Matrix (acting on column vectors) of a linear map on vertical classes."""
    return RMatrix.from_columns([class_to_vector(fn(e)) for e in _basis(geom)])


def multiplication_matrix(w: VerticalClass) -> RMatrix:
    return linear_map_matrix(lambda v: w * v, w.geom)


def m_matrix(geom: BaseSurfaceData) -> RMatrix:
    return linear_map_matrix(m_apply, geom)


def tdn_matrix(geom: BaseSurfaceData, sign: str) -> RMatrix:
    """Multiplication by Td(N) ("minus", leading -c1/2) or by its inverse ("plus")."""
    if geom.rank != 1:
        raise RepresentationError(
            "the Td(N) matrix needs a one-generator H^2(B); multiply in the ring instead")
    if sign == "minus":
        w = todd_N(geom)
    elif sign == "plus":
        w = series_inverse(todd_N(geom))
    else:
        raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")
    return multiplication_matrix(w)


def verify_m_relations(ch: VerticalClass, geom: BaseSurfaceData | None = None) -> dict[str, bool]:
    g = geom or ch.geom
    if ch.x != 0:
        raise PreconditionError("the M relations need V fibrewise of degree 0 (x = 0)")
    m_ch = m_apply(ch)
    q_hat = twisted_charge(fm_inverse(ch, g), 1, g)
    return {
        "td_n_inverse_transform": todd_N(g) * fm_inverse(ch, g) == m_ch,
        "td_n_dual_forward_transform": todd_N_inverse_bundle(g) * fm_forward(ch, g) == m_ch,
        "twisted_charge": q_hat == m_apply(twisted_charge(ch, 0, g)),
    }


# --- numerical invariants --------------------------------------------------------------

@dataclass(frozen=True)
class NumericalInvariants:
    n: Fraction
    d: Fraction
    s: Fraction
    g: Fraction
    c: Fraction
    f: Fraction

    @classmethod
    def of(cls, ch: VerticalClass) -> "NumericalInvariants":
        geom = ch.geom
        ch1 = ch.degree_part(1)
        ch2 = ch.degree_part(2)
        sig, c1 = geom.sigma(), geom.c1_class()
        return cls(n=ch.r, d=(ch1 * geom.fibre()).s, s=ch.s,
                   g=(ch1 * sig * c1).s, c=(ch2 * sig).s, f=(ch2 * c1).s)


# --- sheaf catalog ---------------------------------------------------------------------

def ch_section_sheaf(geom: BaseSurfaceData, twist: VerticalClass | None = None) -> VerticalClass:
    """ch(j_* L) for the section j: B -> X and L pulled back from B (default O_B).

    By GRR: j_*(ch(L) Td(N)^{-1}) with Td(N)^{-1} = 1 + c1/2 + c1^2/6; j_* is sigma times.
    """
    w = series_inverse(todd_N(geom))
    if twist is not None:
        w = w * exp_divisor(twist)
    return geom.sigma() * w


def ch_base_curve(geom: BaseSurfaceData, curve: Sequence[Scalar]) -> VerticalClass:
    """pi^* ch(O_Gamma) = Gamma - Gamma^2/2 for a curve Gamma in B."""
    gamma = geom.pullback(curve)
    return gamma - (gamma * gamma).scale(Fraction(1, 2))


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    charge: VerticalClass
    forward: VerticalClass
    inverse: VerticalClass
    wit_index: int
    sheaf_image: str
    sheaf_image_charge: VerticalClass  # ch of the single nonzero S^i, so forward = (-1)^i * this


def canonical_catalog(geom: BaseSurfaceData, curve: Sequence[Scalar] | None = None) -> list[CatalogEntry]:
    g = geom
    curve = curve if curve is not None else [int(i == 0) for i in range(g.rank)]
    kb = -g.c1_class()
    point = g.point()
    o_sigma = ch_section_sheaf(g)
    o_x = g.one()
    o_sigma_kb = ch_section_sheaf(g, kb)
    base_curve = ch_base_curve(g, curve)
    j_curve = g.sigma() * series_inverse(todd_N(g)) * base_curve
    j_curve_kb = j_curve * exp_divisor(kb)
    rows = [
        ("skyscraper", point, 0, "rank one torsion-free sheaf on a fibre", g.fibre()),
        ("structure sheaf of section", o_sigma, 0, "O_X", o_x),
        ("O_X", o_x, 1, "O_sigma (x) pi^*K_B", o_sigma_kb),
        ("section pushforward of base curve sheaf", j_curve, 0, "pi^*O_Gamma", base_curve),
        ("pullback of base curve sheaf", base_curve, 1, "j_*O_Gamma (x) pi^*K_B", j_curve_kb),
    ]
    return [CatalogEntry(name, ch, fm_forward(ch, g), fm_inverse(ch, g), wit, image, image_ch)
            for name, ch, wit, image, image_ch in rows]


# --- K3 --------------------------------------------------------------------------------

K3_M = ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 1), (0, 0, -1, 0))


def k3_m_matrix() -> RMatrix:
    return RMatrix.from_rows(K3_M)


def k3_fm(ch: K3Class) -> K3Class:
    return K3Class(*k3_m_matrix().apply(ch.as_tuple()))

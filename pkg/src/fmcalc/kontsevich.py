"""Full (non-fibrewise) integral transforms at the level of charges.

Kernels supported on the diagonal give line-bundle twists; the ideal sheaf of
the diagonal gives the gamma shift (up to the WIT_1 sign); the ideal of the
diagonal inside the fibre square splits it into two pieces ``I`` and ``J``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .chow import BaseSurfaceData, VerticalClass, c2_X, exp_divisor, todd_X


def line_bundle_twist(ch: VerticalClass, d: VerticalClass,
                      geom: BaseSurfaceData | None = None) -> VerticalClass:
    return ch * exp_divisor(d)


def euler_pairing(ch: VerticalClass) -> Fraction:
    """chi = integral of ch . Td(X)."""
    return (ch * todd_X(ch.geom)).s


def gamma_shift(ch: VerticalClass, geom: BaseSurfaceData | None = None) -> VerticalClass:
    g = geom or ch.geom
    return ch - g.one().scale(euler_pairing(ch))


def ch_diagonal_ideal(ch: VerticalClass, geom: BaseSurfaceData | None = None) -> VerticalClass:
    """Degree 0 becomes ch_3 + ch_1 c2(X)/12 - ch_0; every higher slot is negated."""
    g = geom or ch.geom
    top = ch.s + (ch.degree_part(1) * c2_X(g)).s / 12
    return VerticalClass(g, top - ch.r, -ch.x, tuple(-c for c in ch.S),
                         tuple(-c for c in ch.eta), -ch.a, -ch.s)


def _pairings(ch: VerticalClass, g: BaseSurfaceData):
    c1 = g.c1_class()
    c1sq = (g.sigma() * c1 * c1).s
    c1_S = (g.sigma() * c1 * g.pullback(ch.S)).s
    eta_c1 = (g.vclass(eta=ch.eta) * c1).s
    return c1sq, c1_S, eta_c1


def ch_J(ch: VerticalClass, geom: BaseSurfaceData | None = None) -> VerticalClass:
    g = geom or ch.geom
    n, x, S, eta, a, s = ch.slots()
    c1sq, c1_S, eta_c1 = _pairings(ch, g)
    return g.vclass(
        r=euler_pairing(ch) - x,
        S=[-n * c - e + x * c / 2 for c, e in zip(g.c1, eta)],
        a=(Fraction(n) / 2 - Fraction(x) / 12) * c1sq - c1_S + eta_c1 / 2 - s,
    )


def ch_fibre_ideal(ch: VerticalClass, geom: BaseSurfaceData | None = None) -> VerticalClass:
    g = geom or ch.geom
    n, x, S, eta, a, s = ch.slots()
    c1sq, c1_S, eta_c1 = _pairings(ch, g)
    return g.vclass(
        r=x - n,
        x=-x,
        S=[-t + (n - x / 2) * c + e for t, c, e in zip(S, g.c1, eta)],
        eta=[-e for e in eta],
        a=-a - (Fraction(n) / 2 - Fraction(x) / 12) * c1sq + c1_S - eta_c1 / 2 + s,
        s=-s,
    )


@dataclass(frozen=True)
class FactorizationSteps:
    g_charge: VerticalClass   # V (x) O(sigma)
    ideal_image: VerticalClass
    after_sigma: VerticalClass
    result: VerticalClass


def factor_inverse_fm_steps(ch: VerticalClass, geom: BaseSurfaceData | None = None) -> FactorizationSteps:
    g = geom or ch.geom
    sigma = g.sigma()
    g_charge = line_bundle_twist(ch, sigma)
    ideal_image = ch_fibre_ideal(g_charge, g)
    after_sigma = line_bundle_twist(ideal_image, sigma)
    result = line_bundle_twist(after_sigma, g.c1_class().scale(2))
    return FactorizationSteps(g_charge, ideal_image, after_sigma, result)


def factor_inverse_fm(ch: VerticalClass, geom: BaseSurfaceData | None = None) -> VerticalClass:
    return factor_inverse_fm_steps(ch, geom).result


def ch_g_table(ch: VerticalClass, geom: BaseSurfaceData | None = None) -> VerticalClass:
    """Component formulas for ch(V (x) O(sigma)), written out slot by slot."""
    g = geom or ch.geom
    n, x, S, eta, a, s = ch.slots()
    c1sq, c1_S, eta_c1 = _pairings(ch, g)
    return g.vclass(
        r=n, x=x + n, S=S,
        eta=[e - n * c / 2 + t - x * c for e, c, t in zip(eta, g.c1, S)],
        a=a,
        s=s - eta_c1 + a + x * c1sq / 2 - c1_S / 2 + n * c1sq / 6,
    )


KernelKind = Literal["diagonal_twist", "diagonal_ideal", "fibre_ideal", "fibre_ideal_complement"]


@dataclass(frozen=True)
class KernelDescriptor:
    kind: KernelKind
    divisor: VerticalClass | None = None

    def apply(self, ch: VerticalClass) -> VerticalClass:
        if self.kind == "diagonal_twist":
            d = self.divisor if self.divisor is not None else ch.geom.zero()
            return line_bundle_twist(ch, d)
        if self.kind == "diagonal_ideal":
            return ch_diagonal_ideal(ch)
        if self.kind == "fibre_ideal":
            return ch_fibre_ideal(ch)
        if self.kind == "fibre_ideal_complement":
            return ch_J(ch)
        raise ValueError(f"unknown kernel kind {self.kind!r}")

"""Spectral-cover charges: ch(i_*L) on the cover and ch(V) of the associated bundle.

Pushforwards from the cover C = n sigma + eta are realized in the vertical ring
as multiplication by C, followed by reading off a slot.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chow import BaseSurfaceData, BaseClass, VerticalClass, exp_divisor, todd_N
from .exact import Scalar, rational
from .transforms import m_apply


class SpectralDataError(ValueError):
    pass


@dataclass(frozen=True)
class SpectralData:
    n: int
    eta: BaseClass
    lam: Fraction

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise SpectralDataError(f"cover degree must be a nonnegative integer, got {self.n}")
        lam = rational(self.lam)
        if (2 * lam).denominator != 1:
            raise SpectralDataError(f"lambda must be half-integral, got {lam}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "eta", tuple(rational(c) for c in self.eta))

    @classmethod
    def of(cls, n: int, eta: Sequence[Scalar], lam: Scalar) -> "SpectralData":
        return cls(n, tuple(eta), rational(lam))


def cover_class(sd: SpectralData, geom: BaseSurfaceData) -> VerticalClass:
    return geom.sigma().scale(sd.n) + geom.pullback(sd.eta)


def gamma_class(sd: SpectralData, geom: BaseSurfaceData) -> VerticalClass:
    """lambda (n sigma - eta + n c1)."""
    g = geom
    return (g.sigma().scale(sd.n) - g.pullback(sd.eta) + g.c1_class().scale(sd.n)).scale(sd.lam)


def ch_spectral_sheaf(sd: SpectralData, geom: BaseSurfaceData) -> VerticalClass:
    g = geom
    c = cover_class(sd, g)
    gam = gamma_class(sd, g)
    c1 = g.c1_class()
    deg1 = c1.scale(Fraction(1, 2)) + gam
    deg2 = (c * c + (c1 * c1).scale(3)).scale(Fraction(1, 24)) + (gam * (c1 + gam)).scale(Fraction(1, 2))
    return c + c * deg1 + c * deg2


def ch_bundle_from_spectral(sd: SpectralData, geom: BaseSurfaceData) -> VerticalClass:
    g = geom
    c = cover_class(sd, g)
    gam = gamma_class(sd, g)
    pushed = (c * ((c * c).scale(Fraction(1, 24)) + (gam * gam).scale(Fraction(1, 2)))).s
    eta = g.pullback(sd.eta)
    eta_minus = eta - g.c1_class().scale(sd.n)
    return g.vclass(r=sd.n, eta=[-e for e in sd.eta],
                    a=pushed - Fraction(sd.n, 24) * g.c1_squared(),
                    s=sd.lam * (eta * eta_minus).a)


def t_question_charge(sd: SpectralData, geom: BaseSurfaceData) -> VerticalClass:
    """ch(i_*L (x) K_B^{1/2}): the naive K3-style T functor applied to i_*L."""
    return ch_spectral_sheaf(sd, geom) * exp_divisor(geom.c1_class().scale(Fraction(-1, 2)))


def amended_t_charge(sd: SpectralData, geom: BaseSurfaceData) -> VerticalClass:
    return ch_spectral_sheaf(sd, geom) * todd_N(geom)


def _mismatch(image: VerticalClass, sd: SpectralData, geom: BaseSurfaceData) -> Fraction:
    return m_apply(image).a - ch_bundle_from_spectral(sd, geom).a


def t_question_mismatch(sd: SpectralData, geom: BaseSurfaceData) -> Fraction:
    return _mismatch(t_question_charge(sd, geom), sd, geom)


def amended_t_mismatch(sd: SpectralData, geom: BaseSurfaceData) -> Fraction:
    return _mismatch(amended_t_charge(sd, geom), sd, geom)

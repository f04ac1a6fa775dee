"""Vertical cohomology of the fibre square Y = X x_B X and a GRR pushforward engine.

Every class is kept in the canonical form

    p2^*(A0) + sigma_1 * p2^*(A1) + Delta * p2^*(D)

where sigma_1 = p1^*(sigma), Delta is the diagonal and A0, A1, D are vertical
classes on X.  Pullbacks from B agree under p1 and p2, so only sigma_1 is a new
generator; it obeys the same rule sigma_1^2 = -sigma_1 c1 as on X.  On the
diagonal p1^* = p2^*, and Delta * Delta = -Delta * c1 because the normal bundle
of the diagonal is the relative tangent bundle, with c1(T_{X/B}) = -c1.

This ring is the independent oracle against which the closed-form transforms
in :mod:`fmcalc.transforms` are tested.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Literal

from .chow import (BaseSurfaceData, VerticalClass, series_inverse,
                   series_sqrt, todd_rel, todd_X)
from .exact import Scalar


def _base_part(v: VerticalClass) -> VerticalClass:
    """pi^* pi_* v, written as a class on X."""
    return v.geom.vclass(r=v.x, S=v.eta, a=v.s)


@dataclass(frozen=True)
class FibreSquareClass:
    plain0: VerticalClass
    plain1: VerticalClass
    diag: VerticalClass

    @property
    def geom(self) -> BaseSurfaceData:
        return self.plain0.geom

    @classmethod
    def zero(cls, geom: BaseSurfaceData) -> "FibreSquareClass":
        z = geom.zero()
        return cls(z, z, z)

    @classmethod
    def one(cls, geom: BaseSurfaceData) -> "FibreSquareClass":
        z = geom.zero()
        return cls(geom.one(), z, z)

    @classmethod
    def diagonal(cls, geom: BaseSurfaceData, w: VerticalClass | None = None) -> "FibreSquareClass":
        z = geom.zero()
        return cls(z, z, geom.one() if w is None else w)

    @classmethod
    def sigma1(cls, geom: BaseSurfaceData) -> "FibreSquareClass":
        z = geom.zero()
        return cls(z, geom.one(), z)

    def __add__(self, other: "FibreSquareClass") -> "FibreSquareClass":
        return FibreSquareClass(self.plain0 + other.plain0, self.plain1 + other.plain1,
                                self.diag + other.diag)

    def __neg__(self) -> "FibreSquareClass":
        return self.scale(-1)

    def __sub__(self, other: "FibreSquareClass") -> "FibreSquareClass":
        return self + (-other)

    def scale(self, c: Scalar) -> "FibreSquareClass":
        return FibreSquareClass(self.plain0.scale(c), self.plain1.scale(c), self.diag.scale(c))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return fs_mul(self, other)

    def is_zero(self) -> bool:
        return self.plain0.is_zero() and self.plain1.is_zero() and self.diag.is_zero()

    def degree_part(self, d: int) -> "FibreSquareClass":
        return FibreSquareClass(self.plain0.degree_part(d), self.plain1.degree_part(d - 1),
                                self.diag.degree_part(d - 1))

    def signed_by_degree(self) -> "FibreSquareClass":
        """Multiply the degree-k part by (-1)^k (Y has dimension 4)."""
        return FibreSquareClass(self.plain0.signed_by_degree(),
                                -self.plain1.signed_by_degree(),
                                -self.diag.signed_by_degree())


def fs_mul(u: FibreSquareClass, v: FibreSquareClass) -> FibreSquareClass:
    g = u.geom
    c1 = g.c1_class()
    a0, a1, d = u.plain0, u.plain1, u.diag
    b0, b1, e = v.plain0, v.plain1, v.diag
    sig = g.sigma()
    plain0 = a0 * b0
    plain1 = a0 * b1 + a1 * b0 - c1 * a1 * b1
    diag = (a0 + sig * a1) * e + d * (b0 + sig * b1) - c1 * d * e
    return FibreSquareClass(plain0, plain1, diag)


def pull1(v: VerticalClass) -> FibreSquareClass:
    g = v.geom
    return FibreSquareClass(g.vclass(r=v.r, S=v.S, a=v.a), g.vclass(r=v.x, S=v.eta, a=v.s), g.zero())


def pull2(v: VerticalClass) -> FibreSquareClass:
    g = v.geom
    return FibreSquareClass(v, g.zero(), g.zero())


def push1(c: FibreSquareClass) -> VerticalClass:
    g = c.geom
    return _base_part(c.plain0) + g.sigma() * _base_part(c.plain1) + c.diag


def push2(c: FibreSquareClass) -> VerticalClass:
    return c.plain1 + c.diag


def fs_exp(d: FibreSquareClass) -> FibreSquareClass:
    g = d.geom
    out, power = FibreSquareClass.one(g), FibreSquareClass.one(g)
    fact = Fraction(1)
    for k in range(1, 5):
        power = power * d
        fact *= k
        out = out + power.scale(1 / fact)
    return out


def fs_series_inverse(c: FibreSquareClass) -> FibreSquareClass:
    g = c.geom
    u = c - FibreSquareClass.one(g)
    out, power = FibreSquareClass.one(g), FibreSquareClass.one(g)
    for k in range(1, 5):
        power = power * u
        out = out + power.scale((-1) ** k)
    return out


@lru_cache(maxsize=64)
def ch_diagonal_structure_sheaf(geom: BaseSurfaceData) -> FibreSquareClass:
    """ch(delta_* O_X) from Riemann-Roch: Delta * p2^*(Td(T_{X/B})^{-1})."""
    return FibreSquareClass.diagonal(geom, series_inverse(todd_rel(geom)))


def ch_diagonal_structure_sheaf_grr(geom: BaseSurfaceData) -> FibreSquareClass:
    """The same class computed by dividing delta_*(Td X) by Td(Y) inside the ring."""
    td_y = pull2(todd_X(geom)) * pull1(todd_rel(geom))
    return FibreSquareClass.diagonal(geom, todd_X(geom)) * fs_series_inverse(td_y)


@lru_cache(maxsize=64)
def ch_ideal(geom: BaseSurfaceData) -> FibreSquareClass:
    """ch of the ideal sheaf of the diagonal, as the closed expression."""
    g = geom
    c1 = g.c1
    c1sq = g.c1_squared()
    diag = g.vclass(r=-1, S=[Fraction(-1, 2) * c for c in c1], eta=c1,
                    a=Fraction(5, 6) * c1sq, s=c1sq / 2)
    return FibreSquareClass(g.one(), g.zero(), diag)


def ch_ideal_dual(geom: BaseSurfaceData) -> FibreSquareClass:
    return ch_ideal(geom).signed_by_degree()


@lru_cache(maxsize=64)
def ch_poincare(geom: BaseSurfaceData) -> FibreSquareClass:
    g = geom
    sigma2 = pull2(g.sigma())
    c1 = pull2(g.c1_class())
    return (ch_ideal_dual(g) * fs_exp(-FibreSquareClass.sigma1(g))
            * fs_exp(-sigma2) * fs_exp(-c1))


@lru_cache(maxsize=64)
def ch_inverse_kernel(geom: BaseSurfaceData) -> FibreSquareClass:
    """Kernel of the inverse transform: the dual of P twisted by q^* K_B^{-1}."""
    return ch_poincare(geom).signed_by_degree() * fs_exp(pull2(geom.c1_class()))


Direction = Literal["forward", "inverse"]


def grr_transform(ch_in: VerticalClass, kernel: FibreSquareClass,
                  direction: Direction, geom: BaseSurfaceData | None = None) -> VerticalClass:
    """Charge-level integral transform computed by Grothendieck-Riemann-Roch.

    forward:  p1_*(p2^* ch . kernel . p2^* Td(T_{X/B}))
    inverse:  p2_*(p1^* ch . kernel . p1^* Td(T_{X/B}))
    """
    return (push1 if direction == "forward" else push2)(
        _pull(direction)(ch_in) * _kernel_with_todd(kernel, direction))


def _pull(direction: str):
    if direction == "forward":
        return pull2
    if direction == "inverse":
        return pull1
    raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")


@lru_cache(maxsize=64)
def _kernel_with_todd(kernel: FibreSquareClass, direction: str) -> FibreSquareClass:
    return kernel * _pull(direction)(todd_rel(kernel.geom))


def grr_transform_misplaced_todd(ch_in: VerticalClass, kernel: FibreSquareClass) -> VerticalClass:
    """Forward transform with the relative Todd class pulled back along p1 instead.

    Kept so the test suite can show this placement disagrees with the closed form.
    """
    return push1(pull2(ch_in) * kernel * pull1(todd_rel(ch_in.geom)))


def f_map(x: VerticalClass, variant: Literal["relative", "absolute"],
          geom: BaseSurfaceData | None = None) -> VerticalClass:
    return push1(pull2(x) * _f_kernel(geom or x.geom, variant))


@lru_cache(maxsize=64)
def _f_kernel(g: BaseSurfaceData, variant: str) -> FibreSquareClass:
    td = todd_rel(g) if variant == "relative" else todd_X(g) if variant == "absolute" else None
    if td is None:
        raise ValueError(f"variant must be 'relative' or 'absolute', got {variant!r}")
    root = series_sqrt(td)
    return pull2(root) * ch_poincare(g) * pull1(root)


def diagonal_kernel(geom: BaseSurfaceData) -> FibreSquareClass:
    return ch_diagonal_structure_sheaf(geom)

"""Index and moduli-dimension formulas, evaluated on numbers already paired in the ring."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chow import BaseSurfaceData, VerticalClass
from .exact import MultiPoly, Scalar, rational
from .models import BPSCharge, ModelDefinition


class PreconditionError(ValueError):
    pass


class ParityError(ValueError):
    pass


def serre_index() -> Fraction:
    """sum_i (-1)^i h^i(End V) on a Calabi-Yau threefold; zero by Serre duality."""
    return Fraction(0)


def c2_fixed_point_sum(S2: Scalar, eta_c1: Scalar, a: Scalar) -> Fraction:
    """2*S2 + eta_c1 - 4a, where S2 is the sigma-component of ch1^2."""
    return 2 * rational(S2) + rational(eta_c1) - 4 * rational(a)


def dim_moduli_tau(rank: Scalar, c2sum: Scalar, h10: int) -> Fraction:
    return rational(rank) - rational(c2sum) + 2 * h10


def dim_moduli_deg18(n: BPSCharge) -> Fraction:
    if n.n4_1 != 0:
        raise PreconditionError("the dimension formula assumes n4^1 = 0")
    return n.n6 - 3 * n.n2_2 + 6 * n.n4_2 + 4 * n.n2_1 - 2 * n.n4_2 ** 2


def fmw_bps_dictionary(rank: int, a: int) -> BPSCharge:
    if rank <= 0 or rank % 2:
        raise ParityError(f"rank must be even and positive, got {rank}")
    if a % 2 == 0:
        raise ParityError(f"a must be odd, got {a}")
    n2_1 = Fraction(3 * (rank ** 3 - rank) + 9 * a * (a - rank) * rank, 8)
    return BPSCharge.of(rank, 0, 0, 0, n2_1, -3 * a)


def c2_fmw(rank: int, eta: Sequence[Scalar], geom: BaseSurfaceData) -> VerticalClass:
    """eta*sigma - (n^3 - n)/24 c1^2 - (n/8) eta (eta - n c1), all fibre terms as numbers."""
    g = geom
    eta_v = g.base(eta)
    eta_minus = tuple(e - rank * c for e, c in zip(eta_v, g.c1))
    fibre = (-Fraction(rank ** 3 - rank, 24) * g.c1_squared()
             - Fraction(rank, 8) * g.pairing(eta_v, eta_minus))
    return g.vclass(eta=eta_v, a=fibre)


@dataclass(frozen=True)
class HodgeInput:
    h01: int
    h20: int
    h10: int

    def __post_init__(self):
        for name in ("h01", "h20", "h10"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


@dataclass(frozen=True)
class ExtDimensions:
    ext1_on_cover: int
    ext1_on_X: int
    h1_endV: int


def ext_dimensions(h: HodgeInput) -> ExtDimensions:
    return ExtDimensions(h.h01, h.h01 + h.h20, h.h20 + h.h10)


def duy_constraint(m: ModelDefinition, n: BPSCharge) -> MultiPoly:
    """integral of t^2 . ch1 for ch1 = n4^2 L, t = t1 K1 + t2 K2."""
    if n.n4_1 != 0:
        raise PreconditionError("the stability constraint is stated for n4^1 = 0")
    t = m.kahler_coords()
    from .models import _triple_poly
    return _triple_poly(m, t, t, (0, n.n4_2))

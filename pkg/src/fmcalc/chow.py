"""Vertical cohomology of an elliptic Calabi-Yau threefold with section.

A class is stored in six slots ``(r, x, S, eta, a, s)``::

    r + (x*sigma + pi^*S) + (sigma*pi^*eta + a*F) + s*pt

with ``S`` and ``eta`` coefficient vectors over a basis of H^2(B).  The ring
structure only needs the intersection form of the base and ``c1(B)``::

    sigma^2 = -sigma*pi^*c1,  sigma*F = pt,  pi^*A*pi^*B = (A.B) F,  F^2 = 0.

The K3 analogue (slots H^0, sigma, F, H^4) is :class:`K3Class`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

from .exact import RMatrix, Scalar, rational

BaseClass = tuple  # tuple[Fraction, ...] over the basis of H^2(B)

# Section self-intersection on an elliptic K3 with section (a (-2)-curve).
K3_SECTION_SQUARE = Fraction(-2)


class GeometryError(ValueError):
    pass


class SeriesError(ValueError):
    pass


class GradingError(ValueError):
    pass


def _vec(values: Sequence[Scalar]) -> tuple[Fraction, ...]:
    return tuple(rational(v) for v in values)


@dataclass(frozen=True)
class BaseSurfaceData:
    """Numerical data of the base surface B."""

    basis_labels: tuple[str, ...]
    intersection_form: tuple[tuple[Fraction, ...], ...]
    c1: tuple[Fraction, ...]
    c2: Fraction
    name: str = "B"

    def __post_init__(self):
        k = len(self.basis_labels)
        form = tuple(_vec(row) for row in self.intersection_form)
        if len(form) != k or any(len(row) != k for row in form):
            raise GeometryError("intersection form must be k x k for k basis labels")
        if any(form[i][j] != form[j][i] for i in range(k) for j in range(k)):
            raise GeometryError("intersection form must be symmetric")
        if len(self.c1) != k:
            raise GeometryError("c1 needs one coefficient per basis element")
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))
        object.__setattr__(self, "intersection_form", form)
        object.__setattr__(self, "c1", _vec(self.c1))
        object.__setattr__(self, "c2", rational(self.c2))
        entries = tuple((i, j, q) for i, row in enumerate(form) for j, q in enumerate(row) if q)
        object.__setattr__(self, "_form_entries", entries)

    @property
    def rank(self) -> int:
        return len(self.basis_labels)

    def pairing(self, alpha: Sequence[Fraction], beta: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for i, j, q in self._form_entries:
            if alpha[i] and beta[j]:
                total += alpha[i] * q * beta[j]
        return total

    def zero_base(self) -> BaseClass:
        return (Fraction(0),) * self.rank

    def base(self, values: Sequence[Scalar]) -> BaseClass:
        v = _vec(values)
        if len(v) != self.rank:
            raise GeometryError(f"base class needs {self.rank} coefficients, got {len(v)}")
        return v

    def form_matrix(self) -> RMatrix:
        return RMatrix.from_rows(self.intersection_form)

    # --- distinguished vertical classes -------------------------------------------------
    def vclass(self, r=0, x=0, S=None, eta=None, a=0, s=0) -> "VerticalClass":
        return VerticalClass(self, rational(r), rational(x),
                             self.zero_base() if S is None else self.base(S),
                             self.zero_base() if eta is None else self.base(eta),
                             rational(a), rational(s))

    def one(self) -> "VerticalClass":
        return self.vclass(r=1)

    def zero(self) -> "VerticalClass":
        return self.vclass()

    def sigma(self) -> "VerticalClass":
        return self.vclass(x=1)

    def fibre(self) -> "VerticalClass":
        return self.vclass(a=1)

    def point(self) -> "VerticalClass":
        return self.vclass(s=1)

    def pullback(self, alpha: Sequence[Scalar]) -> "VerticalClass":
        """pi^* of a class in H^2(B)."""
        return self.vclass(S=alpha)

    def pullback_top(self, number: Scalar) -> "VerticalClass":
        """pi^* of ``number`` times the point class of B, i.e. a multiple of F."""
        return self.vclass(a=number)

    def c1_class(self) -> "VerticalClass":
        return self.pullback(self.c1)

    def c1_squared(self) -> Fraction:
        return self.pairing(self.c1, self.c1)


def projective_plane() -> BaseSurfaceData:
    """B = P^2 with hyperplane class l: l^2 = 1, c1 = 3l, c2 = 3."""
    return BaseSurfaceData(("l",), ((1,),), (3,), 3, name="P2")


@dataclass(frozen=True)
class VerticalClass:
    geom: BaseSurfaceData = field(repr=False, compare=True)
    r: Fraction
    x: Fraction
    S: BaseClass
    eta: BaseClass
    a: Fraction
    s: Fraction

    def _check(self, other: "VerticalClass") -> None:
        if not isinstance(other, VerticalClass):
            raise TypeError(f"expected VerticalClass, got {type(other).__name__}")
        if other.geom is not self.geom and other.geom != self.geom:
            raise GeometryError("classes live over different base surfaces")

    def slots(self) -> tuple:
        return (self.r, self.x, self.S, self.eta, self.a, self.s)

    def __add__(self, other: "VerticalClass") -> "VerticalClass":
        self._check(other)
        return VerticalClass(self.geom, self.r + other.r, self.x + other.x,
                             _add(self.S, other.S), _add(self.eta, other.eta),
                             self.a + other.a, self.s + other.s)

    def __neg__(self) -> "VerticalClass":
        return self.scale(-1)

    def __sub__(self, other: "VerticalClass") -> "VerticalClass":
        return self + (-other)

    def scale(self, c: Scalar) -> "VerticalClass":
        c = rational(c)
        return VerticalClass(self.geom, c * self.r, c * self.x, _mul(c, self.S),
                             _mul(c, self.eta), c * self.a, c * self.s)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return vmul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "VerticalClass":
        out = self.geom.one()
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not (self.r or self.x or any(self.S) or any(self.eta) or self.a or self.s)

    def degree_part(self, d: int) -> "VerticalClass":
        g = self.geom
        if d == 0:
            return g.vclass(r=self.r)
        if d == 1:
            return g.vclass(x=self.x, S=self.S)
        if d == 2:
            return g.vclass(eta=self.eta, a=self.a)
        if d == 3:
            return g.vclass(s=self.s)
        return g.zero()

    def degrees(self) -> set[int]:
        return {d for d in range(4) if not self.degree_part(d).is_zero()}

    def signed_by_degree(self) -> "VerticalClass":
        """Multiply the degree-k part by (-1)^k."""
        return VerticalClass(self.geom, self.r, -self.x, _mul(-1, self.S), self.eta, self.a, -self.s)


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _mul(c, u):
    return tuple(c * a for a in u)


def vmul(u: VerticalClass, v: VerticalClass) -> VerticalClass:
    u._check(v)
    g = u.geom
    pair = g.pairing
    c1 = g.c1
    n, x, S, e, a, s = u.slots()
    m, y, T, f, b, t = v.slots()
    eta = _add(_add(_mul(n, f), _mul(m, e)), _add(_add(_mul(x, T), _mul(y, S)), _mul(-x * y, c1)))
    fib = n * b + m * a + pair(S, T)
    top = (n * t + m * s
           + x * b + pair(S, f) - x * pair(c1, f)
           + y * a + pair(T, e) - y * pair(c1, e))
    return VerticalClass(g, n * m, n * y + m * x, _add(_mul(n, T), _mul(m, S)), eta, fib, top)


def integrate(v: VerticalClass) -> Fraction:
    return v.s


def pi_pushforward(v: VerticalClass) -> tuple[Fraction, BaseClass, Fraction]:
    """pi_* to the base: (H^0(B) scalar, H^2(B) class, H^4(B) number)."""
    return v.x, v.eta, v.s


def pi_pullback(h0: Scalar, h2: Sequence[Scalar], h4: Scalar, geom: BaseSurfaceData) -> VerticalClass:
    return geom.vclass(r=h0, S=h2, a=h4)


@lru_cache(maxsize=64)
def todd_X(geom: BaseSurfaceData) -> VerticalClass:
    """Td(X) = 1 + (c2 + 11 c1^2 + 12 sigma c1)/12 for a Weierstrass Calabi-Yau."""
    return geom.vclass(r=1, eta=_mul(Fraction(1), geom.c1),
                       a=(geom.c2 + 11 * geom.c1_squared()) / 12)


@lru_cache(maxsize=64)
def c2_X(geom: BaseSurfaceData) -> VerticalClass:
    return geom.vclass(eta=_mul(12, geom.c1), a=geom.c2 + 11 * geom.c1_squared())


@lru_cache(maxsize=64)
def todd_base(geom: BaseSurfaceData) -> VerticalClass:
    """pi^* Td(B) = 1 + c1/2 + (c1^2 + c2)/12."""
    return geom.vclass(r=1, S=_mul(Fraction(1, 2), geom.c1), a=(geom.c1_squared() + geom.c2) / 12)


@lru_cache(maxsize=64)
def todd_rel(geom: BaseSurfaceData) -> VerticalClass:
    """Td(T_{X/B}) = 1 - c1/2 + (13 c1^2 + 12 sigma c1)/12 - sigma c1^2 / 2."""
    c1sq = geom.c1_squared()
    return geom.vclass(r=1, S=_mul(Fraction(-1, 2), geom.c1), eta=geom.c1,
                       a=Fraction(13, 12) * c1sq, s=-c1sq / 2)


@lru_cache(maxsize=64)
def todd_N(geom: BaseSurfaceData) -> VerticalClass:
    """Td(N) = 1 - c1/2 + c1^2/12, N the normal bundle of the section."""
    return geom.vclass(r=1, S=_mul(Fraction(-1, 2), geom.c1), a=geom.c1_squared() / 12)


@lru_cache(maxsize=64)
def todd_N_inverse_bundle(geom: BaseSurfaceData) -> VerticalClass:
    """Td(N^{-1}) = 1 + c1/2 + c1^2/12."""
    return geom.vclass(r=1, S=_mul(Fraction(1, 2), geom.c1), a=geom.c1_squared() / 12)


def _unit_part(v: VerticalClass) -> VerticalClass:
    if v.r != 1:
        raise SeriesError(f"series operations need degree-0 part 1, got {v.r}")
    return v - v.geom.one()


def series_inverse(v: VerticalClass) -> VerticalClass:
    u = _unit_part(v)
    g = v.geom
    out, power = g.one(), g.one()
    for k in range(1, 4):
        power = power * u
        out = out + power.scale((-1) ** k)
    return out


def series_sqrt(v: VerticalClass) -> VerticalClass:
    u = _unit_part(v)
    g = v.geom
    # binomial coefficients of (1+u)^(1/2): 1, 1/2, -1/8, 1/16
    coeffs = (Fraction(1), Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16))
    out, power = g.one(), g.one()
    for c in coeffs[1:]:
        power = power * u
        out = out + power.scale(c)
    return out


def exp_divisor(d: VerticalClass) -> VerticalClass:
    if d.degrees() - {1}:
        raise GradingError("exp_divisor needs a purely degree-2 class")
    g = d.geom
    d2 = d * d
    return g.one() + d + d2.scale(Fraction(1, 2)) + (d2 * d).scale(Fraction(1, 6))


@dataclass(frozen=True)
class K3Class:
    """Vertical class on an elliptic K3: slots (H^0, sigma, F, H^4)."""

    r: Fraction
    sigma: Fraction
    f: Fraction
    s: Fraction

    @classmethod
    def of(cls, r=0, sigma=0, f=0, s=0) -> "K3Class":
        return cls(rational(r), rational(sigma), rational(f), rational(s))

    def as_tuple(self) -> tuple[Fraction, ...]:
        return (self.r, self.sigma, self.f, self.s)

    def __add__(self, other: "K3Class") -> "K3Class":
        return K3Class(*(a + b for a, b in zip(self.as_tuple(), other.as_tuple())))

    def __mul__(self, other: "K3Class") -> "K3Class":
        n, x, k, s = self.as_tuple()
        m, y, l, t = other.as_tuple()
        top = n * t + m * s + x * y * K3_SECTION_SQUARE + x * l + k * y
        return K3Class(n * m, n * y + m * x, n * l + m * k, top)

"""Independent model of the vertical ring as a sympy quotient ring.

Generators: sigma, pulled-back base divisors h_i and the pulled-back point p = F.
Relations: h_i h_j = Q_ij p, h_i p = p^2 = 0, sigma^2 = -sigma c1.
"""
from __future__ import annotations

from fractions import Fraction

import sympy

from fmcalc.chow import BaseSurfaceData, VerticalClass


def _q(x: Fraction) -> sympy.Rational:
    return sympy.Rational(x.numerator, x.denominator)


class RingOracle:
    def __init__(self, geom: BaseSurfaceData):
        self.geom = geom
        k = geom.rank
        self.sigma = sympy.Symbol("sigma")
        self.p = sympy.Symbol("p")
        self.h = sympy.symbols(f"h0:{k}")
        self.gens = (self.sigma, *self.h, self.p)
        c1 = sum(_q(c) * h for c, h in zip(geom.c1, self.h))
        rels = [self.sigma ** 2 + self.sigma * c1, self.p ** 2]
        rels += [h * self.p for h in self.h]
        rels += [self.h[i] * self.h[j] - _q(geom.intersection_form[i][j]) * self.p
                 for i in range(k) for j in range(i, k)]
        self.basis = sympy.groebner(rels, *self.gens, order="grevlex", domain="QQ")

    def to_expr(self, v: VerticalClass):
        s, p = self.sigma, self.p
        return (_q(v.r) + _q(v.x) * s + sum(_q(c) * h for c, h in zip(v.S, self.h))
                + s * sum(_q(c) * h for c, h in zip(v.eta, self.h)) + _q(v.a) * p + _q(v.s) * s * p)

    def reduce(self, expr):
        return self.basis.reduce(sympy.expand(expr))[1]

    def from_expr(self, expr) -> VerticalClass:
        poly = sympy.Poly(self.reduce(expr), *self.gens)
        k = self.geom.rank
        r = x = a = s = Fraction(0)
        S, eta = [Fraction(0)] * k, [Fraction(0)] * k
        for monom, c in poly.terms():
            c = Fraction(int(c.p), int(c.q))
            e_sig, e_h, e_p = monom[0], monom[1:1 + k], monom[-1]
            if sum(e_h) > 1 or e_sig > 1 or e_p > 1 or (e_p and any(e_h)):
                raise AssertionError(f"unreduced monomial {monom}")
            i = e_h.index(1) if any(e_h) else None
            if e_p:
                if e_sig:
                    s += c
                else:
                    a += c
            elif i is None:
                if e_sig:
                    x += c
                else:
                    r += c
            elif e_sig:
                eta[i] += c
            else:
                S[i] += c
        return self.geom.vclass(r, x, S, eta, a, s)

    def product(self, u: VerticalClass, v: VerticalClass) -> VerticalClass:
        return self.from_expr(self.to_expr(u) * self.to_expr(v))

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fmcalc.exact import (InconsistentSystemError, MultiPoly, RMatrix, ShapeError,
                          SingularMatrixError, format_rational, linear_solve, mat_inverse,
                          mat_mul, poly_shift, rational)
from strategies import fractions, matrices, polys

t1, t2 = sympy.symbols("t1 t2")


def _to_sympy(m: RMatrix) -> sympy.Matrix:
    return sympy.Matrix(m.rows, m.cols, [sympy.Rational(e.numerator, e.denominator) for e in m.entries])


def _from_sympy(m: sympy.Matrix) -> RMatrix:
    return RMatrix(m.rows, m.cols, [Fraction(int(e.p), int(e.q)) for e in m])


def _poly_to_sympy(p: MultiPoly):
    return sum((sympy.Rational(c.numerator, c.denominator) * t1 ** i * t2 ** j
                for (i, j), c in p.terms.items()), sympy.Integer(0))


def _poly_from_sympy(expr) -> MultiPoly:
    poly = sympy.Poly(sympy.expand(expr), t1, t2)
    return MultiPoly({m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


def test_rational_coercion():
    assert rational(3) == Fraction(3)
    assert rational("-5/6") == Fraction(-5, 6)
    assert rational(Fraction(1, 2)) == Fraction(1, 2)
    with pytest.raises(TypeError):
        rational(0.5)
    with pytest.raises(TypeError):
        rational(True)


def test_format_rational():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 9)) == "-1/3"


def test_shape_errors():
    with pytest.raises(ShapeError):
        RMatrix(2, 2, [1, 2, 3])
    with pytest.raises(ShapeError):
        RMatrix.identity(2) @ RMatrix.identity(3)
    with pytest.raises(ShapeError):
        mat_inverse(RMatrix.zeros(2, 3))


def test_matrix_is_immutable():
    m = RMatrix.identity(2)
    with pytest.raises(AttributeError):
        m.rows = 3
    assert m.with_entry(0, 1, 5)[0, 1] == 5 and m[0, 1] == 0


def test_singular_inverse_names_column():
    m = RMatrix.from_rows([[1, 2], [2, 4]])
    with pytest.raises(SingularMatrixError, match="column 1"):
        mat_inverse(m)


def test_linear_solve_overdetermined():
    a = RMatrix.from_rows([[1, 0], [0, 1], [1, 1]])
    x = linear_solve(a, RMatrix.from_columns([[2, 3, 5]]))
    assert x == RMatrix.from_columns([[2, 3]])
    with pytest.raises(InconsistentSystemError):
        linear_solve(a, RMatrix.from_columns([[2, 3, 6]]))


def test_negative_power_is_inverse_power():
    m = RMatrix.from_rows([[1, 1], [0, 1]])
    assert m ** -3 == RMatrix.from_rows([[1, -3], [0, 1]])
    assert m ** 0 == RMatrix.identity(2)


@settings(max_examples=60, deadline=None)
@given(matrices(4))
def test_inverse_and_determinant_match_sympy(m):
    ref = _to_sympy(m)
    assert m.determinant() == Fraction(int(ref.det()))
    if ref.det() == 0:
        with pytest.raises(SingularMatrixError):
            mat_inverse(m)
    else:
        assert mat_inverse(m) == _from_sympy(ref.inv())


@settings(max_examples=60, deadline=None)
@given(matrices(3, fractions), matrices(3, fractions))
def test_product_matches_sympy(a, b):
    assert mat_mul(a, b) == _from_sympy(_to_sympy(a) * _to_sympy(b))
    assert (a @ b).transpose() == b.T @ a.T


@settings(max_examples=60, deadline=None)
@given(matrices(3), st.lists(fractions, min_size=3, max_size=3))
def test_linear_solve_round_trip(a, x):
    xs = RMatrix.from_columns([x])
    b = a @ xs
    if a.determinant() != 0:
        assert linear_solve(a, b) == xs


@settings(max_examples=80, deadline=None)
@given(polys(), polys())
def test_poly_arithmetic_matches_sympy(p, q):
    assert p * q == _poly_from_sympy(_poly_to_sympy(p) * _poly_to_sympy(q))
    assert p - q == _poly_from_sympy(_poly_to_sympy(p) - _poly_to_sympy(q))
    assert p.derivative("t2") == _poly_from_sympy(sympy.diff(_poly_to_sympy(p), t2))


@settings(max_examples=80, deadline=None)
@given(polys(), fractions)
def test_poly_shift_matches_sympy_and_inverts(p, delta):
    d = sympy.Rational(delta.numerator, delta.denominator)
    assert poly_shift(p, "t1", delta) == _poly_from_sympy(_poly_to_sympy(p).subs(t1, t1 + d))
    assert poly_shift(poly_shift(p, "t2", delta), "t2", -delta) == p


@settings(max_examples=40, deadline=None)
@given(polys(), fractions, fractions)
def test_poly_evaluation(p, a, b):
    expr = _poly_to_sympy(p).subs({t1: sympy.Rational(a.numerator, a.denominator),
                                   t2: sympy.Rational(b.numerator, b.denominator)})
    assert p(a, b) == Fraction(int(sympy.fraction(expr)[0]), int(sympy.fraction(expr)[1]))


def test_poly_unknown_variable():
    with pytest.raises(NameError):
        poly_shift(MultiPoly.var("t1"), "t3", 1)


def test_poly_printing():
    p = MultiPoly.var("t1") ** 2 * MultiPoly.var("t2") - MultiPoly.constant(Fraction(1, 2))
    assert str(p) == "t1^2*t2 - 1/2"
    assert str(MultiPoly()) == "0"

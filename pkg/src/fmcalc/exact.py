"""Exact scalars, small dense rational matrices and two-variable polynomials.

Scalars are :class:`fractions.Fraction`; every value here is immutable and
every operation returns a fresh object.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


class ShapeError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


class InconsistentSystemError(ArithmeticError):
    pass


def rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: nothing in this package is allowed to round.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(q: Fraction) -> str:
    q = rational(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class RMatrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[Scalar]):
        data = tuple(e if type(e) is Fraction else rational(e) for e in entries)
        if len(data) != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries, got {len(data)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("RMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "RMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, 0, ())
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), width, (e for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> "RMatrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "RMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]]) -> "RMatrix":
        return cls.from_rows(columns).transpose()

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def transpose(self) -> "RMatrix":
        return RMatrix(self.cols, self.rows,
                       (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    T = property(transpose)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(e) for e in self.row(i)) for i in range(self.rows))
        return f"RMatrix([{body}])"

    def __add__(self, other: "RMatrix") -> "RMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return RMatrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "RMatrix":
        return RMatrix(self.rows, self.cols, (-a for a in self.entries))

    def __sub__(self, other: "RMatrix") -> "RMatrix":
        return self + (-other)

    def scale(self, c: Scalar) -> "RMatrix":
        c = rational(c)
        return RMatrix(self.rows, self.cols, (c * a for a in self.entries))

    def __matmul__(self, other: "RMatrix") -> "RMatrix":
        return mat_mul(self, other)

    def apply(self, vector: Sequence[Scalar]) -> tuple[Fraction, ...]:
        if len(vector) != self.cols:
            raise ShapeError(f"vector of length {len(vector)} against {self.cols} columns")
        v = [rational(c) for c in vector]
        return tuple(sum((a * b for a, b in zip(self.row(i), v)), Fraction(0)) for i in range(self.rows))

    def __pow__(self, k: int) -> "RMatrix":
        if self.rows != self.cols:
            raise ShapeError("power of a non-square matrix")
        if k < 0:
            return mat_inverse(self) ** (-k)
        result, base = RMatrix.identity(self.rows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def inverse(self) -> "RMatrix":
        return mat_inverse(self)

    def determinant(self) -> Fraction:
        if self.rows != self.cols:
            raise ShapeError("determinant of a non-square matrix")
        a = self.to_rows()
        n, det = self.rows, Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            det *= a[c][c]
            for r in range(c + 1, n):
                f = a[r][c] / a[c][c]
                if f:
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return det

    def trace(self) -> Fraction:
        return sum((self[i, i] for i in range(min(self.shape))), Fraction(0))

    def with_entry(self, i: int, j: int, value: Scalar) -> "RMatrix":
        data = list(self.entries)
        data[i * self.cols + j] = rational(value)
        return RMatrix(self.rows, self.cols, data)

    def is_zero(self) -> bool:
        return not any(self.entries)


def mat_mul(a: RMatrix, b: RMatrix) -> RMatrix:
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    bt = [b.column(j) for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        row = a.row(i)
        for col in bt:
            total = Fraction(0)
            for x, y in zip(row, col):
                if x and y:
                    total += x * y
            out.append(total)
    return RMatrix(a.rows, b.cols, out)


def _reduce(a: list[list[Fraction]], ncols: int) -> list[int]:
    """In-place Gauss-Jordan on the first ``ncols`` columns; returns pivot columns."""
    pivots, r = [], 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return pivots


def mat_inverse(a: RMatrix) -> RMatrix:
    if a.rows != a.cols:
        raise ShapeError(f"cannot invert a {a.rows}x{a.cols} matrix")
    n = a.rows
    work = [list(a.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    pivots = _reduce(work, n)
    if len(pivots) < n:
        missing = next(c for c in range(n) if c not in pivots)
        raise SingularMatrixError(f"zero pivot in column {missing}: matrix is singular")
    return RMatrix(n, n, (x for row in work for x in row[n:]))


def linear_solve(a: RMatrix, b: RMatrix) -> RMatrix:
    """Solve ``a @ x == b`` exactly.

    ``a`` may have more rows than columns; the system must then be consistent
    and have full column rank, otherwise an error is raised.
    """
    if a.rows != b.rows:
        raise ShapeError(f"lhs has {a.rows} rows, rhs has {b.rows}")
    n = a.cols
    work = [list(a.row(i)) + list(b.row(i)) for i in range(a.rows)]
    pivots = _reduce(work, n)
    for row in work[len(pivots):]:
        if any(row[n:]):
            raise InconsistentSystemError("system is inconsistent (zero row with nonzero right-hand side)")
    if len(pivots) < n:
        missing = next(c for c in range(n) if c not in pivots)
        raise SingularMatrixError(f"zero pivot in column {missing}: solution is not unique")
    return RMatrix(n, b.cols, (x for row in work[:n] for x in row[n:]))


VARIABLES = ("t1", "t2")


class MultiPoly:
    """Polynomial in the fixed variables ``t1, t2`` with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], Scalar] | None = None):
        clean = {}
        for exps, c in (terms or {}).items():
            c = rational(c)
            if c:
                clean[(int(exps[0]), int(exps[1]))] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    variables = VARIABLES

    @classmethod
    def constant(cls, c: Scalar) -> "MultiPoly":
        return cls({(0, 0): c})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls({_unit(name): 1})

    def coefficient(self, exps: tuple[int, int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "MultiPoly":
        other = _as_poly(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "MultiPoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "MultiPoly":
        other = _as_poly(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self.terms.items():
            for (k, m), d in other.terms.items():
                key = (i + k, j + m)
                out[key] = out.get(key, Fraction(0)) + c * d
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        result = MultiPoly.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def derivative(self, name: str) -> "MultiPoly":
        idx = _index(name)
        out = {}
        for exps, c in self.terms.items():
            if exps[idx]:
                new = list(exps)
                new[idx] -= 1
                out[tuple(new)] = c * exps[idx]
        return MultiPoly(out)

    def shift(self, name: str, delta: Scalar) -> "MultiPoly":
        return poly_shift(self, name, delta)

    def __call__(self, t1: Scalar, t2: Scalar) -> Fraction:
        t1, t2 = rational(t1), rational(t2)
        return sum((c * t1 ** i * t2 ** j for (i, j), c in self.terms.items()), Fraction(0))

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=lambda e: (-(e[0] + e[1]), -e[0])):
            c = self.terms[(i, j)]
            mono = "*".join(f"{v}^{p}" if p > 1 else v for v, p in zip(VARIABLES, (i, j)) if p)
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _index(name: str) -> int:
    try:
        return VARIABLES.index(name)
    except ValueError:
        raise NameError(f"unknown variable {name!r}; polynomials use {VARIABLES}") from None


def _unit(name: str) -> tuple[int, int]:
    return (1, 0) if _index(name) == 0 else (0, 1)


def _as_poly(x) -> MultiPoly:
    return x if isinstance(x, MultiPoly) else MultiPoly.constant(x)


def poly_shift(p: MultiPoly, var: str, delta: Scalar) -> MultiPoly:
    """Substitute ``var -> var + delta`` and expand."""
    idx = _index(var)
    delta = rational(delta)
    out: dict[tuple[int, int], Fraction] = {}
    for exps, c in p.terms.items():
        k = exps[idx]
        # binomial expansion of (var + delta)^k
        binom = Fraction(1)
        for m in range(k + 1):
            new = list(exps)
            new[idx] = k - m
            key = tuple(new)
            out[key] = out.get(key, Fraction(0)) + c * binom * delta ** m
            binom = binom * (k - m) / (m + 1)
    return MultiPoly(out)

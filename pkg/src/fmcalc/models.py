"""The example models: registry, period vectors, monodromies and charge dictionaries.

Lattice maps act on BPS charges as row vectors, ``n' = n . B``; this is the
convention under which the printed monodromy matrices act on the lattice.
Chern data of a model is the 6-vector

    (rank, ch1 in the divisor basis (2), ch2 in the curve basis (2), ch3)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping, Sequence

import yaml

from .chow import BaseSurfaceData, VerticalClass
from .exact import (MultiPoly, RMatrix, Scalar, SingularMatrixError, format_rational,
                    linear_solve, mat_inverse, poly_shift, rational)
from .kontsevich import gamma_shift as vertical_gamma_shift
from .kontsevich import line_bundle_twist
from .transforms import class_to_vector, vector_to_class

BPS_LABELS = ("n6", "n4_1", "n4_2", "n0", "n2_1", "n2_2")
CHERN_LABELS = ("rank", "ch1_1", "ch1_2", "ch2_1", "ch2_2", "ch3")
CONVENTIONS = ("A", "A^-1", "A^T", "A^-T")


class ModelError(KeyError):
    pass


class ReconciliationError(ValueError):
    def __init__(self, message: str, derived: RMatrix, printed: RMatrix):
        super().__init__(message)
        self.derived = derived
        self.printed = printed


class RankError(ValueError):
    pass


@dataclass(frozen=True)
class BPSCharge:
    n6: Fraction
    n4_1: Fraction
    n4_2: Fraction
    n0: Fraction
    n2_1: Fraction
    n2_2: Fraction

    @classmethod
    def of(cls, *values: Scalar) -> "BPSCharge":
        if len(values) == 1 and not isinstance(values[0], (int, Fraction, str)):
            values = tuple(values[0])
        if len(values) != 6:
            raise ValueError(f"a BPS charge has 6 entries, got {len(values)}")
        return cls(*(rational(v) for v in values))

    def as_tuple(self) -> tuple[Fraction, ...]:
        return (self.n6, self.n4_1, self.n4_2, self.n0, self.n2_1, self.n2_2)


@dataclass(frozen=True)
class ChernData:
    rank: Fraction
    ch1: tuple[Fraction, Fraction]
    ch2: tuple[Fraction, Fraction]
    ch3: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rank", rational(self.rank))
        object.__setattr__(self, "ch1", tuple(rational(c) for c in self.ch1))
        object.__setattr__(self, "ch2", tuple(rational(c) for c in self.ch2))
        object.__setattr__(self, "ch3", rational(self.ch3))

    @classmethod
    def from_vector(cls, v: Sequence[Scalar]) -> "ChernData":
        v = [rational(c) for c in v]
        return cls(v[0], (v[1], v[2]), (v[3], v[4]), v[5])

    def as_vector(self) -> tuple[Fraction, ...]:
        return (self.rank, *self.ch1, *self.ch2, self.ch3)


def _poly(terms: Iterable[Sequence]) -> MultiPoly:
    out: dict[tuple[int, int], Fraction] = {}
    for i, j, c in terms:
        out[(int(i), int(j))] = out.get((int(i), int(j)), Fraction(0)) + rational(c)
    return MultiPoly(out)


def _poly_terms(p: MultiPoly) -> list[list]:
    return [[i, j, _scalar_out(c)] for (i, j), c in sorted(p.terms.items(), reverse=True)]


def _scalar_out(q: Fraction):
    return int(q) if q.denominator == 1 else format_rational(q)


def _matrix(rows) -> RMatrix:
    return RMatrix.from_rows([[rational(c) for c in row] for row in rows])


def _matrix_out(m: RMatrix) -> list[list]:
    return [[_scalar_out(c) for c in m.row(i)] for i in range(m.rows)]


@dataclass(frozen=True)
class ModelDefinition:
    name: str
    description: str
    divisors: tuple[str, str]
    curves: tuple[str, str]
    curve_divisor_pairing: RMatrix  # row j: curve_j paired with each divisor
    triple: Mapping[str, Fraction]
    kahler_basis: Mapping[str, tuple[Fraction, Fraction]]
    dictionary: RMatrix
    matrices: Mapping[str, RMatrix]
    c2_pairings: Mapping[str, Fraction] | None = None
    e_in_kahler: tuple[Fraction, Fraction] | None = None
    prepotential: MultiPoly | None = None
    printed_periods: tuple[MultiPoly, ...] | None = None
    printed_periods_position: str | None = None
    base: BaseSurfaceData | None = None
    extra: Mapping[str, object] = field(default_factory=dict)

    # --- intersection ring of the divisor lattice --------------------------------------
    def triple_product(self, d1: Sequence[Scalar], d2: Sequence[Scalar], d3: Sequence[Scalar]) -> Fraction:
        names = self.divisors
        total = Fraction(0)
        for i, a in enumerate(d1):
            for j, b in enumerate(d2):
                for k, c in enumerate(d3):
                    key = "".join(sorted(names[i] + names[j] + names[k], key=lambda s: names.index(s)))
                    total += rational(a) * rational(b) * rational(c) * self.triple[key]
        return total

    def curve_dot(self, curve: Sequence[Scalar], divisor: Sequence[Scalar]) -> Fraction:
        p = self.curve_divisor_pairing
        return sum((rational(curve[j]) * p[j, k] * rational(divisor[k])
                    for j in range(2) for k in range(2)), Fraction(0))

    def divisor_product(self, d1: Sequence[Scalar], d2: Sequence[Scalar]) -> tuple[Fraction, Fraction]:
        """D1.D2 as a curve class, found from its pairings with the divisor basis."""
        units = ((1, 0), (0, 1))
        rhs = RMatrix.from_rows([[self.triple_product(d1, d2, u)] for u in units])
        coeffs = linear_solve(self.curve_divisor_pairing.transpose(), rhs)
        return coeffs[0, 0], coeffs[1, 0]

    def c2_dot(self, divisor: Sequence[Scalar]) -> Fraction:
        c2 = self.c2_vector()
        return sum((rational(a) * b for a, b in zip(divisor, c2)), Fraction(0))

    def c2_vector(self) -> tuple[Fraction, Fraction]:
        if self.c2_pairings is not None:
            return tuple(self.c2_pairings[d] for d in self.divisors)
        if self.base is None:
            raise ModelError(f"{self.name}: no c2 data")
        from .chow import c2_X
        g = self.base
        c2 = c2_X(g)
        return tuple((c2 * self.divisor_class(u)).s for u in ((1, 0), (0, 1)))

    def divisor_coords(self, name: str) -> tuple[Fraction, Fraction]:
        if name in self.divisors:
            return tuple(Fraction(int(d == name)) for d in self.divisors)
        if name in self.kahler_basis:
            return self.kahler_basis[name]
        raise ModelError(f"{self.name}: unknown divisor {name!r}")

    # --- elliptic models: link to the vertical ring ------------------------------------
    def divisor_class(self, coords: Sequence[Scalar]) -> VerticalClass:
        """For an elliptic model with E = sigma and L = pi^*(line)."""
        if self.base is None:
            raise ModelError(f"{self.name} is not modelled as an elliptic fibration")
        g = self.base
        return g.sigma().scale(coords[0]) + g.pullback([coords[1]])

    def chern_to_vertical(self, chern: ChernData) -> VerticalClass:
        if self.base is None:
            raise ModelError(f"{self.name} is not modelled as an elliptic fibration")
        return vector_to_class(chern.as_vector(), self.base)

    def vertical_to_chern(self, v: VerticalClass) -> ChernData:
        return ChernData.from_vector(class_to_vector(v))

    def kahler_coords(self) -> tuple[MultiPoly, MultiPoly]:
        """t = t1*K1 + t2*K2 written in the divisor basis."""
        k1, k2 = (self.kahler_basis[k] for k in list(self.kahler_basis)[:2])
        t1, t2 = MultiPoly.var("t1"), MultiPoly.var("t2")
        return (t1 * k1[0] + t2 * k2[0], t1 * k1[1] + t2 * k2[1])

    def kahler_names(self) -> tuple[str, str]:
        return tuple(list(self.kahler_basis)[:2])

    def triple_in_kahler(self, i: str, j: str, k: str) -> Fraction:
        return self.triple_product(self.divisor_coords(i), self.divisor_coords(j), self.divisor_coords(k))

    def ring_key(self) -> tuple:
        """Hashable summary of everything except the printed matrices."""
        items = lambda d: tuple(sorted(d.items())) if d is not None else None
        return (self.name, self.divisors, self.curve_divisor_pairing, items(self.triple),
                items(self.kahler_basis), self.dictionary, items(self.c2_pairings), self.base)


# --- registry ----------------------------------------------------------------------------

def _load_yaml(text: str) -> dict:
    return yaml.safe_load(text)


def model_from_dict(name: str, d: Mapping) -> ModelDefinition:
    base = None
    if "base" in d:
        b = d["base"]
        base = BaseSurfaceData(tuple(b["basis"]), tuple(tuple(r) for r in b["form"]),
                               tuple(b["c1"]), b["c2"], name=b.get("name", "B"))
    periods = None
    if "printed_periods" in d:
        periods = tuple(_poly(p) for p in d["printed_periods"])
    triple = {k: rational(v) for k, v in d["triple_intersections"].items()}
    return ModelDefinition(
        name=name,
        description=d.get("description", ""),
        divisors=tuple(d["divisors"]),
        curves=tuple(d["curves"]),
        curve_divisor_pairing=_matrix(d["curve_divisor_pairing"]),
        triple=triple,
        kahler_basis={k: tuple(rational(c) for c in v) for k, v in d["kahler_basis"].items()},
        dictionary=_matrix(d["dictionary"]),
        matrices={k: _matrix(v) for k, v in d["matrices"].items()},
        c2_pairings={k: rational(v) for k, v in d["c2"].items()} if "c2" in d else None,
        e_in_kahler=tuple(rational(c) for c in d["e_in_kahler"]) if "e_in_kahler" in d else None,
        prepotential=_poly(d["prepotential"]) if "prepotential" in d else None,
        printed_periods=periods,
        printed_periods_position=d.get("printed_periods_position"),
        base=base,
    )


def model_to_dict(m: ModelDefinition) -> dict:
    d: dict = {
        "description": m.description,
        "divisors": list(m.divisors),
        "curves": list(m.curves),
        "curve_divisor_pairing": _matrix_out(m.curve_divisor_pairing),
        "triple_intersections": {k: _scalar_out(v) for k, v in m.triple.items()},
        "kahler_basis": {k: [_scalar_out(c) for c in v] for k, v in m.kahler_basis.items()},
        "dictionary": _matrix_out(m.dictionary),
        "matrices": {k: _matrix_out(v) for k, v in m.matrices.items()},
    }
    if m.c2_pairings is not None:
        d["c2"] = {k: _scalar_out(v) for k, v in m.c2_pairings.items()}
    if m.e_in_kahler is not None:
        d["e_in_kahler"] = [_scalar_out(c) for c in m.e_in_kahler]
    if m.prepotential is not None:
        d["prepotential"] = _poly_terms(m.prepotential)
    if m.printed_periods is not None:
        d["printed_periods"] = [_poly_terms(p) for p in m.printed_periods]
        d["printed_periods_position"] = m.printed_periods_position
    if m.base is not None:
        b = m.base
        d["base"] = {"name": b.name, "basis": list(b.basis_labels),
                     "form": [[_scalar_out(c) for c in row] for row in b.intersection_form],
                     "c1": [_scalar_out(c) for c in b.c1], "c2": _scalar_out(b.c2)}
    return d


@dataclass(frozen=True)
class Registry:
    models: Mapping[str, ModelDefinition]
    k3_section_square: Fraction
    k3_matrices: Mapping[str, RMatrix]

    def __getitem__(self, name: str) -> ModelDefinition:
        try:
            return self.models[name]
        except KeyError:
            raise ModelError(f"unknown model {name!r}; known: {sorted(self.models)}") from None

    def names(self) -> list[str]:
        return sorted(self.models)

    def with_matrix(self, model: str, key: str, matrix: RMatrix) -> "Registry":
        """A copy with one stored matrix replaced (used for mutation testing)."""
        if model == "k3":
            mats = dict(self.k3_matrices)
            mats[key] = matrix
            return Registry(self.models, self.k3_section_square, mats)
        m = self[model]
        mats = dict(m.matrices)
        mats[key] = matrix
        models = dict(self.models)
        models[model] = _replace(m, matrices=mats)
        return Registry(models, self.k3_section_square, self.k3_matrices)

    def stored_matrices(self) -> list[tuple[str, str, RMatrix]]:
        out = [(name, key, mat) for name in self.names() for key, mat in self.models[name].matrices.items()]
        out += [("k3", key, mat) for key, mat in self.k3_matrices.items()]
        return out


def _replace(m: ModelDefinition, **changes) -> ModelDefinition:
    from dataclasses import replace
    return replace(m, **changes)


def registry_from_yaml(text: str) -> Registry:
    raw = _load_yaml(text)
    k3 = raw.pop("k3", {})
    models = {name: model_from_dict(name, d) for name, d in raw.items()}
    return Registry(models, rational(k3.get("section_square", -2)),
                    {k: _matrix(v) for k, v in k3.get("matrices", {}).items()})


def registry_to_yaml(reg: Registry) -> str:
    d = {name: model_to_dict(reg.models[name]) for name in reg.names()}
    d["k3"] = {"section_square": _scalar_out(reg.k3_section_square),
               "matrices": {k: _matrix_out(v) for k, v in reg.k3_matrices.items()}}
    return yaml.safe_dump(d, sort_keys=False)


@lru_cache(maxsize=1)
def default_registry() -> Registry:
    text = resources.files("fmcalc").joinpath("data/models.yaml").read_text()
    return registry_from_yaml(text)


def get_model(name: str, registry: Registry | None = None) -> ModelDefinition:
    return (registry or default_registry())[name]


# --- dictionaries and central charges ----------------------------------------------------

def bps_to_chern(m: ModelDefinition, n: BPSCharge) -> ChernData:
    return ChernData.from_vector(m.dictionary.apply(n.as_tuple()))


def _dictionary_inverse(m: ModelDefinition) -> RMatrix:
    try:
        return mat_inverse(m.dictionary)
    except SingularMatrixError as exc:
        raise RankError(f"{m.name}: dictionary is not invertible ({exc})") from exc


def chern_to_bps(m: ModelDefinition, chern: ChernData) -> BPSCharge:
    return BPSCharge.of(*_dictionary_inverse(m).apply(chern.as_vector()))


def bps_to_vertical(m: ModelDefinition, n: BPSCharge) -> VerticalClass:
    return m.chern_to_vertical(bps_to_chern(m, n))


def _derivative_terms(m: ModelDefinition):
    F = m.prepotential
    if F is None:
        raise ModelError(f"{m.name}: no prepotential recorded")
    return F, F.derivative("t1"), F.derivative("t2")


def period_vector(m: ModelDefinition) -> tuple[MultiPoly, ...]:
    """(2F - t^i F_i, F_1 + c F_2, F_2, 1, t1, t2), with E = H + c L."""
    key = (m.ring_key(), m.prepotential, m.e_in_kahler)
    if key not in _PERIOD_CACHE:
        _PERIOD_CACHE[key] = _period_vector(m)
    return _PERIOD_CACHE[key]


_PERIOD_CACHE: dict[tuple, tuple[MultiPoly, ...]] = {}


def _period_vector(m: ModelDefinition) -> tuple[MultiPoly, ...]:
    F, F1, F2 = _derivative_terms(m)
    t1, t2 = MultiPoly.var("t1"), MultiPoly.var("t2")
    c = m.e_in_kahler[1] / m.e_in_kahler[0]
    return (F * 2 - t1 * F1 - t2 * F2, F1 + F2 * c, F2, MultiPoly.constant(1), t1, t2)


def _coefficient_matrix(polys: Sequence[MultiPoly], monomials) -> RMatrix:
    return RMatrix.from_rows([[p.coefficient(mon) for p in polys] for mon in monomials])


def shift_matrix(polys: Sequence[MultiPoly], var: str, delta: Scalar = 1) -> RMatrix:
    """The matrix A with polys(t + delta e_var) = A . polys(t), by coefficient matching."""
    shifted = [poly_shift(p, var, delta) for p in polys]
    monomials = sorted({k for p in list(polys) + shifted for k in p.terms})
    a_t = linear_solve(_coefficient_matrix(polys, monomials), _coefficient_matrix(shifted, monomials))
    return a_t.transpose()


def _conventions(a: RMatrix) -> dict[str, RMatrix]:
    inv = mat_inverse(a)
    return {"A": a, "A^-1": inv, "A^T": a.transpose(), "A^-T": inv.transpose()}


def _direction_name(m: ModelDefinition, direction: str) -> str:
    names = m.kahler_names()
    return names[0] if direction == "t1" else names[1]


def monodromy_from_prepotential(m: ModelDefinition, direction: str,
                                delta: Scalar = 1) -> tuple[RMatrix, str]:
    a = shift_matrix(period_vector(m), direction, delta)
    if rational(delta) == 0:
        return a, "A"
    printed = m.matrices[f"S_{_direction_name(m, direction)}"]
    for tag, cand in _conventions(a).items():
        if cand == printed:
            return a, tag
    raise ReconciliationError(f"{m.name}: shift in {direction} matches no convention", a, printed)


def matching_conventions(m: ModelDefinition, direction: str) -> list[str]:
    a = shift_matrix(period_vector(m), direction)
    printed = m.matrices[f"S_{_direction_name(m, direction)}"]
    return [tag for tag, cand in _conventions(a).items() if cand == printed]


def central_charge_bps(m: ModelDefinition, n: BPSCharge) -> MultiPoly:
    pi = period_vector(m)
    return sum((p * c for p, c in zip(pi, n.as_tuple())), MultiPoly())


def central_charge_geometric(m: ModelDefinition, chern: ChernData) -> MultiPoly:
    """Z = r t^3/6 - ch1 t^2/2 + (ch2 + r c2/24) t - (ch3 + ch1 c2/24)."""
    t = m.kahler_coords()
    ch1 = chern.ch1
    r = chern.rank
    t_cubed = _triple_poly(m, t, t, t)
    ch1_t2 = _triple_poly(m, ch1, t, t)
    ch2_t = sum((chern.ch2[j] * m.curve_divisor_pairing[j, k] * t[k] for j in range(2) for k in range(2)),
                MultiPoly())
    c2 = m.c2_vector()
    c2_t = t[0] * c2[0] + t[1] * c2[1]
    return (t_cubed * (r / 6) - ch1_t2 * Fraction(1, 2) + ch2_t + c2_t * (r / 24)
            - MultiPoly.constant(chern.ch3 + m.c2_dot(ch1) / 24))


def _triple_poly(m: ModelDefinition, a, b, c) -> MultiPoly:
    names = m.divisors
    total = MultiPoly()
    for i in range(2):
        for j in range(2):
            for k in range(2):
                key = "".join(sorted(names[i] + names[j] + names[k], key=lambda s: names.index(s)))
                coeff = m.triple[key]
                if coeff:
                    total = total + _as_poly(a[i]) * _as_poly(b[j]) * _as_poly(c[k]) * coeff
    return total


def _as_poly(x) -> MultiPoly:
    return x if isinstance(x, MultiPoly) else MultiPoly.constant(x)


# --- lattice maps -------------------------------------------------------------------------

def twist_chern(m: ModelDefinition, chern: ChernData, divisor: Sequence[Scalar]) -> ChernData:
    r, ch1, ch2, ch3 = chern.rank, chern.ch1, chern.ch2, chern.ch3
    d = tuple(rational(c) for c in divisor)
    dd = m.divisor_product(d, d)
    c1d = m.divisor_product(ch1, d)
    new_ch1 = tuple(a + r * b for a, b in zip(ch1, d))
    new_ch2 = tuple(a + b + r * c / 2 for a, b, c in zip(ch2, c1d, dd))
    new_ch3 = (ch3 + m.curve_dot(ch2, d) + m.triple_product(ch1, d, d) / 2
               + r * m.triple_product(d, d, d) / 6)
    return ChernData(r, new_ch1, new_ch2, new_ch3)


def gamma_shift_chern(m: ModelDefinition, chern: ChernData) -> ChernData:
    chi = chern.ch3 + m.c2_dot(chern.ch1) / 12
    return ChernData(chern.rank - chi, chern.ch1, chern.ch2, chern.ch3)


def lattice_matrix(m: ModelDefinition, chern_map) -> RMatrix:
    """Row-convention matrix B of a map on Chern data: n' = n . B."""
    inv = _dictionary_inverse(m)
    rows = []
    for i in range(6):
        e = BPSCharge.of(*[int(i == j) for j in range(6)])
        rows.append(inv.apply(chern_map(bps_to_chern(m, e)).as_vector()))
    return RMatrix.from_rows(rows)


# Derived lattice maps depend only on ring data, so they are memoized on ModelDefinition.ring_key().
_LATTICE_CACHE: dict[tuple, RMatrix] = {}


def _memo_lattice(m: ModelDefinition, tag: tuple, chern_map) -> RMatrix:
    key = (m.ring_key(), tag)
    if key not in _LATTICE_CACHE:
        _LATTICE_CACHE[key] = lattice_matrix(m, chern_map)
    return _LATTICE_CACHE[key]


def twist_matrix_on_bps(m: ModelDefinition, divisor: str | Sequence[Scalar]) -> RMatrix:
    d = m.divisor_coords(divisor) if isinstance(divisor, str) else tuple(rational(c) for c in divisor)
    return _memo_lattice(m, ("twist", d), lambda ch: twist_chern(m, ch, d))


def twist_matrix_on_bps_vertical(m: ModelDefinition, divisor: str) -> RMatrix:
    """Same lattice map computed through the vertical ring (elliptic models only)."""
    coords = m.divisor_coords(divisor)
    d = m.divisor_class(coords)
    return _memo_lattice(m, ("twist-vertical", coords),
                         lambda ch: m.vertical_to_chern(line_bundle_twist(m.chern_to_vertical(ch), d)))


def gamma_shift_on_bps(m: ModelDefinition) -> RMatrix:
    return _memo_lattice(m, ("gamma",), lambda ch: gamma_shift_chern(m, ch))


def gamma_shift_on_bps_vertical(m: ModelDefinition) -> RMatrix:
    return _memo_lattice(m, ("gamma-vertical",),
                         lambda ch: m.vertical_to_chern(vertical_gamma_shift(m.chern_to_vertical(ch))))


def vertical_map_on_bps(m: ModelDefinition, fn) -> RMatrix:
    """Row-convention lattice matrix of a map on vertical classes (elliptic models)."""
    return _memo_lattice(m, ("vertical", fn), lambda ch: m.vertical_to_chern(fn(m.chern_to_vertical(ch))))


# --- reports -------------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    anchor: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"name": self.name, "anchor": self.anchor, "passed": self.passed, "detail": self.detail}


def _residual(a: RMatrix, b: RMatrix) -> dict:
    diff = a - b
    return {"mismatched_entries": [[i, j, format_rational(diff[i, j])]
                                   for i in range(diff.rows) for j in range(diff.cols) if diff[i, j]]}


def _rows_agree(a: RMatrix, b: RMatrix, skip: int) -> bool:
    return all(a.row(i) == b.row(i) for i in range(a.rows) if i != skip)


def _cols_agree(a: RMatrix, b: RMatrix, skip: int) -> bool:
    return all(a.column(j) == b.column(j) for j in range(a.cols) if j != skip)


def derived_s_i(m: ModelDefinition) -> RMatrix:
    """Lattice matrix of the fibre-ideal transform, normalized like the printed S_I."""
    from .kontsevich import ch_fibre_ideal
    return -mat_inverse(vertical_map_on_bps(m, ch_fibre_ideal))


def verify_deg18_relations(m: ModelDefinition) -> list[Check]:
    mats = m.matrices
    S_H, S_L, S_E, S_I, S_V = (mats[k] for k in ("S_H", "S_L", "S_E", "S_I", "S_V"))
    l, S_td = mats["l"], mats["S_td"]
    checks = [
        Check("S_E = S_H S_L^-3", "relation H = 3L + E", S_E == S_H @ S_L ** -3, _residual(S_E, S_H @ S_L ** -3)),
    ]
    for a, b in (("S_H", "S_L"), ("S_H", "S_E"), ("S_L", "S_E")):
        x, y = mats[a], mats[b]
        checks.append(Check(f"{a} {b} = {b} {a}", "the three monodromies commute", x @ y == y @ x,
                            _residual(x @ y, y @ x)))
    rhs = S_E @ S_L ** 6 @ S_I @ S_E
    # lattice vectors act as rows, so n4^1 = 0 leaves row 1 unconstrained
    checks.append(Check("S_V = S_E S_L^6 S_I S_E (n4^1 = 0)", "factorization of the inverse transform",
                        _rows_agree(S_V, rhs, 1),
                        {**_residual(S_V, rhs), "full_lattice": S_V == rhs}))
    from .transforms import m_matrix
    M = m_matrix(m.base)
    mata = l @ mat_inverse(S_V).transpose() @ mat_inverse(l) @ S_td
    # columns act on (n, x, ...); x = n4^1 = 0 leaves column 1 unconstrained
    checks.append(Check("M = l [S_V^-1]^T l^-1 S_td (n4^1 = 0)", "transport of M to the period basis",
                        _cols_agree(M, mata, 1),
                        {**_residual(M, mata), "full_lattice": M == mata,
                         "holds_with_overall_sign_flip": _cols_agree(M, -mata, 1)}))
    return checks


def verify_deg18_data(m: ModelDefinition) -> list[Check]:
    """Consistency between the deg18 printed matrices and the ring computations."""
    from .transforms import fm_forward, m_matrix, tdn_matrix
    mats = m.matrices
    out = []
    for d in ("L", "H", "E"):
        lattice = twist_matrix_on_bps_vertical(m, d)
        printed_inv = mat_inverse(mats[f"S_{d}"])
        out.append(Check(f"deg18 twist by {d} = S_{d}^-1", "line bundle twist as monodromy",
                         lattice == printed_inv, _residual(lattice, printed_inv)))
        out.append(Check(f"deg18 twist by {d}: lattice ring = vertical ring", "dual route",
                         lattice == twist_matrix_on_bps(m, d)))
    fm = vertical_map_on_bps(m, fm_forward)
    out.append(Check("deg18 forward transform lattice matrix = S_V", "S_V from the transform",
                     fm == mats["S_V"], _residual(fm, mats["S_V"])))
    s_i = derived_s_i(m)
    out.append(Check("deg18 S_I = -(fibre ideal lattice map)^-1", "S_I from the fibre ideal kernel",
                     s_i == mats["S_I"], _residual(mats["S_I"], s_i)))
    rhs = mats["S_E"] @ mats["S_L"] ** 6 @ s_i @ mats["S_E"]
    out.append(Check("S_V = S_E S_L^6 S_I S_E with ring-derived S_I", "factorization, derived S_I",
                     rhs == mats["S_V"], _residual(mats["S_V"], rhs)))
    out.append(Check("deg18 l = charge dictionary", "dictionary coefficients",
                     mats["l"] == m.dictionary, _residual(mats["l"], m.dictionary)))
    td = tdn_matrix(m.base, "minus")
    out.append(Check("deg18 S_td = Td(N) multiplication matrix", "Td(N) twist as a matrix",
                     mats["S_td"] == td, _residual(mats["S_td"], td)))
    mm = m_matrix(m.base)
    out.append(Check("printed M = M of the transform", "matrix form of fibrewise T-duality",
                     mats["M"] == mm, _residual(mats["M"], mm)))
    return out


def verify_monodromy_algebra(m: ModelDefinition) -> list[Check]:
    names = m.kahler_names()
    one = RMatrix.identity(6)
    R = {k: m.matrices[f"S_{k}"] - one for k in names}
    k0 = names[0]
    c000 = m.triple_in_kahler(k0, k0, k0)
    Y = (R[k0] @ R[k0] @ R[k0]).scale(1 / c000)
    checks = []
    for i in names:
        for j in names:
            for k in names:
                lhs = R[i] @ R[j] @ R[k]
                c = m.triple_in_kahler(i, j, k)
                checks.append(Check(f"{m.name}: R_{i} R_{j} R_{k} = {c} Y", "R_i R_j R_k = C_ijk Y",
                                    lhs == Y.scale(c), _residual(lhs, Y.scale(c))))
    Tm = m.matrices["T"] - one
    checks.append(Check(f"{m.name}: (T - 1)^2 = 0", "conifold monodromy is unipotent",
                        (Tm @ Tm).is_zero()))
    return checks


def basis_conjugations(m: ModelDefinition) -> dict[str, tuple[RMatrix, RMatrix]]:
    """For every printed S_D: (K^-1 S_D K, m^-1 K^-1 S_D K m)."""
    mm, K = m.matrices["m"], m.matrices["K"]
    k_inv, m_inv = mat_inverse(K), mat_inverse(mm)
    out = {}
    for key in ("S_L", "S_H", "T"):
        tilde = k_inv @ m.matrices[key] @ K
        out[key] = (tilde, m_inv @ tilde @ mm)
    return out

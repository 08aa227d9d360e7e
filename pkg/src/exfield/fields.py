"""Polynomial-coefficient fields on a single chart.

Every field carries a chart (dimension, coordinate names, box domain) and
evaluates exactly at points of the box.  Scalar fields are multivariate
polynomials in the chart coordinates, which keeps the whole calculus closed
under addition, multiplication, wedge products, duality products and
coordinate derivatives: identities can be checked without numerical
differentiation noise.

The exceptions are dual coframes of non-constant frames and inverses of
extensor fields, which are rational in the coordinates.  Those are never
represented symbolically; they evaluate pointwise through small matrix
inversions, and anything that needs their derivative falls back to central
finite differences (see :mod:`exfield.connection`).

Polynomial expression syntax (used by scene files and tests)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := NUMBER | VAR ['^' INT]
    VAR    := 'x' INT            -- x1 .. xn
    NUMBER := decimal literal, optionally with an exponent part

Example: ``2*x1^2*x2 - 0.5*x2``.  Parsed polynomials are canonicalized:
merged monomials, no zero coefficients, deterministic term order.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    AlgebraError,
    GradeError,
    MAX_DIM,
    Multiform,
    Multivector,
    apply_coeffs,
    blade_name,
    extend_coeffs,
    generalize_coeffs,
    grade_coeffs,
    grade_of,
    lcontract_coeffs,
    pairing_coeff,
    parse_blade_name,
    rcontract_coeffs,
    reversion_coeffs,
    wedge_coeffs,
)
from .extensor import FORM, VECTOR, Extensor, SINGULARITY_TOL, SingularExtensor


class ChartMismatch(AlgebraError):
    """Fields from different charts were combined."""


class OutOfDomain(AlgebraError):
    """A field was evaluated outside its chart's box."""


class SingularFrame(AlgebraError):
    """A frame matrix was singular at a sampled point."""


class PolyParseError(AlgebraError):
    """A polynomial expression failed to parse."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class Polynomial:
    """Multivariate polynomial: canonical tuple of (exponents, coefficient)."""

    nvars: int
    terms: tuple[tuple[tuple[int, ...], float], ...]

    @classmethod
    def make(cls, nvars: int, mapping) -> "Polynomial":
        """Canonicalize a {exponent-tuple: coefficient} mapping."""
        merged: dict[tuple[int, ...], float] = {}
        for exps, c in dict(mapping).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            merged[exps] = merged.get(exps, 0.0) + float(c)
        items = tuple(
            (exps, c)
            for exps, c in sorted(merged.items(), key=lambda t: (sum(t[0]), t[0]))
            if c != 0.0
        )
        return cls(nvars, items)

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars, ())

    @classmethod
    def constant(cls, nvars: int, value: float) -> "Polynomial":
        return cls.make(nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(nvars, 1.0)

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        """The coordinate monomial x_{i+1} (0-based index)."""
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls.make(nvars, {exps: 1.0})

    # -- arithmetic

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise ValueError("polynomials over different variable counts")

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = Polynomial.constant(self.nvars, other)
        self._check(other)
        acc = dict(self.terms)
        for exps, c in other.terms:
            acc[exps] = acc.get(exps, 0.0) + c
        return Polynomial.make(self.nvars, acc)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            other = Polynomial.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Polynomial(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            if other == 0:
                return Polynomial.zero(self.nvars)
            return Polynomial(self.nvars, tuple((e, other * c) for e, c in self.terms))
        self._check(other)
        acc: dict[tuple[int, ...], float] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                key = tuple(a + b for a, b in zip(e1, e2))
                acc[key] = acc.get(key, 0.0) + c1 * c2
        return Polynomial.make(self.nvars, acc)

    __rmul__ = __mul__

    # -- calculus and evaluation

    def partial(self, i: int) -> "Polynomial":
        """Exact partial derivative with respect to coordinate i (0-based)."""
        acc: dict[tuple[int, ...], float] = {}
        for exps, c in self.terms:
            e = exps[i]
            if e:
                key = tuple(v - 1 if j == i else v for j, v in enumerate(exps))
                acc[key] = acc.get(key, 0.0) + c * e
        return Polynomial.make(self.nvars, acc)

    def eval(self, point) -> float:
        total = 0.0
        for exps, c in self.terms:
            v = c
            for p, e in zip(point, exps):
                if e:
                    v *= p**e
            total += v
        return total

    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def restrict_line(self, point, direction) -> tuple[float, ...]:
        """Exact univariate coefficients of t -> self(point + t*direction).

        Expands each monomial's factors (p_i + d_i t)^e by convolution; the
        result is an independent route to directional derivatives (the jet
        at t = 0).
        """
        out = [0.0] * (self.degree() + 1)
        for exps, c in self.terms:
            uni = [c]
            for p, d, e in zip(point, direction, exps):
                for _ in range(e):
                    nxt = [0.0] * (len(uni) + 1)
                    for j, u in enumerate(uni):
                        nxt[j] += u * p
                        nxt[j + 1] += u * d
                    uni = nxt
            for j, u in enumerate(uni):
                out[j] += u
        return tuple(out)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e, _ in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.terms:
            factors = []
            if abs(c) != 1.0 or not any(exps):
                factors.append(repr(abs(c)))
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            body = "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)|(?P<var>x\d+)|(?P<op>[-+*^]))"
)


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    """Parse the expression grammar above into a canonical Polynomial."""
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if stripped:
                at = pos + (len(text[pos:]) - len(stripped))
                raise PolyParseError(f"unexpected character {text[at]!r}", at)
            break
        for kind in ("num", "var", "op"):
            if m.group(kind):
                tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()

    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else ("end", "", len(text))

    def take():
        nonlocal idx
        tok = peek()
        idx += 1
        return tok

    def parse_factor() -> Polynomial:
        kind, value, at = take()
        if kind == "num":
            return Polynomial.constant(nvars, float(value))
        if kind == "var":
            i = int(value[1:])
            if not 1 <= i <= nvars:
                raise PolyParseError(f"variable {value} outside x1..x{nvars}", at)
            base = Polynomial.variable(i - 1, nvars)
            if peek()[:2] == ("op", "^"):
                take()
                k, v, a2 = take()
                if k != "num" or "." in v or "e" in v or "E" in v:
                    raise PolyParseError("exponent must be a plain integer", a2)
                out = Polynomial.one(nvars)
                for _ in range(int(v)):
                    out = out * base
                return out
            return base
        raise PolyParseError(f"expected a number or variable, got {value!r}", at)

    def parse_term() -> Polynomial:
        out = parse_factor()
        while peek()[:2] == ("op", "*"):
            take()
            out = out * parse_factor()
        return out

    def parse_expr() -> Polynomial:
        sign = 1.0
        kind, value, _ = peek()
        if kind == "op" and value in "+-":
            take()
            sign = -1.0 if value == "-" else 1.0
        out = sign * parse_term()
        while True:
            kind, value, at = peek()
            if kind == "end":
                return out
            if kind != "op" or value not in "+-":
                raise PolyParseError(f"expected '+' or '-', got {value!r}", at)
            take()
            nxt = parse_term()
            out = out + (nxt if value == "+" else -nxt)

    if not tokens:
        raise PolyParseError("empty polynomial expression", 0)
    return parse_expr()


def _as_poly(value, nvars: int) -> Polynomial:
    if isinstance(value, Polynomial):
        if value.nvars != nvars:
            raise ValueError("polynomial has wrong variable count")
        return value
    if isinstance(value, str):
        return parse_polynomial(value, nvars)
    if isinstance(value, (int, float)):
        return Polynomial.constant(nvars, float(value))
    raise TypeError(f"cannot interpret {value!r} as a polynomial")


# ---------------------------------------------------------------------------
# charts and scalar fields


DEFAULT_BOX = (-1.0, 1.0)


@dataclass(frozen=True)
class Chart:
    """A single coordinate chart: dimension, names and a box domain."""

    dim: int
    names: tuple[str, ...] = ()
    box: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        if not 1 <= self.dim <= MAX_DIM:
            raise AlgebraError(f"chart dimension {self.dim} outside 1..{MAX_DIM}")
        names = self.names or tuple(f"x{i + 1}" for i in range(self.dim))
        box = self.box or (DEFAULT_BOX,) * self.dim
        if len(names) != self.dim or len(box) != self.dim:
            raise AlgebraError("names and box must match the chart dimension")
        box = tuple((float(lo), float(hi)) for lo, hi in box)
        if any(lo >= hi for lo, hi in box):
            raise AlgebraError("box intervals must be non-degenerate")
        object.__setattr__(self, "names", tuple(names))
        object.__setattr__(self, "box", box)

    def contains(self, point) -> bool:
        return len(point) == self.dim and all(
            lo <= p <= hi for p, (lo, hi) in zip(point, self.box)
        )

    def require(self, point):
        if not self.contains(point):
            raise OutOfDomain(f"point {tuple(point)} outside chart box {self.box}")

    def same_as(self, other: "Chart"):
        if self != other:
            raise ChartMismatch("fields live on different charts")


def weyl_points(chart: Chart, count: int):
    """Deterministic low-discrepancy points in the chart box.

    Additive (Kronecker) sequence with irrational strides; used for
    load-time invertibility sampling, not for randomized trials.
    """
    primes = (2, 3, 5, 7, 11, 13, 17, 19)
    alphas = [math.sqrt(p) % 1.0 for p in primes[: chart.dim]]
    pts = []
    for k in range(1, count + 1):
        frac = [(k * a) % 1.0 for a in alphas]
        pts.append(tuple(lo + f * (hi - lo) for f, (lo, hi) in zip(frac, chart.box)))
    return pts


@dataclass(frozen=True)
class ScalarField:
    """Polynomial scalar field on a chart; evaluation is exact."""

    chart: Chart
    poly: Polynomial

    def __post_init__(self):
        object.__setattr__(self, "poly", _as_poly(self.poly, self.chart.dim))

    @classmethod
    def zero(cls, chart: Chart) -> "ScalarField":
        return cls(chart, Polynomial.zero(chart.dim))

    @classmethod
    def constant(cls, chart: Chart, value: float) -> "ScalarField":
        return cls(chart, Polynomial.constant(chart.dim, value))

    def eval(self, point) -> float:
        self.chart.require(point)
        return self.poly.eval(point)

    def partial(self, i: int) -> "ScalarField":
        return ScalarField(self.chart, self.poly.partial(i))

    def jet(self, point, direction) -> float:
        """d/dt at t=0 of the field along point + t*direction (exact)."""
        self.chart.require(point)
        coeffs = self.poly.restrict_line(point, direction)
        return coeffs[1] if len(coeffs) > 1 else 0.0

    def __add__(self, other):
        if isinstance(other, ScalarField):
            self.chart.same_as(other.chart)
            other = other.poly
        return ScalarField(self.chart, self.poly + other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, ScalarField):
            self.chart.same_as(other.chart)
            other = other.poly
        return ScalarField(self.chart, self.poly - other)

    def __neg__(self):
        return ScalarField(self.chart, -self.poly)

    def __mul__(self, other):
        if isinstance(other, ScalarField):
            self.chart.same_as(other.chart)
            other = other.poly
        return ScalarField(self.chart, self.poly * other)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.poly

    def __repr__(self):
        return f"ScalarField({self.poly})"


# ---------------------------------------------------------------------------
# graded fields


class _GradedFieldBase:
    """Shared implementation of multivector- and multiform-valued fields.

    Components are one polynomial per blade, in the coordinate frame
    (respectively coframe).  All closed operations stay polynomial, and
    evaluating then operating agrees exactly with operating then evaluating.
    """

    point_cls = Multivector
    prefix = "e"
    kind = VECTOR

    def __init__(self, chart: Chart, comps):
        comps = tuple(_as_poly(c, chart.dim) for c in comps)
        if len(comps) != 1 << chart.dim:
            raise AlgebraError(
                f"expected {1 << chart.dim} blade components, got {len(comps)}"
            )
        self.chart = chart
        self.comps = comps

    # -- constructors

    @classmethod
    def zero(cls, chart: Chart):
        return cls(chart, (Polynomial.zero(chart.dim),) * (1 << chart.dim))

    @classmethod
    def from_blades(cls, chart: Chart, blades: dict):
        """Build from {blade name or mask: polynomial/str/number}."""
        comps = [Polynomial.zero(chart.dim)] * (1 << chart.dim)
        for key, value in blades.items():
            if isinstance(key, str):
                prefix, mask = parse_blade_name(key)
                if prefix and prefix != cls.prefix:
                    raise AlgebraError(
                        f"blade {key!r} does not belong to a {cls.__name__}"
                    )
            else:
                mask = int(key)
            if not 0 <= mask < (1 << chart.dim):
                raise AlgebraError(f"blade mask {mask} outside chart dimension")
            comps[mask] = comps[mask] + _as_poly(value, chart.dim)
        return cls(chart, comps)

    @classmethod
    def from_scalar(cls, f: ScalarField):
        comps = [Polynomial.zero(f.chart.dim)] * (1 << f.chart.dim)
        comps[0] = f.poly
        return cls(f.chart, comps)

    @classmethod
    def constant(cls, chart: Chart, value):
        """Lift a point value to a constant field."""
        return cls(chart, [Polynomial.constant(chart.dim, c) for c in value.coeffs])

    # -- queries

    def component(self, mask: int) -> ScalarField:
        return ScalarField(self.chart, self.comps[mask])

    def eval(self, point):
        self.chart.require(point)
        return self.point_cls(
            self.chart.dim, tuple(c.eval(point) for c in self.comps)
        )

    def grades(self) -> set[int]:
        return {grade_of(m) for m, c in enumerate(self.comps) if c}

    def is_grade(self, k: int) -> bool:
        return all(not c or grade_of(m) == k for m, c in enumerate(self.comps))

    def is_zero(self) -> bool:
        return all(not c for c in self.comps)

    def _like(self, comps):
        n = self.chart.dim
        return type(self)(
            self.chart,
            [c if isinstance(c, Polynomial) else Polynomial.constant(n, c) for c in comps],
        )

    def _check(self, other):
        self.chart.same_as(other.chart)

    # -- module operations (pointwise, polynomial-closed)

    def __add__(self, other):
        self._check(other)
        return self._like([a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        self._check(other)
        return self._like([a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return self._like([-a for a in self.comps])

    def scalar_mul(self, f):
        """Multiply by a scalar field or a number."""
        if isinstance(f, ScalarField):
            self.chart.same_as(f.chart)
            f = f.poly
        else:
            f = _as_poly(f, self.chart.dim)
        return self._like([f * c for c in self.comps])

    def wedge(self, other):
        self._check(other)
        n = self.chart.dim
        return self._like(wedge_coeffs(self.comps, other.comps, n))

    __xor__ = wedge

    def grade_part(self, k: int):
        if not 0 <= k <= self.chart.dim:
            raise GradeError(f"grade {k} outside 0..{self.chart.dim}")
        return self._like(grade_coeffs(self.comps, k, self.chart.dim))

    def reversion(self):
        return self._like(reversion_coeffs(self.comps, self.chart.dim))

    def __repr__(self):
        terms = [
            f"({c})*{blade_name(m, self.prefix)}" for m, c in enumerate(self.comps) if c
        ]
        body = " + ".join(terms) if terms else "0"
        return f"{type(self).__name__}[{body}]"


class MultivectorField(_GradedFieldBase):
    """Multivector-valued polynomial field in the coordinate frame."""

    point_cls = Multivector
    prefix = "e"
    kind = VECTOR


class MultiformField(_GradedFieldBase):
    """Multiform-valued polynomial field in the coordinate coframe."""

    point_cls = Multiform
    prefix = "eps"
    kind = FORM


def vector_field(chart: Chart, comps) -> MultivectorField:
    """Grade-1 multivector field from n coordinate components."""
    if len(comps) != chart.dim:
        raise AlgebraError(f"expected {chart.dim} components")
    return MultivectorField.from_blades(
        chart, {1 << i: c for i, c in enumerate(comps)}
    )


def form_field(chart: Chart, comps) -> MultiformField:
    """Grade-1 multiform field from n coordinate components."""
    if len(comps) != chart.dim:
        raise AlgebraError(f"expected {chart.dim} components")
    return MultiformField.from_blades(chart, {1 << i: c for i, c in enumerate(comps)})


def coordinate_vector(chart: Chart, i: int) -> MultivectorField:
    """The i-th coordinate frame vector as a constant field (1-based)."""
    return MultivectorField.from_blades(chart, {1 << (i - 1): 1.0})


def coordinate_form(chart: Chart, i: int) -> MultiformField:
    """The i-th coordinate coframe element as a constant field (1-based)."""
    return MultiformField.from_blades(chart, {1 << (i - 1): 1.0})


def require_grade1(v, what: str = "argument"):
    if not v.is_grade(1):
        raise GradeError(f"{what} must be a homogeneous grade-1 field")


def directional_derivative(a: MultivectorField, f: ScalarField) -> ScalarField:
    """The action a(f) = sum_i a^i df/dx_i, exact on polynomials."""
    a.chart.same_as(f.chart)
    require_grade1(a, "direction")
    n = f.chart.dim
    out = Polynomial.zero(n)
    for i in range(n):
        ai = a.comps[1 << i]
        if ai:
            out = out + ai * f.poly.partial(i)
    return ScalarField(f.chart, out)


def pairing_field(phi: MultiformField, x: MultivectorField) -> ScalarField:
    """Duality scalar product lifted pointwise to fields."""
    phi.chart.same_as(x.chart)
    val = pairing_coeff(phi.comps, x.comps, phi.chart.dim)
    return ScalarField(phi.chart, _as_poly(val, phi.chart.dim))


def left_contract_field(a, b):
    """Field-level left contraction; result kind follows the second operand."""
    a.chart.same_as(b.chart)
    n = a.chart.dim
    if isinstance(a, MultiformField) and isinstance(b, MultivectorField):
        return MultivectorField(a.chart, _poly_list(lcontract_coeffs(a.comps, b.comps, n), n))
    if isinstance(a, MultivectorField) and isinstance(b, MultiformField):
        return MultiformField(a.chart, _poly_list(lcontract_coeffs(a.comps, b.comps, n), n))
    raise TypeError("left_contract_field expects one multiform and one multivector field")


def right_contract_field(a, b):
    """Field-level right contraction; result kind follows the first operand."""
    a.chart.same_as(b.chart)
    n = a.chart.dim
    if isinstance(a, MultiformField) and isinstance(b, MultivectorField):
        return MultiformField(a.chart, _poly_list(rcontract_coeffs(a.comps, b.comps, n), n))
    if isinstance(a, MultivectorField) and isinstance(b, MultiformField):
        return MultivectorField(a.chart, _poly_list(rcontract_coeffs(a.comps, b.comps, n), n))
    raise TypeError("right_contract_field expects one multiform and one multivector field")


def _poly_list(values, n: int):
    return [v if isinstance(v, Polynomial) else Polynomial.constant(n, v) for v in values]


_POINTWISE_OPS = {
    "add": lambda a, b: a + b,
    "scalar_mul": lambda f, x: x.scalar_mul(f),
    "wedge": lambda a, b: a.wedge(b),
    "duality_scalar": pairing_field,
    "left_contract": left_contract_field,
    "right_contract": right_contract_field,
}


def pointwise(opname: str, a, b):
    """Dispatch a named pointwise operation on fields.

    Supported: add, scalar_mul (scalar field first), wedge, duality_scalar,
    left_contract, right_contract.  Results are polynomial-backed and commute
    with evaluation.
    """
    try:
        op = _POINTWISE_OPS[opname]
    except KeyError:
        raise AlgebraError(f"unknown pointwise operation {opname!r}") from None
    return op(a, b)


# ---------------------------------------------------------------------------
# frame and extensor fields


@dataclass(frozen=True)
class ExtensorField:
    """Operator field: an n x n matrix of polynomials plus a kind tag."""

    chart: Chart
    rows: tuple[tuple[Polynomial, ...], ...]
    kind: str = VECTOR

    def __post_init__(self):
        n = self.chart.dim
        rows = tuple(tuple(_as_poly(v, n) for v in row) for row in self.rows)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise AlgebraError(f"extensor field matrix must be {n}x{n}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, chart: Chart, kind: str = VECTOR) -> "ExtensorField":
        n = chart.dim
        return cls(chart, tuple(tuple(1.0 if i == j else 0.0 for j in range(n)) for i in range(n)), kind)

    def at(self, point) -> Extensor:
        self.chart.require(point)
        return Extensor(
            self.chart.dim,
            tuple(tuple(v.eval(point) for v in row) for row in self.rows),
            self.kind,
        )

    def adjoint(self) -> "ExtensorField":
        n = self.chart.dim
        t = tuple(tuple(self.rows[c][r] for c in range(n)) for r in range(n))
        return ExtensorField(self.chart, t, FORM if self.kind == VECTOR else VECTOR)

    def _check_field(self, a):
        self.chart.same_as(a.chart)
        if a.kind != self.kind:
            raise TypeError(f"{self.kind} extensor field applied to {type(a).__name__}")

    def apply_field(self, v):
        """Matrix action on a grade-1 field (polynomial-closed)."""
        self._check_field(v)
        require_grade1(v)
        return v._like(apply_coeffs(self.rows, v.comps, self.chart.dim))

    def extend_field(self, a):
        """Outermorphism lift on a full field (polynomial-closed)."""
        self._check_field(a)
        return a._like(extend_coeffs(self.rows, a.comps, self.chart.dim))

    def generalize_field(self, a):
        """Derivation lift on a full field (polynomial-closed)."""
        self._check_field(a)
        return a._like(generalize_coeffs(self.rows, a.comps, self.chart.dim))

    def is_constant(self) -> bool:
        return all(v.is_constant() for row in self.rows for v in row)

    def check_invertible(self, points, tol: float = SINGULARITY_TOL):
        """Raise SingularExtensor if |det| dips below tol at a sampled point."""
        for p in points:
            m = np.array([[v.eval(p) for v in row] for row in self.rows])
            if abs(np.linalg.det(m)) <= tol:
                raise SingularExtensor(f"extensor field singular near {tuple(p)}")


@dataclass(frozen=True)
class FrameField:
    """n vector fields forming a frame; column j of the matrix is frame vector j."""

    chart: Chart
    rows: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        n = self.chart.dim
        rows = tuple(tuple(_as_poly(v, n) for v in row) for row in self.rows)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise AlgebraError(f"frame matrix must be {n}x{n}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def coordinate(cls, chart: Chart) -> "FrameField":
        n = chart.dim
        return cls(chart, tuple(tuple(1.0 if i == j else 0.0 for j in range(n)) for i in range(n)))

    @property
    def is_coordinate(self) -> bool:
        n = self.chart.dim
        ident = Polynomial.one(n)
        zero = Polynomial.zero(n)
        return all(
            self.rows[i][j] == (ident if i == j else zero)
            for i in range(n)
            for j in range(n)
        )

    def vector(self, j: int) -> MultivectorField:
        """Frame vector j as a grade-1 field (1-based)."""
        n = self.chart.dim
        return vector_field(self.chart, [self.rows[r][j - 1] for r in range(n)])

    def as_extensor_field(self) -> ExtensorField:
        return ExtensorField(self.chart, self.rows, VECTOR)

    def matrix_at(self, point, tol: float = SINGULARITY_TOL) -> np.ndarray:
        self.chart.require(point)
        m = np.array([[v.eval(point) for v in row] for row in self.rows])
        if abs(np.linalg.det(m)) <= tol:
            raise SingularFrame(f"frame singular at {tuple(point)}")
        return m

    def coframe_at(self, point, tol: float = SINGULARITY_TOL) -> np.ndarray:
        """Inverse frame matrix; row i holds the components of coframe form i."""
        return np.linalg.inv(self.matrix_at(point, tol))

    def dual_frame(self):
        """The n coframe form fields with <eps^i, e_j> = delta at every point.

        Exact (polynomial) for constant frames; otherwise each form evaluates
        through a pointwise matrix inversion.
        """
        n = self.chart.dim
        if all(v.is_constant() for row in self.rows for v in row):
            m = np.array([[v.eval((0.0,) * n) for v in row] for row in self.rows])
            if abs(np.linalg.det(m)) <= SINGULARITY_TOL:
                raise SingularFrame("constant frame is singular")
            inv = np.linalg.inv(m)
            return tuple(form_field(self.chart, [inv[i, k] for k in range(n)]) for i in range(n))

        out = []
        for i in range(n):
            def fn(point, _i=i):
                inv = self.coframe_at(point)
                coeffs = [0.0] * (1 << n)
                for k in range(n):
                    coeffs[1 << k] = inv[_i, k]
                return Multiform(n, tuple(coeffs))

            out.append(PointwiseMultiformField(self.chart, fn))
        return tuple(out)

    def frame_blade(self, mask: int) -> MultivectorField:
        """Wedge of frame vectors selected by mask, as a polynomial field."""
        base = MultivectorField.from_blades(self.chart, {mask: 1.0})
        return self.as_extensor_field().extend_field(base)


def dual_frame(frame: FrameField):
    """Coframe of a frame field; see FrameField.dual_frame."""
    return frame.dual_frame()


# ---------------------------------------------------------------------------
# pointwise (numerically-evaluated) fields


class _PointwiseBase:
    """Field backed by a point-evaluation function instead of polynomials."""

    def __init__(self, chart: Chart, fn):
        self.chart = chart
        self.fn = fn

    def eval(self, point):
        self.chart.require(point)
        return self.fn(point)


class PointwiseMultivectorField(_PointwiseBase):
    kind = VECTOR


class PointwiseMultiformField(_PointwiseBase):
    kind = FORM


class PointwiseScalarField(_PointwiseBase):
    kind = "scalar"


class PointwiseExtensorField:
    """Operator field evaluated pointwise (inverses, frame changes)."""

    def __init__(self, chart: Chart, fn, kind: str = VECTOR):
        self.chart = chart
        self.fn = fn
        self.kind = kind

    def at(self, point) -> Extensor:
        self.chart.require(point)
        return self.fn(point)

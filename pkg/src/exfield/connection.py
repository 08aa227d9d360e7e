"""Covariant, deformed and relative derivatives of graded fields.

A parallelism structure is a chart plus connection coefficients G^k_ij
(direction index i, argument index j, output index k), stored sparsely as
polynomials.  For a direction field a the grade-1 connection action is the
extensor field

    gamma_a(e_j) = sum_{i,k} a^i G^k_ij e_k

and the derivative operators split into a coordinate part plus an algebraic
part:

    scalars:      nabla_a f   = a(f)
    multivectors: nabla_a X   = d_a X + gen(gamma_a)(X)
    multiforms:   nabla_a Phi = d_a Phi - gen(adj(gamma_a))(Phi)

where d_a differentiates coordinate components, gen is the derivation lift
and adj the duality adjoint.  All of that stays polynomial-exact.

The axiom-style derivative (differentiating the scalar functions a k-vector
produces against k test coframes, then subtracting the correction terms) is
implemented separately as an independent oracle for the split formulas.

Deformed derivatives conjugate nabla_a by the outermorphism lift of an
invertible operator field; relative derivatives conjugate the coordinate
derivative by a frame.  Both involve pointwise matrix inverses, which are
not polynomial, so their inner derivatives use central finite differences
with step FD_STEP; identities along these paths hold to ~1e-6 rather than
1e-9.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraError
from .extensor import FORM, VECTOR, Extensor
from .fields import (
    Chart,
    ExtensorField,
    MultiformField,
    MultivectorField,
    PointwiseExtensorField,
    PointwiseMultiformField,
    PointwiseMultivectorField,
    Polynomial,
    ScalarField,
    FrameField,
    _as_poly,
    coordinate_vector,
    directional_derivative,
    pairing_field,
    require_grade1,
)

FD_STEP = 1e-5


@dataclass(frozen=True)
class ParallelismStructure:
    """Chart plus sparse polynomial connection coefficients G^k_ij.

    Keys are 1-based (i, j, k) triples; absent entries are zero.
    """

    chart: Chart
    gamma: dict = field(default_factory=dict)

    def __post_init__(self):
        n = self.chart.dim
        canon = {}
        for key, value in dict(self.gamma).items():
            i, j, k = (int(v) for v in key)
            if not all(1 <= v <= n for v in (i, j, k)):
                raise AlgebraError(f"connection index {key} outside 1..{n}")
            p = _as_poly(value, n)
            if p:
                canon[(i, j, k)] = p
        object.__setattr__(self, "gamma", canon)

    def gamma_poly(self, i: int, j: int, k: int) -> Polynomial:
        return self.gamma.get((i, j, k), Polynomial.zero(self.chart.dim))

    def gamma_extensor(self, a: MultivectorField) -> ExtensorField:
        """The connection extensor gamma_a for a direction field a."""
        self.chart.same_as(a.chart)
        require_grade1(a, "direction")
        n = self.chart.dim
        rows = [[Polynomial.zero(n) for _ in range(n)] for _ in range(n)]
        for (i, j, k), g in self.gamma.items():
            ai = a.comps[1 << (i - 1)]
            if ai:
                rows[k - 1][j - 1] = rows[k - 1][j - 1] + ai * g
        return ExtensorField(self.chart, tuple(tuple(r) for r in rows), VECTOR)


@dataclass(frozen=True)
class RelativeStructure:
    """Chart plus an everywhere-invertible frame defining a relative derivative."""

    chart: Chart
    frame: FrameField

    def __post_init__(self):
        self.chart.same_as(self.frame.chart)


@dataclass(frozen=True)
class DeformedStructure:
    """A parallelism structure conjugated by an invertible operator field."""

    base: ParallelismStructure
    deformation: ExtensorField

    def __post_init__(self):
        self.base.chart.same_as(self.deformation.chart)
        if self.deformation.kind != VECTOR:
            raise AlgebraError("deformation must act on vectors")

    @property
    def chart(self) -> Chart:
        return self.base.chart


# ---------------------------------------------------------------------------
# coordinate (componentwise) derivative and the covariant split formulas


def coordinate_partial(a: MultivectorField, x):
    """Componentwise derivative d_a in the coordinate frame (exact)."""
    a.chart.same_as(x.chart)
    require_grade1(a, "direction")
    if isinstance(x, ScalarField):
        return directional_derivative(a, x)
    return x._like([directional_derivative(a, x.component(m)).poly for m in range(len(x.comps))])


def cov_deriv_scalar(struct: ParallelismStructure, a, f: ScalarField) -> ScalarField:
    """nabla_a f = a(f); independent of the connection coefficients."""
    struct.chart.same_as(f.chart)
    return directional_derivative(a, f)


def cov_deriv_vector(struct: ParallelismStructure, a, v: MultivectorField) -> MultivectorField:
    """nabla_a v = d_a v + gamma_a(v) on grade-1 fields."""
    require_grade1(v, "vector field")
    return coordinate_partial(a, v) + struct.gamma_extensor(a).apply_field(v)


def cov_deriv_form(struct: ParallelismStructure, a, w: MultiformField) -> MultiformField:
    """nabla_a w = d_a w - adj(gamma_a)(w) on grade-1 fields."""
    require_grade1(w, "form field")
    return coordinate_partial(a, w) - struct.gamma_extensor(a).adjoint().apply_field(w)


def cov_deriv_multivector(struct: ParallelismStructure, a, x: MultivectorField) -> MultivectorField:
    """nabla_a X = d_a X + gen(gamma_a)(X); grade-preserving."""
    struct.chart.same_as(x.chart)
    return coordinate_partial(a, x) + struct.gamma_extensor(a).generalize_field(x)


def cov_deriv_multiform(struct: ParallelismStructure, a, phi: MultiformField) -> MultiformField:
    """nabla_a Phi = d_a Phi - gen(adj(gamma_a))(Phi); grade-preserving."""
    struct.chart.same_as(phi.chart)
    return coordinate_partial(a, phi) - struct.gamma_extensor(a).adjoint().generalize_field(phi)


def cov_deriv(struct: ParallelismStructure, a, x):
    """Covariant derivative dispatched on the field kind."""
    if isinstance(x, ScalarField):
        return cov_deriv_scalar(struct, a, x)
    if isinstance(x, MultivectorField):
        return cov_deriv_multivector(struct, a, x)
    if isinstance(x, MultiformField):
        return cov_deriv_multiform(struct, a, x)
    raise TypeError(f"cannot differentiate {type(x).__name__}")


# ---------------------------------------------------------------------------
# axiom-style derivatives (independent oracle for the split formulas)


def _homogeneous_grade(x) -> int:
    grades = x.grades()
    if len(grades) > 1:
        raise AlgebraError(f"field is not homogeneous: grades {sorted(grades)}")
    return grades.pop() if grades else 0


def axiom_deriv_multivector(struct, a, x: MultivectorField, omegas, point) -> float:
    """Axiom-form value <w^1 ^ ... ^ w^k, nabla_a X~> at a point.

    Differentiates the scalar field X(w^1, .., w^k) = <w^1 ^ .. ^ w^k, X>
    along a and subtracts the k terms with one test coframe replaced by its
    covariant derivative.  Everything stays polynomial, so this is an exact
    independent route to the split-form derivative.
    """
    k = _homogeneous_grade(x)
    if k != len(omegas):
        raise AlgebraError(f"grade {k} field needs {k} test forms, got {len(omegas)}")
    if k == 0:
        return cov_deriv_scalar(struct, a, x.component(0)).eval(point)
    for w in omegas:
        require_grade1(w, "test form")

    def wedge_all(forms):
        out = forms[0]
        for w in forms[1:]:
            out = out.wedge(w)
        return out

    base = pairing_field(wedge_all(list(omegas)), x)
    total = directional_derivative(a, base).eval(point)
    for i in range(k):
        replaced = list(omegas)
        replaced[i] = cov_deriv_form(struct, a, replaced[i])
        total -= pairing_field(wedge_all(replaced), x).eval(point)
    return total


def axiom_deriv_multiform(struct, a, phi: MultiformField, vectors, point) -> float:
    """Axiom-form value <nabla_a Phi~, v_1 ^ ... ^ v_k> at a point."""
    k = _homogeneous_grade(phi)
    if k != len(vectors):
        raise AlgebraError(f"grade {k} field needs {k} test vectors, got {len(vectors)}")
    if k == 0:
        return cov_deriv_scalar(struct, a, phi.component(0)).eval(point)
    for v in vectors:
        require_grade1(v, "test vector")

    def wedge_all(fields):
        out = fields[0]
        for v in fields[1:]:
            out = out.wedge(v)
        return out

    base = pairing_field(phi, wedge_all(list(vectors)))
    total = directional_derivative(a, base).eval(point)
    for i in range(k):
        replaced = list(vectors)
        replaced[i] = cov_deriv_vector(struct, a, replaced[i])
        total -= pairing_field(phi, wedge_all(replaced)).eval(point)
    return total


# ---------------------------------------------------------------------------
# finite differences on pointwise evaluations


def fd_partial(fn, point, i: int, h: float = FD_STEP):
    """Central difference of a point-valued function along coordinate i."""
    plus = list(point)
    minus = list(point)
    plus[i] += h
    minus[i] -= h
    return (1.0 / (2.0 * h)) * (fn(tuple(plus)) - fn(tuple(minus)))


def fd_directional(fn, a: MultivectorField, point, h: float = FD_STEP):
    """Finite-difference directional derivative sum_i a^i(p) d_i fn."""
    av = a.eval(point)
    out = None
    for i in range(a.chart.dim):
        c = av[1 << i]
        if c:
            term = c * fd_partial(fn, point, i, h)
            out = term if out is None else out + term
    if out is None:
        out = 0.0 * fn(point)
    return out


# ---------------------------------------------------------------------------
# deformed derivatives


def deformed_deriv_multivector(dstruct: DeformedStructure, a, x) -> PointwiseMultivectorField:
    """Deformed derivative ext(lam) . nabla_a . ext(lam^-1) on multivectors.

    The inner field ext(lam^-1)(X) is rational, so its coordinate derivative
    is taken by central differences; the connection term and the outer lift
    evaluate exactly at the point.
    """
    struct, lam = dstruct.base, dstruct.deformation
    struct.chart.same_as(x.chart)
    gam = struct.gamma_extensor(a)

    def inner(q):
        return lam.at(q).invert().extend(x.eval(q))

    def at(p):
        dval = fd_directional(inner, a, p)
        val = dval + gam.at(p).generalize(inner(p))
        return lam.at(p).extend(val)

    return PointwiseMultivectorField(dstruct.chart, at)


def deformed_deriv_multiform(dstruct: DeformedStructure, a, phi) -> PointwiseMultiformField:
    """Deformed derivative ext(lam)^-adj . nabla_a . ext(lam)^adj on multiforms."""
    struct, lam = dstruct.base, dstruct.deformation
    struct.chart.same_as(phi.chart)
    gam_adj = struct.gamma_extensor(a).adjoint()

    def inner(q):
        return lam.at(q).duality_adjoint().extend(phi.eval(q))

    def at(p):
        dval = fd_directional(inner, a, p)
        val = dval - gam_adj.at(p).generalize(inner(p))
        return lam.at(p).duality_adjoint().invert().extend(val)

    return PointwiseMultiformField(dstruct.chart, at)


def deformed_deriv(dstruct: DeformedStructure, a, x):
    if isinstance(x, ScalarField):
        return cov_deriv_scalar(dstruct.base, a, x)
    if isinstance(x, (MultivectorField, PointwiseMultivectorField)):
        return deformed_deriv_multivector(dstruct, a, x)
    return deformed_deriv_multiform(dstruct, a, x)


# ---------------------------------------------------------------------------
# relative derivatives, relative connection, Jacobian transport


def relative_deriv(rstruct: RelativeStructure, a, x):
    """Frame-constant derivative: differentiate frame components as scalars.

    Coordinate frames keep the exact polynomial path (plain componentwise
    differentiation); general frames conjugate the coordinate derivative by
    the frame's outermorphism lift and finite-difference the inner field.
    """
    frame = rstruct.frame
    if isinstance(x, ScalarField):
        return directional_derivative(a, x)

    if frame.is_coordinate:
        if isinstance(x, (MultivectorField, MultiformField)):
            return coordinate_partial(a, x)
        # pointwise input: componentwise finite differences
        cls = (
            PointwiseMultivectorField
            if isinstance(x, PointwiseMultivectorField)
            else PointwiseMultiformField
        )
        return cls(rstruct.chart, lambda p: fd_directional(x.eval, a, p))

    vector_side = getattr(x, "kind", VECTOR) == VECTOR

    if vector_side:

        def inner(q):
            inv = Extensor.from_matrix(np.linalg.inv(frame.matrix_at(q)), VECTOR)
            return inv.extend(x.eval(q))

        def at(p):
            dval = fd_directional(inner, a, p)
            return Extensor.from_matrix(frame.matrix_at(p), VECTOR).extend(dval)

        return PointwiseMultivectorField(rstruct.chart, at)

    def inner(q):
        return Extensor.from_matrix(frame.matrix_at(q).T, FORM).extend(x.eval(q))

    def at(p):
        inv_t = Extensor.from_matrix(np.linalg.inv(frame.matrix_at(p)).T, FORM)
        return inv_t.extend(fd_directional(inner, a, p))

    return PointwiseMultiformField(rstruct.chart, at)


class RelativeConnection:
    """Solves nabla_a = d_a + gamma_a for the frame of a relative structure."""

    def __init__(self, struct: ParallelismStructure, rstruct: RelativeStructure):
        struct.chart.same_as(rstruct.chart)
        self.struct = struct
        self.rstruct = rstruct
        self.chart = struct.chart

    def gamma(self, a):
        """The connection extensor field gamma_a relative to the frame.

        Exact (polynomial) when the frame is the coordinate frame, in which
        case it reproduces the stored coefficients; pointwise otherwise.
        """
        if self.rstruct.frame.is_coordinate:
            return self.struct.gamma_extensor(a)
        n = self.chart.dim
        basis = [coordinate_vector(self.chart, j + 1) for j in range(n)]
        nabla_cols = [cov_deriv_vector(self.struct, a, b) for b in basis]
        partial_cols = [relative_deriv(self.rstruct, a, b) for b in basis]

        def at(p):
            rows = [[0.0] * n for _ in range(n)]
            for j in range(n):
                col = nabla_cols[j].eval(p) - partial_cols[j].eval(p)
                for k in range(n):
                    rows[k][j] = col[1 << k]
            return Extensor(n, tuple(tuple(r) for r in rows), VECTOR)

        return PointwiseExtensorField(self.chart, at, VECTOR)


def relative_connection(struct: ParallelismStructure, rstruct: RelativeStructure) -> RelativeConnection:
    """Direction-indexed connection extensor of a structure relative to a frame."""
    return RelativeConnection(struct, rstruct)


def jacobian(rstruct: RelativeStructure, rstruct2: RelativeStructure):
    """Frame-change operator field J with J(frame vector j) = primed vector j.

    Exact (polynomial) when the first frame is the coordinate frame;
    pointwise matrix product E' E^-1 otherwise.
    """
    rstruct.chart.same_as(rstruct2.chart)
    if rstruct.frame.is_coordinate:
        return rstruct2.frame.as_extensor_field()

    def at(p):
        e = rstruct.frame.matrix_at(p)
        e2 = rstruct2.frame.matrix_at(p)
        return Extensor.from_matrix(e2 @ np.linalg.inv(e), VECTOR)

    return PointwiseExtensorField(rstruct.chart, at, VECTOR)

"""Seeded randomized verification of the engine's identity catalog.

Every registered check evaluates both sides of one identity on freshly drawn
random polynomial fields at a random interior point and reports the largest
absolute residual over all trials.  Checks come in two tiers:

* ``exact``  -- polynomial-closed paths, tolerance 1e-9;
* ``fd``     -- paths through pointwise matrix inverses, where inner
  derivatives use central finite differences, tolerance 1e-6.

Randomness is fully deterministic: trial t of check c at dimension n under
master seed s uses an RNG seeded by (s, crc32(c), tier, n, t), so reports
are identical run to run, in any execution order, including concurrent.

Each check also carries a mutation variant (a sign flip, a dropped term, or
an injected term) that must fail; these negative controls guard against
vacuously-true checks.

The random field model: polynomial coefficients uniform in [-1, 1], degree
at most 3; frames and deformation operators are the identity plus a
0.2-scaled polynomial perturbation, which keeps them invertible on the
[-1, 1]^n box with margin.
"""

from __future__ import annotations

import json
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    AlgebraError,
    Multiform,
    Multivector,
    duality_scalar,
    grade_of,
    left_contract,
    right_contract,
)
from .connection import (
    DeformedStructure,
    ParallelismStructure,
    RelativeStructure,
    axiom_deriv_multiform,
    axiom_deriv_multivector,
    coordinate_partial,
    cov_deriv_form,
    cov_deriv_multiform,
    cov_deriv_multivector,
    cov_deriv_scalar,
    cov_deriv_vector,
    deformed_deriv_multiform,
    deformed_deriv_multivector,
    fd_directional,
    jacobian,
    relative_connection,
    relative_deriv,
)
from .extensor import Extensor, SingularExtensor
from .fields import (
    Chart,
    ExtensorField,
    FrameField,
    MultiformField,
    MultivectorField,
    PointwiseMultiformField,
    PointwiseMultivectorField,
    Polynomial,
    ScalarField,
    SingularFrame,
    coordinate_form,
    coordinate_vector,
    form_field,
    left_contract_field,
    pairing_field,
    right_contract_field,
    vector_field,
)

EXACT_TOL = 1e-9
FD_TOL = 1e-6
POINT_MARGIN = 0.05
MAX_REDRAWS = 10


class UnknownIdentity(AlgebraError):
    """A check id is not in the registered catalog."""


class DegenerateDraw(AlgebraError):
    """A random draw hit a singular configuration; the trial is redrawn."""


# ---------------------------------------------------------------------------
# random model


def _chart(n: int) -> Chart:
    return Chart(n)


def rand_poly(rng, n: int, degree: int = 3, terms: int = 2) -> Polynomial:
    acc = {}
    for _ in range(terms):
        d = int(rng.integers(0, degree + 1))
        exps = [0] * n
        for _ in range(d):
            exps[int(rng.integers(0, n))] += 1
        key = tuple(exps)
        acc[key] = acc.get(key, 0.0) + float(rng.uniform(-1, 1))
    return Polynomial.make(n, acc)


def rand_scalar_field(rng, chart: Chart, degree: int = 3) -> ScalarField:
    return ScalarField(chart, rand_poly(rng, chart.dim, degree, terms=3))


def rand_direction(rng, chart: Chart, degree: int = 3) -> MultivectorField:
    return vector_field(
        chart, [rand_poly(rng, chart.dim, degree) for _ in range(chart.dim)]
    )


def _rand_graded(rng, cls, chart: Chart, degree: int):
    size = 1 << chart.dim
    masks = range(size) if size <= 8 else rng.choice(size, 8, replace=False)
    blades = {int(m): rand_poly(rng, chart.dim, degree) for m in masks}
    return cls.from_blades(chart, blades)


def rand_multivector_field(rng, chart: Chart, degree: int = 3) -> MultivectorField:
    return _rand_graded(rng, MultivectorField, chart, degree)


def rand_multiform_field(rng, chart: Chart, degree: int = 3) -> MultiformField:
    return _rand_graded(rng, MultiformField, chart, degree)


def rand_homogeneous(rng, cls, chart: Chart, k: int, degree: int = 3):
    size = 1 << chart.dim
    blades = {
        m: rand_poly(rng, chart.dim, degree) for m in range(size) if grade_of(m) == k
    }
    return cls.from_blades(chart, blades)


def rand_gamma(rng, chart: Chart, degree: int = 2) -> ParallelismStructure:
    n = chart.dim
    gamma = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if rng.uniform() < 0.35:
                    gamma[(i, j, k)] = rand_poly(rng, n, min(degree, 2), terms=1)
    return ParallelismStructure(chart, gamma)


def _perturbed_identity_rows(rng, n: int):
    rows = []
    for r in range(n):
        row = []
        for c in range(n):
            base = Polynomial.one(n) if r == c else Polynomial.zero(n)
            row.append(base + 0.2 * rand_poly(rng, n, 2, terms=1))
        rows.append(tuple(row))
    return tuple(rows)


def rand_frame(rng, chart: Chart) -> FrameField:
    return FrameField(chart, _perturbed_identity_rows(rng, chart.dim))


def rand_lambda(rng, chart: Chart) -> ExtensorField:
    return ExtensorField(chart, _perturbed_identity_rows(rng, chart.dim), "vector")


def rand_operator(rng, n: int, kind: str = "vector") -> Extensor:
    return Extensor.from_matrix(np.eye(n) + 0.2 * rng.uniform(-1, 1, (n, n)), kind)


def rand_point(rng, chart: Chart, margin: float = POINT_MARGIN):
    return tuple(
        float(rng.uniform(lo + margin, hi - margin)) for lo, hi in chart.box
    )


def residual(x, y) -> tuple[float, float]:
    """(absolute, relative) difference between two values of the same shape."""
    if isinstance(x, (int, float)) and isinstance(y, (int, float)):
        a = abs(x - y)
        return a, a / max(1.0, abs(x), abs(y))
    a = max(abs(u - v) for u, v in zip(x.coeffs, y.coeffs))
    return a, a / max(1.0, x.norm_inf(), y.norm_inf())


# ---------------------------------------------------------------------------
# catalog registry


@dataclass(frozen=True)
class CheckDef:
    check_id: str
    title: str
    statement: str
    anchor: str
    lhs: str
    rhs: str
    mutation: str
    tiers: tuple[str, ...]
    runner: object


CATALOG: dict[str, CheckDef] = {}


def check(check_id, *, title, statement, anchor, lhs, rhs, mutation, tiers=("exact",)):
    def register(fn):
        CATALOG[check_id] = CheckDef(
            check_id, title, statement, anchor, lhs, rhs, mutation, tiers, fn
        )
        return fn

    return register


# ---------------------------------------------------------------------------
# pointwise-lifting checks (module structure and duality products)


def _pointwise_pair(make_op, point_op, mutate_sign=True):
    """Runner factory: field-level op then eval vs eval then point-level op."""

    def run(rng, n, degree, fd, mutate):
        chart = _chart(n)
        x = rand_multivector_field(rng, chart, degree)
        y = rand_multivector_field(rng, chart, degree)
        phi = rand_multiform_field(rng, chart, degree)
        psi = rand_multiform_field(rng, chart, degree)
        f = rand_scalar_field(rng, chart, degree)
        p = rand_point(rng, chart)
        lhs = make_op(x, y, phi, psi, f).eval(p)
        rhs = point_op(x.eval(p), y.eval(p), phi.eval(p), psi.eval(p), f.eval(p))
        if mutate:
            rhs = -rhs
        return residual(lhs, rhs)

    return run


check(
    "MMF9",
    title="pointwise addition of multivector fields",
    statement="(X + Y)(p) = X(p) + Y(p)",
    anchor="field addition is defined point by point",
    lhs="field-level sum evaluated at p",
    rhs="point values added",
    mutation="negates the point-level sum",
)(_pointwise_pair(lambda x, y, phi, psi, f: x + y, lambda x, y, phi, psi, f: x + y))

check(
    "MMF10",
    title="pointwise addition of multiform fields",
    statement="(Phi + Psi)(p) = Phi(p) + Psi(p)",
    anchor="field addition is defined point by point",
    lhs="field-level sum evaluated at p",
    rhs="point values added",
    mutation="negates the point-level sum",
)(_pointwise_pair(lambda x, y, phi, psi, f: phi + psi, lambda x, y, phi, psi, f: phi + psi))

check(
    "MMF11",
    title="pointwise scalar multiplication of multivector fields",
    statement="(f X)(p) = f(p) X(p)",
    anchor="module product over the scalar ring, point by point",
    lhs="field-level scalar product evaluated at p",
    rhs="point value scaled by f(p)",
    mutation="negates the point-level product",
)(
    _pointwise_pair(
        lambda x, y, phi, psi, f: x.scalar_mul(f), lambda x, y, phi, psi, f: f * x
    )
)

check(
    "MMF12",
    title="pointwise scalar multiplication of multiform fields",
    statement="(f Phi)(p) = f(p) Phi(p)",
    anchor="module product over the scalar ring, point by point",
    lhs="field-level scalar product evaluated at p",
    rhs="point value scaled by f(p)",
    mutation="negates the point-level product",
)(
    _pointwise_pair(
        lambda x, y, phi, psi, f: phi.scalar_mul(f), lambda x, y, phi, psi, f: f * phi
    )
)

check(
    "MMF13",
    title="pointwise exterior product of multivector fields",
    statement="(X ^ Y)(p) = X(p) ^ Y(p)",
    anchor="exterior product of fields, point by point",
    lhs="field-level wedge evaluated at p",
    rhs="wedge of point values",
    mutation="negates the point-level wedge",
)(_pointwise_pair(lambda x, y, phi, psi, f: x.wedge(y), lambda x, y, phi, psi, f: x.wedge(y)))

check(
    "MMF14",
    title="pointwise exterior product of multiform fields",
    statement="(Phi ^ Psi)(p) = Phi(p) ^ Psi(p)",
    anchor="exterior product of fields, point by point",
    lhs="field-level wedge evaluated at p",
    rhs="wedge of point values",
    mutation="negates the point-level wedge",
)(
    _pointwise_pair(
        lambda x, y, phi, psi, f: phi.wedge(psi), lambda x, y, phi, psi, f: phi.wedge(psi)
    )
)

check(
    "MMF15",
    title="pointwise duality scalar product",
    statement="<Phi, X>(p) = <Phi(p), X(p)>",
    anchor="duality pairing of a multiform with a multivector field",
    lhs="field-level pairing evaluated at p",
    rhs="pairing of point values",
    mutation="negates the point-level pairing",
)(
    _pointwise_pair(
        lambda x, y, phi, psi, f: pairing_field(phi, x),
        lambda x, y, phi, psi, f: duality_scalar(phi, x),
    )
)

check(
    "MMF16",
    title="pointwise left contraction, form into vector",
    statement="<Phi, X|(p) = <Phi(p), X(p)|",
    anchor="duality left contracted product, point by point",
    lhs="field-level contraction evaluated at p",
    rhs="contraction of point values",
    mutation="negates the point-level contraction",
)(
    _pointwise_pair(
        lambda x, y, phi, psi, f: left_contract_field(phi, x),
        lambda x, y, phi, psi, f: __import__("exfield.algebra", fromlist=["left_contract"]).left_contract(phi, x),
    )
)

check(
    "MMF17",
    title="pointwise left contraction, vector into form",
    statement="<X, Phi|(p) = <X(p), Phi(p)|",
    anchor="duality left contracted product, point by point",
    lhs="field-level contraction evaluated at p",
    rhs="contraction of point values",
    mutation="negates the point-level contraction",
)(
    _pointwise_pair(
        lambda x, y, phi, psi, f: left_contract_field(x, phi),
        lambda x, y, phi, psi, f: __import__("exfield.algebra", fromlist=["left_contract"]).left_contract(x, phi),
    )
)

check(
    "MMF18",
    title="pointwise right contraction, form against vector",
    statement="|Phi, X>(p) = |Phi(p), X(p)>",
    anchor="duality right contracted product, point by point",
    lhs="field-level contraction evaluated at p",
    rhs="contraction of point values",
    mutation="negates the point-level contraction",
)(
    _pointwise_pair(
        lambda x, y, phi, psi, f: right_contract_field(phi, x),
        lambda x, y, phi, psi, f: __import__("exfield.algebra", fromlist=["right_contract"]).right_contract(phi, x),
    )
)

check(
    "MMF19",
    title="pointwise right contraction, vector against form",
    statement="|X, Phi>(p) = |X(p), Phi(p)>",
    anchor="duality right contracted product, point by point",
    lhs="field-level contraction evaluated at p",
    rhs="contraction of point values",
    mutation="negates the point-level contraction",
)(
    _pointwise_pair(
        lambda x, y, phi, psi, f: right_contract_field(x, phi),
        lambda x, y, phi, psi, f: __import__("exfield.algebra", fromlist=["right_contract"]).right_contract(x, phi),
    )
)


# ---------------------------------------------------------------------------
# covariant derivative axioms and properties


def _common(rng, n, degree):
    chart = _chart(n)
    struct = rand_gamma(rng, chart)
    a = rand_direction(rng, chart, degree)
    p = rand_point(rng, chart)
    return chart, struct, a, p


@check(
    "CDMMF1",
    title="scalar derivative is the directional action",
    statement="nabla_a f = a(f)",
    anchor="covariant derivative of a scalar field reduces to a(f)",
    lhs="connection-based scalar derivative at p",
    rhs="exact jet of f along the frozen direction a(p)",
    mutation="negates the jet",
)
def _cdmmf1(rng, n, degree, fd, mutate):
    chart, struct, a, p = _common(rng, n, degree)
    f = rand_scalar_field(rng, chart, degree)
    lhs = cov_deriv_scalar(struct, a, f).eval(p)
    av = a.eval(p)
    rhs = f.jet(p, [av[1 << i] for i in range(n)])
    if mutate:
        rhs = -rhs
    return residual(lhs, rhs)


@check(
    "CDMMF2",
    title="axiom form of the multivector derivative",
    statement="(nabla_a X)(w1..wk) = a(X(w1..wk)) - sum_i X(w1,..,nabla_a wi,..,wk)",
    anchor="derivative acts through the scalars a k-vector produces",
    lhs="axiom-form value with k test coframe fields",
    rhs="split-form derivative paired against the wedged test forms",
    mutation="drops the last correction term",
)
def _cdmmf2(rng, n, degree, fd, mutate):
    chart, struct, a, p = _common(rng, n, degree)
    k = int(rng.integers(1, n + 1))
    x = rand_homogeneous(rng, MultivectorField, chart, k, degree)
    omegas = [form_field(chart, [rand_poly(rng, n, degree) for _ in range(n)]) for _ in range(k)]
    lhs = axiom_deriv_multivector(struct, a, x, omegas, p)
    if mutate:
        replaced = list(omegas)
        replaced[-1] = cov_deriv_form(struct, a, replaced[-1])
        w = replaced[0]
        for wf in replaced[1:]:
            w = w.wedge(wf)
        lhs += pairing_field(w, x).eval(p)
    w = omegas[0]
    for wf in omegas[1:]:
        w = w.wedge(wf)
    rhs = pairing_field(w, cov_deriv_multivector(struct, a, x)).eval(p)
    return residual(lhs, rhs)


@check(
    "CDMMF3",
    title="multivector derivative is additive over the grade decomposition",
    statement="nabla_a X = sum_k nabla_a X_k",
    anchor="derivative of a sum of homogeneous parts",
    lhs="derivative of the full field at p",
    rhs="sum of derivatives of the grade parts",
    mutation="drops the grade-1 term from the sum",
)
def _cdmmf3(rng, n, degree, fd, mutate):
    chart, struct, a, p = _common(rng, n, degree)
    x = rand_multivector_field(rng, chart, degree)
    lhs = cov_deriv_multivector(struct, a, x).eval(p)
    rhs = Multivector.zero(n)
    for k in range(n + 1):
        if mutate and k == 1:
            continue
        rhs = rhs + cov_deriv_multivector(struct, a, x.grade_part(k)).eval(p)
    return residual(lhs, rhs)


def _grade_preservation(cls, deriv):
    def run(rng, n, degree, fd, mutate):
        chart, struct, a, p = _common(rng, n, degree)
        worst = 0.0
        for k in range(n + 1):
            xk = rand_homogeneous(rng, cls, chart, k, degree)
            val = deriv(struct, a, xk).eval(p)
            if mutate and k >= 1:
                val = val + type(val).scalar(n, 1.0)
            off = max(
                (abs(c) for m, c in enumerate(val.coeffs) if grade_of(m) != k),
                default=0.0,
            )
            worst = max(worst, off)
        return worst, worst

    return run


check(
    "CDMMF4",
    title="multivector derivative preserves grade",
    statement="X homogeneous of grade k implies nabla_a X homogeneous of grade k",
    anchor="the derivative operator is grade-preserving on multivectors",
    lhs="off-grade coefficient mass of nabla_a X_k",
    rhs="zero",
    mutation="injects a grade-0 term into the derivative",
)(_grade_preservation(MultivectorField, cov_deriv_multivector))

check(
    "CDMMF11",
    title="multiform derivative preserves grade",
    statement="Phi homogeneous of grade k implies nabla_a Phi homogeneous of grade k",
    anchor="the derivative operator is grade-preserving on multiforms",
    lhs="off-grade coefficient mass of nabla_a Phi_k",
    rhs="zero",
    mutation="injects a grade-0 term into the derivative",
)(_grade_preservation(MultiformField, cov_deriv_multiform))


def _direction_linearity(cls, rand_field, deriv):
    def run(rng, n, degree, fd, mutate):
        chart = _chart(n)
        struct = rand_gamma(rng, chart)
        a = rand_direction(rng, chart, degree)
        b = rand_direction(rng, chart, degree)
        f = rand_scalar_field(rng, chart, degree)
        x = rand_field(rng, chart, degree)
        p = rand_point(rng, chart)
        lhs1 = deriv(struct, a + b, x).eval(p)
        rhs1 = deriv(struct, a, x).eval(p) + deriv(struct, b, x).eval(p)
        lhs2 = deriv(struct, a.scalar_mul(f), x).eval(p)
        rhs2 = f.eval(p) * deriv(struct, a, x).eval(p)
        if mutate:
            rhs2 = -rhs2
        r1 = residual(lhs1, rhs1)
        r2 = residual(lhs2, rhs2)
        return max(r1[0], r2[0]), max(r1[1], r2[1])

    return run


check(
    "CDMMF5",
    title="multivector derivative is function-linear in the direction",
    statement="nabla_{a+b} X = nabla_a X + nabla_b X ; nabla_{f a} X = f nabla_a X",
    anchor="direction slot is linear over the scalar ring",
    lhs="derivative along a+b and along f*a",
    rhs="sum of derivatives and scaled derivative",
    mutation="negates the scaled derivative",
)(_direction_linearity(MultivectorField, rand_multivector_field, cov_deriv_multivector))

check(
    "CDMMF12",
    title="multiform derivative is function-linear in the direction",
    statement="nabla_{a+b} Phi = nabla_a Phi + nabla_b Phi ; nabla_{f a} Phi = f nabla_a Phi",
    anchor="direction slot is linear over the scalar ring",
    lhs="derivative along a+b and along f*a",
    rhs="sum of derivatives and scaled derivative",
    mutation="negates the scaled derivative",
)(_direction_linearity(MultiformField, rand_multiform_field, cov_deriv_multiform))


def _module_leibniz(cls, rand_field, deriv):
    def run(rng, n, degree, fd, mutate):
        chart, struct, a, p = _common(rng, n, degree)
        f = rand_scalar_field(rng, chart, degree)
        x = rand_field(rng, chart, degree)
        y = rand_field(rng, chart, degree)
        lhs1 = deriv(struct, a, x + y).eval(p)
        rhs1 = deriv(struct, a, x).eval(p) + deriv(struct, a, y).eval(p)
        lhs2 = deriv(struct, a, x.scalar_mul(f)).eval(p)
        rhs2 = f.eval(p) * deriv(struct, a, x).eval(p)
        if not mutate:
            af = cov_deriv_scalar(struct, a, f).eval(p)
            rhs2 = rhs2 + af * x.eval(p)
        r1 = residual(lhs1, rhs1)
        r2 = residual(lhs2, rhs2)
        return max(r1[0], r2[0]), max(r1[1], r2[1])

    return run


check(
    "CDMMF6",
    title="multivector derivative obeys the module Leibniz rule",
    statement="nabla_a(X+Y) = nabla_a X + nabla_a Y ; nabla_a(f X) = (a f) X + f nabla_a X",
    anchor="Leibniz rule over scalar multiplication",
    lhs="derivative of the sum and of the scaled field",
    rhs="termwise derivatives with the (a f) X term",
    mutation="drops the (a f) X term",
)(_module_leibniz(MultivectorField, rand_multivector_field, cov_deriv_multivector))

check(
    "CDMMF13",
    title="multiform derivative obeys the module Leibniz rule",
    statement="nabla_a(Phi+Psi) = nabla_a Phi + nabla_a Psi ; nabla_a(f Phi) = (a f) Phi + f nabla_a Phi",
    anchor="Leibniz rule over scalar multiplication",
    lhs="derivative of the sum and of the scaled field",
    rhs="termwise derivatives with the (a f) Phi term",
    mutation="drops the (a f) Phi term",
)(_module_leibniz(MultiformField, rand_multiform_field, cov_deriv_multiform))


def _wedge_leibniz(rand_field, deriv):
    def run(rng, n, degree, fd, mutate):
        chart, struct, a, p = _common(rng, n, degree)
        x = rand_field(rng, chart, degree)
        y = rand_field(rng, chart, degree)
        lhs = deriv(struct, a, x.wedge(y)).eval(p)
        first = deriv(struct, a, x).eval(p).wedge(y.eval(p))
        second = x.eval(p).wedge(deriv(struct, a, y).eval(p))
        rhs = first - second if mutate else first + second
        return residual(lhs, rhs)

    return run


check(
    "CDMMF7",
    title="multivector derivative obeys the wedge Leibniz rule",
    statement="nabla_a(X ^ Y) = (nabla_a X) ^ Y + X ^ nabla_a Y",
    anchor="Leibniz rule over the exterior product",
    lhs="derivative of the wedge",
    rhs="wedge of derivatives, summed",
    mutation="flips the sign of the second term",
)(_wedge_leibniz(rand_multivector_field, cov_deriv_multivector))

check(
    "CDMMF14",
    title="multiform derivative obeys the wedge Leibniz rule",
    statement="nabla_a(Phi ^ Psi) = (nabla_a Phi) ^ Psi + Phi ^ nabla_a Psi",
    anchor="Leibniz rule over the exterior product",
    lhs="derivative of the wedge",
    rhs="wedge of derivatives, summed",
    mutation="flips the sign of the second term",
)(_wedge_leibniz(rand_multiform_field, cov_deriv_multiform))


@check(
    "CDMMF8",
    title="scalar derivative on the multiform side",
    statement="nabla_a f = a(f)",
    anchor="grade-0 multiforms differentiate as scalar fields",
    lhs="multiform derivative of a grade-0 field at p",
    rhs="exact jet of f along the frozen direction a(p)",
    mutation="negates the jet",
)
def _cdmmf8(rng, n, degree, fd, mutate):
    chart, struct, a, p = _common(rng, n, degree)
    f = rand_scalar_field(rng, chart, degree)
    phi = MultiformField.from_scalar(f)
    lhs = cov_deriv_multiform(struct, a, phi).eval(p)[0]
    av = a.eval(p)
    rhs = f.jet(p, [av[1 << i] for i in range(n)])
    if mutate:
        rhs = -rhs
    return residual(lhs, rhs)


@check(
    "CDMMF9",
    title="axiom form of the multiform derivative",
    statement="(nabla_a Phi)(v1..vk) = a(Phi(v1..vk)) - sum_i Phi(v1,..,nabla_a vi,..,vk)",
    anchor="derivative acts through the scalars a k-form produces",
    lhs="axiom-form value with k test vector fields",
    rhs="split-form derivative paired against the wedged test vectors",
    mutation="drops the last correction term",
)
def _cdmmf9(rng, n, degree, fd, mutate):
    chart, struct, a, p = _common(rng, n, degree)
    k = int(rng.integers(1, n + 1))
    phi = rand_homogeneous(rng, MultiformField, chart, k, degree)
    vs = [vector_field(chart, [rand_poly(rng, n, degree) for _ in range(n)]) for _ in range(k)]
    lhs = axiom_deriv_multiform(struct, a, phi, vs, p)
    if mutate:
        replaced = list(vs)
        replaced[-1] = cov_deriv_vector(struct, a, replaced[-1])
        v = replaced[0]
        for vf in replaced[1:]:
            v = v.wedge(vf)
        lhs += pairing_field(phi, v).eval(p)
    v = vs[0]
    for vf in vs[1:]:
        v = v.wedge(vf)
    rhs = pairing_field(cov_deriv_multiform(struct, a, phi), v).eval(p)
    return residual(lhs, rhs)


@check(
    "CDMMF10",
    title="multiform derivative is additive over the grade decomposition",
    statement="nabla_a Phi = sum_k nabla_a Phi_k",
    anchor="derivative of a sum of homogeneous parts",
    lhs="derivative of the full field at p",
    rhs="sum of derivatives of the grade parts",
    mutation="drops the grade-1 term from the sum",
)
def _cdmmf10(rng, n, degree, fd, mutate):
    chart, struct, a, p = _common(rng, n, degree)
    phi = rand_multiform_field(rng, chart, degree)
    lhs = cov_deriv_multiform(struct, a, phi).eval(p)
    rhs = Multiform.zero(n)
    for k in range(n + 1):
        if mutate and k == 1:
            continue
        rhs = rhs + cov_deriv_multiform(struct, a, phi.grade_part(k)).eval(p)
    return residual(lhs, rhs)


@check(
    "CDMMF15",
    title="Leibniz rule over the duality scalar product",
    statement="a<Phi, X> = <nabla_a Phi, X> + <Phi, nabla_a X>",
    anchor="the pairing scalar differentiates by the Leibniz rule",
    lhs="directional derivative of the pairing scalar field",
    rhs="derivative placed on each slot in turn",
    mutation="drops the <Phi, nabla_a X> term",
)
def _cdmmf15(rng, n, degree, fd, mutate):
    chart, struct, a, p = _common(rng, n, degree)
    x = rand_multivector_field(rng, chart, degree)
    phi = rand_multiform_field(rng, chart, degree)
    lhs = cov_deriv_scalar(struct, a, pairing_field(phi, x)).eval(p)
    rhs = duality_scalar(cov_deriv_multiform(struct, a, phi).eval(p), x.eval(p))
    if not mutate:
        rhs += duality_scalar(phi.eval(p), cov_deriv_multivector(struct, a, x).eval(p))
    return residual(lhs, rhs)


def _contraction_leibniz(contract_field, contract_point, first_is_form):
    def run(rng, n, degree, fd, mutate):
        chart, struct, a, p = _common(rng, n, degree)
        x = rand_multivector_field(rng, chart, degree)
        phi = rand_multiform_field(rng, chart, degree)
        first, second = (phi, x) if first_is_form else (x, phi)
        prod = contract_field(first, second)
        d_prod = (
            cov_deriv_multivector(struct, a, prod)
            if isinstance(prod, MultivectorField)
            else cov_deriv_multiform(struct, a, prod)
        )
        dx = cov_deriv_multivector(struct, a, x).eval(p)
        dphi = cov_deriv_multiform(struct, a, phi).eval(p)
        dfirst, dsecond = (dphi, dx) if first_is_form else (dx, dphi)
        term1 = contract_point(dfirst, second.eval(p))
        term2 = contract_point(first.eval(p), dsecond)
        rhs = term1 - term2 if mutate else term1 + term2
        return residual(d_prod.eval(p), rhs)

    return run


from .algebra import left_contract as _lc, right_contract as _rc  # noqa: E402

check(
    "CDMMF16",
    title="Leibniz rule over the left contraction, form into vector",
    statement="nabla_a <Phi, X| = <nabla_a Phi, X| + <Phi, nabla_a X|",
    anchor="Leibniz rule over the duality left contracted product",
    lhs="derivative of the contraction field",
    rhs="derivative placed on each slot in turn",
    mutation="flips the sign of the second term",
)(_contraction_leibniz(left_contract_field, _lc, True))

check(
    "CDMMF17",
    title="Leibniz rule over the left contraction, vector into form",
    statement="nabla_a <X, Phi| = <nabla_a X, Phi| + <X, nabla_a Phi|",
    anchor="Leibniz rule over the duality left contracted product",
    lhs="derivative of the contraction field",
    rhs="derivative placed on each slot in turn",
    mutation="flips the sign of the second term",
)(_contraction_leibniz(left_contract_field, _lc, False))

check(
    "CDMMF18",
    title="Leibniz rule over the right contraction, form against vector",
    statement="nabla_a |Phi, X> = |nabla_a Phi, X> + |Phi, nabla_a X>",
    anchor="Leibniz rule over the duality right contracted product",
    lhs="derivative of the contraction field",
    rhs="derivative placed on each slot in turn",
    mutation="flips the sign of the second term",
)(_contraction_leibniz(right_contract_field, _rc, True))

check(
    "CDMMF19",
    title="Leibniz rule over the right contraction, vector against form",
    statement="nabla_a |X, Phi> = |nabla_a X, Phi> + |X, nabla_a Phi>",
    anchor="Leibniz rule over the duality right contracted product",
    lhs="derivative of the contraction field",
    rhs="derivative placed on each slot in turn",
    mutation="flips the sign of the second term",
)(_contraction_leibniz(right_contract_field, _rc, False))


# ---------------------------------------------------------------------------
# deformed derivatives


def _rand_deformed(rng, n, degree):
    chart = _chart(n)
    struct = rand_gamma(rng, chart)
    lam = rand_lambda(rng, chart)
    a = rand_direction(rng, chart, degree)
    p = rand_point(rng, chart)
    return chart, DeformedStructure(struct, lam), a, p


@check(
    "DCD1",
    title="deformed derivative of a vector field, grade-1 law",
    statement="dnabla_a v = lam(nabla_a(lam^-1 v))",
    anchor="deformation conjugates the derivative on vectors",
    lhs="general deformed derivative restricted to grade 1",
    rhs="direct grade-1 conjugation through apply",
    mutation="negates the direct conjugation",
    tiers=("fd",),
)
def _dcd1(rng, n, degree, fd, mutate):
    chart, dstruct, a, p = _rand_deformed(rng, n, degree)
    lam, struct = dstruct.deformation, dstruct.base
    v = vector_field(chart, [rand_poly(rng, n, degree) for _ in range(n)])
    lhs = deformed_deriv_multivector(dstruct, a, v).eval(p)

    def inner(q):
        return lam.at(q).invert().apply(v.eval(q))

    gam = struct.gamma_extensor(a)
    val = fd_directional(inner, a, p) + gam.at(p).apply(inner(p))
    rhs = lam.at(p).apply(val)
    if mutate:
        rhs = -rhs
    return residual(lhs, rhs)


@check(
    "DCD2",
    title="deformed derivative of a form field, grade-1 law",
    statement="dnabla_a w = lam^-adj(nabla_a(lam^adj w))",
    anchor="deformation conjugates the derivative on forms through the adjoint",
    lhs="general deformed derivative restricted to grade 1",
    rhs="direct grade-1 conjugation through apply",
    mutation="negates the direct conjugation",
    tiers=("fd",),
)
def _dcd2(rng, n, degree, fd, mutate):
    chart, dstruct, a, p = _rand_deformed(rng, n, degree)
    lam, struct = dstruct.deformation, dstruct.base
    w = form_field(chart, [rand_poly(rng, n, degree) for _ in range(n)])
    lhs = deformed_deriv_multiform(dstruct, a, w).eval(p)

    def inner(q):
        return lam.at(q).duality_adjoint().apply(w.eval(q))

    gam_adj = struct.gamma_extensor(a).adjoint()
    val = fd_directional(inner, a, p) - gam_adj.at(p).apply(inner(p))
    rhs = lam.at(p).duality_adjoint().invert().apply(val)
    if mutate:
        rhs = -rhs
    return residual(lhs, rhs)


def _deformed_gamma_at(dstruct, a, p):
    """Connection extensor of the deformed structure, extracted on vectors."""
    n = dstruct.chart.dim
    cols = []
    for j in range(n):
        ej = coordinate_vector(dstruct.chart, j + 1)
        cols.append(deformed_deriv_multivector(dstruct, a, ej).eval(p))
    rows = tuple(
        tuple(cols[j][1 << k] for j in range(n)) for k in range(n)
    )
    return Extensor(n, rows, "vector")


@check(
    "DCD3",
    title="deformed derivative of multivectors splits through its grade-1 data",
    statement="dnabla_a X = d_a X + gen(dgamma_a)(X), dgamma_a read off grade 1",
    anchor="the conjugated operator is again a covariant derivative",
    lhs="extension-conjugated derivative on all grades",
    rhs="coordinate derivative plus the derivation lift of the extracted grade-1 action",
    mutation="negates the derivation-lift term",
    tiers=("fd",),
)
def _dcd3(rng, n, degree, fd, mutate):
    chart, dstruct, a, p = _rand_deformed(rng, n, degree)
    x = rand_multivector_field(rng, chart, degree)
    lhs = deformed_deriv_multivector(dstruct, a, x).eval(p)
    gam = _deformed_gamma_at(dstruct, a, p)
    lift = gam.generalize(x.eval(p))
    rhs = coordinate_partial(a, x).eval(p) + (-lift if mutate else lift)
    return residual(lhs, rhs)


@check(
    "DCD4",
    title="deformed derivative of multiforms splits through the adjoint",
    statement="dnabla_a Phi = d_a Phi - gen(adj(dgamma_a))(Phi)",
    anchor="the form-side split uses the duality adjoint of the vector-side data",
    lhs="adjoint-conjugated derivative on all grades",
    rhs="coordinate derivative minus the lifted adjoint of the extracted grade-1 action",
    mutation="adds the lifted-adjoint term instead of subtracting",
    tiers=("fd",),
)
def _dcd4(rng, n, degree, fd, mutate):
    chart, dstruct, a, p = _rand_deformed(rng, n, degree)
    phi = rand_multiform_field(rng, chart, degree)
    lhs = deformed_deriv_multiform(dstruct, a, phi).eval(p)
    gam_adj = _deformed_gamma_at(dstruct, a, p).duality_adjoint()
    lift = gam_adj.generalize(phi.eval(p))
    rhs = coordinate_partial(a, phi).eval(p) + (lift if mutate else -lift)
    return residual(lhs, rhs)


# ---------------------------------------------------------------------------
# relative derivatives and Jacobian transport


@check(
    "RCD3",
    title="split of the multivector derivative through a relative structure",
    statement="nabla_a X = partial_a X + gen(gamma_a)(X)",
    anchor="split theorem on multivector fields",
    lhs="split-form covariant derivative",
    rhs="relative derivative plus the derivation lift of the relative connection",
    mutation="negates the derivation-lift term",
    tiers=("exact", "fd"),
)
def _rcd3(rng, n, degree, fd, mutate):
    chart, struct, a, p = _common(rng, n, degree)
    frame = rand_frame(rng, chart) if fd else FrameField.coordinate(chart)
    rstruct = RelativeStructure(chart, frame)
    x = rand_multivector_field(rng, chart, degree)
    gam = relative_connection(struct, rstruct).gamma(a)
    lhs = cov_deriv_multivector(struct, a, x).eval(p)
    lift = gam.at(p).generalize(x.eval(p))
    rhs = relative_deriv(rstruct, a, x).eval(p) + (-lift if mutate else lift)
    abs_res, rel_res = residual(lhs, rhs)
    if fd:
        # the relative connection must also be function-linear (an operator
        # field, not a differential operator)
        f = rand_scalar_field(rng, chart, degree)
        v = vector_field(chart, [rand_poly(rng, n, degree) for _ in range(n)])
        t1 = gam.at(p).apply(v.scalar_mul(f).eval(p).grade_part(1))
        t2 = f.eval(p) * gam.at(p).apply(v.eval(p).grade_part(1))
        tens = residual(t1, t2)
        abs_res, rel_res = max(abs_res, tens[0]), max(rel_res, tens[1])
    return abs_res, rel_res


@check(
    "RCD4",
    title="split of the multiform derivative through a relative structure",
    statement="nabla_a Phi = partial_a Phi - gen(adj(gamma_a))(Phi)",
    anchor="split theorem on multiform fields",
    lhs="split-form covariant derivative",
    rhs="relative derivative minus the lifted adjoint of the relative connection",
    mutation="adds the lifted-adjoint term instead of subtracting",
    tiers=("exact", "fd"),
)
def _rcd4(rng, n, degree, fd, mutate):
    chart, struct, a, p = _common(rng, n, degree)
    frame = rand_frame(rng, chart) if fd else FrameField.coordinate(chart)
    rstruct = RelativeStructure(chart, frame)
    phi = rand_multiform_field(rng, chart, degree)
    gam = relative_connection(struct, rstruct).gamma(a)
    lhs = cov_deriv_multiform(struct, a, phi).eval(p)
    lift = gam.at(p).duality_adjoint().generalize(phi.eval(p))
    rhs = relative_deriv(rstruct, a, phi).eval(p) + (lift if mutate else -lift)
    return residual(lhs, rhs)


@check(
    "RCD7",
    title="Jacobian transport of the relative derivative on multivectors",
    statement="partial'_a X = ext(J)(partial_a(ext(J^-1) X))",
    anchor="a frame change conjugates the relative derivative",
    lhs="relative derivative in the primed frame",
    rhs="unprimed derivative conjugated by the Jacobian's lift",
    mutation="drops the inverse on the inner lift",
    tiers=("fd",),
)
def _rcd7(rng, n, degree, fd, mutate):
    chart = _chart(n)
    r1 = RelativeStructure(chart, rand_frame(rng, chart))
    r2 = RelativeStructure(chart, rand_frame(rng, chart))
    a = rand_direction(rng, chart, degree)
    x = rand_multivector_field(rng, chart, degree)
    p = rand_point(rng, chart)
    jac = jacobian(r1, r2)
    lhs = relative_deriv(r2, a, x).eval(p)

    def inner(q):
        j = jac.at(q)
        op = j if mutate else j.invert()
        return op.extend(x.eval(q))

    carried = relative_deriv(r1, a, PointwiseMultivectorField(chart, inner))
    rhs = jac.at(p).extend(carried.eval(p))
    abs_res, rel_res = residual(lhs, rhs)
    # the two frame changes compose to the identity operator
    back = jacobian(r2, r1)
    comp = jac.at(p).matrix() @ back.at(p).matrix()
    ident = float(np.max(np.abs(comp - np.eye(n))))
    return max(abs_res, ident), max(rel_res, ident)


@check(
    "RCD8",
    title="Jacobian transport of the relative derivative on multiforms",
    statement="partial'_a Phi = ext(J)^-adj(partial_a(ext(J)^adj Phi))",
    anchor="a frame change conjugates the relative derivative through the adjoint",
    lhs="relative derivative in the primed frame",
    rhs="unprimed derivative conjugated by the adjoint lifts",
    mutation="sign-flips the transported value",
    tiers=("fd",),
)
def _rcd8(rng, n, degree, fd, mutate):
    chart = _chart(n)
    r1 = RelativeStructure(chart, rand_frame(rng, chart))
    r2 = RelativeStructure(chart, rand_frame(rng, chart))
    a = rand_direction(rng, chart, degree)
    phi = rand_multiform_field(rng, chart, degree)
    p = rand_point(rng, chart)
    jac = jacobian(r1, r2)
    lhs = relative_deriv(r2, a, phi).eval(p)

    def inner(q):
        return jac.at(q).duality_adjoint().extend(phi.eval(q))

    carried = relative_deriv(r1, a, PointwiseMultiformField(chart, inner))
    rhs = jac.at(p).duality_adjoint().invert().extend(carried.eval(p))
    if mutate:
        rhs = -rhs
    return residual(lhs, rhs)


# ---------------------------------------------------------------------------
# dual-pair relations and extensor identities


@check(
    "PROOF_B",
    title="grade-1 pairing Leibniz relation",
    statement="a<w, v> = <nabla_a w, v> + <w, nabla_a v>",
    anchor="rearranged axiom on a single form-vector pair",
    lhs="directional derivative of the grade-1 pairing",
    rhs="derivative placed on each slot in turn",
    mutation="drops the <w, nabla_a v> term",
)
def _proof_b(rng, n, degree, fd, mutate):
    chart, struct, a, p = _common(rng, n, degree)
    v = vector_field(chart, [rand_poly(rng, n, degree) for _ in range(n)])
    w = form_field(chart, [rand_poly(rng, n, degree) for _ in range(n)])
    lhs = cov_deriv_scalar(struct, a, pairing_field(w, v)).eval(p)
    rhs = pairing_field(cov_deriv_form(struct, a, w), v).eval(p)
    if not mutate:
        rhs += pairing_field(w, cov_deriv_vector(struct, a, v)).eval(p)
    return residual(lhs, rhs)


@check(
    "PROOF_E",
    title="antisymmetry of dual-frame derivative pairings",
    statement="<eps^i, nabla_a e_j> = -<nabla_a eps^i, e_j>",
    anchor="differentiating a dual pair trades a sign across the pairing",
    lhs="coframe paired with the derived frame vector",
    rhs="negated derived coframe paired with the frame vector",
    mutation="uses a plus sign across the pairing",
    tiers=("exact", "fd"),
)
def _proof_e(rng, n, degree, fd, mutate):
    chart, struct, a, p = _common(rng, n, degree)
    sign = 1.0 if mutate else -1.0
    worst_abs = 0.0
    worst_rel = 0.0
    if not fd:
        vectors = [coordinate_vector(chart, j + 1) for j in range(n)]
        forms = [coordinate_form(chart, i + 1) for i in range(n)]
        for i in range(n):
            dform = cov_deriv_form(struct, a, forms[i]).eval(p)
            for j in range(n):
                dvec = cov_deriv_vector(struct, a, vectors[j]).eval(p)
                lhs = duality_scalar(forms[i].eval(p), dvec)
                rhs = sign * duality_scalar(dform, vectors[j].eval(p))
                r = residual(lhs, rhs)
                worst_abs, worst_rel = max(worst_abs, r[0]), max(worst_rel, r[1])
        return worst_abs, worst_rel
    frame = rand_frame(rng, chart)
    coframe = frame.dual_frame()
    gam_adj = struct.gamma_extensor(a).adjoint()
    for i in range(n):
        eps_i = coframe[i]
        dform = fd_directional(eps_i.eval, a, p) - gam_adj.at(p).apply(eps_i.eval(p))
        for j in range(n):
            vec_j = frame.vector(j + 1)
            dvec = cov_deriv_vector(struct, a, vec_j).eval(p)
            lhs = duality_scalar(eps_i.eval(p), dvec)
            rhs = sign * duality_scalar(dform, vec_j.eval(p))
            r = residual(lhs, rhs)
            worst_abs, worst_rel = max(worst_abs, r[0]), max(worst_rel, r[1])
    return worst_abs, worst_rel


@check(
    "EXT_ADJ",
    title="extension commutes with the duality adjoint",
    statement="<ext(adj(t)) Phi, X> = <Phi, ext(t) X>",
    anchor="the lifted operator moves across the pairing as its adjoint",
    lhs="pairing with the extended adjoint on the form slot",
    rhs="pairing with the extension on the vector slot",
    mutation="uses t in place of its adjoint",
)
def _ext_adj(rng, n, degree, fd, mutate):
    t = rand_operator(rng, n)
    phi = Multiform(n, tuple(rng.uniform(-1, 1, 1 << n)))
    x = Multivector(n, tuple(rng.uniform(-1, 1, 1 << n)))
    op = Extensor(n, t.rows, "form") if mutate else t.duality_adjoint()
    lhs = duality_scalar(op.extend(phi), x)
    rhs = duality_scalar(phi, t.extend(x))
    return residual(lhs, rhs)


@check(
    "EXT_INV",
    title="extension of the inverse inverts the extension",
    statement="ext(t^-1)(ext(t) A) = A",
    anchor="the outermorphism lift respects inversion",
    lhs="round trip through both lifts",
    rhs="the original value",
    mutation="applies the lift of t twice instead",
)
def _ext_inv(rng, n, degree, fd, mutate):
    t = rand_operator(rng, n)
    x = Multivector(n, tuple(rng.uniform(-1, 1, 1 << n)))
    op = t if mutate else t.invert()
    lhs = op.extend(t.extend(x))
    return residual(lhs, x)


@check(
    "GEN_ADJ",
    title="generalization commutes with the duality adjoint",
    statement="<gen(adj(t)) Phi, X> = <Phi, gen(t) X>",
    anchor="the derivation lift of the adjoint is the adjoint of the derivation lift",
    lhs="pairing with the generalized adjoint on the form slot",
    rhs="pairing with the generalization on the vector slot",
    mutation="negates the vector-slot pairing",
)
def _gen_adj(rng, n, degree, fd, mutate):
    t = rand_operator(rng, n)
    phi = Multiform(n, tuple(rng.uniform(-1, 1, 1 << n)))
    x = Multivector(n, tuple(rng.uniform(-1, 1, 1 << n)))
    lhs = duality_scalar(t.duality_adjoint().generalize(phi), x)
    rhs = duality_scalar(phi, t.generalize(x))
    if mutate:
        rhs = -rhs
    return residual(lhs, rhs)


# ---------------------------------------------------------------------------
# specs, execution, reporting


@dataclass(frozen=True)
class CheckSpec:
    """One scheduled run of a catalog identity."""

    check_id: str
    dims: tuple[int, ...] = (2, 3, 4)
    trials: int = 100
    degree: int = 3
    tolerance: float = EXACT_TOL
    use_fd: bool = False
    mutate: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise AlgebraError("trials must be >= 1")
        if self.tolerance < 0:
            raise AlgebraError("tolerance must be positive")


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    tier: str
    dims: tuple[int, ...]
    trials: int
    max_abs_residual: float
    max_rel_residual: float
    tolerance: float
    passed: bool
    seed: int
    mutated: bool


@dataclass(frozen=True)
class SuiteReport:
    seed: int
    results: tuple[CheckResult, ...]
    overall_pass: bool
    wall_time: float


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 42
    trials: int = 100
    dims: tuple[int, ...] = (2, 3, 4)
    tol_exact: float = EXACT_TOL
    tol_fd: float = FD_TOL
    degree: int = 3
    checks: tuple[str, ...] | None = None
    mutate: bool = False
    workers: int = 1

    def __post_init__(self):
        for n in self.dims:
            if not 2 <= n <= 6:
                raise AlgebraError(f"dimension {n} outside the supported range 2..6")
        if self.checks is not None:
            unknown = [c for c in self.checks if c not in CATALOG]
            if unknown:
                raise UnknownIdentity(f"unknown checks: {', '.join(unknown)}")


def _id_code(check_id: str) -> int:
    return zlib.crc32(check_id.encode())


def run_check(spec: CheckSpec, seed: int) -> CheckResult:
    """Run one check; deterministic given (spec, seed)."""
    if spec.check_id not in CATALOG:
        raise UnknownIdentity(f"unknown check id {spec.check_id!r}")
    cdef = CATALOG[spec.check_id]
    tier_code = 1 if spec.use_fd else 0
    max_abs = 0.0
    max_rel = 0.0
    for n in spec.dims:
        for t in range(spec.trials):
            for attempt in range(MAX_REDRAWS + 1):
                rng = np.random.default_rng(
                    np.random.SeedSequence(
                        [seed, _id_code(spec.check_id), tier_code, n, t, attempt]
                    )
                )
                try:
                    a, r = cdef.runner(rng, n, spec.degree, spec.use_fd, spec.mutate)
                    break
                except (SingularExtensor, SingularFrame, DegenerateDraw):
                    continue
            else:
                raise DegenerateDraw(
                    f"{spec.check_id}: {MAX_REDRAWS} singular draws in a row"
                )
            max_abs = max(max_abs, a)
            max_rel = max(max_rel, r)
    return CheckResult(
        check_id=spec.check_id,
        tier="fd" if spec.use_fd else "exact",
        dims=spec.dims,
        trials=spec.trials,
        max_abs_residual=max_abs,
        max_rel_residual=max_rel,
        tolerance=spec.tolerance,
        passed=max_abs <= spec.tolerance,
        seed=seed,
        mutated=spec.mutate,
    )


def build_specs(config: SuiteConfig) -> list[CheckSpec]:
    """Expand a config into one spec per (registered check, tier)."""
    ids = config.checks if config.checks is not None else tuple(CATALOG)
    specs = []
    for check_id in ids:
        for tier in CATALOG[check_id].tiers:
            fd = tier == "fd"
            specs.append(
                CheckSpec(
                    check_id=check_id,
                    dims=tuple(config.dims),
                    trials=config.trials,
                    degree=config.degree,
                    tolerance=config.tol_fd if fd else config.tol_exact,
                    use_fd=fd,
                    mutate=config.mutate,
                )
            )
    return specs


def run_suite(config: SuiteConfig) -> SuiteReport:
    """Run every selected check; deterministic and order-independent."""
    specs = build_specs(config)
    start = time.perf_counter()
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(lambda s: run_check(s, config.seed), specs))
    else:
        results = [run_check(s, config.seed) for s in specs]
    order = {check_id: i for i, check_id in enumerate(CATALOG)}
    results.sort(key=lambda r: (order[r.check_id], r.tier))
    wall = time.perf_counter() - start
    if config.mutate:
        # negative controls: every mutated check must fail
        overall = all(not r.passed for r in results)
    else:
        overall = all(r.passed for r in results)
    return SuiteReport(config.seed, tuple(results), overall, wall)


def report_to_json(report: SuiteReport) -> str:
    """Machine-readable report; wall time is deliberately excluded so that
    identical (config, seed) runs serialize to identical bytes."""
    doc = {
        "seed": report.seed,
        "overall_pass": report.overall_pass,
        "checks": [
            {
                "id": r.check_id,
                "tier": r.tier,
                "dims": list(r.dims),
                "trials": r.trials,
                "max_abs_residual": r.max_abs_residual,
                "max_rel_residual": r.max_rel_residual,
                "tolerance": r.tolerance,
                "passed": r.passed,
                "seed": r.seed,
                "mutated": r.mutated,
            }
            for r in report.results
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def format_report(report: SuiteReport) -> str:
    """Human-readable fixed-width table."""
    lines = [
        f"{'check':<10} {'tier':<6} {'dims':<8} {'trials':>6} "
        f"{'max|res|':>12} {'max rel':>12} {'tol':>9} {'status':>7}"
    ]
    for r in report.results:
        dims = ",".join(str(d) for d in r.dims)
        status = "pass" if r.passed else "FAIL"
        lines.append(
            f"{r.check_id:<10} {r.tier:<6} {dims:<8} {r.trials:>6} "
            f"{r.max_abs_residual:>12.3e} {r.max_rel_residual:>12.3e} "
            f"{r.tolerance:>9.0e} {status:>7}"
        )
    failed = sum(1 for r in report.results if not r.passed)
    verdict = "PASS" if report.overall_pass else "FAIL"
    lines.append(
        f"overall: {verdict} ({len(report.results)} checks, {failed} failed)"
        f"  wall {report.wall_time:.2f}s  seed {report.seed}"
    )
    return "\n".join(lines)

"""Polynomial fields: parsing, evaluation, derivatives, frames, lifting."""

import numpy as np
import pytest

from exfield.algebra import GradeError, Multivector
from exfield.fields import (
    Chart,
    ChartMismatch,
    ExtensorField,
    FrameField,
    MultiformField,
    MultivectorField,
    OutOfDomain,
    PolyParseError,
    Polynomial,
    ScalarField,
    SingularFrame,
    coordinate_vector,
    directional_derivative,
    dual_frame,
    form_field,
    pairing_field,
    parse_polynomial,
    pointwise,
    vector_field,
    weyl_points,
)


@pytest.fixture
def chart2():
    return Chart(2)


@pytest.fixture
def chart3():
    return Chart(3)


# -- polynomial core ----------------------------------------------------------


def test_parse_basic_forms():
    p = parse_polynomial("2*x1^2*x2 - 0.5*x2 + 1", 2)
    assert p.eval((2.0, 3.0)) == 2 * 4 * 3 - 1.5 + 1
    assert parse_polynomial("x1", 2) == Polynomial.variable(0, 2)
    assert parse_polynomial("-x1 + x1", 2) == Polynomial.zero(2)
    assert parse_polynomial("1.5e2", 1).eval((0.0,)) == 150.0


def test_parse_canonicalizes():
    assert parse_polynomial("x2*x1", 2) == parse_polynomial("x1*x2", 2)
    assert parse_polynomial("x1 + x1", 2) == parse_polynomial("2*x1", 2)


def test_parse_errors_carry_position():
    with pytest.raises(PolyParseError) as info:
        parse_polynomial("2*x1 + @", 2)
    assert info.value.position == 7
    with pytest.raises(PolyParseError):
        parse_polynomial("x3", 2)
    with pytest.raises(PolyParseError):
        parse_polynomial("x1^1.5", 2)
    with pytest.raises(PolyParseError):
        parse_polynomial("", 2)
    with pytest.raises(PolyParseError):
        parse_polynomial("x1 x2", 2)


def test_polynomial_str_reparses():
    p = parse_polynomial("2*x1^2*x2 - 0.5*x2 + 1", 2)
    assert parse_polynomial(str(p), 2) == p
    assert str(Polynomial.zero(2)) == "0"


def test_partial_and_line_restriction():
    p = parse_polynomial("x1^2*x2", 2)
    assert p.partial(0) == parse_polynomial("2*x1*x2", 2)
    assert p.partial(1) == parse_polynomial("x1^2", 2)
    # jet along a line equals the chain-rule value
    coeffs = p.restrict_line((1.0, 2.0), (3.0, -1.0))
    assert coeffs[0] == 2.0
    assert coeffs[1] == pytest.approx(2 * 1 * 2 * 3 + 1 * (-1))


# -- scalar fields ------------------------------------------------------------


def test_eval_inside_and_outside(chart2):
    f = ScalarField(chart2, "x1*x2")
    big = Chart(2, box=((0.0, 4.0), (0.0, 4.0)))
    assert ScalarField(big, "x1*x2").eval((2.0, 3.0)) == 6.0
    assert ScalarField.constant(chart2, 7.0).eval((0.3, -0.2)) == 7.0
    with pytest.raises(OutOfDomain):
        f.eval((2.0, 0.0))


def test_directional_derivative_examples(chart2):
    f = ScalarField(chart2, "x1*x2")
    e1 = coordinate_vector(chart2, 1)
    assert directional_derivative(e1, f).poly == parse_polynomial("x2", 2)
    assert directional_derivative(e1, ScalarField.constant(chart2, 3.0)).is_zero()
    a = vector_field(chart2, ["x1", "0"])
    g = ScalarField(chart2, "x1")
    assert directional_derivative(a, g).poly == parse_polynomial("x1", 2)


def test_directional_derivative_linearity_and_product_rule(chart2):
    rng = np.random.default_rng(3)

    def rand_poly():
        return Polynomial.make(
            2, {(int(a), int(b)): rng.uniform(-1, 1) for a, b in rng.integers(0, 3, (4, 2))}
        )

    def close(u, v, tol=1e-12):
        diff = u.poly - v.poly
        return all(abs(c) <= tol for _, c in diff.terms)

    f = ScalarField(chart2, rand_poly())
    g = ScalarField(chart2, rand_poly())
    a = vector_field(chart2, [rand_poly(), rand_poly()])
    b = vector_field(chart2, [rand_poly(), rand_poly()])
    assert close(
        directional_derivative(a + b, f),
        directional_derivative(a, f) + directional_derivative(b, f),
    )
    assert close(
        directional_derivative(a.scalar_mul(g), f), g * directional_derivative(a, f)
    )
    # product rule a(fg) = (af)g + f(ag)
    lhs = directional_derivative(a, f * g)
    rhs = directional_derivative(a, f) * g + f * directional_derivative(a, g)
    assert close(lhs, rhs)


def test_jet_matches_finite_differences(chart3):
    rng = np.random.default_rng(5)
    f = ScalarField(
        chart3,
        Polynomial.make(
            3,
            {tuple(int(v) for v in e): rng.uniform(-1, 1) for e in rng.integers(0, 2, (5, 3))},
        ),
    )
    a = vector_field(chart3, ["x2", "1", "x1*x3"])
    h = 1e-5
    for _ in range(20):
        p = rng.uniform(-0.9, 0.9, 3)
        d = a.eval(tuple(p))
        dirvec = [d[1 << i] for i in range(3)]
        exact = directional_derivative(a, f).eval(tuple(p))
        fd = (
            f.eval(tuple(p + h * np.array(dirvec))) - f.eval(tuple(p - h * np.array(dirvec)))
        ) / (2 * h)
        assert abs(exact - fd) <= 1e-6 * max(1.0, abs(exact))
        assert abs(f.jet(tuple(p), dirvec) - exact) <= 1e-12


def test_chart_mismatch_rejected(chart2):
    other = Chart(2, box=((0.0, 1.0), (0.0, 1.0)))
    with pytest.raises(ChartMismatch):
        ScalarField(chart2, "x1") + ScalarField(other, "x1")


# -- graded fields and pointwise lifting --------------------------------------


def test_pointwise_wedge_matches_eval():
    chart = Chart(2, box=((-4.0, 4.0), (-4.0, 4.0)))
    a = MultivectorField.from_blades(chart, {"e1": "x1"})
    b = MultivectorField.from_blades(chart, {"e2": "1"})
    w = pointwise("wedge", a, b)
    assert w.eval((2.0, 0.5)) == Multivector.blade(2, 0b11, 2.0)


def test_pointwise_add_zero_and_pairing():
    chart = Chart(2, box=((-4.0, 4.0), (-4.0, 4.0)))
    x = MultivectorField.from_blades(chart, {"e1": "x2", "e12": "1"})
    zero = MultivectorField.zero(chart)
    assert pointwise("add", x, zero).eval((0.1, 0.7)) == x.eval((0.1, 0.7))
    phi = MultiformField.from_blades(chart, {"eps1": "1"})
    f = pointwise("duality_scalar", phi, x)
    assert f.eval((1.0, 3.0)) == 3.0


def test_pointwise_homomorphism_random(chart3):
    rng = np.random.default_rng(9)

    def rand_field(cls):
        blades = {
            int(m): Polynomial.make(
                3,
                {tuple(int(v) for v in e): rng.uniform(-1, 1) for e in rng.integers(0, 2, (2, 3))},
            )
            for m in rng.integers(0, 8, 4)
        }
        return cls.from_blades(chart3, blades)

    for _ in range(10):
        x = rand_field(MultivectorField)
        y = rand_field(MultivectorField)
        phi = rand_field(MultiformField)
        p = tuple(rng.uniform(-1, 1, 3))
        sf = (x + y).eval(p)
        sp = x.eval(p) + y.eval(p)
        assert max(abs(u - v) for u, v in zip(sf.coeffs, sp.coeffs)) <= 1e-12
        wf = x.wedge(y).eval(p)
        wp = x.eval(p).wedge(y.eval(p))
        assert max(abs(u - v) for u, v in zip(wf.coeffs, wp.coeffs)) <= 1e-12
        pf = pairing_field(phi, x).eval(p)
        assert abs(pf - __import__("exfield.algebra", fromlist=["duality_scalar"]).duality_scalar(phi.eval(p), x.eval(p))) <= 1e-12


def test_blade_name_validation(chart2):
    with pytest.raises(Exception):
        MultivectorField.from_blades(chart2, {"eps1": "1"})
    x = MultivectorField.from_blades(chart2, {"1": "x1", "e12": "1"})
    assert x.grades() == {0, 2}


def test_grade_part_field(chart2):
    x = MultivectorField.from_blades(chart2, {"1": "3", "e1": "1", "e12": "2"})
    assert x.grade_part(1).eval((0.0, 0.0)) == Multivector.blade(2, 0b01)
    with pytest.raises(GradeError):
        x.grade_part(5)


# -- frames -------------------------------------------------------------------


def test_coordinate_frame_dual(chart2):
    frame = FrameField.coordinate(chart2)
    assert frame.is_coordinate
    cof = dual_frame(frame)
    assert cof[0].eval((0.2, 0.3))[0b01] == 1.0
    assert cof[1].eval((0.2, 0.3))[0b10] == 1.0


def test_constant_frame_dual_exact(chart2):
    frame = FrameField(chart2, (("2", "0"), ("0", "1")))
    cof = dual_frame(frame)
    v = cof[0].eval((0.5, -0.5))
    assert v[0b01] == 0.5 and v[0b10] == 0.0


def test_polynomial_frame_dual_identity(chart2):
    frame = FrameField(chart2, (("1", "0.2*x2"), ("0.2*x1", "1")))
    cof = frame.dual_frame()
    rng = np.random.default_rng(21)
    for _ in range(100):
        p = tuple(rng.uniform(-1, 1, 2))
        m = frame.matrix_at(p)
        for i in range(2):
            w = cof[i].eval(p)
            for j in range(2):
                pairing = sum(w[1 << k] * m[k, j] for k in range(2))
                assert abs(pairing - (1.0 if i == j else 0.0)) <= 1e-12


def test_singular_frame_detected(chart2):
    frame = FrameField(chart2, (("x1", "0"), ("0", "1")))
    with pytest.raises(SingularFrame):
        frame.matrix_at((0.0, 0.5))


def test_frame_blade_polynomial(chart2):
    frame = FrameField(chart2, (("2", "0"), ("0", "1")))
    blade = frame.frame_blade(0b11)
    assert blade.eval((0.1, 0.1)) == Multivector.blade(2, 0b11, 2.0)


# -- extensor fields ----------------------------------------------------------


def test_extensor_field_eval_and_adjoint(chart2):
    lam = ExtensorField(chart2, (("x1", "0"), ("0", "x1")), "vector")
    t = lam.at((0.5, 0.0))
    assert t.rows == ((0.5, 0.0), (0.0, 0.5))
    adj = lam.adjoint()
    assert adj.kind == "form"
    assert adj.at((0.5, 0.0)).rows == ((0.5, 0.0), (0.0, 0.5))


def test_extensor_field_lifts(chart2):
    lam = ExtensorField(chart2, (("2", "0"), ("0", "2")), "vector")
    x = MultivectorField.from_blades(chart2, {"e12": "1"})
    assert lam.extend_field(x).eval((0.0, 0.0)) == Multivector.blade(2, 0b11, 4.0)
    assert lam.generalize_field(x).eval((0.0, 0.0)) == Multivector.blade(2, 0b11, 4.0)
    v = vector_field(chart2, ["x2", "0"])
    assert lam.apply_field(v).eval((0.0, 0.5)) == Multivector.blade(2, 0b01, 1.0)


def test_extensor_field_invertibility_check(chart2):
    from exfield.extensor import SingularExtensor

    # rank-1 matrix: determinant vanishes identically
    lam = ExtensorField(chart2, (("x1", "x1"), ("x1", "x1")), "vector")
    with pytest.raises(SingularExtensor):
        lam.check_invertible(weyl_points(chart2, 64))
    good = ExtensorField(chart2, (("1", "0.2*x1"), ("0", "1")), "vector")
    good.check_invertible(weyl_points(chart2, 64))


def test_weyl_points_inside_box():
    chart = Chart(3, box=((0.0, 1.0), (-2.0, -1.0), (5.0, 6.0)))
    pts = weyl_points(chart, 32)
    assert len(pts) == 32
    assert all(chart.contains(p) for p in pts)

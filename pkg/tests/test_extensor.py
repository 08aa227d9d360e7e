"""Extensor actions: apply, duality adjoint, extension, generalization."""

import numpy as np
import pytest

from conftest import max_diff, random_multiform, random_multivector
from exfield.algebra import GradeError, Multiform, Multivector, duality_scalar
from exfield.extensor import FORM, Extensor, SingularExtensor


def random_operator(rng, n, kind="vector"):
    """Identity plus a small perturbation: always comfortably invertible."""
    m = np.eye(n) + 0.2 * rng.uniform(-1, 1, (n, n))
    return Extensor.from_matrix(m, kind)


E1 = Multivector.blade(2, 0b01)
E2 = Multivector.blade(2, 0b10)
E12 = Multivector.blade(2, 0b11)

# t sends e1 to e2 and kills e2
T_SHIFT = Extensor.from_matrix([[0.0, 0.0], [1.0, 0.0]])


def test_apply_identity():
    v = 2.0 * E1 + 3.0 * E2
    assert Extensor.identity(2).apply(v) == v


def test_apply_shift():
    assert T_SHIFT.apply(E1) == E2
    assert T_SHIFT.apply(E2).is_zero()
    assert T_SHIFT.apply(Multivector.zero(2)).is_zero()


def test_apply_rejects_non_grade1():
    with pytest.raises(GradeError):
        T_SHIFT.apply(E12)
    with pytest.raises(TypeError):
        T_SHIFT.apply(Multiform.blade(2, 0b01))


def test_adjoint_identity_and_shift():
    assert Extensor.identity(2).duality_adjoint().rows == Extensor.identity(2, FORM).rows
    adj = T_SHIFT.duality_adjoint()
    assert adj.kind == FORM
    assert adj.apply(Multiform.blade(2, 0b10)) == Multiform.blade(2, 0b01)
    assert adj.apply(Multiform.blade(2, 0b01)).is_zero()


def test_adjoint_diagonal_fixed():
    d = Extensor.from_matrix(np.diag([2.0, 3.0, 5.0]))
    assert d.duality_adjoint().rows == d.rows


def test_adjoint_pairing_characterization():
    rng = np.random.default_rng(31)
    n = 3
    t = random_operator(rng, n)
    adj = t.duality_adjoint()
    for _ in range(20):
        w = random_multiform(rng, n).grade_part(1)
        v = random_multivector(rng, n).grade_part(1)
        assert abs(duality_scalar(adj.apply(w), v) - duality_scalar(w, t.apply(v))) <= 1e-12


def test_adjoint_involution_and_inverse_commute():
    rng = np.random.default_rng(37)
    t = random_operator(rng, 3)
    assert t.duality_adjoint().duality_adjoint().rows == t.rows
    lhs = t.invert().duality_adjoint()
    rhs = t.duality_adjoint().invert()
    assert np.allclose(lhs.matrix(), rhs.matrix(), atol=1e-12)


def test_extend_scales_by_determinant():
    assert Extensor.from_matrix(2.0 * np.eye(2)).extend(E12) == 4.0 * E12


def test_extend_fixes_scalars_and_identity():
    rng = np.random.default_rng(41)
    t = random_operator(rng, 2)
    assert t.extend(Multivector.scalar(2, 3.5)) == Multivector.scalar(2, 3.5)
    x = random_multivector(rng, 3)
    assert Extensor.identity(3).extend(x) == x


def test_extend_determinant_law():
    rng = np.random.default_rng(43)
    for n in (2, 3, 4):
        t = random_operator(rng, n)
        top = Multivector.blade(n, (1 << n) - 1)
        assert max_diff(t.extend(top), t.det() * top) <= 1e-12


def test_extend_functorial():
    rng = np.random.default_rng(47)
    for n in (2, 3):
        t = random_operator(rng, n)
        s = random_operator(rng, n)
        x = random_multivector(rng, n)
        assert max_diff(t.compose(s).extend(x), t.extend(s.extend(x))) <= 1e-12


def test_extend_adjoint_commute():
    # the extension of the adjoint is the adjoint of the extension
    rng = np.random.default_rng(53)
    for n in (2, 3):
        t = random_operator(rng, n)
        for _ in range(10):
            phi = random_multiform(rng, n)
            x = random_multivector(rng, n)
            lhs = duality_scalar(t.duality_adjoint().extend(phi), x)
            rhs = duality_scalar(phi, t.extend(x))
            assert abs(lhs - rhs) <= 1e-12


def test_extend_of_inverse_inverts_extension():
    rng = np.random.default_rng(59)
    for n in (2, 3):
        t = random_operator(rng, n)
        x = random_multivector(rng, n)
        assert max_diff(t.invert().extend(t.extend(x)), x) <= 1e-12


def test_generalize_counts_identity_factors():
    rng = np.random.default_rng(61)
    n = 3
    x = random_multivector(rng, n)
    for k in range(n + 1):
        xk = x.grade_part(k)
        assert max_diff(Extensor.identity(n).generalize(xk), float(k) * xk) <= 1e-12


def test_generalize_kills_scalars():
    assert T_SHIFT.generalize(Multivector.scalar(2, 4.0)).is_zero()


def test_generalize_shift_on_e12():
    # e2^e2 + e1^0 collapses to zero
    assert T_SHIFT.generalize(E12).is_zero()


def test_generalize_leibniz_over_wedge():
    rng = np.random.default_rng(67)
    for n in (2, 3):
        t = random_operator(rng, n)
        a = random_multivector(rng, n)
        b = random_multivector(rng, n)
        lhs = t.generalize(a.wedge(b))
        rhs = t.generalize(a).wedge(b) + a.wedge(t.generalize(b))
        assert max_diff(lhs, rhs) <= 1e-12


def test_generalized_adjoint_duality():
    rng = np.random.default_rng(71)
    for n in (2, 3):
        t = random_operator(rng, n)
        for _ in range(10):
            phi = random_multiform(rng, n)
            x = random_multivector(rng, n)
            lhs = duality_scalar(t.duality_adjoint().generalize(phi), x)
            rhs = duality_scalar(phi, t.generalize(x))
            assert abs(lhs - rhs) <= 1e-12


def test_invert_examples():
    assert Extensor.identity(2).invert().rows == Extensor.identity(2).rows
    inv = Extensor.from_matrix(np.diag([2.0, 4.0])).invert()
    assert np.allclose(inv.matrix(), np.diag([0.5, 0.25]))
    v = 3.0 * E1 - E2
    t = Extensor.from_matrix([[1.0, 2.0], [0.5, 3.0]])
    assert max_diff(t.invert().apply(t.apply(v)), v) <= 1e-12


def test_invert_singular_rejected():
    with pytest.raises(SingularExtensor):
        Extensor.from_matrix([[1.0, 2.0], [2.0, 4.0]]).invert()

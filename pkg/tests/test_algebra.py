"""Point-level algebra: products, grades, reversion, duality, contractions.

The contraction tests lean on a brute-force oracle that solves the defining
adjoint relations component by component using only wedge, reversion and the
duality pairing, so it is independent of the production kernels.
"""

import numpy as np
import pytest

from conftest import max_diff, random_multiform, random_multivector
from exfield.algebra import (
    DimensionMismatch,
    GradeError,
    Multiform,
    Multivector,
    blade_name,
    duality_scalar,
    grade_of,
    left_contract,
    parse_blade_name,
    right_contract,
    wedge,
)


def e(n, *indices):
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return Multivector.blade(n, mask)


def eps(n, *indices):
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return Multiform.blade(n, mask)


# -- brute-force adjoint-relation oracles -----------------------------------


def oracle_left(a, b):
    """Solve < <a,b|, test > = < big, ~a ^ test > over all test blades."""
    n = a.dim
    out = [0.0] * (1 << n)
    for mask in range(1 << n):
        if isinstance(a, Multiform):
            test = Multiform.blade(n, mask)
            out[mask] = duality_scalar(a.reversion().wedge(test), b)
        else:
            test = Multivector.blade(n, mask)
            out[mask] = duality_scalar(b, a.reversion().wedge(test))
    return (Multivector if isinstance(b, Multivector) else Multiform)(n, tuple(out))


def oracle_right(a, b):
    """Solve < |a,b>, test > = < a, test ^ ~b > over all test blades."""
    n = a.dim
    out = [0.0] * (1 << n)
    for mask in range(1 << n):
        if isinstance(a, Multiform):
            test = Multivector.blade(n, mask)
            out[mask] = duality_scalar(a, test.wedge(b.reversion()))
        else:
            test = Multiform.blade(n, mask)
            out[mask] = duality_scalar(test.wedge(b.reversion()), a)
    return (Multiform if isinstance(a, Multiform) else Multivector)(n, tuple(out))


# -- wedge -------------------------------------------------------------------


def test_wedge_disjoint_blades():
    assert e(2, 1).wedge(e(2, 2)) == e(2, 1, 2)


def test_wedge_repeated_factor_vanishes():
    assert e(2, 1).wedge(e(2, 1)).is_zero()


def test_wedge_bilinear_expansion():
    # (2 e1 + e2) ^ (e1 - e2) expands to -3 e12
    a = 2.0 * e(2, 1) + e(2, 2)
    b = e(2, 1) - e(2, 2)
    assert a.wedge(b) == -3.0 * e(2, 1, 2)


def test_wedge_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        e(2, 1).wedge(e(3, 1))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_wedge_graded_anticommutativity_all_blades(n):
    for a in range(1 << n):
        for b in range(1 << n):
            lhs = Multivector.blade(n, a).wedge(Multivector.blade(n, b))
            rhs = Multivector.blade(n, b).wedge(Multivector.blade(n, a))
            sign = -1.0 if (grade_of(a) * grade_of(b)) % 2 else 1.0
            assert lhs == sign * rhs


def test_wedge_associative_random():
    rng = np.random.default_rng(7)
    for n in (2, 3, 4):
        for _ in range(20):
            a, b, c = (random_multivector(rng, n) for _ in range(3))
            assert max_diff(a.wedge(b).wedge(c), a.wedge(b.wedge(c))) <= 1e-12


# -- grade projection --------------------------------------------------------


def test_grade_part_selects():
    x = Multivector.from_blades(2, {0: 3.0, 0b01: 1.0, 0b11: 2.0})
    assert x.grade_part(1) == Multivector.blade(2, 0b01)
    assert x.grade_part(0) == Multivector.scalar(2, 3.0)
    # no grade-2-free content at grade 2 once removed
    y = Multivector.from_blades(2, {0: 3.0, 0b01: 1.0})
    assert y.grade_part(2).is_zero()


def test_grade_parts_sum_to_whole():
    rng = np.random.default_rng(11)
    x = random_multivector(rng, 3)
    total = Multivector.zero(3)
    for k in range(4):
        total = total + x.grade_part(k)
    assert total == x


def test_grade_part_out_of_range():
    with pytest.raises(GradeError):
        Multivector.zero(2).grade_part(3)


# -- reversion ----------------------------------------------------------------


def test_reversion_signs():
    assert Multivector.scalar(2, 5.0).reversion() == Multivector.scalar(2, 5.0)
    assert e(2, 1, 2).reversion() == -e(2, 1, 2)
    assert e(3, 1).wedge(e(3, 2)).wedge(e(3, 3)).reversion() == -e(3, 1, 2, 3)


def test_reversion_involution_and_antihomomorphism():
    rng = np.random.default_rng(13)
    for _ in range(20):
        a = random_multivector(rng, 3)
        b = random_multivector(rng, 3)
        assert a.reversion().reversion() == a
        assert max_diff(a.wedge(b).reversion(), b.reversion().wedge(a.reversion())) <= 1e-12


# -- duality scalar product ---------------------------------------------------


def test_pairing_dual_basis():
    assert duality_scalar(eps(2, 1), e(2, 1)) == 1.0
    assert duality_scalar(eps(2, 1, 2), e(2, 1, 2)) == 1.0


def test_pairing_blade_coefficient_sum():
    x = 2.0 * e(3, 1, 2) + e(3, 1, 3)
    assert duality_scalar(eps(3, 1).wedge(eps(3, 2)), x) == 2.0


def test_pairing_nondegenerate():
    rng = np.random.default_rng(17)
    for n in (2, 3):
        phi = random_multiform(rng, n)
        for mask in range(1 << n):
            assert duality_scalar(phi, Multivector.blade(n, mask)) == phi[mask]


def test_pairing_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        duality_scalar(eps(2, 1), e(3, 1))


# -- contractions -------------------------------------------------------------


def test_left_contract_form_into_vector():
    got = left_contract(eps(2, 1), e(2, 1, 2))
    assert got == oracle_left(eps(2, 1), e(2, 1, 2))
    assert got == e(2, 2)


def test_left_contract_scalar_is_identity():
    rng = np.random.default_rng(19)
    x = random_multivector(rng, 3)
    assert left_contract(Multiform.scalar(3, 1.0), x) == x


def test_left_contract_equal_grades_reversion_sign():
    # the adjoint relation < <Phi,X|, 1 > = < X, ~Phi > forces -1 here
    got = left_contract(eps(2, 1, 2), e(2, 1, 2))
    assert got == oracle_left(eps(2, 1, 2), e(2, 1, 2))
    assert got == Multivector.scalar(2, -1.0)


def test_right_contract_scalar_is_identity():
    rng = np.random.default_rng(23)
    phi = random_multiform(rng, 3)
    assert right_contract(phi, Multivector.scalar(3, 1.0)) == phi


def test_right_contract_form_side():
    got = right_contract(eps(2, 1, 2), e(2, 2))
    assert got == oracle_right(eps(2, 1, 2), e(2, 2))
    assert got == eps(2, 1)


def test_right_contract_vector_side():
    got = right_contract(e(2, 1, 2), eps(2, 1))
    assert got == oracle_right(e(2, 1, 2), eps(2, 1))
    assert got == -e(2, 2)


def test_contract_kind_dispatch_errors():
    with pytest.raises(TypeError):
        left_contract(e(2, 1), e(2, 2))
    with pytest.raises(TypeError):
        right_contract(eps(2, 1), eps(2, 2))
    with pytest.raises(DimensionMismatch):
        left_contract(eps(2, 1), e(3, 1))


@pytest.mark.parametrize("n", [2, 3])
def test_contractions_match_oracle_exhaustively(n):
    """All four contraction variants agree exactly with the adjoint solve."""
    for a in range(1 << n):
        for b in range(1 << n):
            phi, x = Multiform.blade(n, a), Multivector.blade(n, b)
            assert left_contract(phi, x) == oracle_left(phi, x)
            assert left_contract(x, phi) == oracle_left(x, phi)
            assert right_contract(phi, x) == oracle_right(phi, x)
            assert right_contract(x, phi) == oracle_right(x, phi)


def test_contraction_grade_arithmetic():
    rng = np.random.default_rng(29)
    n = 4
    for j in range(n + 1):
        for k in range(n + 1):
            phi = random_multiform(rng, n).grade_part(j)
            x = random_multivector(rng, n).grade_part(k)
            got = left_contract(phi, x)
            assert got.is_zero() or got.grades() == {k - j}


# -- blade naming -------------------------------------------------------------


def test_blade_names_round_trip():
    assert blade_name(0) == "1"
    assert blade_name(0b101) == "e13"
    assert blade_name(0b11, "eps") == "eps12"
    assert parse_blade_name("1") == ("", 0)
    assert parse_blade_name("e13") == ("e", 0b101)
    assert parse_blade_name("eps12") == ("eps", 0b11)
    for bad in ("e", "e31", "e11", "x2", "e0"):
        with pytest.raises(ValueError):
            parse_blade_name(bad)

"""Binary-form representation layer: generator action against a
symbolic differentiation oracle, pairing and contraction certificates,
and the frozen proportionality constant."""

from fractions import Fraction
from math import factorial

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from spincert import VerificationError
from spincert.exactalg import MultiPoly, PolyRing, QQ, det
from spincert.repsl2 import (
    GENERATORS,
    BinaryForm,
    degree_bookkeeping,
    equivariance_check,
    generator_action,
    invariance_check,
    isotropy_check_m3,
    moment_map,
    pairing_matrix,
    quadratic_matrix_det,
    quadratic_to_matrix,
    symplectic_form,
    top_transvectant_constant,
    transvectant,
)

fractions_small = st.fractions(min_value=-9, max_value=9, max_denominator=6)


def forms(m):
    return st.lists(fractions_small, min_size=m + 1, max_size=m + 1).map(BinaryForm)


def test_pairing_frozen_values():
    assert symplectic_form(BinaryForm((1, 0)), BinaryForm((0, 1))) == 1
    u = BinaryForm((1, 0, 0, 0))
    v = BinaryForm((0, 0, 0, 1))
    assert symplectic_form(u, v) == 6
    w = BinaryForm((2, 1, -1, 3))
    z = BinaryForm((0, 1, 5, -2))
    expected = 6 * (2 * (-2) - 3 * 0) - 2 * (1 * 5 - (-1) * 1)
    assert symplectic_form(w, z) == expected


def test_pairing_rejects_bad_degrees():
    with pytest.raises(ValueError):
        symplectic_form(BinaryForm((1, 0, 0)), BinaryForm((0, 0, 1)))
    with pytest.raises(ValueError):
        symplectic_form(BinaryForm((1, 0)), BinaryForm((0, 0, 0, 1)))


@settings(max_examples=40)
@given(forms(3), forms(3))
def test_pairing_antisymmetric(u, v):
    assert symplectic_form(u, u) == 0
    assert symplectic_form(u, v) == -symplectic_form(v, u)


@pytest.mark.parametrize("m", [1, 3, 5, 7])
def test_pairing_nondegenerate(m):
    mat = pairing_matrix(m)
    for i in range(m + 1):
        for j in range(m + 1):
            assert mat[i][j] == -mat[j][i]
    assert det(mat) != 0


def test_generator_frozen_actions():
    m = 3
    top = BinaryForm.basis_vector(m, 0)
    assert generator_action("H", top) == top.scale(3)
    bottom = BinaryForm.basis_vector(m, m)
    assert generator_action("E", bottom) == BinaryForm.basis_vector(m, m - 1).scale(3)
    assert generator_action("F", top) == BinaryForm.basis_vector(m, 1).scale(3)
    with pytest.raises(ValueError):
        generator_action("X", top)


@pytest.mark.parametrize("m", [1, 3, 5])
def test_commutation_relations(m):
    def bracket(x, y, u):
        return generator_action(x, generator_action(y, u)) - generator_action(
            y, generator_action(x, u)
        )

    for j in range(m + 1):
        u = BinaryForm.basis_vector(m, j)
        assert bracket("H", "E", u) == generator_action("E", u).scale(2)
        assert bracket("H", "F", u) == generator_action("F", u).scale(-2)
        assert bracket("E", "F", u) == generator_action("H", u)


def test_generator_action_matches_group_differentiation():
    m = 3
    t, z = sympy.symbols("t z")
    a = sympy.symbols("a0:4")
    p = sum(a[j] * z ** (m - j) for j in range(m + 1))

    def coeffs_of(expr):
        poly = sympy.Poly(sympy.expand(expr), z)
        return tuple(poly.coeff_monomial(z ** (m - j)) for j in range(m + 1))

    def action_coeffs(x):
        u = BinaryForm(a)
        out = generator_action(x, u)
        return tuple(sympy.expand(c) for c in out.coeffs)

    lowered = sympy.diff(p.subs(z, z + t), t).subs(t, 0)
    assert coeffs_of(lowered) == action_coeffs("F")

    raised = sympy.diff((t * z + 1) ** m * p.subs(z, z / (t * z + 1)), t)
    raised = sympy.simplify(raised.subs(t, 0))
    assert coeffs_of(raised) == action_coeffs("E")

    graded = sympy.diff(
        sympy.exp(-m * t) * p.subs(z, sympy.exp(2 * t) * z), t
    ).subs(t, 0)
    assert coeffs_of(graded) == action_coeffs("H")


@pytest.mark.parametrize("m", [1, 3, 5])
def test_invariance_certificate(m):
    report = invariance_check(m)
    assert report["passed"] is True
    assert report["failures"] == []
    assert report["pairs"] == (m + 1) ** 2


def test_moment_map_frozen_square():
    u = BinaryForm((1, 1))
    sq = moment_map(u, u)
    assert sq == BinaryForm((1, 2, 1))


@settings(max_examples=40)
@given(forms(3), forms(3), forms(3))
def test_moment_map_bilinear(u, up, v):
    assert moment_map(u + up, v) == moment_map(u, v) + moment_map(up, v)
    assert moment_map(u, v + up) == moment_map(u, v) + moment_map(u, up)


def test_nilpotency_symbolic_and_random():
    ring = PolyRing(QQ, ("a0", "a1"))
    u = BinaryForm((ring.gen(0), ring.gen(1)))
    sq = moment_map(u, u)
    assert quadratic_matrix_det(sq) == ring.zero()
    mat = quadratic_to_matrix(sq)
    assert mat[0][0] + mat[1][1] == ring.zero()


@settings(max_examples=40)
@given(forms(1))
def test_nilpotency_random(u):
    assert quadratic_matrix_det(moment_map(u, u)) == 0


@pytest.mark.parametrize("m", [1, 3, 5])
def test_equivariance_certificate(m):
    report = equivariance_check(m)
    assert report["passed"] is True
    assert report["failures"] == []


def test_equivariance_of_zero_input():
    z = BinaryForm.zero(3)
    out = moment_map(z, z)
    assert out.is_zero
    for x in GENERATORS:
        assert generator_action(x, out).is_zero


@pytest.mark.parametrize("m", [1, 3, 5, 7])
def test_top_transvectant_constant(m):
    assert top_transvectant_constant(m) == factorial(m)


def test_transvectant_order_bounds():
    u = BinaryForm((1, 2))
    with pytest.raises(ValueError):
        transvectant(u, u, 2)
    assert transvectant(u, u, 0) == BinaryForm((1, 4, 4))


def test_isotropy_certificate():
    assert isotropy_check_m3() is True
    b = [BinaryForm.basis_vector(3, j) for j in range(4)]
    assert symplectic_form(b[2], b[3]) == 0
    assert symplectic_form(b[0], b[3]) == 6


def test_degree_bookkeeping():
    assert degree_bookkeeping(2, 0) == 1
    assert degree_bookkeeping(3, 1) == 1
    assert degree_bookkeeping(2, 1) == 0
    with pytest.raises(ValueError):
        degree_bookkeeping(1, 0)

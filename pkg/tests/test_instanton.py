"""Charge-one anti-self-dual connection: construction, curvature,
duality split, the affine spinor family, and the exact coupled Dirac
certificates with their negative controls."""

from fractions import Fraction

import pytest

from spincert.clifford import Multivector
from spincert.exactalg import Gaussian, MultiPoly, QI, RatFunc, rank
from spincert.instanton import (
    GAMMA,
    R4,
    RHO,
    Connection,
    CoupledField,
    Mat2,
    _EVAL_POINTS,
    asd_check,
    bianchi_residual,
    bpst_connection,
    commutator,
    coupled_dirac,
    curvature,
    curvature_acts,
    flat_dirac,
    form_is_zero,
    gauge_conjugate,
    gauge_conjugate_field,
    quaternion_units,
    sd_asd_split,
    twistor_basis,
    twistor_residual,
    two_form_star,
    verify_curvature_dirac_solutions,
    yang_mills_residual,
    zero_connection,
)

MI, MJ, MK, M1 = quaternion_units()


@pytest.fixture(scope="module")
def conn():
    return bpst_connection()


@pytest.fixture(scope="module")
def curv(conn):
    return curvature(conn)


def _x(i):
    return RatFunc(R4.gen(i - 1))


def _inv_rho():
    return RatFunc(R4.one(), RHO)


def _conj_transpose(m: Mat2) -> Mat2:
    def conj_rf(v):
        def conj_poly(p):
            return MultiPoly(p.ring, {e: c.conjugate() for e, c in p.terms.items()})

        return RatFunc(conj_poly(v.num), conj_poly(v.den))

    r = m.rows
    return Mat2(((conj_rf(r[0][0]), conj_rf(r[1][0])),
                 (conj_rf(r[0][1]), conj_rf(r[1][1]))))


def test_bpst_components_frozen(conn):
    inv = _inv_rho()
    expected = (
        (MI * (-_x(4)) + MJ * (-_x(3)) + MK * _x(2)) * inv,
        (MI * _x(3) + MJ * (-_x(4)) + MK * (-_x(1))) * inv,
        (MI * (-_x(2)) + MJ * _x(1) + MK * (-_x(4))) * inv,
        (MI * _x(1) + MJ * _x(2) + MK * _x(3)) * inv,
    )
    for got, want in zip(conn.components, expected):
        assert (got - want).is_zero
    assert conn.relabeled is False


def test_bpst_is_su2_valued_and_regular(conn):
    origin = (0, 0, 0, 0)
    for m in conn.components:
        assert m.trace().is_zero
        assert (_conj_transpose(m) + m).is_zero
        assert m.eval(origin) == ((Gaussian(0), Gaussian(0)), (Gaussian(0), Gaussian(0)))
        for row in m.rows:
            for v in row:
                assert v.den == R4.one() or v.den == RHO


def test_connection_rejects_traceful_components():
    bad = Mat2(((1, 0), (0, 0)))
    with pytest.raises(ValueError):
        Connection((bad,) * 4)


def test_curvature_zero_and_abelian_oracle():
    assert form_is_zero(curvature(zero_connection()))
    h = R4.gen(1) * R4.gen(1)
    diag = Mat2(((Gaussian(0, 1), 0), (0, Gaussian(0, -1))))
    a1 = diag * RatFunc(h)
    a = Connection((a1, Mat2.zero(), Mat2.zero(), Mat2.zero()))
    f = curvature(a)
    hprime = RatFunc(h.derivative(1))
    assert (f[(1, 2)] - diag * (-hprime)).is_zero
    for key in ((1, 3), (1, 4), (2, 3), (2, 4), (3, 4)):
        assert f[key].is_zero


def test_bianchi_holds_for_arbitrary_connection():
    a1 = Mat2(((Gaussian(0, 1), 0), (0, Gaussian(0, -1)))) * RatFunc(
        R4.gen(0) * R4.gen(0)
    )
    a2 = MJ * RatFunc(R4.gen(2))
    a3 = MK * RatFunc(R4.gen(0) * R4.gen(3))
    a4 = MI * RatFunc(R4.gen(1) + R4.one())
    a = Connection((a1, a2, a3, a4))
    assert all(m.is_zero for m in bianchi_residual(a).values())


def test_bianchi_holds_for_bpst(conn):
    assert all(m.is_zero for m in bianchi_residual(conn).values())


def test_bpst_curvature_is_anti_self_dual(conn, curv):
    plus, minus = sd_asd_split(curv)
    assert form_is_zero(plus)
    assert not form_is_zero(minus)
    assert asd_check(curv)
    starred = two_form_star(minus)
    for key, m in minus.items():
        assert (starred[key] + m).is_zero
        assert ((plus[key] + m) - curv[key]).is_zero
    two = Fraction(2)
    inv2 = RatFunc(R4.one(), RHO * RHO)
    assert (curv[(1, 2)] - MK * (-two) * inv2).is_zero
    assert (curv[(3, 4)] - MK * two * inv2).is_zero


def test_duality_split_of_zero():
    plus, minus = sd_asd_split(curvature(zero_connection()))
    assert form_is_zero(plus) and form_is_zero(minus)


def test_twistor_basis_properties():
    sols = twistor_basis()
    assert len(sols) == 4
    for s in sols:
        for res in twistor_residual(s.components):
            assert all(v.is_zero for v in res)
    rows = []
    for s in sols:
        row = []
        for point in _EVAL_POINTS:
            row.extend(v.eval(point) for v in s.components)
        rows.append(row)
    assert rank(rows) == 4


def test_flat_dirac_of_linear_field_is_minus_four_constants():
    sols = twistor_basis()
    linear = [s for s in sols if not all(v.is_zero for v in s.psi1)]
    assert len(linear) == 2
    for s in linear:
        d = flat_dirac(s.components)
        for r in range(4):
            want = Gaussian(-4) * s.psi1[r]
            assert (d[r] - RatFunc(R4.const(want))).is_zero


def test_twistor_residual_rejects_quadratic_field():
    quad = RatFunc(R4.gen(0) * R4.gen(0))
    zero = RatFunc(R4.zero())
    res = twistor_residual((quad, zero, zero, zero))
    assert any(not v.is_zero for comp in res for v in comp)
    res0 = twistor_residual((zero, zero, zero, zero))
    assert all(v.is_zero for comp in res0 for v in comp)


def test_coupled_dirac_flat_cases():
    diag = Mat2(((Gaussian(0, 1), 0), (0, Gaussian(0, -1))))
    constant = CoupledField((diag, Mat2.zero(), diag, Mat2.zero()))
    out = coupled_dirac(zero_connection(), constant)
    assert out.is_zero

    sols = twistor_basis()
    lin = next(s for s in sols if not all(v.is_zero for v in s.psi1))
    tensored = CoupledField(tuple(diag * v for v in lin.components))
    got = coupled_dirac(zero_connection(), tensored)
    want = CoupledField(
        tuple(diag * RatFunc(R4.const(Gaussian(-4) * s)) for s in lin.psi1)
    )
    assert (got - want).is_zero


def test_coupled_dirac_linear_in_field(conn, curv):
    sols = twistor_basis()
    psi = curvature_acts(curv, sols[0].components)
    phi = curvature_acts(curv, sols[2].components)
    c = Gaussian(Fraction(3, 2), Fraction(-1, 3))
    lhs = coupled_dirac(conn, psi.scale(c) + phi)
    rhs = coupled_dirac(conn, psi).scale(c) + coupled_dirac(conn, phi)
    assert (lhs - rhs).is_zero


def test_main_verification_passes(conn):
    rep = verify_curvature_dirac_solutions(conn)
    assert rep["passed"] is True
    assert rep["connection_asd"] is True
    assert rep["degenerate"] is False
    assert rep["residual_zero"] == [True, True, True, True]
    assert rep["independent_count"] == 4
    assert rep["convention_record"]["acts_on"] in ("S+", "S-")


def test_verification_flags_degenerate_zero_connection():
    rep = verify_curvature_dirac_solutions(zero_connection())
    assert rep["degenerate"] is True
    assert rep["independent_count"] == 0
    assert rep["residual_zero"] == [True, True, True, True]
    assert rep["passed"] is True


def test_scaled_component_negative_control(conn):
    comps = list(conn.components)
    comps[0] = comps[0] * Fraction(2)
    bad = Connection(comps)
    assert not asd_check(curvature(bad))
    with pytest.raises(ValueError):
        verify_curvature_dirac_solutions(bad)
    rep = verify_curvature_dirac_solutions(bad, allow_non_asd=True)
    assert rep["connection_asd"] is False
    assert not all(rep["residual_zero"])
    assert rep["passed"] is False


def test_yang_mills_residual(conn):
    assert all(m.is_zero for m in yang_mills_residual(conn).values())
    assert all(m.is_zero for m in yang_mills_residual(zero_connection()).values())
    comps = list(conn.components)
    comps[0] = comps[0] * Fraction(2)
    bad = Connection(comps)
    assert any(not m.is_zero for m in yang_mills_residual(bad).values())


def test_gauge_covariance_with_constant_unitary(conn, curv):
    a = Gaussian(Fraction(1, 3), Fraction(2, 3))
    b = Gaussian(Fraction(2, 3))
    g = Mat2(((a, b), (-b.conjugate(), a.conjugate())))
    assert (g.det() - RatFunc(R4.one())).is_zero

    sols = twistor_basis()
    psi = curvature_acts(curv, sols[1].components)
    lhs = coupled_dirac(gauge_conjugate(conn, g), gauge_conjugate_field(psi, g))
    rhs = gauge_conjugate_field(coupled_dirac(conn, psi), g)
    assert (lhs - rhs).is_zero


def test_curvature_action_lands_in_active_chirality_block(curv):
    active = GAMMA.positive_chirality_indices()
    inactive = GAMMA.negative_chirality_indices()
    for s in twistor_basis():
        coupled = curvature_acts(curv, s.components)
        assert any(not coupled.components[r].is_zero for r in active)
        for r in inactive:
            assert coupled.components[r].is_zero

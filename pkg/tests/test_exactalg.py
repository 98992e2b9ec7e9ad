"""Substrate checks: scalar field axioms, polynomial arithmetic against an
independent oracle, lazy rational-function identities, and the fraction-free
linear algebra contracts."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from spincert.exactalg import (
    QI,
    QQ,
    Gaussian,
    MultiPoly,
    PolyRing,
    RatFunc,
    det,
    nullspace,
    parse_gaussian,
    rank,
    solve,
)

RXY = PolyRing(QQ, ("x", "y"))
RQI = PolyRing(QI, ("x", "y"))


def rationals():
    return st.fractions(min_value=-50, max_value=50, max_denominator=9)


def gaussians():
    return st.builds(Gaussian, rationals(), rationals())


def polys(ring=RXY, max_terms=5, max_exp=4):
    coeff = gaussians() if ring.field is QI else rationals()
    term = st.tuples(
        st.tuples(*[st.integers(0, max_exp)] * ring.nvars), coeff
    )
    return st.lists(term, max_size=max_terms).map(
        lambda ts: sum((MultiPoly(ring, {e: c}) for e, c in ts), ring.zero())
    )


# ----------------------------------------------------------------------
# scalars
# ----------------------------------------------------------------------


@given(gaussians(), gaussians(), gaussians())
@settings(max_examples=60, deadline=None)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@given(gaussians())
@settings(max_examples=60, deadline=None)
def test_gaussian_inverse_and_conjugate(a):
    i = Gaussian(0, 1)
    assert i * i == -1
    assert a * a.conjugate() == Gaussian(a.norm2())
    if not a.is_zero:
        assert a * (Gaussian(1) / a) == 1


@given(gaussians())
@settings(max_examples=60, deadline=None)
def test_gaussian_text_roundtrip(a):
    assert parse_gaussian(str(a)) == a


def test_gaussian_zero_division():
    with pytest.raises(ZeroDivisionError):
        Gaussian(1) / Gaussian(0)


# ----------------------------------------------------------------------
# polynomials
# ----------------------------------------------------------------------


def _to_sympy(p):
    xs = sympy.symbols(p.ring.names)
    expr = sympy.Integer(0)
    for exps, c in p.terms.items():
        t = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(xs, exps):
            t *= s**e
        expr += t
    return sympy.expand(expr)


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_poly_mul_matches_sympy(p, q):
    assert _to_sympy(p * q) == sympy.expand(_to_sympy(p) * _to_sympy(q))


@given(polys())
@settings(max_examples=40, deadline=None)
def test_poly_derivative_matches_sympy(p):
    x = sympy.symbols(p.ring.names)[0]
    assert _to_sympy(p.derivative(0)) == sympy.expand(sympy.diff(_to_sympy(p), x))


@given(polys(), polys(), polys())
@settings(max_examples=40, deadline=None)
def test_poly_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_poly_derivation_property(p, q):
    lhs = (p * q).derivative(0)
    rhs = p.derivative(0) * q + p * q.derivative(0)
    assert lhs == rhs


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_exact_div_of_product(p, q):
    if q.is_zero:
        return
    assert (p * q).exact_div(q) == p


def test_exact_div_reports_failure():
    x, y = RXY.gens()
    assert (x * x + y).exact_div(x - y) is None
    assert (x * x - y * y).exact_div(x - y) == x + y


@given(polys(), polys(ring=RQI))
@settings(max_examples=40, deadline=None)
def test_poly_text_roundtrip(p, pg):
    assert RXY.parse(p.to_str()) == p
    assert RQI.parse(pg.to_str()) == pg


def test_ring_mismatch_raises():
    other = PolyRing(QQ, ("x", "z"))
    with pytest.raises(ValueError):
        RXY.gen(0) + other.gen(0)


def test_subs_and_eval():
    x, y = RXY.gens()
    p = x * x + 2 * y
    assert p.subs({0: y}) == y * y + 2 * y
    assert p.eval([Fraction(3), Fraction(1, 2)]) == Fraction(10)


# ----------------------------------------------------------------------
# rational functions
# ----------------------------------------------------------------------


def test_ratfunc_lazy_zero():
    x, y = RXY.gens()
    r = RatFunc(x * x - y * y, x - y) - RatFunc(x + y)
    assert r.is_zero
    # denominators are not forced coprime to numerators
    s = RatFunc(x * x - y * y, x - y)
    assert s.den == x - y


def test_ratfunc_equal_denominator_addition_stays_flat():
    x, y = RXY.gens()
    d = (x * x + y * y + 1) ** 2
    a = RatFunc(x, d) + RatFunc(y, d)
    assert a.den == d


def test_ratfunc_divisible_denominator_addition():
    x, y = RXY.gens()
    d = x * x + y * y + 1
    a = RatFunc(x, d * d) + RatFunc(y, d)
    assert a.den == d * d
    assert a == RatFunc(x + y * d, d * d)


@given(polys(max_terms=3, max_exp=2), polys(max_terms=3, max_exp=2))
@settings(max_examples=30, deadline=None)
def test_ratfunc_quotient_rule(p, q):
    if q.is_zero:
        return
    r = RatFunc(p, q)
    lhs = r.derivative(0)
    rhs = RatFunc(p.derivative(0) * q - p * q.derivative(0), q * q)
    assert lhs == rhs


def test_ratfunc_zero_denominator_raises():
    with pytest.raises(ZeroDivisionError):
        RatFunc(RXY.one(), RXY.zero())
    x, _ = RXY.gens()
    with pytest.raises(ZeroDivisionError):
        RatFunc(x) / RatFunc(RXY.zero())


# ----------------------------------------------------------------------
# linear algebra
# ----------------------------------------------------------------------


def test_rank_and_nullity_add_up():
    rows = [
        [Fraction(1), Fraction(2), Fraction(3), Fraction(0)],
        [Fraction(2), Fraction(4), Fraction(6), Fraction(0)],
        [Fraction(0), Fraction(1), Fraction(1), Fraction(1)],
    ]
    r = rank(rows)
    ns = nullspace(rows)
    assert r + len(ns) == 4
    for v in ns:
        for row in rows:
            assert sum(a * b for a, b in zip(row, v)) == 0


def test_det_frozen_values():
    # 3x3 with known determinant -2, and a singular matrix
    m = [
        [Fraction(2), Fraction(0), Fraction(1)],
        [Fraction(1), Fraction(1), Fraction(0)],
        [Fraction(3), Fraction(1), Fraction(0)],
    ]
    assert det(m) == Fraction(-2)
    s = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    assert det(s) == 0


@given(st.lists(st.lists(rationals(), min_size=4, max_size=4), min_size=4, max_size=4))
@settings(max_examples=25, deadline=None)
def test_det_multiplicative(rows):
    other = [
        [Fraction(1), Fraction(1), Fraction(0), Fraction(2)],
        [Fraction(0), Fraction(1), Fraction(0), Fraction(0)],
        [Fraction(3), Fraction(0), Fraction(1), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(0), Fraction(1)],
    ]
    prod = [
        [sum(rows[i][k] * other[k][j] for k in range(4)) for j in range(4)]
        for i in range(4)
    ]
    assert det(prod) == det(rows) * det(other)


def test_polynomial_matrix_nullspace():
    R = PolyRing(QQ, ("a", "b"))
    a, b = R.gens()
    rows = [[a, b, R.zero()], [R.zero(), a, b]]
    ns = nullspace(rows)
    assert len(ns) == 1
    v = ns[0]
    # M v = 0 exactly, entries denominator-free
    assert all(isinstance(x, MultiPoly) for x in v)
    assert (rows[0][0] * v[0] + rows[0][1] * v[1] + rows[0][2] * v[2]).is_zero
    assert (rows[1][1] * v[1] + rows[1][2] * v[2]).is_zero


def test_gaussian_matrix_rank():
    i = Gaussian(0, 1)
    one = Gaussian(1)
    rows = [[one, i], [i, -one]]
    assert rank(rows) == 1
    ns = nullspace(rows)
    assert len(ns) == 1


def test_solve_small_system():
    rows = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    x = solve(rows, [Fraction(5), Fraction(10)])
    assert x == [Fraction(1), Fraction(3)]
    assert solve([[Fraction(0)]], [Fraction(1)]) is None

"""Irreducible actions of the rank-one special linear algebra on binary
forms of odd degree: the graded generator action, the alternating
pairing on coefficients, the contraction of two forms down to a
quadratic, and exact invariance and equivariance certificates.

A form of degree m is stored as the coefficient vector (a_0 .. a_m) of
a_0 z^m + a_1 z^(m-1) + ... + a_m; equivalently the two-variable
homogeneous form sum a_j X^(m-j) Y^j.  Coefficients may be exact
scalars or polynomial ring elements, so every identity can be certified
both numerically and symbolically.

Fixed conventions, each pinned by a certificate in this module:

* generators E (raising), H (grading), F (lowering) obey [H,E] = 2E,
  [H,F] = -2F, [E,F] = H exactly, and arise by differentiating the
  degree-m substitution action at the identity;
* the pairing on odd degree m = 2k-1 is
  sum over l < k of (-1)^l l! (m-l)! (u_l v_{m-l} - u_{m-l} v_l);
* the contraction of two degree-m forms is their bare (m-1)-fold
  transvectant, normalized so that at m = 1 the contraction of a form
  with itself is its square;
* quadratics c_0 z^2 + c_1 z + c_2 are identified with trace-free 2x2
  matrices by z^2 -> [[0,1],[0,0]], z -> [[1/2,0],[0,-1/2]],
  1 -> [[0,0],[-1,0]], i.e. the matrix [[c_1/2, c_0], [-c_2, -c_1/2]].
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from . import VerificationError

GENERATORS = ("E", "H", "F")


class BinaryForm:
    """Coefficient vector of a one-variable polynomial of fixed degree;
    the leading coefficient may vanish."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, coeffs, degree=None):
        cs = tuple(coeffs)
        if degree is None:
            if not cs:
                raise ValueError("empty coefficient vector needs a degree")
            degree = len(cs) - 1
        if len(cs) != degree + 1:
            raise ValueError("expected %d coefficients" % (degree + 1))
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("BinaryForm is immutable")

    @classmethod
    def basis_vector(cls, m, j):
        return cls(tuple(1 if i == j else 0 for i in range(m + 1)))

    @classmethod
    def zero(cls, m):
        return cls((0,) * (m + 1))

    @property
    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return BinaryForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return BinaryForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c):
        return BinaryForm(tuple(a * c for a in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.degree == other.degree and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        raise TypeError("BinaryForm is unhashable")

    def __repr__(self):
        return "BinaryForm(%r)" % (self.coeffs,)


def generator_action(x: str, u: BinaryForm) -> BinaryForm:
    """Infinitesimal substitution action of one generator.

    E raises the grading (slot factor j), H multiplies slot j by
    m - 2j, F lowers (slot factor m - j + 1).
    """
    m = u.degree
    a = u.coeffs
    if x == "H":
        return BinaryForm(tuple(a[j] * (m - 2 * j) for j in range(m + 1)))
    if x == "E":
        return BinaryForm(
            tuple(a[j + 1] * (j + 1) if j < m else a[0] * 0 for j in range(m + 1))
        )
    if x == "F":
        return BinaryForm(
            tuple(a[j - 1] * (m - j + 1) if j > 0 else a[0] * 0 for j in range(m + 1))
        )
    raise ValueError("unknown generator %r" % (x,))


def _require_odd_pair(u: BinaryForm, v: BinaryForm):
    if u.degree != v.degree:
        raise ValueError("degree mismatch")
    if u.degree % 2 == 0:
        raise ValueError("pairing requires odd degree")


def symplectic_form(u: BinaryForm, v: BinaryForm):
    _require_odd_pair(u, v)
    m = u.degree
    k = (m + 1) // 2
    acc = 0
    for l in range(k):
        w = Fraction((-1) ** l * factorial(l) * factorial(m - l))
        acc = acc + (u.coeffs[l] * v.coeffs[m - l] - u.coeffs[m - l] * v.coeffs[l]) * w
    return acc


def pairing_matrix(m: int):
    """Matrix of the pairing on the coefficient basis; antisymmetric."""
    if m % 2 == 0:
        raise ValueError("pairing requires odd degree")
    basis = [BinaryForm.basis_vector(m, j) for j in range(m + 1)]
    return [[symplectic_form(basis[i], basis[j]) for j in range(m + 1)] for i in range(m + 1)]


def _d_first(a, m):
    return tuple(a[j] * (m - j) for j in range(m))


def _d_second(a, m):
    return tuple(a[j + 1] * (j + 1) for j in range(m))


def _convolve(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return tuple(out)


def _apply_derivatives(coeffs, deg, n_first, n_second):
    a, d = tuple(coeffs), deg
    for _ in range(n_first):
        a = _d_first(a, d)
        d -= 1
    for _ in range(n_second):
        a = _d_second(a, d)
        d -= 1
    return a


def transvectant(u: BinaryForm, v: BinaryForm, r: int) -> BinaryForm:
    """Bare r-fold transvectant on homogenized coefficient vectors.

    Output degree is deg u + deg v - 2r.  No leading normalization
    constant is applied; callers pin their own."""
    mu, mv = u.degree, v.degree
    if r < 0 or r > min(mu, mv):
        raise ValueError("transvectant order out of range")
    out = None
    for s in range(r + 1):
        fs = _apply_derivatives(u.coeffs, mu, r - s, s)
        gs = _apply_derivatives(v.coeffs, mv, s, r - s)
        w = comb(r, s) * (-1) ** s
        term = tuple(c * w for c in _convolve(fs, gs))
        out = term if out is None else tuple(x + y for x, y in zip(out, term))
    return BinaryForm(out, mu + mv - 2 * r)


def moment_map(u: BinaryForm, v: BinaryForm) -> BinaryForm:
    """Contraction of two odd-degree forms down to a quadratic: the
    (m-1)-fold transvectant, whose m = 1 case is the plain product."""
    _require_odd_pair(u, v)
    return transvectant(u, v, u.degree - 1)


def top_transvectant_constant(m: int) -> Fraction:
    """The single constant c with (m-fold transvectant) = c * pairing,
    certified on every basis pair; returns c (equal to m factorial)."""
    if m % 2 == 0:
        raise ValueError("pairing requires odd degree")
    basis = [BinaryForm.basis_vector(m, j) for j in range(m + 1)]
    c = None
    for i in range(m + 1):
        for j in range(m + 1):
            w = symplectic_form(basis[i], basis[j])
            t = transvectant(basis[i], basis[j], m).coeffs[0]
            if w != 0 and c is None:
                c = Fraction(t, 1) / w
    if c is None or c == 0:
        raise VerificationError("degenerate pairing")
    for i in range(m + 1):
        for j in range(m + 1):
            w = symplectic_form(basis[i], basis[j])
            t = transvectant(basis[i], basis[j], m).coeffs[0]
            if t != c * w:
                raise VerificationError(
                    "top transvectant is not proportional at pair (%d, %d)" % (i, j)
                )
    return c


def quadratic_to_matrix(q: BinaryForm):
    """Fixed identification of quadratics with trace-free 2x2 matrices."""
    if q.degree != 2:
        raise ValueError("expected a quadratic")
    c0, c1, c2 = q.coeffs
    half = Fraction(1, 2)
    return ((c1 * half, c0), (c2 * (-1), c1 * (-half)))


def quadratic_matrix_det(q: BinaryForm):
    c0, c1, c2 = q.coeffs
    return c0 * c2 - c1 * c1 * Fraction(1, 4)


def invariance_check(m: int) -> dict:
    """Certifies pairing invariance: w(Xu, v) + w(u, Xv) = 0 for every
    generator and every basis pair."""
    basis = [BinaryForm.basis_vector(m, j) for j in range(m + 1)]
    failures = []
    for x in GENERATORS:
        for i, u in enumerate(basis):
            for j, v in enumerate(basis):
                val = symplectic_form(generator_action(x, u), v) + symplectic_form(
                    u, generator_action(x, v)
                )
                if val != 0:
                    failures.append({"generator": x, "pair": [i, j], "value": str(val)})
    return {
        "check": "pairing_invariance",
        "m": m,
        "pairs": (m + 1) ** 2,
        "generators": list(GENERATORS),
        "failures": failures,
        "passed": not failures,
    }


def equivariance_check(m: int) -> dict:
    """Certifies contraction equivariance: the generator acting on the
    quadratic output matches the sum of its actions on the inputs."""
    basis = [BinaryForm.basis_vector(m, j) for j in range(m + 1)]
    failures = []
    for x in GENERATORS:
        for i, u in enumerate(basis):
            for j, v in enumerate(basis):
                lhs = moment_map(generator_action(x, u), v) + moment_map(
                    u, generator_action(x, v)
                )
                rhs = generator_action(x, moment_map(u, v))
                if not (lhs - rhs).is_zero:
                    failures.append({"generator": x, "pair": [i, j]})
    return {
        "check": "contraction_equivariance",
        "m": m,
        "pairs": (m + 1) ** 2,
        "generators": list(GENERATORS),
        "failures": failures,
        "passed": not failures,
    }


def isotropy_check_m3() -> bool:
    """The m = 3 coordinate subspace with the two leading coefficients
    zero is half-dimensional and the pairing vanishes identically on it."""
    m = 3
    basis = [BinaryForm.basis_vector(m, j) for j in range(m + 1)]
    sub = basis[2:]
    if len(sub) * 2 != m + 1:
        raise VerificationError("subspace is not half-dimensional")
    for u in sub:
        for v in sub:
            if symplectic_form(u, v) != 0:
                raise VerificationError("pairing does not vanish on the subspace")
    if symplectic_form(basis[0], basis[3]) == 0:
        raise VerificationError("pairing degenerated off the subspace")
    return True


def degree_bookkeeping(g: int, deg_l: int) -> int:
    """Degree of the twist that pairs a line bundle against the spin
    bundle's dual: g - 1 - deg_l."""
    if g < 2:
        raise ValueError("genus must be at least 2")
    return g - 1 - deg_l

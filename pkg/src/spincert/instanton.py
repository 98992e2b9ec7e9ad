"""The standard charge-one anti-self-dual SU(2) connection on flat
4-space in quaternionic form, with exact rational-function arithmetic,
and certified production of coupled Dirac solutions by Clifford-acting
its curvature on the flat affine spinor family.

Everything here is symbolic over the Gaussian rationals: connections and
curvatures are 2x2 trace-free matrices of rational functions in the four
coordinates, equalities are identities of rational functions, and every
verification is exact.  Conventions (orientation, duality split, spin
representation) are imported from the clifford module and never
re-chosen here; the one deterministic escape hatch is an orientation
relabel (swap the last two coordinates) if the quaternionic curvature
were to come out self-dual under those conventions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import VerificationError
from .clifford import GammaRep, Multivector, star_blade
from .exactalg import Gaussian, MultiPoly, PolyRing, QI, RatFunc, rank

R4 = PolyRing(QI, ("x1", "x2", "x3", "x4"))
RHO = R4.one() + sum((R4.gen(i) * R4.gen(i) for i in range(4)), R4.zero())

GAMMA = GammaRep()

_SCALARS = (int, Fraction, Gaussian)


def _as_rf(v):
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, MultiPoly):
        return RatFunc(v)
    if isinstance(v, _SCALARS):
        return RatFunc.from_scalar(R4, v)
    raise TypeError("cannot use %r as a matrix entry" % (v,))


class Mat2:
    """A 2x2 matrix of rational functions in the four coordinates."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rr = tuple(tuple(_as_rf(v) for v in row) for row in rows)
        if len(rr) != 2 or any(len(r) != 2 for r in rr):
            raise ValueError("expected a 2x2 entry grid")
        object.__setattr__(self, "rows", rr)

    def __setattr__(self, name, value):
        raise AttributeError("Mat2 is immutable")

    @classmethod
    def zero(cls):
        return _M0

    @classmethod
    def identity(cls):
        return _M1

    def entry(self, i, j):
        return self.rows[i][j]

    @property
    def is_zero(self):
        return all(v.is_zero for row in self.rows for v in row)

    def trace(self):
        return self.rows[0][0] + self.rows[1][1]

    def det(self):
        return self.rows[0][0] * self.rows[1][1] - self.rows[0][1] * self.rows[1][0]

    def __add__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def __neg__(self):
        return Mat2(tuple(tuple(-v for v in row) for row in self.rows))

    def __sub__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Mat2):
            a, b = self.rows, other.rows
            return Mat2(
                tuple(
                    tuple(
                        a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)
                    )
                    for i in range(2)
                )
            )
        try:
            s = _as_rf(other)
        except TypeError:
            return NotImplemented
        return Mat2(tuple(tuple(v * s for v in row) for row in self.rows))

    def __rmul__(self, other):
        if isinstance(other, Mat2):
            return NotImplemented
        return self * other

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        raise TypeError("Mat2 is unhashable")

    def derivative(self, var):
        return Mat2(tuple(tuple(v.derivative(var) for v in row) for row in self.rows))

    def subs_vars(self, assignment):
        """Substitute polynomials for variables in every entry."""
        return Mat2(
            tuple(
                tuple(
                    RatFunc(v.num.subs(assignment), v.den.subs(assignment))
                    for v in row
                )
                for row in self.rows
            )
        )

    def eval(self, point):
        return tuple(tuple(v.eval(point) for v in row) for row in self.rows)

    def inverse(self):
        d = self.det()
        if d.is_zero:
            raise ZeroDivisionError("singular matrix")
        a, b = self.rows[0]
        c, e = self.rows[1]
        return Mat2(((e / d, -b / d), (-c / d, a / d)))

    def __repr__(self):
        return "Mat2(%s)" % (self.rows,)


def _const(re=0, im=0):
    return RatFunc(R4.const(Gaussian(re, im)))


_M0 = Mat2(((0, 0), (0, 0)))
_M1 = Mat2(((1, 0), (0, 1)))


def quaternion_units():
    """The matrix images of i, j, k, 1 used throughout this module."""
    mi = Mat2(((_const(), _const(0, -1)), (_const(0, -1), _const())))
    mj = Mat2(((_const(), _const(-1)), (_const(1), _const())))
    mk = Mat2(((_const(0, -1), _const()), (_const(), _const(0, 1))))
    return mi, mj, mk, _M1


def commutator(a: Mat2, b: Mat2) -> Mat2:
    return a * b - b * a


def traceless_part(m: Mat2) -> Mat2:
    return m - Mat2.identity() * (m.trace() * Fraction(1, 2))


class Connection:
    """Four trace-free matrix components; an exact gauge potential."""

    __slots__ = ("components", "relabeled")

    def __init__(self, components, relabeled=False):
        comps = tuple(components)
        if len(comps) != 4:
            raise ValueError("a connection has four components")
        for m in comps:
            if not isinstance(m, Mat2):
                raise TypeError("components must be Mat2")
            if not m.trace().is_zero:
                raise ValueError("connection components must be trace-free")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "relabeled", bool(relabeled))

    def __setattr__(self, name, value):
        raise AttributeError("Connection is immutable")


def zero_connection() -> Connection:
    return Connection((Mat2.zero(),) * 4)


def _components(a):
    if isinstance(a, Connection):
        return a.components
    comps = tuple(a)
    if len(comps) != 4:
        raise ValueError("expected four components")
    return comps


def curvature(a) -> dict:
    """F_{mu nu} = d_mu A_nu - d_nu A_mu + [A_mu, A_nu], keys (mu, nu)."""
    comps = _components(a)
    out = {}
    for m in range(1, 5):
        for n in range(m + 1, 5):
            am, an = comps[m - 1], comps[n - 1]
            out[(m, n)] = an.derivative(m - 1) - am.derivative(n - 1) + commutator(am, an)
    return out


def _pair_mask(m, n):
    return (1 << (m - 1)) | (1 << (n - 1))


def _mask_pair(mask):
    idx = tuple(i + 1 for i in range(4) if mask >> i & 1)
    return idx


def two_form_star(f: dict) -> dict:
    out = {}
    for (m, n), mat in f.items():
        comp, s = star_blade(_pair_mask(m, n))
        out[_mask_pair(comp)] = mat * s
    for key in f:
        out.setdefault(key, Mat2.zero())
    return out


def sd_asd_split(f: dict):
    """Pointwise duality split (F_plus, F_minus) with F = F_plus + F_minus."""
    starred = two_form_star(f)
    half = Fraction(1, 2)
    plus, minus = {}, {}
    for key in sorted(set(f) | set(starred)):
        fk = f.get(key, Mat2.zero())
        sk = starred.get(key, Mat2.zero())
        plus[key] = (fk + sk) * half
        minus[key] = (fk - sk) * half
    return plus, minus


def form_is_zero(f: dict) -> bool:
    return all(m.is_zero for m in f.values())


def asd_check(f: dict) -> bool:
    plus, _ = sd_asd_split(f)
    return form_is_zero(plus)


def bpst_connection() -> Connection:
    """The quaternionic charge-one connection Im(X qbar_mu)/(1+|x|^2).

    The curvature is computed and its duality type checked; if it came
    out self-dual under the fixed conventions the coordinate relabel
    x3 <-> x4 would be applied once and recorded on the result.
    """
    mi, mj, mk, m1 = quaternion_units()
    units = (mi, mj, mk, m1)
    conj_units = (-mi, -mj, -mk, m1)
    x = Mat2.zero()
    for i, q in enumerate(units):
        x = x + q * RatFunc(R4.gen(i))
    inv_rho = RatFunc(R4.one(), RHO)
    comps = tuple(traceless_part(x * qc) * inv_rho for qc in conj_units)
    conn = Connection(comps)
    plus, minus = sd_asd_split(curvature(conn))
    if form_is_zero(plus):
        return conn
    if form_is_zero(minus):
        swap = {2: R4.gen(3), 3: R4.gen(2)}
        swapped = [m.subs_vars(swap) for m in comps]
        swapped[2], swapped[3] = swapped[3], swapped[2]
        conn = Connection(swapped, relabeled=True)
        plus, _ = sd_asd_split(curvature(conn))
        if not form_is_zero(plus):
            raise VerificationError("relabel did not produce an anti-self-dual field")
        return conn
    raise VerificationError("curvature is neither self-dual nor anti-self-dual")


# ----------------------------------------------------------------------
# flat affine spinor family
# ----------------------------------------------------------------------

_RF0 = RatFunc(R4.zero())


def _zero_spinor():
    return (_RF0,) * 4


def _spinor_is_zero(s) -> bool:
    return all(v.is_zero for v in s)


def _spinor_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _gamma_linear_column(col):
    """The affine spinor x . (basis spinor), entries linear polynomials."""
    comps = []
    for r in range(4):
        p = R4.zero()
        for mu in range(4):
            g = GAMMA.gamma[mu][r][col]
            if not g.is_zero:
                p = p + R4.gen(mu) * g
        comps.append(RatFunc(p))
    return tuple(comps)


def _basis_spinor(col):
    return tuple(_const(1) if r == col else _RF0 for r in range(4))


def flat_dirac(components):
    """Uncoupled Dirac value of a scalar-entried spinor field."""
    acc = _zero_spinor()
    for i in range(4):
        di = tuple(v.derivative(i) for v in components)
        acc = _spinor_add(acc, GAMMA.act(Multivector.vector(i + 1), di))
    return acc


def twistor_residual(components):
    """The four defect fields grad_i psi + (1/4) e_i . (Dirac psi).

    All four vanish exactly iff the field solves the flat twistor
    equation; affine fields of the matched chirality pattern do.
    """
    comps = tuple(_as_rf(v) for v in components)
    dirac = flat_dirac(comps)
    quarter = Fraction(1, 4)
    out = []
    for i in range(4):
        di = tuple(v.derivative(i) for v in comps)
        corr = GAMMA.act(Multivector.vector(i + 1), tuple(v * quarter for v in dirac))
        out.append(_spinor_add(di, corr))
    return tuple(out)


class TwistorSpinor:
    """An affine solution x . psi1 + psi2 of the flat twistor equation,
    valued in a single chirality block."""

    __slots__ = ("psi1", "psi2", "components")

    def __init__(self, psi1, psi2):
        p1 = tuple(Gaussian(0) if v is None else v for v in psi1)
        p2 = tuple(Gaussian(0) if v is None else v for v in psi2)
        field = _zero_spinor()
        for col in range(4):
            if not p1[col].is_zero:
                lin = _gamma_linear_column(col)
                field = _spinor_add(field, tuple(v * p1[col] for v in lin))
            if not p2[col].is_zero:
                const_part = tuple(
                    _as_rf(p2[col]) if r == col else _RF0 for r in range(4)
                )
                field = _spinor_add(field, const_part)
        object.__setattr__(self, "psi1", p1)
        object.__setattr__(self, "psi2", p2)
        object.__setattr__(self, "components", field)
        for res in twistor_residual(field):
            if not _spinor_is_zero(res):
                raise VerificationError("affine field fails the twistor equation")

    def __setattr__(self, name, value):
        raise AttributeError("TwistorSpinor is immutable")


def twistor_basis():
    """Four independent affine solutions valued in the chirality block
    the anti-self-dual 2-forms act on (two linear, two constant)."""
    record = GAMMA.asd_action_record()
    if record["acts_on"] == "S+":
        acted = GAMMA.positive_chirality_indices()
        other = GAMMA.negative_chirality_indices()
    else:
        acted = GAMMA.negative_chirality_indices()
        other = GAMMA.positive_chirality_indices()
    zero4 = (Gaussian(0),) * 4
    sols = []
    for col in other:
        psi1 = tuple(Gaussian(1) if r == col else Gaussian(0) for r in range(4))
        sols.append(TwistorSpinor(psi1, zero4))
    for col in acted:
        psi2 = tuple(Gaussian(1) if r == col else Gaussian(0) for r in range(4))
        sols.append(TwistorSpinor(zero4, psi2))
    for s in sols:
        for idx in other:
            if not s.components[idx].is_zero:
                raise VerificationError("family leaks outside its chirality block")
    return tuple(sols)


# ----------------------------------------------------------------------
# coupled fields
# ----------------------------------------------------------------------


class CoupledField:
    """Spinor with trace-free matrix entries: a section of S tensor End0."""

    __slots__ = ("components",)

    def __init__(self, components):
        comps = tuple(components)
        if len(comps) != 4:
            raise ValueError("a coupled field has four spinor components")
        for m in comps:
            if not isinstance(m, Mat2):
                raise TypeError("components must be Mat2")
            if not m.trace().is_zero:
                raise ValueError("matrix factor must be trace-free")
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("CoupledField is immutable")

    @property
    def is_zero(self):
        return all(m.is_zero for m in self.components)

    def __add__(self, other):
        if not isinstance(other, CoupledField):
            return NotImplemented
        return CoupledField(
            tuple(a + b for a, b in zip(self.components, other.components))
        )

    def __sub__(self, other):
        if not isinstance(other, CoupledField):
            return NotImplemented
        return CoupledField(
            tuple(a - b for a, b in zip(self.components, other.components))
        )

    def scale(self, s):
        return CoupledField(tuple(m * s for m in self.components))


def curvature_acts(f: dict, psi) -> CoupledField:
    """Clifford action of a matrix-valued 2-form on a scalar spinor."""
    comps = [Mat2.zero() for _ in range(4)]
    psi_t = tuple(_as_rf(v) for v in psi)
    for (m, n), mat in f.items():
        blade = Multivector.blade(_pair_mask(m, n))
        phi = GAMMA.act(blade, psi_t)
        for r in range(4):
            if not phi[r].is_zero:
                comps[r] = comps[r] + mat * phi[r]
    return CoupledField(comps)


def coupled_dirac(a, field: CoupledField) -> CoupledField:
    """Sum over directions of e_i . (d_i Psi + [A_i, Psi])."""
    comps = _components(a)
    out = [Mat2.zero() for _ in range(4)]
    for i in range(4):
        theta = tuple(
            field.components[r].derivative(i)
            + commutator(comps[i], field.components[r])
            for r in range(4)
        )
        g = GAMMA.gamma[i]
        for r in range(4):
            for c in range(4):
                if not g[r][c].is_zero:
                    out[r] = out[r] + theta[c] * g[r][c]
    return CoupledField(out)


def gauge_conjugate(a, g: Mat2) -> Connection:
    """Conjugate a connection by a constant invertible matrix."""
    ginv = g.inverse()
    return Connection(
        tuple(g * m * ginv for m in _components(a)),
        relabeled=getattr(a, "relabeled", False),
    )


def gauge_conjugate_field(field: CoupledField, g: Mat2) -> CoupledField:
    ginv = g.inverse()
    return CoupledField(tuple(g * m * ginv for m in field.components))


# ----------------------------------------------------------------------
# verification reports
# ----------------------------------------------------------------------

_EVAL_POINTS = (
    (Fraction(1), Fraction(2), Fraction(-1), Fraction(3)),
    (Fraction(2), Fraction(-1), Fraction(1), Fraction(-2)),
)


def _field_row(field: CoupledField):
    row = []
    for point in _EVAL_POINTS:
        for m in field.components:
            for i in range(2):
                for j in range(2):
                    row.append(m.entry(i, j).eval(point))
    return row


def independent_count(fields) -> int:
    rows = [_field_row(f) for f in fields]
    return rank(rows)


def verify_curvature_dirac_solutions(a, allow_non_asd=False) -> dict:
    """Act the curvature on the affine family and certify that every
    produced field solves the coupled Dirac equation, with the count of
    independent solutions.

    Raises ValueError on a non-anti-self-dual input unless
    ``allow_non_asd`` is set (the flag exists so negative controls can
    report their nonzero residuals instead of erroring out).
    """
    f = curvature(a)
    is_asd = asd_check(f)
    if not is_asd and not allow_non_asd:
        raise ValueError("curvature is not anti-self-dual")
    degenerate = form_is_zero(f)
    produced = []
    residual_zero = []
    for psi in twistor_basis():
        coupled = curvature_acts(f, psi.components)
        res = coupled_dirac(a, coupled)
        produced.append(coupled)
        residual_zero.append(res.is_zero)
    count = 0 if degenerate else independent_count(produced)
    return {
        "check": "curvature_dirac_solutions",
        "convention_record": {
            "acts_on": GAMMA.asd_action_record()["acts_on"],
            "relabeled": getattr(a, "relabeled", False),
        },
        "connection_asd": is_asd,
        "degenerate": degenerate,
        "residual_zero": residual_zero,
        "independent_count": count,
        "passed": bool(
            is_asd and all(residual_zero) and (degenerate or count == 4)
        ),
    }


def exterior_covariant_derivative(a, g2: dict) -> dict:
    """Coupled exterior derivative of a matrix-valued 2-form; keys are
    ascending coordinate triples."""
    comps = _components(a)

    def d_dir(i, m):
        return m.derivative(i - 1) + commutator(comps[i - 1], m)

    def get(m, n):
        if (m, n) in g2:
            return g2[(m, n)]
        if (n, m) in g2:
            return -g2[(n, m)]
        return Mat2.zero()

    out = {}
    for lam, mu, nu in combinations((1, 2, 3, 4), 3):
        out[(lam, mu, nu)] = (
            d_dir(lam, get(mu, nu)) - d_dir(mu, get(lam, nu)) + d_dir(nu, get(lam, mu))
        )
    return out


def yang_mills_residual(a) -> dict:
    """Components of the coupled derivative of the dualized curvature;
    identically zero exactly for Yang-Mills fields."""
    return exterior_covariant_derivative(a, two_form_star(curvature(a)))


def bianchi_residual(a) -> dict:
    """Coupled derivative of the curvature itself; zero for every
    connection, so a nonzero value flags an arithmetic bug."""
    return exterior_covariant_derivative(a, curvature(a))

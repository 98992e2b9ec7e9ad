"""The rank-2 moduli-space side of the genus-2 verification: a table of
fifteen signed squared linear forms on cotangent coordinates (q, p), the
quadratic differential they assemble into over a six-branch-point curve,
its evaluation at branch points, and the exact common-kernel computation
showing each branch point singles out one cotangent direction.

Coordinates: q1..q4 are homogeneous coordinates on the moduli space,
p1..p4 fiber coordinates of its cotangent bundle subject to the
incidence relation q1 p1 + q2 p2 + q3 p3 + q4 p4 = 0.  Sums over index
pairs use unordered pairs i < j throughout; every verified statement is
invariant under overall scale.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import permutations

from . import VerificationError
from .exactalg import MultiPoly, PolyRing, QQ, RatFunc, nullspace
from ._rtable_alt import ALT_TABLE

_QP_NAMES = ("q1", "q2", "q3", "q4", "p1", "p2", "p3", "p4")
QP_RING = PolyRing(QQ, _QP_NAMES)
Q_RING = PolyRing(QQ, _QP_NAMES[:4])
QPX_RING = PolyRing(QQ, _QP_NAMES + ("x",))

# primary transcription: one token per summand of the linear form, the
# overall sign of the squared term kept separate
_PRIMARY_TABLE = {
    (1, 2): (1, "+q1p1 +q2p2 -q3p3 -q4p4"),
    (1, 3): (1, "+q1p4 -q2p3 -q3p2 +q4p1"),
    (1, 4): (-1, "+q1p4 +q2p3 -q3p2 -q4p1"),
    (1, 5): (-1, "+q1p3 -q2p4 -q3p1 +q4p2"),
    (1, 6): (1, "+q1p3 +q2p4 +q3p1 +q4p2"),
    (2, 3): (-1, "+q1p4 -q2p3 +q3p2 -q4p1"),
    (2, 4): (1, "+q1p4 +q2p3 +q3p2 +q4p1"),
    (2, 5): (1, "+q1p3 -q2p4 +q3p1 -q4p2"),
    (2, 6): (-1, "+q1p3 +q2p4 -q3p1 -q4p2"),
    (3, 4): (1, "+q1p1 -q2p2 +q3p3 -q4p4"),
    (3, 5): (1, "+q1p2 +q2p1 +q3p4 +q4p3"),
    (3, 6): (-1, "+q1p2 -q2p1 -q3p4 +q4p3"),
    (4, 5): (-1, "+q1p2 -q2p1 +q3p4 -q4p3"),
    (4, 6): (1, "+q1p2 +q2p1 -q3p4 -q4p3"),
    (5, 6): (1, "+q1p1 -q2p2 -q3p3 +q4p4"),
}

_TERM_RE = re.compile(r"([+-])q([1-4])p([1-4])")


def _parse_linear(text: str):
    grid = [[0] * 4 for _ in range(4)]
    tokens = text.split()
    for tok in tokens:
        m = _TERM_RE.fullmatch(tok)
        if m is None:
            raise ValueError("bad term %r" % tok)
        a, b = int(m.group(2)) - 1, int(m.group(3)) - 1
        if grid[a][b]:
            raise ValueError("repeated monomial %r" % tok)
        grid[a][b] = 1 if m.group(1) == "+" else -1
    if sum(1 for row in grid for c in row if c) != len(tokens):
        raise ValueError("token count mismatch")
    return tuple(tuple(row) for row in grid)


class RijTable:
    """The fifteen signed quadratic forms r_{ij} = sign * l_{ij}^2 on
    the eight cotangent coordinates, indexed by unordered branch pairs."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        pairs = {(i, j) for i in range(1, 7) for j in range(i + 1, 7)}
        if set(entries) != pairs:
            raise ValueError("expected exactly the 15 unordered pairs")
        clean = {}
        for key, (sign, grid) in entries.items():
            if sign not in (1, -1):
                raise ValueError("sign must be +1 or -1")
            grid = tuple(tuple(int(c) for c in row) for row in grid)
            if len(grid) != 4 or any(len(row) != 4 for row in grid):
                raise ValueError("grid must be 4x4")
            if any(c not in (-1, 0, 1) for row in grid for c in row):
                raise ValueError("grid entries must be -1, 0, or 1")
            clean[key] = (sign, grid)
        object.__setattr__(self, "entries", clean)

    def __setattr__(self, name, value):
        raise AttributeError("RijTable is immutable")

    @property
    def pairs(self):
        return tuple(sorted(self.entries))

    def sign(self, i, j):
        return self.entries[_pair(i, j)][0]

    def linear_grid(self, i, j):
        return self.entries[_pair(i, j)][1]

    def linear_form(self, i, j, ring=QP_RING):
        """l_{ij} as a polynomial, bilinear in (q, p)."""
        return _grid_poly(self.linear_grid(i, j), ring)

    def quadratic(self, i, j, ring=QP_RING):
        """r_{ij} = sign * l_{ij}^2."""
        sign, _ = self.entries[_pair(i, j)]
        l = self.linear_form(i, j, ring)
        return l * l if sign == 1 else -(l * l)

    def perturbed(self, i, j):
        """Copy with one sign flipped; negative-control input."""
        entries = dict(self.entries)
        sign, grid = entries[_pair(i, j)]
        entries[_pair(i, j)] = (-sign, grid)
        return RijTable(entries)


def _pair(i, j):
    if i == j or not (1 <= i <= 6 and 1 <= j <= 6):
        raise ValueError("indices must be distinct in 1..6")
    return (i, j) if i < j else (j, i)


def _grid_poly(grid, ring):
    nv = ring.nvars
    terms = {}
    for a in range(4):
        for b in range(4):
            c = grid[a][b]
            if c:
                exps = [0] * nv
                exps[a] += 1
                exps[4 + b] += 1
                terms[tuple(exps)] = Fraction(c)
    return MultiPoly(ring, terms)


def build_r_table() -> RijTable:
    """The primary transcription, parsed from its token form."""
    return RijTable(
        {key: (sign, _parse_linear(text)) for key, (sign, text) in _PRIMARY_TABLE.items()}
    )


def alt_r_table() -> RijTable:
    """The independently keyed second transcription."""
    return RijTable(ALT_TABLE)


def transcription_crosscheck() -> dict:
    """Expand both transcriptions and compare all 15 quadratics; the
    only defence against a copying slip, so a mismatch is an error."""
    primary = build_r_table()
    alt = alt_r_table()
    mismatches = [
        pair
        for pair in primary.pairs
        if primary.quadratic(*pair) != alt.quadratic(*pair)
        or primary.sign(*pair) != alt.sign(*pair)
    ]
    if mismatches:
        raise VerificationError(
            "transcriptions disagree at %s" % (mismatches,)
        )
    return {"check": "r_table_transcription", "pairs": 15, "passed": True}


class BranchConfig:
    """Six distinct rational branch x-values."""

    __slots__ = ("points",)

    def __init__(self, points):
        pts = tuple(Fraction(p) for p in points)
        if len(pts) != 6:
            raise ValueError("exactly six branch points required")
        if len(set(pts)) != 6:
            raise ValueError("branch points must be distinct")
        object.__setattr__(self, "points", pts)

    def __setattr__(self, name, value):
        raise AttributeError("BranchConfig is immutable")

    def point(self, i):
        if not 1 <= i <= 6:
            raise ValueError("branch index out of range")
        return self.points[i - 1]


def standard_branch_config() -> BranchConfig:
    return BranchConfig(range(6))


def h_consistency(
    config: BranchConfig,
    table: RijTable = None,
    reference_table: RijTable = None,
) -> bool:
    """The two displayed forms of the quadratic differential agree as a
    rational function in all nine variables: the partial-fraction sum
    over pairs equals the polynomial sum divided by the curve's y^2.

    The partial-fraction side is built from ``table`` (default: the
    parsed primary transcription) and the polynomial side from
    ``reference_table`` (default: the independently keyed copy), so the
    identity doubles as an end-to-end transcription check: one sign slip
    in either copy breaks it.  Sums run over unordered pairs; the
    ordered-sum convention differs by an overall factor of two on both
    sides, which cancels.
    """
    if table is None:
        table = build_r_table()
    if reference_table is None:
        reference_table = alt_r_table()
    ring = QPX_RING
    x = ring.gen(8)
    lin_factors = {i: x - config.point(i) for i in range(1, 7)}
    y2 = ring.one()
    for i in range(1, 7):
        y2 = y2 * lin_factors[i]
    partial = RatFunc.from_scalar(ring, 0)
    polynomial = ring.zero()
    for (i, j) in table.pairs:
        partial = partial + RatFunc(
            table.quadratic(i, j, ring), lin_factors[i] * lin_factors[j]
        )
        cofactor = ring.one()
        for k in range(1, 7):
            if k != i and k != j:
                cofactor = cofactor * lin_factors[k]
        polynomial = polynomial + cofactor * reference_table.quadratic(i, j, ring)
    return partial == RatFunc(polynomial, y2)


def eval_at_branch(config: BranchConfig, i: int, table: RijTable = None) -> MultiPoly:
    """The quadratic form in p obtained from the polynomial form at
    x = x_i: only the pairs containing i survive, each weighted by the
    product of the remaining branch differences."""
    if table is None:
        table = build_r_table()
    if not 1 <= i <= 6:
        raise ValueError("branch index out of range")
    xi = config.point(i)
    out = QP_RING.zero()
    for j in range(1, 7):
        if j == i:
            continue
        weight = Fraction(1)
        for k in range(1, 7):
            if k != i and k != j:
                weight = weight * (xi - config.point(k))
        out = out + table.quadratic(i, j) * weight
    return out


DISTINGUISHED_SUBSTITUTION = (
    ("q2", 1),
    ("q1", -1),
    ("q4", 1),
    ("q3", -1),
)


def _substitution_polys(ring):
    out = {}
    for b, (name, sgn) in enumerate(DISTINGUISHED_SUBSTITUTION):
        poly = ring.gen(ring.var_index(name))
        out[4 + b] = poly if sgn == 1 else -poly
    return out


def verify_distinguished_covector(table: RijTable = None) -> dict:
    """Substituting p = (q2, -q1, q4, -q3) kills every linear form
    paired with branch index 1, and the substitution is a genuine
    cotangent vector: its pairing with q vanishes identically."""
    if table is None:
        table = build_r_table()
    subs = _substitution_polys(QP_RING)
    residuals = {}
    for j in range(2, 7):
        l = table.linear_form(1, j)
        residuals[(1, j)] = l.subs(subs)
    incidence = QP_RING.zero()
    for a in range(4):
        incidence = incidence + QP_RING.gen(a) * subs[4 + a]
    nonzero = [pair for pair, poly in residuals.items() if not poly.is_zero]
    report = {
        "check": "distinguished_covector",
        "substitution": "(q2, -q1, q4, -q3)",
        "vanishing": {"%d%d" % pair: poly.is_zero for pair, poly in residuals.items()},
        "incidence_zero": incidence.is_zero,
        "passed": not nonzero and incidence.is_zero,
    }
    if not report["passed"]:
        raise VerificationError(
            "nonzero residuals at %s" % (nonzero,)
        )
    return report


def _kernel_generator(i: int, table: RijTable):
    """Solve the 5x4 system over Q[q1..q4] in the fiber coordinates and
    return the unique kernel vector (up to scale)."""
    rows = []
    for j in range(1, 7):
        if j == i:
            continue
        grid = table.linear_grid(i, j)
        row = []
        for b in range(4):
            terms = {}
            for a in range(4):
                c = grid[a][b]
                if c:
                    exps = [0] * 4
                    exps[a] = 1
                    terms[tuple(exps)] = Fraction(c)
            row.append(MultiPoly(Q_RING, terms))
        rows.append(row)
    kernel = nullspace(rows)
    if len(kernel) != 1:
        raise VerificationError(
            "kernel at branch %d has dimension %d" % (i, len(kernel))
        )
    return tuple(kernel[0])


_PROBE_POINT = (Fraction(2), Fraction(3), Fraction(5), Fraction(7))


def _signed_permutation_candidate(gen):
    """If gen is proportional to (s_1 q_{w(1)}, ..., s_4 q_{w(4)}) for a
    permutation w and signs s, return that vector of monomials; else
    None.  The guess comes from one evaluation at distinct primes, the
    proportionality is certified by exact cross-multiplication."""
    vals = [g.eval(_PROBE_POINT) for g in gen]
    if any(v == 0 for v in vals):
        return None
    for w in permutations(range(4)):
        ratios = [vals[a] / _PROBE_POINT[w[a]] for a in range(4)]
        if len({abs(r) for r in ratios}) != 1:
            continue
        flip = -1 if ratios[0] < 0 else 1
        candidate = tuple(
            Q_RING.gen(w[a]) if flip * ratios[a] > 0 else -Q_RING.gen(w[a])
            for a in range(4)
        )
        if proportional_over_q(gen, candidate):
            return candidate
    return None


def kernel_at_branch(config: BranchConfig, i: int, table: RijTable = None) -> dict:
    """Exact common kernel over the fraction field of Q[q1..q4] of the
    five linear forms paired with branch index i, as a 5x4 system in p.
    The dimension must be exactly 1; the generator is certified to be a
    cotangent vector and to annihilate the branch-evaluated quadratic
    form."""
    if table is None:
        table = build_r_table()
    if not 1 <= i <= 6:
        raise ValueError("branch index out of range")
    gen = _kernel_generator(i, table)
    incidence = Q_RING.zero()
    for a in range(4):
        incidence = incidence + Q_RING.gen(a) * gen[a]
    if not incidence.is_zero:
        raise VerificationError("kernel generator is not a cotangent vector")
    lifted = {4 + b: _lift_to_qp(gen[b]) for b in range(4)}
    quad = eval_at_branch(config, i, table).subs(lifted)
    if not quad.is_zero:
        raise VerificationError("generator does not annihilate the quadratic form")
    report = {
        "branch": i,
        "dimension": 1,
        "generator": tuple(g.to_str() for g in gen),
        "incidence_zero": True,
        "quadratic_vanishes": True,
    }
    reduced = _signed_permutation_candidate(gen)
    if reduced is not None:
        report["reduced_generator"] = tuple(g.to_str() for g in reduced)
    return report


def _lift_to_qp(poly: MultiPoly) -> MultiPoly:
    terms = {exps + (0, 0, 0, 0): c for exps, c in poly.terms.items()}
    return MultiPoly(QP_RING, terms)


def proportional_over_q(gen, target) -> bool:
    """Whether two 4-vectors of polynomials are proportional over the
    fraction field, by cross-multiplication."""
    for a in range(4):
        for b in range(a + 1, 4):
            if gen[a] * target[b] != gen[b] * target[a]:
                return False
    return True


def distinguished_vector_polys(ring=Q_RING):
    subs = []
    for name, sgn in DISTINGUISHED_SUBSTITUTION:
        poly = ring.gen(ring.var_index(name))
        subs.append(poly if sgn == 1 else -poly)
    return tuple(subs)


def signed_permutation_record(table: RijTable = None) -> dict:
    """Empirical record: which branch kernels are coordinatewise signed
    permutations of the q-variables, like the branch-1 generator.  No
    claim is asserted; the record is informational."""
    if table is None:
        table = build_r_table()
    images = {}
    for i in range(1, 7):
        gen = _kernel_generator(i, table)
        reduced = _signed_permutation_candidate(gen)
        if reduced is None:
            images[i] = {"signed_permutation": False, "pattern": None}
            continue
        pattern = []
        for entry in reduced:
            exps, coeff = next(iter(entry.terms.items()))
            pattern.append(("+" if coeff > 0 else "-") + Q_RING.names[exps.index(1)])
        images[i] = {"signed_permutation": True, "pattern": tuple(pattern)}
    return {"check": "kernel_symmetry_record", "images": images}


def k2_section_eval(a0, a1, a2, config: BranchConfig, i: int) -> Fraction:
    """Evaluation functional on quadratic-differential sections written
    against the fixed polynomial frame: the value of a0 + a1 x + a2 x^2
    at the i-th branch point."""
    xi = config.point(i)
    return Fraction(a0) + Fraction(a1) * xi + Fraction(a2) * xi * xi

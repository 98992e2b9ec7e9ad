"""Exact linear algebra by fraction-free elimination.

Rank, determinant, and nullspace are computed with the Bareiss scheme:
cross-multiplication steps followed by an exact division by the previous
pivot.  Division happens only by construction-guaranteed exact divisors,
so the entries stay in the coefficient domain (scalars or polynomials)
and never pick up spurious denominators mid-computation.

Entries may be Fractions, Gaussians, MultiPolys over one ring, or
RatFuncs over one ring; RatFunc rows are cleared to polynomials first.
Nullspace vectors are returned over the entry domain (denominator-free
in the polynomial case) and are checked against ``M v = 0`` exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .polys import MultiPoly
from .ratfunc import RatFunc
from .scalars import Gaussian


def _is_zero(x):
    if isinstance(x, (MultiPoly, RatFunc)):
        return x.is_zero
    if isinstance(x, Gaussian):
        return x.is_zero
    return x == 0


def _exact_div(a, b):
    if isinstance(a, MultiPoly):
        q = a.exact_div(b)
        if q is None:
            raise ArithmeticError("fraction-free step produced inexact division")
        return q
    return a / b


def _clear_rows(rows):
    """Turn RatFunc rows into MultiPoly rows by clearing denominators."""
    out = []
    for row in rows:
        if not any(isinstance(x, RatFunc) for x in row):
            out.append(list(row))
            continue
        ring = next(x.ring for x in row if isinstance(x, RatFunc))
        entries = []
        for x in row:
            if isinstance(x, RatFunc):
                entries.append(x)
            elif isinstance(x, MultiPoly):
                entries.append(RatFunc(x))
            else:
                entries.append(RatFunc(ring.const(x)))
        common = ring.one()
        for x in entries:
            if not x.den.is_constant():
                common = common * x.den
        out.append([RatFunc(x.num * common, x.den).as_poly() for x in entries])
    return out


def _echelon(rows):
    """Bareiss forward elimination.

    Returns (matrix, pivot columns, row permutation sign).  The input is a
    list of lists over one domain; it is consumed.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    piv_cols = []
    prev = 1
    r = 0
    sign = 1
    for c in range(ncols):
        p = None
        for i in range(r, nrows):
            if not _is_zero(m[i][c]):
                p = i
                break
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            sign = -sign
        pivot = m[r][c]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                t = pivot * m[i][j] - m[i][c] * m[r][j]
                m[i][j] = _exact_div(t, prev) if prev != 1 else t
            m[i][c] = _zero_like(pivot)
        prev = pivot
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    return m, piv_cols, sign


def _zero_like(x):
    if isinstance(x, MultiPoly):
        return x.ring.zero()
    if isinstance(x, RatFunc):
        return RatFunc(x.ring.zero())
    if isinstance(x, Gaussian):
        return Gaussian(0)
    return Fraction(0)


def _one_like(x):
    if isinstance(x, MultiPoly):
        return x.ring.one()
    if isinstance(x, Gaussian):
        return Gaussian(1)
    return Fraction(1)


def rank(rows):
    if not rows:
        return 0
    _, piv, _ = _echelon(_clear_rows(rows))
    return len(piv)


def det(rows):
    """Determinant of a square matrix, exactly."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    m, piv, sign = _echelon(_clear_rows(rows))
    if len(piv) < n:
        return _zero_like(m[0][0])
    d = m[n - 1][piv[-1]]
    return -d if sign < 0 else d


def _to_frac_field(x):
    if isinstance(x, MultiPoly):
        return RatFunc(x)
    return x


def nullspace(rows):
    """Exact right-nullspace basis of the matrix.

    Polynomial (or RatFunc) matrices yield denominator-free MultiPoly
    vectors; scalar matrices yield scalar vectors.  Every vector is
    verified against the original matrix before being returned.
    """
    if not rows:
        return []
    cleared = _clear_rows(rows)
    ncols = len(cleared[0])
    ech, piv_cols, _ = _echelon([list(r) for r in cleared])
    free_cols = [c for c in range(ncols) if c not in piv_cols]
    basis = []
    polynomial = isinstance(cleared[0][0], MultiPoly)
    one = _one_like(cleared[0][0])
    for fc in free_cols:
        v = [None] * ncols
        for c in free_cols:
            v[c] = _to_frac_field(one if c == fc else _zero_like(cleared[0][0]))
        for k in range(len(piv_cols) - 1, -1, -1):
            pc = piv_cols[k]
            acc = None
            for j in range(pc + 1, ncols):
                if _is_zero(ech[k][j]):
                    continue
                t = _to_frac_field(ech[k][j]) * v[j]
                acc = t if acc is None else acc + t
            if acc is None:
                v[pc] = _to_frac_field(_zero_like(cleared[0][0]))
            else:
                v[pc] = -acc / _to_frac_field(ech[k][pc])
        if polynomial:
            ring = cleared[0][0].ring
            common = ring.one()
            for x in v:
                if not x.den.is_constant():
                    common = common * x.den
            vec = []
            for x in v:
                scaled = RatFunc(x.num * common, x.den).as_poly()
                vec.append(scaled)
            vec = _strip_content(vec)
        else:
            vec = [x for x in v]
        _assert_in_kernel(rows, vec)
        basis.append(vec)
    return basis


def _strip_content(vec):
    """Divide a Fraction-coefficient polynomial vector by its rational
    content and normalize the sign of the first leading coefficient."""
    ring = vec[0].ring
    if ring.field.name != "QQ":
        return vec
    from math import gcd

    nums, dens = [], []
    for p in vec:
        for c in p.terms.values():
            nums.append(c.numerator)
            dens.append(c.denominator)
    if not nums:
        return vec
    g = 0
    for n in nums:
        g = gcd(g, n)
    l = 1
    for d in dens:
        l = l * d // gcd(l, d)
    content = Fraction(g, l)
    for p in vec:
        if not p.is_zero:
            if p.lead()[1] < 0:
                content = -content
            break
    if content in (0, 1):
        return vec
    inv = 1 / content
    return [MultiPoly(ring, {e: c * inv for e, c in p.terms.items()}) for p in vec]


def _assert_in_kernel(rows, vec):
    for row in rows:
        acc = None
        for a, b in zip(row, vec):
            t = _mulmix(a, b)
            acc = t if acc is None else _addmix(acc, t)
        if acc is not None and not _is_zero(acc):
            raise AssertionError("nullspace vector fails M v = 0")


def _mulmix(a, b):
    if isinstance(a, RatFunc) and isinstance(b, MultiPoly):
        return a * RatFunc(b)
    if isinstance(b, RatFunc) and isinstance(a, MultiPoly):
        return RatFunc(a) * b
    return a * b


def _addmix(a, b):
    if isinstance(a, RatFunc) and isinstance(b, MultiPoly):
        return a + RatFunc(b)
    if isinstance(b, RatFunc) and isinstance(a, MultiPoly):
        return RatFunc(a) + b
    return a + b


def solve(rows, rhs):
    """Solve ``M x = rhs`` over a field; None when inconsistent.

    Gaussian elimination with exact field division; intended for scalar
    matrices (Fractions or Gaussians).  Underdetermined systems return one
    solution with free variables set to zero.
    """
    nrows = len(rows)
    if nrows == 0:
        return []
    ncols = len(rows[0])
    aug = [list(r) + [v] for r, v in zip(rows, rhs)]
    piv = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if not _is_zero(aug[i][c])), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pr = aug[r]
        inv = pr[c]
        for i in range(nrows):
            if i == r or _is_zero(aug[i][c]):
                continue
            f = aug[i][c] / inv
            aug[i] = [x - f * y for x, y in zip(aug[i], pr)]
        piv.append((r, c))
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if not _is_zero(aug[i][ncols]):
            return None
    x = [_zero_like(rows[0][0]) for _ in range(ncols)]
    for i, c in piv:
        x[c] = aug[i][ncols] / aug[i][c]
    return x

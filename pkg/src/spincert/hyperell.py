"""Exact function-field computations on hyperelliptic curves y^2 = f(x)
with distinct rational branch points: places and valuations via exact
local power series, divisors, square-root divisor classes with explicit
equivalence witnesses, and a Riemann-Roch space engine that re-checks
the Riemann-Roch identity on every call.

The model is the even one: deg f = 2g+2, monic-up-to-square leading
coefficient, two rational places over x = infinity.  Divisor support is
restricted to rational places (branch places, the two infinite places,
and split places over rational non-branch x with square f-value); that
covers every computation this package needs while keeping all
arithmetic inside the rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd as int_gcd, isqrt

from . import VerificationError

# ----------------------------------------------------------------------
# dense univariate polynomials over the rationals
# ----------------------------------------------------------------------


def _fr(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError("expected a rational scalar, got %r" % (v,))


class UPoly:
    """Dense rational polynomial, coefficients ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_fr(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def x_minus(cls, r):
        return cls((-_fr(r), Fraction(1)))

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def lead(self):
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    def __neg__(self):
        return UPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, UPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, UPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return UPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = UPoly((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UPoly((other,))
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def eval(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return UPoly(tuple(c * k for k, c in enumerate(self.coeffs) if k))

    def divmod(self, other):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UPoly(), self
        quo = [Fraction(0)] * (dq + 1)
        lead = other.lead()
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UPoly(quo), UPoly(rem)

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero:
            a, b = b, a.divmod(b)[1]
        if a.is_zero:
            return a
        return a * (Fraction(1) / a.lead())

    def rational_roots(self):
        """All rational roots with multiplicities; complete by the
        rational-root bound on the integer-scaled polynomial."""
        if self.is_zero:
            raise ValueError("zero polynomial")
        out = {}
        p = self
        zero_mult = 0
        while not p.is_zero and p.coeff(0) == 0:
            p = UPoly(p.coeffs[1:])
            zero_mult += 1
        if zero_mult:
            out[Fraction(0)] = zero_mult
        if p.degree < 1:
            return out
        scale = 1
        for c in p.coeffs:
            scale = scale * c.denominator // int_gcd(scale, c.denominator)
        ints = [int(c * scale) for c in p.coeffs]
        content = 0
        for v in ints:
            content = int_gcd(content, v)
        ints = [v // content for v in ints]
        a0, an = abs(ints[0]), abs(ints[-1])
        for pnum in _divisors(a0):
            for qden in _divisors(an):
                for sign in (1, -1):
                    r = Fraction(sign * pnum, qden)
                    if r in out:
                        continue
                    if p.eval(r) == 0:
                        mult = 0
                        q = p
                        while True:
                            quo, rem = q.divmod(UPoly.x_minus(r))
                            if not rem.is_zero:
                                break
                            mult += 1
                            q = quo
                        out[r] = mult
        return out

    def __repr__(self):
        return "UPoly(%r)" % (self.coeffs,)


def _divisors(n):
    if n == 0:
        return [1]
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            if k != n // k:
                out.append(n // k)
        k += 1
    return sorted(out)


def rational_sqrt(v):
    """Exact square root of a rational, or None."""
    v = _fr(v)
    if v < 0:
        return None
    rn, rd = isqrt(v.numerator), isqrt(v.denominator)
    if rn * rn == v.numerator and rd * rd == v.denominator:
        return Fraction(rn, rd)
    return None


# ----------------------------------------------------------------------
# truncated Laurent series over the rationals
# ----------------------------------------------------------------------


class LSeries:
    """Laurent series known below the exponent bound ``prec``."""

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs, prec):
        cs = {}
        for e, c in coeffs.items():
            c = _fr(c)
            if e < prec and c != 0:
                cs[e] = c
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("LSeries is immutable")

    @classmethod
    def zero(cls, prec):
        return cls({}, prec)

    @classmethod
    def term(cls, c, e, prec):
        return cls({e: c}, prec)

    @property
    def is_plainly_zero(self):
        return not self.coeffs

    def val(self):
        """Exponent of the leading term; raises on a series with no
        visible term (zero to precision)."""
        if not self.coeffs:
            raise VerificationError("series is zero to precision %d" % self.prec)
        return min(self.coeffs)

    def coeff(self, e):
        if e >= self.prec:
            raise VerificationError("coefficient %d beyond precision %d" % (e, self.prec))
        return self.coeffs.get(e, Fraction(0))

    def __add__(self, other):
        if not isinstance(other, LSeries):
            return NotImplemented
        prec = min(self.prec, other.prec)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LSeries(out, prec)

    def __neg__(self):
        return LSeries({e: -c for e, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other):
        if not isinstance(other, LSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        c = _fr(c)
        return LSeries({e: v * c for e, v in self.coeffs.items()}, self.prec)

    def shift(self, k):
        return LSeries({e + k: c for e, c in self.coeffs.items()}, self.prec + k)

    def __mul__(self, other):
        if not isinstance(other, LSeries):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            va = min(self.coeffs) if self.coeffs else self.prec
            vb = min(other.coeffs) if other.coeffs else other.prec
            return LSeries.zero(min(self.prec + vb, other.prec + va))
        va, vb = min(self.coeffs), min(other.coeffs)
        prec = min(self.prec + vb, other.prec + va)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e < prec:
                    out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LSeries(out, prec)

    def truncate(self, prec):
        if prec > self.prec:
            raise ValueError("cannot extend precision")
        return LSeries({e: c for e, c in self.coeffs.items() if e < prec}, prec)

    def invert(self):
        v = self.val()
        rel = self.prec - v
        if rel > (1 << 20):
            raise ValueError("inversion precision too large; truncate first")
        u = [self.coeffs.get(v + k, Fraction(0)) for k in range(rel)]
        inv = [Fraction(0)] * rel
        inv[0] = 1 / u[0]
        for k in range(1, rel):
            acc = Fraction(0)
            for j in range(1, k + 1):
                acc += u[j] * inv[k - j]
            inv[k] = -acc / u[0]
        return LSeries({k - v: c for k, c in enumerate(inv)}, rel - v)

    def sqrt(self, lead_root=None):
        """Square root with even valuation; ``lead_root`` picks the sign
        (it must square to the leading coefficient)."""
        v = self.val()
        if v % 2:
            raise ValueError("odd valuation has no series square root")
        rel = self.prec - v
        if rel > (1 << 20):
            raise ValueError("square-root precision too large; truncate first")
        u = [self.coeffs.get(v + k, Fraction(0)) for k in range(rel)]
        if lead_root is None:
            lead_root = rational_sqrt(u[0])
            if lead_root is None:
                raise ValueError("leading coefficient is not a rational square")
        else:
            lead_root = _fr(lead_root)
            if lead_root * lead_root != u[0]:
                raise ValueError("lead_root does not square to the lead")
        s = [Fraction(0)] * rel
        s[0] = lead_root
        for k in range(1, rel):
            acc = Fraction(0)
            for j in range(1, k):
                acc += s[j] * s[k - j]
            s[k] = (u[k] - acc) / (2 * s[0])
        return LSeries({k + v // 2: c for k, c in enumerate(s)}, rel + v // 2)

    def derivative(self):
        return LSeries(
            {e - 1: c * e for e, c in self.coeffs.items() if e != 0}, self.prec - 1
        )

    def __repr__(self):
        items = " + ".join(
            "%s*t^%d" % (c, e) for e, c in sorted(self.coeffs.items())
        )
        return "<LSeries %s + O(t^%d)>" % (items or "0", self.prec)


def poly_at_series(p: UPoly, s: LSeries) -> LSeries:
    """Evaluate a polynomial at a series by Horner; precision shrinks
    when the series has a pole."""
    acc = LSeries.zero(1 << 30)
    for c in reversed(p.coeffs):
        acc = acc * s + LSeries.term(c, 0, 1 << 30)
    return acc


# ----------------------------------------------------------------------
# curves and places
# ----------------------------------------------------------------------


class HyperCurve:
    """y^2 = f(x) with deg f = 2g+2, distinct rational roots, and a
    rational square leading coefficient (two rational places over
    infinity)."""

    __slots__ = ("f", "genus", "roots", "lead_sqrt", "_cache")

    def __init__(self, f: UPoly):
        if f.is_zero or f.degree < 4 or f.degree % 2:
            raise ValueError("f must have even degree at least 4")
        genus = f.degree // 2 - 1
        if not f.gcd(f.derivative()) == UPoly((1,)):
            raise ValueError("f must be squarefree")
        roots = f.rational_roots()
        if sum(roots.values()) != f.degree:
            raise ValueError("f must split over the rationals")
        ls = rational_sqrt(f.lead())
        if ls is None:
            raise ValueError("leading coefficient must be a rational square")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "genus", genus)
        object.__setattr__(self, "roots", tuple(sorted(roots)))
        object.__setattr__(self, "lead_sqrt", ls)
        object.__setattr__(self, "_cache", {"series": {}, "canonical": None})

    def __setattr__(self, name, value):
        raise AttributeError("HyperCurve is immutable")

    @classmethod
    def from_roots(cls, roots, lead=1):
        f = UPoly.const(lead)
        for r in roots:
            f = f * UPoly.x_minus(r)
        return cls(f)

    def __eq__(self, other):
        if not isinstance(other, HyperCurve):
            return NotImplemented
        return self.f == other.f

    def __hash__(self):
        return hash(self.f)

    def branch_place(self, i):
        """Place over the i-th branch point, 1-based in root order."""
        if not 1 <= i <= len(self.roots):
            raise ValueError("branch index out of range")
        return Place(self, "branch", self.roots[i - 1])

    def infinite_place(self, sign):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return Place(self, "inf", sign)

    def split_place(self, x0, y0):
        x0, y0 = _fr(x0), _fr(y0)
        if self.f.eval(x0) != y0 * y0 or y0 == 0:
            raise ValueError("point is not a smooth affine non-branch point")
        return Place(self, "split", (x0, y0))

    def all_standard_places(self):
        n = len(self.roots)
        return tuple(self.branch_place(i) for i in range(1, n + 1)) + (
            self.infinite_place(1),
            self.infinite_place(-1),
        )


def standard_curve() -> HyperCurve:
    return HyperCurve.from_roots([0, 1, 2, 3, 4, 5])


class Place:
    """A rational point of the smooth model, with exact local series."""

    __slots__ = ("curve", "kind", "key")

    def __init__(self, curve, kind, key):
        if kind not in ("branch", "inf", "split"):
            raise ValueError("unknown place kind")
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "key", key)

    def __setattr__(self, name, value):
        raise AttributeError("Place is immutable")

    def __eq__(self, other):
        if not isinstance(other, Place):
            return NotImplemented
        return (
            self.curve == other.curve
            and self.kind == other.kind
            and self.key == other.key
        )

    def __hash__(self):
        return hash((self.curve, self.kind, self.key))

    def __repr__(self):
        if self.kind == "branch":
            return "Place(branch x=%s)" % (self.key,)
        if self.kind == "inf":
            return "Place(inf %s)" % ("+" if self.key == 1 else "-")
        return "Place(split x=%s, y=%s)" % self.key

    def local_series(self, prec):
        """(x-series, y-series) in the local uniformizer, checked to
        satisfy the curve equation to precision.  Cached per curve; a
        result may carry more precision than requested."""
        cache = self.curve._cache["series"]
        hit = cache.get((self.kind, self.key))
        if hit is not None and hit[0] >= prec:
            return hit[1], hit[2]
        compute_at = max(prec, 2 * hit[0] if hit else 0, 32)
        xs, ys = self._compute_series(compute_at)
        cache[(self.kind, self.key)] = (compute_at, xs, ys)
        return xs, ys

    def _compute_series(self, prec):
        f = self.curve.f
        if self.kind == "branch":
            x0 = self.key
            f1 = f.derivative().eval(x0)
            u = LSeries({2: Fraction(1) / f1}, prec)
            shifted = UPoly(tuple(_taylor(f, x0)))
            for m in range(3, prec):
                target = LSeries.term(1, 2, prec)
                defect = target - poly_at_series(shifted, u).truncate(prec)
                if defect.is_plainly_zero:
                    break
                e = defect.val()
                if e >= prec:
                    break
                u = u + LSeries.term(defect.coeff(e) / f1, e, prec)
            xs = LSeries.term(x0, 0, prec) + u
            ys = LSeries.term(1, 1, prec)
        elif self.kind == "inf":
            n = f.degree
            rev = UPoly(tuple(reversed([f.coeff(k) for k in range(n + 1)])))
            t = LSeries.term(1, 1, prec + n + 2)
            p_of_t = poly_at_series(rev, t).truncate(prec + n + 2)
            root = self.curve.lead_sqrt * self.key
            s = p_of_t.sqrt(lead_root=root).truncate(prec + self.curve.genus + 2)
            xs = LSeries.term(1, -1, prec)
            ys = s.shift(-(self.curve.genus + 1)).truncate(prec)
        else:
            x0, y0 = self.key
            shifted = UPoly(tuple(_taylor(f, x0)))
            t = LSeries.term(1, 1, prec)
            fx = poly_at_series(shifted, t).truncate(prec)
            ys = fx.sqrt(lead_root=y0)
            xs = LSeries.term(x0, 0, prec) + t
        lhs = ys * ys
        rhs = poly_at_series(f, xs)
        check = (lhs - rhs).truncate(min(lhs.prec, rhs.prec, prec))
        if not check.is_plainly_zero:
            raise VerificationError("local series fail the curve equation")
        return xs, ys


def _taylor(p: UPoly, x0):
    """Coefficients of p(x0 + t) in t, exact."""
    n = max(p.degree, 0)
    out = [Fraction(0)] * (n + 1)
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        for j in range(k + 1):
            out[j] += c * comb(k, j) * x0 ** (k - j)
    return out


# ----------------------------------------------------------------------
# divisors
# ----------------------------------------------------------------------


class Divisor:
    """Finite integer combination of places."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        cs = {}
        for place, n in (coeffs or {}).items():
            if not isinstance(place, Place):
                raise TypeError("divisor support must be places")
            n = int(n)
            if n:
                cs[place] = n
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("Divisor is immutable")

    @classmethod
    def of_place(cls, place, n=1):
        return cls({place: n})

    def coeff(self, place):
        return self.coeffs.get(place, 0)

    @property
    def degree(self):
        return sum(self.coeffs.values())

    @property
    def support(self):
        return tuple(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        out = dict(self.coeffs)
        for p, n in other.coeffs.items():
            out[p] = out.get(p, 0) + n
        return Divisor(out)

    def __neg__(self):
        return Divisor({p: -n for p, n in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self + (-other)

    def scale(self, k):
        return Divisor({p: n * k for p, n in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_effective(self):
        return all(n > 0 for n in self.coeffs.values())

    def __repr__(self):
        parts = ["%+d*%r" % (n, p) for p, n in self.coeffs.items()]
        return "Divisor(%s)" % " ".join(parts or ["0"])


# ----------------------------------------------------------------------
# function field elements
# ----------------------------------------------------------------------


class FieldElem:
    """(a(x) + b(x) y) / den(x); no simplification is attempted."""

    __slots__ = ("curve", "a", "b", "den")

    def __init__(self, curve, a, b=None, den=None):
        a = a if isinstance(a, UPoly) else UPoly.const(a)
        b = UPoly() if b is None else (b if isinstance(b, UPoly) else UPoly.const(b))
        den = UPoly((1,)) if den is None else (
            den if isinstance(den, UPoly) else UPoly.const(den)
        )
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    @classmethod
    def x_function(cls, curve):
        return cls(curve, UPoly((0, 1)))

    @classmethod
    def y_function(cls, curve):
        return cls(curve, UPoly(), UPoly((1,)))

    @property
    def is_zero(self):
        return self.a.is_zero and self.b.is_zero

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return FieldElem(self.curve, self.a + other.a, self.b + other.b, self.den)
        return FieldElem(
            self.curve,
            self.a * other.den + other.a * self.den,
            self.b * other.den + other.b * self.den,
            self.den * other.den,
        )

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.curve != self.curve:
                raise ValueError("curve mismatch")
            return other
        if isinstance(other, (int, Fraction, UPoly)):
            return FieldElem(self.curve, other)
        return None

    def __neg__(self):
        return FieldElem(self.curve, -self.a, -self.b, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        f = self.curve.f
        a = self.a * other.a + self.b * other.b * f
        b = self.a * other.b + self.b * other.a
        return FieldElem(self.curve, a, b, self.den * other.den)

    __radd__ = __add__
    __rmul__ = __mul__

    def conjugate(self):
        """Image under the sheet involution y -> -y."""
        return FieldElem(self.curve, self.a, -self.b, self.den)

    def norm_pair(self):
        """(numerator, denominator) of h * sigma(h), both polynomials."""
        num = self.a * self.a - self.b * self.b * self.curve.f
        return num, self.den * self.den

    def inverse(self):
        if self.is_zero:
            raise ZeroDivisionError("inverting zero")
        num = self.a * self.a - self.b * self.b * self.curve.f
        return FieldElem(self.curve, self.a * self.den, -self.b * self.den, num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self.a * other.den == other.a * self.den) and (
            self.b * other.den == other.b * self.den
        )

    def __hash__(self):
        raise TypeError("FieldElem is unhashable")

    def expand_at(self, place: Place, prec: int) -> LSeries:
        work = prec + _prec_pad(self, place)
        xs, ys = place.local_series(work)
        num = poly_at_series(self.a, xs) + poly_at_series(self.b, xs) * ys
        den = poly_at_series(self.den, xs)
        num = num.truncate(min(num.prec, work))
        den = den.truncate(min(den.prec, work))
        return (num * den.invert()).truncate(prec)

    def valuation(self, place: Place) -> int:
        if self.is_zero:
            raise ValueError("zero element has no valuation")
        bound = _valuation_bound(self, place)
        prec = 16
        while True:
            series = self.expand_at(place, min(prec, bound + 1))
            if series.coeffs:
                return series.val()
            if prec > bound:
                raise VerificationError("valuation exceeds its norm bound")
            prec *= 2

    def __repr__(self):
        return "FieldElem((%r) + (%r) y / (%r))" % (self.a, self.b, self.den)


def _prec_pad(h: FieldElem, place: Place) -> int:
    # covers Horner loss at infinity plus the inversion's double loss at
    # a branch denominator; an underestimate fails loudly in truncate
    degs = max(h.a.degree, h.b.degree, h.den.degree, 0)
    return 4 * degs + 2 * h.curve.genus + 10


def _valuation_bound(h: FieldElem, place: Place) -> int:
    """An exponent strictly above any possible valuation of h at the
    place, from degree bookkeeping of the norm."""
    num, den = h.norm_pair()
    deg_gap = max(num.degree, 0) + max(den.degree, 0)
    per_place = 2 if place.kind == "branch" else 1
    return per_place * (deg_gap + 2) + h.curve.f.degree + 4


def divisor_of(h: FieldElem) -> Divisor:
    """Full divisor of a nonzero element whose zeros and poles all lie
    over rational x-values at rational points; raises otherwise.  The
    result is certified by a total-degree-zero check."""
    if h.is_zero:
        raise ValueError("zero element has no divisor")
    curve = h.curve
    num, den = h.norm_pair()
    support_x = set()
    for poly in (num, den):
        roots = poly.rational_roots()
        if sum(roots.values()) != max(poly.degree, 0):
            raise ValueError("support is not rational: %r" % poly)
        support_x.update(roots)
    out = {}
    for x0 in support_x:
        if curve.f.eval(x0) == 0:
            i = curve.roots.index(x0) + 1
            places = [curve.branch_place(i)]
        else:
            y0 = rational_sqrt(curve.f.eval(x0))
            if y0 is None:
                raise ValueError("support over x=%s is not rational" % x0)
            places = [curve.split_place(x0, y0), curve.split_place(x0, -y0)]
        for p in places:
            v = h.valuation(p)
            if v:
                out[p] = v
    for sign in (1, -1):
        p = curve.infinite_place(sign)
        v = h.valuation(p)
        if v:
            out[p] = v
    div = Divisor(out)
    if div.degree != 0:
        raise VerificationError("computed divisor has nonzero degree %d" % div.degree)
    return div


# ----------------------------------------------------------------------
# canonical and square-root divisors
# ----------------------------------------------------------------------


def canonical_divisor(curve: HyperCurve) -> Divisor:
    """Divisor of the differential dx/y, computed from local series."""
    cached = curve._cache["canonical"]
    if cached is not None:
        return cached
    out = {}
    y = FieldElem.y_function(curve)
    for place in curve.all_standard_places():
        prec = curve.f.degree + 8
        xs, _ = place.local_series(prec)
        v_dx = xs.derivative().val()
        v_y = y.valuation(place)
        v = v_dx - v_y
        if v:
            out[place] = v
    div = Divisor(out)
    if div.degree != 2 * curve.genus - 2:
        raise VerificationError("canonical degree is %d" % div.degree)
    curve._cache["canonical"] = div
    return div


def theta_divisor(curve: HyperCurve, t) -> Divisor:
    """Square-root divisor class representative for a branch subset of
    the right parity: branch places over T plus the balancing multiple
    of the two infinite places.  The doubling relation against the
    canonical divisor is certified by an explicit function."""
    g = curve.genus
    tset = frozenset(int(i) for i in t)
    n = 2 * g + 2
    if not all(1 <= i <= n for i in tset):
        raise ValueError("branch labels out of range")
    if len(tset) % 2 != (g + 1) % 2:
        raise ValueError("subset size has the wrong parity")
    m, rem = divmod(g - 1 - len(tset), 2)
    if rem:
        raise ValueError("unbalanced subset size")
    out = {}
    for i in sorted(tset):
        out[curve.branch_place(i)] = 1
    if m:
        out[curve.infinite_place(1)] = m
        out[curve.infinite_place(-1)] = m
    div = Divisor(out)
    witness = FieldElem(curve, UPoly((1,)))
    for i in sorted(tset):
        witness = witness * FieldElem(
            curve, UPoly.x_minus(curve.roots[i - 1])
        )
    doubling = div.scale(2) - canonical_divisor(curve)
    if divisor_of(witness) != doubling:
        raise VerificationError("doubling witness failed for T=%s" % sorted(tset))
    return div


def theta_complement_witness(curve: HyperCurve, t) -> FieldElem:
    """The function with divisor theta(T) - theta(T^c); certifies that
    complementary subsets give the same class."""
    g = curve.genus
    tset = frozenset(int(i) for i in t)
    comp = frozenset(range(1, 2 * g + 3)) - tset
    h = FieldElem(curve, UPoly((1,)))
    for i in sorted(tset):
        h = h * FieldElem(curve, UPoly.x_minus(curve.roots[i - 1]))
    h = h / FieldElem.y_function(curve)
    want = theta_divisor(curve, tset) - theta_divisor(curve, comp)
    if divisor_of(h) != want:
        raise VerificationError("complement witness failed for T=%s" % sorted(tset))
    return h


def spin_power_divisor(curve: HyperCurve, t, n: int) -> Divisor:
    """Representative of the n-th power of the square-root class for odd
    n: the theta representative plus (n-1)/2 canonical divisors."""
    if n % 2 == 0:
        raise ValueError("n must be odd")
    base = theta_divisor(curve, t)
    return base + canonical_divisor(curve).scale((n - 1) // 2)


# ----------------------------------------------------------------------
# Riemann-Roch spaces
# ----------------------------------------------------------------------


class RRSpace:
    """Computed basis of L(D) with the identity check record."""

    __slots__ = ("curve", "divisor", "basis", "rr_record")

    def __init__(self, curve, divisor, basis, rr_record):
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "divisor", divisor)
        object.__setattr__(self, "basis", tuple(basis))
        object.__setattr__(self, "rr_record", rr_record)

    def __setattr__(self, name, value):
        raise AttributeError("RRSpace is immutable")

    @property
    def dimension(self):
        return len(self.basis)


def _ceil_div(a, b):
    return -((-a) // b)


def _group_divisor(curve, divisor):
    branch = {}
    split = {}
    inf = {1: 0, -1: 0}
    for place, n in divisor.coeffs.items():
        if place.curve != curve:
            raise ValueError("divisor lives on a different curve")
        if place.kind == "branch":
            branch[place.key] = n
        elif place.kind == "inf":
            inf[place.key] = n
        else:
            x0, y0 = place.key
            split.setdefault(x0, {})[y0] = n
    return branch, split, inf


def _rr_system(curve: HyperCurve, divisor: Divisor):
    """Denominator, degree bounds, and constraint rows for the L(D)
    ansatz h = (a(x) + b(x) y)/d(x)."""
    g = curve.genus
    branch, split, inf = _group_divisor(curve, divisor)
    d = UPoly((1,))
    branch_e = {}
    for x0, n in branch.items():
        e = max(_ceil_div(n, 2), 0)
        branch_e[x0] = e
        d = d * UPoly.x_minus(x0) ** e
    split_e = {}
    for x0, ys in split.items():
        e = max(max(ys.values()), 0)
        split_e[x0] = e
        d = d * UPoly.x_minus(x0) ** e
    n_inf = max(inf[1], inf[-1], 0)
    na = d.degree + n_inf
    nb = na - (g + 1)
    ncols = (na + 1) + (nb + 1 if nb >= 0 else 0)

    rows = []

    def a_col(k):
        return k

    def b_col(k):
        return na + 1 + k

    # branch constraints: the even and odd parts cannot cancel, so the
    # pole bound splits into independent order conditions on a and b
    for x0, n in branch.items():
        c = 2 * branch_e[x0] - n
        need_a = max(_ceil_div(c, 2), 0)
        need_b = max(_ceil_div(c - 1, 2), 0)
        for j in range(need_a):
            row = [Fraction(0)] * ncols
            for k in range(j, na + 1):
                row[a_col(k)] = Fraction(comb(k, j)) * x0 ** (k - j)
            rows.append(row)
        if nb >= 0:
            for j in range(need_b):
                row = [Fraction(0)] * ncols
                for k in range(j, nb + 1):
                    row[b_col(k)] = Fraction(comb(k, j)) * x0 ** (k - j)
                rows.append(row)

    # split constraints: leading series coefficients on each sheet over
    # the x-value, including the sheet absent from the divisor
    for x0, ys in split.items():
        e = split_e[x0]
        y0ref = next(iter(ys))
        sheets = {y0ref: ys.get(y0ref, 0), -y0ref: ys.get(-y0ref, 0)}
        for y0, n in sheets.items():
            c = e - n
            if c <= 0:
                continue
            place = curve.split_place(x0, y0)
            _, yseries = place.local_series(c + curve.f.degree + 6)
            for j in range(c):
                row = [Fraction(0)] * ncols
                for k in range(j, na + 1):
                    row[a_col(k)] += Fraction(comb(k, j)) * x0 ** (k - j)
                if nb >= 0:
                    for k in range(nb + 1):
                        for jj in range(0, min(k, j) + 1):
                            coeff_b = Fraction(comb(k, jj)) * x0 ** (k - jj)
                            row[b_col(k)] += coeff_b * yseries.coeff(j - jj)
                rows.append(row)

    # infinity constraints: Laurent coefficients below the allowed pole
    for sign in (1, -1):
        c_needed = n_inf - inf[sign]
        if c_needed <= 0:
            continue
        place = curve.infinite_place(sign)
        _, yseries = place.local_series(na + curve.f.degree + 6)
        for j in range(-na, -na + c_needed):
            row = [Fraction(0)] * ncols
            if 0 <= -j <= na:
                row[a_col(-j)] += 1
            if nb >= 0:
                for k in range(nb + 1):
                    row[b_col(k)] += yseries.coeff(j + k)
            rows.append(row)

    return d, na, nb, rows


def rr_space(curve: HyperCurve, divisor: Divisor, check_identity=True) -> RRSpace:
    """Exact basis of L(D) for divisors supported on rational places.

    The ansatz h = (a(x) + b(x) y)/d(x) with d built from the finite
    support is complete for this support class; the Riemann-Roch
    identity (against an independently computed L(K - D)) is asserted
    on every outer call, and each basis element's pole bounds and
    off-support regularity are re-verified from local series.
    """
    from .exactalg import nullspace

    g = curve.genus
    d, na, nb, rows = _rr_system(curve, divisor)
    ncols = (na + 1) + (nb + 1 if nb >= 0 else 0)
    if rows:
        vectors = nullspace(rows)
    else:
        vectors = [
            [Fraction(1) if i == j else Fraction(0) for i in range(ncols)]
            for j in range(ncols)
        ]
    basis = []
    for vec in vectors:
        a = UPoly(tuple(vec[: na + 1]))
        b = UPoly(tuple(vec[na + 1 :])) if nb >= 0 else UPoly()
        basis.append(FieldElem(curve, a, b, d))

    _verify_membership(curve, divisor, d, basis)

    rr_record = None
    if check_identity:
        k_div = canonical_divisor(curve)
        dual = rr_space(curve, k_div - divisor, check_identity=False)
        lhs = len(basis) - dual.dimension
        rhs = divisor.degree - g + 1
        rr_record = {
            "dim": len(basis),
            "dual_dim": dual.dimension,
            "deg": divisor.degree,
            "genus": g,
            "identity": lhs == rhs,
        }
        if lhs != rhs:
            raise VerificationError(
                "Riemann-Roch identity failed: %d - %d != %d"
                % (len(basis), dual.dimension, rhs)
            )
    return RRSpace(curve, divisor, basis, rr_record)


def _verify_membership(curve, divisor, d, basis):
    """Each basis element obeys every pole bound and has no pole off the
    support; candidate poles only at zeros of d and infinity."""
    candidates = set(divisor.support)
    for x0, mult in d.rational_roots().items():
        if curve.f.eval(x0) == 0:
            candidates.add(curve.branch_place(curve.roots.index(x0) + 1))
        else:
            y0 = rational_sqrt(curve.f.eval(x0))
            if y0 is None:
                raise VerificationError("denominator root not rational on the curve")
            candidates.add(curve.split_place(x0, y0))
            candidates.add(curve.split_place(x0, -y0))
    candidates.add(curve.infinite_place(1))
    candidates.add(curve.infinite_place(-1))
    for h in basis:
        if h.is_zero:
            raise VerificationError("zero vector in basis")
        for place in candidates:
            if h.valuation(place) < -divisor.coeff(place):
                raise VerificationError(
                    "basis element violates bound at %r" % (place,)
                )


def rr_space_split(curve: HyperCurve, divisor: Divisor):
    """(even_dim, odd_dim, total_dim) for a sheet-involution-invariant
    divisor.  The +1 eigenspace is the a(x)/d subspace and the -1
    eigenspace the b(x)y/d subspace; their dimensions are computed by
    restricting the constraint system to each block and must sum to the
    full dimension."""
    from .exactalg import nullspace

    branch, split, inf = _group_divisor(curve, divisor)
    if inf[1] != inf[-1]:
        raise ValueError("divisor is not involution invariant")
    for x0, ys in split.items():
        if len(ys) != 2 or len(set(ys.values())) != 1:
            raise ValueError("divisor is not involution invariant")
    full = rr_space(curve, divisor)
    d, na, nb, rows = _rr_system(curve, divisor)
    ncols = (na + 1) + (nb + 1 if nb >= 0 else 0)
    even = _block_nullity(rows, ncols, range(na + 1), nullspace)
    odd = (
        _block_nullity(rows, ncols, range(na + 1, ncols), nullspace)
        if nb >= 0
        else 0
    )
    if even + odd != full.dimension:
        raise VerificationError("involution split does not fill the space")
    return even, odd, full.dimension


def _block_nullity(rows, ncols, cols, nullspace):
    cols = list(cols)
    if not cols:
        return 0
    if not rows:
        return len(cols)
    sub = [[row[c] for c in cols] for row in rows]
    return len(nullspace(sub))


def h0_all_theta(curve: HyperCurve):
    """Dimensions h^0 for all 2^(2g) square-root classes of a genus-2
    curve; returns the table keyed by reduced subset and the
    (odd-dimension, even-dimension) class counts."""
    from .thetachar import enumerate_chars

    if curve.genus != 2:
        raise ValueError("the sweep is genus-2 only")
    table = {}
    for cls in enumerate_chars(curve.genus):
        dim = rr_space(curve, theta_divisor(curve, cls.members)).dimension
        if dim not in (0, 1):
            raise VerificationError("genus-2 theta dimension out of range")
        table[cls.members] = dim
    odd = sum(1 for v in table.values() if v % 2)
    return {"table": table, "counts": (odd, len(table) - odd)}

"""Sparse multivariate polynomials with exact coefficients.

A polynomial is a map from exponent vectors (one integer per ring
variable) to nonzero coefficients in the ring's scalar field.  Zero
coefficients are never stored, so the zero test is "no terms".

Exact division (`exact_div`) runs multivariate division against a single
divisor under the lexicographic term order and reports failure instead of
producing a remainder; for an exact multiple it always succeeds.

Canonical text form: terms sorted by exponent vector, descending
lexicographic in variable order, each as ``coeff*mono`` with explicit
rational (or Gaussian rational) coefficients.  ``PolyRing.parse`` is a
bit-exact inverse on canonical output.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import QI, QQ, Gaussian

_SCALARS = (int, Fraction, Gaussian)


class PolyRing:
    """A polynomial ring: a scalar field plus an ordered variable tuple."""

    __slots__ = ("field", "names")

    def __init__(self, field, names):
        self.field = field
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self):
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field is other.field
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.field.name, self.names))

    def __repr__(self):
        return "PolyRing(%s, %s)" % (self.field.name, list(self.names))

    def zero(self):
        return MultiPoly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field.coerce(c)
        if self.field.is_zero(c):
            return MultiPoly(self, {})
        return MultiPoly(self, {(0,) * self.nvars: c})

    def gen(self, i):
        if not 0 <= i < self.nvars:
            raise IndexError("no variable with index %d" % i)
        e = [0] * self.nvars
        e[i] = 1
        return MultiPoly(self, {tuple(e): self.field.one()})

    def gens(self):
        return tuple(self.gen(i) for i in range(self.nvars))

    def var_index(self, name):
        return self.names.index(name)

    def parse(self, text):
        """Parse the canonical text form produced by ``MultiPoly.to_str``."""
        s = text.strip()
        if s == "0":
            return self.zero()
        terms = {}
        for raw in s.split(" + "):
            exps, coeff = self._parse_term(raw.strip())
            if exps in terms:
                raise ValueError("repeated monomial in %r" % text)
            terms[exps] = coeff
        return MultiPoly(self, terms)

    def _parse_term(self, raw):
        if raw.startswith("("):
            close = raw.index(")")
            coeff = self.field.parse(raw[1:close])
            rest = raw[close + 1 :]
            if rest.startswith("*"):
                rest = rest[1:]
        else:
            head, sep, tail = raw.partition("*")
            if head and (head[0].isdigit() or head[0] in "+-"):
                coeff = self.field.parse(head)
                rest = tail if sep else ""
            else:
                coeff = self.field.one()
                rest = raw
        exps = [0] * self.nvars
        if rest:
            for factor in rest.split("*"):
                name, _, power = factor.partition("^")
                idx = self.var_index(name)
                exps[idx] += int(power) if power else 1
        return tuple(exps), coeff


class MultiPoly:
    """An immutable sparse polynomial over a :class:`PolyRing`."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        clean = {}
        nv = ring.nvars
        for exps, c in terms.items():
            c = ring.field.coerce(c)
            if ring.field.is_zero(c):
                continue
            if len(exps) != nv:
                raise ValueError("exponent arity mismatch")
            clean[tuple(exps)] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def _raw(cls, ring, terms):
        # internal: terms already clean (no zeros, right arity, coerced)
        self = object.__new__(cls)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", terms)
        return self

    # ------------------------------------------------------------------
    # structure
    # ------------------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self):
        if self.is_zero:
            return self.ring.field.zero()
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def total_degree(self):
        if self.is_zero:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var):
        if self.is_zero:
            return -1
        return max(e[var] for e in self.terms)

    def lead(self):
        """Leading (exps, coeff) under descending lex order; error on zero."""
        if self.is_zero:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms)
        return exps, self.terms[exps]

    def coeff_of(self, exps):
        return self.terms.get(tuple(exps), self.ring.field.zero())

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def _check(self, other):
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError("polynomial ring mismatch")
            return other
        if isinstance(other, _SCALARS):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        field = self.ring.field
        out = dict(self.terms)
        for exps, c in other.terms.items():
            acc = out.get(exps)
            s = c if acc is None else acc + c
            if field.is_zero(s):
                out.pop(exps, None)
            else:
                out[exps] = s
        return MultiPoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        field = self.ring.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                acc = out.get(e)
                s = p if acc is None else acc + p
                if field.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def exact_div(self, divisor):
        """Return self / divisor when the division is exact, else None."""
        divisor = self._check(divisor)
        if divisor is None:
            raise TypeError("bad divisor")
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        field = self.ring.field
        lexp, lc = divisor.lead()
        rem = dict(self.terms)
        quot = {}
        while rem:
            rexp = max(rem)
            qexp = tuple(a - b for a, b in zip(rexp, lexp))
            if any(e < 0 for e in qexp):
                return None
            qc = field.div(rem[rexp], lc)
            quot[qexp] = qc
            for dexp, dc in divisor.terms.items():
                e = tuple(a + b for a, b in zip(qexp, dexp))
                s = rem.get(e, field.zero()) - qc * dc
                if field.is_zero(s):
                    rem.pop(e, None)
                else:
                    rem[e] = s
        return MultiPoly._raw(self.ring, quot)

    def derivative(self, var):
        out = {}
        for exps, c in self.terms.items():
            k = exps[var]
            if k == 0:
                continue
            e = list(exps)
            e[var] = k - 1
            out[tuple(e)] = c * k
        return MultiPoly._raw(self.ring, out)

    def subs(self, assignment):
        """Substitute polynomials for variables; ``assignment`` maps
        variable index to a MultiPoly of the same ring."""
        out = self.ring.zero()
        for exps, c in self.terms.items():
            term = self.ring.const(c)
            for i, k in enumerate(exps):
                if k == 0:
                    continue
                if i in assignment:
                    term = term * (assignment[i] ** k)
                else:
                    term = term * (self.ring.gen(i) ** k)
            out = out + term
        return out

    def eval(self, point):
        """Evaluate at scalars, one per variable."""
        if len(point) != self.ring.nvars:
            raise ValueError("point arity mismatch")
        field = self.ring.field
        vals = [field.coerce(v) for v in point]
        acc = field.zero()
        for exps, c in self.terms.items():
            t = c
            for v, k in zip(vals, exps):
                for _ in range(k):
                    t = t * v
            acc = acc + t
        return acc

    # ------------------------------------------------------------------
    # text form
    # ------------------------------------------------------------------

    def to_str(self):
        if self.is_zero:
            return "0"
        field = self.ring.field
        parts = []
        for exps in sorted(self.terms, reverse=True):
            c = self.terms[exps]
            mono = "*".join(
                self.ring.names[i] if k == 1 else "%s^%d" % (self.ring.names[i], k)
                for i, k in enumerate(exps)
                if k
            )
            ctext = field.to_str(c)
            if any(ch in ctext[1:] for ch in "+-") or ctext.endswith("i"):
                ctext = "(%s)" % ctext
            parts.append("%s*%s" % (ctext, mono) if mono else ctext)
        return " + ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return "<MultiPoly %s>" % self.to_str()

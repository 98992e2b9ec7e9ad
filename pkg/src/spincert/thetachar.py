"""Mod-2 combinatorics of square roots of the canonical bundle on a
hyperelliptic curve of genus g: subsets of the 2g+2 branch labels modulo
complement, their parity, and the equivalent quadratic-form model over
GF(2) with its Arf invariant.

The parity rule on a reduced subset T (size at most g+1, congruent to
g+1 mod 2) is the mod-2 value of (g+1-|T|)/2.  It is calibrated so that
at genus 2 the six singletons are odd and the ten triples are even, and
it reproduces the closed-form counts 2^(g-1)(2^g -+ 1) in the whole
supported range; the test suite rejects any other rule.
"""

from __future__ import annotations

from itertools import combinations, product

from . import VerificationError

GENUS_RANGE = range(1, 7)


class CharClass:
    """A square-root class: reduced branch-label subset at a fixed genus."""

    __slots__ = ("g", "members")

    def __init__(self, g, members):
        ms = frozenset(int(i) for i in members)
        n = 2 * g + 2
        if not all(1 <= i <= n for i in ms):
            raise ValueError("labels must lie in 1..%d" % n)
        if len(ms) % 2 != (g + 1) % 2:
            raise ValueError("subset size must be congruent to g+1 mod 2")
        ms = _reduce(ms, g)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "members", ms)

    def __setattr__(self, name, value):
        raise AttributeError("CharClass is immutable")

    def __eq__(self, other):
        if not isinstance(other, CharClass):
            return NotImplemented
        return self.g == other.g and self.members == other.members

    def __hash__(self):
        return hash((self.g, self.members))

    def __repr__(self):
        return "CharClass(g=%d, %s)" % (self.g, sorted(self.members))

    @property
    def parity_bit(self):
        return ((self.g + 1 - len(self.members)) // 2) % 2

    @property
    def parity(self):
        return "odd" if self.parity_bit else "even"


def _reduce(t: frozenset, g: int) -> frozenset:
    full = frozenset(range(1, 2 * g + 3))
    comp = full - t
    if len(t) < len(comp):
        return t
    if len(comp) < len(t):
        return comp
    return t if 1 in t else comp


def enumerate_chars(g: int):
    """All 2^(2g) classes, as reduced representatives."""
    if g not in GENUS_RANGE:
        raise ValueError("supported genus range is 1..6")
    n = 2 * g + 2
    labels = range(1, n + 1)
    out = []
    size = (g + 1) % 2
    while size < g + 1:
        out.extend(CharClass(g, c) for c in combinations(labels, size))
        size += 2
    out.extend(
        CharClass(g, (1,) + rest) for rest in combinations(range(2, n + 1), g)
    )
    expected = 1 << (2 * g)
    if len(out) != expected or len(set(out)) != expected:
        raise VerificationError("class enumeration miscounted")
    return out


def parity(c: CharClass, g: int) -> str:
    if c.g != g:
        raise ValueError("genus mismatch")
    return c.parity


def parity_counts(g: int):
    """(odd, even) class counts; matches 2^(g-1)(2^g - 1) and
    2^(g-1)(2^g + 1)."""
    chars = enumerate_chars(g)
    odd = sum(c.parity_bit for c in chars)
    return odd, len(chars) - odd


# ----------------------------------------------------------------------
# quadratic-form model over GF(2)
# ----------------------------------------------------------------------


class QuadFormGF2:
    """Quadratic refinement of the standard symplectic pairing on
    (Z/2)^(2g), stored by its values on the hyperbolic basis."""

    __slots__ = ("g", "basis_values")

    def __init__(self, g, basis_values):
        vals = tuple(int(v) % 2 for v in basis_values)
        if len(vals) != 2 * g:
            raise ValueError("need one value per basis vector")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "basis_values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("QuadFormGF2 is immutable")

    @staticmethod
    def pairing(u, v):
        acc = 0
        for i in range(0, len(u), 2):
            acc ^= (u[i] & v[i + 1]) ^ (u[i + 1] & v[i])
        return acc

    def value(self, u):
        support = [i for i, b in enumerate(u) if b]
        acc = 0
        for i in support:
            acc ^= self.basis_values[i]
        for a in range(len(support)):
            for b in range(a + 1, len(support)):
                i, j = support[a], support[b]
                if i // 2 == j // 2:
                    acc ^= 1
        return acc

    def arf(self):
        acc = 0
        for i in range(self.g):
            acc ^= self.basis_values[2 * i] & self.basis_values[2 * i + 1]
        return acc

    def arf_by_majority(self):
        """Arf via the zero-count signature, independent of any basis."""
        zeros = 0
        for u in product((0, 1), repeat=2 * self.g):
            if self.value(u) == 0:
                zeros += 1
        half = 1 << (2 * self.g - 1)
        bump = 1 << (self.g - 1)
        if zeros == half + bump:
            return 0
        if zeros == half - bump:
            return 1
        raise VerificationError("zero count %d is not a refinement signature" % zeros)


def all_quad_forms(g: int):
    return [QuadFormGF2(g, vals) for vals in product((0, 1), repeat=2 * g)]


def quad_form_counts(g: int):
    """(odd, even) = (#Arf 1, #Arf 0) over all refinements."""
    odd = sum(q.arf() for q in all_quad_forms(g))
    return odd, (1 << (2 * g)) - odd


def arf_model_crosscheck(g: int, theta_parities=None) -> bool:
    """Certifies that the subset model and the quadratic-form model
    agree on (odd, even) counts, and optionally that an externally
    computed parity table (reduced subset -> bit) matches class by
    class.  Raises on any mismatch."""
    if g > 4:
        raise ValueError("crosscheck enumeration supported for g <= 4")
    subset_counts = parity_counts(g)
    quad_counts = quad_form_counts(g)
    closed = (
        (1 << (g - 1)) * ((1 << g) - 1),
        (1 << (g - 1)) * ((1 << g) + 1),
    )
    if subset_counts != quad_counts or subset_counts != closed:
        raise VerificationError(
            "parity counts disagree: subsets %s, forms %s, closed %s"
            % (subset_counts, quad_counts, closed)
        )
    if theta_parities is not None:
        table = {frozenset(k): int(v) % 2 for k, v in theta_parities.items()}
        chars = enumerate_chars(g)
        if set(table) != {c.members for c in chars}:
            raise VerificationError("parity table keys are not the reduced classes")
        for c in chars:
            if table[c.members] != c.parity_bit:
                raise VerificationError(
                    "parity mismatch on class %s" % sorted(c.members)
                )
    return True


def w2_parity_shift(rank: int, w2: int, base_parity: int) -> int:
    """Predicted mod-2 section-count parity for an odd-rank twist: the
    base parity shifted by the obstruction class bit."""
    if rank % 2 == 0:
        raise ValueError("rank must be odd")
    return (int(base_parity) + int(w2)) % 2

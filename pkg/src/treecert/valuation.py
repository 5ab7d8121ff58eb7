"""The degree valuation on GF(p)(x) and exact Bruhat-Tits tree computations.

The valuation of a nonzero f = num/den is deg(den) - deg(num), i.e. the
order of vanishing "at zero" in the 1/x coordinate; v(0) = INF.  Substituting
1/x for x converts everything to the valuation at infinity, so only this one
valuation is implemented.

Tree vertices are homothety classes of rank-2 lattices over the valuation
ring O = {f : v(f) >= 0}, with uniformiser pi = 1/x.  A class is stored by
its unique Hermite-form representative

    [[pi^alpha, gamma], [0, pi^beta]]

scaled so the smaller elementary-divisor valuation is 0 (the lattice sits
inside O^2 but not inside pi*O^2) and with gamma a canonical residue mod
pi^alpha (a polynomial in pi with GF(p) digits).  Equal classes therefore
compare equal entrywise, and canonicalisation is idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import GF, Poly, RationalFunction as RF
from .matrix2 import Matrix2, SingularMatrix

INF = float("inf")


class NotUnimodular(ValueError):
    pass


class RadiusTooLarge(ValueError):
    pass


def val(f: RF) -> float:
    """deg(denominator) - deg(numerator); INF for zero."""
    if f.is_zero():
        return INF
    return f.den.degree - f.num.degree


def residue(f: RF) -> int:
    """Image in O/pi = GF(p) of an element with v(f) >= 0.

    For v(f) = 0 this is the ratio of the leading coefficients of
    numerator and denominator; for v(f) > 0 it is 0.
    """
    v = val(f)
    if v < 0:
        raise ValueError("residue of an element with negative valuation")
    if v > 0:
        return 0
    return f.field.div(f.num.leading(), f.den.leading())


def pi(field, n: int = 1) -> RF:
    """pi^n = x^(-n), the uniformiser power."""
    return RF.x(field, -n)


@dataclass(frozen=True)
class Classification:
    kind: str  # "elliptic" | "hyperbolic"
    translation_length: int  # 0 when elliptic

    @property
    def is_hyperbolic(self):
        return self.kind == "hyperbolic"


def classify(m: Matrix2) -> Classification:
    """Elliptic/hyperbolic type of an SL2 element acting on the tree.

    Hyperbolic with translation length -2*v(tr) exactly when v(tr) < 0.
    """
    if not m.det() == m.a.one_like():
        raise NotUnimodular("classification requires det = 1")
    v = val(m.trace())
    if v < 0:
        return Classification("hyperbolic", int(-2 * v))
    return Classification("elliptic", 0)


class LatticeVertex:
    """Homothety class of O-lattices, held by its canonical basis."""

    __slots__ = ("basis", "_key")

    def __init__(self, basis: Matrix2):
        self.basis = basis
        self._key = tuple(
            (e.num.coeffs, e.den.coeffs) for e in basis.entries()
        )

    @property
    def field(self):
        return self.basis.a.field

    def __eq__(self, other):
        return isinstance(other, LatticeVertex) and other._key == self._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"LatticeVertex({self.basis})"


def base_vertex(p: int) -> LatticeVertex:
    field = GF(p)
    one, zero = RF.one(field), RF.zero(field)
    return LatticeVertex(Matrix2(one, zero, zero, one))


def _min_val(m: Matrix2) -> int:
    v = min(val(e) for e in m.entries())
    if v == INF:
        raise SingularMatrix("zero matrix has no lattice")
    return int(v)


def _residue_digits(f: RF, k: int) -> RF:
    """Truncate f (v(f) >= 0) to its first k pi-adic digits."""
    field = f.field
    out = RF.zero(field)
    x = RF.x(field)
    cur = f
    for j in range(k):
        if cur.is_zero():
            break
        if val(cur) > j:
            continue
        d = residue(cur * RF.x(field, j))
        if d:
            term = RF.const(field, d) * pi(field, j)
            out = out + term
            cur = cur - term
    return out


def canonicalize(basis: Matrix2) -> LatticeVertex:
    """Canonical representative of the homothety class spanned by `basis`.

    Idempotent; two bases give equal vertices exactly when they differ by
    a GL2(O) column change and a scalar.
    """
    det = basis.det()
    if det.is_zero():
        raise SingularMatrix("lattice basis must be invertible")
    field = basis.a.field
    # scale so the smaller elementary-divisor valuation is 0
    e1 = _min_val(basis)
    if e1 != 0:
        s = RF.x(field, e1)  # multiply by x^e1 = pi^(-e1)... v(x^e1) = -e1
        basis = basis.map_entries(lambda e: e * s)
    # column reduction over O to upper-triangular form
    a, b, c, d = basis.a, basis.b, basis.c, basis.d
    if val(c) < val(d):
        a, b = b, a
        c, d = d, c
    if not c.is_zero():
        f = c / d  # v >= 0
        a = a - f * b
        c = c - f * d  # exact zero
    # normalise columns by units: a = pi^alpha, d = pi^beta
    alpha = int(val(a))
    a = pi(field, alpha)
    beta = int(val(d))
    ud = d * RF.x(field, beta)  # unit part of d; rescaling col2 divides b by it
    d = pi(field, beta)
    b = b / ud
    # reduce the off-diagonal entry modulo pi^alpha * O
    b = _residue_digits(b, alpha)
    zero = RF.zero(field)
    return LatticeVertex(Matrix2(a, b, zero, d))


def act(g: Matrix2, v: LatticeVertex) -> LatticeVertex:
    """Left action of SL2 on lattice classes."""
    if not g.det() == g.a.one_like():
        raise NotUnimodular("tree action requires det = 1")
    return canonicalize(g * v.basis)


def distance(v1: LatticeVertex, v2: LatticeVertex) -> int:
    """|e1 - e2| for the elementary-divisor valuations of basis1^-1 basis2."""
    m = v1.basis.inv() * v2.basis
    e1 = _min_val(m)
    e2 = int(val(m.det())) - e1
    return abs(e2 - e1)


def neighbors(v: LatticeVertex, p: int) -> set[LatticeVertex]:
    """The p+1 classes adjacent to v (index-p sublattices of its lattice)."""
    field = v.field
    if field.p != p:
        raise ValueError("vertex/prime mismatch")
    one, zero = RF.one(field), RF.zero(field)
    piv = pi(field)
    out = set()
    # lines in the residue plane: (1 : r) for r in GF(p), and (0 : 1)
    for r in range(p):
        s = Matrix2(one, zero, RF.const(field, r), piv)
        out.add(canonicalize(v.basis * s))
    out.add(canonicalize(v.basis * Matrix2(piv, zero, zero, one)))
    return out


def ball(center: LatticeVertex, radius: int, p: int) -> list[LatticeVertex]:
    """All vertices within the given radius (breadth-first)."""
    seen = {center}
    frontier = [center]
    for _ in range(radius):
        nxt = []
        for u in frontier:
            for w in neighbors(u, p):
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return list(seen)


def min_displacement_on_ball(g: Matrix2, center: LatticeVertex, radius: int) -> int:
    """min over the ball of d(u, g(u)): an enumerative cross-check of
    the -2*v(tr) translation-length formula."""
    if radius > 8:
        raise RadiusTooLarge("ball search limited to radius 8")
    if not g.det() == g.a.one_like():
        raise NotUnimodular("displacement requires det = 1")
    p = center.field.p
    best = None
    for u in ball(center, radius, p):
        d = distance(u, act(g, u))
        if best is None or d < best:
            best = d
            if best == 0:
                break
    return best

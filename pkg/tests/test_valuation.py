import random

import pytest

from treecert.algebra import GF, Poly, RationalFunction as RF, parse_rational
from treecert.matrix2 import Matrix2, parse_matrix
from treecert.surface import build_AB, standard_params
from treecert.valuation import (
    INF,
    NotUnimodular,
    RadiusTooLarge,
    act,
    ball,
    base_vertex,
    canonicalize,
    classify,
    distance,
    min_displacement_on_ball,
    neighbors,
    residue,
    val,
)


def rand_rf(rng, field, maxdeg=4, nonzero=False):
    while True:
        num = Poly(field, [rng.randrange(field.p) for _ in range(rng.randint(0, maxdeg) + 1)])
        den = Poly(field, [rng.randrange(field.p) for _ in range(rng.randint(0, maxdeg) + 1)])
        if den.is_zero():
            continue
        f = RF(num, den)
        if not (nonzero and f.is_zero()):
            return f


def rand_sl2(rng, field, length=None):
    one, zero = RF.one(field), RF.zero(field)
    out = Matrix2(one, zero, zero, one)
    for _ in range(length or rng.randint(1, 4)):
        t = RF.x(field, rng.randint(-2, 2)) * RF.const(field, rng.randrange(1, field.p))
        if rng.random() < 0.5:
            out = out * Matrix2(one, t, zero, one)
        else:
            out = out * Matrix2(one, zero, t, one)
    return out


def test_val_examples():
    assert val(RF.zero(GF(5))) == INF
    assert val(parse_rational("x", 5)) == -1
    assert val(parse_rational("1/x", 5)) == 1
    assert val(parse_rational("3", 5)) == 0
    assert val(parse_rational("(x^2+1)/x^3", 5)) == 1


@pytest.mark.parametrize("p", [2, 3, 101])
def test_valuation_axioms(p):
    rng = random.Random(p)
    field = GF(p)
    for _ in range(80):
        f = rand_rf(rng, field, nonzero=True)
        g = rand_rf(rng, field, nonzero=True)
        assert val(f * g) == val(f) + val(g)
        s = f + g
        assert val(s) >= min(val(f), val(g))
        if val(f) != val(g):
            assert val(s) == min(val(f), val(g))


def test_residue():
    assert residue(parse_rational("(2*x+1)/(x+3)", 5)) == 2
    assert residue(parse_rational("1/x", 5)) == 0
    with pytest.raises(ValueError):
        residue(parse_rational("x", 5))


def test_classify_examples():
    ident = parse_matrix("1;0;0;1", 5)
    assert classify(ident).kind == "elliptic"
    diag = parse_matrix("x;0;0;1/x", 5)
    c = classify(diag)
    assert c.is_hyperbolic and c.translation_length == 2
    A, _ = build_AB(standard_params(7))
    assert classify(A) == classify(A) and classify(A).translation_length == 2
    with pytest.raises(NotUnimodular):
        classify(parse_matrix("x;0;0;x", 5))


def test_classify_conjugation_invariant():
    rng = random.Random(4)
    field = GF(5)
    A, B = build_AB(standard_params(5))
    for g in (A, B, A * B):
        for _ in range(8):
            h = rand_sl2(rng, field)
            assert classify(h * g * h.inv()) == classify(g)


def test_canonicalize_invariances():
    rng = random.Random(5)
    field = GF(5)
    for _ in range(25):
        m = rand_sl2(rng, field, length=3)
        v = canonicalize(m)
        assert canonicalize(v.basis) == v
        lam = rand_rf(rng, field, nonzero=True)
        assert canonicalize(m.map_entries(lambda e: e * lam)) == v
        # right multiplication by a random valuation-ring-invertible matrix
        one, zero = RF.one(field), RF.zero(field)
        t = rand_rf(rng, field)
        if val(t) < 0:
            t = t.inv()
        unit = Matrix2(one, t, zero, one) * Matrix2(one, zero, RF.const(field, rng.randrange(field.p)), one)
        assert val(unit.det()) == 0
        assert canonicalize(m * unit) == v
    assert canonicalize(Matrix2(RF.one(field), RF.zero(field), RF.zero(field), RF.one(field))) == base_vertex(5)


def test_act_and_distance():
    field = GF(5)
    base = base_vertex(5)
    diag = parse_matrix("x;0;0;1/x", 5)
    assert act(parse_matrix("1;0;0;1", 5), base) == base
    moved = act(diag, base)
    assert distance(base, moved) == 2
    assert distance(moved, base) == 2
    assert distance(base, base) == 0
    assert act(diag.inv(), moved) == base
    rng = random.Random(6)
    for _ in range(20):
        g, h = rand_sl2(rng, field), rand_sl2(rng, field)
        v = canonicalize(rand_sl2(rng, field, length=2))
        assert act(g * h, v) == act(g, act(h, v))
        w = canonicalize(rand_sl2(rng, field, length=2))
        assert distance(v, w) == distance(w, v)
        assert (distance(v, w) == 0) == (v == w)


@pytest.mark.parametrize("p,count", [(2, 3), (5, 6)])
def test_neighbors(p, count):
    base = base_vertex(p)
    nb = neighbors(base, p)
    assert len(nb) == count
    assert all(distance(base, u) == 1 for u in nb)
    assert all(base in neighbors(u, p) for u in nb)
    far = act(parse_matrix("x;0;0;1/x", p), base)
    ring = neighbors(far, p)
    assert len(ring) == count


def test_ball_sizes():
    base = base_vertex(2)
    assert len(ball(base, 0, 2)) == 1
    assert len(ball(base, 1, 2)) == 4
    assert len(ball(base, 2, 2)) == 4 + 6


def test_min_displacement():
    base = base_vertex(5)
    ident = parse_matrix("1;0;0;1", 5)
    assert min_displacement_on_ball(ident, base, 1) == 0
    A, _ = build_AB(standard_params(5))
    assert min_displacement_on_ball(A, base, 4) == 2
    elliptic = parse_matrix("0;-1;1;0", 5)
    assert min_displacement_on_ball(elliptic, base, 2) == 0
    with pytest.raises(RadiusTooLarge):
        min_displacement_on_ball(ident, base, 9)


def test_translation_length_additivity():
    # l(g^n) = n * l(g) along the axis
    A, B = build_AB(standard_params(5))
    for g in (A, B, A * B):
        l1 = classify(g).translation_length
        gn = g
        for n in range(2, 5):
            gn = gn * g
            assert classify(gn).translation_length == n * l1


def test_displacement_never_below_formula():
    # displacement at any vertex is at least the translation length
    base = base_vertex(5)
    A, B = build_AB(standard_params(5))
    for g in (A, B):
        l = classify(g).translation_length
        for u in ball(base, 2, 5):
            assert distance(u, act(g, u)) >= l

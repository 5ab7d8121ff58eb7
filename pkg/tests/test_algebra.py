import random

import pytest
from hypothesis import given, settings, strategies as st

from treecert.algebra import (
    GF,
    DivisionByZero,
    Laurent,
    NotAUnit,
    NotPrime,
    ParseError,
    Poly,
    RationalFunction as RF,
    ZeroDenominator,
    is_prime,
    parse_rational,
    poly_gcd,
    rf_normalize,
)

PRIMES = [2, 3, 101]


def rand_poly(rng, field, maxdeg=4, nonzero=False):
    while True:
        f = Poly(field, [rng.randrange(field.p) for _ in range(rng.randint(0, maxdeg) + 1)])
        if not (nonzero and f.is_zero()):
            return f


def rand_rf(rng, field, maxdeg=4, nonzero=False):
    while True:
        f = RF(rand_poly(rng, field, maxdeg), rand_poly(rng, field, maxdeg, nonzero=True))
        if not (nonzero and f.is_zero()):
            return f


def test_prime_check():
    assert is_prime(2) and is_prime(3) and is_prime(101) and is_prime(2**31 - 1)
    assert not is_prime(1) and not is_prime(4) and not is_prime(91)
    with pytest.raises(NotPrime):
        GF(6)
    with pytest.raises(NotPrime):
        GF(2**31 + 11)


def test_gcd_examples():
    F3 = GF(3)
    f = Poly(F3, [-1, 0, 1])  # x^2 - 1
    g = Poly(F3, [1, 2, 1])  # (x+1)^2
    assert poly_gcd(f, g) == Poly(F3, [1, 1])
    # gcd with zero is the monic scaling of the other argument
    h = Poly(F3, [2, 2])
    assert poly_gcd(h, Poly.zero(F3)) == Poly(F3, [1, 1])
    assert poly_gcd(Poly.zero(F3), Poly.zero(F3)).is_zero()
    # coprime
    assert poly_gcd(Poly(F3, [0, 1]), Poly(F3, [1, 1])) == Poly.one(F3)


def test_normalize_examples():
    f = parse_rational("(2*x+2)/4", 5)
    assert str(f) == "3*x+3"
    g = parse_rational("(x^2-1)/(x-1)", 5)
    assert str(g) == "x+1"
    h = parse_rational("x^3+1", 7)
    assert rf_normalize(h.num, Poly.one(GF(7))) == h
    with pytest.raises(ZeroDenominator):
        rf_normalize(Poly.one(GF(5)), Poly.zero(GF(5)))


def test_rf_arith_examples():
    a = parse_rational("1/x", 7) + parse_rational("x+1", 7)
    assert a == parse_rational("(x^2+x+1)/x", 7)
    b = parse_rational("(x+3)/(x^2+1)", 7)
    assert b * b.inv() == RF.one(GF(7))
    assert (b + (-b)).is_zero()
    with pytest.raises(DivisionByZero):
        b / RF.zero(GF(7))


@pytest.mark.parametrize("p", PRIMES)
def test_field_axioms_randomized(p):
    rng = random.Random(p)
    field = GF(p)
    for _ in range(60):
        a, b, c = (rand_rf(rng, field) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        if not a.is_zero():
            assert a * a.inv() == RF.one(field)
        assert (a - a).is_zero()


@pytest.mark.parametrize("p", PRIMES)
def test_canonical_form_uniqueness(p):
    rng = random.Random(p + 17)
    field = GF(p)
    for _ in range(60):
        a = rand_poly(rng, field)
        b = rand_poly(rng, field, nonzero=True)
        c = rand_poly(rng, field, nonzero=True)
        assert rf_normalize(a * c, b * c) == rf_normalize(a, b)


def test_parse_print_round_trip():
    rng = random.Random(0)
    for p in PRIMES:
        field = GF(p)
        for _ in range(340):
            f = rand_rf(rng, field, maxdeg=6)
            assert parse_rational(str(f), p) == f


def test_parser_grammar():
    f = parse_rational("(2*x^4+2*x^3-2*x+1)/(x^2*(1-x))", 5)
    assert f.den.leading() == 1
    assert parse_rational("-x", 5) == -RF.x(GF(5))
    assert parse_rational("x^-2", 5) == RF.x(GF(5), -2)
    with pytest.raises(ParseError):
        parse_rational("x +", 5)
    with pytest.raises(ParseError):
        parse_rational("y", 5)
    with pytest.raises(ZeroDenominator):
        parse_rational("1/(x-x)", 5)


@given(st.integers(0, 10**6), st.sampled_from(PRIMES))
@settings(max_examples=60, deadline=None)
def test_poly_divmod_property(seed, p):
    rng = random.Random(seed)
    field = GF(p)
    a = rand_poly(rng, field, maxdeg=8)
    b = rand_poly(rng, field, maxdeg=4, nonzero=True)
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


def test_laurent_arith():
    field = GF(5)
    y = Laurent.y(field)
    yinv = Laurent.y(field, -1)
    assert y * yinv == Laurent.one(field)
    alpha = parse_rational("x+2", 5)
    beta = parse_rational("3/x", 5)
    ay_b = Laurent(field, {1: alpha, 0: beta})
    assert ay_b * y == Laurent(field, {2: alpha, 1: beta})
    with pytest.raises(NotAUnit):
        ay_b.inv()
    # leading exponent of a product adds (integral domain)
    rng = random.Random(3)
    for _ in range(40):
        t1 = {j: rand_rf(rng, field, nonzero=True) for j in rng.sample(range(-3, 4), rng.randint(1, 3))}
        t2 = {j: rand_rf(rng, field, nonzero=True) for j in rng.sample(range(-3, 4), rng.randint(1, 3))}
        u, v = Laurent(field, t1), Laurent(field, t2)
        assert (u * v).leading()[0] == u.leading()[0] + v.leading()[0]


def test_substitute_y():
    field = GF(5)
    f = Laurent(field, {1: RF.one(field), 0: parse_rational("1/x", 5)})
    assert f.substitute_power(2) == parse_rational("(x^3+1)/x", 5)
    assert f.rescale(0) == f
    single = Laurent(field, {3: parse_rational("x+1", 5)})
    assert single.rescale(2) == Laurent(field, {3: parse_rational("(x+1)*x^6", 5)})

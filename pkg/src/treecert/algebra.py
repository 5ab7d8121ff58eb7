"""Exact arithmetic over GF(p), GF(p)[x], the rational function field GF(p)(x),
and Laurent polynomials in y with coefficients in GF(p)(x).

Representation conventions:
  * GF(p) elements are ints in [0, p); p is a prime below 2^31.
  * Polynomials are coefficient tuples indexed by degree with no trailing
    zeros; () is the zero polynomial (degree -inf).
  * Rational functions are kept reduced with a monic denominator, so each
    field element has exactly one representation; zero is 0/1.
  * Laurent elements are maps {y-exponent: nonzero rational coefficient}.

All values are immutable; every operation returns a fresh value, so anything
here can be shared freely between threads or workers.
"""

from __future__ import annotations

from functools import lru_cache

from . import _kernels as K

NEG_INF = float("-inf")


class ZeroDenominator(ZeroDivisionError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


class NotAUnit(ValueError):
    pass


class NotPrime(ValueError):
    pass


class ParseError(ValueError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check (n < 2^31)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=None)
def GF(p: int) -> "PrimeField":
    return PrimeField(p)


class PrimeField:
    """The field GF(p); elements are plain ints in [0, p).

    Construct through GF(p) so equal moduli share one instance.
    """

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or not 2 <= p < 2**31:
            raise NotPrime(f"modulus must be an int in [2, 2^31): {p!r}")
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of 0 in GF(p)")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))


class Poly:
    """Dense univariate polynomial over GF(p)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: PrimeField, coeffs=()):
        self.field = field
        p = field.p
        c = [int(x) % p for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def const(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def x(cls, field, n=1):
        """The monomial x^n."""
        return cls(field, (0,) * n + (1,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def monic(self):
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        s = self.field.inv(self.coeffs[-1])
        return Poly(self.field, K.poly_scale(list(self.coeffs), s, self.field.p))

    def _check(self, other):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.field.p != self.field.p:
            raise ValueError("mixed moduli")

    def __add__(self, other):
        self._check(other)
        return Poly(self.field, K.poly_add(list(self.coeffs), list(other.coeffs), self.field.p))

    def __sub__(self, other):
        self._check(other)
        return Poly(self.field, K.poly_sub(list(self.coeffs), list(other.coeffs), self.field.p))

    def __neg__(self):
        return Poly(self.field, K.poly_neg(list(self.coeffs), self.field.p))

    def __mul__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        # monomial shift fast path: substitutions produce many x^n factors
        if len(a) > 1 and a[-1] == 1 and not any(a[:-1]):
            return Poly(self.field, K.poly_shift(list(b), len(a) - 1))
        if len(b) > 1 and b[-1] == 1 and not any(b[:-1]):
            return Poly(self.field, K.poly_shift(list(a), len(b) - 1))
        return Poly(self.field, K.poly_mul(list(a), list(b), self.field.p))

    def __divmod__(self, other):
        self._check(other)
        q, r = K.poly_divmod(list(self.coeffs), list(other.coeffs), self.field.p)
        return Poly(self.field, q), Poly(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        acc, base = Poly.one(self.field), self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and other.field.p == self.field.p
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, self.coeffs))

    def __call__(self, x):
        return K.poly_eval(list(self.coeffs), x % self.field.p, self.field.p)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self.field.p}, {self})"


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd in GF(p)[x]; gcd(0, 0) = 0."""
    if f.field.p != g.field.p:
        raise ValueError("mixed moduli")
    return Poly(f.field, K.poly_gcd(list(f.coeffs), list(g.coeffs), f.field.p))


class RationalFunction:
    """Element of GF(p)(x), stored reduced with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDenominator("denominator is zero")
        p = num.field.p
        if den.field.p != p:
            raise ValueError("mixed moduli")
        if num.is_zero():
            self.num = num
            self.den = Poly.one(num.field)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num // g
            den = den // g
        lc = den.leading()
        if lc != 1:
            s = den.field.inv(lc)
            num = Poly(num.field, K.poly_scale(list(num.coeffs), s, p))
            den = Poly(den.field, K.poly_scale(list(den.coeffs), s, p))
        self.num = num
        self.den = den

    @classmethod
    def zero(cls, field):
        return cls(Poly.zero(field), Poly.one(field))

    @classmethod
    def one(cls, field):
        return cls(Poly.one(field), Poly.one(field))

    @classmethod
    def const(cls, field, c):
        return cls(Poly.const(field, c), Poly.one(field))

    @classmethod
    def x(cls, field, n=1):
        """x^n for any integer n (negative exponents allowed)."""
        if n >= 0:
            return cls(Poly.x(field, n), Poly.one(field))
        return cls(Poly.one(field), Poly.x(field, -n))

    @classmethod
    def from_poly(cls, f: Poly):
        return cls(f, Poly.one(f.field))

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def one_like(self):
        return RationalFunction.one(self.field)

    def zero_like(self):
        return RationalFunction.zero(self.field)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.field.p != self.field.p:
                raise ValueError("mixed moduli")
            return other
        if isinstance(other, Poly):
            return RationalFunction.from_poly(other)
        if isinstance(other, int):
            return RationalFunction.const(self.field, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise DivisionByZero("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        acc, base = RationalFunction.one(self.field), self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __eq__(self, other):
        if isinstance(other, int):
            other = RationalFunction.const(self.field, other)
        return (
            isinstance(other, RationalFunction)
            and other.field.p == self.field.p
            and other.num.coeffs == self.num.coeffs
            and other.den.coeffs == self.den.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, self.num.coeffs, self.den.coeffs))

    def __str__(self):
        return format_rational(self)

    def __repr__(self):
        return f"RationalFunction({self.field.p}, {self})"


def rf_normalize(num: Poly, den: Poly) -> RationalFunction:
    """Canonical form of num/den (reduced, monic denominator)."""
    return RationalFunction(num, den)


class Laurent:
    """Laurent polynomial in y with coefficients in GF(p)(x).

    terms maps the y-exponent to a nonzero RationalFunction; {} is zero.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field: PrimeField, terms=None):
        self.field = field
        t = {}
        for j, c in (terms or {}).items():
            if isinstance(c, int):
                c = RationalFunction.const(field, c)
            if not c.is_zero():
                t[int(j)] = c
        self.terms = t

    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def one(cls, field):
        return cls(field, {0: RationalFunction.one(field)})

    @classmethod
    def y(cls, field, n=1):
        return cls(field, {n: RationalFunction.one(field)})

    @classmethod
    def from_rational(cls, f: RationalFunction):
        return cls(f.field, {0: f})

    def is_zero(self):
        return not self.terms

    def one_like(self):
        return Laurent.one(self.field)

    def zero_like(self):
        return Laurent.zero(self.field)

    def leading(self):
        """(top y-exponent, its coefficient) of a nonzero element."""
        if not self.terms:
            raise ValueError("zero Laurent element has no leading term")
        j = max(self.terms)
        return j, self.terms[j]

    def constant_coefficient(self):
        return self.terms.get(0, RationalFunction.zero(self.field))

    def _coerce(self, other):
        if isinstance(other, Laurent):
            if other.field.p != self.field.p:
                raise ValueError("mixed moduli")
            return other
        if isinstance(other, RationalFunction):
            return Laurent.from_rational(other)
        if isinstance(other, int):
            return Laurent(self.field, {0: other})
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = dict(self.terms)
        for j, c in o.terms.items():
            s = t.get(j)
            t[j] = c if s is None else s + c
        return Laurent(self.field, t)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __neg__(self):
        return Laurent(self.field, {j: -c for j, c in self.terms.items()})

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = {}
        for i, a in self.terms.items():
            for j, b in o.terms.items():
                s = t.get(i + j)
                ab = a * b
                t[i + j] = ab if s is None else s + ab
        return Laurent(self.field, t)

    __rmul__ = __mul__

    def is_unit_monomial(self):
        return len(self.terms) == 1

    def inv(self):
        """Inverse of a monomial unit a*y^j; anything else raises NotAUnit."""
        if not self.is_unit_monomial():
            raise NotAUnit("only monomials a*y^j are invertible in the Laurent ring")
        (j, c), = self.terms.items()
        return Laurent(self.field, {-j: c.inv()})

    def __eq__(self, other):
        if isinstance(other, (int, RationalFunction)):
            o = self._coerce(other)
            return self == o
        return (
            isinstance(other, Laurent)
            and other.field.p == self.field.p
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.field.p, tuple(sorted((j, hash(c)) for j, c in self.terms.items()))))

    def substitute_power(self, n: int) -> RationalFunction:
        """Substitute y -> x^n; collapses to a rational function."""
        out = RationalFunction.zero(self.field)
        for j, c in self.terms.items():
            out = out + c * RationalFunction.x(self.field, n * j)
        return out

    def rescale(self, n: int) -> "Laurent":
        """Substitute y -> y*x^n: the y^j coefficient picks up x^(n*j)."""
        return Laurent(
            self.field,
            {j: c * RationalFunction.x(self.field, n * j) for j, c in self.terms.items()},
        )

    def __str__(self):
        return format_laurent(self)

    def __repr__(self):
        return f"Laurent({self.field.p}, {self})"


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def format_poly(f: Poly) -> str:
    """Decreasing-degree order, coefficients in [0, p), e.g. 2*x^4+3*x+1."""
    if f.is_zero():
        return "0"
    parts = []
    for d in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[d]
        if c == 0:
            continue
        if d == 0:
            parts.append(str(c))
        elif d == 1:
            parts.append("x" if c == 1 else f"{c}*x")
        else:
            parts.append(f"x^{d}" if c == 1 else f"{c}*x^{d}")
    return "+".join(parts)


def format_rational(f: RationalFunction) -> str:
    num = format_poly(f.num)
    if f.den.degree <= 0:
        return num
    return f"({num})/({format_poly(f.den)})"


def format_laurent(a: Laurent) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for j in sorted(a.terms, reverse=True):
        c = format_rational(a.terms[j])
        if j == 0:
            parts.append(c)
        else:
            ypow = "y" if j == 1 else f"y^{j}"
            parts.append(ypow if c == "1" else f"({c})*{ypow}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------
# Grammar (whitespace ignored):
#   expr   := term (('+'|'-') term)*
#   term   := unary (('*'|'/') unary)*
#   unary  := '-' unary | power
#   power  := atom ('^' integer)?
#   atom   := integer | 'x' | '(' expr ')'

class _Parser:
    def __init__(self, text: str, field: PrimeField):
        self.text = text
        self.pos = 0
        self.field = field

    def error(self, msg):
        raise ParseError(f"{msg} at position {self.pos} in {self.text!r}")

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> RationalFunction:
        v = self.expr()
        if self.peek():
            self.error("trailing input")
        return v

    def expr(self):
        v = self.term()
        while True:
            c = self.peek()
            if c == "+":
                self.pos += 1
                v = v + self.term()
            elif c == "-":
                self.pos += 1
                v = v - self.term()
            else:
                return v

    def term(self):
        v = self.unary()
        while True:
            c = self.peek()
            if c == "*":
                self.pos += 1
                v = v * self.unary()
            elif c == "/":
                self.pos += 1
                d = self.unary()
                if d.is_zero():
                    raise ZeroDenominator(f"division by zero in {self.text!r}")
                v = v / d
            else:
                return v

    def unary(self):
        if self.peek() == "-":
            self.pos += 1
            return -self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == "^":
            self.pos += 1
            n = self.integer()
            v = v**n
        return v

    def atom(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            v = self.expr()
            self.take(")")
            return v
        if c == "x":
            self.pos += 1
            return RationalFunction.x(self.field)
        if c.isdigit():
            return RationalFunction.const(self.field, self.integer())
        self.error("expected a number, 'x' or '('")

    def integer(self):
        c = self.peek()
        sign = 1
        if c == "-":
            sign = -1
            self.pos += 1
            c = self.peek()
        if not c.isdigit():
            self.error("expected an integer")
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return sign * int(self.text[start : self.pos])


def parse_rational(text: str, p: int) -> RationalFunction:
    """Parse the rational-function grammar over GF(p)."""
    return _Parser(text, GF(p)).parse()

"""2x2 matrices over an abstract coefficient field, plus free-group words.

Matrix entries only need +, -, *, unary -, == and the one_like/zero_like
hooks that the algebra classes provide, so the same code runs over GF(p)(x)
and over Laurent-in-y entries.

Words are plain strings: a lowercase letter is a generator, the matching
uppercase letter its inverse ("aA" reduces to the empty word).
"""

from __future__ import annotations


class SingularMatrix(ValueError):
    pass


class UnboundLetter(KeyError):
    pass


class Matrix2:
    """Row-major 2x2 matrix: [[a, b], [c, d]]."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    @classmethod
    def identity_like(cls, m: "Matrix2") -> "Matrix2":
        one = m.a.one_like()
        zero = m.a.zero_like()
        return cls(one, zero, zero, one)

    @classmethod
    def diagonal(cls, a, d):
        zero = a.zero_like()
        return cls(a, zero, zero, d)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other):
        if not isinstance(other, Matrix2):
            return NotImplemented
        return Matrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self):
        return Matrix2(-self.a, -self.b, -self.c, -self.d)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix2)
            and self.a == other.a
            and self.b == other.b
            and self.c == other.c
            and self.d == other.d
        )

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def adjugate(self):
        return Matrix2(self.d, -self.b, -self.c, self.a)

    def inv(self):
        """Inverse via adjugate/det.

        Entries must come from a field, or det must be a unit (as when
        det == 1, the only case used with Laurent entries).
        """
        det = self.det()
        if det == det.zero_like():
            raise SingularMatrix("matrix is singular")
        adj = self.adjugate()
        if det == det.one_like():
            return adj
        dinv = det.inv()
        return Matrix2(adj.a * dinv, adj.b * dinv, adj.c * dinv, adj.d * dinv)

    def is_identity(self):
        return self == Matrix2.identity_like(self)

    def is_diagonal(self):
        zero = self.a.zero_like()
        return self.b == zero and self.c == zero

    def map_entries(self, fn):
        return Matrix2(fn(self.a), fn(self.b), fn(self.c), fn(self.d))

    def __str__(self):
        return f"{self.a};{self.b};{self.c};{self.d}"

    def __repr__(self):
        return f"Matrix2({self.a}, {self.b}, {self.c}, {self.d})"


def commutator(m1: Matrix2, m2: Matrix2) -> Matrix2:
    return m1 * m2 * m1.inv() * m2.inv()


def conjugate(t: Matrix2, m: Matrix2) -> Matrix2:
    return t * m * t.inv()


# ---------------------------------------------------------------------------
# free-group words
# ---------------------------------------------------------------------------

def invert_letter(ch: str) -> str:
    return ch.lower() if ch.isupper() else ch.upper()


def invert_word(word: str) -> str:
    return "".join(invert_letter(ch) for ch in reversed(word))


def free_reduce(word: str) -> str:
    """Cancel adjacent inverse pairs until none remain (stack scan)."""
    out = []
    for ch in word:
        if out and out[-1] == invert_letter(ch) and out[-1] != ch:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def is_reduced(word: str) -> bool:
    return free_reduce(word) == word


def validate_word(word: str, alphabet: str) -> None:
    """Check each letter (either case) belongs to the generator alphabet."""
    allowed = set(alphabet) | {ch.upper() for ch in alphabet}
    for ch in word:
        if ch not in allowed:
            raise UnboundLetter(f"letter {ch!r} not in alphabet {alphabet!r}")


def reduced_words(alphabet: str, maxlen: int):
    """Yield every nonempty freely reduced word of length <= maxlen."""
    letters = list(alphabet) + [ch.upper() for ch in alphabet]
    stack = [""]
    while stack:
        w = stack.pop()
        for ch in letters:
            if w and w[-1] == invert_letter(ch) and w[-1] != ch:
                continue
            nxt = w + ch
            yield nxt
            if len(nxt) < maxlen:
                stack.append(nxt)


def word_eval(word: str, assignment: dict[str, Matrix2]) -> Matrix2:
    """Product of the images of the letters, in order; "" gives the identity.

    Inverses of the assigned matrices are computed once per call since
    enumeration dominates the cost of everything built on this.
    """
    if not assignment:
        raise UnboundLetter("empty assignment")
    table = dict(assignment)
    some = next(iter(assignment.values()))
    out = Matrix2.identity_like(some)
    for ch in word:
        m = table.get(ch)
        if m is None:
            low = ch.lower()
            if ch.isupper() and low in assignment:
                m = table[ch] = assignment[low].inv()
            else:
                raise UnboundLetter(f"no matrix assigned to letter {ch!r}")
        out = out * m
    return out


def parse_matrix(text: str, p: int) -> Matrix2:
    """Four ';'-separated entries in the rational-function grammar."""
    from .algebra import parse_rational, ParseError

    parts = text.split(";")
    if len(parts) != 4:
        raise ParseError(f"expected 4 ';'-separated entries, got {len(parts)}")
    a, b, c, d = (parse_rational(s, p) for s in parts)
    return Matrix2(a, b, c, d)

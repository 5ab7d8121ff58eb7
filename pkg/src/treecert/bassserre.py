"""Word-level Bass-Serre certificates for two groups:

  * F2-by-Z as the HNN extension  < s, x, y | [x, y], s x s^-1 = y >,
    acting on its Bass-Serre tree, on a line through the exponent-sum
    homomorphism theta (s -> 0, x, y -> 1), and on a line through the
    infinite-dihedral homomorphism phi (s -> reflection, x -> +1, y -> -1).
    Every nontrivial element is hyperbolic in at least one of the three.

  * the genus-2 surface group as the amalgam  F(a,b) *_<[a,b] = [d,c]> F(c,d),
    acting on the amalgam tree and, through a, d -> x and b, c -> y, on the
    Cayley tree of F(x,y).  Every nontrivial element is hyperbolic in one
    of the two.

Both groups get canonical normal forms (Britton / amalgam normal form with
fixed coset representatives), which decide the word problem and dedupe the
exhaustive certificates below.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrix2 import free_reduce, invert_word, reduced_words, validate_word

HNN_ALPHABET = "sxy"
AMALGAM_ALPHABET = "abcd"


# ---------------------------------------------------------------------------
# the HNN group < s, x, y | [x, y], s x s^-1 = y >
# ---------------------------------------------------------------------------
# Normal form items alternate Z^2 syllables (m, n) = x^m y^n and stable
# letters +-1.  Pushing the movable part of each syllable rightward
# (y^n s = s x^n and x^m S = S y^m) makes the syllable before each s a pure
# x-power and before each S a pure y-power; pinches then surface as literal
# s S / S s cancellations.

def britton_reduce(word: str):
    """Canonical pinch-free form: [(m0, n0), e1, (m1, n1), ..., ek, (mk, nk)]
    with e = +1 for s and -1 for S."""
    validate_word(word, HNN_ALPHABET)
    items = [(0, 0)]
    for ch in word:
        if ch in "xXyY":
            m, n = items[-1]
            if ch == "x":
                items[-1] = (m + 1, n)
            elif ch == "X":
                items[-1] = (m - 1, n)
            elif ch == "y":
                items[-1] = (m, n + 1)
            else:
                items[-1] = (m, n - 1)
        elif ch == "s":
            m, n = items.pop()
            # (x^m y^n) s = x^m s x^n
            if items and items[-1] == -1 and m == 0:
                items.pop()  # S s cancels
                pm, pn = items.pop()
                items.append((pm + n, pn))
            else:
                items.append((m, 0))
                items.append(1)
                items.append((n, 0))
        elif ch == "S":
            m, n = items.pop()
            # (x^m y^n) S = y^n S y^m
            if items and items[-1] == 1 and n == 0:
                items.pop()  # s S cancels
                pm, pn = items.pop()
                items.append((pm, pn + m))
            else:
                items.append((0, n))
                items.append(-1)
                items.append((0, m))
        else:
            raise AssertionError(ch)
    return items


def britton_word(items) -> str:
    """Spell a normal form back as a word."""
    out = []
    for it in items:
        if it == 1:
            out.append("s")
        elif it == -1:
            out.append("S")
        else:
            m, n = it
            out.append(("x" * m if m >= 0 else "X" * -m) + ("y" * n if n >= 0 else "Y" * -n))
    return "".join(out)


def hnn_is_identity(word: str) -> bool:
    return britton_reduce(word) == [(0, 0)]


def hnn_s_length(items) -> int:
    return sum(1 for it in items if it in (1, -1))


def _spell_syllable(z) -> str:
    m, n = z
    return ("x" * m if m >= 0 else "X" * -m) + ("y" * n if n >= 0 else "Y" * -n)


def hnn_cyclic_reduce(word: str):
    """Conjugation-minimal normal form: the s-letter count of the result
    is the translation length on the Bass-Serre tree."""
    items = britton_reduce(word)
    while hnn_s_length(items) > 0:
        if items[0] != (0, 0):
            # conjugate the leading syllable away (it merges into the tail)
            conj = _spell_syllable(items[0])
            items = britton_reduce(
                invert_word(conj) + britton_word(items) + conj
            )
            continue
        # items = [(0,0), e1, z1, ..., ek, zk]: pinch across the wrap?
        e1, ek, zk = items[1], items[-2], items[-1]
        pinchable = (ek == 1 and e1 == -1 and zk[1] == 0) or (
            ek == -1 and e1 == 1 and zk[0] == 0
        )
        if not pinchable:
            break
        # rotate the first s-letter and its syllable to the back; the
        # Britton pass then performs the pinch
        head = ("s" if e1 == 1 else "S") + _spell_syllable(items[2])
        rest = britton_word(items[3:])
        items = britton_reduce(rest + head)
    return items


def hnn_translation_data(word: str):
    """("elliptic", 0) or ("hyperbolic", s-count of the cyclic reduction)."""
    items = hnn_cyclic_reduce(word)
    s_count = hnn_s_length(items)
    if s_count == 0:
        return ("elliptic", 0)
    return ("hyperbolic", s_count)


def theta(word: str) -> int:
    """Exponent-sum homomorphism: s -> 0, x -> 1, y -> 1."""
    validate_word(word, HNN_ALPHABET)
    vals = {"s": 0, "S": 0, "x": 1, "X": -1, "y": 1, "Y": -1}
    return sum(vals[ch] for ch in word)


@dataclass(frozen=True)
class DihedralElement:
    """p -> sign*p + offset on the line; offsets live in (1/2)Z, stored
    doubled so everything stays integral."""

    sign: int  # +1 or -1
    double_offset: int

    def compose(self, other: "DihedralElement") -> "DihedralElement":
        # (self o other)(p) = self(other(p))
        return DihedralElement(
            self.sign * other.sign,
            self.sign * other.double_offset + self.double_offset,
        )

    @property
    def is_translation(self):
        return self.sign == 1

    @property
    def is_hyperbolic(self):
        return self.sign == 1 and self.double_offset != 0

    def describe(self) -> str:
        if self.is_translation:
            return f"translation by {self.double_offset // 2 if self.double_offset % 2 == 0 else self.double_offset / 2}"
        return f"reflection about {self.double_offset / 4}"


_PHI = {
    "s": DihedralElement(-1, 0),
    "S": DihedralElement(-1, 0),
    "x": DihedralElement(1, 2),
    "X": DihedralElement(1, -2),
    "y": DihedralElement(1, -2),
    "Y": DihedralElement(1, 2),
}


def phi(word: str) -> DihedralElement:
    """Infinite-dihedral homomorphism: s -> (p -> -p), x -> p+1, y -> p-1."""
    validate_word(word, HNN_ALPHABET)
    out = DihedralElement(1, 0)
    for ch in word:
        out = out.compose(_PHI[ch])
    return out


def three_tree_certificate(maxlen: int):
    """For every nontrivial element spelled by a reduced word of length
    <= maxlen, at least one of the three factor actions is hyperbolic.
    Returns a report dict; a violation would falsify the implementation."""
    if maxlen > 12:
        raise ValueError("certificate enumeration capped at maxlen 12")
    from .surface import CheckReport

    rep = CheckReport()
    seen = set()
    words = 0
    elements = 0
    covered = {"hnn": 0, "theta": 0, "phi": 0}
    violations = []
    for w in reduced_words(HNN_ALPHABET, maxlen):
        words += 1
        items = britton_reduce(w)
        key = tuple(items)
        if key in seen:
            continue
        seen.add(key)
        if items == [(0, 0)]:
            continue
        elements += 1
        kind, _ = hnn_translation_data(w)
        ok = False
        if kind == "hyperbolic":
            covered["hnn"] += 1
            ok = True
        if theta(w) != 0:
            covered["theta"] += 1
            ok = True
        if phi(w).is_hyperbolic:
            covered["phi"] += 1
            ok = True
        if not ok:
            violations.append(w)
    rep.add(
        f"all elements up to length {maxlen} hyperbolic somewhere",
        not violations,
        f"{words} words, {elements} distinct nontrivial elements",
    )
    rep.count("words", words)
    rep.count("elements", elements)
    rep.count("violations", len(violations))
    for name, cnt in covered.items():
        rep.count(f"covered_{name}", cnt)
    return rep


# ---------------------------------------------------------------------------
# the amalgam F(a,b) *_< [a,b] = [d,c] > F(c,d)
# ---------------------------------------------------------------------------

FACTOR_OF = {"a": 0, "b": 0, "A": 0, "B": 0, "c": 1, "d": 1, "C": 1, "D": 1}
EDGE_WORD = ("abAB", "dcDC")  # the edge generator spelled in each factor


def _syllables(word: str):
    """Maximal same-factor runs of a freely reduced word."""
    out = []
    for ch in word:
        f = FACTOR_OF[ch]
        if out and out[-1][0] == f:
            run = free_reduce(out[-1][1] + ch)
            if run:
                out[-1] = (f, run)
            else:
                out.pop()
        else:
            out.append((f, ch))
    return _merge_adjacent(out)


def _edge_power(word: str, factor: int):
    """m with word = edge^m in the free factor, or None."""
    w = free_reduce(word)
    if not w:
        return 0
    e = EDGE_WORD[factor]
    bound = len(w) // len(e) + 1
    acc = ""
    for m in range(1, bound + 1):
        acc = free_reduce(acc + e)
        if acc == w:
            return m
    acc = ""
    einv = invert_word(e)
    for m in range(1, bound + 1):
        acc = free_reduce(acc + einv)
        if acc == w:
            return -m
    return None


def _coset_rep(word: str, factor: int):
    """(m, u) with word = edge^m * u and u the canonical (shortest, then
    lexicographically least) representative of its <edge> coset."""
    w = free_reduce(word)
    e = EDGE_WORD[factor]
    einv = invert_word(e)
    best = (len(w), w, 0)
    cur = w
    for m in range(1, len(w) // 2 + 2):
        cur = free_reduce(einv + cur)
        cand = (len(cur), cur, m)
        if cand < best:
            best = cand
        if len(cur) > len(w) + 2 * len(e):
            break
    cur = w
    for m in range(1, len(w) // 2 + 2):
        cur = free_reduce(e + cur)
        cand = (len(cur), cur, -m)
        if cand < best:
            best = cand
        if len(cur) > len(w) + 2 * len(e):
            break
    _, u, m = best
    return m, u


@dataclass(frozen=True)
class AmalgamNormalForm:
    """edge^m0 * u1 * u2 * ... with alternating-factor syllables ui that are
    nontrivial canonical coset representatives."""

    edge_power: int
    syllables: tuple  # ((factor, word), ...)

    @property
    def is_trivial(self):
        return self.edge_power == 0 and not self.syllables

    @property
    def in_factor(self):
        """Conjugate into a free factor (single syllable or edge power)?"""
        return len(self.syllables) <= 1


def amalgam_normal_form(word: str) -> AmalgamNormalForm:
    validate_word(word, AMALGAM_ALPHABET)
    sylls = _syllables(free_reduce(word))
    # absorb edge-group syllables into a neighbour until none remain inside
    changed = True
    while changed:
        changed = False
        for i, (f, w) in enumerate(sylls):
            m = _edge_power(w, f)
            if m is None:
                continue
            if len(sylls) == 1:
                if m == 0:
                    return AmalgamNormalForm(0, ())
                return AmalgamNormalForm(m, ())
            # rewrite in the adjacent syllable's factor and merge
            if i > 0:
                nf, nw = sylls[i - 1]
                repl = EDGE_WORD[nf] if m >= 0 else invert_word(EDGE_WORD[nf])
                merged = free_reduce(nw + repl * abs(m))
                sylls = sylls[: i - 1] + ([(nf, merged)] if merged else []) + sylls[i + 1 :]
            else:
                nf, nw = sylls[1]
                repl = EDGE_WORD[nf] if m >= 0 else invert_word(EDGE_WORD[nf])
                merged = free_reduce(repl * abs(m) + nw)
                sylls = ([(nf, merged)] if merged else []) + sylls[2:]
            sylls = _merge_adjacent(sylls)
            changed = True
            break
    # extract coset representatives right-to-left; the edge power collects
    # at the front
    sylls = list(sylls)
    for i in range(len(sylls) - 1, 0, -1):
        f, w = sylls[i]
        m, u = _coset_rep(w, f)
        if m == 0:
            continue
        sylls[i] = (f, u)
        pf, pw = sylls[i - 1]
        repl = EDGE_WORD[pf] if m >= 0 else invert_word(EDGE_WORD[pf])
        sylls[i - 1] = (pf, free_reduce(pw + repl * abs(m)))
    m0 = 0
    if sylls:
        f, w = sylls[0]
        m0, u = _coset_rep(w, f)
        sylls[0] = (f, u)
    return AmalgamNormalForm(m0, tuple(sylls))


def _merge_adjacent(sylls):
    out = []
    for f, w in sylls:
        if out and out[-1][0] == f:
            combined = free_reduce(out[-1][1] + w)
            out.pop()
            if combined:
                out.append((f, combined))
        else:
            out.append((f, w))
    return out


def amalgam_is_identity(word: str) -> bool:
    return amalgam_normal_form(word).is_trivial


def _folded_syllables(nf: AmalgamNormalForm):
    """Syllables with the leading edge power folded into the first one,
    so the element reads as an alternating product w1 w2 ... wn with
    every wi outside the edge group."""
    sylls = list(nf.syllables)
    if nf.edge_power:
        m = nf.edge_power
        if sylls:
            f, w = sylls[0]
            e = EDGE_WORD[f] if m > 0 else invert_word(EDGE_WORD[f])
            sylls[0] = (f, free_reduce(e * abs(m) + w))
        else:
            e = EDGE_WORD[0] if m > 0 else invert_word(EDGE_WORD[0])
            sylls = [(0, free_reduce(e * abs(m)))]
    return sylls


def amalgam_translation_data(word: str):
    """("identity", 0), ("elliptic", 0) for elements conjugate into a
    factor, or ("hyperbolic", cyclic syllable count) on the amalgam tree."""
    nf = amalgam_normal_form(word)
    if nf.is_trivial:
        return ("identity", 0)
    sylls = _folded_syllables(nf)
    # rotate while the ends lie in the same factor; each rotation merges
    # them, so the count strictly drops and this terminates
    while len(sylls) >= 2:
        if sylls[0][0] != sylls[-1][0]:
            return ("hyperbolic", len(sylls))
        rotated = "".join(w for _, w in sylls[1:]) + sylls[0][1]
        sylls = _folded_syllables(amalgam_normal_form(rotated))
    return ("elliptic", 0)


FREE_QUOTIENT = {
    "a": "x", "A": "X", "d": "x", "D": "X",
    "b": "y", "B": "Y", "c": "y", "C": "Y",
}


def free_quotient(word: str) -> str:
    """Image under a, d -> x and b, c -> y, freely reduced."""
    validate_word(word, AMALGAM_ALPHABET)
    return free_reduce("".join(FREE_QUOTIENT[ch] for ch in word))


def two_tree_certificate(maxlen: int):
    """Every nontrivial element spelled by a reduced word of length
    <= maxlen is hyperbolic on the amalgam tree or has nontrivial image
    in the free quotient (hence hyperbolic on its Cayley tree)."""
    if maxlen > 10:
        raise ValueError("certificate enumeration capped at maxlen 10")
    from .surface import CheckReport

    rep = CheckReport()
    seen = set()
    words = 0
    elements = 0
    covered = {"amalgam": 0, "quotient": 0}
    violations = []
    for w in reduced_words(AMALGAM_ALPHABET, maxlen):
        words += 1
        nf = amalgam_normal_form(w)
        key = (nf.edge_power, nf.syllables)
        if key in seen:
            continue
        seen.add(key)
        if nf.is_trivial:
            continue
        elements += 1
        ok = False
        kind, _ = amalgam_translation_data(w)
        if kind == "hyperbolic":
            covered["amalgam"] += 1
            ok = True
        if free_quotient(w):
            covered["quotient"] += 1
            ok = True
        if not ok:
            violations.append(w)
    rep.add(
        f"all elements up to length {maxlen} hyperbolic somewhere",
        not violations,
        f"{words} words, {elements} distinct nontrivial elements",
    )
    rep.count("words", words)
    rep.count("elements", elements)
    rep.count("violations", len(violations))
    for name, cnt in covered.items():
        rep.count(f"covered_{name}", cnt)
    return rep

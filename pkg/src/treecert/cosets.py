"""Finite permutation groups, coset trees and index chains.

Groups are given by generator permutations on {0..n-1} and handled by full
element enumeration (capped), which keeps every construction directly
checkable: cosets are explicit sets, cores are kernels of explicit coset
actions, and all the subgroup containments below are verified by membership.

The two main algorithms:
  * refine_index4 turns one index-4 subgroup into a descending chain with
    step indices in {2, 3} down to its core, by the case split on the order
    (4, 8, 12 or 24) of the image of the coset action.
  * chain_4_to_3 converts a chain with steps <= 4 into one with steps <= 3
    whose j-th waypoint is contained in the j-th original subgroup, by
    inserting a refinement block before each index-4 step and intersecting.
"""

from __future__ import annotations

from dataclasses import dataclass


class CapExceeded(RuntimeError):
    pass


class NotASubgroup(ValueError):
    pass


class NotInGroup(ValueError):
    pass


class WrongIndex(ValueError):
    pass


class StepTooLarge(ValueError):
    pass


class DepthExceedsChain(ValueError):
    pass


Perm = tuple  # images of 0..n-1


def perm_mul(p: Perm, q: Perm) -> Perm:
    """(p*q)(i) = p(q(i)): apply q first."""
    return tuple(p[q[i]] for i in range(len(p)))


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_identity(n: int) -> Perm:
    return tuple(range(n))


def perm_sign(p: Perm) -> int:
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def parse_perm(text: str, degree: int | None = None) -> Perm:
    """Cycle notation like "(0 1 2)(3 4)"; "()" is the identity."""
    text = text.strip()
    cycles = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        if text[i] != "(":
            raise ValueError(f"expected '(' in permutation {text!r}")
        j = text.index(")", i)
        body = text[i + 1 : j].replace(",", " ").split()
        cycles.append([int(tok) for tok in body])
        i = j + 1
    n = degree if degree is not None else 1 + max((max(c) for c in cycles if c), default=0)
    images = list(range(n))
    for cyc in cycles:
        for k, v in enumerate(cyc):
            if v >= n:
                raise ValueError(f"point {v} exceeds degree {n}")
            images[v] = cyc[(k + 1) % len(cyc)]
    # injectivity check catches overlapping or malformed cycles
    if sorted(images) != list(range(n)):
        raise ValueError(f"not a permutation: {text!r}")
    return tuple(images)


def format_perm(p: Perm) -> str:
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


DEFAULT_CAP = 100_000


class PermGroup:
    """Permutation group given by generators; elements enumerated on demand."""

    def __init__(self, degree: int, generators, cap: int = DEFAULT_CAP):
        self.degree = degree
        gens = []
        for g in generators:
            g = tuple(g)
            if sorted(g) != list(range(degree)):
                raise ValueError(f"generator {g} is not a permutation of 0..{degree-1}")
            gens.append(g)
        self.generators = tuple(gens)
        self.cap = cap
        self._elements = None

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, [])

    def elements(self) -> frozenset:
        """Closure of the generators (BFS), capped."""
        if self._elements is None:
            e = perm_identity(self.degree)
            seen = {e}
            frontier = [e]
            while frontier:
                nxt = []
                for g in frontier:
                    for s in self.generators:
                        h = perm_mul(s, g)
                        if h not in seen:
                            if len(seen) >= self.cap:
                                raise CapExceeded(f"group order exceeds cap {self.cap}")
                            seen.add(h)
                            nxt.append(h)
                frontier = nxt
            self._elements = frozenset(seen)
        return self._elements

    def order(self) -> int:
        return len(self.elements())

    def __contains__(self, p: Perm) -> bool:
        return tuple(p) in self.elements()

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        o = other.elements()
        return all(g in o for g in self.generators)

    def subgroup(self, generators) -> "PermGroup":
        h = PermGroup(self.degree, generators, cap=self.cap)
        if not h.is_subgroup_of(self):
            raise NotASubgroup("generators do not lie in the group")
        return h

    def __repr__(self):
        gens = ", ".join(format_perm(g) for g in self.generators) or "()"
        return f"PermGroup(deg {self.degree}: {gens})"


def group_order(g: PermGroup) -> int:
    return g.order()


def small_generating_set(degree: int, elements) -> list[Perm]:
    """Greedy generating set for an explicitly listed subgroup."""
    e = perm_identity(degree)
    gens: list[Perm] = []
    have = {e}
    for x in sorted(elements):
        if x in have:
            continue
        gens.append(x)
        have = PermGroup(degree, gens).elements()
        if len(have) == len(elements):
            break
    return gens


@dataclass
class CosetAction:
    """The action of G on the left cosets of H."""

    group: "PermGroup"
    index: int
    cosets: list[frozenset]  # coset element sets, rep-sorted
    image: "PermGroup"  # on {0..index-1}
    kernel: "PermGroup"  # the core of H in G

    def image_of(self, g: Perm) -> Perm:
        lookup = self._lookup
        return tuple(lookup[perm_mul(g, rep)] for rep in self.reps)

    def __post_init__(self):
        self.reps = [min(c) for c in self.cosets]
        self._lookup = {}
        for i, c in enumerate(self.cosets):
            for x in c:
                self._lookup[x] = i


def coset_action(g: PermGroup, h: PermGroup) -> CosetAction:
    """Left-multiplication action of g on cosets of h, with image and kernel."""
    if not h.is_subgroup_of(g):
        raise NotASubgroup("H is not a subgroup of G")
    gel = sorted(g.elements())
    hel = h.elements()
    assigned = {}
    cosets = []
    for x in gel:
        if x in assigned:
            continue
        coset = frozenset(perm_mul(x, t) for t in hel)
        idx = len(cosets)
        cosets.append(coset)
        for y in coset:
            assigned[y] = idx
    index = len(cosets)
    reps = [min(c) for c in cosets]
    image_gens = []
    for s in g.generators:
        image_gens.append(tuple(assigned[perm_mul(s, rep)] for rep in reps))
    image = PermGroup(index, image_gens)
    kernel_elems = [
        x for x in gel if all(assigned[perm_mul(x, rep)] == i for i, rep in enumerate(reps))
    ]
    kernel = PermGroup(g.degree, small_generating_set(g.degree, kernel_elems), cap=g.cap)
    return CosetAction(group=g, index=index, cosets=cosets, image=image, kernel=kernel)


def core(g: PermGroup, h: PermGroup) -> PermGroup:
    """Largest normal subgroup of g inside h (kernel of the coset action)."""
    return coset_action(g, h).kernel


# ---------------------------------------------------------------------------
# index chains
# ---------------------------------------------------------------------------

@dataclass
class IndexChain:
    """Descending sequence of subgroups of a common permutation group."""

    subgroups: list[PermGroup]  # subgroups[0] is the whole chain's top
    waypoints: list[PermGroup] | None = None  # set by chain_4_to_3: K_j <= G_j

    def __post_init__(self):
        self.validate()

    def validate(self):
        for upper, lower in zip(self.subgroups, self.subgroups[1:]):
            if not lower.is_subgroup_of(upper):
                raise NotASubgroup("chain entries are not nested")

    @property
    def indices(self) -> list[int]:
        return [
            upper.order() // lower.order()
            for upper, lower in zip(self.subgroups, self.subgroups[1:])
        ]

    def __len__(self):
        return len(self.subgroups)

    def removed_repeats(self) -> "IndexChain":
        out = [self.subgroups[0]]
        for grp in self.subgroups[1:]:
            if grp.order() != out[-1].order():
                out.append(grp)
        return IndexChain(out)


def _pullback(g: PermGroup, action: CosetAction, image_subgroup_elems) -> PermGroup:
    elems = [x for x in sorted(g.elements()) if action.image_of(x) in image_subgroup_elems]
    return PermGroup(g.degree, small_generating_set(g.degree, elems), cap=g.cap)


def _index2_subgroups(group: PermGroup) -> list[PermGroup]:
    """All index-2 subgroups of a small group, by kernels of sign-like maps.

    Enumerated directly: a subgroup of index 2 is a union of half the
    elements forming a group; found by scanning subgroups generated by
    element subsets.  Small orders only.
    """
    n = group.order()
    els = sorted(group.elements())
    out = []
    seen = set()
    for x in els:
        for y in els:
            h = PermGroup(group.degree, [x, y], cap=group.cap)
            if h.order() * 2 == n:
                key = h.elements()
                if key not in seen:
                    seen.add(key)
                    out.append(h)
    return out


def refine_index4(g: PermGroup, h: PermGroup) -> IndexChain:
    """Chain from g down to core(h) with every step index 2 or 3,
    given [g : h] = 4.

    Case split on the order m of the image of the coset action on the four
    cosets (a transitive subgroup of Sym(4), so m is 4, 8, 12 or 24):
      m = 4:  image > (index-2 subgroup) > 1          steps [2, 2]
      m = 8:  image > (index-2 above rho(H)) > rho(H) > 1   steps [2, 2, 2]
      m = 12: Alt(4) > V4 > C2 > 1                    steps [3, 2, 2]
      m = 24: Sym(4) > Alt(4) > V4 > C2 > 1           steps [2, 3, 2, 2]
    pulled back through the action.
    """
    act = coset_action(g, h)
    if act.index != 4:
        raise WrongIndex(f"[G:H] = {act.index}, expected 4")
    image = act.image
    m = image.order()
    ih = PermGroup(4, [act.image_of(x) for x in h.generators])
    image_chain: list[frozenset] = []
    if m == 4:
        sub2 = next(s for s in _index2_subgroups(image))
        image_chain = [sub2.elements(), frozenset([perm_identity(4)])]
    elif m == 8:
        # dihedral: rho(H) is a reflection, inside one of the three
        # index-2 subgroups
        ih_els = ih.elements()
        sub2 = next(
            s for s in _index2_subgroups(image) if ih_els <= s.elements()
        )
        image_chain = [sub2.elements(), ih_els, frozenset([perm_identity(4)])]
    elif m == 12:
        v4 = frozenset(x for x in image.elements() if perm_mul(x, x) == perm_identity(4))
        c2_gen = min(x for x in v4 if x != perm_identity(4))
        c2 = frozenset([perm_identity(4), c2_gen])
        image_chain = [v4, c2, frozenset([perm_identity(4)])]
    elif m == 24:
        alt = frozenset(x for x in image.elements() if perm_sign(x) == 1)
        v4 = frozenset(x for x in alt if perm_mul(x, x) == perm_identity(4))
        c2_gen = min(x for x in v4 if x != perm_identity(4))
        c2 = frozenset([perm_identity(4), c2_gen])
        image_chain = [alt, v4, c2, frozenset([perm_identity(4)])]
    else:
        raise AssertionError(f"impossible transitive image order {m}")
    subgroups = [g] + [_pullback(g, act, elems) for elems in image_chain]
    return IndexChain(subgroups).removed_repeats()


def chain_4_to_3(chain: IndexChain) -> IndexChain:
    """Convert a steps-<=4 chain into a steps-<=3 chain; the j-th output
    waypoint K_j satisfies K_j <= G_j and the terminal is contained in the
    input terminal."""
    for idx in chain.indices:
        if idx > 4:
            raise StepTooLarge(f"step index {idx} > 4")
    groups = chain.subgroups
    out = [groups[0]]
    k = groups[0]
    waypoints = [k]
    for g_next in groups[1:]:
        inter_elems = k.elements() & g_next.elements()
        inter = PermGroup(
            k.degree, small_generating_set(k.degree, inter_elems), cap=k.cap
        )
        step = k.order() // inter.order()
        if step == 4:
            block = refine_index4(k, inter)
            out.extend(block.subgroups[1:])
            k = block.subgroups[-1]
        else:
            out.append(inter)
            k = inter
        waypoints.append(k)
    result = IndexChain(out).removed_repeats()
    result.waypoints = waypoints
    return result


# ---------------------------------------------------------------------------
# coset trees
# ---------------------------------------------------------------------------

@dataclass
class CosetTree:
    """Levels of cosets of the chain subgroups, with parent links.

    levels[l] lists the cosets of chain.subgroups[l] (as frozensets of
    group elements, ordered by minimal representative); parents[l][i] is
    the index in levels[l-1] of the coset containing levels[l][i].
    """

    chain: IndexChain
    depth: int
    levels: list[list[frozenset]]
    parents: list[list[int]]

    def node_count(self):
        return sum(len(level) for level in self.levels)

    def degrees(self) -> list[list[int]]:
        """Degree of every node, level by level (tree edges only)."""
        out = []
        for l, level in enumerate(self.levels):
            children = [0] * len(level)
            if l + 1 < len(self.levels):
                for par in self.parents[l + 1]:
                    children[par] += 1
            if l == 0:
                out.append([children[0]] if level else [])
            else:
                out.append([1 + c for c in children])
        return out


def build_coset_tree(chain: IndexChain, depth: int) -> CosetTree:
    """Vertices at level n are the cosets of the n-th chain subgroup; the
    coset g*G_n hangs below the unique coset of G_{n-1} containing it."""
    if depth >= len(chain.subgroups):
        raise DepthExceedsChain(f"depth {depth} needs {depth + 1} chain entries")
    g0 = chain.subgroups[0]
    gel = sorted(g0.elements())
    levels = []
    parents = []
    prev_lookup = None
    for l in range(depth + 1):
        hel = chain.subgroups[l].elements()
        assigned = {}
        level: list[frozenset] = []
        for x in gel:
            if x in assigned:
                continue
            coset = frozenset(perm_mul(x, t) for t in hel)
            idx = len(level)
            level.append(coset)
            for y in coset:
                assigned[y] = idx
        if l == 0:
            parents.append([0] * len(level))
        else:
            parents.append([prev_lookup[min(c)] for c in level])
        levels.append(level)
        prev_lookup = assigned
    return CosetTree(chain=chain, depth=depth, levels=levels, parents=parents)


def tree_action(g: Perm, tree: CosetTree) -> list[list[int]]:
    """Node permutation per level induced by left multiplication by g."""
    g = tuple(g)
    if g not in tree.chain.subgroups[0]:
        raise NotInGroup("element is not in the chain's top group")
    out = []
    for level in tree.levels:
        lookup = {}
        for i, c in enumerate(level):
            for x in c:
                lookup[x] = i
        out.append([lookup[perm_mul(g, min(c))] for c in level])
    return out


def kernel_at_depth(chain: IndexChain, depth: int) -> PermGroup:
    """Pointwise stabiliser of all tree nodes down to `depth`: the core of
    the depth-th subgroup in the top group."""
    if depth >= len(chain.subgroups):
        raise DepthExceedsChain(f"depth {depth} needs {depth + 1} chain entries")
    if depth == 0:
        return chain.subgroups[0]
    return core(chain.subgroups[0], chain.subgroups[depth])


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def parse_group_file(text: str, cap: int = DEFAULT_CAP) -> PermGroup:
    """One generator per line in cycle notation; optional "degree <n>" first."""
    degree = None
    gens = []
    lines = [ln.strip() for ln in text.splitlines()]
    for ln in lines:
        if not ln or ln.startswith("#"):
            continue
        if ln.lower().startswith("degree"):
            degree = int(ln.split()[1])
            continue
        gens.append(ln)
    if degree is None:
        degree = 0
        for ln in gens:
            pts = [int(t) for t in ln.replace("(", " ").replace(")", " ").replace(",", " ").split()]
            degree = max(degree, 1 + max(pts, default=-1))
        degree = max(degree, 1)
    return PermGroup(degree, [parse_perm(ln, degree) for ln in gens], cap=cap)


def parse_chain_file(text: str, cap: int = DEFAULT_CAP) -> IndexChain:
    """Groups separated by lines of dashes; first block is the top group."""
    blocks = []
    cur: list[str] = []
    for ln in text.splitlines():
        if ln.strip().startswith("--"):
            blocks.append("\n".join(cur))
            cur = []
        else:
            cur.append(ln)
    blocks.append("\n".join(cur))
    groups = []
    degree = None
    for b in blocks:
        if degree is not None and "degree" not in b:
            b = f"degree {degree}\n" + b
        grp = parse_group_file(b, cap=cap)
        degree = grp.degree
        groups.append(grp)
    return IndexChain(groups)

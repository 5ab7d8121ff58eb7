"""How many trees a right-angled Artin group needs for a proper action.

For a RAAG with finite defining graph:
  * a proper chromatic-number coloring gives an action on that many trees
    (upper bound),
  * a k-clique gives Z^k, which cannot act properly on fewer than k trees,
  * an odd closed path gives an induced odd cycle whose RAAG cannot act
    properly on two trees, so any non-bipartite graph needs at least 3.
The planner combines these and reports an exact count when the bounds
meet: edgeless graphs need exactly 1 tree, bipartite graphs with an edge
exactly 2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass


class ParseError(ValueError):
    pass


class LoopEdge(ValueError):
    pass


class DuplicateEdge(ValueError):
    pass


class TooLarge(ValueError):
    pass


class NotAClosedPath(ValueError):
    pass


class NotOdd(ValueError):
    pass


MAX_EXACT_VERTICES = 40


@dataclass(frozen=True)
class SimpleGraph:
    vertex_count: int
    edges: frozenset  # frozenset of 2-element frozensets

    @classmethod
    def from_edges(cls, n: int, edge_list) -> "SimpleGraph":
        edges = set()
        for u, v in edge_list:
            if u == v:
                raise LoopEdge(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge ({u}, {v}) outside 0..{n-1}")
            e = frozenset((u, v))
            if e in edges:
                raise DuplicateEdge(f"edge ({u}, {v}) repeated")
            edges.add(e)
        return cls(n, frozenset(edges))

    def has_edge(self, u: int, v: int) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbors(self, u: int) -> set:
        return {next(iter(e - {u})) for e in self.edges if u in e}

    def adjacency(self) -> list[set]:
        adj = [set() for _ in range(self.vertex_count)]
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        return adj


def parse_graph(text: str) -> SimpleGraph:
    """Optional "vertices <n>" header, then one "u v" edge per line;
    '#' starts a comment."""
    n = None
    edges = []
    maxv = -1
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0].lower() == "vertices":
            if len(toks) != 2 or not toks[1].isdigit():
                raise ParseError(f"bad header: {raw!r}")
            n = int(toks[1])
            continue
        if len(toks) != 2:
            raise ParseError(f"expected 'u v': {raw!r}")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError(f"non-integer endpoint: {raw!r}") from None
        edges.append((u, v))
        maxv = max(maxv, u, v)
    if n is None:
        n = maxv + 1 if maxv >= 0 else 0
    return SimpleGraph.from_edges(n, edges)


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def edgeless_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [])


def petersen_graph() -> SimpleGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return SimpleGraph.from_edges(10, outer + spokes + inner)


# ---------------------------------------------------------------------------
# bipartiteness and odd cycles
# ---------------------------------------------------------------------------

def find_odd_closed_path(g: SimpleGraph):
    """An odd closed path (vertex list, first = last) found from a BFS
    2-coloring contradiction, or None when the graph is bipartite."""
    adj = g.adjacency()
    color = [-1] * g.vertex_count
    parent = [-1] * g.vertex_count
    for root in range(g.vertex_count):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    parent[v] = u
                    queue.append(v)
                elif color[v] == color[u]:
                    # same-color edge: BFS paths to the meeting ancestor
                    # close an odd walk meet -> u -> v -> meet
                    def path_up(w):
                        out = [w]
                        while parent[out[-1]] != -1:
                            out.append(parent[out[-1]])
                        return out
                    pu, pv = path_up(u), path_up(v)
                    sv = set(pv)
                    meet = next(w for w in pu if w in sv)
                    cu = pu[: pu.index(meet) + 1]
                    cv = pv[: pv.index(meet) + 1]
                    return list(reversed(cu)) + cv
    return None


def is_bipartite(g: SimpleGraph) -> bool:
    return find_odd_closed_path(g) is None


def _check_closed_path(g: SimpleGraph, cycle) -> list:
    if len(cycle) < 2 or cycle[0] != cycle[-1]:
        raise NotAClosedPath("vertex list must start and end at the same vertex")
    for u, v in zip(cycle, cycle[1:]):
        if not g.has_edge(u, v):
            raise NotAClosedPath(f"({u}, {v}) is not an edge")
    if (len(cycle) - 1) % 2 == 0:
        raise NotOdd("closed path has even length")
    return list(cycle)


def induced_odd_cycle(g: SimpleGraph, cycle) -> list:
    """Shrink an odd closed path to an induced odd cycle of length >= 3.

    Splitting at a self-intersection keeps an odd closed subpath; splitting
    along a chord keeps the odd side; both strictly shorten, so this
    terminates with a chord-free odd cycle."""
    walk = _check_closed_path(g, cycle)
    while True:
        body = walk[:-1]  # distinct-position vertices of the closed path
        n = len(body)
        # self-intersection: split into two closed subpaths, keep an odd one
        first_pos = {}
        split = None
        for i, v in enumerate(body):
            if v in first_pos:
                split = (first_pos[v], i)
                break
            first_pos[v] = i
        if split:
            i, j = split
            sub1 = body[i : j + 1]  # closed: body[i] == body[j]
            if (len(sub1) - 1) % 2 == 1:
                walk = sub1
            else:
                rest = body[:i] + body[j:]
                walk = rest + [rest[0]]
            continue
        # simple cycle now: split along a chord, keep the odd side
        chord = None
        for i in range(n):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue  # cycle edge
                if g.has_edge(body[i], body[j]):
                    chord = (i, j)
                    break
            if chord:
                break
        if chord is None:
            return body
        i, j = chord
        side1 = body[i : j + 1] + [body[i]]
        side2 = body[j:] + body[: i + 1] + [body[j]]
        walk = side1 if (len(side1) - 1) % 2 == 1 else side2


def is_induced_cycle(g: SimpleGraph, body) -> bool:
    n = len(body)
    if n < 3 or len(set(body)) != n:
        return False
    for i in range(n):
        for j in range(i + 1, n):
            adjacent_on_cycle = j - i == 1 or (i == 0 and j == n - 1)
            if g.has_edge(body[i], body[j]) != adjacent_on_cycle:
                return False
    return True


# ---------------------------------------------------------------------------
# cliques and colorings
# ---------------------------------------------------------------------------

def max_clique(g: SimpleGraph):
    """(size, witness) of a maximum clique; exact branch and bound."""
    n = g.vertex_count
    if n > MAX_EXACT_VERTICES:
        raise TooLarge(f"exact clique limited to {MAX_EXACT_VERTICES} vertices")
    if n == 0:
        return 0, []
    adj = g.adjacency()
    order = sorted(range(n), key=lambda v: -len(adj[v]))
    best = [1, [order[0]]]

    def grow(clique, candidates):
        if len(clique) + len(candidates) <= best[0]:
            return
        if not candidates:
            if len(clique) > best[0]:
                best[0] = len(clique)
                best[1] = list(clique)
            return
        for i, v in enumerate(candidates):
            if len(clique) + len(candidates) - i <= best[0]:
                return
            grow(clique + [v], [u for u in candidates[i + 1 :] if u in adj[v]])

    grow([], order)
    return best[0], sorted(best[1])


def _try_color(g: SimpleGraph, k: int):
    """A proper k-coloring, or None; backtracking with new-color symmetry cap."""
    n = g.vertex_count
    adj = g.adjacency()
    order = sorted(range(n), key=lambda v: -len(adj[v]))
    colors = [-1] * n

    def backtrack(idx, used):
        if idx == n:
            return True
        v = order[idx]
        banned = {colors[u] for u in adj[v] if colors[u] != -1}
        for c in range(min(used + 1, k)):
            if c in banned:
                continue
            colors[v] = c
            if backtrack(idx + 1, max(used, c + 1)):
                return True
            colors[v] = -1
        return False

    return list(colors) if backtrack(0, 0) else None


def chromatic_number(g: SimpleGraph):
    """(k, proper coloring with k colors); exact for <= 40 vertices."""
    n = g.vertex_count
    if n > MAX_EXACT_VERTICES:
        raise TooLarge(f"exact coloring limited to {MAX_EXACT_VERTICES} vertices")
    if n == 0:
        return 0, []
    if not g.edges:
        return 1, [0] * n
    lower, _ = max_clique(g)
    if is_bipartite(g):
        lower = max(lower, 2)
    else:
        lower = max(lower, 3)
    for k in range(lower, n + 1):
        coloring = _try_color(g, k)
        if coloring is not None:
            return k, coloring
    raise AssertionError("n colors always suffice")


def is_proper_coloring(g: SimpleGraph, coloring) -> bool:
    return all(coloring[u] != coloring[v] for e in g.edges for u, v in [tuple(e)])


# ---------------------------------------------------------------------------
# the planner
# ---------------------------------------------------------------------------

@dataclass
class TreePlan:
    """Bounds (and, when they meet, the exact value) for the number of
    factor trees in a proper factor-preserving action of the RAAG."""

    lower: int
    upper: int
    exact: int | None
    coloring: list
    clique: list
    odd_cycle: list | None

    @property
    def lower_bound_reason(self) -> str:
        if self.lower == 1:
            return "free group: one tree suffices and is needed"
        if len(self.clique) >= self.lower:
            return f"contains Z^{self.lower} (clique)"
        return "odd closed path: no proper action on two trees"


def tree_count_plan(g: SimpleGraph) -> TreePlan:
    if g.vertex_count < 1:
        raise ParseError("planner needs at least one vertex")
    k, coloring = chromatic_number(g)
    clique_size, clique = max_clique(g)
    odd_walk = find_odd_closed_path(g)
    if not g.edges:
        lower = 1
        odd_cycle = None
    elif odd_walk is None:
        lower = max(2, clique_size)
        odd_cycle = None
    else:
        odd_cycle = induced_odd_cycle(g, odd_walk)
        lower = max(3, clique_size)
    upper = k
    exact = upper if lower == upper else None
    return TreePlan(
        lower=lower,
        upper=upper,
        exact=exact,
        coloring=coloring,
        clique=clique,
        odd_cycle=odd_cycle,
    )


def embedding_obstruction(sub: SimpleGraph, sup: SimpleGraph) -> str:
    """"NoEmbedding" when the sub-RAAG needs three trees (odd closed path)
    but the super-RAAG acts properly on two (bipartite); "Unknown" otherwise.
    The tool never claims an embedding exists."""
    if not is_bipartite(sub) and is_bipartite(sup):
        return "NoEmbedding"
    return "Unknown"

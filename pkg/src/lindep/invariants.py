"""Brute-force graph invariants.

Every function here works on an arbitrary :class:`DepGraph`; none of them
looks at q, n, the vertex order or the subspace partition. Vertex sets are
handled as Python-int bitsets internally.

The exponential searches (clique, independence, chromatic and domination
numbers) refuse graphs above ``NP_MAX_VERTICES`` unless a larger
``max_vertices`` is passed.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .exceptions import CapacityError, DisconnectedGraphError
from .graph import DepGraph, bfs_distances

NP_MAX_VERTICES = 65
ISO_MAX_VERTICES = 32

PLANAR, NONPLANAR, UNKNOWN = "planar", "nonplanar", "unknown"


@dataclass(frozen=True)
class OracleResult:
    name: str
    value: Any
    witness: Any = None
    skipped: str | None = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "value": self.value}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.skipped:
            d["skipped"] = self.skipped
        return d


def _gate(g: DepGraph, max_vertices: int | None, what: str) -> None:
    bound = NP_MAX_VERTICES if max_vertices is None else max_vertices
    if g.num_vertices > bound:
        raise CapacityError(f"{what}: {g.num_vertices} vertices exceeds bound {bound}")


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


# -- cheap invariants ---------------------------------------------------------

def edge_count(g: DepGraph) -> int:
    return sum(g.degrees) // 2


def is_complete(g: DepGraph) -> bool:
    nv = g.num_vertices
    return all(len(nb) == nv - 1 for nb in g.adjacency)


def is_connected(g: DepGraph, removed: Iterable[int] = ()) -> bool:
    gone = set(removed)
    alive = [v for v in range(g.num_vertices) if v not in gone]
    if not alive:
        return True
    seen = {alive[0]}
    queue = deque([alive[0]])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in seen and w not in gone:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(alive)


def diameter(g: DepGraph) -> int:
    best = 0
    for s in range(g.num_vertices):
        dist = bfs_distances(g, s)
        if min(dist) < 0:
            raise DisconnectedGraphError("diameter is infinite: graph is disconnected")
        best = max(best, max(dist))
    return best


def is_eulerian(g: DepGraph) -> bool:
    return is_connected(g) and all(d % 2 == 0 for d in g.degrees)


# -- domination ---------------------------------------------------------------

def minimum_dominating_set(g: DepGraph, max_vertices: int | None = None) -> list[int]:
    _gate(g, max_vertices, "domination number")
    nv = g.num_vertices
    full = (1 << nv) - 1
    closed = [m | (1 << v) for v, m in enumerate(g.bitmasks)]
    for size in range(1, nv + 1):
        for subset in itertools.combinations(range(nv), size):
            covered = 0
            for v in subset:
                covered |= closed[v]
            if covered == full:
                return list(subset)
    return []


def domination_number(g: DepGraph, max_vertices: int | None = None) -> int:
    return len(minimum_dominating_set(g, max_vertices))


def is_dominating(g: DepGraph, vertices: Iterable[int]) -> bool:
    covered = set(vertices)
    for v in list(covered):
        covered |= g.adjacency[v]
    return len(covered) == g.num_vertices


# -- cliques and independent sets -------------------------------------------

def _color_sort(P: int, adj: Sequence[int]) -> list[tuple[int, int]]:
    """Greedy colouring of P; returns (vertex, colour) by non-decreasing colour."""
    out = []
    uncolored = P
    color = 0
    while uncolored:
        color += 1
        avail = uncolored
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            out.append((v, color))
            uncolored &= ~low
            avail &= ~low & ~adj[v]
    return out


def _max_clique_mask(adj: Sequence[int], nv: int) -> int:
    best = [0, 0]  # size, mask

    def expand(size: int, R: int, P: int) -> None:
        for v, c in reversed(_color_sort(P, adj)):
            if size + c <= best[0]:
                return
            bit = 1 << v
            newP = P & adj[v]
            if newP:
                expand(size + 1, R | bit, newP)
            elif size + 1 > best[0]:
                best[0], best[1] = size + 1, R | bit
            P &= ~bit

    if nv:
        expand(0, 0, (1 << nv) - 1)
    return best[1]


def maximum_clique(g: DepGraph, max_vertices: int | None = None) -> list[int]:
    _gate(g, max_vertices, "clique number")
    return _bits(_max_clique_mask(g.bitmasks, g.num_vertices))


def clique_number(g: DepGraph, max_vertices: int | None = None) -> int:
    return len(maximum_clique(g, max_vertices))


def maximum_independent_set(g: DepGraph, max_vertices: int | None = None) -> list[int]:
    _gate(g, max_vertices, "independence number")
    nv = g.num_vertices
    full = (1 << nv) - 1
    comp = [full & ~m & ~(1 << v) for v, m in enumerate(g.bitmasks)]
    return _bits(_max_clique_mask(comp, nv))


def independence_number(g: DepGraph, max_vertices: int | None = None) -> int:
    return len(maximum_independent_set(g, max_vertices))


def is_clique(g: DepGraph, vertices: Sequence[int]) -> bool:
    return all(v in g.adjacency[u] for u, v in itertools.combinations(vertices, 2))


def is_independent_set(g: DepGraph, vertices: Sequence[int]) -> bool:
    return not any(v in g.adjacency[u] for u, v in itertools.combinations(vertices, 2))


def maximal_cliques(g: DepGraph, max_vertices: int | None = None) -> list[frozenset[int]]:
    """Bron–Kerbosch with Tomita pivoting; sorted by least member."""
    _gate(g, max_vertices, "maximal cliques")
    adj = g.bitmasks
    out: list[frozenset[int]] = []

    def bk(R: int, P: int, X: int) -> None:
        if not P and not X:
            out.append(frozenset(_bits(R)))
            return
        pivot = max(_bits(P | X), key=lambda u: bin(P & adj[u]).count("1"))
        for v in _bits(P & ~adj[pivot]):
            bit = 1 << v
            bk(R | bit, P & adj[v], X & adj[v])
            P &= ~bit
            X |= bit

    if g.num_vertices:
        bk(0, (1 << g.num_vertices) - 1, 0)
    return sorted(out, key=lambda c: (min(c), sorted(c)))


# -- colouring ----------------------------------------------------------------

def _k_coloring(g: DepGraph, k: int) -> list[int] | None:
    nv = g.num_vertices
    colors = [-1] * nv
    adj = g.adjacency

    def pick() -> int:
        best, key = -1, None
        for v in range(nv):
            if colors[v] < 0:
                sat = len({colors[w] for w in adj[v] if colors[w] >= 0})
                cand = (sat, len(adj[v]))
                if key is None or cand > key:
                    best, key = v, cand
        return best

    def solve(done: int, used: int) -> bool:
        if done == nv:
            return True
        v = pick()
        forbidden = {colors[w] for w in adj[v]}
        for c in range(min(used + 1, k)):
            if c not in forbidden:
                colors[v] = c
                if solve(done + 1, max(used, c + 1)):
                    return True
        colors[v] = -1
        return False

    return colors if solve(0, 0) else None


def optimal_coloring(g: DepGraph, max_vertices: int | None = None) -> list[int]:
    """A proper colouring with the fewest colours (iterative deepening from ω)."""
    _gate(g, max_vertices, "chromatic number")
    if g.num_vertices == 0:
        return []
    k = max(1, clique_number(g, max_vertices=g.num_vertices))
    while True:
        coloring = _k_coloring(g, k)
        if coloring is not None:
            return coloring
        k += 1


def chromatic_number(g: DepGraph, max_vertices: int | None = None) -> int:
    coloring = optimal_coloring(g, max_vertices)
    return len(set(coloring))


def is_proper_coloring(g: DepGraph, coloring: Sequence[int]) -> bool:
    return all(coloring[u] != coloring[v] for u, v in g.edges())


# -- connectivity ---------------------------------------------------------------

def _max_flow_unit(g: DepGraph, s: int, t: int) -> tuple[int, set[int]]:
    """Unit-capacity max flow s -> t; returns (value, source side of a min cut)."""
    flow: dict[tuple[int, int], int] = {}
    value = 0
    while True:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in parent and flow.get((u, w), 0) < 1:
                    parent[w] = u
                    queue.append(w)
        if t not in parent:
            return value, set(parent)
        w = t
        while parent[w] is not None:
            u = parent[w]
            if flow.get((w, u), 0) > 0:
                flow[(w, u)] -= 1
            else:
                flow[(u, w)] = flow.get((u, w), 0) + 1
            w = u
        value += 1


def minimum_edge_cut(g: DepGraph) -> list[tuple[int, int]]:
    """A global minimum edge cut, from max flows out of vertex 0."""
    nv = g.num_vertices
    if nv < 2:
        return []
    best_val, best_side = None, None
    for t in range(1, nv):
        val, side = _max_flow_unit(g, 0, t)
        if best_val is None or val < best_val:
            best_val, best_side = val, side
    return sorted((min(u, w), max(u, w)) for u in best_side for w in g.adjacency[u]
                  if w not in best_side)


def edge_connectivity(g: DepGraph) -> int:
    return len(minimum_edge_cut(g))


def disconnects_edges(g: DepGraph, cut: Iterable[tuple[int, int]]) -> bool:
    removed = {frozenset(e) for e in cut}
    kept = [e for e in g.edges() if frozenset(e) not in removed]
    return not is_connected(DepGraph.from_edges(g.num_vertices, kept))


def minimum_vertex_cut(g: DepGraph) -> list[int] | None:
    """Smallest disconnecting vertex set by exhaustive search; None if complete."""
    if is_complete(g):
        return None
    if not is_connected(g):
        return []
    min_deg = min(g.degrees)
    for size in range(1, min_deg + 1):
        for subset in itertools.combinations(range(g.num_vertices), size):
            if not is_connected(g, subset):
                return list(subset)
    raise AssertionError("a non-complete graph has a cut of size <= min degree")


def vertex_connectivity(g: DepGraph) -> int:
    """Complete graphs get nv - 1 by convention."""
    cut = minimum_vertex_cut(g)
    return g.num_vertices - 1 if cut is None else len(cut)


def disconnects_vertices(g: DepGraph, cut: Iterable[int]) -> bool:
    return not is_connected(g, cut)


# -- planarity ------------------------------------------------------------------

def biconnected_blocks(g: DepGraph) -> list[frozenset[int]]:
    """Vertex sets of the blocks (Hopcroft–Tarjan, iterative); isolated vertices
    form singleton blocks."""
    nv = g.num_vertices
    disc = [-1] * nv
    low = [0] * nv
    blocks: list[frozenset[int]] = []
    timer = 0
    for root in range(nv):
        if disc[root] >= 0:
            continue
        if not g.adjacency[root]:
            disc[root] = timer
            timer += 1
            blocks.append(frozenset([root]))
            continue
        disc[root] = low[root] = timer
        timer += 1
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(sorted(g.adjacency[root])))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] < 0:
                    edge_stack.append((u, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, u, iter(sorted(g.adjacency[w]))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[u])
                if low[u] >= disc[parent]:
                    block = set()
                    while True:
                        a, b = edge_stack.pop()
                        block.update((a, b))
                        if (a, b) == (parent, u):
                            break
                    blocks.append(frozenset(block))
    return blocks


def planarity_by_blocks(g: DepGraph) -> str:
    """Exact when every block is a clique (K_m is planar iff m <= 4)."""
    verdict = PLANAR
    for block in biconnected_blocks(g):
        members = sorted(block)
        if not is_clique(g, members):
            return UNKNOWN
        if len(members) > 4:
            verdict = NONPLANAR
    return verdict


# -- isomorphism ------------------------------------------------------------------

def are_isomorphic(g1: DepGraph, g2: DepGraph, max_vertices: int = ISO_MAX_VERTICES) -> bool:
    """Backtracking search for an adjacency-preserving bijection."""
    return find_isomorphism(g1, g2, max_vertices) is not None


def find_isomorphism(g1: DepGraph, g2: DepGraph,
                     max_vertices: int = ISO_MAX_VERTICES) -> list[int] | None:
    nv = g1.num_vertices
    if nv != g2.num_vertices or edge_count(g1) != edge_count(g2):
        return None
    if sorted(g1.degrees) != sorted(g2.degrees):
        return None
    if nv > max_vertices:
        raise CapacityError(f"isomorphism search: {nv} vertices exceeds bound {max_vertices}")

    def signature(g: DepGraph, v: int) -> tuple:
        return (g.degree(v), tuple(sorted(g.degree(w) for w in g.adjacency[v])))

    sig1 = [signature(g1, v) for v in range(nv)]
    sig2 = [signature(g2, v) for v in range(nv)]
    if sorted(sig1) != sorted(sig2):
        return None

    # connectivity order: each next vertex has most already-placed neighbours
    order: list[int] = []
    placed = set()
    while len(order) < nv:
        rest = [v for v in range(nv) if v not in placed]
        v = max(rest, key=lambda u: (len(g1.adjacency[u] & placed), g1.degree(u), -u))
        order.append(v)
        placed.add(v)

    mapping = [-1] * nv
    used = [False] * nv

    def extend(i: int) -> bool:
        if i == nv:
            return True
        v = order[i]
        for w in range(nv):
            if used[w] or sig2[w] != sig1[v]:
                continue
            if all((u in g1.adjacency[v]) == (mapping[u] in g2.adjacency[w])
                   for u in order[:i]):
                mapping[v], used[w] = w, True
                if extend(i + 1):
                    return True
                mapping[v], used[w] = -1, False
        return False

    return mapping if extend(0) else None


# -- bundle ---------------------------------------------------------------------

def run_oracles(g: DepGraph, np_bound: int = NP_MAX_VERTICES) -> dict[str, OracleResult]:
    """Evaluate every oracle; exponential ones above ``np_bound`` come back skipped."""
    out: dict[str, OracleResult] = {}

    def gated(name: str, fn) -> None:
        try:
            out[name] = fn()
        except CapacityError as exc:
            out[name] = OracleResult(name, None, skipped=str(exc))

    out["complete"] = OracleResult("complete", is_complete(g))
    out["size"] = OracleResult("size", edge_count(g))
    out["diameter"] = OracleResult("diameter", diameter(g))

    def _dom():
        s = minimum_dominating_set(g, np_bound)
        return OracleResult("domination", len(s), s)

    def _ind():
        s = maximum_independent_set(g, np_bound)
        return OracleResult("independence", len(s), s)

    def _clq():
        s = maximum_clique(g, np_bound)
        return OracleResult("clique", len(s), s)

    def _chi():
        c = optimal_coloring(g, np_bound)
        return OracleResult("chromatic", len(set(c)), c)

    def _maxcl():
        cl = maximal_cliques(g, np_bound)
        return OracleResult("maximal_cliques", [sorted(c) for c in cl])

    gated("domination", _dom)
    gated("independence", _ind)
    gated("clique", _clq)
    gated("chromatic", _chi)
    gated("maximal_cliques", _maxcl)
    out["eulerian"] = OracleResult("eulerian", is_eulerian(g))
    cut = minimum_edge_cut(g)
    out["edge_connectivity"] = OracleResult("edge_connectivity", len(cut),
                                            [list(e) for e in cut])
    vcut = minimum_vertex_cut(g)
    out["vertex_connectivity"] = OracleResult(
        "vertex_connectivity", g.num_vertices - 1 if vcut is None else len(vcut), vcut)
    out["planarity"] = OracleResult("planarity", planarity_by_blocks(g))
    return out

"""Construction of the linear dependence graph and its matrices.

Vertices live at *positions* 0..nv-1 in canonical order: the null vector
first, then the nonzero part of each 1-dimensional subspace, classes ordered
by least vector index and members by index. ``vertex_order[pos]`` gives the
vector index at each position.
"""
from __future__ import annotations

import csv
import io
import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .exceptions import CapacityError, DisconnectedGraphError
from .gf import FieldSpec
from .vspace import (MAX_VECTORS, SubspacePartition, _rank_le_one, enumerate_vectors,
                     partition_subspaces)


@dataclass(frozen=True)
class GraphMeta:
    q: int
    N: int
    p: int | None = None
    k: int | None = None
    n: int | None = None

    def to_dict(self) -> dict:
        return {"p": self.p, "k": self.k, "n": self.n, "q": self.q, "N": self.N}


@dataclass(frozen=True, eq=False)
class DepGraph:
    """A simple undirected graph on positions ``0..num_vertices-1``.

    Built for Γ(V) by :func:`build_graph`, for windmills by
    :func:`build_windmill`, or from an arbitrary edge list with
    :meth:`from_edges` (the invariant oracles accept any of these).
    """

    num_vertices: int
    adjacency: tuple[frozenset[int], ...]
    vertex_order: tuple[int, ...] = ()
    meta: GraphMeta | None = None
    partition: SubspacePartition | None = field(default=None, repr=False)
    labels: tuple[str, ...] = field(default=(), repr=False)

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[tuple[int, int]], **kw) -> DepGraph:
        nbrs = [set() for _ in range(num_vertices)]
        for i, j in edges:
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            nbrs[i].add(j)
            nbrs[j].add(i)
        return cls(num_vertices, tuple(frozenset(s) for s in nbrs), **kw)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def degrees(self) -> list[int]:
        return [len(s) for s in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.num_vertices) for j in sorted(self.adjacency[i]) if i < j]

    @cached_property
    def bitmasks(self) -> tuple[int, ...]:
        return tuple(sum(1 << j for j in s) for s in self.adjacency)

    def same_adjacency(self, other: DepGraph) -> bool:
        return self.num_vertices == other.num_vertices and self.adjacency == other.adjacency


def build_graph(spec: FieldSpec, n: int, max_vertices: int = MAX_VECTORS) -> DepGraph:
    """Γ(F_q^n): distinct vectors adjacent iff linearly dependent.

    Edges come from testing every pair with the rank-one criterion; the
    subspace partition only fixes the vertex order.
    """
    vectors = enumerate_vectors(spec, n, max_vectors=max_vertices)
    part = partition_subspaces(vectors, spec)
    order = (0,) + tuple(i for cls in part.classes for i in cls)
    pos = {idx: k for k, idx in enumerate(order)}
    codes = [v.codes(spec) for v in vectors]

    nbrs = [set() for _ in vectors]
    for a in range(len(vectors)):
        ca = codes[a]
        for b in range(a + 1, len(vectors)):
            if _rank_le_one(ca, codes[b], spec):
                pa, pb = pos[a], pos[b]
                nbrs[pa].add(pb)
                nbrs[pb].add(pa)

    q = spec.q
    labels = []
    for idx in order:
        if idx == 0:
            labels.append("theta")
        else:
            labels.append("(" + ",".join(str(c) for c in codes[idx]) + ")")
    meta = GraphMeta(q=q, N=(q ** n - 1) // (q - 1), p=spec.p, k=spec.k, n=n)
    return DepGraph(len(vectors), tuple(frozenset(s) for s in nbrs), order, meta, part,
                    tuple(labels))


def build_windmill(q: int, N: int) -> DepGraph:
    """Hub 0 joined to N disjoint cliques of size q-1 (positions in blocks)."""
    if q < 2 or N < 1:
        raise ValueError(f"windmill needs q >= 2 and N >= 1, got q={q}, N={N}")
    s = q - 1
    edges = []
    for b in range(N):
        block = range(1 + b * s, 1 + (b + 1) * s)
        edges.extend((0, v) for v in block)
        edges.extend((u, v) for u in block for v in block if u < v)
    nv = 1 + N * s
    return DepGraph.from_edges(nv, edges, vertex_order=tuple(range(nv)),
                               meta=GraphMeta(q=q, N=N))


# -- matrices ---------------------------------------------------------------

def adjacency_matrix(g: DepGraph) -> np.ndarray:
    A = np.zeros((g.num_vertices, g.num_vertices), dtype=np.int64)
    for i, nb in enumerate(g.adjacency):
        for j in nb:
            A[i, j] = 1
    return A


def laplacian_matrix(g: DepGraph) -> np.ndarray:
    A = adjacency_matrix(g)
    return np.diag(A.sum(axis=1)) - A


def bfs_distances(g: DepGraph, source: int) -> list[int]:
    """Shortest-path lengths from source; -1 marks unreachable vertices."""
    dist = [-1] * g.num_vertices
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distance_matrix(g: DepGraph) -> np.ndarray:
    nv = g.num_vertices
    D = np.zeros((nv, nv), dtype=np.int64)
    for s in range(nv):
        row = bfs_distances(g, s)
        if min(row) < 0:
            raise DisconnectedGraphError(f"vertex {row.index(-1)} unreachable from {s}")
        D[s] = row
    return D


MATRICES = {
    "adjacency": adjacency_matrix,
    "laplacian": laplacian_matrix,
    "distance": distance_matrix,
}


# -- exports ----------------------------------------------------------------

def graph_to_dict(g: DepGraph) -> dict:
    out = {
        "meta": g.meta.to_dict() if g.meta else None,
        "vertex_order": list(g.vertex_order),
        "edges": [list(e) for e in g.edges()],
    }
    if g.partition is not None:
        out["classes"] = [list(c) for c in g.partition.classes]
    return out


def graph_to_json(g: DepGraph, indent: int | None = 2) -> str:
    return json.dumps(graph_to_dict(g), indent=indent)


def graph_to_dot(g: DepGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.num_vertices):
        if g.labels:
            label = g.labels[v]
        else:
            label = "theta" if v == 0 and g.meta is not None else str(v)
        lines.append(f'  {v} [label="{label}"];')
    for i, j in g.edges():
        lines.append(f"  {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def matrix_to_csv(M: Sequence[Sequence[int]] | np.ndarray) -> str:
    M = np.asarray(M)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["order", M.shape[0]])
    for row in M.tolist():
        w.writerow(row)
    return buf.getvalue()


def check_vertex_bound(nv: int, bound: int, what: str) -> None:
    if nv > bound:
        raise CapacityError(f"{what}: {nv} vertices exceeds bound {bound}")

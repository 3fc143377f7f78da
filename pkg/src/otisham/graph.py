"""Undirected simple graphs with deterministic iteration order.

Vertex labels are opaque strings.  Vertices, neighbours and edges are
always iterated in insertion order, so metrics, cycle extraction and
exports are reproducible run to run.
"""

from __future__ import annotations

import hashlib
import math
from collections import deque
from dataclasses import dataclass


class GraphError(ValueError):
    """Raised for malformed graph mutations or queries."""


class Graph:
    """Simple undirected graph: no self-loops, no parallel edges."""

    __slots__ = ("_adj", "_edge_set", "_edges")

    def __init__(self):
        self._adj: dict[str, list[str]] = {}
        self._edges: list[tuple[str, str]] = []
        self._edge_set: set[tuple[str, str]] = set()

    @classmethod
    def from_edges(cls, edges, vertices=()) -> "Graph":
        g = cls()
        for v in vertices:
            g.add_vertex(v)
        for u, v in edges:
            g.add_vertex(u)
            g.add_vertex(v)
            g.add_edge(u, v)
        return g

    def add_vertex(self, v: str) -> None:
        if not v or any(ch.isspace() for ch in v):
            raise GraphError(f"vertex label must be non-empty and whitespace-free: {v!r}")
        if v not in self._adj:
            self._adj[v] = []

    def add_edge(self, u: str, v: str) -> None:
        if u not in self._adj or v not in self._adj:
            missing = u if u not in self._adj else v
            raise GraphError(f"edge endpoint {missing!r} is not a declared vertex")
        if u == v:
            raise GraphError(f"self-loop rejected at {u!r}")
        key = (u, v) if u < v else (v, u)
        if key in self._edge_set:
            raise GraphError(f"parallel edge rejected: ({u!r}, {v!r})")
        self._edge_set.add(key)
        self._edges.append((u, v))
        self._adj[u].append(v)
        self._adj[v].append(u)

    def vertices(self) -> list[str]:
        return list(self._adj)

    def edges(self) -> list[tuple[str, str]]:
        return list(self._edges)

    def neighbors(self, v: str) -> list[str]:
        if v not in self._adj:
            raise GraphError(f"unknown vertex {v!r}")
        return list(self._adj[v])

    def degree(self, v: str) -> int:
        if v not in self._adj:
            raise GraphError(f"unknown vertex {v!r}")
        return len(self._adj[v])

    def has_vertex(self, v: str) -> bool:
        return v in self._adj

    def has_edge(self, u: str, v: str) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in self._edge_set

    @property
    def n_vertices(self) -> int:
        return len(self._adj)

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    def __contains__(self, v: str) -> bool:
        return v in self._adj

    def __repr__(self):
        return f"Graph(|V|={self.n_vertices}, |E|={self.n_edges})"


def graph_hash(graph: Graph) -> str:
    """Stable content hash over the sorted vertex and edge sets."""
    h = hashlib.sha256()
    for v in sorted(graph.vertices()):
        h.update(b"v")
        h.update(v.encode())
    for u, v in sorted(tuple(sorted(e)) for e in graph.edges()):
        h.update(b"e")
        h.update(u.encode())
        h.update(b" ")
        h.update(v.encode())
    return h.hexdigest()


@dataclass(frozen=True)
class HamCycle:
    """Cyclic vertex order certified against a host graph."""

    order: tuple[str, ...]

    def __len__(self):
        return len(self.order)

    def edge_set(self) -> set[tuple[str, str]]:
        n = len(self.order)
        out = set()
        for k in range(n):
            u, v = self.order[k], self.order[(k + 1) % n]
            out.add((u, v) if u < v else (v, u))
        return out


def cycle_violation(graph: Graph, order) -> str | None:
    """Why ``order`` is not a Hamiltonian cycle of ``graph`` (None if it is)."""
    if isinstance(order, HamCycle):
        order = order.order
    order = list(order)
    if len(order) != graph.n_vertices:
        return "length-mismatch"
    if len(set(order)) != len(order):
        return "duplicate-vertex"
    for v in order:
        if v not in graph:
            return "unknown-vertex"
    if len(order) < 3:
        return "too-short"
    for k, u in enumerate(order):
        v = order[(k + 1) % len(order)]
        if not graph.has_edge(u, v):
            return f"non-adjacent-step:{u}-{v}"
    return None


def is_hamiltonian_cycle(graph: Graph, order) -> bool:
    return cycle_violation(graph, order) is None


def max_edge_disjoint_ham_bound(graph: Graph) -> int:
    """Ceiling on pairwise edge-disjoint Hamiltonian cycles: floor(min degree / 2)."""
    if graph.n_vertices == 0:
        raise GraphError("empty graph")
    return min(graph.degree(v) for v in graph.vertices()) // 2


@dataclass(frozen=True)
class GraphMetrics:
    min_degree: int
    max_degree: int
    diameter: float  # math.inf when disconnected
    vertex_connectivity: int
    connectivity_exact: bool


def _eccentricity(adj: dict[str, list[str]], source: str) -> tuple[int, int]:
    """(max BFS depth from source, number of reached vertices)."""
    dist = {source: 0}
    q = deque([source])
    far = 0
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                far = max(far, dist[w])
                q.append(w)
    return far, len(dist)


def diameter(graph: Graph) -> float:
    """Exact diameter by all-pairs BFS; inf when disconnected."""
    verts = graph.vertices()
    if not verts:
        raise GraphError("empty graph")
    adj = {v: graph.neighbors(v) for v in verts}
    worst = 0
    for v in verts:
        ecc, reached = _eccentricity(adj, v)
        if reached != len(verts):
            return math.inf
        worst = max(worst, ecc)
    return float(worst)


def is_connected(graph: Graph) -> bool:
    verts = graph.vertices()
    if not verts:
        return True
    adj = {v: graph.neighbors(v) for v in verts}
    _, reached = _eccentricity(adj, verts[0])
    return reached == len(verts)


def _vertex_maxflow(graph: Graph, index: dict[str, int], s: str, t: str) -> int:
    """Internally-disjoint s-t path count via unit-capacity node splitting."""
    n = graph.n_vertices
    # node 2k = v_in, 2k+1 = v_out
    cap: dict[tuple[int, int], int] = {}
    arcs: dict[int, list[int]] = {k: [] for k in range(2 * n)}

    def add_arc(a, b, c):
        if (a, b) not in cap:
            cap[(a, b)] = 0
            cap[(b, a)] = cap.get((b, a), 0)
            arcs[a].append(b)
            arcs[b].append(a)
        cap[(a, b)] += c

    big = n + 1
    for v, k in index.items():
        add_arc(2 * k, 2 * k + 1, big if v in (s, t) else 1)
    for u, v in graph.edges():
        a, b = index[u], index[v]
        add_arc(2 * a + 1, 2 * b, 1)
        add_arc(2 * b + 1, 2 * a, 1)

    src, snk = 2 * index[s], 2 * index[t] + 1
    flow = 0
    while True:
        parent = {src: src}
        q = deque([src])
        while q and snk not in parent:
            a = q.popleft()
            for b in arcs[a]:
                if b not in parent and cap.get((a, b), 0) > 0:
                    parent[b] = a
                    q.append(b)
        if snk not in parent:
            return flow
        b = snk
        while b != src:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] = cap.get((b, a), 0) + 1
            b = a
        flow += 1


def _has_articulation(graph: Graph) -> bool:
    """Iterative lowpoint scan for cut vertices (assumes connected input)."""
    verts = graph.vertices()
    if len(verts) < 3:
        return False
    index = {v: k for k, v in enumerate(verts)}
    adj = [[index[w] for w in graph.neighbors(v)] for v in verts]
    n = len(verts)
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    timer = 0
    root = 0
    stack = [(root, 0)]
    disc[root] = low[root] = timer
    timer += 1
    root_children = 0
    while stack:
        v, ptr = stack[-1]
        if ptr < len(adj[v]):
            stack[-1] = (v, ptr + 1)
            w = adj[v][ptr]
            if disc[w] == -1:
                parent[w] = v
                disc[w] = low[w] = timer
                timer += 1
                if v == root:
                    root_children += 1
                stack.append((w, 0))
            elif w != parent[v]:
                low[v] = min(low[v], disc[w])
        else:
            stack.pop()
            p = parent[v]
            if p != -1:
                low[p] = min(low[p], low[v])
                if p != root and low[v] >= disc[p]:
                    return True
    return root_children > 1


def vertex_connectivity(graph: Graph, *, cap: int = 64) -> tuple[int, bool]:
    """(connectivity, exact?) -- exact max-flow value up to ``cap`` vertices,
    a cheap articulation-based lower bound beyond it."""
    verts = graph.vertices()
    n = len(verts)
    if n == 0:
        raise GraphError("empty graph")
    if n == 1:
        return 0, True
    if not is_connected(graph):
        return 0, True
    if graph.n_edges == n * (n - 1) // 2:
        return n - 1, True
    if n > cap:
        return (1 if _has_articulation(graph) else 2), False
    index = {v: k for k, v in enumerate(verts)}
    best = n - 1
    for a in range(n):
        for b in range(a + 1, n):
            u, v = verts[a], verts[b]
            if not graph.has_edge(u, v):
                best = min(best, _vertex_maxflow(graph, index, u, v))
                if best == 0:
                    return 0, True
    return best, True


def metrics(graph: Graph, *, connectivity_cap: int = 64) -> GraphMetrics:
    """Degree extremes, exact BFS diameter, and (capped) vertex connectivity."""
    verts = graph.vertices()
    if not verts:
        raise GraphError("empty graph")
    degs = [graph.degree(v) for v in verts]
    kappa, exact = vertex_connectivity(graph, cap=connectivity_cap)
    return GraphMetrics(
        min_degree=min(degs),
        max_degree=max(degs),
        diameter=0.0 if len(verts) == 1 else diameter(graph),
        vertex_connectivity=kappa,
        connectivity_exact=exact,
    )

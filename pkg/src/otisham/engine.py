"""Forced-edge propagation and exact Hamiltonicity decisions.

Every edge of a host graph carries one of three states: undecided, forced
(must lie on the cycle) or deleted (cannot).  Three rules run to fixpoint:

* saturation: a vertex with two forced edges deletes its other edges;
* two-live: a vertex left with exactly two usable edges forces both;
* chord cut: an undecided edge joining the two ends of one forced path is
  deleted whenever forcing it would close a cycle shorter than |V|.

Rules are applied in first-in-first-out order, with the whole-graph
pass scheduled ahead of any seeded edges, so consequences spread outward
from a seed in waves over a fully saturated baseline -- the order a hand
derivation follows.  The fixpoint is order-independent; only which
witness of an inconsistent state gets reported first depends on it.

A complete decider searches over the undecided edges with this propagation
as the pruning engine, and a counting refuter certifies non-Hamiltonicity
from degree surpluses alone.
"""

from __future__ import annotations

import random
import time
from collections import deque
from dataclasses import dataclass

from .graph import Graph, HamCycle, is_connected, is_hamiltonian_cycle

UNDECIDED, FORCED, DELETED = 0, 1, 2

VERTEX_UNDERFILLED = "vertex-underfilled"
VERTEX_OVERFILLED = "vertex-overfilled"
SHORT_SUBCYCLE = "short-subcycle"


@dataclass(frozen=True)
class Contradiction:
    """Witnessed impossibility: no Hamiltonian cycle extends the state."""

    kind: str
    vertex: str | None = None
    cycle: tuple[str, ...] | None = None

    def __str__(self):
        if self.kind == SHORT_SUBCYCLE and self.cycle:
            return f"{self.kind} of length {len(self.cycle)} through {self.cycle[0]}"
        return f"{self.kind} at {self.vertex}"


class IndexedGraph:
    """Array-indexed companion of a Graph used by the engine."""

    __slots__ = ("graph", "labels", "index", "edges", "edge_id", "incident")

    def __init__(self, graph: Graph):
        self.graph = graph
        self.labels = graph.vertices()
        self.index = {v: k for k, v in enumerate(self.labels)}
        self.edges: list[tuple[int, int]] = []
        self.edge_id: dict[tuple[int, int], int] = {}
        self.incident: list[list[int]] = [[] for _ in self.labels]
        for u, v in graph.edges():
            a, b = self.index[u], self.index[v]
            key = (a, b) if a < b else (b, a)
            eid = len(self.edges)
            self.edges.append(key)
            self.edge_id[key] = eid
            self.incident[a].append(eid)
            self.incident[b].append(eid)

    def eid(self, u: str, v: str) -> int:
        a, b = self.index[u], self.index[v]
        key = (a, b) if a < b else (b, a)
        try:
            return self.edge_id[key]
        except KeyError:
            raise ValueError(f"({u!r}, {v!r}) is not an edge of the graph") from None


class EdgeAssignment:
    """Tri-state edge labelling with cached per-vertex counts.

    Transitions are monotone: an edge moves undecided -> forced or
    undecided -> deleted at most once.  ``steps`` counts elementary engine
    operations (state transitions plus worklist pops).
    """

    __slots__ = (
        "ig",
        "state",
        "forced",
        "live",
        "chain_end",
        "chain_size",
        "n_undecided",
        "n_forced",
        "closed",
        "conflict",
        "queue",
        "primed",
        "steps",
        "transitions",
        "trace",
    )

    def __init__(self, ig: IndexedGraph):
        self.ig = ig
        n, m = len(ig.labels), len(ig.edges)
        self.state = bytearray(m)
        self.forced = [0] * n
        self.live = [len(ig.incident[k]) for k in range(n)]
        self.chain_end = list(range(n))
        self.chain_size = [1] * n
        self.n_undecided = m
        self.n_forced = 0
        self.closed = False
        self.conflict: Contradiction | None = None
        self.queue: deque[int] = deque()
        self.primed = False
        self.steps = 0
        self.transitions = 0
        self.trace: list | None = None  # optional (op, u, v) log for debugging

    @classmethod
    def for_graph(cls, graph: Graph) -> "EdgeAssignment":
        return cls(IndexedGraph(graph))

    def copy(self) -> "EdgeAssignment":
        new = object.__new__(EdgeAssignment)
        new.ig = self.ig
        new.state = bytearray(self.state)
        new.forced = self.forced[:]
        new.live = self.live[:]
        new.chain_end = self.chain_end[:]
        new.chain_size = self.chain_size[:]
        new.n_undecided = self.n_undecided
        new.n_forced = self.n_forced
        new.closed = self.closed
        new.conflict = self.conflict
        new.queue = deque(self.queue)
        new.primed = self.primed
        new.steps = 0
        new.transitions = 0
        new.trace = None
        return new

    # -- state inspection -------------------------------------------------

    def edge_state(self, u: str, v: str) -> int:
        return self.state[self.ig.eid(u, v)]

    def forced_pairs(self) -> list[tuple[str, str]]:
        lab = self.ig.labels
        return [
            (lab[a], lab[b])
            for eid, (a, b) in enumerate(self.ig.edges)
            if self.state[eid] == FORCED
        ]

    def deleted_pairs(self) -> list[tuple[str, str]]:
        lab = self.ig.labels
        return [
            (lab[a], lab[b])
            for eid, (a, b) in enumerate(self.ig.edges)
            if self.state[eid] == DELETED
        ]

    def undecided_pairs(self) -> list[tuple[str, str]]:
        lab = self.ig.labels
        return [
            (lab[a], lab[b])
            for eid, (a, b) in enumerate(self.ig.edges)
            if self.state[eid] == UNDECIDED
        ]

    def snapshot(self) -> tuple[bytes, bool]:
        return bytes(self.state), self.conflict is not None

    # -- primitives --------------------------------------------------------

    def seed_force(self, u: str, v: str) -> None:
        self._force(self.ig.eid(u, v))

    def seed_delete(self, u: str, v: str) -> None:
        self._delete(self.ig.eid(u, v))

    def _walk_chain(self, start: int) -> list[str]:
        """Labels along the forced path/cycle through ``start``."""
        ig = self.ig
        out = [start]
        prev = -1
        cur = start
        while True:
            nxt = -1
            for eid in ig.incident[cur]:
                if self.state[eid] == FORCED:
                    a, b = ig.edges[eid]
                    w = b if a == cur else a
                    if w != prev:
                        nxt = w
                        break
            if nxt == -1 or nxt == start:
                break
            out.append(nxt)
            prev, cur = cur, nxt
        return [ig.labels[k] for k in out]

    def _force(self, eid: int) -> None:
        if self.conflict is not None:
            return
        st = self.state[eid]
        if st == FORCED:
            return
        a, b = self.ig.edges[eid]
        lab = self.ig.labels
        if st == DELETED:
            # forcing an edge the state already excludes: its endpoint is
            # out of usable edges
            v = a if self.forced[a] >= 2 or self.live[a] <= 2 else b
            self.conflict = Contradiction(VERTEX_OVERFILLED, vertex=lab[v])
            return
        if self.forced[a] >= 2:
            self.conflict = Contradiction(VERTEX_OVERFILLED, vertex=lab[a])
            return
        if self.forced[b] >= 2:
            self.conflict = Contradiction(VERTEX_OVERFILLED, vertex=lab[b])
            return
        end_a, end_b = self.chain_end[a], self.chain_end[b]
        n = len(lab)
        if end_a == b:
            # closing the chain that already joins a and b
            size = self.chain_size[a]
            if size < n:
                self.state[eid] = FORCED  # include it in the witness walk
                cyc = self._walk_chain(a)
                if size == n - 1:
                    # a cycle missing exactly one vertex strands it: every
                    # neighbour it has sits saturated on the cycle
                    stranded = (set(lab) - set(cyc)).pop()
                    self.conflict = Contradiction(VERTEX_UNDERFILLED, vertex=stranded)
                else:
                    self.conflict = Contradiction(SHORT_SUBCYCLE, cycle=tuple(cyc))
                return
            self.closed = True
        self.state[eid] = FORCED
        if self.trace is not None:
            self.trace.append(("force", lab[a], lab[b]))
        self.transitions += 1
        self.steps += 1
        self.n_undecided -= 1
        self.n_forced += 1
        self.forced[a] += 1
        self.forced[b] += 1
        self.queue.append(a)
        self.queue.append(b)
        if not self.closed and end_a != b:
            merged = self.chain_size[end_a] + self.chain_size[end_b]
            self.chain_end[end_a] = end_b
            self.chain_end[end_b] = end_a
            self.chain_size[end_a] = merged
            self.chain_size[end_b] = merged
            if merged < n:
                key = (end_a, end_b) if end_a < end_b else (end_b, end_a)
                chord = self.ig.edge_id.get(key)
                if chord is not None and self.state[chord] == UNDECIDED:
                    if self.live[end_a] == 2 or self.live[end_b] == 2:
                        # the chord is both required (two-live) and
                        # forbidden (it closes a short cycle): report the
                        # cycle, the real obstruction
                        self.state[chord] = FORCED
                        cyc = self._walk_chain(end_a)
                        self.state[chord] = UNDECIDED
                        if merged == n - 1:
                            stranded = (set(lab) - set(cyc)).pop()
                            self.conflict = Contradiction(VERTEX_UNDERFILLED, vertex=stranded)
                        else:
                            self.conflict = Contradiction(SHORT_SUBCYCLE, cycle=tuple(cyc))
                        return
                    self._delete(chord)
                    if self.conflict is not None:
                        return
        # saturation applies the moment a vertex owns two cycle edges
        for v in (a, b):
            if self.forced[v] == 2:
                for other in self.ig.incident[v]:
                    if self.state[other] == UNDECIDED:
                        self._delete(other)
                        if self.conflict is not None:
                            return

    def _delete(self, eid: int) -> None:
        if self.conflict is not None:
            return
        st = self.state[eid]
        if st == DELETED:
            return
        if st == FORCED:
            a, b = self.ig.edges[eid]
            v = a if self.live[a] <= 2 else b
            self.conflict = Contradiction(VERTEX_UNDERFILLED, vertex=self.ig.labels[v])
            return
        a, b = self.ig.edges[eid]
        self.state[eid] = DELETED
        lab = self.ig.labels
        if self.trace is not None:
            self.trace.append(("delete", lab[a], lab[b]))
        self.transitions += 1
        self.steps += 1
        self.n_undecided -= 1
        for v in (a, b):
            self.live[v] -= 1
            if self.live[v] < 2:
                self.conflict = Contradiction(VERTEX_UNDERFILLED, vertex=lab[v])
                return
            self.queue.append(v)

    def _apply_rules(self, v: int) -> None:
        ig = self.ig
        if self.forced[v] == 2:
            # saturation: drop every other incident edge
            for eid in ig.incident[v]:
                if self.state[eid] == UNDECIDED:
                    self._delete(eid)
                    if self.conflict is not None:
                        return
        elif self.live[v] == 2:
            # two-live: both remaining edges must be on the cycle
            for eid in ig.incident[v]:
                if self.state[eid] == UNDECIDED:
                    self._force(eid)
                    if self.conflict is not None:
                        return

    def run(self, rng: random.Random | None = None) -> Contradiction | None:
        """Apply rules until fixpoint or contradiction."""
        q = self.queue
        while q and self.conflict is None:
            if rng is None:
                v = q.popleft()
            else:
                k = rng.randrange(len(q))
                q.rotate(-k)
                v = q.popleft()
            self.steps += 1
            self._apply_rules(v)
        if self.conflict is not None:
            q.clear()
        return self.conflict

    def prime(self) -> None:
        """Schedule a whole-graph rule pass.

        Later calls are no-ops: once an assignment has been through a full
        pass, only vertices touched since then need revisiting.
        """
        if self.primed:
            return
        self.queue.extendleft(reversed(range(len(self.ig.labels))))
        self.primed = True

    def is_complete(self) -> bool:
        return self.conflict is None and self.n_undecided == 0

    def extract_cycle(self) -> HamCycle:
        if not self.is_complete():
            raise ValueError("assignment is not a completed cycle")
        ig = self.ig
        start = 0
        order = self._walk_chain(start)
        if len(order) != len(ig.labels):
            raise ValueError("forced edges do not cover every vertex")
        return HamCycle(order=tuple(order))


def propagate(assignment: EdgeAssignment, *, rng: random.Random | None = None):
    """Run the rules to fixpoint.  Returns the assignment, or the first
    Contradiction encountered."""
    assignment.prime()
    conflict = assignment.run(rng=rng)
    return conflict if conflict is not None else assignment


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 10_000_000
    max_seconds: float = 600.0


HAMILTONIAN = "hamiltonian"
NON_HAMILTONIAN = "non-hamiltonian"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class HamVerdict:
    status: str
    cycle: HamCycle | None = None
    nodes: int = 0
    max_depth: int = 0
    steps: int = 0  # total propagation steps over the whole search
    reason: str | None = None

    @property
    def is_hamiltonian(self) -> bool:
        return self.status == HAMILTONIAN


def _branch_edge(asg: EdgeAssignment) -> int:
    """Undecided edge at a minimum-live vertex; ties by vertex index, then
    by the neighbour's index."""
    best_v = -1
    best_live = None
    for v in range(len(asg.ig.labels)):
        if asg.live[v] > asg.forced[v]:  # has an undecided incident edge
            if best_live is None or asg.live[v] < best_live:
                best_live = asg.live[v]
                best_v = v
    best_eid = -1
    best_other = None
    for eid in asg.ig.incident[best_v]:
        if asg.state[eid] == UNDECIDED:
            a, b = asg.ig.edges[eid]
            other = b if a == best_v else a
            if best_other is None or other < best_other:
                best_other = other
                best_eid = eid
    return best_eid


def decide(
    graph: Graph,
    seed: EdgeAssignment | None = None,
    budget: SearchBudget | None = None,
) -> HamVerdict:
    """Complete branch-and-propagate Hamiltonicity decision.

    Branches on an undecided edge at a minimum-live vertex, trying forced
    before deleted, with propagation closing each node.  Exhausting the
    tree proves non-Hamiltonicity; ``Inconclusive`` only on budget
    exhaustion.
    """
    budget = budget or SearchBudget()
    n = graph.n_vertices
    if n < 3 or not is_connected(graph):
        return HamVerdict(NON_HAMILTONIAN, nodes=0, max_depth=0)
    if min(graph.degree(v) for v in graph.vertices()) < 2:
        return HamVerdict(NON_HAMILTONIAN, nodes=0, max_depth=0)
    if seed is not None and seed.ig.labels != graph.vertices():
        raise ValueError("seed assignment was built for a different graph")
    root = seed.copy() if seed is not None else EdgeAssignment.for_graph(graph)
    root.prime()
    t0 = time.monotonic()
    nodes = 0
    max_depth = 0
    steps = 0
    stack: list[tuple[EdgeAssignment, int]] = [(root, 0)]
    while stack:
        if nodes >= budget.max_nodes:
            return HamVerdict(INCONCLUSIVE, nodes=nodes, max_depth=max_depth, steps=steps, reason="node-budget")
        if time.monotonic() - t0 > budget.max_seconds:
            return HamVerdict(INCONCLUSIVE, nodes=nodes, max_depth=max_depth, steps=steps, reason="time-budget")
        asg, depth = stack.pop()
        nodes += 1
        max_depth = max(max_depth, depth)
        conflict = asg.run()
        steps += asg.steps
        asg.steps = 0
        if conflict is not None:
            continue
        if asg.is_complete():
            cycle = asg.extract_cycle()
            if not is_hamiltonian_cycle(graph, cycle):
                raise AssertionError("engine produced an invalid cycle witness")
            return HamVerdict(HAMILTONIAN, cycle=cycle, nodes=nodes, max_depth=max_depth, steps=steps)
        eid = _branch_edge(asg)
        deleted_branch = asg.copy()
        deleted_branch._delete(eid)
        asg._force(eid)
        stack.append((deleted_branch, depth + 1))
        stack.append((asg, depth + 1))
    return HamVerdict(NON_HAMILTONIAN, nodes=nodes, max_depth=max_depth, steps=steps)


# -- counting refutation ---------------------------------------------------


@dataclass(frozen=True)
class CountingCertificate:
    """Non-Hamiltonicity witness: more unavoidably-unused edges than the
    graph has to spare."""

    edge_budget: int  # |E| - |V|
    high_degree_family: tuple[str, ...]
    family_bound: int  # sum of (deg - 2) over the family
    independent_set: tuple[str, ...]
    independent_bound: int
    total_bound: int


def _max_independent_set(adj: dict[str, set[str]]) -> set[str]:
    """Exact maximum independent set by branch and bound.

    Iteration is sorted throughout so the returned set is deterministic.
    """

    def solve(vertices: set[str]) -> set[str]:
        for v in sorted(vertices):
            if not (adj[v] & vertices):
                rest = solve(vertices - {v})
                rest.add(v)
                return rest
        if not vertices:
            return set()
        pivot = max(sorted(vertices), key=lambda v: len(adj[v] & vertices))
        without = solve(vertices - {pivot})
        with_v = solve(vertices - {pivot} - adj[pivot])
        with_v.add(pivot)
        return with_v if len(with_v) > len(without) else without

    return solve(set(adj))


def counting_refutation(
    graph: Graph, *, mis_candidate_cap: int = 40
) -> CountingCertificate | None:
    """Refute Hamiltonicity by counting edges no cycle can use.

    A cycle uses exactly 2 edges per vertex, so |E| - |V| edges are spare.
    Each vertex of an independent family of degree >= 4 pins deg - 2 unused
    edges; degree-3 vertices with no high-degree neighbour add one more
    each when pairwise independent.  If the pinned total exceeds the spare
    budget, no Hamiltonian cycle exists.  Returns None when inconclusive
    (including when the candidate set exceeds ``mis_candidate_cap``).
    """
    budget = graph.n_edges - graph.n_vertices
    if budget < 0:
        return None
    high: list[str] = []
    for v in sorted(graph.vertices()):
        if graph.degree(v) >= 4 and all(not graph.has_edge(v, w) for w in high):
            high.append(v)
    family_bound = sum(graph.degree(v) - 2 for v in high)
    high_or_excluded = {v for v in graph.vertices() if graph.degree(v) >= 4}
    candidates = [
        v
        for v in graph.vertices()
        if graph.degree(v) == 3
        and not any(w in high_or_excluded for w in graph.neighbors(v))
    ]
    if len(candidates) > mis_candidate_cap:
        return None
    cand_set = set(candidates)
    adj = {v: {w for w in graph.neighbors(v) if w in cand_set} for v in candidates}
    mis = sorted(_max_independent_set(adj))
    total = family_bound + len(mis)
    if total <= budget:
        return None
    return CountingCertificate(
        edge_budget=budget,
        high_degree_family=tuple(high),
        family_bound=family_bound,
        independent_set=tuple(mis),
        independent_bound=len(mis),
        total_bound=total,
    )

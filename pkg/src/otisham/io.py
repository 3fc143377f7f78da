"""Text interchange: edge-list files, DOT export, cycle certificates."""

from __future__ import annotations

import json

from .graph import Graph, GraphError, HamCycle, graph_hash, is_hamiltonian_cycle


def write_edge_list(graph: Graph) -> str:
    """``V <count>`` header, then one ``u v`` line per edge.

    Isolated vertices are emitted as bare-label lines so every graph
    round-trips.
    """
    lines = [f"V {graph.n_vertices}"]
    for v in graph.vertices():
        if graph.degree(v) == 0:
            lines.append(v)
    for u, v in graph.edges():
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("V "):
        raise GraphError("edge list must start with a 'V <count>' line")
    try:
        count = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise GraphError(f"bad vertex count line: {lines[0]!r}") from None
    g = Graph()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) == 1:
            g.add_vertex(parts[0])
        elif len(parts) == 2:
            g.add_vertex(parts[0])
            g.add_vertex(parts[1])
            g.add_edge(parts[0], parts[1])
        else:
            raise GraphError(f"bad edge line: {ln!r}")
    if g.n_vertices != count:
        raise GraphError(f"declared {count} vertices, found {g.n_vertices}")
    return g


def to_dot(graph: Graph, *, group_clusters: bool = False, name: str = "g") -> str:
    """DOT text; with ``group_clusters`` vertices sharing the 'g:' label
    prefix are grouped into DOT subgraphs (one per OTIS cluster)."""
    out = [f'graph "{name}" {{']
    if group_clusters and all(":" in v for v in graph.vertices()):
        groups: dict[str, list[str]] = {}
        for v in graph.vertices():
            groups.setdefault(v.split(":", 1)[0], []).append(v)
        for gname, members in groups.items():
            out.append(f'  subgraph "cluster_{gname}" {{')
            out.append(f'    label="{gname}";')
            for v in members:
                out.append(f'    "{v}";')
            out.append("  }")
    else:
        for v in graph.vertices():
            out.append(f'  "{v}";')
    for u, v in graph.edges():
        out.append(f'  "{u}" -- "{v}";')
    out.append("}")
    return "\n".join(out) + "\n"


def write_cycle_certificate(graph: Graph, cycle, *, verified: bool | None = None) -> str:
    order = list(cycle.order if isinstance(cycle, HamCycle) else cycle)
    if verified is None:
        verified = is_hamiltonian_cycle(graph, order)
    payload = {"graph_hash": graph_hash(graph), "order": order, "verified": verified}
    return json.dumps(payload, indent=None, separators=(",", ":"), sort_keys=True)


def read_cycle_certificate(text: str) -> dict:
    payload = json.loads(text)
    for field in ("graph_hash", "order", "verified"):
        if field not in payload:
            raise GraphError(f"cycle certificate missing {field!r}")
    return payload

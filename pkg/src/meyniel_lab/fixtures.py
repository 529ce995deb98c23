"""Small classical graphs with known cop numbers."""

from __future__ import annotations

from .cayley import Graph


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], name=f"P{n}")


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)], name=f"K{n}")


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)], name=f"K1,{leaves}")


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner, name="petersen")


def remove_vertex(graph: Graph, v: int) -> Graph:
    """Induced subgraph on all vertices but v, relabelled to stay contiguous."""
    relabel = {u: i for i, u in enumerate(u for u in range(graph.n) if u != v)}
    edges = [(relabel[a], relabel[b]) for a, b in graph.edges() if v not in (a, b)]
    return Graph.from_edges(graph.n - 1, edges, name=f"{graph.name}-v{v}")


NAMED = {"petersen": petersen}

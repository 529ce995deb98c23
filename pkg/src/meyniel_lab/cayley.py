"""Cayley graphs of abelian groups, plain simple graphs, and their
serialization to edge lists and graph6.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import AsymmetryError, DomainError, IdentityInSetError, SizeError
from .groups import AbelianGroup, GroupElement

VERTEX_CAP = 10**6
GRAPH6_MAX = 68719476735


class Graph:
    """Finite simple undirected graph on vertices 0..n-1.

    Immutable once built; ``adj[v]`` is the sorted tuple of neighbours of v.
    """

    def __init__(self, adj: Sequence[Iterable[int]], name: str = ""):
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(set(nb))) for nb in adj)
        self.name = name
        n = len(self.adj)
        for v, nb in enumerate(self.adj):
            for u in nb:
                if not 0 <= u < n or u == v:
                    raise DomainError(f"bad neighbour {u} of vertex {v}")
                if v not in self.adj[u]:
                    raise DomainError(f"edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "") -> Graph:
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise DomainError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj, name=name)

    @property
    def n(self) -> int:
        return len(self.adj)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name or ''} n={self.n}>"

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def min_degree(self) -> int:
        return min((len(nb) for nb in self.adj), default=0)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nb in enumerate(self.adj):
            for v in nb:
                if u < v:
                    yield (u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.closed_masks[u] >> v) & 1 == 1 and u != v

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        """Bitmask of the closed neighbourhood N[v] for every vertex."""
        out = []
        for v, nb in enumerate(self.adj):
            m = 1 << v
            for u in nb:
                m |= 1 << u
            out.append(m)
        return tuple(out)

    @cached_property
    def closed_table(self) -> np.ndarray:
        """(n, D) array whose row v lists N[v], padded by repeating v."""
        width = max((len(nb) for nb in self.adj), default=0) + 1
        table = np.empty((self.n, width), dtype=np.int64)
        for v, nb in enumerate(self.adj):
            row = (v,) + nb
            table[v, : len(row)] = row
            table[v, len(row) :] = v
        return table

    @cached_property
    def distances(self) -> tuple[tuple[int, ...], ...]:
        """All-pairs BFS distances; -1 for unreachable pairs."""
        rows = []
        for s in range(self.n):
            dist = [-1] * self.n
            dist[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        queue.append(w)
            rows.append(tuple(dist))
        return tuple(rows)

    def is_connected(self) -> bool:
        return is_connected(self)

    def common_neighbors(self, u: int, v: int) -> set[int]:
        return common_neighbors(self, u, v)


@dataclass(frozen=True)
class GeneratorSet:
    """Symmetric identity-free subset S of an abelian group."""

    group: AbelianGroup
    elements: frozenset[GroupElement]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.elements

    def sorted(self) -> list[GroupElement]:
        return sorted(self.elements, key=lambda g: g.rank)

    @cached_property
    def ranks(self) -> np.ndarray:
        return np.array(sorted(g.rank for g in self.elements), dtype=np.int64)

    @cached_property
    def rank_set(self) -> frozenset[int]:
        return frozenset(int(r) for r in self.ranks)

    def union(self, more: Iterable[GroupElement]) -> GeneratorSet:
        return make_generator_set(self.group, list(self.elements) + list(more))


def make_generator_set(group: AbelianGroup, elements: Iterable[GroupElement]) -> GeneratorSet:
    elems = frozenset(elements)
    for g in elems:
        if g.group != group:
            raise DomainError(f"element {g} does not belong to {group!r}")
        if g.is_zero():
            raise IdentityInSetError("generator set contains the identity")
    for g in sorted(elems, key=lambda e: e.rank):
        if -g not in elems:
            raise AsymmetryError(-g)
    return GeneratorSet(group, elems)


class CayleyGraph(Graph):
    """Cayley graph C(G, S): g ~ h iff g - h is in S."""

    def __init__(self, generators: GeneratorSet, adj: Sequence[Iterable[int]], name: str = ""):
        self.group = generators.group
        self.generators = generators
        super().__init__(adj, name=name)

    def element(self, v: int) -> GroupElement:
        return self.group.unrank(v)

    def vertex(self, g: GroupElement) -> int:
        return self.group.rank(g)


def build_graph(gen: GeneratorSet, name: str = "", vertex_cap: int = VERTEX_CAP) -> CayleyGraph:
    group = gen.group
    n = group.order
    if n > vertex_cap:
        raise SizeError(f"group order {n} exceeds the vertex cap {vertex_cap}")
    vertices = np.arange(n, dtype=np.int64)
    if len(gen):
        table = group.add_ranks(vertices[:, None], gen.ranks[None, :])
        table.sort(axis=1)
        adj = [tuple(row) for row in table.tolist()]
    else:
        adj = [() for _ in range(n)]
    graph = CayleyGraph(gen, adj, name=name)
    if any(len(nb) != len(gen) for nb in graph.adj):
        raise AssertionError("Cayley graph is not |S|-regular")
    return graph


def is_connected(graph: Graph) -> bool:
    """BFS from vertex 0 (the identity for Cayley graphs)."""
    if graph.n == 0:
        return True
    seen = bytearray(graph.n)
    seen[0] = 1
    count = 1
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in graph.adj[u]:
            if not seen[w]:
                seen[w] = 1
                count += 1
                queue.append(w)
    return count == graph.n


def common_neighbors(graph: Graph, u: int, v: int) -> set[int]:
    if u == v:
        raise DomainError("common neighbours need two distinct vertices")
    return set(graph.adj[u]).intersection(graph.adj[v])


# -- serialization ------------------------------------------------------------


def export_edges(graph: Graph, format: str = "edge-list") -> bytes:
    """Serialize under canonical vertex ranks.

    ``edge-list``: one ``"u v\\n"`` line per edge, u < v, sorted.
    ``graph6``: the graph6 string followed by a newline.
    """
    if format in ("edge-list", "edges"):
        return "".join(f"{u} {v}\n" for u, v in graph.edges()).encode("ascii")
    if format == "graph6":
        return to_graph6(graph) + b"\n"
    raise DomainError(f"unknown export format {format!r}")


def parse_edge_list(data: bytes | str, n: int | None = None) -> Graph:
    if isinstance(data, bytes):
        data = data.decode("ascii")
    edges = []
    for lineno, line in enumerate(data.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DomainError(f"line {lineno}: expected 'u v', got {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return Graph.from_edges(n, edges)


def _graph6_size(n: int) -> bytes:
    if n < 0 or n > GRAPH6_MAX:
        raise SizeError(f"graph6 is undefined for n = {n}")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def to_graph6(graph: Graph) -> bytes:
    n = graph.n
    header = _graph6_size(n)
    nbits = n * (n - 1) // 2
    bits = np.zeros(nbits + (-nbits) % 6, dtype=np.uint8)
    # bit x(i, j), i < j, sits at position j*(j-1)/2 + i
    for i, j in graph.edges():
        bits[j * (j - 1) // 2 + i] = 1
    groups = bits.reshape(-1, 6)
    values = groups @ np.array([32, 16, 8, 4, 2, 1], dtype=np.int64) + 63
    return header + bytes(values.astype(np.uint8).tolist())


def from_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if data[0] != 126:
        n, body = data[0] - 63, data[1:]
    elif data[1] != 126:
        n = sum((data[1 + i] - 63) << s for i, s in enumerate((12, 6, 0)))
        body = data[4:]
    else:
        n = sum((data[2 + i] - 63) << s for i, s in enumerate((30, 24, 18, 12, 6, 0)))
        body = data[8:]
    bits = []
    for byte in body:
        v = byte - 63
        bits.extend((v >> s) & 1 for s in (5, 4, 3, 2, 1, 0))
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return Graph.from_edges(n, edges)

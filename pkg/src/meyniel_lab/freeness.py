"""Structural checks: triangles, K_{2,t} subgraphs and non-trivial 4-cycles.

Checks phrased on a generator set work without materializing the graph.
A zero-sum 4-tuple of generators is *trivial* when it splits into two
pairs that each sum to zero; those 4-cycles exist in every Cayley graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .cayley import CayleyGraph, GeneratorSet, Graph
from .errors import CharacteristicError, DomainError, InconsistencyError
from .groups import GroupElement, is_prime


@dataclass(frozen=True)
class K2tVerdict:
    t: int
    free: bool
    pair: tuple[int, int] | None = None
    common: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        out: dict = {"t": self.t, "free": self.free}
        if not self.free:
            out["witness"] = {"pair": list(self.pair), "common_neighbors": list(self.common)}
        return out


@dataclass
class FreenessReport:
    triangle_free: bool
    triangle_witness: tuple | None = None
    k2t: dict[int, K2tVerdict] = field(default_factory=dict)
    nontrivial_4cycle_free: bool | None = None
    cycle_witness: tuple[GroupElement, ...] | None = None

    def __post_init__(self):
        if self.nontrivial_4cycle_free and 3 in self.k2t and not self.k2t[3].free:
            raise InconsistencyError("no non-trivial 4-cycle, yet a K_{2,3} was found")

    def k2t_free(self, t: int) -> bool:
        """True if verified K_{2,t}-free directly or via a smaller t."""
        if self.nontrivial_4cycle_free and t >= 3:
            return True
        return any(v.free for s, v in self.k2t.items() if s <= t)

    def to_json(self) -> dict:
        tri = {"free": self.triangle_free}
        if self.triangle_witness is not None:
            tri["witness"] = [_jsonable(x) for x in self.triangle_witness]
        cyc: dict = {"free": self.nontrivial_4cycle_free}
        if self.cycle_witness is not None:
            cyc["witness"] = [list(g.coords) for g in self.cycle_witness]
        return {
            "triangle": tri,
            "k2t": {str(t): v.to_json() for t, v in sorted(self.k2t.items())},
            "nontrivial_4cycle": cyc,
        }


def _jsonable(x):
    return list(x.coords) if isinstance(x, GroupElement) else int(x)


# -- triangles -------------------------------------------------------------------


def check_triangle_free(S: GeneratorSet) -> tuple[bool, tuple[GroupElement, ...] | None]:
    """C(G, S) has a triangle iff s1 + s2 + s3 = 0 for some s_i in S."""
    elems = S.sorted()
    for s1 in elems:
        for s2 in elems:
            s3 = -(s1 + s2)
            if s3 in S.elements:
                return False, (s1, s2, s3)
    return True, None


def triangle_free_graph(graph: Graph) -> tuple[bool, tuple[int, int, int] | None]:
    """Vertex-level search, for graphs without generator structure."""
    masks = graph.closed_masks
    # a triangle's least vertex u and middle vertex v find the top one above
    for u in range(graph.n):
        for v in graph.adj[u]:
            if v <= u:
                continue
            both = masks[u] & masks[v] & ~((1 << u) | (1 << v))
            both >>= v + 1
            if both:
                w = v + 1 + ((both & -both).bit_length() - 1)
                return False, (u, v, w)
    return True, None


# -- K_{2,t} ---------------------------------------------------------------------


def _common_counts_from_identity(S: GeneratorSet, chunk: int = 1 << 16) -> np.ndarray:
    """counts[d] = |S ∩ (d + S)|, the common neighbourhood size of 0 and d."""
    group = S.group
    n = group.order
    in_s = np.zeros(n, dtype=bool)
    in_s[S.ranks] = True
    counts = np.zeros(n, dtype=np.int64)
    for start in range(0, n, chunk):
        d = np.arange(start, min(n, start + chunk), dtype=np.int64)
        counts[start : start + d.size] = in_s[group.add_ranks(d[:, None], S.ranks[None, :])].sum(axis=1)
    return counts


def check_k2t_free(graph: Graph | GeneratorSet, t: int) -> K2tVerdict:
    """Every pair of distinct vertices has fewer than t common neighbours.

    Cayley inputs fix the first vertex at 0 by vertex-transitivity; other
    graphs fall back to the all-pairs count.
    """
    if t < 2:
        raise DomainError(f"t must be >= 2, got {t}")
    if isinstance(graph, CayleyGraph):
        gens = graph.generators
    elif isinstance(graph, GeneratorSet):
        gens = graph
    else:
        return k2t_free_all_pairs(graph, t)
    counts = _common_counts_from_identity(gens)
    counts[0] = 0
    bad = np.flatnonzero(counts >= t)
    if bad.size == 0:
        return K2tVerdict(t, True)
    d = int(bad[0])
    group = gens.group
    shifted = group.add_ranks(d, gens.ranks)
    common = tuple(sorted(int(w) for w in shifted if int(w) in gens.rank_set))
    return K2tVerdict(t, False, (0, d), common)


def common_count_matrix(graph: Graph) -> np.ndarray:
    a = np.zeros((graph.n, graph.n), dtype=np.int64)
    for u, nb in enumerate(graph.adj):
        a[u, list(nb)] = 1
    return a @ a


def k2t_free_all_pairs(graph: Graph, t: int) -> K2tVerdict:
    if t < 2:
        raise DomainError(f"t must be >= 2, got {t}")
    counts = common_count_matrix(graph)
    np.fill_diagonal(counts, 0)
    bad = np.argwhere(np.triu(counts) >= t)
    if bad.size == 0:
        return K2tVerdict(t, True)
    u, v = (int(x) for x in bad[0])
    return K2tVerdict(t, False, (u, v), tuple(sorted(set(graph.adj[u]) & set(graph.adj[v]))))


# -- 4-cycles ----------------------------------------------------------------------


def is_trivial_4tuple(a: GroupElement, b: GroupElement, c: GroupElement, d: GroupElement) -> bool:
    for (w, x), (y, z) in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
        if (w + x).is_zero() and (y + z).is_zero():
            return True
    return False


def find_nontrivial_4cycle(S: GeneratorSet) -> tuple[GroupElement, ...] | None:
    """Generators (a, b, c, d) summing to zero with no inverse pairing.

    a + b + c + d = 0 with c = -x, d = -y is trivial exactly when a + b = 0
    or {x, y} = {a, b}; so a non-trivial cycle exists iff some nonzero
    pair sum is reached by two different unordered pairs.
    """
    elems = S.sorted()
    first: dict[GroupElement, tuple[GroupElement, GroupElement]] = {}
    for i, a in enumerate(elems):
        for b in elems[i:]:
            total = a + b
            if total.is_zero():
                continue
            other = first.get(total)
            if other is None:
                first[total] = (a, b)
                continue
            x, y = other
            return (x, y, -a, -b)
    return None


def nontrivial_4cycle_bruteforce(S: GeneratorSet) -> tuple[GroupElement, ...] | None:
    elems = S.sorted()
    for quad in itertools.product(elems, repeat=4):
        a, b, c, d = quad
        if (a + b + c + d).is_zero() and not is_trivial_4tuple(*quad):
            return quad
    return None


# -- number-theoretic oracle ---------------------------------------------------------


def equal_sums_solutions(p: int) -> int:
    """Check every (a, b, c, d) in Z_p^4 with a+b = c+d and a^2+b^2 = c^2+d^2
    has (a, b) = (c, d) or (a, b) = (d, c); return the number of solutions."""
    if p < 3 or not is_prime(p):
        raise CharacteristicError(f"p must be an odd prime, got {p}")
    a = np.arange(p).reshape(p, 1, 1, 1)
    b = np.arange(p).reshape(1, p, 1, 1)
    c = np.arange(p).reshape(1, 1, p, 1)
    d = np.arange(p).reshape(1, 1, 1, p)
    sols = ((a + b - c - d) % p == 0) & ((a * a + b * b - c * c - d * d) % p == 0)
    conform = ((a == c) & (b == d)) | ((a == d) & (b == c))
    bad = np.argwhere(sols & ~conform)
    if bad.size:
        raise InconsistencyError(f"counterexample {tuple(int(x) for x in bad[0])} mod {p}")
    return int(sols.sum())


# -- aggregate ---------------------------------------------------------------------


def check_freeness(graph: Graph | GeneratorSet, ts=(3,)) -> FreenessReport:
    """Run every applicable check and re-validate each negative witness."""
    gens = graph.generators if isinstance(graph, CayleyGraph) else graph if isinstance(graph, GeneratorSet) else None
    if gens is not None:
        tri_free, tri_w = check_triangle_free(gens)
        cycle = find_nontrivial_4cycle(gens)
        if cycle is not None:
            assert (cycle[0] + cycle[1] + cycle[2] + cycle[3]).is_zero() and not is_trivial_4tuple(*cycle)
        if tri_w is not None:
            assert (tri_w[0] + tri_w[1] + tri_w[2]).is_zero()
    else:
        tri_free, tri_w = triangle_free_graph(graph)
        cycle = None
    k2t = {}
    for t in sorted(set(ts)):
        verdict = check_k2t_free(graph, t)
        if not verdict.free and isinstance(graph, Graph):
            u, v = verdict.pair
            assert len(set(graph.adj[u]) & set(graph.adj[v])) >= t
        k2t[t] = verdict
    return FreenessReport(
        triangle_free=tri_free,
        triangle_witness=tri_w,
        k2t=k2t,
        nontrivial_4cycle_free=None if gens is None else cycle is None,
        cycle_witness=cycle,
    )

import math
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meyniel_lab import fixtures
from meyniel_lab.cayley import (
    GRAPH6_MAX,
    Graph,
    _graph6_size,
    build_graph,
    common_neighbors,
    export_edges,
    from_graph6,
    is_connected,
    make_generator_set,
    parse_edge_list,
    to_graph6,
)
from meyniel_lab.constructions import build_instance
from meyniel_lab.errors import AsymmetryError, DomainError, IdentityInSetError, SizeError
from meyniel_lab.groups import make_cyclic, make_product


def gens(group, *values):
    return make_generator_set(group, [group.element(v) for v in values])


def span_size(S):
    """Subgroup generated by S, by closure."""
    group = S.group
    seen = {group.zero()}
    frontier = [group.zero()]
    while frontier:
        g = frontier.pop()
        for s in S.elements:
            h = g + s
            if h not in seen:
                seen.add(h)
                frontier.append(h)
    return len(seen)


@st.composite
def cayley_inputs(draw, max_order=60):
    moduli = draw(st.lists(st.integers(2, 8), min_size=1, max_size=3).filter(lambda m: math.prod(m) <= max_order))
    group = make_product(moduli)
    picks = draw(st.lists(st.integers(1, group.order - 1), max_size=6))
    elems = []
    for r in picks:
        g = group.unrank(r)
        elems += [g, -g]
    return make_generator_set(group, elems)


class TestGeneratorSet:
    def test_valid(self):
        assert len(gens(make_cyclic(12), 1, 11)) == 2

    def test_asymmetric(self):
        with pytest.raises(AsymmetryError) as info:
            gens(make_cyclic(12), 1, 2)
        assert info.value.element.coords in {(11,), (10,)}

    def test_names_offender(self):
        with pytest.raises(AsymmetryError, match="11"):
            gens(make_cyclic(12), 1)

    def test_identity(self):
        with pytest.raises(IdentityInSetError):
            gens(make_cyclic(12), 0, 1, 11)

    def test_gamma1_generators(self):
        assert len(gens(make_cyclic(200), 25, -25, 31, -31, 47, -47, 1, -1)) == 8

    def test_dedup(self):
        assert len(gens(make_cyclic(12), 1, 11, 1, 11)) == 2

    def test_foreign_element(self):
        with pytest.raises(DomainError):
            make_generator_set(make_cyclic(5), [make_cyclic(7).element(1)])


class TestBuild:
    def test_c5(self):
        g = build_graph(gens(make_cyclic(5), 1, 4))
        assert sorted(g.edges()) == sorted(fixtures.cycle(5).edges())

    def test_torus(self):
        grp = make_product([3, 3])
        S = make_generator_set(grp, [grp.element(1, 0), grp.element(2, 0), grp.element(0, 1), grp.element(0, 2)])
        g = build_graph(S)
        assert g.n == 9 and all(g.degree(v) == 4 for v in range(9))

    def test_order_two_generator(self):
        g = build_graph(gens(make_cyclic(4), 2))
        assert sorted(g.edges()) == [(0, 2), (1, 3)]
        assert all(g.degree(v) == 1 for v in range(4))

    def test_vertex_cap(self):
        with pytest.raises(SizeError):
            build_graph(gens(make_cyclic(50), 1, 49), vertex_cap=49)

    @settings(max_examples=40)
    @given(cayley_inputs())
    def test_regular_and_translation_invariant(self, S):
        g = build_graph(S)
        assert all(g.degree(v) == len(S) for v in range(g.n))
        rng = random.Random(0)
        for v in rng.sample(range(g.n), min(5, g.n)):
            elem = S.group.unrank(v)
            assert set(g.adj[v]) == {(elem + s).rank for s in S.elements}
        for u, v in g.edges():
            assert (g.element(u) - g.element(v)) in S


class TestConnectivity:
    def test_examples(self, gamma3_p3):
        assert not is_connected(build_graph(gens(make_cyclic(12), 2, 10)))
        assert is_connected(build_graph(gens(make_cyclic(12), 1, 11)))
        assert is_connected(gamma3_p3.graph)

    @settings(max_examples=40)
    @given(cayley_inputs())
    def test_matches_span(self, S):
        assert is_connected(build_graph(S)) == (span_size(S) == S.group.order)


class TestCommonNeighbours:
    def test_c5(self):
        assert common_neighbors(fixtures.cycle(5), 0, 1) == set()

    def test_c4(self):
        g = build_graph(gens(make_cyclic(4), 1, 3))
        assert common_neighbors(g, 0, 2) == {1, 3}

    def test_needs_two_vertices(self):
        with pytest.raises(DomainError):
            common_neighbors(fixtures.cycle(5), 2, 2)

    def test_gamma2_pairs(self, gamma2_32):
        g = gamma2_32.graph
        assert max(len(common_neighbors(g, u, v)) for u in range(g.n) for v in range(u + 1, g.n)) <= 2


class TestExport:
    def test_triangle(self):
        assert export_edges(fixtures.cycle(3)) == b"0 1\n0 2\n1 2\n"

    def test_c5_lines(self):
        assert export_edges(fixtures.cycle(5)).count(b"\n") == 5

    def test_empty(self):
        g = build_graph(make_generator_set(make_cyclic(3), []))
        assert export_edges(g) == b""

    def test_sorted_no_trailing_space(self, gamma3_p3):
        data = export_edges(gamma3_p3.graph).decode()
        lines = data.splitlines()
        pairs = [tuple(map(int, line.split())) for line in lines]
        assert pairs == sorted(pairs) and all(u < v for u, v in pairs)
        assert all(line == line.strip() for line in lines) and data.endswith("\n")

    def fixture_graphs(self):
        out = [fixtures.path(6), fixtures.cycle(7), fixtures.complete(5), fixtures.petersen(), fixtures.star(4)]
        for fam, kw in [("gamma1", {"n": 200}), ("gamma2", {"p": 3, "k": 2}), ("gamma2", {"p": 5, "k": 2}),
                        ("gamma3", {"p": 3}), ("gamma3", {"p": 5}), ("greedy", {"n": 35})]:
            out.append(build_instance(fam, **kw).graph)
        return out

    def test_edge_list_round_trip(self):
        for g in self.fixture_graphs():
            back = parse_edge_list(export_edges(g), n=g.n)
            assert back.adj == g.adj

    def test_graph6_round_trip(self):
        for g in self.fixture_graphs():
            assert from_graph6(export_edges(g, "graph6")).adj == g.adj

    def test_graph6_matches_networkx(self):
        for g in self.fixture_graphs():
            ref = nx.Graph()
            ref.add_nodes_from(range(g.n))
            ref.add_edges_from(g.edges())
            theirs = nx.to_graph6_bytes(ref, header=False).strip()
            assert to_graph6(g) == theirs
            parsed = nx.from_graph6_bytes(to_graph6(g))
            assert sorted(tuple(sorted(e)) for e in parsed.edges()) == sorted(g.edges())

    @pytest.mark.parametrize("n", [0, 1, 62, 63, 64, 300])
    def test_graph6_size_boundaries(self, n):
        g = fixtures.path(n) if n else Graph([])
        ref = nx.path_graph(n)
        assert to_graph6(g) == nx.to_graph6_bytes(ref, header=False).strip()

    def test_graph6_size_limits(self):
        assert len(_graph6_size(258048)) == 8
        with pytest.raises(SizeError):
            _graph6_size(GRAPH6_MAX + 1)

    def test_parse_rejects_garbage(self):
        with pytest.raises(DomainError):
            parse_edge_list(b"0 1 2\n")

import random
from itertools import combinations, islice

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

import brute
from dirac_offset.generators import complete, cycle, path_graph, petersen, random_2connected
from dirac_offset.graph import (
    CycleWitness,
    Graph,
    GraphError,
    PathWitness,
    block_cut_tree,
    connectivity_profile,
    contract_edges,
    min_degree,
    reverse,
    validate_witness,
)

TWO_TRIANGLES = Graph.from_edges([(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)])


@st.composite
def small_graphs(draw, lo=1, hi=12):
    n = draw(st.integers(lo, hi))
    p = draw(st.sampled_from([0.15, 0.3, 0.5, 0.8]))
    return brute.random_graph(n, p, draw(st.integers(0, 10**6)))


class TestGraphValue:
    def test_self_loop_rejected(self):
        with pytest.raises(GraphError, match="self-loop"):
            Graph.from_edges([(1, 1)])

    def test_adjacency_symmetric_and_simple(self):
        g = Graph({1: [2, 3], 2: [1], 3: []})
        assert g.has_edge(3, 1) and g.m == 2
        assert Graph.from_edges([(1, 2), (2, 1)]).m == 1

    def test_isolated_vertices_kept(self):
        g = Graph.from_edges([(1, 2)], [1, 2, 3])
        assert g.n == 3 and g.degree(3) == 0

    def test_single_vertex_and_single_edge_are_legal(self):
        assert Graph({7: []}).n == 1
        assert Graph.from_edges([(1, 2)]).m == 1

    @given(small_graphs())
    def test_derived_quantities(self, g):
        G = brute.to_nx(g)
        assert g.n == G.number_of_nodes() and g.m == G.number_of_edges()
        assert g.min_degree == min(d for _, d in G.degree())
        for u, v in g.edges():
            assert u in g.adj(v) and v in g.adj(u)


class TestMinDegree:
    def test_examples(self):
        assert min_degree(complete(4)) == 3
        assert min_degree(cycle(6)) == 2
        assert min_degree(petersen()) == 3

    def test_empty_graph(self):
        with pytest.raises(GraphError, match="empty graph"):
            min_degree(Graph({}))


class TestConnectivity:
    def test_cycle(self):
        prof = connectivity_profile(cycle(6))
        assert prof.two_connected and prof.components == [frozenset(range(1, 7))]

    def test_path_cut_vertex(self):
        prof = connectivity_profile(path_graph(3), {2})
        assert sorted(map(sorted, prof.components)) == [[1], [3]]
        assert not prof.two_connected

    def test_petersen_survives_any_two_removals(self):
        g = petersen()
        for pair in combinations(g.vertices, 2):
            assert len(connectivity_profile(g, pair).components) == 1

    @given(small_graphs(hi=12))
    def test_two_connected_matches_brute_force(self, g):
        expected = g.n >= 3 and nx.is_connected(brute.to_nx(g)) and all(
            nx.is_connected(brute.to_nx(g.remove([v]))) for v in g.vertices)
        assert connectivity_profile(g).two_connected == expected

    @given(small_graphs(), st.data())
    def test_components_partition(self, g, data):
        removed = data.draw(st.sets(st.sampled_from(g.vertices), max_size=3))
        comps = connectivity_profile(g, removed).components
        seen = [v for c in comps for v in c]
        assert sorted(seen) == sorted(set(g.vertices) - removed)
        if seen:
            assert len(comps) == nx.number_connected_components(brute.to_nx(g.remove(removed)))


class TestBlockTree:
    def test_path(self):
        bt = block_cut_tree(path_graph(3))
        assert sorted(map(sorted, bt.blocks)) == [[1, 2], [2, 3]]
        assert bt.cut_vertices == {2}
        assert len(bt.leaf_blocks) == 2

    def test_triangle(self):
        bt = block_cut_tree(cycle(3))
        assert bt.blocks == [frozenset({1, 2, 3})] and not bt.cut_vertices

    def test_two_triangles_sharing_a_vertex(self):
        bt = block_cut_tree(TWO_TRIANGLES)
        assert sorted(map(sorted, bt.blocks)) == [[1, 2, 3], [3, 4, 5]]
        assert bt.cut_vertices == {3}
        assert {bt.inner_vertices[L] for L in bt.leaf_blocks} == {frozenset({1, 2}), frozenset({4, 5})}

    def test_disconnected(self):
        with pytest.raises(GraphError, match="graph not connected"):
            block_cut_tree(Graph.from_edges([(1, 2), (3, 4)]))

    @given(small_graphs(lo=2))
    def test_invariants_against_networkx(self, g):
        G = brute.to_nx(g)
        if not nx.is_connected(G):
            return
        bt = block_cut_tree(g)
        assert bt.cut_vertices == set(nx.articulation_points(G))
        if g.m:
            assert {frozenset(b) for b in bt.blocks} == {frozenset(b) for b in nx.biconnected_components(G)}
        covered = set()
        for b in bt.blocks:
            covered |= {e for e in g.edges() if set(e) <= b}
        assert covered == set(g.edges())
        for a, b in combinations(bt.blocks, 2):
            assert len(a & b) <= 1
        # leaves of the block–cut tree
        if len(bt.blocks) > 1:
            assert {b for b in bt.blocks if len(b & bt.cut_vertices) == 1} == set(bt.leaf_blocks)


class TestContraction:
    def test_triangle(self):
        h, log = contract_edges(cycle(3), [(1, 2)])
        assert h.n == 2 and h.m == 1 and len(log) == 1

    def test_square_becomes_triangle(self):
        h, log = contract_edges(cycle(4), [(1, 2)])
        assert h == cycle(3).relabel({1: 1, 2: 3, 3: 4})
        rec = log.records[0]
        assert (rec.surviving_vertex, rec.removed_vertex, rec.original_edge) == (1, 2, (1, 2))

    def test_reverse_adds_the_contracted_edge(self):
        g = cycle(4)
        h, log = contract_edges(g, [(1, 2)])
        q = PathWitness((4, 1, 3))
        assert validate_witness(h, q)
        out = reverse(log, q)
        assert out.vertices == (4, 1, 2, 3) and out.length == q.length + 1

    def test_reverse_skips_records_off_the_path(self):
        h, log = contract_edges(cycle(6), [(1, 2)])
        q = PathWitness((3, 4, 5))
        assert reverse(log, q) == q

    def test_missing_edge(self):
        with pytest.raises(GraphError, match=r"edge \(1, 3\)"):
            contract_edges(cycle(4), [(1, 3)])

    @given(st.integers(4, 14), st.integers(0, 10**6), st.data())
    def test_replay_and_reverse(self, n, seed, data):
        g = random_2connected(n, seed, 0.2)
        rng = random.Random(seed)
        edges = rng.sample(g.edges(), data.draw(st.integers(0, min(4, g.m))))
        try:
            h, log = contract_edges(g, edges)
        except GraphError:
            return  # a later edge was absorbed by an earlier contraction
        assert log.replay(g) == h
        assert len({r.removed_vertex for r in log}) == len(log)
        if h.n < 2:
            return
        a, b = rng.sample(h.vertices, 2)
        for seq in islice(nx.all_simple_paths(brute.to_nx(h), a, b), 5):
            q = PathWitness(tuple(seq))
            out = reverse(log, q)
            assert validate_witness(g, out)
            assert out.length >= q.length


class TestWitness:
    def test_examples(self):
        g = cycle(6)
        assert validate_witness(g, PathWitness((1, 2, 3)))
        bad = validate_witness(g, PathWitness((1, 3)))
        assert not bad and "non-adjacent consecutive pair" in bad.reason
        rep = validate_witness(g, PathWitness((1, 2, 1)))
        assert not rep and rep.reason == "vertices not distinct"

    def test_cycle_witness(self):
        g = cycle(6)
        assert validate_witness(g, CycleWitness(tuple(range(1, 7))))
        assert not validate_witness(g, CycleWitness((1, 2)))
        assert CycleWitness(tuple(range(1, 7))).offset(g) == 2

    def test_unknown_vertex(self):
        assert "not in graph" in validate_witness(cycle(4), PathWitness((1, 9))).reason

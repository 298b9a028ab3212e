from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import brute
from dirac_offset.generators import complete, cycle, path_graph, petersen, random_2connected, star
from dirac_offset.graph import CycleWitness, Graph, GraphError, min_degree_without, validate_witness
from dirac_offset.oracles import (
    ACYCLIC,
    NO,
    ApproximatorHandle,
    InstanceTooLarge,
    OracleError,
    exact_longest_cycle,
    exact_longest_st_path,
    exact_oracle,
    eg_long_st_path,
    get_oracle,
    path_between_via_cycle,
    split_longest_cycle,
    st_path_from_cycle_oracle,
    two_disjoint_paths_min_total,
)

EXACT = exact_oracle()

# frozen from networkx enumeration (tests/brute.py)
PETERSEN_LONGEST_CYCLE = 9
PETERSEN_ADJACENT_ST = 8       # every adjacent pair; Petersen is not Hamiltonian
PETERSEN_NONADJACENT_ST = 9
GLUED_K4_LONGEST_CYCLE = 6
GLUED_C6_ANTIPODAL_LONGEST_CYCLE = 6
C6_CROSS_PAIRS_BEST_TOTAL = 4  # A={1,4}, B={2,5}
PETERSEN_NINE_CYCLE = (1, 2, 3, 4, 5, 10, 7, 9, 6)   # misses vertex 8


def canonical(c):
    i = c.index(min(c))
    r = tuple(c[i:]) + tuple(c[:i])
    return min(r, (r[0],) + tuple(reversed(r[1:])))


@st.composite
def two_connected(draw, lo=4, hi=10, extra=(0.1, 0.25, 0.45)):
    n = draw(st.integers(lo, hi))
    return random_2connected(n, draw(st.integers(0, 10**6)), draw(st.sampled_from(extra)))


class TestExactCycle:
    def test_examples(self):
        assert exact_longest_cycle(complete(4)).length == 4
        assert exact_longest_cycle(star(4)) == ACYCLIC
        assert exact_longest_cycle(petersen()).length == PETERSEN_LONGEST_CYCLE

    def test_threshold(self):
        with pytest.raises(InstanceTooLarge, match="instance too large for exact oracle"):
            exact_longest_cycle(complete(19))

    def test_tie_break_is_lexicographic(self):
        for seed in range(40):
            g = brute.random_graph(7, 0.5, seed)
            cycles = list(brute.all_cycles(g))
            if not cycles:
                continue
            L = max(map(len, cycles))
            assert exact_longest_cycle(g).vertices == min(canonical(c) for c in cycles if len(c) == L)

    def test_split_oracle_agrees_above_threshold_pieces(self):
        # two 10-cliques sharing a 2-cut: 18 vertices, solved with a threshold of 12 by splitting
        A = list(range(1, 11))
        B = [1, 2] + list(range(11, 19))
        g = Graph.from_edges(list(combinations(A, 2)) + list(combinations(B, 2)))
        c = split_longest_cycle(g, threshold=12)
        assert len(c) == 18 and validate_witness(g, CycleWitness(c))


class TestExactPath:
    def test_examples(self):
        assert exact_longest_st_path(complete(4), 1, 3).length == 3
        assert exact_longest_st_path(path_graph(3), 1, 3).length == 2

    def test_petersen(self):
        g = petersen()
        for u, v in combinations(g.vertices, 2):
            want = PETERSEN_ADJACENT_ST if g.has_edge(u, v) else PETERSEN_NONADJACENT_ST
            assert exact_longest_st_path(g, u, v).length == want

    def test_disconnected_pair(self):
        with pytest.raises(GraphError, match="disconnected pair"):
            exact_longest_st_path(Graph.from_edges([(1, 2), (3, 4)]), 1, 3)

    def test_tie_break(self):
        for seed in range(40):
            g = brute.random_graph(7, 0.5, seed)
            s, t = g.vertices[0], g.vertices[-1]
            paths = list(brute.st_paths(g, s, t))
            if paths:
                L = max(map(len, paths))
                assert exact_longest_st_path(g, s, t).vertices == min(tuple(p) for p in paths if len(p) == L)


class TestHandle:
    def test_guarantee_is_clamped(self):
        h = ApproximatorHandle("generous", EXACT.invoke_fn, lambda x: 2 * x)
        assert h.guarantee_f(3) == 3 and h.guarantee_f(0) == 0

    def test_invalid_cycle_is_refused(self):
        h = ApproximatorHandle("liar", lambda g: CycleWitness((1, 3, 5)))
        with pytest.raises(OracleError, match="invalid cycle"):
            h.invoke(cycle(6))

    def test_registry(self):
        assert get_oracle("exact").name == "exact"
        assert get_oracle("dfs-heuristic").guarantee_f(10) <= 10
        with pytest.raises(ValueError):
            get_oracle("gabow")

    @given(st.lists(st.floats(0, 50), min_size=2, max_size=6))
    def test_shipped_guarantees_monotone_subadditive(self, xs):
        for name in ("exact", "dfs-heuristic"):
            f = get_oracle(name).guarantee_f
            for a in xs:
                assert f(a) <= a
                for b in xs:
                    if a <= b:
                        assert f(a) <= f(b)
                    assert f(a + b) <= f(a) + f(b) + 1e-9

    @given(two_connected())
    def test_heuristic_returns_valid_cycles(self, g):
        c = get_oracle("dfs-heuristic").invoke(g)
        assert validate_witness(g, c)


class TestDoubling:
    def test_bridge(self):
        assert st_path_from_cycle_oracle(Graph.from_edges([(1, 2)]), 1, 2, EXACT).vertices == (1, 2)

    def test_c6_antipodal(self):
        p = st_path_from_cycle_oracle(cycle(6), 1, 4, EXACT)
        assert p.length >= GLUED_C6_ANTIPODAL_LONGEST_CYCLE / 2
        assert validate_witness(cycle(6), p) and (p.start, p.end) == (1, 4)

    def test_k4(self):
        p = st_path_from_cycle_oracle(complete(4), 1, 2, EXACT)
        assert p.length >= GLUED_K4_LONGEST_CYCLE / 2

    @given(two_connected(lo=4, hi=8), st.data())
    def test_exact_oracle_recovers_the_optimum(self, g, data):
        s, t = data.draw(st.sampled_from(list(combinations(g.vertices, 2))))
        p = st_path_from_cycle_oracle(g, s, t, EXACT)
        assert validate_witness(g, p) and (p.start, p.end) == (s, t)
        assert p.length == brute.longest_st_path_length(g, s, t)


class TestCycleToPath:
    def test_adjacent_on_cycle(self):
        assert path_between_via_cycle(cycle(6), CycleWitness(tuple(range(1, 7))), 1, 2).length == 5

    def test_chord_antipodal(self):
        g = cycle(6).with_edges([(1, 3)])
        assert path_between_via_cycle(g, CycleWitness(tuple(range(1, 7))), 1, 4).length >= 3

    def test_petersen_off_cycle_target(self):
        g = petersen()
        c = CycleWitness(PETERSEN_NINE_CYCLE)
        assert validate_witness(g, c)
        p = path_between_via_cycle(g, c, 1, 8)
        assert validate_witness(g, p) and p.length >= 5

    def test_needs_two_connectivity(self):
        with pytest.raises(GraphError):
            path_between_via_cycle(path_graph(4), CycleWitness((1, 2, 3)), 1, 4)

    @given(two_connected(), st.data())
    def test_menger_bound(self, g, data):
        c = exact_longest_cycle(g)
        s, t = data.draw(st.sampled_from(list(combinations(g.vertices, 2))))
        p = path_between_via_cycle(g, c, s, t)
        assert validate_witness(g, p) and (p.start, p.end) == (s, t)
        on = {s, t} <= set(c.vertices)
        assert p.length >= ((c.length + 1) // 2 if on else c.length / 2)


class TestTwoDisjoint:
    def test_c4(self):
        p, q = two_disjoint_paths_min_total(cycle(4), (1, 3), (2, 4), 0)
        assert p.length + q.length == 2
        assert two_disjoint_paths_min_total(cycle(4), (1, 3), (2, 4), 3) == NO

    def test_c6(self):
        p, q = two_disjoint_paths_min_total(cycle(6), (1, 4), (2, 5), 4)
        assert p.length + q.length == C6_CROSS_PAIRS_BEST_TOTAL
        assert not set(p.vertices) & set(q.vertices)

    def test_shared_endpoint_allowed(self):
        p, q = two_disjoint_paths_min_total(cycle(5), (1, 3), (1, 4), 0)
        assert {p.vertices, q.vertices} == {(1,), (3, 4)}

    @given(two_connected(lo=4, hi=9), st.data(), st.integers(0, 6))
    def test_agrees_with_enumeration(self, g, data, k):
        vs = g.vertices
        a = data.draw(st.sampled_from(list(combinations(vs, 2))))
        b = data.draw(st.sampled_from(list(combinations(vs, 2))))
        best = brute.best_two_disjoint(g, a, b)
        out = two_disjoint_paths_min_total(g, a, b, k)
        if best < k:
            assert out == NO
        else:
            p, q = out
            assert validate_witness(g, p) and validate_witness(g, q)
            assert not set(p.vertices) & set(q.vertices)
            assert {p.start, q.start} == set(a) and {p.end, q.end} == set(b)
            assert p.length + q.length == best


class TestErdosGallaiPath:
    def test_examples(self):
        assert eg_long_st_path(complete(5), 1, 2).length >= 4
        assert eg_long_st_path(cycle(6), 1, 3).length >= 2
        g = petersen()
        for s, t in combinations(g.vertices, 2):
            p = eg_long_st_path(g, s, t)
            assert validate_witness(g, p) and p.length >= 3

    @given(two_connected(lo=4, hi=14), st.data())
    def test_floor(self, g, data):
        s, t = data.draw(st.sampled_from(list(combinations(g.vertices, 2))))
        B = data.draw(st.sets(st.sampled_from(g.vertices), max_size=3))
        p = eg_long_st_path(g, s, t, B)
        assert validate_witness(g, p) and (p.start, p.end) == (s, t)
        rest = set(g.vertices) - B
        if rest:
            assert p.length >= min_degree_without(g, B)

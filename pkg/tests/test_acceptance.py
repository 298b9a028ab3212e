"""The ten acceptance criteria, one test each; results are summarised at the end of the run."""

import random
import time
from contextlib import contextmanager
from itertools import combinations

import networkx as nx
import pytest

import brute
import conftest
import families as F
from dirac_offset.dirac import approximate_long_cycle, validate_dirac_decomposition
from dirac_offset.eg import EGDecomposition, find_decomposition, validate_eg_decomposition
from dirac_offset.generators import (
    complete,
    default_corpus,
    dirac_family,
    generate,
    nested_eg,
    random_2connected,
    separable_eg,
    two_triangle_eg,
)
from dirac_offset.graph import CycleWitness, Graph, GraphError, PathWitness, min_degree_without, validate_witness
from dirac_offset.harness import run_experiment, skipped
from dirac_offset.oracles import (
    ACYCLIC,
    NO,
    eg_long_st_path,
    exact_longest_cycle,
    exact_longest_st_path,
    exact_oracle,
    get_oracle,
    path_between_via_cycle,
    st_path_from_cycle_oracle,
    two_disjoint_paths_min_total,
)
from dirac_offset.stpath import approximate_long_st_path

EXACT = exact_oracle()


@contextmanager
def criterion(n):
    note = {"text": ""}
    try:
        yield note
    except BaseException:
        conftest.ACCEPTANCE.setdefault(n, []).append((False, note["text"]))
        raise
    conftest.ACCEPTANCE.setdefault(n, []).append((True, note["text"]))


@pytest.fixture(scope="module")
def corpus():
    return default_corpus(500, 6, 18, seed=0)


@pytest.fixture(scope="module")
def runs(corpus):
    out = {}
    for mode in ("cycle", "st_path", "path"):
        t0 = time.perf_counter()
        out[mode] = (run_experiment(corpus, "exact", mode), time.perf_counter() - t0)
    return out


def check_length(r):
    """The reported length is recomputed from the witness itself."""
    return r.witness_length == len(r.witness) - (0 if r.mode == "cycle" else 1)


def test_1_soundness(corpus, runs):
    with criterion(1) as note:
        t0 = time.perf_counter()
        elapsed = sum(sec for _, sec in runs.values())
        checked = 0
        for mode, (reps, _) in runs.items():
            for spec, r in zip(corpus, reps):
                if skipped(r):
                    continue
                assert r.error is None, (mode, r.instance_id, r.error)
                g = generate(spec).graph
                W = CycleWitness if mode == "cycle" else PathWitness
                assert validate_witness(g, W(tuple(r.witness))), (mode, r.instance_id)
                assert check_length(r)
                assert r.exact_optimum is None or r.witness_length <= r.exact_optimum
                checked += 1
        # the helper operations on the same corpus
        rng = random.Random(1)
        for spec in corpus:
            inst = generate(spec)
            g = inst.graph
            if not brute.is_two_connected(g):
                continue
            s, t = rng.sample(g.vertices, 2)
            for w in (eg_long_st_path(g, s, t), st_path_from_cycle_oracle(g, s, t, EXACT),
                      path_between_via_cycle(g, exact_longest_cycle(g), s, t)):
                assert validate_witness(g, w) and (w.start, w.end) == (s, t)
                assert w.length == len(w.vertices) - 1
                checked += 1
        elapsed += time.perf_counter() - t0
        note["text"] = f"{checked} witnesses validated in {elapsed:.1f}s"
        assert elapsed < 120


def test_2_dirac_floor(corpus, runs):
    with criterion(2) as note:
        reps, _ = runs["cycle"]
        count = 0
        for spec, r in zip(corpus, reps):
            if skipped(r):
                continue
            g = generate(spec).graph
            assert r.witness_length >= min(2 * g.min_degree, g.n)
            if 2 * g.min_degree >= g.n:
                assert r.witness_length == g.n
            count += 1
        # dense graphs, where Dirac's bound asks for a Hamiltonian cycle
        dense = [complete(n) for n in range(3, 19)]
        dense += [random_2connected(n, seed, 0.8) for n in range(6, 19) for seed in range(6)]
        ham = 0
        for g in dense:
            w = approximate_long_cycle(g, EXACT).witness
            assert validate_witness(g, w) and w.length >= min(2 * g.min_degree, g.n)
            if 2 * g.min_degree >= g.n:
                assert w.length == g.n
                ham += 1
            count += 1
        note["text"] = f"{count} instances, {ham} forced Hamiltonian"


def test_3_erdos_gallai_floor(corpus):
    with criterion(3) as note:
        rng = random.Random(3)
        count = 0
        for spec in corpus:
            g = generate(spec).graph
            if not brute.is_two_connected(g):
                continue
            for _ in range(3):
                s, t = rng.sample(g.vertices, 2)
                B = set(rng.sample(g.vertices, rng.randint(0, min(3, g.n - 3))))
                w = eg_long_st_path(g, s, t, B)
                assert validate_witness(g, w) and (w.start, w.end) == (s, t)
                assert w.length >= min_degree_without(g, B)
                count += 1
        note["text"] = f"{count} (instance, s, t, B) inputs"


def test_4_menger_construction(corpus):
    with criterion(4) as note:
        rng = random.Random(4)
        count = 0
        for spec in corpus:
            g = generate(spec).graph
            if not brute.is_two_connected(g):
                continue
            cycles = [tuple(c) for c in nx.cycle_basis(brute.to_nx(g))[:3]]
            cycles.append(exact_longest_cycle(g).vertices)
            for c in cycles:
                cw = CycleWitness(c)
                assert validate_witness(g, cw)
                on, off = list(c), [v for v in g.vertices if v not in c]
                pairs = [tuple(rng.sample(on, 2))]
                if off:
                    pairs.append((rng.choice(on), rng.choice(off)))
                    if len(off) >= 2:
                        pairs.append(tuple(rng.sample(off, 2)))
                for s, t in pairs:
                    w = path_between_via_cycle(g, cw, s, t)
                    assert validate_witness(g, w) and (w.start, w.end) == (s, t)
                    if s in c and t in c:
                        assert w.length >= (len(c) + 1) // 2
                    else:
                        assert w.length >= len(c) / 2
                    count += 1
        note["text"] = f"{count} (cycle, s, t) inputs"


def test_5_st_path_inequality(corpus, runs):
    with criterion(5) as note:
        reps, _ = runs["st_path"]
        count = 0
        for spec, r in zip(corpus, reps):
            if skipped(r):
                continue
            inst = generate(spec)
            g, s, t = inst.graph, inst.s, inst.t
            opt = exact_longest_st_path(g, s, t).length
            if g.n <= 12:
                assert opt == brute.dp_longest_st_path(g, s, t)
            base = min_degree_without(g, (s, t))
            k = opt - base
            assert r.witness_length >= base + k / 32 - 3
            assert r.witness_length <= opt
            count += 1
        note["text"] = f"{count} instances, {len(reps) - count} outside the domain (not 2-connected)"


def test_6_cycle_inequality(corpus, runs):
    with criterion(6) as note:
        reps, _ = runs["cycle"]
        count = 0
        for spec, r in zip(corpus, reps):
            if skipped(r):
                continue
            g = generate(spec).graph
            opt = exact_longest_cycle(g).length
            if g.n <= 12:
                assert opt == brute.dp_longest_cycle(g)
            k = opt - 2 * g.min_degree
            assert r.witness_length >= 2 * g.min_degree + k / 128 - 8
            assert r.witness_length <= opt
            count += 1
        note["text"] = f"{count} instances"


def test_7_decompression_bound(corpus, runs):
    with criterion(7) as note:
        heuristic = get_oracle("dfs-heuristic")
        planted = [two_triangle_eg(22), two_triangle_eg(25), nested_eg(22, 2), nested_eg(22, 3)]
        hosts = [(i.graph, i.s, i.t) for i in planted] + [F.wide_cover_eg(30), F.wide_cover_eg(32)]
        rs = []
        for g, s, t in hosts:
            rep = approximate_long_st_path(g, s, t, heuristic)
            det = rep.details
            assert det["compressed"] and det["q_length"] is not None
            assert validate_witness(g, rep.witness)
            bound = min_degree_without(g, (s, t)) + det["q_length"] / 8 - 3
            assert det["decompressed_length"] >= bound
            rs.append(det["q_length"])
        # any corpus run that compressed is held to the same bound
        extra = 0
        for r in runs["st_path"][0]:
            if r.details.get("compressed"):
                extra += 1
                assert r.details["decompressed_length"] >= r.delta_st + r.details["q_length"] / 8 - 3
        assert max(rs) > 1
        note["text"] = f"{len(hosts)} planted compressed runs (r = {sorted(set(rs))}), {extra} from the corpus"


def test_8_validators(corpus):
    with criterion(8) as note:
        accepted = 0
        for b in range(3, 19):
            inst = two_triangle_eg(b)
            pl = inst.planted
            assert validate_eg_decomposition(inst.graph, inst.s, inst.t, PathWitness(pl["P"]),
                                             PathWitness(pl["P1"]), PathWitness(pl["P2"]))
            _, case = F.eg_host(b, 2 + b % 2, True)
            assert validate_eg_decomposition(case.graph, case.s, case.t, PathWitness(case.P),
                                             PathWitness(case.P1), PathWitness(case.P2))
            _, dc = F.dirac_host(b, 3, True)
            assert validate_dirac_decomposition(dc.graph, CycleWitness(dc.C), PathWitness(dc.P1), PathWitness(dc.P2))
            for count in (2, 3):
                inst = dirac_family(b, count)
                pl = inst.planted
                assert validate_dirac_decomposition(inst.graph, CycleWitness(pl["C"]),
                                                    PathWitness(pl["P1"]), PathWitness(pl["P2"]))
            accepted += 5
            if b >= 4:
                inst = separable_eg(b, 2)
                pl = inst.planted
                assert validate_eg_decomposition(inst.graph, inst.s, inst.t, PathWitness(pl["P"]),
                                                 PathWitness(pl["P1"]), PathWitness(pl["P2"]))
                accepted += 1
        rejected = 0
        for seed in range(1000):
            case = F.eg_mutation(seed)
            rep = validate_eg_decomposition(case.graph, case.s, case.t, PathWitness(case.P),
                                            PathWitness(case.P1), PathWitness(case.P2))
            assert not rep and rep.clause == case.clause and rep.component == case.component, (seed, case.kind)
            case = F.dirac_mutation(seed)
            rep = validate_dirac_decomposition(case.graph, CycleWitness(case.C), PathWitness(case.P1),
                                               PathWitness(case.P2))
            assert not rep and rep.clause == case.clause and rep.component == case.component, (seed, case.kind)
            rejected += 2
        note["text"] = f"{accepted} planted accepted, {rejected} mutations rejected with the named clause"


# seeded sparse graphs on which some (s,t)-path splits into a valid decomposition
RANDOM_EG_HOSTS = [
    (14, 6, 1, 4, (1, 7, 6, 12, 11, 10, 8, 4)),
    (11, 24, 2, 5, (2, 1, 6, 5)),
    (12, 25, 1, 2, (1, 6, 5, 4, 3, 7, 2)),
    (11, 38, 1, 6, (1, 2, 3, 4, 5, 6)),
    (13, 47, 7, 12, (7, 2, 1, 3, 4, 5, 6, 8, 9, 12)),
    (11, 59, 1, 4, (1, 9, 8, 7, 5, 4)),
]


def _eg_instances():
    for n, seed, s, t, P in RANDOM_EG_HOSTS:
        g = random_2connected(n, seed, 0.08)
        yield f"random n={n} seed={seed}", find_decomposition(g, s, t, P)
    for b in range(3, 7):
        inst = two_triangle_eg(b)
        pl = inst.planted
        yield f"two_triangle {b}", validate_eg_decomposition(inst.graph, inst.s, inst.t, PathWitness(pl["P"]),
                                                           PathWitness(pl["P1"]), PathWitness(pl["P2"]))
    for b, count in ((3, 2), (3, 3), (4, 2)):
        _, case = F.eg_host(b, count, False)
        yield f"host {b}x{count}", validate_eg_decomposition(case.graph, case.s, case.t, PathWitness(case.P),
                                                            PathWitness(case.P1), PathWitness(case.P2))


def _dirac_instances():
    for block, count, big in ((3, 2, 0), (3, 3, 0), (4, 2, 0), (3, 2, 4), (3, 2, 5), (3, 2, 6),
                              (4, 2, 4), (3, 3, 3)):
        inst = dirac_family(block, count, big)
        pl = inst.planted
        yield f"dirac_family {block},{count},{big}", validate_dirac_decomposition(
            inst.graph, CycleWitness(pl["C"]), PathWitness(pl["P1"]), PathWitness(pl["P2"]))
    for b, count in ((3, 2), (3, 3)):
        _, dc = F.dirac_host(b, count, False)
        yield f"dirac_host {b}x{count}", validate_dirac_decomposition(
            dc.graph, CycleWitness(dc.C), PathWitness(dc.P1), PathWitness(dc.P2))


def _cyclic_from(c, start):
    i = c.index(start)
    return c[i:] + c[:i]


def test_9_structural_properties():
    """Consecutiveness and existence for EG components, the separating pair and the long entering cycle."""
    with criterion(9) as note:
        t0 = time.perf_counter()
        eg_count = paths_seen = 0
        for name, d in _eg_instances():
            assert isinstance(d, EGDecomposition), name
            g = d.host
            assert g.n <= 14
            paths = [tuple(p) for p in brute.st_paths(g, d.s, d.t)]
            paths_seen += len(paths)
            for p in paths:
                for M in d.eg_components:
                    if brute.enters(p, M):
                        assert brute.consecutive(p, M), (name, p, sorted(M))
            L = max(len(p) for p in paths)
            assert any(brute.enters(p, M) for p in paths if len(p) == L for M in d.eg_components), name
            eg_count += 1
        dirac_count = cycles_seen = 0
        for name, dec in _dirac_instances():
            assert dec, name
            g = dec.host
            assert g.n <= 14
            delta = g.min_degree
            ends = set(dec.P1.vertices) | set(dec.P2.vertices)
            cycles = [tuple(c) for c in brute.all_cycles(g)]
            cycles_seen += len(cycles)
            through = [c for c in cycles if ends <= set(c)]
            if name.startswith("dirac_host"):
                # end paths of two vertices: the matching cover sits inside each component
                assert not _broken_runs(dec, cycles), name
            opt = max(len(c) for c in cycles)
            k = opt - 2 * delta
            kappa = dec.C.length - 2 * delta
            if 2 * kappa <= delta:
                G = brute.to_nx(g)
                best = None
                for u, v in combinations(g.vertices, 2):
                    if nx.is_connected(G.subgraph(set(G) - {u, v})):
                        continue
                    length = max(len(p) - 1 for p in nx.all_simple_paths(G, u, v))
                    best = length if best is None else max(best, length)
                assert best is not None and best >= delta + (k - 2) / 4, name
            if any(len(c) >= 2 * delta + k for c in through):
                assert any(len(c) >= 2 * delta + k / 2 - 1 and
                           any(brute.enters(list(c), M, cyclic=True) for M in dec.dirac_components)
                           for c in cycles), name
            dirac_count += 1
        elapsed = time.perf_counter() - t0
        note["text"] = (f"{eg_count} EG hosts ({paths_seen} paths), {dirac_count} Dirac hosts "
                        f"({cycles_seen} cycles) in {elapsed:.1f}s")
        assert elapsed < 600


def _broken_runs(dec, cycles):
    """Cycles through every end-path vertex that enter a component without visiting it in one run."""
    ends = set(dec.P1.vertices) | set(dec.P2.vertices)
    out = []
    for c in cycles:
        if not ends <= set(c):
            continue
        rc = _cyclic_from(c, dec.P1.vertices[0])
        if any(brute.enters(rc, M, cyclic=True) and not brute.consecutive(rc, M) for M in dec.dirac_components):
            out.append(c)
    return out


@pytest.mark.xfail(strict=True, reason=(
    "refuted: in dirac_family(3, 2) with P1 = (1), P2 = (2) the cycle 1, 3, 2, 4, 5 enters "
    "the component {3, 4, 5} twice, once on each side of the hub 2"))
def test_9_dirac_consecutiveness():
    with criterion(9) as note:
        found = {}
        for name, dec in _dirac_instances():
            assert dec, name
            bad = _broken_runs(dec, [tuple(c) for c in brute.all_cycles(dec.host)])
            if bad:
                found[name] = (len(bad), min(bad, key=len))
        families = sorted({name.rsplit(" ", 1)[0] for name in found})
        note["text"] = (f"cycle consecutiveness refuted on {len(found)} hosts ({', '.join(families)}), "
                        f"e.g. {next(iter(found.values()))[1] if found else None}; "
                        "holds on every host whose matching cover lies inside the component")
        assert not found


def test_10_oracle_cross_checks():
    with criterion(10) as note:
        graphs = [g for g in (Graph.from_edges(G.edges(), G.nodes()) for G in nx.graph_atlas_g()[1:])]
        graphs = [g.relabel({v: v + 1 for v in g.vertices}) for g in graphs]
        graphs += [brute.random_graph(n, p, seed) for n in (8, 9, 10) for p in (0.3, 0.5) for seed in range(15)]
        small = len(graphs)
        rng = random.Random(10)
        cycles = paths = disjoint = 0

        def check(g, exhaustive):
            nonlocal cycles, paths, disjoint
            c = exact_longest_cycle(g)
            want = brute.longest_cycle_length(g) if exhaustive else brute.dp_longest_cycle(g)
            assert (0 if c == ACYCLIC else c.length) == want
            cycles += 1
            if g.n < 2:
                return
            for s, t in rng.sample(list(combinations(g.vertices, 2)), min(3, g.n * (g.n - 1) // 2)):
                want = brute.longest_st_path_length(g, s, t) if exhaustive else brute.dp_longest_st_path(g, s, t)
                if want is None:
                    with pytest.raises(GraphError):
                        exact_longest_st_path(g, s, t)
                else:
                    assert exact_longest_st_path(g, s, t).length == want
                paths += 1
            if g.n >= 4 and exhaustive:
                for _ in range(2):
                    a, b = rng.sample(g.vertices, 2), rng.sample(g.vertices, 2)
                    best = brute.best_two_disjoint(g, a, b)
                    k = rng.randint(0, max(best, 0) + 1)
                    out = two_disjoint_paths_min_total(g, a, b, k)
                    if best < k:
                        assert out == NO, (g, a, b, k)
                    else:
                        p, q = out
                        assert validate_witness(g, p) and validate_witness(g, q)
                        assert not set(p.vertices) & set(q.vertices)
                        assert p.length + q.length == best
                    disjoint += 1

        for g in graphs:
            check(g, exhaustive=True)
        for i in range(200):
            check(brute.random_graph(rng.randint(6, 12), rng.choice((0.25, 0.4, 0.6)), 1000 + i), exhaustive=False)
        note["text"] = (f"{small} graphs n<=10 by enumeration + 200 random n<=12 by subset DP; "
                        f"{cycles} cycle, {paths} path, {disjoint} disjoint-pair checks")

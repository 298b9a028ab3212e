"""Long (s,t)-paths through a nested decomposition: compress, approximate, decompress."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .eg import (
    EGDecomposition,
    NestedEGDecomposition,
    boost_non_entering_path,
    build_nested_decomposition,
)
from .graph import (
    ContractionLog,
    Graph,
    GraphError,
    PathWitness,
    PreconditionError,
    contract_into,
    is_connected,
    is_two_connected,
    min_degree_without,
    reverse,
    validate_witness,
)
from .oracles import (
    DEFAULT_EXACT_THRESHOLD,
    NO,
    ApproximatorHandle,
    BoundViolation,
    OracleError,
    OracleReport,
    eg_long_st_path,
    exact_longest_st_path,
    longest_of,
    st_path_from_cycle_oracle,
    two_disjoint_paths_min_total,
)

Edge = Tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass
class CompressedGraph:
    H: Graph
    log: ContractionLog
    # edge in original labels (s_i, t_i) -> indices of the leaf triples it stands for
    marked_edges: Dict[Edge, List[int]]
    source: NestedEGDecomposition
    contracted: Dict[int, List[Edge]] = field(default_factory=dict)

    def rep(self, v: int) -> int:
        return self.log.representative(v)

    @property
    def compressed(self) -> bool:
        return bool(self.log.records) or bool(self.marked_edges)


def _interior(g: Graph, s: int, t: int) -> Set[int]:
    return set(g.vertices) - {s, t}


def nested_compress(d: NestedEGDecomposition, threshold: int = DEFAULT_EXACT_THRESHOLD) -> CompressedGraph:
    """Contract forced connector matchings and replace leaf triples by marked edges.

    Leaf interiors are removed and marked first; the connector queries and
    contractions then run in triple index order. The two steps commute, and
    this order lets every contraction record see the marked edges.
    """
    root = d.triples[0]
    adj: Dict[int, Set[int]] = {v: set(nb) for v, nb in root.graph.adjacency().items()}
    records = []
    rep: Dict[int, int] = {}
    marked: Dict[Edge, List[int]] = {}
    contracted: Dict[int, List[Edge]] = {}

    def find(x: int) -> int:
        while x in rep:
            x = rep[x]
        return x

    # leaves first: their interiors never hold a contracted vertex, and marking
    # before any contraction lets every record see the marked edges
    for i, tr in enumerate(d.triples):
        if i == 0 or tr.decomposed:
            continue
        for v in _interior(tr.graph, tr.s, tr.t):
            for x in adj.pop(v):
                if x in adj:
                    adj[x].discard(v)
        adj[tr.s].add(tr.t)
        adj[tr.t].add(tr.s)
        marked.setdefault(_edge(tr.s, tr.t), []).append(i)
    for i, tr in enumerate(d.triples):
        if i == 0:
            continue
        parent = d.triples[tr.parent]
        outside = set(parent.graph.vertices) - _interior(tr.graph, tr.s, tr.t)
        ans = two_disjoint_paths_min_total(parent.graph, (parent.s, parent.t), (tr.s, tr.t), tr.d + 1,
                                           threshold=threshold, within=outside)
        if ans == NO:
            for x, y in _max_matching(parent.graph, (parent.s, parent.t), (tr.s, tr.t)):
                u, v = find(x), find(y)
                if u == v or v not in adj.get(u, ()):
                    continue
                rec = contract_into(adj, u, v)
                rep[rec.removed_vertex] = rec.surviving_vertex
                records.append(rec)
                contracted.setdefault(i, []).append((x, y))
    return CompressedGraph(Graph(adj), ContractionLog(tuple(records)), marked, d, contracted)


def _max_matching(g: Graph, outer: Tuple[int, int], inner: Tuple[int, int]) -> List[Edge]:
    """A maximum matching between two pairs, preferring s–s and t–t edges."""
    straight = [(a, b) for a, b in zip(outer, inner) if a != b and g.has_edge(a, b)]
    crossed = [(a, b) for a, b in zip(outer, inner[::-1]) if a != b and g.has_edge(a, b)]
    if len(straight) >= len(crossed):
        return straight
    return crossed


@dataclass
class DecompressionTrace:
    r: int
    final_length: int = 0
    bound: Optional[float] = None
    deepest: Optional[int] = None
    anomalies: List[str] = field(default_factory=list)


def _enters(seq: Sequence[int], vs: Set[int]) -> bool:
    return any(a in vs and b in vs for a, b in zip(seq, seq[1:]))


def _splice_connectors(seq: List[int], outer: Tuple[int, int], inner: Tuple[int, int],
                       S1: Sequence[int], S2: Sequence[int]) -> Optional[List[int]]:
    """Swap the two outer→inner stretches of seq for S1, S2 (each runs outer → inner)."""
    pos = {v: i for i, v in enumerate(seq)}
    if not all(v in pos for v in outer + inner):
        return None
    pieces = {}
    for S in (S1, S2):
        a, b = S[0], S[-1]
        pieces[(a, b)] = list(S)
    lo_o, hi_o = sorted(pos[v] for v in outer)
    lo_i, hi_i = sorted(pos[v] for v in inner)
    if not (lo_o <= lo_i <= hi_i <= hi_o):
        return None
    a, b = seq[lo_o], seq[lo_i]
    c, e = seq[hi_i], seq[hi_o]
    if (a, b) not in pieces or (e, c) not in pieces:
        return None
    left = pieces[(a, b)]
    right = pieces[(e, c)][::-1]
    out = seq[:lo_o] + left + seq[lo_i + 1:hi_i] + right + seq[hi_o + 1:]
    return out


def nested_decompress(d: NestedEGDecomposition, H: CompressedGraph, Q: PathWitness,
                      threshold: int = DEFAULT_EXACT_THRESHOLD,
                      trace: Optional[DecompressionTrace] = None) -> PathWitness:
    """Lift an (s,t)-path of the compressed graph to one of the original graph."""
    root = d.triples[0]
    g, s, t = root.graph, root.s, root.t
    ok = validate_witness(H.H, Q)
    if not ok or Q.start != H.rep(s) or Q.end != H.rep(t):
        raise GraphError(f"Q is not an (s,t)-path of the compressed graph: {ok.reason or 'wrong ends'}")
    if trace is None:
        trace = DecompressionTrace(Q.length)
    trace.r = Q.length
    seq = list(reverse(H.log, Q, ends=(s, t)).vertices)
    marks = {e for e in H.marked_edges}

    def valid_in(seq_: Sequence[int], allow_marks: bool) -> bool:
        if len(set(seq_)) != len(seq_):
            return False
        for a, b in zip(seq_, seq_[1:]):
            if not g.has_edge(a, b) and not (allow_marks and _edge(a, b) in marks):
                return False
        return True

    if not valid_in(seq, True):
        raise GraphError("contraction reversal produced an invalid walk")
    # connector replacement where no contraction happened
    for i, tr in enumerate(d.triples):
        if i == 0 or tr.d == 0 or i in H.contracted:
            continue
        inside = set(tr.graph.vertices)
        if not (_enters(seq, inside) or _edge(tr.s, tr.t) in marks and _uses(seq, tr.s, tr.t)):
            continue
        parent = d.triples[tr.parent]
        outside = set(parent.graph.vertices) - _interior(tr.graph, tr.s, tr.t)
        ans = two_disjoint_paths_min_total(g, (parent.s, parent.t), (tr.s, tr.t), tr.d + 1,
                                           threshold=threshold, within=outside)
        if ans == NO:
            continue
        cand = _splice_connectors(seq, (parent.s, parent.t), (tr.s, tr.t), ans[0].vertices, ans[1].vertices)
        if cand is not None and len(cand) > len(seq) and valid_in(cand, True):
            seq = cand
    # deepest triple entered, then expand marked edges
    h = 0
    for i, tr in enumerate(d.triples):
        if tr.decomposed:
            if _enters(seq, set(tr.graph.vertices)):
                h = i
        elif i > 0 and _uses(seq, tr.s, tr.t):
            h = i
    trace.deepest = h
    seq = _expand_marks(seq, H, d, g)
    th = d.triples[h]
    if th.decomposed:
        seq = _improve_deepest(seq, th, threshold, trace)
    out = PathWitness(tuple(seq))
    chk = validate_witness(g, out)
    if not chk or out.start != s or out.end != t:
        raise GraphError(f"decompressed path invalid: {chk.reason or 'wrong ends'}")
    trace.final_length = out.length
    if len(d.triples) >= 2:
        trace.bound = min_degree_without(g, (s, t)) + trace.r / 8 - 3
        if out.length < trace.bound:
            raise BoundViolation(f"decompressed length {out.length} < {trace.bound}")
    return out


def _uses(seq: Sequence[int], a: int, b: int) -> bool:
    return any({x, y} == {a, b} for x, y in zip(seq, seq[1:]))


def _expand_marks(seq: List[int], H: CompressedGraph, d: NestedEGDecomposition, g: Graph) -> List[int]:
    """Replace every marked edge on the walk by the longest stored path of its leaf triples."""
    out = [seq[0]]
    used = set(seq)
    for a, b in zip(seq, seq[1:]):
        e = _edge(a, b)
        if e in H.marked_edges:
            P = longest_of(d.triples[i].path.vertices for i in H.marked_edges[e])
            if P[0] != a:
                P = P[::-1]
            if not (set(P[1:-1]) & used):
                out.extend(P[1:])
                used |= set(P)
                continue
        out.append(b)
    return out


def _improve_deepest(seq: List[int], th, threshold: int, trace: DecompressionTrace) -> List[int]:
    """Replace Q's stretch through the deepest decomposed triple by P_h or its boosted form."""
    inside = set(th.graph.vertices)
    pos = {v: i for i, v in enumerate(seq)}
    if th.s not in pos or th.t not in pos:
        trace.anomalies.append("deepest triple endpoints not on Q")
        return seq
    i, j = pos[th.s], pos[th.t]
    flip = i > j
    lo, hi = min(i, j), max(i, j)
    sub = seq[lo:hi + 1]
    if not set(sub) <= inside:
        trace.anomalies.append("Q leaves the deepest triple between its endpoints")
        return seq
    if flip:
        sub = sub[::-1]
    q_edges = sum(1 for a, b in zip(seq, seq[1:]) if a in inside and b in inside and th.graph.has_edge(a, b))
    k = (q_edges - 5) // 8
    dec: EGDecomposition = th.decomposition
    dd = th.inner_degree
    R = th.path.vertices
    if k >= 0 and len(R) - 1 < dd + k:
        try:
            R = boost_non_entering_path(th.graph, dec.P, dec.P1, dec.P2, PathWitness(tuple(sub)), k,
                                        threshold=threshold).vertices
        except (PreconditionError, BoundViolation) as exc:
            trace.anomalies.append(f"boost skipped: {exc}")
    if len(R) > len(sub):
        R = list(R)
        if flip:
            R = R[::-1]
        cand = seq[:lo] + R + seq[hi + 1:]
        if len(set(cand)) == len(cand):
            return cand
    return seq


@dataclass
class NestedRun:
    path: PathWitness
    compressed: CompressedGraph
    q_length: Optional[int]
    decompressed: Optional[PathWitness]
    trace: Optional[DecompressionTrace]
    anomalies: List[str] = field(default_factory=list)


def _connect(g: Graph, s: int, t: int, tr, inner: Sequence[int], threshold: int) -> Optional[Tuple[int, ...]]:
    """Extend an (s_i,t_i)-path to an (s,t)-path through two disjoint connectors."""
    outside = set(g.vertices) - (set(tr.graph.vertices) - {tr.s, tr.t})
    ans = two_disjoint_paths_min_total(g, (s, t), (tr.s, tr.t), 0, maximize=False,
                                       threshold=threshold, within=outside)
    if ans == NO:
        return None
    S1, S2 = ans[0].vertices, ans[1].vertices
    inner = tuple(inner)
    if S1[-1] != inner[0]:
        inner = inner[::-1]
    seq = tuple(S1[:-1]) + inner + tuple(S2[::-1][1:])
    return seq


def run_nested(d: NestedEGDecomposition, oracle: ApproximatorHandle,
               threshold: int = DEFAULT_EXACT_THRESHOLD) -> NestedRun:
    root = d.triples[0]
    g, s, t = root.graph, root.s, root.t
    H = nested_compress(d, threshold)
    anomalies: List[str] = []
    cands: List[Tuple[int, ...]] = []
    q_len = None
    dec = None
    trace = None
    hs, ht = H.rep(s), H.rep(t)
    if hs != ht and is_connected(H.H):
        Q = st_path_from_cycle_oracle(H.H, hs, ht, oracle)
        q_len = Q.length
        trace = DecompressionTrace(Q.length)
        dec = nested_decompress(d, H, Q, threshold, trace)
        anomalies += trace.anomalies
        cands.append(dec.vertices)
    else:
        anomalies.append("compressed graph lost the (s,t) pair")
    for i, tr in enumerate(d.triples):
        local = [eg_long_st_path(tr.graph, tr.s, tr.t, (tr.s, tr.t), threshold=threshold).vertices]
        try:
            local.append(st_path_from_cycle_oracle(tr.graph, tr.s, tr.t, oracle).vertices)
        except OracleError as exc:
            anomalies.append(f"triple {i}: oracle failed: {exc}")
        Pi = longest_of(local)
        seq = _connect(g, s, t, tr, Pi, threshold)
        if seq is None:
            anomalies.append(f"triple {i}: no disjoint connectors to {{s,t}}")
            continue
        cands.append(seq)
    best = longest_of(cands)
    w = PathWitness(tuple(best))
    assert validate_witness(g, w), "nested path invalid"
    return NestedRun(w, H, q_len, dec, trace, anomalies)


def long_nested_st_path(d: NestedEGDecomposition, oracle: ApproximatorHandle,
                        threshold: int = DEFAULT_EXACT_THRESHOLD) -> PathWitness:
    return run_nested(d, oracle, threshold).path


def _checked_run(g: Graph, s: int, t: int, oracle: ApproximatorHandle, threshold: int):
    if s == t:
        raise PreconditionError("s and t must differ")
    if not is_two_connected(g):
        raise PreconditionError("graph is not 2-connected")
    d = build_nested_decomposition(g, s, t, threshold=threshold)
    return d, run_nested(d, oracle, threshold)


def long_st_path(g: Graph, s: int, t: int, oracle: ApproximatorHandle,
                 threshold: int = DEFAULT_EXACT_THRESHOLD) -> PathWitness:
    """The pipeline's (s,t)-path without measuring it."""
    return _checked_run(g, s, t, oracle, threshold)[1].path


def approximate_long_st_path(g: Graph, s: int, t: int, oracle: ApproximatorHandle,
                             threshold: int = DEFAULT_EXACT_THRESHOLD) -> OracleReport:
    """Build the nested decomposition, run the pipeline and measure it against the optimum when small."""
    d, run = _checked_run(g, s, t, oracle, threshold)
    base = min_degree_without(g, (s, t))
    rep = OracleReport(run.path, baseline=base)
    rep.details = {
        "triples": len(d.triples),
        "compressed": run.compressed.compressed,
        "q_length": run.q_length,
        "decompressed_length": None if run.decompressed is None else run.decompressed.length,
        "decompression_bound": None if run.trace is None else run.trace.bound,
        "anomalies": list(run.anomalies),
    }
    if g.n <= threshold:
        opt = exact_longest_st_path(g, s, t, threshold).length
        rep.exact_optimum = opt
        rep.offset_k = opt - base
        rep.floor = base + oracle.guarantee_f(rep.offset_k) / 32 - 3
        rep.floor_satisfied = run.path.length >= rep.floor
    return rep

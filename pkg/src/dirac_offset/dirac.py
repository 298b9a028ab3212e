"""Long cycles above twice the minimum degree, and long paths through an apex."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from ._search import search_cycle
from .eg import (
    CLAUSE_HOST,
    CLAUSE_SIZE,
    Component,
    ViolationReport,
    classify_component,
)
from .graph import (
    CycleWitness,
    Graph,
    GraphError,
    PathWitness,
    PreconditionError,
    components,
    is_two_connected,
    validate_witness,
)
from .oracles import (
    ACYCLIC,
    DEFAULT_EXACT_THRESHOLD,
    ApproximatorHandle,
    BoundViolation,
    InstanceTooLarge,
    OracleReport,
    improve_cycle,
    longest_of,
    split_longest_cycle,
)
from .stpath import long_st_path

CLAUSE_CYCLE = "C is a cycle of the host"
CLAUSE_DIRAC_LENGTH = "|V(C)| ≥ 2δ(G)"
CLAUSE_FORM = "C = P1·P′·P2·P″"
CLAUSE_ARCS = "at least δ(G)−2 edges"
CLAUSE_ARC1 = "exactly one component equals the P′ interior"
CLAUSE_ARC2 = "exactly one component equals the P″ interior"

LOW_DEGREE_CUTOFF = 24


@dataclass(frozen=True)
class DiracDecomposition:
    host: Graph
    C: CycleWitness
    P1: PathWitness
    P2: PathWitness
    Pprime: PathWitness
    Pdprime: PathWitness
    components: Tuple[Component, ...]
    dirac_components: Tuple[frozenset, ...]

    def __bool__(self) -> bool:
        return True


def _orient(C: Sequence[int], P1: Sequence[int]) -> Optional[List[int]]:
    """Rotate (and maybe reflect) C so it starts with P1 in P1's direction."""
    L = len(C)
    if P1[0] not in C:
        return None
    i = list(C).index(P1[0])
    fwd = [C[(i + a) % L] for a in range(L)]
    bwd = [C[(i - a) % L] for a in range(L)]
    for seq in (fwd, bwd):
        if tuple(seq[:len(P1)]) == tuple(P1):
            if len(P1) > 1 or seq is fwd:
                return seq
    return None


def validate_dirac_decomposition(host: Graph, C: CycleWitness, P1: PathWitness,
                                 P2: PathWitness) -> Union[DiracDecomposition, ViolationReport]:
    if not is_two_connected(host):
        return ViolationReport(CLAUSE_HOST)
    C = CycleWitness(tuple(C.vertices))
    if not validate_witness(host, C):
        return ViolationReport(CLAUSE_CYCLE)
    delta = host.min_degree
    if C.length < 2 * delta:
        return ViolationReport(CLAUSE_DIRAC_LENGTH, detail=f"{C.length} < {2 * delta}")
    p1, p2 = tuple(P1.vertices), tuple(P2.vertices)
    seq = _orient(C.vertices, p1) if p1 else None
    if seq is None or not p2 or set(p1) & set(p2):
        return ViolationReport(CLAUSE_FORM)
    L = len(seq)
    if p2[0] not in seq:
        return ViolationReport(CLAUSE_FORM)
    a = seq.index(p2[0])
    if tuple(seq[a:a + len(p2)]) != p2:
        # P2 may be listed against the cycle's direction
        b = seq.index(p2[-1])
        if tuple(seq[b:b + len(p2)]) != p2[::-1]:
            return ViolationReport(CLAUSE_FORM)
        a, p2 = b, p2[::-1]
    l1 = len(p1)
    if a < l1 or a + len(p2) > L:
        return ViolationReport(CLAUSE_FORM)
    Pp = tuple(seq[l1 - 1:a + 1])
    Pdp = tuple(seq[a + len(p2) - 1:]) + (seq[0],)
    for arc in (Pp, Pdp):
        if len(arc) - 1 < delta - 2:
            return ViolationReport(CLAUSE_ARCS, detail=f"{len(arc) - 1} < {delta - 2}")
    ends = set(p1) | set(p2)
    comps = sorted(components(host, ends), key=min)
    for H in comps:
        if len(H) < 3:
            return ViolationReport(CLAUSE_SIZE, H)
    typed = []
    near, far = set(p1), set(p2)
    for H in comps:
        tag, info = classify_component(host, H, near, far, ("D1", "D2", "D3"))
        if tag is None:
            return ViolationReport(info, H)
        typed.append(Component(H, tag, info))
    for clause, arc in ((CLAUSE_ARC1, Pp), (CLAUSE_ARC2, Pdp)):
        inner = frozenset(arc[1:-1])
        if sum(1 for H in comps if H == inner) != 1:
            return ViolationReport(clause)
    dc = []
    for comp in typed:
        if comp.kind == "D1":
            dc.append(comp.vertices)
        else:
            dc.extend(sorted(comp.leaf_blocks(), key=min))
    return DiracDecomposition(host, CycleWitness(tuple(seq)), PathWitness(p1), PathWitness(p2),
                              PathWitness(Pp), PathWitness(Pdp), tuple(typed), tuple(dc))


# the trichotomy for short non-Hamiltonian cycles

@dataclass(frozen=True)
class CycleOutcome:
    kind: str  # longer_cycle | vertex_cover | decomposition | inconclusive
    cycle: Optional[CycleWitness] = None
    cover: Optional[frozenset] = None
    decomposition: Optional[DiracDecomposition] = None


def _greedy_matching(g: Graph) -> int:
    used = set()
    size = 0
    for u, v in g.edges():
        if u not in used and v not in used:
            used |= {u, v}
            size += 1
    return size


def min_vertex_cover(g: Graph, limit: Optional[int] = None) -> Optional[frozenset]:
    """A minimum vertex cover by integer programming; None when it must exceed ``limit``."""
    if limit is not None and _greedy_matching(g) > limit:
        return None
    vs = g.vertices
    if not g.m:
        return frozenset()
    idx = {v: i for i, v in enumerate(vs)}
    A = np.zeros((g.m, len(vs)))
    for r, (u, v) in enumerate(g.edges()):
        A[r, idx[u]] = A[r, idx[v]] = 1
    res = milp(np.ones(len(vs)), constraints=LinearConstraint(A, lb=1, ub=np.inf),
               integrality=np.ones(len(vs)), bounds=Bounds(0, 1))
    if res.x is None:
        return None
    cover = frozenset(v for v in vs if res.x[idx[v]] > 0.5)
    if limit is not None and len(cover) > limit:
        return None
    return cover


def find_dirac_decomposition(g: Graph, C: Sequence[int]) -> Optional[DiracDecomposition]:
    """Search the splits of C into P1, P′, P2, P″ whose arc interiors are closed off from the rest."""
    C = list(C)
    L = len(C)
    delta = g.min_degree
    on = set(C)
    # arcs (start, size) of consecutive cycle vertices with no neighbour off the cycle
    closed = []
    for i in range(L):
        seen = set()
        for size in range(1, L - 3):
            v = C[(i + size - 1) % L]
            if g.adj(v) - on:
                break
            seen.add(v)
            if size + 1 >= delta - 2:
                closed.append((i, size))
    for i, a in closed:
        for j, b in closed:
            # P1 sits between the end of arc a and the start of arc b, P2 after b
            gap1 = (j - (i + a)) % L
            gap2 = (i - (j + b)) % L
            if gap1 < 1 or gap2 < 1 or gap1 + gap2 + a + b != L:
                continue
            P1 = [C[(i + a + x) % L] for x in range(gap1)]
            P2 = [C[(j + b + x) % L] for x in range(gap2)]
            out = validate_dirac_decomposition(g, CycleWitness(tuple(C)), PathWitness(tuple(P1)),
                                               PathWitness(tuple(P2)))
            if isinstance(out, DiracDecomposition):
                return out
    return None


def enlarge_or_decompose_cycle(g: Graph, C: CycleWitness, k: int,
                               threshold: int = DEFAULT_EXACT_THRESHOLD,
                               budget: int = 20000) -> CycleOutcome:
    """A longer cycle, a small vertex cover or a Dirac decomposition for C."""
    if not is_two_connected(g):
        raise PreconditionError("graph is not 2-connected")
    delta, n = g.min_degree, g.n
    if delta < 12 or not (0 < k <= delta / 24) or 2 * k + 12 > delta or not delta < n / 2:
        raise PreconditionError(f"parameters out of range: δ={delta}, k={k}, n={n}")
    if not validate_witness(g, C):
        raise PreconditionError("C is not a cycle of g")
    if C.length == n:
        raise PreconditionError("C is Hamiltonian")
    if C.length >= 2 * delta + k:
        raise PreconditionError("C is already long enough")
    cur = list(C.vertices)
    better = improve_cycle(g, cur, target=len(cur) + 1)
    if len(better) <= len(cur):
        found = search_cycle(g, target=len(cur) + 1, warnsdorff=True, budget=budget)
        if found is not None:
            better = list(found)
    if len(better) > len(cur):
        return CycleOutcome("longer_cycle", cycle=CycleWitness(tuple(better)))
    cover = min_vertex_cover(g, delta + 2 * k)
    if cover is not None:
        return CycleOutcome("vertex_cover", cover=cover)
    dec = find_dirac_decomposition(g, cur)
    if dec is not None:
        return CycleOutcome("decomposition", decomposition=dec)
    if n <= threshold:
        found = search_cycle(g, target=len(cur) + 1)
        if found is not None and len(found) > len(cur):
            return CycleOutcome("longer_cycle", cycle=CycleWitness(tuple(found)))
        raise BoundViolation("no outcome below the exact threshold")
    return CycleOutcome("inconclusive")


# the main cycle routine

def _cycle_at_least(g: Graph, target: int, threshold: int, budget: int = 20000,
                    exhaustive: bool = True) -> Optional[Tuple[int, ...]]:
    c = search_cycle(g, target=target, warnsdorff=True, budget=budget)
    if c is not None and len(c) < target:
        c = tuple(improve_cycle(g, c, target=target))
    if (c is None or len(c) < target) and exhaustive:
        c2 = search_cycle(g, target=target)
        c = longest_of([c, c2])
    return c


def _long_cycle_exists(g: Graph, target: int, threshold: int) -> Optional[Tuple[int, ...]]:
    if g.n < target:
        return None
    if g.n <= threshold:
        best = split_longest_cycle(g, threshold)
        return best if best is not None and len(best) >= target else None
    c = _cycle_at_least(g, target, threshold, exhaustive=False)
    return c if c is not None and len(c) >= target else None


def _separating_pairs(g: Graph):
    for u, v in combinations(g.vertices, 2):
        comps = components(g, (u, v))
        if len(comps) >= 2:
            yield u, v, sorted(comps, key=min)


def approximate_long_cycle(g: Graph, oracle: ApproximatorHandle,
                           threshold: int = DEFAULT_EXACT_THRESHOLD, measure: bool = True) -> OracleReport:
    """A cycle of length at least min(2δ, n), pushed above 2δ through the oracle and decompositions."""
    if not is_two_connected(g):
        raise PreconditionError("graph is not 2-connected")
    delta, n = g.min_degree, g.n
    trail: List[str] = []
    out = oracle.invoke(g)
    best = None if out == ACYCLIC else tuple(out.vertices)
    trail.append("oracle")
    longer = _long_cycle_exists(g, 2 * delta + 1, threshold)
    if longer is None:
        floor = min(2 * delta, n)
        c = _cycle_at_least(g, floor, threshold)
        best = longest_of([best, c])
        trail.append("dirac")
    else:
        best = longest_of([best, longer])
        trail.append("above_dirac")
        if delta > LOW_DEGREE_CUTOFF:
            best = _enlarge_and_split(g, best, oracle, threshold, trail)
    w = CycleWitness(best)
    assert validate_witness(g, w), "cycle invalid"
    if w.length < min(2 * delta, n):
        raise BoundViolation(f"cycle of length {w.length} below min(2δ, n) = {min(2 * delta, n)}")
    rep = OracleReport(w, baseline=2 * delta)
    rep.details = {"steps": trail, "dirac_floor": min(2 * delta, n)}
    if measure and n <= threshold:
        opt = len(split_longest_cycle(g, threshold))
        rep.exact_optimum = opt
        rep.offset_k = opt - 2 * delta
        rep.floor = 2 * delta + oracle.guarantee_f(rep.offset_k) / 128 - 8
        rep.floor_satisfied = w.length >= rep.floor
    return rep


def _enlarge_and_split(g: Graph, best: Tuple[int, ...], oracle: ApproximatorHandle, threshold: int,
                       trail: List[str]) -> Tuple[int, ...]:
    delta, n = g.min_degree, g.n
    cap = delta // 24
    outcome = None
    while len(best) - 2 * delta < cap and len(best) < n:
        k = len(best) - 2 * delta + 1
        outcome = enlarge_or_decompose_cycle(g, CycleWitness(best), k, threshold)
        trail.append(outcome.kind)
        if outcome.kind != "longer_cycle":
            break
        best = tuple(outcome.cycle.vertices)
    if len(best) >= (49 * delta) // 24 or (outcome is not None and outcome.kind == "vertex_cover"):
        return best
    trail.append("separating_pairs")
    for u, v, comps in _separating_pairs(g):
        paths: List[Tuple[int, ...]] = []
        for H in comps:
            sub = g.subgraph(set(H) | {u, v}).with_edges([(u, v)])
            try:
                S = long_st_path(sub, u, v, oracle, threshold).vertices
            except (PreconditionError, GraphError, InstanceTooLarge):
                continue
            if len(S) == 2 and not g.has_edge(u, v):
                continue
            paths.append(S)
        paths.sort(key=lambda p: (-len(p), p))
        if len(paths) >= 2:
            Q, R = paths[0], paths[1]
            cyc = tuple(Q) + tuple(R[::-1][1:-1])
            if len(cyc) >= 3 and validate_witness(g, CycleWitness(cyc)):
                best = longest_of([best, cyc])
    return best


def approximate_long_path(g: Graph, oracle: ApproximatorHandle,
                          threshold: int = DEFAULT_EXACT_THRESHOLD) -> OracleReport:
    """A long path per connected component via a universal apex; the best component wins."""
    if g.n == 0:
        raise GraphError("empty graph")
    reports = []
    for comp in sorted(components(g), key=min):
        h = g.subgraph(comp)
        reports.append(_component_path(h, oracle, threshold))
    return max(reports, key=lambda r: (r.length, tuple(-x for x in r.witness.vertices)))


def _component_path(h: Graph, oracle: ApproximatorHandle, threshold: int) -> OracleReport:
    delta = h.min_degree
    if h.n == 1:
        w = PathWitness(h.vertices)
        rep = OracleReport(w, baseline=0)
    else:
        apex = max(h.vertices) + 1
        ag = h.with_edges([(apex, v) for v in h.vertices])
        # the apex is auxiliary, so the size limits grow by one with it
        crep = approximate_long_cycle(ag, oracle.widened(1), threshold + 1, measure=False)
        c = list(crep.witness.vertices)
        if apex in c:
            i = c.index(apex)
            seq = c[i + 1:] + c[:i]
        else:
            seq = c
        w = PathWitness(tuple(seq))
        assert validate_witness(h, w), "apex removal left an invalid path"
        rep = OracleReport(w, baseline=2 * delta, details={"steps": crep.details["steps"]})
        if h.n <= threshold:
            opt = len(split_longest_cycle(ag, threshold + 1)) - 2
            rep.exact_optimum = opt
            rep.offset_k = opt - 2 * delta
            rep.floor = 2 * delta + oracle.guarantee_f(rep.offset_k) / 128 - 8
            rep.floor_satisfied = w.length >= rep.floor
    rep.details["component"] = sorted(h.vertices)
    return rep

"""Exact reference solvers, approximation-oracle handles and oracle reductions."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from . import _search
from ._search import bitgraph, disjoint_paths, search_cycle, search_path
from .graph import (
    CycleWitness,
    Graph,
    GraphError,
    PathWitness,
    blocks_of,
    components,
    is_connected,
    is_two_connected,
    min_degree_without,
    validate_witness,
)

DEFAULT_EXACT_THRESHOLD = 18
ACYCLIC = "acyclic"
NO = "No"


class OracleError(RuntimeError):
    pass


class InstanceTooLarge(OracleError):
    def __init__(self, n: int, threshold: int):
        super().__init__(f"instance too large for exact oracle (n={n} > {threshold})")


class BoundViolation(AssertionError):
    """A constructive routine failed to reach the length it is supposed to certify."""


def _better(a: Optional[Sequence[int]], b: Optional[Sequence[int]]) -> bool:
    """True when witness a beats b: longer, or equally long and lexicographically smaller."""
    if a is None:
        return False
    if b is None:
        return True
    return (len(a), tuple(-x for x in a)) > (len(b), tuple(-x for x in b))


def longest_of(cands: Iterable[Optional[Sequence[int]]]):
    best = None
    for c in cands:
        if _better(c, best):
            best = c
    return best


# exact solvers

@lru_cache(maxsize=2048)
def _exact_cycle_cached(g: Graph) -> Optional[Tuple[int, ...]]:
    return search_cycle(g)


@lru_cache(maxsize=8192)
def _exact_path_cached(g: Graph, s: int, t: int) -> Optional[Tuple[int, ...]]:
    return search_path(g, s, t)


def exact_longest_cycle(g: Graph, threshold: int = DEFAULT_EXACT_THRESHOLD) -> Union[CycleWitness, str]:
    """Longest cycle of g, lexicographically smallest among the longest, or "acyclic"."""
    if g.n > threshold:
        raise InstanceTooLarge(g.n, threshold)
    c = _exact_cycle_cached(g)
    return ACYCLIC if c is None else CycleWitness(c)


def exact_longest_st_path(g: Graph, s: int, t: int, threshold: int = DEFAULT_EXACT_THRESHOLD) -> PathWitness:
    if s == t:
        raise GraphError("s and t must differ")
    if not (g.has_vertex(s) and g.has_vertex(t)):
        raise GraphError("s or t not in graph")
    if g.n > threshold:
        raise InstanceTooLarge(g.n, threshold)
    p = _exact_path_cached(g, s, t)
    if p is None:
        raise GraphError("disconnected pair")
    return PathWitness(p)


def _balanced_two_cut(g: Graph) -> Optional[Tuple[int, int]]:
    best = None
    vs = g.vertices
    for i, x in enumerate(vs):
        for y in vs[i + 1:]:
            comps = components(g, (x, y))
            if len(comps) < 2:
                continue
            worst = max(len(c) for c in comps)
            if best is None or worst < best[0]:
                best = (worst, x, y)
    return None if best is None else (best[1], best[2])


def split_longest_cycle(g: Graph, threshold: int = DEFAULT_EXACT_THRESHOLD) -> Optional[Tuple[int, ...]]:
    """Exact longest cycle that splits blocks larger than the threshold at 2-cuts.

    A cycle avoiding one of x, y lives in one piece G[X ∪ {x,y}]; a cycle
    through both is the union of two x–y paths through distinct sides (the
    edge xy counting as a side of its own). Pieces larger than the threshold
    are split again; a 3-connected piece above it is refused.
    """
    best = None
    for blk in sorted(blocks_of(g), key=lambda b: sorted(b)):
        if len(blk) < 3:
            continue
        sub = g.subgraph(blk)
        if sub.n <= threshold:
            c = _exact_cycle_cached(sub)
        else:
            c = _split_block_cycle(sub, threshold)
        if _better(c, best):
            best = c
    return best


def _split_block_cycle(b: Graph, threshold: int) -> Optional[Tuple[int, ...]]:
    cut = _balanced_two_cut(b)
    if cut is None:
        raise InstanceTooLarge(b.n, threshold)
    x, y = cut
    cands: List[Tuple[int, ...]] = []
    arcs: List[Tuple[int, ...]] = []
    for comp in sorted(components(b, cut), key=min):
        piece = b.subgraph(set(comp) | {x, y})
        c = split_longest_cycle(piece, threshold)
        if c is not None:
            cands.append(c)
        through = piece.without_edges([(x, y)]) if piece.has_edge(x, y) else piece
        if through.n > threshold:
            raise InstanceTooLarge(through.n, threshold)
        p = _exact_path_cached(through, x, y)
        if p is not None:
            arcs.append(p)
    if b.has_edge(x, y):
        arcs.append((x, y))
    arcs.sort(key=lambda p: (-len(p), p))
    if len(arcs) >= 2:
        p, q = arcs[0], arcs[1]
        cands.append(tuple(p) + tuple(reversed(q[1:-1])))
    return longest_of(cands)


def _canonical_cycle(c: Sequence[int]) -> Tuple[int, ...]:
    i = c.index(min(c))
    rot = tuple(c[i:]) + tuple(c[:i])
    if len(rot) > 2 and rot[-1] < rot[1]:
        rot = (rot[0],) + tuple(reversed(rot[1:]))
    return rot


# approximation oracles

@dataclass(frozen=True)
class ApproximatorHandle:
    """A black-box long-cycle approximator and the guarantee it claims.

    ``invoke`` maps a graph to a cycle witness or "acyclic"; ``guarantee_f``
    is clamped so that f(x) <= x.
    """

    name: str
    invoke_fn: Callable[[Graph], Union[CycleWitness, str]]
    raw_f: Callable[[float], float] = field(default=lambda x: x)
    # size limit of an exact oracle, None for oracles without one
    threshold: Optional[int] = None

    def widened(self, extra: int) -> "ApproximatorHandle":
        """The same oracle allowed ``extra`` more vertices (for auxiliary apex vertices)."""
        if self.threshold is None:
            return self
        return exact_oracle(self.threshold + extra)

    def guarantee_f(self, x: float) -> float:
        return min(x, self.raw_f(x))

    def invoke(self, g: Graph) -> Union[CycleWitness, str]:
        out = self.invoke_fn(g)
        if out != ACYCLIC:
            ok = validate_witness(g, out)
            if not ok:
                raise OracleError(f"oracle {self.name} returned an invalid cycle: {ok.reason}")
        return out


def exact_oracle(threshold: int = DEFAULT_EXACT_THRESHOLD) -> ApproximatorHandle:
    def invoke(g: Graph):
        c = split_longest_cycle(g, threshold)
        return ACYCLIC if c is None else CycleWitness(c)

    return ApproximatorHandle("exact", invoke, lambda x: x, threshold)


def heuristic_long_cycle(g: Graph, budget: int = 20000) -> Optional[Tuple[int, ...]]:
    """DFS with Warnsdorff ordering under an expansion budget, then arc exchange."""
    best = None
    for blk in sorted(blocks_of(g), key=lambda b: (-len(b), sorted(b))):
        if len(blk) < 3 or (best is not None and len(blk) <= len(best)):
            continue
        sub = g.subgraph(blk)
        c = search_cycle(sub, warnsdorff=True, budget=budget)
        if c is not None:
            c = tuple(improve_cycle(sub, c))
        if _better(c, best):
            best = c
    return best


def dfs_heuristic_oracle(budget: int = 20000) -> ApproximatorHandle:
    def invoke(g: Graph):
        c = heuristic_long_cycle(g, budget)
        return ACYCLIC if c is None else CycleWitness(c)

    return ApproximatorHandle("dfs-heuristic", invoke, lambda x: min(x, 3.0))


def get_oracle(name: str, threshold: int = DEFAULT_EXACT_THRESHOLD) -> ApproximatorHandle:
    if name == "exact":
        return exact_oracle(threshold)
    if name == "dfs-heuristic":
        return dfs_heuristic_oracle()
    raise ValueError(f"unknown oracle {name!r}")


@dataclass
class OracleReport:
    witness: Union[PathWitness, CycleWitness]
    exact_optimum: Optional[int] = None
    offset_k: Optional[int] = None
    baseline: Optional[int] = None
    floor: Optional[float] = None
    floor_satisfied: Optional[bool] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def length(self) -> int:
        return self.witness.length


# local improvement

def _outside_components(g: Graph, used: set, allowed: Optional[set]) -> List[frozenset]:
    drop = set(used)
    if allowed is not None:
        drop |= set(g.vertices) - allowed
    return sorted(components(g, drop), key=min)


def improve_path(g: Graph, path: Sequence[int], target: Optional[int] = None,
                 allowed: Optional[Iterable[int]] = None, budget: int = 4000) -> List[int]:
    """Lengthen an (s,t)-path by rerouting subpaths through unused vertices.

    Repeatedly looks for two path vertices P[i], P[j] attached to the same
    outside component and a route through it with more than j-i edges.
    """
    allowed = None if allowed is None else set(allowed)
    P = list(path)
    while target is None or len(P) - 1 < target:
        changed = False
        on = set(P)
        for comp in _outside_components(g, on, allowed):
            att = [i for i, v in enumerate(P) if g.adj(v) & comp]
            pairs = sorted(((i, j) for a, i in enumerate(att) for j in att[a + 1:]), key=lambda p: (p[1] - p[0], p))
            for i, j in pairs:
                q = search_path(g, P[i], P[j], allowed=comp, target=j - i + 1, warnsdorff=True, budget=budget)
                if q is not None and len(q) - 1 > j - i:
                    P = P[:i] + list(q) + P[j + 1:]
                    changed = True
                    break
            if changed:
                break
        if not changed:
            break
    return P


def improve_cycle(g: Graph, cycle: Sequence[int], target: Optional[int] = None, budget: int = 4000) -> List[int]:
    """Lengthen a cycle by replacing an arc with a longer route through unused vertices."""
    C = list(cycle)
    while target is None or len(C) < target:
        changed = False
        on = set(C)
        L = len(C)
        for comp in _outside_components(g, on, None):
            att = [i for i, v in enumerate(C) if g.adj(v) & comp]
            pairs = []
            for a, i in enumerate(att):
                for j in att[a + 1:]:
                    d = j - i
                    pairs.append((min(d, L - d), i, j))
            pairs.sort()
            for d, i, j in pairs:
                q = search_path(g, C[i], C[j], allowed=comp, target=d + 1, warnsdorff=True, budget=budget)
                if q is None or len(q) - 1 <= d:
                    continue
                if j - i == d:
                    # replace forward arc C[i..j]
                    C = C[:i] + list(q) + C[j + 1:]
                else:
                    # replace the arc C[j..L-1] + C[0..i]: keep C[i..j], close through q reversed
                    C = C[i:j + 1] + list(reversed(q))[1:-1]
                changed = True
                break
            if changed:
                break
        if not changed:
            break
    return C


# oracle reductions

def glue_at(g: Graph, s: int, t: int) -> Tuple[Graph, Dict[int, int]]:
    """Two copies of g identified at s and t; returns the glued graph and copy-2 → original map."""
    off = max(g.vertices) + 1
    back: Dict[int, int] = {}

    def lab(v: int) -> int:
        return v if v in (s, t) else v + off

    edges = list(g.edges())
    for u, v in g.edges():
        a, b = lab(u), lab(v)
        back[a] = u
        back[b] = v
        edges.append((a, b))
    return Graph.from_edges(edges, list(g.vertices) + [lab(v) for v in g.vertices]), back


def st_path_from_cycle_oracle(g: Graph, s: int, t: int, oracle: ApproximatorHandle) -> PathWitness:
    """An (s,t)-path at least half as long as the cycle the oracle finds in the doubled graph."""
    if s == t:
        raise GraphError("s and t must differ")
    if not is_connected(g):
        raise GraphError("graph not connected")
    if g.has_edge(s, t):
        h = g.without_edges([(s, t)])
        if t not in _reachable(h, s):
            return PathWitness((s, t))
    glued, back = glue_at(g, s, t)
    block = next(b for b in blocks_of(glued) if s in b and t in b)
    bg = glued.subgraph(block)
    c = oracle.invoke(bg)
    if c == ACYCLIC:
        raise OracleError("oracle reported no cycle in a 2-connected block")
    p = path_between_via_cycle(bg, c, s, t)
    mapped = tuple(back.get(v, v) for v in p.vertices)
    out = PathWitness(mapped)
    assert validate_witness(g, out), "mapped path invalid"
    assert 2 * out.length >= c.length, "doubling construction lost length"
    return out


def _reachable(g: Graph, s: int) -> set:
    seen = {s}
    stack = [s]
    while stack:
        x = stack.pop()
        for y in g.adj(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def path_between_via_cycle(g: Graph, c: CycleWitness, s: int, t: int) -> PathWitness:
    """An (s,t)-path using the longer arc of c between two disjoint connectors."""
    if s == t:
        raise GraphError("s and t must differ")
    if not is_two_connected(g):
        raise GraphError("graph is not 2-connected")
    C = list(c.vertices)
    L = len(C)
    on = set(C)
    conns = disjoint_paths(g, [s, t], C, 2)
    if len(conns) < 2:
        raise GraphError("no two disjoint connectors to the cycle")
    cut = []
    for p in conns:
        for i, v in enumerate(p):
            if v in on:
                cut.append(p[:i + 1])
                break
    ps = next(p for p in cut if p[0] == s)
    pt = next(p for p in cut if p[0] == t)
    x, y = ps[-1], pt[-1]
    i, j = C.index(x), C.index(y)
    fwd = [C[(i + a) % L] for a in range((j - i) % L + 1)]
    bwd = [C[(i - a) % L] for a in range((i - j) % L + 1)]
    arcs = sorted([fwd, bwd], key=lambda a: (-len(a), a))
    seq = ps[:-1] + arcs[0] + list(reversed(pt[:-1]))
    out = PathWitness(tuple(seq))
    assert validate_witness(g, out), "connector splice invalid"
    return out


def two_disjoint_paths_min_total(g: Graph, pair_a: Sequence[int], pair_b: Sequence[int], k: int,
                                 maximize: Optional[bool] = None,
                                 threshold: int = DEFAULT_EXACT_THRESHOLD,
                                 within: Optional[Iterable[int]] = None):
    """Two vertex-disjoint paths matching pair_a to pair_b with total length >= k, or "No".

    Equivalent to a cycle of length >= k+4 through two apices u ~ pair_a and
    v ~ pair_b. The search grows the path leaving a1 until it meets pair_b
    and pairs it with a longest path from the other b back to a2, pruning
    every partial path whose completion is infeasible by a two-path flow
    test. With ``maximize`` (default for n <= threshold) the pair of largest
    total is returned; otherwise the first pair reaching k.
    ``within`` restricts all paths to a vertex subset.
    """
    a1, a2 = pair_a
    b1, b2 = pair_b
    if a1 == a2 or b1 == b2:
        raise GraphError("pair endpoints must be distinct")
    space = set(g.vertices) if within is None else set(within) | {a1, a2, b1, b2}
    h = g if within is None else g.subgraph(space)
    if maximize is None:
        maximize = h.n <= threshold
    B = {b1, b2}
    bgr = bitgraph(h)
    adj = bgr.adj
    idx = bgr.index
    full = bgr.full
    best: List = [-1, None]
    memo = set()
    shift = bgr.n.bit_length()

    def finish(p1: List[int], mask: int) -> bool:
        end = p1[-1]
        other = b2 if end == b1 else b1
        free = full & ~mask
        need = max(k - (len(p1) - 1), 0)
        if other == a2:
            p2 = (a2,)
        else:
            if (free >> idx[other]) & 1 == 0 or (free >> idx[a2]) & 1 == 0:
                return False
            allowed = [bgr.labels[i] for i in _search.bits(free)]
            if maximize:
                p2 = search_path(h, other, a2, allowed=allowed)
            else:
                p2 = search_path(h, other, a2, allowed=allowed, target=need)
            if p2 is None:
                return False
            p2 = tuple(reversed(p2))
        total = len(p1) - 1 + len(p2) - 1
        if total > best[0]:
            best[0] = total
            best[1] = (tuple(p1), tuple(p2))
        return (not maximize) and total >= k

    def feasible(x: int, mask: int) -> bool:
        blocked = [bgr.labels[i] for i in _search.bits(mask) if bgr.labels[i] != x]
        return len(disjoint_paths(h, [x, a2], [b1, b2], 2, blocked=blocked)) == 2

    if a1 in B:
        if a2 in B or a1 == b1 or a1 == b2:
            finish([a1], 1 << idx[a1])
    else:
        path = [a1]
        forbidden = (1 << idx[a2])

        def dfs(x: int, mask: int) -> bool:
            if x in B:
                return finish(path, mask)
            key = (mask << shift) | idx[x]
            if key in memo:
                return False
            memo.add(key)
            free = full & ~mask
            bound = len(path) - 1 + free.bit_count()
            if bound <= best[0] or bound < k:
                return False
            if not feasible(x, mask):
                return False
            for ui in _search.bits(adj[idx[x]] & free & ~forbidden):
                u = bgr.labels[ui]
                path.append(u)
                done = dfs(u, mask | (1 << ui))
                path.pop()
                if done:
                    return True
            return False

        dfs(a1, 1 << idx[a1])
    if best[1] is None or best[0] < k:
        return NO
    p1, p2 = best[1]
    return PathWitness(p1), PathWitness(p2)


def eg_long_st_path(g: Graph, s: int, t: int, B: Iterable[int] = (),
                    threshold: int = DEFAULT_EXACT_THRESHOLD, budget: int = 20000) -> PathWitness:
    """An (s,t)-path of length at least δ(g − B) in a 2-connected graph.

    Tries, in order: a budgeted Warnsdorff DFS, rerouting through unused
    vertices, and below the threshold an exhaustive search. Raises
    BoundViolation if none reaches the bound.
    """
    if s == t:
        raise GraphError("s and t must differ")
    if not is_two_connected(g):
        raise GraphError("graph is not 2-connected")
    target = min_degree_without(g, B)
    p = search_path(g, s, t, target=target, warnsdorff=True, budget=budget)
    if p is None:
        p = _bfs_path(g, s, t)
    if len(p) - 1 < target:
        p = tuple(improve_path(g, p, target=target))
    if len(p) - 1 < target and g.n <= threshold:
        q = search_path(g, s, t, target=target)
        if q is not None and len(q) > len(p):
            p = q
    if len(p) - 1 < target:
        raise BoundViolation(f"found (s,t)-path of length {len(p) - 1} < δ(G−B) = {target}")
    return PathWitness(tuple(p))


def _bfs_path(g: Graph, s: int, t: int, allowed: Optional[set] = None) -> Tuple[int, ...]:
    prev = {s: None}
    queue = [s]
    for x in queue:
        if x == t:
            break
        for y in sorted(g.adj(x)):
            if y not in prev and (allowed is None or y in allowed or y == t):
                prev[y] = x
                queue.append(y)
    if t not in prev:
        raise GraphError("disconnected pair")
    out = [t]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return tuple(reversed(out))


def long_path_between(g: Graph, s: int, t: int, target: int, allowed: Optional[Iterable[int]] = None,
                      threshold: int = DEFAULT_EXACT_THRESHOLD, budget: int = 20000) -> Optional[PathWitness]:
    """Best-effort (s,t)-path of at least ``target`` edges inside ``allowed``.

    Returns the longest path found (possibly below target); None if s and t
    are not connected within ``allowed``.
    """
    allowed_set = None if allowed is None else set(allowed) | {s, t}
    p = search_path(g, s, t, target=target, allowed=allowed_set, warnsdorff=True, budget=budget)
    if p is None:
        try:
            p = _bfs_path(g, s, t, allowed_set)
        except GraphError:
            return None
    if len(p) - 1 < target:
        p = tuple(improve_path(g, p, target=target, allowed=allowed_set))
    size = g.n if allowed_set is None else len(allowed_set)
    if len(p) - 1 < target and size <= threshold:
        q = search_path(g, s, t, target=target, allowed=allowed_set)
        if q is not None and len(q) > len(p):
            p = q
    return PathWitness(tuple(p))

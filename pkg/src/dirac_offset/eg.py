"""Erdős–Gallai decompositions of (s,t)-path instances and their nesting.

A decomposition of an (s,t)-path P is given by an initial subpath P1 (from s)
and a final subpath P2 (to t). Deleting V(P1 ∪ P2) must leave at least two
components, each with three or more vertices and each of one of three
types: R1 (2-connected, touching each of P1 and P2 through a single-edge
matching), R2 (separable, one attachment vertex on P1, leaf-block interiors
avoiding P2) or R3 (the mirror image). The R1 components and the
leaf-blocks of R2/R3 components are the places a longest path is forced
through, and every one of them spawns a smaller instance of the same
problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from .graph import (
    BlockTree,
    Graph,
    PathWitness,
    PreconditionError,
    block_cut_tree,
    components,
    is_two_connected,
    min_degree_without,
    validate_witness,
)
from .oracles import (
    DEFAULT_EXACT_THRESHOLD,
    BoundViolation,
    _bfs_path,
    disjoint_paths,
    eg_long_st_path,
    improve_path,
    long_path_between,
    longest_of,
    search_path,
)
from ._search import bitgraph, bits

DEGREE_THRESHOLD = 16

# clause names shared with the cycle analogue
CLAUSE_HOST = "host 2-connected"
CLAUSE_PATH = "P = P1·P′·P2"
CLAUSE_LENGTH = "|E(P′)| ≥ δ(G−{s,t})"
CLAUSE_TWO = "at least two connected components"
CLAUSE_SIZE = "|V(H)| ≥ 3"
CLAUSE_MATCH1 = "matching to P1 is one"
CLAUSE_MATCH2 = "matching to P2 is one"
CLAUSE_SINGLE = "single attachment vertex"
CLAUSE_LEAF = "leaf-block inner vertices avoid the far path"


class DecompositionError(RuntimeError):
    """The finder could neither lengthen the path nor certify a decomposition."""


@dataclass(frozen=True)
class ViolationReport:
    clause: str
    component: Optional[FrozenSet[int]] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        where = f" at component {sorted(self.component)}" if self.component is not None else ""
        return f"violated: {self.clause}{where}" + (f" ({self.detail})" if self.detail else "")


@dataclass(frozen=True)
class Component:
    vertices: FrozenSet[int]
    kind: str
    blocks: Optional[BlockTree] = None

    def leaf_blocks(self) -> List[FrozenSet[int]]:
        return [] if self.blocks is None else list(self.blocks.leaf_blocks)


@dataclass(frozen=True)
class EGDecomposition:
    host: Graph
    s: int
    t: int
    P: PathWitness
    P1: PathWitness
    P2: PathWitness
    components: Tuple[Component, ...]
    eg_components: Tuple[FrozenSet[int], ...]

    @property
    def inner_length(self) -> int:
        return len(self.P) - len(self.P1) - len(self.P2) + 1

    def owner(self, M: Iterable[int]) -> Component:
        M = frozenset(M)
        for comp in self.components:
            if M <= comp.vertices:
                return comp
        raise KeyError(f"{sorted(M)} is not inside a component")

    def __bool__(self) -> bool:
        return True


def matching_cover(host: Graph, X: Iterable[int], Y: Iterable[int]) -> Tuple[int, Optional[int]]:
    """Size (0, 1 or 2 meaning "at least two") of a maximum X–Y matching, and a cover vertex when it is one.

    A bipartite edge set has maximum matching one exactly when all its edges
    share an endpoint. When they share an X-endpoint that one is preferred.
    """
    X, Y = set(X), set(Y)
    edges = [(x, y) for x in sorted(X) for y in sorted(host.adj(x) & Y)]
    if not edges:
        return 0, None
    xs = {x for x, _ in edges}
    ys = {y for _, y in edges}
    if len(xs) == 1:
        return 1, next(iter(xs))
    if len(ys) == 1:
        return 1, next(iter(ys))
    return 2, None


def classify_component(host: Graph, H: FrozenSet[int], near: Set[int], far: Set[int],
                       tags: Tuple[str, str, str] = ("R1", "R2", "R3")):
    """Type a component against the two end paths. Returns (tag, blocks) or (None, failed clause)."""
    sub = host.subgraph(H)
    if is_two_connected(sub):
        if matching_cover(host, H, near)[0] != 1:
            return None, f"{tags[0]} {CLAUSE_MATCH1}"
        if matching_cover(host, H, far)[0] != 1:
            return None, f"{tags[0]} {CLAUSE_MATCH2}"
        return tags[0], None
    bt = block_cut_tree(sub)
    inner: Set[int] = set()
    for L in bt.leaf_blocks:
        inner |= bt.inner_vertices[L]
    nbrs: Set[int] = set()
    for v in H:
        nbrs |= host.adj(v)
    touches_far = any(host.adj(v) & far for v in inner)
    touches_near = any(host.adj(v) & near for v in inner)
    single_near = len(nbrs & near) == 1
    single_far = len(nbrs & far) == 1
    if single_near and not touches_far:
        return tags[1], bt
    if single_far and not touches_near:
        return tags[2], bt
    if not single_near and not single_far:
        return None, f"{tags[1]}/{tags[2]} {CLAUSE_SINGLE}"
    return None, f"{tags[1]}/{tags[2]} {CLAUSE_LEAF}"


def validate_eg_decomposition(host: Graph, s: int, t: int, P: PathWitness, P1: PathWitness,
                              P2: PathWitness) -> Union[EGDecomposition, ViolationReport]:
    if not is_two_connected(host):
        return ViolationReport(CLAUSE_HOST)
    P, P1, P2 = PathWitness(P.vertices), PathWitness(P1.vertices), PathWitness(P2.vertices)
    pv = P.vertices
    if (not validate_witness(host, P) or pv[0] != s or pv[-1] != t
            or pv[:len(P1)] != P1.vertices or pv[len(pv) - len(P2):] != P2.vertices
            or len(P1) + len(P2) > len(pv)):
        return ViolationReport(CLAUSE_PATH)
    dd = min_degree_without(host, (s, t))
    inner = len(pv) - len(P1) - len(P2) + 1
    if inner < dd:
        return ViolationReport(CLAUSE_LENGTH, detail=f"{inner} < {dd}")
    ends = set(P1.vertices) | set(P2.vertices)
    comps = sorted(components(host, ends), key=min)
    if len(comps) < 2:
        return ViolationReport(CLAUSE_TWO, detail=f"{len(comps)} component(s)")
    for H in comps:
        if len(H) < 3:
            return ViolationReport(CLAUSE_SIZE, H)
    typed: List[Component] = []
    near, far = set(P1.vertices), set(P2.vertices)
    for H in comps:
        tag, info = classify_component(host, H, near, far)
        if tag is None:
            return ViolationReport(info, H)
        typed.append(Component(H, tag, info))
    eg: List[FrozenSet[int]] = []
    for comp in typed:
        if comp.kind == "R1":
            eg.append(comp.vertices)
        else:
            eg.extend(sorted(comp.leaf_blocks(), key=min))
    return EGDecomposition(host, s, t, P, P1, P2, tuple(typed), tuple(eg))


# component instances

@dataclass(frozen=True)
class ComponentInstance:
    K: Graph
    s: int
    t: int
    origin: FrozenSet[int]


def eg_component_to_instance(d: EGDecomposition, M: Iterable[int]) -> ComponentInstance:
    """The 2-connected instance (K, s′, t′) that every (s,t)-path entering M traverses."""
    M = frozenset(M)
    if M not in d.eg_components:
        raise PreconditionError("M is not an eg_component of the decomposition")
    comp = d.owner(M)
    host = d.host
    near, far = set(d.P1.vertices), set(d.P2.vertices)
    if comp.kind == "R1":
        sp = matching_cover(host, M, near)[1]
        tp = matching_cover(host, M, far)[1]
    else:
        c = comp.blocks.cut_vertex_of(M)
        interior = M - {c}
        if comp.kind == "R2":
            sp, tp = _attachment(host, interior, near), c
        else:
            sp, tp = c, _attachment(host, interior, far)
    K = host.subgraph(M | {sp, tp})
    assert sp != tp, "component instance endpoints coincide"
    assert is_two_connected(K), "component instance is not 2-connected"
    bound = min_degree_without(host, (d.s, d.t)) - 2
    assert min_degree_without(K, (sp, tp)) >= bound, "component instance lost too much degree"
    return ComponentInstance(K, sp, tp, M)


def _attachment(host: Graph, interior: Set[int], side: Set[int]) -> int:
    size, cover = matching_cover(host, interior, side)
    if cover is not None:
        return cover
    # several interior vertices and several path vertices: R2/R3 forces a single path vertex
    nb = set()
    for v in interior:
        nb |= host.adj(v) & side
    if len(nb) == 1:
        return next(iter(nb))
    raise AssertionError("leaf-block attaches to the path through more than one vertex")


# the find-or-decompose routine

def _ceil_target(dd: int, n: int) -> int:
    return min(math.ceil(1.25 * dd - 3), n - 1)


def _enlarge(g: Graph, s: int, t: int, target: int, budget: int = 20000) -> Tuple[int, ...]:
    p = search_path(g, s, t, target=target, warnsdorff=True, budget=budget)
    if p is None:
        p = _bfs_path(g, s, t)
    if len(p) - 1 < target:
        p = tuple(improve_path(g, p, target=target))
    return p


def find_decomposition(g: Graph, s: int, t: int, P: Sequence[int]) -> Optional[EGDecomposition]:
    """The valid split of P with the shortest P1 and P2 (total, then P1), if any."""
    P = tuple(P)
    dd = min_degree_without(g, (s, t))
    L = len(P)
    splits = []
    for a in range(1, L):
        for b in range(1, L - a + 1):
            inner = L - a - b + 1
            if inner >= dd:
                splits.append((a + b, a, b))
    splits.sort()
    pw = PathWitness(P)
    for _, a, b in splits:
        out = validate_eg_decomposition(g, s, t, pw, PathWitness(P[:a]), PathWitness(P[L - b:]))
        if isinstance(out, EGDecomposition):
            return out
    return None


def linked_paths(g: Graph, pairs: Sequence[Tuple[int, int]], allowed: Iterable[int]) -> Optional[List[Tuple[int, ...]]]:
    """Vertex-disjoint paths joining each (x_i, y_i) inside ``allowed``, or None.

    Backtracking over the first unrouted pair; each partial path is kept only
    while a flow of the right size still connects the current frontier to the
    remaining targets.
    """
    allowed = set(allowed)
    for x, y in pairs:
        allowed |= {x, y}
    ends = [v for p in pairs for v in p]
    if len(set(ends)) < len(ends):
        # shared endpoints only make sense for one-vertex paths
        for x, y in pairs:
            if x != y and (ends.count(x) > 1 or ends.count(y) > 1):
                return None
    h = g.subgraph(allowed)
    bgr = bitgraph(h)
    idx = bgr.index

    def route(i: int, used: int) -> Optional[List[Tuple[int, ...]]]:
        if i == len(pairs):
            return []
        x, y = pairs[i]
        if x == y:
            rest = route(i + 1, used | (1 << idx[x]))
            return None if rest is None else [(x,)] + rest
        reserved = 0
        for a, b in pairs[i + 1:]:
            reserved |= (1 << idx[a]) | (1 << idx[b])
        memo = set()
        path = [x]

        def feasible(v: int, mask: int) -> bool:
            blocked = [bgr.labels[j] for j in bits(mask) if bgr.labels[j] != v]
            srcs = [v] + [a for a, _ in pairs[i + 1:]]
            dsts = [y] + [b for _, b in pairs[i + 1:]]
            return len(disjoint_paths(h, srcs, dsts, len(srcs), blocked=blocked)) == len(srcs)

        def dfs(v: int, mask: int):
            if v == y:
                return route(i + 1, mask)
            key = (mask, v)
            if key in memo:
                return None
            memo.add(key)
            if not feasible(v, mask):
                return None
            for uj in bits(bgr.adj[idx[v]] & ~mask & ~(reserved & ~(1 << idx[y]))):
                u = bgr.labels[uj]
                path.append(u)
                rest = dfs(u, mask | (1 << uj))
                if rest is not None:
                    out = [tuple(path)] + rest
                    path.pop()
                    return out
                path.pop()
            return None

        return dfs(x, used | (1 << idx[x]))

    start = 0
    return route(0, start)


def _combine_through_two(d: EGDecomposition, M1, M2, threshold: int) -> Optional[PathWitness]:
    """An (s,t)-path entering both M1 and M2, if three linking paths exist."""
    g = d.host
    k1 = eg_component_to_instance(d, M1)
    k2 = eg_component_to_instance(d, M2)
    inside = set(k1.K.vertices) | set(k2.K.vertices)
    outside = [v for v in g.vertices if v not in inside]
    for a1, b1 in ((k1.s, k1.t), (k1.t, k1.s)):
        for a2, b2 in ((k2.s, k2.t), (k2.t, k2.s)):
            pairs = [(d.s, a1), (b1, a2), (b2, d.t)]
            if any(x in inside and x not in (a1, b1, a2, b2) for x in (d.s, d.t)):
                continue
            links = linked_paths(g, pairs, outside)
            if links is None:
                continue
            q1 = eg_long_st_path(k1.K, a1, b1, (a1, b1), threshold=threshold)
            q2 = eg_long_st_path(k2.K, a2, b2, (a2, b2), threshold=threshold)
            seq = list(links[0]) + list(q1.vertices[1:]) + list(links[1][1:]) + list(q2.vertices[1:]) + list(links[2][1:])
            w = PathWitness(tuple(seq))
            if validate_witness(g, w):
                return w
    return None


def long_path_or_eg_decomposition(g: Graph, s: int, t: int,
                                  threshold: int = DEFAULT_EXACT_THRESHOLD) -> Union[PathWitness, EGDecomposition]:
    """Either a long (s,t)-path or a decomposition no (s,t)-path can use twice.

    The path outcome has length at least min(5/4·δ(g−{s,t}) − 3, n − 1).
    """
    if s == t:
        raise PreconditionError("s and t must differ")
    if not is_two_connected(g):
        raise PreconditionError("graph is not 2-connected")
    dd = min_degree_without(g, (s, t))
    if dd < DEGREE_THRESHOLD:
        raise PreconditionError(f"δ(g−{{s,t}}) = {dd} < {DEGREE_THRESHOLD}")
    target = _ceil_target(dd, g.n)
    P = _enlarge(g, s, t, target)
    if len(P) - 1 >= target:
        return PathWitness(P)
    dec = find_decomposition(g, s, t, P)
    if dec is None:
        if g.n <= threshold:
            q = search_path(g, s, t, target=target)
            if q is not None and len(q) - 1 >= target:
                return PathWitness(q)
        raise DecompositionError("inconclusive: no long path and no decomposition found")
    egc = dec.eg_components
    for i, M1 in enumerate(egc):
        for j, M2 in enumerate(egc):
            if i == j:
                continue
            w = _combine_through_two(dec, M1, M2, threshold)
            if w is not None and w.length >= target:
                return w
    return dec


# long paths inside separable components

def leaf_structure(H: Graph):
    bt = block_cut_tree(H)
    inner: Set[int] = set()
    cuts: Dict[FrozenSet[int], int] = {}
    for L in bt.leaf_blocks:
        inner |= bt.inner_vertices[L]
        c = bt.cut_vertex_of(L)
        if c is not None:
            cuts[L] = c
    return bt, inner, cuts


def long_path_in_separable(H: Graph, S: Iterable[int], v: int,
                           threshold: int = DEFAULT_EXACT_THRESHOLD) -> Tuple[int, PathWitness]:
    """A leaf-block cut vertex c and a (c,v)-path of length at least (δ(H) − |S|)/2."""
    S = set(S)
    bt, inner, cuts = leaf_structure(H)
    if not bt.cut_vertices:
        raise PreconditionError("H has no cut vertex")
    if v in inner:
        raise PreconditionError("v is an inner vertex of a leaf-block")
    if S & inner:
        raise PreconditionError("S meets leaf-block inner vertices")
    bound = (H.min_degree - len(S)) / 2
    leaf_cuts = sorted(set(cuts.values()))
    if bound <= 0:
        if v in leaf_cuts:
            return v, PathWitness((v,))
        c = leaf_cuts[0]
        return c, PathWitness(_bfs_path(H, c, v))
    best = None
    for c in leaf_cuts:
        if c == v:
            continue
        # a (c,v)-path never enters a leaf-block interior: it would have to leave through its cut vertex
        allowed = set(H.vertices) - inner
        q = long_path_between(H, c, v, math.ceil(bound), allowed=allowed, threshold=threshold)
        if q is not None and (best is None or q.length > best[1].length):
            best = (c, q)
        if best is not None and best[1].length >= bound:
            break
    if best is None:
        raise PreconditionError("v is the only leaf-block cut vertex")
    if best[1].length < bound:
        raise BoundViolation(f"(c,v)-path of length {best[1].length} < {bound}")
    return best


# boosting a path that avoids all eg_components

def enters(path: Sequence[int], M: Iterable[int]) -> bool:
    M = set(M)
    return any(a in M and b in M for a, b in zip(path, path[1:]))


def boost_non_entering_path(g: Graph, P: PathWitness, P1: PathWitness, P2: PathWitness,
                            Q: PathWitness, k: int,
                            threshold: int = DEFAULT_EXACT_THRESHOLD) -> PathWitness:
    """Turn a path Q avoiding all eg_components into one of length ≥ min(δ+k−1, 3/2·δ − 5/2·k − 1).

    Here δ = δ(g−{s,t}); requires that P1, P2 decompose P, |E(P)| ≤ δ + k
    and |E(Q)| ≥ 4k + 5.
    """
    P = PathWitness(tuple(P.vertices))
    d = validate_eg_decomposition(g, P.start, P.end, P, P1, P2)
    if not isinstance(d, EGDecomposition):
        raise PreconditionError(f"P1, P2 do not decompose P: {d}")
    dd = min_degree_without(g, (d.s, d.t))
    q = tuple(Q.vertices)
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    if d.P.length > dd + k:
        raise PreconditionError("|E(P)| exceeds δ(g−{s,t}) + k")
    if len(q) - 1 < 4 * k + 5:
        raise PreconditionError("Q is shorter than 4k+5")
    if q[0] != d.s or q[-1] != d.t or not validate_witness(g, Q):
        raise PreconditionError("Q is not an (s,t)-path of the host")
    if any(enters(q, M) for M in d.eg_components):
        raise PreconditionError("Q enters an eg_component")
    bound = min(dd + k - 1, 1.5 * dd - 2.5 * k - 1)
    ends = set(d.P1.vertices) | set(d.P2.vertices)
    S = set(q[:k])
    T = set(q[len(q) - k:]) if k else set()
    middle = q[k:len(q) - k]
    edge = None
    for a, b in zip(middle, middle[1:]):
        if a not in ends and b not in ends:
            edge = (a, b)
            break
    if edge is None:
        raise PreconditionError("no edge of Q avoids P1 ∪ P2")
    comp = d.owner({edge[0]})
    if comp.kind == "R1":
        raise PreconditionError("Q enters an R1 component")
    if comp.kind == "R2":
        out = _boost_left(d, comp, q, S | T, edge, threshold)
    else:
        rd = _mirror(d)
        rcomp = rd.owner(comp.vertices)
        out = _boost_left(rd, rcomp, q[::-1], S | T, (edge[1], edge[0]), threshold)
        out = out[::-1]
    w = PathWitness(tuple(out))
    assert validate_witness(g, w), "boosted path invalid"
    if w.length < bound:
        raise BoundViolation(f"boosted path of length {w.length} < {bound}")
    return w


def _mirror(d: EGDecomposition) -> EGDecomposition:
    flip = {"R1": "R1", "R2": "R3", "R3": "R2"}
    comps = tuple(Component(c.vertices, flip[c.kind], c.blocks) for c in d.components)
    return EGDecomposition(d.host, d.t, d.s, d.P.reversed(), d.P2.reversed(), d.P1.reversed(), comps, d.eg_components)


def _boost_left(d: EGDecomposition, comp: Component, q: Tuple[int, ...], ST: Set[int],
                edge: Tuple[int, int], threshold: int) -> List[int]:
    """The two-case construction for a component whose single attachment lies on P1."""
    g = d.host
    H = comp.vertices
    Hg = g.subgraph(H)
    bt, inner, cuts = leaf_structure(Hg)
    near = list(d.P1.vertices)
    far = list(d.P2.vertices)
    near_set = set(near)
    candidates: List[List[int]] = []
    blocked = ST & H
    for v in (edge[1], edge[0]):
        c_path = _reach_leaf_cut(Hg, v, blocked, cuts, inner)
        if c_path is None:
            continue
        c = c_path[-1]
        for L, cv in sorted(cuts.items(), key=lambda kv: min(kv[0])):
            if cv != c:
                continue
            for w in sorted(x for x in L - {c} if g.adj(x) & near_set):
                Lg = g.subgraph(L)
                inside = _long_in_block(Lg, c, w, threshold)
                p = min(g.adj(w) & near_set, key=near.index)
                tail = near[:near.index(p) + 1][::-1]
                qprime = list(c_path) + list(inside[1:]) + tail
                spliced = _splice(q, qprime, c)
                if spliced is not None:
                    candidates.append(spliced)
        if candidates:
            break
    if not candidates:
        candidates.extend(_separated_case(d, Hg, ST & H, cuts, inner, near, far, threshold))
    best = longest_of(tuple(c) for c in candidates)
    if best is None:
        raise PreconditionError("no boosting construction applies")
    return list(best)


def _reach_leaf_cut(Hg: Graph, v: int, blocked: Set[int], cuts, inner) -> Optional[List[int]]:
    """A shortest path from v to some leaf-block cut vertex avoiding the blocked set."""
    targets = set(cuts.values())
    if v in blocked:
        return None
    prev = {v: None}
    queue = [v]
    for x in queue:
        if x in targets:
            out = [x]
            while prev[out[-1]] is not None:
                out.append(prev[out[-1]])
            return out[::-1]
        for y in sorted(Hg.adj(x)):
            if y not in prev and y not in blocked and y not in inner:
                prev[y] = x
                queue.append(y)
    return None


def _long_in_block(Lg: Graph, a: int, b: int, threshold: int) -> Tuple[int, ...]:
    if Lg.n >= 3 and is_two_connected(Lg):
        return eg_long_st_path(Lg, a, b, (a,), threshold=threshold).vertices
    return _bfs_path(Lg, a, b)


def _splice(q: Tuple[int, ...], qprime: List[int], c: int) -> Optional[List[int]]:
    """Reroute Q through the detour Q′ between its last Q-vertex up to c and its first Q-vertex after it."""
    pos = {v: i for i, v in enumerate(q)}
    ci = qprime.index(c)
    xi = max(i for i in range(ci + 1) if qprime[i] in pos)
    yi = next((i for i in range(ci + 1, len(qprime)) if qprime[i] in pos), None)
    if yi is None:
        return None
    x, y = qprime[xi], qprime[yi]
    detour = qprime[xi:yi + 1]
    if pos[y] < pos[x]:
        out = list(q[:pos[y]]) + detour[::-1] + list(q[pos[x] + 1:])
    else:
        out = list(q[:pos[x]]) + detour + list(q[pos[y] + 1:])
    if len(set(out)) != len(out):
        return None
    return out


def _separated_case(d: EGDecomposition, Hg: Graph, S: Set[int], cuts, inner, near, far,
                    threshold: int) -> List[List[int]]:
    """Route s → P1 → leaf-block → long path to a far-attached vertex → P2 → t."""
    g = d.host
    near_set, far_set = set(near), set(far)
    out = []
    ws = sorted(w for w in Hg.vertices if g.adj(w) & far_set and w not in inner)
    for w in ws:
        try:
            c, cw = long_path_in_separable(Hg, S, w, threshold=threshold)
        except (PreconditionError, BoundViolation):
            continue
        for L, cv in sorted(cuts.items(), key=lambda kv: min(kv[0])):
            if cv != c:
                continue
            for z in sorted(x for x in L - {c} if g.adj(x) & near_set):
                inside = _long_in_block(g.subgraph(L), z, c, threshold)
                p = min(g.adj(z) & near_set, key=near.index)
                r = min(g.adj(w) & far_set, key=far.index)
                seq = near[:near.index(p) + 1] + list(inside) + list(cw.vertices[1:]) + far[far.index(r):]
                if len(set(seq)) == len(seq):
                    out.append(seq)
        if out:
            break
    return out


# nested decompositions

@dataclass
class Triple:
    graph: Graph
    s: int
    t: int
    parent: Optional[int]
    d: int
    status: str = ""
    path: Optional[PathWitness] = None
    decomposition: Optional[EGDecomposition] = None
    children: List[int] = field(default_factory=list)

    @property
    def decomposed(self) -> bool:
        return self.decomposition is not None

    @property
    def inner_degree(self) -> int:
        return min_degree_without(self.graph, (self.s, self.t))


@dataclass
class NestedEGDecomposition:
    triples: List[Triple]

    @property
    def root(self) -> Triple:
        return self.triples[0]

    def __len__(self) -> int:
        return len(self.triples)


def build_nested_decomposition(g: Graph, s: int, t: int,
                               threshold: int = DEFAULT_EXACT_THRESHOLD) -> NestedEGDecomposition:
    if s == t:
        raise PreconditionError("s and t must differ")
    if not is_two_connected(g):
        raise PreconditionError("graph is not 2-connected")
    triples = [Triple(g, s, t, None, 0)]
    i = 0
    while i < len(triples):
        tr = triples[i]
        dd = tr.inner_degree
        if dd < DEGREE_THRESHOLD:
            tr.status = "low_degree"
            tr.path = eg_long_st_path(tr.graph, tr.s, tr.t, (tr.s, tr.t), threshold=threshold)
        else:
            out = long_path_or_eg_decomposition(tr.graph, tr.s, tr.t, threshold=threshold)
            if isinstance(out, PathWitness):
                tr.status = "long_path"
                tr.path = out
            else:
                tr.status = "decomposed"
                tr.decomposition = out
                tr.path = out.P
                for M in out.eg_components:
                    inst = eg_component_to_instance(out, M)
                    dist = len({tr.s, tr.t} - {inst.s, inst.t})
                    tr.children.append(len(triples))
                    triples.append(Triple(inst.K, inst.s, inst.t, i, dist))
        i += 1
    return NestedEGDecomposition(triples)

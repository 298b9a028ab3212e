"""Bitmask backtracking engines and vertex-disjoint path flows.

All searches visit neighbours in increasing label order unless told
otherwise, so the first longest witness found is the lexicographically
smallest one. Visited (mask, endpoint) states are memoised: the completions
of a state depend only on the state, and the first visit to it always comes
from a lexicographically smaller prefix.
"""

from __future__ import annotations

import sys
from collections import deque
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .graph import Graph, blocks_of

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))


class BudgetExceeded(Exception):
    pass


class BitGraph:
    __slots__ = ("labels", "index", "adj", "n", "full")

    def __init__(self, g: Graph):
        self.labels: Tuple[int, ...] = g.vertices
        self.index: Dict[int, int] = {v: i for i, v in enumerate(self.labels)}
        self.n = len(self.labels)
        self.adj: List[int] = []
        for v in self.labels:
            m = 0
            for u in g.adj(v):
                m |= 1 << self.index[u]
            self.adj.append(m)
        self.full = (1 << self.n) - 1

    def to_labels(self, seq: Iterable[int]) -> Tuple[int, ...]:
        return tuple(self.labels[i] for i in seq)

    def mask_of(self, vs: Iterable[int]) -> int:
        m = 0
        for v in vs:
            m |= 1 << self.index[v]
        return m


@lru_cache(maxsize=4096)
def bitgraph(g: Graph) -> BitGraph:
    return BitGraph(g)


def bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def reach(adj: List[int], v: int, free: int) -> int:
    """Vertices of ``free`` reachable from v through ``free`` (v itself excluded)."""
    seen = adj[v] & free
    frontier = seen
    while frontier:
        b = frontier & -frontier
        frontier ^= b
        new = adj[b.bit_length() - 1] & free & ~seen
        if new:
            seen |= new
            frontier |= new
    return seen


def _two_colouring(adj: List[int], mask: int) -> Optional[Tuple[int, int]]:
    side = {}
    a = b = 0
    for root in bits(mask):
        if root in side:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in bits(adj[x] & mask):
                if y not in side:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    return None
    for x, c in side.items():
        if c == 0:
            a |= 1 << x
        else:
            b |= 1 << x
    return a, b


def cycle_upper_bound(g: Graph) -> int:
    bg = bitgraph(g)
    best = 0
    for blk in blocks_of(g):
        if len(blk) < 3:
            continue
        mask = bg.mask_of(blk)
        col = _two_colouring(bg.adj, mask)
        if col is None:
            best = max(best, len(blk))
        else:
            best = max(best, 2 * min(col[0].bit_count(), col[1].bit_count()))
    return best


def path_upper_bound(g: Graph, s: int, t: int) -> int:
    bg = bitgraph(g)
    si, ti = bg.index[s], bg.index[t]
    mask = reach(bg.adj, si, bg.full) | (1 << si)
    if not (mask >> ti) & 1:
        return -1
    col = _two_colouring(bg.adj, mask)
    size = mask.bit_count()
    if col is None:
        return size - 1
    a, b = col
    same = ((a >> si) & 1) == ((a >> ti) & 1)
    na, nb = a.bit_count(), b.bit_count()
    if same:
        own, other = (na, nb) if (a >> si) & 1 else (nb, na)
        j = min(own - 1, other)
        return 2 * j
    return 2 * min(na, nb) - 1


def _order(adj: List[int], cands: int, free: int, warnsdorff: bool) -> List[int]:
    if not warnsdorff:
        return list(bits(cands))
    return sorted(bits(cands), key=lambda u: ((adj[u] & free).bit_count(), u))


def search_path(g: Graph, s: int, t: int, *, target: Optional[int] = None,
                allowed: Optional[Iterable[int]] = None, warnsdorff: bool = False,
                budget: Optional[int] = None) -> Optional[Tuple[int, ...]]:
    """Longest (s,t)-path by backtracking.

    With ``target`` the search stops at the first path of at least that many
    edges. With ``budget`` it stops after that many expansions and returns the
    best path seen so far. Returns None when no (s,t)-path exists.
    """
    bg = bitgraph(g)
    adj = bg.adj
    si, ti = bg.index[s], bg.index[t]
    space = bg.full if allowed is None else bg.mask_of(allowed) | (1 << si) | (1 << ti)
    ub = path_upper_bound(g, s, t) if allowed is None else space.bit_count() - 1
    if ub < 0:
        return None
    stop = ub if target is None else min(target, ub)
    best: List = [-1, None]
    memo: Set[int] = set()
    path = [si]
    count = [0]
    shift = bg.n.bit_length()

    def dfs(v: int, mask: int) -> bool:
        depth = len(path) - 1
        if v == ti:
            if depth > best[0]:
                best[0] = depth
                best[1] = tuple(path)
            return depth >= stop
        count[0] += 1
        if budget is not None and count[0] > budget:
            raise BudgetExceeded
        free = space & ~mask
        r = reach(adj, v, free)
        if not (r >> ti) & 1:
            return False
        bound = depth + r.bit_count()
        if bound <= best[0] or (target is not None and bound < target):
            return False
        key = (mask << shift) | v
        if key in memo:
            return False
        memo.add(key)
        for u in _order(adj, adj[v] & free, free, warnsdorff):
            path.append(u)
            done = dfs(u, mask | (1 << u))
            path.pop()
            if done:
                return True
        return False

    try:
        dfs(si, 1 << si)
    except BudgetExceeded:
        pass
    if best[1] is None:
        return None
    return bg.to_labels(best[1])


def search_cycle(g: Graph, *, target: Optional[int] = None, through: Optional[int] = None,
                 warnsdorff: bool = False, budget: Optional[int] = None) -> Optional[Tuple[int, ...]]:
    """Longest cycle by backtracking from each possible minimum vertex.

    ``target`` stops at the first cycle of at least that length; ``through``
    restricts to cycles containing a given vertex (then rooted there).
    """
    bg = bitgraph(g)
    adj = bg.adj
    ub = cycle_upper_bound(g)
    if ub < 3:
        return None
    stop = ub if target is None else min(target, ub)
    best: List = [0, None]
    count = [0]
    shift = bg.n.bit_length()
    if through is None:
        starts = range(bg.n)
    else:
        starts = [bg.index[through]]

    for st in starts:
        if through is None and bg.n - st <= best[0]:
            break
        space = bg.full & ~((1 << st) - 1) if through is None else bg.full
        memo: Set[int] = set()
        path = [st]

        def dfs(v: int, mask: int) -> bool:
            depth = len(path)
            if depth >= 3 and (adj[v] >> st) & 1 and depth > best[0]:
                best[0] = depth
                best[1] = tuple(path)
                if depth >= stop:
                    return True
            count[0] += 1
            if budget is not None and count[0] > budget:
                raise BudgetExceeded
            free = space & ~mask
            r = reach(adj, v, free)
            if not (adj[st] & r):
                return False
            bound = depth + r.bit_count()
            if bound <= best[0] or (target is not None and bound < target):
                return False
            key = (mask << shift) | v
            if key in memo:
                return False
            memo.add(key)
            for u in _order(adj, adj[v] & free, free, warnsdorff):
                path.append(u)
                done = dfs(u, mask | (1 << u))
                path.pop()
                if done:
                    return True
            return False

        try:
            if dfs(st, 1 << st):
                break
        except BudgetExceeded:
            break
    if best[1] is None:
        return None
    return bg.to_labels(best[1])


# vertex-disjoint paths (Menger) via unit vertex capacities

def disjoint_paths(adj, sources: Sequence[int], sinks: Sequence[int], k: int,
                   blocked: Iterable[int] = ()) -> List[List[int]]:
    """Up to k vertex-disjoint paths from the source set to the sink set.

    ``adj`` is a Graph or a mapping vertex -> neighbours. A vertex lying in
    both sets yields a one-vertex path. Blocked vertices are never used.
    """
    nbrs = adj.adj if isinstance(adj, Graph) else adj.__getitem__
    blocked = set(blocked)
    S, T = ("S",), ("T",)
    res: Dict = {}

    def arc(a, b):
        res.setdefault(a, {})
        res.setdefault(b, {})
        res[a][b] = res[a].get(b, 0) + 1
        res[b].setdefault(a, 0)

    seen_v: Set[int] = set()
    stack = [v for v in sources if v not in blocked]
    while stack:
        v = stack.pop()
        if v in seen_v:
            continue
        seen_v.add(v)
        arc((v, 0), (v, 1))
        for w in nbrs(v):
            if w not in blocked:
                arc((v, 1), (w, 0))
                if w not in seen_v:
                    stack.append(w)
    for v in dict.fromkeys(sources):
        if v not in blocked:
            arc(S, (v, 0))
    for v in dict.fromkeys(sinks):
        if v not in blocked and v in seen_v:
            arc((v, 1), T)
    if T not in res:
        return []
    flow = 0
    while flow < k:
        parent = {S: None}
        queue = deque([S])
        while queue and T not in parent:
            a = queue.popleft()
            for b in sorted(res[a], key=_node_key):
                if res[a][b] > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if T not in parent:
            break
        b = T
        while parent[b] is not None:
            a = parent[b]
            res[a][b] -= 1
            res[b][a] += 1
            b = a
        flow += 1
    # decompose: an arc a->b carries flow iff its reverse residual exceeds the original
    used: Dict = {}
    for a, out in res.items():
        for b, c in out.items():
            if c == 0 and _is_forward(a, b):
                used.setdefault(a, []).append(b)
    paths = []
    for first in sorted(used.get(S, []), key=_node_key):
        p = [first[0]]
        node = (first[0], 1)
        while True:
            nxt = used[node]
            step = nxt.pop()
            if step == T:
                break
            p.append(step[0])
            node = (step[0], 1)
        paths.append(p)
    return paths


def _node_key(x):
    return (0, x[0], x[1]) if len(x) == 2 else (1, x[0], 0)


def _is_forward(a, b) -> bool:
    if a == ("S",):
        return True
    if b == ("T",):
        return True
    if len(a) != 2 or len(b) != 2:
        return False
    if a[0] == b[0]:
        return a[1] == 0 and b[1] == 1
    return a[1] == 1 and b[1] == 0

"""Immutable simple graphs, block structure, contractions and witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

Edge = Tuple[int, int]


class GraphError(ValueError):
    """Raised on malformed graphs or illegal graph operations."""


class PreconditionError(GraphError):
    """An operation was called outside its documented domain."""


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """A finite simple undirected graph with integer vertex labels.

    Instances are immutable and hashable. Every constructor path ends in
    ``_check`` so that symmetry and simplicity hold for every value.
    """

    __slots__ = ("_adj", "_key", "_mindeg")

    def __init__(self, adjacency: Mapping[int, Iterable[int]]):
        adj: Dict[int, Set[int]] = {int(v): set() for v in adjacency}
        for v, nbrs in adjacency.items():
            for u in nbrs:
                if u == v:
                    raise GraphError(f"self-loop at vertex {v}")
                if u not in adj:
                    raise GraphError(f"neighbor {u} of {v} is not a vertex")
                adj[v].add(u)
                adj[u].add(v)
        self._adj: Dict[int, FrozenSet[int]] = {v: frozenset(adj[v]) for v in sorted(adj)}
        self._key = None
        self._mindeg = None
        self._check()

    def _check(self) -> None:
        for v, nbrs in self._adj.items():
            assert v not in nbrs, "self-loop"
            for u in nbrs:
                assert v in self._adj[u], "asymmetric adjacency"

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], vertices: Iterable[int] = ()) -> "Graph":
        adj: Dict[int, Set[int]] = {v: set() for v in vertices}
        for e in edges:
            u, v = e
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        return cls(adj)

    # basic accessors
    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(self._adj)

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self._adj.values()) // 2

    @property
    def min_degree(self) -> int:
        if self._mindeg is None:
            self._mindeg = min_degree(self)
        return self._mindeg

    def adj(self, v: int) -> FrozenSet[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def edges(self) -> List[Edge]:
        return sorted((u, v) for u, nb in self._adj.items() for v in nb if u < v)

    def adjacency(self) -> Dict[int, FrozenSet[int]]:
        return dict(self._adj)

    # derived graphs
    def subgraph(self, vertices: Iterable[int]) -> "Graph":
        keep = set(vertices)
        missing = keep - self._adj.keys()
        if missing:
            raise GraphError(f"vertices not in graph: {sorted(missing)}")
        return Graph({v: self._adj[v] & keep for v in keep})

    def remove(self, vertices: Iterable[int]) -> "Graph":
        drop = set(vertices)
        return self.subgraph(v for v in self._adj if v not in drop)

    def with_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        adj = {v: set(nb) for v, nb in self._adj.items()}
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        return Graph(adj)

    def without_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        adj = {v: set(nb) for v, nb in self._adj.items()}
        for u, v in edges:
            adj[u].discard(v)
            adj[v].discard(u)
        return Graph(adj)

    def relabel(self, mapping: Mapping[int, int]) -> "Graph":
        return Graph({mapping.get(v, v): {mapping.get(u, u) for u in nb} for v, nb in self._adj.items()})

    def _edge_key(self):
        if self._key is None:
            self._key = (tuple(self._adj), tuple(self.edges()))
        return self._key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._edge_key() == other._edge_key()

    def __hash__(self) -> int:
        return hash(self._edge_key())

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise GraphError("empty graph")
    return min(len(g.adj(v)) for v in g.vertices)


def min_degree_without(g: Graph, removed: Iterable[int]) -> int:
    """Minimum degree of ``g`` after deleting ``removed``; 0 for an empty remainder."""
    drop = set(removed)
    rest = [v for v in g.vertices if v not in drop]
    if not rest:
        return 0
    return min(sum(1 for u in g.adj(v) if u not in drop) for v in rest)


# witnesses

@dataclass(frozen=True)
class PathWitness:
    vertices: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if not self.vertices:
            raise GraphError("a path needs at least one vertex")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def reversed(self) -> "PathWitness":
        return PathWitness(self.vertices[::-1])

    def edges(self) -> List[Edge]:
        vs = self.vertices
        return [_norm(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class CycleWitness:
    vertices: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def length(self) -> int:
        return len(self.vertices)

    def offset(self, g: Graph) -> int:
        return self.length - 2 * g.min_degree

    def edges(self) -> List[Edge]:
        vs = self.vertices
        return [_norm(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class Validation:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate_witness(g: Graph, w: Union[PathWitness, CycleWitness]) -> Validation:
    vs = w.vertices
    for v in vs:
        if not g.has_vertex(v):
            return Validation(False, f"vertex {v} not in graph")
    if len(set(vs)) != len(vs):
        return Validation(False, "vertices not distinct")
    if isinstance(w, CycleWitness):
        if len(vs) < 3:
            return Validation(False, "cycle shorter than 3")
        pairs = [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]
    else:
        pairs = [(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]
    for u, v in pairs:
        if not g.has_edge(u, v):
            return Validation(False, f"non-adjacent consecutive pair ({u}, {v})")
    return Validation(True)


# connectivity

@dataclass(frozen=True)
class ConnectivityProfile:
    components: List[FrozenSet[int]]
    two_connected: bool


def components(g: Graph, removed: Iterable[int] = ()) -> List[FrozenSet[int]]:
    drop = set(removed)
    seen: Set[int] = set(drop)
    out: List[FrozenSet[int]] = []
    for root in g.vertices:
        if root in seen:
            continue
        comp = {root}
        seen.add(root)
        stack = [root]
        while stack:
            x = stack.pop()
            for y in g.adj(x):
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        out.append(frozenset(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(components(g)) == 1


def is_two_connected(g: Graph) -> bool:
    if g.n < 3 or not is_connected(g):
        return False
    return not articulation_points(g)


def connectivity_profile(g: Graph, removed: Iterable[int] = ()) -> ConnectivityProfile:
    removed = set(removed)
    if not removed <= set(g.vertices):
        raise GraphError("removed set is not a subset of V(g)")
    return ConnectivityProfile(components(g, removed), is_two_connected(g))


def _biconnected(g: Graph):
    """Iterative Hopcroft-Tarjan. Returns (blocks as vertex sets, cut vertices)."""
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    blocks: List[FrozenSet[int]] = []
    cuts: Set[int] = set()
    counter = 0
    for root in g.vertices:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        if not g.adj(root):
            blocks.append(frozenset([root]))
            continue
        edge_stack: List[Edge] = []
        root_children = 0
        stack = [(root, None, iter(sorted(g.adj(root))))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(sorted(g.adj(w)))))
                    advanced = True
                    break
                if index[w] < index[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            stack.pop()
            if parent is None:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= index[parent]:
                block: Set[int] = set()
                while True:
                    a, b = edge_stack.pop()
                    block.add(a)
                    block.add(b)
                    if (a, b) == (parent, v):
                        break
                blocks.append(frozenset(block))
                if stack[-1][1] is not None:
                    cuts.add(parent)
                else:
                    root_children += 1
        if root_children > 1:
            cuts.add(root)
    return blocks, cuts


def articulation_points(g: Graph) -> Set[int]:
    return _biconnected(g)[1]


def blocks_of(g: Graph) -> List[FrozenSet[int]]:
    """Vertex sets of all blocks (isolated vertices become singleton blocks)."""
    return _biconnected(g)[0]


@dataclass(frozen=True)
class BlockTree:
    blocks: List[FrozenSet[int]]
    cut_vertices: FrozenSet[int]
    leaf_blocks: List[FrozenSet[int]]
    inner_vertices: Dict[FrozenSet[int], FrozenSet[int]]

    def cut_vertex_of(self, block: FrozenSet[int]) -> Optional[int]:
        """The unique cut vertex of a leaf-block (None for a lone block)."""
        cs = block & self.cut_vertices
        return next(iter(cs)) if len(cs) == 1 else None


def block_cut_tree(g: Graph) -> BlockTree:
    if not is_connected(g):
        raise GraphError("graph not connected")
    raw, cuts = _biconnected(g)
    blocks = sorted(raw, key=lambda b: sorted(b))
    if len(blocks) == 1:
        leaves = list(blocks)
    else:
        leaves = [b for b in blocks if len(b & cuts) == 1]
    inner = {b: frozenset(b - cuts) for b in blocks}
    return BlockTree(blocks, frozenset(cuts), leaves, inner)


# contractions

@dataclass(frozen=True)
class ContractionRecord:
    surviving_vertex: int
    removed_vertex: int
    original_edge: Edge
    survivor_nbrs: FrozenSet[int] = field(default=frozenset(), compare=False)
    removed_nbrs: FrozenSet[int] = field(default=frozenset(), compare=False)


@dataclass(frozen=True)
class ContractionLog:
    records: Tuple[ContractionRecord, ...] = ()

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def representative(self, v: int) -> int:
        for r in self.records:
            if v == r.removed_vertex:
                v = r.surviving_vertex
        return v

    def replay(self, g: Graph) -> Graph:
        adj = {v: set(nb) for v, nb in g.adjacency().items()}
        for r in self.records:
            _merge(adj, r.surviving_vertex, r.removed_vertex)
        return Graph(adj)


def _merge(adj: Dict[int, Set[int]], keep: int, drop: int) -> None:
    for x in adj.pop(drop):
        adj[x].discard(drop)
        if x != keep:
            adj[x].add(keep)
            adj[keep].add(x)
    adj[keep].discard(drop)


def contract_into(adj: Dict[int, Set[int]], u: int, v: int) -> ContractionRecord:
    """Contract edge uv inside a mutable adjacency map, smaller label surviving."""
    if u not in adj or v not in adj[u]:
        raise GraphError(f"edge ({u}, {v}) not present at contraction time")
    keep, drop = (u, v) if u < v else (v, u)
    rec = ContractionRecord(keep, drop, _norm(u, v), frozenset(adj[keep]), frozenset(adj[drop]))
    _merge(adj, keep, drop)
    return rec


def contract_edges(g: Graph, edges: Sequence[Sequence[int]]) -> Tuple[Graph, ContractionLog]:
    """Contract the listed edges in order.

    Edges are named by original labels; an endpoint merged earlier is looked up
    through its surviving representative.
    """
    adj = {v: set(nb) for v, nb in g.adjacency().items()}
    records: List[ContractionRecord] = []
    rep: Dict[int, int] = {}

    def find(x: int) -> int:
        while x in rep:
            x = rep[x]
        return x

    for e in edges:
        a, b = e
        u, v = find(a), find(b)
        if u == v or u not in adj or v not in adj[u]:
            raise GraphError(f"edge ({a}, {b}) not present at contraction time")
        rec = contract_into(adj, u, v)
        rep[rec.removed_vertex] = rec.surviving_vertex
        records.append(rec)
    return Graph(adj), ContractionLog(tuple(records))


def reverse(log: ContractionLog, path: PathWitness, ends: Optional[Tuple[int, int]] = None) -> PathWitness:
    """Map a path of the contracted graph back into the pre-contraction graph.

    Records are undone last-to-first; a record is replayed only when its
    surviving vertex lies on the path. The expansion keeps both merged vertices
    whenever adjacency allows, so the length never decreases. ``ends`` pins the
    original labels the path must start and end at, when they were merged away.
    """
    seq = list(path.vertices)
    recs = log.records
    # label carrying each pinned end just before record x is undone
    pinned: List[Optional[Tuple[int, int]]] = [None] * len(recs)
    if ends is not None:
        cur = list(ends)
        before = []
        for rec in recs:
            before.append(tuple(cur))
            cur = [rec.surviving_vertex if v == rec.removed_vertex else v for v in cur]
        pinned = before
    for x in range(len(recs) - 1, -1, -1):
        rec = recs[x]
        w, r = rec.surviving_vertex, rec.removed_vertex
        if w not in seq:
            continue
        i = seq.index(w)
        prev = seq[i - 1] if i > 0 else None
        nxt = seq[i + 1] if i + 1 < len(seq) else None
        nb = {w: rec.survivor_nbrs, r: rec.removed_nbrs}
        options = [(w, r), (r, w), (w,), (r,)]
        best = None
        for opt in options:
            if prev is not None and prev not in nb[opt[0]]:
                continue
            if nxt is not None and nxt not in nb[opt[-1]]:
                continue
            if pinned[x] is not None:
                a, b = pinned[x]
                if prev is None and a in (w, r) and opt[0] != a:
                    continue
                if nxt is None and b in (w, r) and opt[-1] != b:
                    continue
            best = opt
            break
        if best is None:
            raise GraphError(f"cannot expand merged vertex {w}")
        seq[i:i + 1] = list(best)
    return PathWitness(tuple(seq))

"""Seeded instance generators, including planted decomposition families."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .graph import Graph, GraphError, is_two_connected

FAMILIES = ("random_2connected", "two_triangle_eg", "nested_eg", "separable_eg",
            "dirac_family", "cover_bounded", "near_hamiltonian", "named")
NAMED = ("K", "C", "Petersen", "barbell", "path", "star")


@dataclass(frozen=True)
class InstanceSpec:
    family: str
    params: Tuple[Tuple[str, int], ...] = ()
    seed: int = 0
    name: str = ""

    @classmethod
    def make(cls, family: str, seed: int = 0, name: str = "", **params) -> "InstanceSpec":
        return cls(family, tuple(sorted(params.items())), seed, name)

    def param(self, key: str, default=None):
        return dict(self.params).get(key, default)

    @property
    def instance_id(self) -> str:
        bits = ",".join(f"{k}={v}" for k, v in self.params)
        label = self.name or self.family
        return f"{label}({bits})#{self.seed}"


@dataclass
class Instance:
    graph: Graph
    s: Optional[int] = None
    t: Optional[int] = None
    # planted witnesses, when the family has them
    planted: Dict[str, tuple] = field(default_factory=dict)


def _clique(vs) -> List[Tuple[int, int]]:
    return list(combinations(vs, 2))


def complete(n: int) -> Graph:
    return Graph.from_edges(_clique(range(1, n + 1)), range(1, n + 1))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Graph.from_edges([(i, i % n + 1) for i in range(1, n + 1)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges([(i, i + 1) for i in range(1, n)], range(1, n + 1))


def star(leaves: int) -> Graph:
    return Graph.from_edges([(1, i) for i in range(2, leaves + 2)])


def petersen() -> Graph:
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    inner = [(6 + i, 6 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(outer + spokes + inner)


def barbell(clique: int = 5, bridge: int = 3) -> Graph:
    """Two cliques joined by a path with ``bridge`` edges between their cut vertices."""
    a = list(range(1, clique + 1))
    mid = list(range(clique + 1, clique + bridge))
    b = list(range(clique + bridge, 2 * clique + bridge))
    chain = [a[-1]] + mid + [b[0]]
    return Graph.from_edges(_clique(a) + _clique(b) + list(zip(chain, chain[1:])))


def random_2connected(n: int, seed: int, extra: float = 0.25) -> Graph:
    """A random ear decomposition on n vertices plus random chords.

    Starts from a cycle of random length, repeatedly attaches ears (paths with
    fresh inner vertices between two distinct old vertices) and finally adds
    each missing edge with probability ``extra``.
    """
    if n < 3:
        raise GraphError("random_2connected needs n >= 3")
    rng = random.Random(seed)
    first = rng.randint(3, max(3, n // 2 + 1))
    edges = [(i, i % first + 1) for i in range(1, first + 1)]
    nxt = first + 1
    while nxt <= n:
        inner = rng.randint(1, min(3, n - nxt + 1))
        a, b = rng.sample(range(1, nxt), 2)
        chain = [a] + list(range(nxt, nxt + inner)) + [b]
        edges.extend(zip(chain, chain[1:]))
        nxt += inner
    have = {frozenset(e) for e in edges}
    for u, v in combinations(range(1, n + 1), 2):
        if frozenset((u, v)) not in have and rng.random() < extra:
            edges.append((u, v))
    g = Graph.from_edges(edges, range(1, n + 1))
    assert is_two_connected(g)
    return g


def two_triangle_eg(block: int = 3) -> Instance:
    """s and t joined through two disjoint cliques A and B, each touched once at either end.

    Labels: s = 1, A = 2..block+1, B = block+2..2·block+1, t = 2·block+2.
    The planted path runs s, A, t with P1 = (s) and P2 = (t).
    """
    if block < 3:
        raise GraphError("block must be at least 3")
    s, t = 1, 2 * block + 2
    A = list(range(2, block + 2))
    B = list(range(block + 2, 2 * block + 2))
    edges = _clique(A) + _clique(B) + [(s, A[0]), (s, B[0]), (t, A[-1]), (t, B[-1])]
    g = Graph.from_edges(edges)
    P = (s, *A, t)
    return Instance(g, s, t, {"P": P, "P1": (s,), "P2": (t,)})


def nested_eg(clique: int = 22, arms: int = 2) -> Instance:
    """A host whose eg_components decompose once more.

    Each of ``arms`` components is x_j, y_j together with two cliques C_j, D_j
    completely joined to x_j and y_j; s sees every x_j and t every y_j.
    """
    if clique < 3 or arms < 2:
        raise GraphError("need clique >= 3 and arms >= 2")
    s, t = 1, 2
    edges = []
    nxt = 3
    first = None
    for _ in range(arms):
        x, y = nxt, nxt + 1
        C = list(range(nxt + 2, nxt + 2 + clique))
        D = list(range(nxt + 2 + clique, nxt + 2 + 2 * clique))
        nxt += 2 + 2 * clique
        edges += _clique(C) + _clique(D)
        edges += [(x, v) for v in C + D] + [(y, v) for v in C + D]
        edges += [(s, x), (t, y)]
        if first is None:
            first = (s, x, *C, y, t)
    g = Graph.from_edges(edges)
    return Instance(g, s, t, {"P": first, "P1": (s,), "P2": (t,)})


def separable_eg(leaf: int = 5, arms: int = 2) -> Instance:
    """A host with one separable component hanging off P1 next to R1 cliques.

    The separable component is a middle clique holding two cut vertices c1,
    c2, each carrying a leaf clique; s sees one inner vertex of every leaf
    clique and one middle vertex, t sees one middle vertex. The other
    ``arms`` − 1 components are cliques touched once on each side. All
    cliques have ``leaf`` vertices. The planted path Q threads the middle
    clique without entering a leaf-block.
    """
    if leaf < 4 or arms < 2:
        raise GraphError("need leaf >= 4 and arms >= 2")
    s, t = 1, 2
    mid = list(range(3, 3 + leaf))
    c1, c2 = mid[0], mid[1]
    L1 = [c1] + list(range(3 + leaf, 2 + 2 * leaf))
    L2 = [c2] + list(range(2 + 2 * leaf, 1 + 3 * leaf))
    edges = _clique(mid) + _clique(L1) + _clique(L2)
    edges += [(s, L1[1]), (s, L2[1]), (s, mid[2]), (t, mid[-1])]
    nxt = 1 + 3 * leaf
    first = None
    for _ in range(arms - 1):
        A = list(range(nxt, nxt + leaf))
        nxt += leaf
        edges += _clique(A) + [(s, A[0]), (t, A[-1])]
        if first is None:
            first = (s, *A, t)
    g = Graph.from_edges(edges)
    Q = (s, mid[2], c1, c2, *mid[3:], t)
    return Instance(g, s, t, {"P": first, "P1": (s,), "P2": (t,), "Q": Q})


def dirac_family(block: int = 3, count: int = 3, big: int = 0) -> Instance:
    """Hubs x = 1, y = 2 completely joined to ``count`` disjoint cliques of size ``block``.

    An optional extra clique of size ``big`` raises the longest cycle above
    2δ. The planted cycle runs x, Q1, y, Q2 with P1 = (x), P2 = (y).
    """
    if block < 3 or count < 2:
        raise GraphError("need block >= 3 and count >= 2")
    x, y = 1, 2
    edges = []
    cliques = []
    nxt = 3
    sizes = [block] * count + ([big] if big else [])
    for size in sizes:
        Q = list(range(nxt, nxt + size))
        nxt += size
        cliques.append(Q)
        edges += _clique(Q) + [(x, v) for v in Q] + [(y, v) for v in Q]
    g = Graph.from_edges(edges)
    C = (x, *cliques[0], y, *cliques[1][::-1])
    return Instance(g, None, None, {"C": C, "P1": (x,), "P2": (y,)})


def cover_bounded(d: int = 4, extra: int = 2) -> Graph:
    """Complete bipartite K_{d, d+extra}; the small side is a vertex cover of size δ."""
    small = list(range(1, d + 1))
    large = list(range(d + 1, 2 * d + extra + 1))
    return Graph.from_edges([(u, v) for u in small for v in large])


def near_hamiltonian(d: int = 4, extra: int = 2, chords: int = 1, seed: int = 0) -> Graph:
    """K_{d, d+extra} plus a few edges inside the large side, so longer cycles exist."""
    rng = random.Random(seed)
    g = cover_bounded(d, extra)
    large = list(range(d + 1, 2 * d + extra + 1))
    pairs = list(combinations(large, 2))
    rng.shuffle(pairs)
    return g.with_edges(pairs[:chords])


def named(kind: str, size: int = 0) -> Graph:
    if kind == "K":
        return complete(size)
    if kind == "C":
        return cycle(size)
    if kind == "Petersen":
        return petersen()
    if kind == "barbell":
        return barbell(size or 5)
    if kind == "path":
        return path_graph(size)
    if kind == "star":
        return star(size)
    raise GraphError(f"unknown named graph {kind!r}")


def generate(spec: InstanceSpec) -> Instance:
    """Build the instance; families without planted terminals get the smallest and largest label."""
    inst = _build(spec)
    vs = inst.graph.vertices
    if inst.s is None and len(vs) >= 2:
        inst.s, inst.t = vs[0], vs[-1]
    return inst


def _build(spec: InstanceSpec) -> Instance:
    p = dict(spec.params)
    fam = spec.family
    if fam == "random_2connected":
        g = random_2connected(p.get("n", 10), spec.seed, p.get("extra_pct", 25) / 100)
        vs = g.vertices
        rng = random.Random(spec.seed ^ 0x5EED)
        s, t = rng.sample(vs, 2)
        return Instance(g, s, t)
    if fam == "two_triangle_eg":
        return two_triangle_eg(p.get("block", 3))
    if fam == "nested_eg":
        return nested_eg(p.get("clique", 22), p.get("arms", 2))
    if fam == "separable_eg":
        return separable_eg(p.get("leaf", 5), p.get("arms", 2))
    if fam == "dirac_family":
        return dirac_family(p.get("block", 3), p.get("count", 3), p.get("big", 0))
    if fam == "cover_bounded":
        return Instance(cover_bounded(p.get("d", 4), p.get("extra", 2)))
    if fam == "near_hamiltonian":
        return Instance(near_hamiltonian(p.get("d", 4), p.get("extra", 2), p.get("chords", 1), spec.seed))
    if fam == "named":
        kind = spec.name or "K"
        g = named(kind, p.get("size", 0))
        vs = g.vertices
        return Instance(g, vs[0], vs[1]) if len(vs) >= 2 else Instance(g)
    raise GraphError(f"unknown family {fam!r}")


def default_corpus(count: int = 500, lo: int = 6, hi: int = 18, seed: int = 0) -> List[InstanceSpec]:
    """Seeded random 2-connected graphs followed by the named instances."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(lo, hi)
        pct = rng.choice((10, 20, 30, 45))
        out.append(InstanceSpec.make("random_2connected", seed=seed * 100003 + i, n=n, extra_pct=pct))
    out += named_corpus()
    return out


def named_corpus() -> List[InstanceSpec]:
    return [
        InstanceSpec.make("named", name="K", size=4),
        InstanceSpec.make("named", name="K", size=6),
        InstanceSpec.make("named", name="C", size=6),
        InstanceSpec.make("named", name="Petersen"),
        InstanceSpec.make("named", name="barbell", size=4),
        InstanceSpec.make("two_triangle_eg", block=3),
        InstanceSpec.make("two_triangle_eg", block=5),
        InstanceSpec.make("dirac_family", block=3, count=3),
        InstanceSpec.make("dirac_family", block=3, count=2, big=5),
        InstanceSpec.make("cover_bounded", d=4, extra=2),
        InstanceSpec.make("near_hamiltonian", d=5, extra=3, chords=2),
    ]

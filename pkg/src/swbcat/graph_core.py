"""Simple undirected graphs on totally ordered vertex sets.

Vertices are arbitrary hashable ids.  The order is the order in which they
are listed when the graph is built, so an order-preserving relabelling is
just a rank-preserving substitution of ids.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from . import kernels
from .errors import DegreeTooHigh

Vertex = Hashable


def _edge(u: Vertex, v: Vertex) -> frozenset:
    if u == v:
        raise ValueError(f"self-loop at {u!r}")
    return frozenset((u, v))


class OrderedGraph:
    """A simple graph whose vertex set carries a strict total order.

    >>> g = OrderedGraph([1, 2, 3], [(1, 2), (2, 3)])
    >>> len(components(g))
    1
    """

    __slots__ = ("_vertices", "_rank", "_edges", "_adj")

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[tuple[Vertex, Vertex]] = ()):
        self._vertices = tuple(vertices)
        self._rank = {v: k for k, v in enumerate(self._vertices)}
        if len(self._rank) != len(self._vertices):
            raise ValueError("duplicate vertex ids")
        es = set()
        for u, v in edges:
            if u not in self._rank or v not in self._rank:
                raise ValueError(f"edge ({u!r}, {v!r}) leaves the vertex set")
            es.add(_edge(u, v))
        self._edges = frozenset(es)
        adj: dict[Vertex, set] = {v: set() for v in self._vertices}
        for e in self._edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        self._adj = adj

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def edges(self) -> frozenset:
        return self._edges

    def rank(self, v: Vertex) -> int:
        return self._rank[v]

    def __contains__(self, v: Vertex) -> bool:
        return v in self._rank

    def neighbours(self, v: Vertex) -> frozenset:
        return frozenset(self._adj[v])

    def degree(self, v: Vertex) -> int:
        return len(self._adj[v])

    def sorted_edges(self) -> list[tuple]:
        """Edges as rank-sorted pairs, sorted lexicographically by rank."""
        out = []
        for e in self._edges:
            u, v = sorted(e, key=self._rank.__getitem__)
            out.append((u, v))
        out.sort(key=lambda p: (self._rank[p[0]], self._rank[p[1]]))
        return out

    def induced(self, keep: Iterable[Vertex]) -> "OrderedGraph":
        keep = set(keep)
        vs = [v for v in self._vertices if v in keep]
        es = [tuple(e) for e in self._edges if e <= keep]
        return OrderedGraph(vs, es)

    def reversed(self) -> "OrderedGraph":
        """The same graph with the opposite vertex order."""
        return OrderedGraph(reversed(self._vertices), (tuple(e) for e in self._edges))

    def relabel(self, mapping: Mapping[Vertex, Vertex] | Callable[[Vertex], Vertex]) -> "OrderedGraph":
        """Apply an injective relabelling; the order is carried along."""
        f = mapping.__getitem__ if isinstance(mapping, Mapping) else mapping
        vs = [f(v) for v in self._vertices]
        es = [(f(u), f(v)) for u, v in (tuple(e) for e in self._edges)]
        return OrderedGraph(vs, es)

    def union(self, other: "OrderedGraph") -> "OrderedGraph":
        """Disjoint union, with ``self`` ordered before ``other``."""
        if set(self._vertices) & set(other._vertices):
            raise ValueError("vertex sets are not disjoint")
        return OrderedGraph(self._vertices + other._vertices,
                            [tuple(e) for e in self._edges] + [tuple(e) for e in other._edges])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrderedGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"OrderedGraph({list(self._vertices)!r}, {self.sorted_edges()!r})"

    def __len__(self) -> int:
        return len(self._vertices)


def order_isomorphic(g: OrderedGraph, h: OrderedGraph) -> bool:
    """True when the rank-preserving bijection V(g) -> V(h) is a graph isomorphism."""
    if len(g) != len(h) or len(g.edges) != len(h.edges):
        return False
    f = dict(zip(g.vertices, h.vertices))
    return all(frozenset((f[u], f[v])) in h.edges for u, v in map(tuple, g.edges))


def _labels(g: OrderedGraph) -> list[int]:
    idx = {v: k for k, v in enumerate(g.vertices)}
    pairs = [(idx[u], idx[v]) for u, v in (tuple(e) for e in g.edges)]
    return kernels.component_labels(len(g.vertices), pairs)


def components(g: OrderedGraph) -> list[OrderedGraph]:
    """Maximal connected subgraphs, sorted by their minimum vertex."""
    lab = _labels(g)
    groups: dict[int, list] = {}
    for k, v in enumerate(g.vertices):
        groups.setdefault(lab[k], []).append(v)
    # dict insertion order follows the first (= minimum) vertex of each group
    return [g.induced(vs) for vs in groups.values()]


def component_count(g: OrderedGraph) -> int:
    lab = _labels(g)
    return len(set(lab))


def contract(g: OrderedGraph, u: Iterable[Vertex]) -> OrderedGraph:
    """Contraction of ``g`` on the vertex subset ``u``.

    Every pair of outside vertices adjacent to a common component of ``g[u]``
    gets joined by an edge; the vertices of ``u`` and all edges meeting them
    disappear.
    """
    uset = set(u)
    missing = uset - set(g.vertices)
    if missing:
        raise ValueError(f"not vertices of the graph: {sorted(map(repr, missing))}")
    if not uset:
        return g
    inner = [v for v in g.vertices if v in uset]
    pos = {v: k for k, v in enumerate(inner)}
    inner_edges = [(pos[a], pos[b]) for a, b in (tuple(e) for e in g.edges) if a in uset and b in uset]
    lab = kernels.component_labels(len(inner), inner_edges)
    attached: dict[int, list] = {}
    for v in g.vertices:
        if v in uset:
            continue
        roots = {lab[pos[w]] for w in g.neighbours(v) if w in uset}
        for r in roots:
            attached.setdefault(r, []).append(v)
    new_edges = [tuple(e) for e in g.edges if not (e & uset)]
    for group in attached.values():
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                new_edges.append((group[a], group[b]))
    return OrderedGraph((v for v in g.vertices if v not in uset), new_edges)


def contract_literal(g: OrderedGraph, u: Iterable[Vertex]) -> OrderedGraph:
    """Contraction computed straight from the definition by path search.

    Slow; kept as an independent route for testing :func:`contract`.
    """
    uset = set(u)
    outside = [v for v in g.vertices if v not in uset]
    adj_u = [v for v in outside if g.neighbours(v) & uset]
    new_edges = [tuple(e) for e in g.edges if not (e & uset)]
    for a in range(len(adj_u)):
        for b in range(a + 1, len(adj_u)):
            v, w = adj_u[a], adj_u[b]
            # search a path v - u1 - ... - uk - w with every u_j in U
            seen = set()
            stack = [x for x in g.neighbours(v) if x in uset]
            found = False
            while stack:
                x = stack.pop()
                if x in seen:
                    continue
                seen.add(x)
                if w in g.neighbours(x):
                    found = True
                    break
                stack.extend(y for y in g.neighbours(x) if y in uset and y not in seen)
            if found:
                new_edges.append((v, w))
    return OrderedGraph(outside, new_edges)


def index(g: OrderedGraph, u: Iterable[Vertex]) -> int:
    """The number of components that vanish when contracting on ``u``."""
    u = list(u)
    return component_count(g) - component_count(contract(g, u))


@dataclass(frozen=True)
class PairPartition:
    """A partition of an ordered ground set into 2-element blocks."""

    ground: tuple
    parts: frozenset

    def __post_init__(self):
        if len(self.ground) % 2:
            raise ValueError("ground set has odd size")
        rank = {v: k for k, v in enumerate(self.ground)}
        seen = set()
        for p in self.parts:
            if len(p) != 2:
                raise ValueError(f"part {p!r} is not a pair")
            for v in p:
                if v not in rank:
                    raise ValueError(f"{v!r} is not in the ground set")
                if v in seen:
                    raise ValueError(f"{v!r} lies in two parts")
                seen.add(v)
        if len(seen) != len(rank):
            raise ValueError("parts do not cover the ground set")

    @classmethod
    def from_pairs(cls, ground: Sequence, pairs: Iterable[tuple]) -> "PairPartition":
        return cls(tuple(ground), frozenset(frozenset(p) for p in pairs))

    def bounds(self, part) -> tuple:
        """(m(p), M(p)) under the ground order."""
        rank = {v: k for k, v in enumerate(self.ground)}
        a, b = sorted(part, key=rank.__getitem__)
        return a, b


def crossing_pair(rank: Mapping[Vertex, int], pairs: Iterable[tuple]):
    """Return two crossing pairs, or ``None`` when the pairs are crossingless."""
    spans = sorted(tuple(sorted((rank[a], rank[b]))) for a, b in pairs)
    stack: list[tuple[int, int]] = []
    for lo, hi in spans:
        while stack and stack[-1][1] < lo:
            stack.pop()
        if stack and stack[-1][1] < hi:
            return stack[-1], (lo, hi)
        stack.append((lo, hi))
    return None


def is_crossingless(p: PairPartition) -> bool:
    rank = {v: k for k, v in enumerate(p.ground)}
    return crossing_pair(rank, (tuple(q) for q in p.parts)) is None


@dataclass(frozen=True)
class Piece:
    """One component of a graph of maximum degree two."""

    kind: str  # "PATH" or "CYCLE"
    walk: tuple  # vertices in traversal order; a path starts at its smaller end

    @property
    def endpoints(self) -> tuple | None:
        if self.kind != "PATH":
            return None
        return self.walk[0], self.walk[-1]


@dataclass(frozen=True)
class DegreeTwoSplit:
    pieces: tuple
    pairing: frozenset  # degree-one vertices paired along their path


def classify_degree_le2(g: OrderedGraph) -> DegreeTwoSplit:
    """Split a graph of maximum degree 2 into paths and cycles."""
    for v in g.vertices:
        if g.degree(v) > 2:
            raise DegreeTooHigh(v, g.degree(v))
    pieces = []
    pairing = set()
    for comp in components(g):
        vs = comp.vertices
        ends = [v for v in vs if comp.degree(v) <= 1]
        if not ends:
            start, kind = vs[0], "CYCLE"
        else:
            start, kind = ends[0], "PATH"
        walk = [start]
        prev = None
        cur = start
        while True:
            nxt = [w for w in comp.neighbours(cur) if w != prev and w != start]
            if not nxt:
                break
            if prev is None and kind == "CYCLE":
                nxt.sort(key=g.rank)
            prev, cur = cur, nxt[0]
            walk.append(cur)
        pieces.append(Piece(kind, tuple(walk)))
        if kind == "PATH" and len(walk) > 1:
            pairing.add(frozenset((walk[0], walk[-1])))
    return DegreeTwoSplit(tuple(pieces), frozenset(pairing))

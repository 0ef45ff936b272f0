"""Squares with bands: frames, SWB data and the moves acting on them.

A frame of rank N is a twisted chord datum with a single boundary circle,
together with multiplicities: ``south`` and ``north`` vertices on the bottom
and top edges of the square, and ``mult[k]`` strands crossing the band of
the k-th arc.  Its vertices are the pairs ``(i, a)`` with level ``i`` in
``0..2N+1`` and slot ``a`` in ``1..f(level)``, totally ordered by level, then
by ascending slot, except on the northern level ``2N+1`` where the slots
descend.

Internally every vertex is identified with its rank in that order, so an SWB
datum is a frame plus an involution ``partner`` on ``range(|V_F|)``.
"""
from __future__ import annotations

import bisect
from array import array
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from . import chord, kernels
from .chord import TwistedChordDatum
from .errors import (EmptyNorth, HasInternalComponents, InvalidDatum, NotAComponent,
                     NotAnInsertion, NotInternal, NotJuxtaposable, SetupViolated,
                     SiteOutOfRange, TypeMismatch)
from .graph_core import OrderedGraph

Vertex = tuple[int, int]

EQUIVALENT = "EQUIVALENT"
DISTINCT = "DISTINCT"
UNDECIDED = "UNDECIDED"

DEFAULT_BUDGET = 10


@lru_cache(maxsize=None)
def _tc_star(t: TwistedChordDatum) -> bool:
    return chord.is_in_tc_star(t)


# ---------------------------------------------------------------- frames

@dataclass(frozen=True)
class Frame:
    tcd: TwistedChordDatum
    south: int
    north: int
    mult: tuple[int, ...]  # aligned with tcd.arcs

    def __post_init__(self):
        object.__setattr__(self, "mult", tuple(int(x) for x in self.mult))
        if len(self.mult) != self.tcd.rank:
            raise InvalidDatum("multiplicities must align with the arcs")
        if self.south < 0 or self.north < 0 or any(x < 0 for x in self.mult):
            raise InvalidDatum("multiplicities must be non-negative")
        if not _tc_star(self.tcd):
            raise InvalidDatum(f"{self.tcd} has more than one boundary component")

    @classmethod
    def from_levels(cls, tcd: TwistedChordDatum, sizes: Sequence[int]) -> "Frame":
        """Build from the per-level vertex counts ``f(0), ..., f(2N+1)``."""
        if len(sizes) != tcd.size + 2:
            raise InvalidDatum("need one size per level")
        for a, b in tcd.arcs:
            if sizes[a] != sizes[b]:
                raise InvalidDatum(f"levels {a} and {b} of one band differ in size")
        return cls(tcd, sizes[0], sizes[-1], tuple(sizes[a] for a, _ in tcd.arcs))

    @property
    def rank(self) -> int:
        return self.tcd.rank

    @property
    def top(self) -> int:
        """The northern level ``2N+1``."""
        return self.tcd.size + 1

    @property
    def complexity(self) -> int:
        return sum(self.mult)

    @property
    def type(self) -> tuple[int, int]:
        return self.south, self.north

    def level_size(self, i: int) -> int:
        return self.level_sizes[i]

    @cached_property
    def level_sizes(self) -> tuple[int, ...]:
        sizes = [0] * (self.tcd.size + 2)
        sizes[0], sizes[-1] = self.south, self.north
        for (a, b), f in zip(self.tcd.arcs, self.mult):
            sizes[a] = sizes[b] = f
        return tuple(sizes)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out = [0]
        for s in self.level_sizes:
            out.append(out[-1] + s)
        return tuple(out)

    @property
    def size(self) -> int:
        """``|V_F|``."""
        return self.offsets[-1]

    @cached_property
    def level_of(self) -> tuple[int, ...]:
        out = []
        for i, s in enumerate(self.level_sizes):
            out += [i] * s
        return tuple(out)

    def index(self, v: Vertex) -> int:
        i, a = v
        if not (0 <= i <= self.top and 1 <= a <= self.level_sizes[i]):
            raise SiteOutOfRange(f"{v} is not a vertex of the frame")
        if i == self.top:
            return self.offsets[i] + self.level_sizes[i] - a
        return self.offsets[i] + a - 1

    def vertex(self, k: int) -> Vertex:
        i = self.level_of[k]
        if i == self.top:
            return i, self.offsets[i + 1] - k
        return i, k - self.offsets[i] + 1

    @cached_property
    def vertices(self) -> tuple[Vertex, ...]:
        return tuple(self.vertex(k) for k in range(self.size))

    def is_internal(self, v: Vertex) -> bool:
        return 0 < v[0] < self.top

    @cached_property
    def iota_index(self) -> tuple[int, ...]:
        """``ι`` on vertex ranks, ``-1`` on external vertices."""
        out = [-1] * self.size
        t = self.tcd
        for (i, j), s, f in zip(t.arcs, t.twists, self.mult):
            oi, oj = self.offsets[i], self.offsets[j]
            for a in range(f):
                b = a if s else f - 1 - a
                out[oi + a] = oj + b
                out[oj + b] = oi + a
        return tuple(out)

    @cached_property
    def twisted_index(self) -> tuple[bool, ...]:
        t = self.tcd
        return tuple(0 < i < self.top and bool(t.site_twist(i)) for i in self.level_of)

    def iota(self, v: Vertex) -> Vertex:
        if not self.is_internal(v):
            raise NotInternal(f"{v} is not an internal vertex")
        return self.vertex(self.iota_index[self.index(v)])

    # half-slots (i, a + 1/2), a = 0..f(i), stored by rank like the vertices
    @cached_property
    def half_offsets(self) -> tuple[int, ...]:
        out = [0]
        for s in self.level_sizes:
            out.append(out[-1] + s + 1)
        return tuple(out)

    def half_vertex(self, k: int) -> tuple[int, Fraction]:
        i = bisect.bisect_right(self.half_offsets, k) - 1
        pos = k - self.half_offsets[i]
        f = self.level_sizes[i]
        a = f - pos if i == self.top else pos
        return i, Fraction(2 * a + 1, 2)

    @cached_property
    def half_iota(self) -> tuple[int, ...]:
        n = self.half_offsets[-1]
        out = [-1] * n
        t = self.tcd
        for (i, j), s, f in zip(t.arcs, t.twists, self.mult):
            oi, oj = self.half_offsets[i], self.half_offsets[j]
            for a in range(f + 1):
                b = a if s else f - a
                out[oi + a] = oj + b
                out[oj + b] = oi + a
        return tuple(out)

    def star(self) -> "Frame":
        t = chord.star(self.tcd)
        n = self.tcd.size
        sizes = [0] * (n + 2)
        sizes[0], sizes[-1] = self.north, self.south
        for i in range(1, n + 1):
            sizes[n + 1 - i] = self.level_sizes[i]
        return Frame.from_levels(t, sizes)

    def __repr__(self) -> str:
        return f"Frame({self.tcd!r}, south={self.south}, north={self.north}, mult={self.mult})"


def iota(fr: Frame, v: Vertex) -> Vertex:
    """The band pairing of internal vertices."""
    return fr.iota(v)


def iota_half(fr: Frame, v: tuple[int, Fraction]) -> tuple[int, Fraction]:
    """The band pairing on half-slot vertices."""
    i, x = v
    if not 0 < i < fr.top:
        raise NotInternal(f"{v} is not an internal half-slot")
    j = fr.tcd.partner(i)
    f = fr.level_sizes[i]
    return (j, x) if fr.tcd.site_twist(i) else (j, f + 1 - x)


# ---------------------------------------------------------------- SWB data

def _crossing(partner: Sequence[int]) -> tuple[int, int] | None:
    """Opening ends of two crossing pairs, or ``None`` for a crossingless pairing."""
    stack = []
    for k, p in enumerate(partner):
        if p > k:
            stack.append(k)
        else:
            q = stack.pop()
            if q != p:
                # the pair opened last is still open when p's pair closes
                return (p, q)
    return None


@dataclass(frozen=True)
class SWBDatum:
    frame: Frame
    partner: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(x) for x in self.partner)
        object.__setattr__(self, "partner", p)
        n = self.frame.size
        if len(p) != n:
            raise InvalidDatum(f"pairing covers {len(p)} vertices, the frame has {n}")
        for k, q in enumerate(p):
            if not 0 <= q < n or q == k or p[q] != k:
                raise InvalidDatum("pairing is not a perfect matching")
        bad = _crossing(p)
        if bad is not None:
            v = self.frame.vertex
            a, b = bad
            raise InvalidDatum(f"pairs {v(a)}-{v(p[a])} and {v(b)}-{v(p[b])} cross")

    @classmethod
    def from_pairs(cls, frame: Frame, pairs: Iterable[tuple[Vertex, Vertex]]) -> "SWBDatum":
        p = [-1] * frame.size
        for u, v in pairs:
            a, b = frame.index(tuple(u)), frame.index(tuple(v))
            if p[a] != -1 or p[b] != -1 or a == b:
                raise InvalidDatum(f"vertex used twice in pair {u}-{v}")
            p[a], p[b] = b, a
        if -1 in p:
            raise InvalidDatum(f"vertex {frame.vertex(p.index(-1))} is unpaired")
        return cls(frame, tuple(p))

    @property
    def tcd(self) -> TwistedChordDatum:
        return self.frame.tcd

    @property
    def type(self) -> tuple[int, int]:
        return self.frame.type

    def pairs(self) -> list[tuple[Vertex, Vertex]]:
        """Pairing parts as vertex pairs, in the order of their lower end."""
        fr = self.frame
        return [(fr.vertex(k), fr.vertex(q)) for k, q in enumerate(self.partner) if k < q]

    def __repr__(self) -> str:
        return f"SWBDatum({self.frame!r}, {self.pairs()!r})"


def make_datum(tcd: TwistedChordDatum, south: int, north: int, mult: Sequence[int],
               pairs: Iterable[tuple[Vertex, Vertex]]) -> SWBDatum:
    return SWBDatum.from_pairs(Frame(tcd, south, north, tuple(mult)), pairs)


def _relabel(th: SWBDatum, keep: Sequence[bool], partner: Sequence[int] | None = None) -> SWBDatum:
    """Restrict to the kept vertices (ranks renumbered in order)."""
    fr = th.frame
    partner = th.partner if partner is None else partner
    sizes = [0] * len(fr.level_sizes)
    new = [-1] * fr.size
    c = 0
    for k in range(fr.size):
        if keep[k]:
            sizes[fr.level_of[k]] += 1
            new[k] = c
            c += 1
    out = [new[partner[k]] for k in range(fr.size) if keep[k]]
    return SWBDatum(Frame.from_levels(fr.tcd, sizes), tuple(out))


# ---------------------------------------------------------------- graphs

def curve_graph(th: SWBDatum) -> OrderedGraph:
    fr = th.frame
    vs = fr.vertices
    edges = [(vs[k], vs[q]) for k, q in enumerate(th.partner) if k < q]
    edges += [(vs[k], vs[q]) for k, q in enumerate(fr.iota_index) if k < q]
    return OrderedGraph(vs, edges)


def _labels(th: SWBDatum) -> list[int]:
    fr = th.frame
    pairs = [(k, q) for k, q in enumerate(th.partner) if k < q]
    pairs += [(k, q) for k, q in enumerate(fr.iota_index) if k < q]
    return kernels.component_labels(fr.size, pairs)


def component_sets(th: SWBDatum) -> list[tuple[int, ...]]:
    """Components of the curve graph as sorted tuples of vertex ranks."""
    groups: dict[int, list[int]] = {}
    for k, r in enumerate(_labels(th)):
        groups.setdefault(r, []).append(k)
    return [tuple(g) for g in groups.values()]


def components(th: SWBDatum) -> list[OrderedGraph]:
    g = curve_graph(th)
    vs = th.frame.vertices
    return [g.induced(vs[k] for k in comp) for comp in component_sets(th)]


def component_count(th: SWBDatum) -> int:
    return len(set(_labels(th)))


def _faces(th: SWBDatum) -> list[int]:
    """Face label of every half-slot: the lower end of the innermost enclosing part, or -1."""
    fr = th.frame
    out = []
    stack: list[int] = []
    for i, f in enumerate(fr.level_sizes):
        base = fr.offsets[i]
        for pos in range(f + 1):
            out.append(stack[-1] if stack else -1)
            if pos < f:
                k = base + pos
                q = th.partner[k]
                if q > k:
                    stack.append(k)
                else:
                    stack.pop()
    return out


def complement_graph(th: SWBDatum) -> OrderedGraph:
    fr = th.frame
    n = fr.half_offsets[-1]
    vs = [fr.half_vertex(k) for k in range(n)]
    faces: dict[int, list[int]] = {}
    for k, f in enumerate(_faces(th)):
        faces.setdefault(f, []).append(k)
    edges = [(vs[k], vs[q]) for k, q in enumerate(fr.half_iota) if k < q]
    for group in faces.values():
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                edges.append((vs[group[a]], vs[group[b]]))
    return OrderedGraph(vs, edges)


def complement_count(th: SWBDatum) -> int:
    fr = th.frame
    n = fr.half_offsets[-1]
    pairs = [(k, q) for k, q in enumerate(fr.half_iota) if k < q]
    first: dict[int, int] = {}
    for k, f in enumerate(_faces(th)):
        if f in first:
            pairs.append((first[f], k))
        else:
            first[f] = k
    return len(set(kernels.component_labels(n, pairs)))


# ---------------------------------------------------------------- components

@dataclass(frozen=True)
class ComponentInfo:
    component: OrderedGraph
    external: bool
    fully_external: bool
    twist: int
    separating: bool

    @property
    def internal(self) -> bool:
        return not self.external


def _as_index_set(th: SWBDatum, comp) -> tuple[int, ...]:
    fr = th.frame
    if isinstance(comp, OrderedGraph):
        try:
            ks = tuple(sorted(fr.index(v) for v in comp.vertices))
        except (SiteOutOfRange, TypeError, ValueError):
            raise NotAComponent("component has vertices outside the frame") from None
    else:
        ks = tuple(sorted(comp))
    if ks not in set(component_sets(th)):
        raise NotAComponent("not a component of the curve graph")
    return ks


def _is_external(fr: Frame, comp: Iterable[int]) -> bool:
    top = fr.top
    return any(fr.level_of[k] in (0, top) for k in comp)


def _twist(fr: Frame, comp: Iterable[int]) -> int:
    # each band edge has both ends in the component
    return (sum(1 for k in comp if fr.twisted_index[k]) // 2) % 2


def _keep_only(th: SWBDatum, comp: Sequence[int]) -> SWBDatum:
    keep = [False] * th.frame.size
    for k in comp:
        keep[k] = True
    return _relabel(th, keep)


def _separating(th: SWBDatum, comp: Sequence[int]) -> bool:
    c = complement_count(_keep_only(th, comp))
    if c not in (1, 2):
        raise AssertionError(f"a single curve cut the surface into {c} pieces")
    return c == 2


def classify_component(th: SWBDatum, comp) -> ComponentInfo:
    ks = _as_index_set(th, comp)
    fr = th.frame
    top = fr.top
    ext = _is_external(fr, ks)
    full = all(fr.level_of[k] in (0, top) for k in ks)
    vs = fr.vertices
    g = curve_graph(th).induced(vs[k] for k in ks) if not isinstance(comp, OrderedGraph) else comp
    return ComponentInfo(g, ext, full, _twist(fr, ks), _separating(th, ks))


def classify_components(th: SWBDatum) -> list[ComponentInfo]:
    return [classify_component(th, c) for c in component_sets(th)]


def delete_component(th: SWBDatum, comp) -> SWBDatum:
    ks = set(_as_index_set(th, comp))
    return _relabel(th, [k not in ks for k in range(th.frame.size)])


def has_internal_components(th: SWBDatum) -> bool:
    fr = th.frame
    return any(not _is_external(fr, c) for c in component_sets(th))


def strip_internal(th: SWBDatum) -> tuple[SWBDatum, list[tuple[int, int]]]:
    """Delete every internal component, smallest first.

    Returns the stripped datum and ``(twist, separating)`` for each deleted
    component.
    """
    removed = []
    while True:
        fr = th.frame
        internal = [c for c in component_sets(th) if not _is_external(fr, c)]
        if not internal:
            return th, removed
        c = min(internal, key=lambda c: (len(c), c))
        removed.append((_twist(fr, c), int(_separating(th, c))))
        th = delete_component(th, c)


# ---------------------------------------------------------------- duality

def star(th: SWBDatum) -> SWBDatum:
    n = th.frame.size
    p = th.partner
    return SWBDatum(th.frame.star(), tuple(n - 1 - p[n - 1 - k] for k in range(n)))


# ---------------------------------------------------------------- juxtaposition

def juxtapose(th2: SWBDatum, th1: SWBDatum) -> tuple[SWBDatum, int]:
    """``th2 # th1`` (th1 below) and the number of closed loops formed in the middle."""
    f1, f2 = th1.frame, th2.frame
    m = f1.north
    if f2.south != m:
        raise TypeMismatch(f"north of the lower datum is {m}, south of the upper is {f2.south}")
    v1, v2 = f1.size, f2.size
    low = v1 - m  # non-northern part of th1
    p1, p2 = th1.partner, th2.partner

    def glued1(k):  # th1 northern vertex -> th2 southern rank
        return v1 - 1 - k  # north slot a sits at v1 - a, south slot a at a - 1

    new = lambda side, k: k if side == 1 else low + (k - m)
    out = [-1] * (low + v2 - m)
    seen_glue = [False] * m
    for side, k in [(1, k) for k in range(low)] + [(2, k) for k in range(m, v2)]:
        if out[new(side, k)] != -1:
            continue
        s, x = side, k
        while True:
            y = (p1 if s == 1 else p2)[x]
            if s == 1 and y >= low:
                g = glued1(y)
                seen_glue[g] = True
                s, x = 2, g
            elif s == 2 and y < m:
                seen_glue[y] = True
                s, x = 1, v1 - 1 - y
            else:
                break
        a, b = new(side, k), new(s, y)
        out[a], out[b] = b, a
    loops = 0
    for g in range(m):
        if seen_glue[g]:
            continue
        loops += 1
        x = g
        while not seen_glue[x]:
            seen_glue[x] = True
            y = p2[x]  # partner in th2's south, stays in the glued layer
            seen_glue[y] = True
            x = glued1(p1[v1 - 1 - y])
    sizes = list(f1.level_sizes[:-1]) + list(f2.level_sizes[1:])
    frame = Frame.from_levels(chord.juxtapose(f2.tcd, f1.tcd), sizes)
    return SWBDatum(frame, tuple(out)), loops


def juxtapose_all(*data: SWBDatum) -> tuple[SWBDatum, int]:
    """``data[0] # data[1] # ...`` with the total linking number."""
    out, total = data[-1], 0
    for th in reversed(data[:-1]):
        out, l = juxtapose(th, out)
        total += l
    return out, total


def linking_number(th1: SWBDatum, th2: SWBDatum) -> int:
    """``L_{th1, th2}``: loops formed when stacking ``th2`` on ``th1``."""
    return juxtapose(th2, th1)[1]


# ---------------------------------------------------------------- insertion and factorisation

@dataclass(frozen=True)
class InsertionParts:
    """``th`` split as an inner datum inserted into an outer frame."""

    inner: SWBDatum
    outer_frame: Frame
    height: int
    embedding: tuple[int, ...]  # inner vertex rank -> rank in th
    rest: tuple[tuple[int, int], ...]  # parts of th avoiding the block, as rank pairs


def insertion_decompose(th: SWBDatum, d: int, inner_tcd: TwistedChordDatum) -> InsertionParts:
    fr = th.frame
    split = chord.extract_block(fr.tcd, d, inner_tcd.size) if 0 <= d <= fr.tcd.size - inner_tcd.size else None
    if split is None or split[1] != inner_tcd:
        raise NotAnInsertion(f"{fr.tcd} is not an insertion of {inner_tcd} at height {d}")
    outer = split[0]
    lo, hi = fr.offsets[d + 1], fr.offsets[d + 1 + inner_tcd.size]  # the block's ranks
    p = th.partner
    us = [k for k in range(lo) if lo <= p[k] < hi]
    ws = [k for k in range(fr.size - 1, hi - 1, -1) if lo <= p[k] < hi]
    n, m = len(us), len(ws)
    sizes = [n] + list(fr.level_sizes[d + 1:d + 1 + inner_tcd.size]) + [m]
    f1 = Frame.from_levels(inner_tcd, sizes)
    emb = tuple(us) + tuple(range(lo, hi)) + tuple(reversed(ws))
    back = {k: r for r, k in enumerate(emb)}
    inner = SWBDatum(f1, tuple(back[p[k]] for k in emb))
    osizes = [fr.south] + list(fr.level_sizes[1:d + 1]) + list(fr.level_sizes[d + 1 + inner_tcd.size:])
    outer_frame = Frame.from_levels(outer, osizes)
    rest = tuple((k, p[k]) for k in range(fr.size) if k < p[k] and not (lo <= k < hi or lo <= p[k] < hi))
    return InsertionParts(inner, outer_frame, d, emb, rest)


def insertion_assemble(parts: InsertionParts) -> SWBDatum:
    inner, of, d = parts.inner, parts.outer_frame, parts.height
    it = inner.frame.tcd
    sizes = list(of.level_sizes[:d + 1]) + list(inner.frame.level_sizes[1:-1]) + list(of.level_sizes[d + 1:])
    frame = Frame.from_levels(chord.insert(of.tcd, d, it), sizes)
    p = [-1] * frame.size
    for a, b in parts.rest:
        p[a], p[b] = b, a
    e = parts.embedding
    for k, q in enumerate(inner.partner):
        p[e[k]] = e[q]
    return SWBDatum(frame, tuple(p))


def factorize(th: SWBDatum, n1: int) -> tuple[SWBDatum, SWBDatum]:
    """Split along the chord juxtaposition with ``n1`` arcs at the bottom.

    Returns ``(th1, th2)`` with ``juxtapose(th2, th1) == (th, 0)``.
    """
    fr = th.frame
    if not 0 <= n1 <= fr.rank:
        raise NotJuxtaposable(f"split {n1} outside 0..{fr.rank}")
    split = chord.extract_block(fr.tcd, 0, 2 * n1)
    if split is None or not (_tc_star(split[0]) and _tc_star(split[1])):
        raise NotJuxtaposable(f"{fr.tcd} does not split after {n1} arcs")
    t2, t1 = split
    cut = fr.offsets[2 * n1 + 1]  # ranks below the cut: south and the bottom block
    p = th.partner
    us = [k for k in range(cut) if p[k] >= cut]
    m = len(us)
    s1 = list(fr.level_sizes[:2 * n1 + 1]) + [m]
    fr1 = Frame.from_levels(t1, s1)
    q1 = list(p[:cut]) + [0] * m
    for a, u in enumerate(us, start=1):
        x = fr1.size - a  # northern slot a
        q1[u], q1[x] = x, u
    s2 = [m] + list(fr.level_sizes[2 * n1 + 1:])
    fr2 = Frame.from_levels(t2, s2)
    shift = m - cut
    q2 = [0] * m + [p[k] + shift if p[k] >= cut else -1 for k in range(cut, fr.size)]
    for a, u in enumerate(us, start=1):
        v = p[u] + shift
        q2[a - 1], q2[v] = v, a - 1
    return SWBDatum(fr1, tuple(q1)), SWBDatum(fr2, tuple(q2))


# ---------------------------------------------------------------- isotopy

def _turnback(th: SWBDatum, i: int, a: int) -> tuple[int, int]:
    fr = th.frame
    if not (0 < i < fr.top and 1 <= a < fr.level_sizes[i]):
        raise SiteOutOfRange(f"({i}, {a}) has no upper neighbour in an internal level")
    u = fr.index((i, a))
    return u, u + 1


def pull_through(th: SWBDatum, i: int, a: int) -> SWBDatum:
    """Remove the turn-back ``{(i,a), (i,a+1)}`` through its band.

    Acts as the identity unless that pair is a part and its band image is not.
    """
    u, v = _turnback(th, i, a)
    fr = th.frame
    p = list(th.partner)
    if p[u] != v:
        return th
    iu, iv = fr.iota_index[u], fr.iota_index[v]
    if p[iu] == iv:
        return th
    u2, v2 = p[iu], p[iv]
    p[u2], p[v2] = v2, u2
    keep = [True] * fr.size
    for k in (u, v, iu, iv):
        keep[k] = False
    return _relabel(th, keep, p)


def turnbacks(th: SWBDatum) -> list[Vertex]:
    fr = th.frame
    lv, p = fr.level_of, th.partner
    out = []
    for k in range(fr.size - 1):
        if p[k] == k + 1 and lv[k] == lv[k + 1] and 0 < lv[k] < fr.top:
            out.append(fr.vertex(k))
    return out


def is_reduced(th: SWBDatum) -> bool:
    return not turnbacks(th)


def isotopy_reduce(th: SWBDatum, check: bool = True) -> SWBDatum:
    """The unique turn-back-free datum isotopic to ``th``."""
    if check and has_internal_components(th):
        raise HasInternalComponents("isotopy reduction needs a datum without internal components")
    fr = th.frame
    internal = [0 < i < fr.top for i in fr.level_of]
    alive, p = kernels.reduce_turnbacks(list(fr.level_of), list(internal), list(fr.iota_index), list(th.partner))
    if all(alive):
        return th
    return _relabel(th, alive, p)


# ---------------------------------------------------------------- handle slides

def _slide_geometry(fr: Frame, i: int, eps: int):
    t = fr.tcd
    sigma = chord.slide_permutation(t, i, eps)
    t2 = chord.chord_slide_strict(t, i, eps)
    n = t.size
    q_end = i + eps
    ip = t.partner(q_end)  # i'
    fp = fr.level_sizes[i]
    sizes = [0] * (n + 2)
    sizes[0], sizes[-1] = fr.south, fr.north
    for k in range(1, n + 1):
        sizes[sigma[k - 1]] = fr.level_sizes[k]
    for k in (q_end, ip):
        sizes[sigma[k - 1]] += fp
    fr2 = Frame.from_levels(t2, sizes)
    si, sip = sigma[i - 1], sigma[ip - 1]
    # U is level sigma(i) plus the f(p) slots of level sigma(i') next to it
    u_lo = fr2.offsets[si] if sip == si + 1 else fr2.offsets[si] - fp
    u_hi = u_lo + 2 * fp
    return sigma, fr2, ip, u_lo, u_hi


def handle_slide(th: SWBDatum, i: int, eps: int) -> SWBDatum:
    """Slide the band at site ``i`` along the boundary in direction ``eps``."""
    fr = th.frame
    if eps not in (1, -1) or not 1 <= i <= fr.tcd.size:
        raise SiteOutOfRange(f"({i}, {eps}) is not a site of rank {fr.rank}")
    if not chord.is_admissible(fr.tcd, i, eps):
        return th
    sigma, fr2, _, u_lo, u_hi = _slide_geometry(fr, i, eps)
    o = list(range(u_lo)) + list(range(u_hi, fr2.size))
    p2 = [-1] * fr2.size
    for k, q in enumerate(th.partner):
        p2[o[k]] = o[q]
    io2 = fr2.iota_index
    for k in range(fr.offsets[i], fr.offsets[i + 1]):
        a, b = io2[o[k]], io2[o[fr.iota_index[k]]]
        p2[a], p2[b] = b, a
    return SWBDatum(fr2, tuple(p2))


def handle_slide_table(th: SWBDatum, i: int, eps: int) -> set[tuple[Vertex, Vertex]]:
    """The new parts created by a handle slide, read off the explicit case table.

    A second route to the pairs added by :func:`handle_slide`, used to
    cross-check it.
    """
    fr = th.frame
    t = fr.tcd
    if not chord.is_admissible(t, i, eps):
        return set()
    sigma = chord.slide_permutation(t, i, eps)
    ip = t.partner(i + eps)
    si, sip = sigma[i - 1], sigma[ip - 1]
    fp, fq = fr.level_sizes[i], fr.level_sizes[ip]
    out = set()
    for a in range(1, fp + 1):
        if sip < si:
            out.add(((sip, fq + a), (si, fp + 1 - a)))
        else:
            out.add(((si, fp + 1 - a), (sip, a)))
    return out


def iota_after_slide(th: SWBDatum, i: int, eps: int, a: int) -> tuple[Vertex, Vertex]:
    """``ι'∘o'(i,a)`` and ``ι'∘o'∘ι(i,a)`` from the four-way case table."""
    fr = th.frame
    t = fr.tcd
    sigma = chord.slide_permutation(t, i, eps)
    q = i + eps
    ip = t.partner(q)
    si, sip = sigma[i - 1], sigma[ip - 1]
    fp, fq = fr.level_sizes[i], fr.level_sizes[ip]
    sq = t.site_twist(q)
    if sq == 0 and si > sip:
        first = (sip, fp + fq + 1 - a)
    elif sq == 1 and si > sip:
        first = (sip, fq + a)
    elif sq == 0:
        first = (sip, fp + 1 - a)
    else:
        first = (sip, a)
    second = (si, a) if sq == 0 else (si, fp + 1 - a)
    return first, second


def slide_moves(th: SWBDatum, moves: Iterable[tuple[int, int]], reduce: bool = True) -> SWBDatum:
    """Apply handle slides in order, isotopy-reducing after each one."""
    for i, e in moves:
        th = handle_slide(th, i, e)
        if reduce:
            th = isotopy_reduce(th, check=False)
    return th


# ---------------------------------------------------------------- left and right strands

def insert_left(th: SWBDatum) -> SWBDatum:
    fr = th.frame
    n = fr.size
    sizes = list(fr.level_sizes)
    sizes[0] += 1
    sizes[-1] += 1
    fr2 = Frame.from_levels(fr.tcd, sizes)
    p = [0] + [q + 1 for q in th.partner] + [0]
    p[0], p[n + 1] = n + 1, 0
    return SWBDatum(fr2, tuple(p))


def insert_right(th: SWBDatum) -> SWBDatum:
    fr = th.frame
    top = fr.top
    sizes = [s + (1 if k in (0, top) else 2) for k, s in enumerate(fr.level_sizes)]
    fr2 = Frame.from_levels(fr.tcd, sizes)
    # the south gains a last slot and every later level a new first slot
    o = [k + 2 * fr.level_of[k] for k in range(fr.size)]
    p = [-1] * fr2.size
    for k, q in enumerate(th.partner):
        p[o[k]] = o[q]
    for lv in range(top):
        a = fr2.offsets[lv + 1] - 1  # max of level lv
        b = fr2.offsets[lv + 1]  # min of level lv + 1
        p[a], p[b] = b, a
    return SWBDatum(fr2, tuple(p))


def shift(th: SWBDatum) -> SWBDatum:
    """``Sf(th) = I_R^{m-1}(V) # I_L(th)``, type ``(n, m) -> (n+1, m-1)``."""
    m = th.frame.north
    if m == 0:
        raise EmptyNorth("shift needs at least one northern vertex")
    cap = cap_datum()
    for _ in range(m - 1):
        cap = insert_right(cap)
    out, loops = juxtapose(cap, insert_left(th))
    assert loops == 0
    return out


# ---------------------------------------------------------------- generators

def empty_datum() -> SWBDatum:
    return SWBDatum(Frame(chord.EMPTY, 0, 0, ()), ())


def identity_datum(n: int) -> SWBDatum:
    th = empty_datum()
    for _ in range(n):
        th = insert_left(th)
    return th


def cap_datum() -> SWBDatum:
    """The datum V in Sq_0(2, 0): one arc joining the two southern vertices."""
    return SWBDatum(Frame(chord.EMPTY, 2, 0, ()), (1, 0))


def cup_datum() -> SWBDatum:
    """The datum U = V* in Sq_0(0, 2)."""
    return SWBDatum(Frame(chord.EMPTY, 0, 2, ()), (1, 0))


def caps(n: int) -> SWBDatum:
    """``V_n = Sf^n(I_n)``: n nested caps in Sq_0(2n, 0)."""
    th = identity_datum(n)
    for _ in range(n):
        th = shift(th)
    return th


def cups(n: int) -> SWBDatum:
    return star(caps(n))


def _band_block(tcd: TwistedChordDatum, bottom: Sequence[int], top: Sequence[int]) -> SWBDatum:
    """South strands run nested into the bottom band ends, top band ends nested to the north."""
    nb = sum(bottom)
    sizes = [nb] + list(bottom) + list(top) + [sum(top)]
    fr = Frame.from_levels(tcd, sizes)
    p = [0] * fr.size
    for x in range(nb):
        y = 2 * nb - 1 - x
        p[x], p[y] = y, x
    nt = sum(top)
    for k in range(nt):
        x, y = 2 * nb + nt - 1 - k, 2 * nb + nt + k
        p[x], p[y] = y, x
    return SWBDatum(fr, tuple(p))


def torus_generator(l: int, m: int) -> SWBDatum:
    """``T_{l,m}`` in Sq_Tor(l+m, l+m) with m strands on band {1,3} and l on {2,4}."""
    if l < 0 or m < 0:
        raise ValueError("multiplicities must be non-negative")
    return _band_block(chord.TOR, (m, l), (m, l))


def mobius_generator(n: int) -> SWBDatum:
    """``M_n`` in Sq_Mob(n, n)."""
    if n < 0:
        raise ValueError("multiplicity must be non-negative")
    return _band_block(chord.MOB, (n,), (n,))


def make_generator(kind: str, *params: int) -> SWBDatum:
    """Build ``Id(n)``, ``Cup(n)``, ``Cap(n)``, ``T(l, m)`` or ``M(n)``."""
    table = {"Id": identity_datum, "Cup": cups, "Cap": caps, "T": torus_generator, "M": mobius_generator}
    if kind not in table:
        raise ValueError(f"unknown generator {kind!r}")
    return table[kind](*params)


# ---------------------------------------------------------------- invariants and search

def external_pattern(th: SWBDatum, comp: Sequence[int]) -> tuple:
    fr = th.frame
    out = []
    for k in comp:
        i, a = fr.vertex(k)
        if i == 0:
            out.append(("S", a))
        elif i == fr.top:
            out.append(("N", a))
    return tuple(sorted(out))


def invariants(th: SWBDatum) -> tuple:
    """Quantities preserved by handle slides and isotopy."""
    fr = th.frame
    comps = component_sets(th)
    per = Counter()
    for c in comps:
        per[(_twist(fr, c), external_pattern(th, c), _separating(th, c))] += 1
    return (chord.classify_type(fr.tcd), fr.type, len(comps), complement_count(th),
            tuple(sorted(per.items())))


def pack(th: SWBDatum) -> list[int]:
    """The flat integer form used by the search kernels."""
    fr = th.frame
    t = fr.tcd
    sp = [t.partner(k) for k in range(1, t.size + 1)]
    st = [t.site_twist(k) for k in range(1, t.size + 1)]
    return [t.size] + sp + st + list(fr.level_sizes) + list(th.partner)


def unpack(state: Sequence[int]) -> SWBDatum:
    n2 = state[0]
    sp, st = state[1:1 + n2], state[1 + n2:1 + 2 * n2]
    arcs = tuple((a, sp[a - 1]) for a in range(1, n2 + 1) if a < sp[a - 1])
    t = TwistedChordDatum(arcs, tuple(st[a - 1] for a, _ in arcs))
    sizes = state[1 + 2 * n2:3 + 3 * n2]
    return SWBDatum(Frame.from_levels(t, sizes), tuple(state[3 + 3 * n2:]))


def _key(state: Sequence[int]) -> bytes:
    return array("H", state).tobytes()


def _unkey(key: bytes) -> list[int]:
    a = array("H")
    a.frombytes(key)
    return a.tolist()


def canonical_key(th: SWBDatum) -> bytes:
    """A compact serialisation; equal keys mean equal data."""
    return _key(pack(th))


def neighbours(th: SWBDatum) -> list[tuple[tuple[int, int], SWBDatum]]:
    """Every datum one handle slide (plus isotopy reduction) away."""
    return [(mv, unpack(s)) for mv, s in _state_neighbours(pack(th))]


def _state_neighbours(state: list[int]):
    step = kernels.slide_state
    for i in range(1, state[0] + 1):
        for e in (1, -1):
            out = step(state, i, e)
            if out is not None:
                yield (i, e), out


@dataclass(frozen=True)
class SearchResult:
    outcome: str
    moves: int | None = None
    explored: int = 0
    # handle slides from each side that reach a common reduced datum
    path_from_first: tuple[tuple[int, int], ...] | None = None
    path_from_second: tuple[tuple[int, int], ...] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.outcome == EQUIVALENT


def _check_pair(th1: SWBDatum, th2: SWBDatum) -> None:
    if th1.type != th2.type:
        raise TypeMismatch(f"types {th1.type} and {th2.type} differ")
    for th in (th1, th2):
        if has_internal_components(th):
            raise HasInternalComponents("strip internal components before comparing")


_INVARIANT_NAMES = ("surface type", "type", "component count", "complement count", "component data")


def _meet(k1: bytes, k2: bytes, budget: int, max_states: int):
    """Bidirectional breadth-first search; returns (outcome, paths, explored)."""
    if k1 == k2:
        return EQUIVALENT, ([], []), 1
    parents: list[dict] = [{k1: None}, {k2: None}]
    frontier = [[k1], [k2]]
    depth = [0, 0]
    explored = 2
    expand = kernels.neighbour_keys
    while depth[0] + depth[1] < budget:
        live = [s for s in (0, 1) if frontier[s]]
        if not live:
            return DISTINCT, None, explored
        s = min(live, key=lambda x: len(frontier[x]))
        mine, other = parents[s], parents[1 - s]
        nxt = []
        meet = None
        for k in frontier[s]:
            for i, e, kk in expand(k):
                if kk in mine:
                    continue
                mine[kk] = (k, (i, e))
                nxt.append(kk)
                explored += 1
                if kk in other:
                    meet = kk
                    break
            if meet is not None or explored > max_states:
                break
        depth[s] += 1
        if meet is not None:
            return EQUIVALENT, (_path(parents[0], meet), _path(parents[1], meet)), explored
        if explored > max_states:
            return UNDECIDED, None, explored
        frontier[s] = nxt
    return UNDECIDED, None, explored


def descend(key: bytes, lookahead: int = 6, max_states: int = 400_000) -> tuple[bytes, list, int]:
    """Walk to a datum with fewer vertices while one lies within ``lookahead`` slides.

    Returns the final packed key, the slides taken and the number of states seen.
    """
    path: list = []
    explored = 0
    expand = kernels.neighbour_keys
    while True:
        size = len(key)
        seen = {key: None}
        front = [key]
        best = None
        for _ in range(lookahead):
            nxt = []
            for k in front:
                for i, e, kk in expand(k):
                    if kk in seen:
                        continue
                    seen[kk] = (k, (i, e))
                    nxt.append(kk)
                    if len(kk) < size and (best is None or len(kk) < len(best)):
                        best = kk
            if best is not None or len(seen) > max_states:
                break
            front = nxt
        explored += len(seen)
        if best is None:
            return key, path, explored
        path += _path(seen, best)
        key = best


def hs_equivalent(th1: SWBDatum, th2: SWBDatum, budget: int = DEFAULT_BUDGET,
                  max_states: int = 2_000_000, lookahead: int = 6) -> SearchResult:
    """Decide handle-slide equivalence by bounded search.

    Both sides first descend to data with few vertices (each step looks at
    most ``min(lookahead, budget)`` slides ahead) and a bidirectional search of
    depth ``budget`` joins the two endpoints.  If that fails, a bidirectional
    search of depth ``budget`` between the reduced inputs is tried.
    ``budget`` therefore bounds every search phase; the certificate in
    ``path_from_first`` / ``path_from_second`` can be longer.  DISTINCT is
    returned when an invariant separates the data or when the whole orbit of
    one side has been exhausted.
    """
    _check_pair(th1, th2)
    i1, i2 = invariants(th1), invariants(th2)
    if i1 != i2:
        which = next(n for n, a, b in zip(_INVARIANT_NAMES, i1, i2) if a != b)
        return SearchResult(DISTINCT, reason=f"{which} differs")
    roots = (isotopy_reduce(th1, check=False), isotopy_reduce(th2, check=False))
    keys = tuple(canonical_key(r) for r in roots)
    if keys[0] == keys[1]:
        return SearchResult(EQUIVALENT, 0, 1, (), ())
    explored = 0
    look = min(lookahead, budget)
    if look > 0:
        d1, p1, n1 = descend(keys[0], look)
        d2, p2, n2 = descend(keys[1], look)
        explored += n1 + n2
        if p1 or p2:
            outcome, paths, n = _meet(d1, d2, budget, max_states)
            explored += n
            if outcome == EQUIVALENT:
                a = tuple(p1 + paths[0])
                b = tuple(p2 + paths[1])
                return SearchResult(EQUIVALENT, len(a) + len(b), explored, a, b)
    outcome, paths, n = _meet(keys[0], keys[1], budget, max_states)
    explored += n
    if outcome == EQUIVALENT:
        return SearchResult(EQUIVALENT, len(paths[0]) + len(paths[1]), explored,
                            tuple(paths[0]), tuple(paths[1]))
    if outcome == DISTINCT:
        return SearchResult(DISTINCT, None, explored, reason="orbit exhausted without meeting")
    if explored > max_states:
        return SearchResult(UNDECIDED, None, explored, reason="state limit reached")
    return SearchResult(UNDECIDED, None, explored, reason=f"no meeting within {budget} moves")


def _path(parents: dict, key) -> list:
    out = []
    while parents[key] is not None:
        key, mv = parents[key]
        out.append(mv)
    return list(reversed(out))


# ---------------------------------------------------------------- random data

def random_matching(rng, size: int) -> list[int]:
    """A crossingless perfect matching of ``range(size)`` as a partner list."""
    p = [0] * size

    def fill(lo: int, hi: int) -> None:
        while lo < hi:
            j = lo + 1 + 2 * rng.randrange((hi - lo) // 2)
            p[lo], p[j] = j, lo
            fill(lo + 1, j)
            lo = j + 1

    fill(0, size)
    return p


def random_frame(rng, max_rank: int = 2, max_mult: int = 3, orientable: bool | None = None,
                 parity: int | None = None) -> Frame:
    """A random frame; ``south + north`` is even unless ``parity`` says otherwise."""
    while True:
        n = rng.randint(0, max_rank)
        sites = list(range(1, 2 * n + 1))
        rng.shuffle(sites)
        arcs = [tuple(sorted(sites[2 * k:2 * k + 2])) for k in range(n)]
        tw = [0 if orientable else rng.randint(0, 1) for _ in arcs]
        if orientable is False and not any(tw) and arcs:
            tw[0] = 1
        t = TwistedChordDatum(tuple(arcs), tuple(tw))
        if _tc_star(t):
            break
    mult = tuple(rng.randint(0, max_mult) for _ in range(n))
    south = rng.randint(0, max_mult)
    north = rng.randint(0, max_mult)
    if (south + north) % 2 != (parity or 0):
        north += 1
    return Frame(t, south, north, mult)


def random_datum(rng, max_rank: int = 2, max_mult: int = 3, **kw) -> SWBDatum:
    fr = random_frame(rng, max_rank, max_mult, **kw)
    return SWBDatum(fr, tuple(random_matching(rng, fr.size)))


# ---------------------------------------------------------------- rewriting lemmas

@dataclass(frozen=True)
class LemmaSetup:
    """The data of an insertion ``th = F2 #_d F1`` prepared for the rewriting lemmas.

    Vertex sets are tuples of ranks in ``th``.  ``arc`` is the outer arc
    ``{d+1, c}`` (outer numbering) whose lower site sits just above the
    block; ``level_above`` is its image ``D+1`` and ``level_far`` the image
    ``C`` of ``c``.
    """

    parts: InsertionParts
    arc: tuple[int, int]
    c: int
    twist: int
    level_above: int
    level_far: int
    U: tuple[int, ...]
    V: tuple[int, ...]
    U1: tuple[int, ...]
    U2: tuple[int, ...]
    U3: tuple[int, ...]
    X: tuple[int, ...]
    X1: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.U)

    @property
    def m(self) -> tuple[int, int, int]:
        return len(self.U1), len(self.U2), len(self.U3)


def lemma_setup(th: SWBDatum, d: int, inner_tcd: TwistedChordDatum) -> LemmaSetup:
    """Check the common hypotheses of the rewriting lemmas and collect their vertex sets."""
    failed = []
    if turnbacks(th):
        failed.append("datum has turn-backs")
    if has_internal_components(th):
        failed.append("datum has internal components")
    try:
        parts = insertion_decompose(th, d, inner_tcd)
    except NotAnInsertion as exc:
        raise SetupViolated(failed + [str(exc)]) from None
    outer = parts.outer_frame.tcd
    if not d < outer.size:
        failed.append(f"height {d} is not below the top site {outer.size} of the outer datum")
    if failed:
        raise SetupViolated(failed)
    fr = th.frame
    w = inner_tcd.size
    c = outer.partner(d + 1)
    above = d + 1 + w
    far = c if c <= d else c + w
    p = th.partner
    emb_north = parts.embedding[parts.inner.frame.size - parts.inner.frame.north:]
    lv = fr.level_of
    V = tuple(sorted(k for k in emb_north if lv[k] == above))
    U1 = tuple(sorted(k for k in emb_north if lv[k] > above))
    hits = [p[fr.iota_index[v]] for v in V]
    U2 = tuple(sorted(u for u in hits if lv[u] < far))
    U3 = tuple(sorted(u for u in hits if lv[u] > far))
    U = tuple(parts.embedding[:parts.inner.frame.south])
    X = tuple(sorted(k for k in range(fr.size) if lv[k] < above - 1 and lv[p[k]] == above))
    X1 = tuple(sorted(k for k in range(fr.size) if lv[k] > above - 1 and lv[k] != above and lv[p[k]] == above))
    return LemmaSetup(parts, (d + 1, c) if d + 1 < c else (c, d + 1), c, outer.site_twist(d + 1),
                      above, far, U, V, U1, U2, U3, X, X1)


def _run_macro(th: SWBDatum, moves: Sequence[tuple[int, int]]) -> SWBDatum:
    for i, e in moves:
        if not chord.is_admissible(th.frame.tcd, i, e):
            raise AssertionError(f"macro move {(i, e)} is inert on {th.frame.tcd}")
        th = handle_slide(th, i, e)
    return isotopy_reduce(th, check=False)


def evacuation_trace(th: SWBDatum, d: int, inner_tcd: TwistedChordDatum) -> list[tuple[int, int]]:
    return chord.evacuation_moves(th.frame.tcd, 1, d + 1, d + inner_tcd.size)[1]


def rewrite_lemma1(th: SWBDatum, d: int, inner_tcd: TwistedChordDatum) -> SWBDatum:
    """Evacuate an inserted block across an untwisted outer arc.

    The block moves from height ``d`` to height ``c``, the far end of the
    outer arc starting just above it.
    """
    su = lemma_setup(th, d, inner_tcd)
    if su.twist != 0:
        raise SetupViolated(["the outer arc above the block is twisted"])
    return _run_macro(th, evacuation_trace(th, d, inner_tcd))


def rewrite_lemma2(th: SWBDatum, d: int, inner_tcd: TwistedChordDatum) -> SWBDatum:
    """As :func:`rewrite_lemma1` for a twisted outer arc; the block lands at ``c-1`` reflected."""
    su = lemma_setup(th, d, inner_tcd)
    if su.twist != 1:
        raise SetupViolated(["the outer arc above the block is untwisted"])
    return _run_macro(th, evacuation_trace(th, d, inner_tcd))


def rewrite_lemma3(th: SWBDatum, d: int, inner_tcd: TwistedChordDatum) -> SWBDatum:
    """Move an inserted block up by one site with downward boundary slides."""
    su = lemma_setup(th, d, inner_tcd)
    failed = []
    _, m2, m3 = su.m
    if m2 or m3:
        failed.append(f"m2 = {m2} and m3 = {m3} must vanish")
    fp = th.frame.level_sizes[su.level_above]
    if fp != len(su.X) + len(su.X1):
        failed.append(f"f(p) = {fp} differs from l + k = {len(su.X)} + {len(su.X1)}")
    if failed:
        raise SetupViolated(failed)
    trace = chord.boundary_slide_moves(th.frame.tcd, -1, d, inner_tcd)[1]
    return _run_macro(th, trace)


# ---------------------------------------------------------------- generator factorisation

def _rank0(south: int, north: int, partner: Sequence[int]) -> SWBDatum:
    return SWBDatum(Frame(chord.EMPTY, south, north, ()), tuple(partner))


def peel_block(th: SWBDatum) -> tuple[SWBDatum, SWBDatum, SWBDatum]:
    """Write a Tor- or Mob-framed datum as ``T2 # I_L^a(G) # T1`` exactly.

    ``G`` is ``T_{l,m}`` or ``M_n`` and ``T1``, ``T2`` have rank 0.  The square
    is cut between the lower and the upper band ends; parts crossing the cut
    become the ``a`` strands on the left of ``G``.
    """
    fr = th.frame
    t = fr.tcd
    if t == chord.TOR:
        gen = torus_generator(fr.level_sizes[2], fr.level_sizes[1])
    elif t == chord.MOB:
        gen = mobius_generator(fr.level_sizes[1])
    else:
        raise NotJuxtaposable(f"{t} is not a single Tor or Mob block")
    r = t.rank
    s = fr.south
    cut = fr.offsets[r + 1]
    nb = cut - s  # vertices on the lower band ends
    p = th.partner
    crossing = sorted((k for k in range(cut) if p[k] >= cut), reverse=True)  # innermost first
    a = len(crossing)
    q1 = list(p[:cut]) + [0] * a
    for j, k in enumerate(crossing):
        q1[k], q1[cut + j] = cut + j, k
    t1 = _rank0(s, nb + a, q1)
    upper = fr.size - cut
    q2 = [0] * a + [p[k] - cut + a if p[k] >= cut else -1 for k in range(cut, fr.size)]
    for j, k in enumerate(reversed(crossing)):  # outermost first
        x = p[k] - cut + a
        q2[j], q2[x] = x, j
    t2 = _rank0(a + upper - fr.north, fr.north, q2)
    middle = gen
    for _ in range(a):
        middle = insert_left(middle)
    return t2, middle, t1


def factor_generators(th: SWBDatum) -> list[SWBDatum]:
    """Rank-0 data and left-padded generators whose product is h.s.-equivalent to ``th``.

    The list is ordered top first, so ``juxtapose_all(*result)`` rebuilds a
    datum equivalent to ``th`` with linking number 0.
    """
    if th.frame.rank == 0:
        return [th]
    reduce = not has_internal_components(th)
    st, trace = chord.caravan_normalize(th.frame.tcd)
    th = slide_moves(th, trace, reduce=reduce)
    blocks = []  # bottom first
    rest = th
    for width in [2] * st.g + [1] * st.t:
        if rest.frame.rank == width:
            blocks.append(rest)
            break
        low, rest = factorize(rest, width)
        blocks.append(low)
    out = []
    for b in reversed(blocks):
        out += list(peel_block(b))
    return out

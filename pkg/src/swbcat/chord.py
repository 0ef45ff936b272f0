"""Twisted chord data and chord slides.

A twisted chord datum of rank N pairs up the sites ``1..2N`` into arcs and
marks each arc with a twist in Z/2.  Arcs are kept sorted by their lower
end, with the twists aligned by position.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import kernels
from .errors import (BadPermutation, CapExceeded, HeightOutOfRange, IndexOutOfRange,
                     NotAdmissible, NotAnInsertion, ParityViolation, SiteOutOfRange,
                     UnknownArc)
from .graph_core import OrderedGraph, component_count

ENUMERATION_CAP = 5

Arc = tuple[int, int]
Move = tuple[int, int]


@dataclass(frozen=True)
class TwistedChordDatum:
    arcs: tuple[Arc, ...]
    twists: tuple[int, ...]

    def __post_init__(self):
        arcs = tuple(tuple(sorted(a)) for a in self.arcs)
        if len(arcs) != len(self.twists):
            raise ValueError("twists must align with arcs")
        order = sorted(range(len(arcs)), key=lambda k: arcs[k])
        arcs = tuple(arcs[k] for k in order)
        twists = tuple(int(self.twists[k]) for k in order)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "twists", twists)
        sites = sorted(x for a in arcs for x in a)
        if sites != list(range(1, 2 * len(arcs) + 1)):
            raise ValueError(f"arcs {arcs} do not pair up 1..{2 * len(arcs)}")
        if any(s not in (0, 1) for s in twists):
            raise ValueError("twists must be 0 or 1")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]], twisted: Iterable[Sequence[int]] = ()) -> "TwistedChordDatum":
        """Build from a list of arcs and the subset of arcs carrying a twist."""
        pairs = [tuple(sorted(p)) for p in pairs]
        tw = {tuple(sorted(p)) for p in twisted}
        if not tw <= set(pairs):
            raise ValueError("twisted arcs must be arcs")
        return cls(tuple(pairs), tuple(int(p in tw) for p in pairs))

    @property
    def rank(self) -> int:
        return len(self.arcs)

    @property
    def size(self) -> int:
        return 2 * len(self.arcs)

    @cached_property
    def _site_table(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        n = self.size
        partner = [0] * (n + 1)
        twist = [0] * (n + 1)
        arc_index = [0] * (n + 1)
        for k, ((a, b), s) in enumerate(zip(self.arcs, self.twists)):
            partner[a], partner[b] = b, a
            twist[a] = twist[b] = s
            arc_index[a] = arc_index[b] = k
        return tuple(partner), tuple(twist), tuple(arc_index)

    def partner(self, i: int) -> int:
        return self._site_table[0][i]

    def site_twist(self, i: int) -> int:
        """Twist of the arc containing site ``i``."""
        return self._site_table[1][i]

    def arc_index(self, i: int) -> int:
        """Position in ``arcs`` of the arc containing site ``i``."""
        return self._site_table[2][i]

    def arc_of(self, i: int) -> Arc:
        return self.arcs[self.arc_index(i)]

    def twist(self, arc: Sequence[int]) -> int:
        arc = tuple(sorted(arc))
        try:
            return self.twists[self.arcs.index(arc)]
        except ValueError:
            raise UnknownArc(f"{arc} is not an arc") from None

    @property
    def is_orientable(self) -> bool:
        return not any(self.twists)

    def __repr__(self) -> str:
        body = ", ".join(f"{a}{'~' if s else ''}" for a, s in zip(self.arcs, self.twists))
        return f"TCD[{body}]"


EMPTY = TwistedChordDatum((), ())
MOB = TwistedChordDatum(((1, 2),), (1,))
ANN = TwistedChordDatum(((1, 2),), (0,))
TOR = TwistedChordDatum(((1, 3), (2, 4)), (0, 0))


# ---------------------------------------------------------------- enumeration

def _pair_partitions(sites: list[int]):
    if not sites:
        yield []
        return
    first, rest = sites[0], sites[1:]
    for k, other in enumerate(rest):
        for tail in _pair_partitions(rest[:k] + rest[k + 1:]):
            yield [(first, other)] + tail


def enumerate_tcd(n: int, orientable: bool = False, cap: int = ENUMERATION_CAP) -> list[TwistedChordDatum]:
    """All rank-``n`` data, pair partitions first, then twists in binary order."""
    if n < 0:
        raise ValueError("rank must be non-negative")
    if n > cap:
        raise CapExceeded(f"rank {n} exceeds the enumeration cap {cap}")
    out = []
    for arcs in _pair_partitions(list(range(1, 2 * n + 1))):
        twist_space = [(0,) * n] if orientable else itertools.product((0, 1), repeat=n)
        for tw in twist_space:
            out.append(TwistedChordDatum(tuple(arcs), tuple(tw)))
    return out


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


# ---------------------------------------------------------------- permutations

def _check_perm(sigma: Sequence[int], n: int) -> tuple[int, ...]:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise BadPermutation(f"{sigma} is not a permutation of 1..{n}")
    return sigma


def permute(sigma: Sequence[int], t: TwistedChordDatum) -> TwistedChordDatum:
    """Apply a permutation in one-line notation (``sigma[k-1]`` is the image of ``k``)."""
    sigma = _check_perm(sigma, t.size)
    return TwistedChordDatum(tuple((sigma[a - 1], sigma[b - 1]) for a, b in t.arcs), t.twists)


def omega(n: int) -> tuple[int, ...]:
    """The order-reversing permutation of ``1..2n``."""
    return tuple(2 * n + 1 - k for k in range(1, 2 * n + 1))


def cycle_c(n: int) -> tuple[int, ...]:
    """The cycle (2n 2n-1 ... 2 1), i.e. k -> k-1 and 1 -> 2n."""
    if n == 0:
        return ()
    return (2 * n,) + tuple(range(1, 2 * n))


def cycle_to_oneline(cycle: Sequence[int], size: int) -> tuple[int, ...]:
    """One-line form of the cycle (c0 c1 ... ck), meaning c0 -> c1 -> ... -> ck -> c0."""
    img = list(range(1, size + 1))
    for a, b in zip(cycle, tuple(cycle[1:]) + (cycle[0],)):
        img[a - 1] = b
    return tuple(img)


def compose(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """``sigma o tau`` in one-line notation."""
    return tuple(sigma[t - 1] for t in tau)


def invert(sigma: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(sigma)
    for k, s in enumerate(sigma, start=1):
        inv[s - 1] = k
    return tuple(inv)


def star(t: TwistedChordDatum) -> TwistedChordDatum:
    return permute(omega(t.rank), t)


# ---------------------------------------------------------------- chord slides

def _check_site(t: TwistedChordDatum, i: int, eps: int) -> None:
    if eps not in (1, -1):
        raise SiteOutOfRange(f"direction must be +1 or -1, got {eps}")
    if not 1 <= i <= t.size:
        raise SiteOutOfRange(f"site {i} outside 1..{t.size}")


def is_admissible(t: TwistedChordDatum, i: int, eps: int) -> bool:
    _check_site(t, i, eps)
    j = i + eps
    return 1 <= j <= t.size and t.partner(i) != j


def admissible_pairs(t: TwistedChordDatum) -> list[Move]:
    return [(i, e) for i in range(1, t.size + 1) for e in (1, -1) if is_admissible(t, i, e)]


def slide_case(t: TwistedChordDatum, i: int, eps: int) -> int:
    """Which of the four explicit cycles the slide (i, eps) uses (1..4)."""
    q_end = i + eps
    other = t.partner(q_end)
    at_min = q_end < other
    s = t.site_twist(q_end)
    # flip = whether the slid site lands on the near side of the far end
    if at_min:
        return 1 if (eps == 1) == (s == 0) else 2
    return 3 if (eps == 1) == (s == 0) else 4


def slide_cycle(t: TwistedChordDatum, i: int, eps: int) -> tuple[int, ...]:
    """The cycle realising the slide, written as a tuple (c0 c1 ... ck)."""
    if not is_admissible(t, i, eps):
        raise NotAdmissible(f"({i}, {eps}) is not admissible in {t}")
    q_end = i + eps
    lo, hi = sorted((q_end, t.partner(q_end)))
    case = slide_case(t, i, eps)

    def run(a, b):
        step = 1 if b >= a else -1
        return tuple(range(a, b + step, step))

    if case == 1:
        return run(hi, i)
    if case == 2:
        return run(hi - 1, i)
    if case == 3:
        return run(lo + 1, i)
    return run(lo, i)


def slide_permutation(t: TwistedChordDatum, i: int, eps: int) -> tuple[int, ...]:
    """One-line form of the permutation of an admissible slide."""
    return cycle_to_oneline(slide_cycle(t, i, eps), t.size)


def slide_permutation_by_placement(t: TwistedChordDatum, i: int, eps: int) -> tuple[int, ...]:
    """The same permutation, characterised as "order preserving off ``i``".

    Site ``i`` is removed and re-inserted next to the far end ``i'`` of the
    arc it slides over, on the side given by ``eps * (-1)**s(q)``.
    """
    if not is_admissible(t, i, eps):
        raise NotAdmissible(f"({i}, {eps}) is not admissible in {t}")
    q_end = i + eps
    far = t.partner(q_end)
    side = eps * (-1) ** t.site_twist(q_end)
    seq = [k for k in range(1, t.size + 1) if k != i]
    at = seq.index(far)
    seq.insert(at + 1 if side == 1 else at, i)
    sigma = [0] * t.size
    for pos, k in enumerate(seq, start=1):
        sigma[k - 1] = pos
    return tuple(sigma)


def _apply_slide(t: TwistedChordDatum, i: int, eps: int, sigma: Sequence[int]) -> TwistedChordDatum:
    p_idx = t.arc_index(i)
    s_q = t.site_twist(i + eps)
    twists = list(t.twists)
    twists[p_idx] ^= s_q
    return TwistedChordDatum(tuple((sigma[a - 1], sigma[b - 1]) for a, b in t.arcs), tuple(twists))


def chord_slide_strict(t: TwistedChordDatum, i: int, eps: int) -> TwistedChordDatum:
    """Slide site ``i`` over site ``i + eps``; raises on non-admissible pairs."""
    return _apply_slide(t, i, eps, slide_permutation(t, i, eps))


def chord_slide(t: TwistedChordDatum, i: int, eps: int) -> TwistedChordDatum:
    """Slide site ``i`` up (``eps=+1``) or down (``eps=-1``).

    Non-admissible pairs leave the datum unchanged.

    >>> chord_slide(TwistedChordDatum(((1, 2), (3, 4)), (0, 0)), 2, 1)
    TCD[(1, 4), (2, 3)]
    """
    if not is_admissible(t, i, eps):
        return t
    return chord_slide_strict(t, i, eps)


def slide_with_permutation(t: TwistedChordDatum, i: int, eps: int) -> tuple[TwistedChordDatum, tuple[int, ...]]:
    """Like :func:`chord_slide` but also returns the permutation (identity if inert)."""
    if not is_admissible(t, i, eps):
        return t, tuple(range(1, t.size + 1))
    sigma = slide_permutation(t, i, eps)
    return _apply_slide(t, i, eps, sigma), sigma


def inverse_slide(t: TwistedChordDatum, i: int, eps: int) -> Move:
    """The slide undoing (i, eps)."""
    if not is_admissible(t, i, eps):
        raise NotAdmissible(f"({i}, {eps}) is not admissible in {t}")
    sigma = slide_permutation(t, i, eps)
    s_q = t.site_twist(i + eps)
    return sigma[i - 1], (-eps if s_q == 0 else eps)


def replay(t: TwistedChordDatum, moves: Iterable[Move]) -> TwistedChordDatum:
    for i, e in moves:
        t = chord_slide(t, i, e)
    return t


def slide_orbit(t: TwistedChordDatum) -> set[TwistedChordDatum]:
    """Every datum reachable from ``t`` by chord slides."""
    seen = {t}
    todo = deque([t])
    while todo:
        x = todo.popleft()
        for i, e in admissible_pairs(x):
            y = chord_slide_strict(x, i, e)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


# ---------------------------------------------------------------- boundary graph

def boundary_graph(t: TwistedChordDatum, closed: bool = False) -> OrderedGraph:
    """Vertices (i, -1) < (i, +1) < (i+1, -1) < ...; see the module notes."""
    n = t.size
    vs = [(i, e) for i in range(1, n + 1) for e in (-1, 1)]
    es = [((i, 1), (i + 1, -1)) for i in range(1, n)]
    for (a, b), s in zip(t.arcs, t.twists):
        if s == 0:
            es += [((a, 1), (b, -1)), ((a, -1), (b, 1))]
        else:
            es += [((a, 1), (b, 1)), ((a, -1), (b, -1))]
    if closed:
        vs = [(0, 1)] + vs + [(n + 1, -1)]
        es += [((0, 1), (1, -1)), ((n, 1), (n + 1, -1))]
    return OrderedGraph(vs, es)


def boundary_count(t: TwistedChordDatum) -> int:
    """Number of components of the boundary graph (computed on site indices)."""
    n = t.size
    if n == 0:
        return 0
    # vertex (i, e) -> 2(i-1) + (e+1)//2
    pairs = [(2 * i - 1, 2 * i) for i in range(1, n)]
    for (a, b), s in zip(t.arcs, t.twists):
        if s == 0:
            pairs += [(2 * a - 1, 2 * b - 2), (2 * a - 2, 2 * b - 1)]
        else:
            pairs += [(2 * a - 1, 2 * b - 1), (2 * a - 2, 2 * b - 2)]
    return len(set(kernels.component_labels(2 * n, pairs)))


def boundary_walk(t: TwistedChordDatum) -> list[tuple[int, int]]:
    """The boundary path from (1,-1) to (2N,+1), as the list of band landings.

    Returns the vertices ``(i_j, e_j)`` reached by the band edges other than
    the last one, i.e. the sequence used by boundary slides.
    """
    if t.rank == 0:
        return []
    g = boundary_graph(t)
    band = {}
    for (a, b), s in zip(t.arcs, t.twists):
        for ea in (1, -1):
            eb = -ea if s == 0 else ea
            band[(a, ea)] = (b, eb)
            band[(b, eb)] = (a, ea)
    cur = band[(1, -1)]
    out = []
    while cur != (t.size, 1):
        out.append(cur)
        i, e = cur
        nxt = (i + e, -e)
        if nxt not in g:
            raise ValueError("boundary walk left the graph")
        cur = band[nxt]
    return out


# ---------------------------------------------------------------- juxtaposition

def insert(t2: TwistedChordDatum, d: int, t1: TwistedChordDatum) -> TwistedChordDatum:
    """Insert ``t1`` into ``t2`` at height ``d`` (between sites d and d+1 of t2)."""
    if not 0 <= d <= t2.size:
        raise HeightOutOfRange(f"height {d} outside 0..{t2.size}")
    w = t1.size

    def o(k):
        return k if k <= d else k + w

    arcs = [(a + d, b + d) for a, b in t1.arcs] + [(o(a), o(b)) for a, b in t2.arcs]
    return TwistedChordDatum(tuple(arcs), t1.twists + t2.twists)


def juxtapose(t2: TwistedChordDatum, t1: TwistedChordDatum) -> TwistedChordDatum:
    """``t2 # t1``: ``t1`` at the bottom, ``t2`` stacked on top."""
    return insert(t2, 0, t1)


def juxtapose_all(*factors: TwistedChordDatum) -> TwistedChordDatum:
    """``factors[0] # factors[1] # ...`` (the last factor ends up at the bottom)."""
    out = EMPTY
    for f in factors:
        out = juxtapose(out, f)
    return out


def extract_block(t: TwistedChordDatum, d: int, width: int) -> tuple[TwistedChordDatum, TwistedChordDatum] | None:
    """Split ``t`` as ``outer #_d inner`` with ``inner`` of ``width`` sites.

    Returns ``(outer, inner)`` or ``None`` when some arc leaves the block.
    """
    lo, hi = d + 1, d + width
    inner, outer = [], []
    for (a, b), s in zip(t.arcs, t.twists):
        ina, inb = lo <= a <= hi, lo <= b <= hi
        if ina != inb:
            return None
        (inner if ina else outer).append(((a, b), s))

    def back(k):
        return k if k <= d else k - width

    t1 = TwistedChordDatum(tuple((a - d, b - d) for (a, b), _ in inner), tuple(s for _, s in inner))
    t2 = TwistedChordDatum(tuple((back(a), back(b)) for (a, b), _ in outer), tuple(s for _, s in outer))
    return t2, t1


# ---------------------------------------------------------------- macro moves

def _run(t: TwistedChordDatum, moves_fn):
    """Drive a generator of moves that may inspect the running state."""
    trace: list[Move] = []
    state = {"t": t, "tau": tuple(range(1, t.size + 1))}
    gen = moves_fn(state)
    for i, e in gen:
        t2, sigma = slide_with_permutation(state["t"], i, e)
        state["t"] = t2
        state["tau"] = compose(sigma, state["tau"])
        trace.append((i, e))
    return state["t"], trace


def evacuation_moves(t: TwistedChordDatum, direction: int, d1: int, d2: int) -> tuple[TwistedChordDatum, list[Move]]:
    """Evacuate the sites ``d1..d2`` upward (direction +1) or downward (-1)."""
    if direction not in (1, -1):
        raise IndexOutOfRange("direction must be +1 or -1")
    if not (1 <= d1 <= d2 <= t.size):
        raise IndexOutOfRange(f"need 1 <= d1 <= d2 <= {t.size}, got {d1}, {d2}")

    def up(state):
        yield (d2, 1)
        for d in range(d2, d1, -1):
            yield (state["tau"][d - 2], 1)

    def down(state):
        yield (d1, -1)
        for d in range(d1, d2):
            yield (state["tau"][d], -1)

    return _run(t, up if direction == 1 else down)


def evacuation(t: TwistedChordDatum, direction: int, d1: int, d2: int) -> TwistedChordDatum:
    return evacuation_moves(t, direction, d1, d2)[0]


def boundary_slide_moves(t_combined: TwistedChordDatum, direction: int, d: int,
                         inner: TwistedChordDatum) -> tuple[TwistedChordDatum, list[Move]]:
    """Slide one site across an inserted block.

    Upward (+1): the block sits at sites ``d+1..d+2N1`` and site ``d`` below
    it travels to just above it, so the insertion height drops by one.
    Downward (-1): site ``d+2N1+1`` travels to just below the block, so the
    insertion height rises by one.
    """
    w = inner.size
    split = extract_block(t_combined, d, w)
    if split is None or split[1] != inner:
        raise NotAnInsertion(f"{t_combined} is not an insertion of {inner} at height {d}")
    outer = split[0]
    if direction == 1:
        if not 1 <= d <= outer.size:
            raise IndexOutOfRange(f"upward boundary slide needs 1 <= d <= {outer.size}")
    elif direction == -1:
        if not 0 <= d < outer.size:
            raise IndexOutOfRange(f"downward boundary slide needs 0 <= d < {outer.size}")
    else:
        raise IndexOutOfRange("direction must be +1 or -1")
    if w == 0:
        # an empty block has nothing to cross
        return t_combined, []
    walk = boundary_walk(inner)
    if direction == 1:
        # the moving site sits at d + i + (e-1)/2 when it lies on side e of block site i
        moves = [(d, 1)] + [(d + i + (e - 1) // 2, e) for i, e in walk]
    else:
        moves = [(d + w + 1, -1)] + [(d + i + (e + 1) // 2, -e) for i, e in reversed(walk)]
    trace = []
    for i, e in moves:
        if not is_admissible(t_combined, i, e):
            raise AssertionError(f"boundary slide hit an inert move {(i, e)}")
        t_combined = chord_slide_strict(t_combined, i, e)
        trace.append((i, e))
    return t_combined, trace


def boundary_slide_seq(t_combined: TwistedChordDatum, direction: int, d: int,
                       inner: TwistedChordDatum) -> TwistedChordDatum:
    return boundary_slide_moves(t_combined, direction, d, inner)[0]


# ---------------------------------------------------------------- intersection matrix

@dataclass(frozen=True)
class IntersectionMatrix:
    arc_order: tuple[Arc, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.arc_order)

    def row_masks(self) -> list[int]:
        return [sum(bit << k for k, bit in enumerate(row)) for row in self.entries]

    def direct_sum(self, other: "IntersectionMatrix") -> tuple[tuple[int, ...], ...]:
        n, m = self.size, other.size
        rows = [tuple(r) + (0,) * m for r in self.entries]
        rows += [(0,) * n + tuple(r) for r in other.entries]
        return tuple(rows)


def arcs_cross(p: Arc, q: Arc) -> bool:
    (a, b), (c, d) = p, q
    return a < c < b < d or c < a < d < b


def intersection_matrix(t: TwistedChordDatum) -> IntersectionMatrix:
    order = t.arcs  # already sorted by lower end, i.e. bottom-to-top first appearance
    rows = []
    for k, p in enumerate(order):
        rows.append(tuple(t.twists[k] if k == l else int(arcs_cross(p, q)) for l, q in enumerate(order)))
    return IntersectionMatrix(order, tuple(rows))


def gf2_nullity(m: IntersectionMatrix) -> int:
    return m.size - kernels.gf2_rank(m.row_masks())


# ---------------------------------------------------------------- classification

@dataclass(frozen=True, order=True)
class SurfaceType:
    b: int
    g: int
    t: int

    @property
    def rank(self) -> int:
        return 2 * self.g + self.t + self.b

    def as_dict(self) -> dict:
        return {"b": self.b, "g": self.g, "t": self.t}


def classify_type(t: TwistedChordDatum) -> SurfaceType:
    n = t.rank
    b = gf2_nullity(intersection_matrix(t))
    if t.is_orientable:
        if (n - b) % 2:
            raise ParityViolation(f"orientable datum {t} with N - b odd")
        return SurfaceType(b, (n - b) // 2, 0)
    tt = 1 if (n - b) % 2 else 2
    return SurfaceType(b, (n - b - tt) // 2, tt)


def caravan(st: SurfaceType) -> TwistedChordDatum:
    """The normal form: Mob blocks above Tor blocks, with Ann blocks at the bottom."""
    return juxtapose_all(*([MOB] * st.t + [TOR] * st.g + [ANN] * st.b))


def width(t: TwistedChordDatum, p: Sequence[int]) -> int:
    p = tuple(sorted(p))
    if p not in t.arcs:
        raise UnknownArc(f"{p} is not an arc of {t}")
    return p[1] - p[0] - 1


def is_in_tc_star(t: TwistedChordDatum) -> bool:
    """One boundary component; cross-checked against invertibility of IM."""
    by_graph = component_count(boundary_graph(t)) == 1 if t.rank else True
    by_matrix = gf2_nullity(intersection_matrix(t)) == 0
    if by_graph != by_matrix:
        raise AssertionError(f"boundary graph and intersection matrix disagree on {t}")
    return by_graph


# ---------------------------------------------------------------- normalisation

class _Slider:
    """Mutable helper that applies strict slides and records them."""

    def __init__(self, t: TwistedChordDatum):
        self.t = t
        self.trace: list[Move] = []

    def slide(self, i: int, e: int) -> None:
        self.t = chord_slide_strict(self.t, i, e)
        self.trace.append((i, e))

    def block_up(self, d: int, inner: TwistedChordDatum, top: int) -> int:
        """Move the block at height ``d`` up until it ends at site ``top``."""
        while d + inner.size < top:
            # the window above the block is all that the slides touch
            self.t, moves = boundary_slide_moves(self.t, -1, d, inner)
            self.trace += moves
            d += 1
        return d


FIG9_MOVES: tuple[Move, ...] = ((2, 1), (5, -1), (2, 1), (4, -1))


def _orientable_window(sl: _Slider, lo: int, hi: int) -> None:
    """Normalise the orientable window of sites lo..hi to Tor^g # Ann^b.

    Ann blocks are peeled off at the bottom of the window, Tor blocks are
    assembled and then moved to the top of the window.
    """
    while hi > lo:
        t = sl.t
        j = t.partner(lo)
        if j == lo + 1:
            lo += 2
            continue
        inside = range(lo + 1, j)
        crossing = [k for k in inside if not (lo < t.partner(k) < j)]
        if not crossing:
            inner_t = extract_block(t, lo, j - lo - 1)[1]
            sl.t, moves = boundary_slide_moves(t, -1, lo, inner_t)
            sl.trace += moves
            lo += 2
            continue
        # rotate the interior of the bottom arc until the first crossing site is next to lo
        for _ in range(crossing[0] - (lo + 1)):
            sl.slide(lo + 1, -1)
        b_top = sl.t.partner(lo + 1)
        # rotate the interior of the second arc until the top of the first arc is at lo + 2
        while sl.t.partner(lo) != lo + 2:
            sl.slide(lo + 2, -1)
        b_top = sl.t.partner(lo + 1)
        x = lo
        while b_top != x + 3:
            sl.slide(x + 3, -1)
            x += 1
            b_top = sl.t.partner(x + 1)
        sl.block_up(x - 1, TOR, hi)
        hi -= 4


def caravan_normalize_trace(t: TwistedChordDatum) -> tuple[SurfaceType, list[Move], TwistedChordDatum]:
    sl = _Slider(t)
    top = t.size
    # twisted arcs: evacuate, then park the resulting Mob block at the top of the window
    while True:
        cur = sl.t
        twisted = [a for a, s in zip(cur.arcs, cur.twists) if s and a[1] <= top]
        if not twisted:
            break
        i, j = max(twisted, key=lambda a: a[1])
        if j - i > 1:
            sl.t, moves = evacuation_moves(cur, 1, i + 1, j - 1)
            sl.trace += moves
        sl.block_up(j - 2, MOB, top)
        top -= 2
    n_mob = (t.size - top) // 2
    _orientable_window(sl, 1, top)
    # three Mobius blocks become Mob # Tor
    base = top
    while n_mob >= 3:
        for i, e in FIG9_MOVES:
            sl.slide(base + i, e)
        sl.t, moves = boundary_slide_moves(sl.t, 1, base + 1, TOR)
        sl.trace += moves
        base += 4
        n_mob -= 2
    st = classify_type(t)
    if sl.t != caravan(st):
        raise AssertionError(f"normalisation of {t} ended at {sl.t}, expected {caravan(st)}")
    return st, sl.trace, sl.t


def caravan_normalize(t: TwistedChordDatum) -> tuple[SurfaceType, list[Move]]:
    """Type of ``t`` together with chord slides carrying ``t`` to its caravan."""
    st, trace, _ = caravan_normalize_trace(t)
    return st, trace

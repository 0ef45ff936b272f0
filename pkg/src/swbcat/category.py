"""Morphisms of the square-with-bands category.

A morphism ``n -> m`` is a finite linear combination of handle-slide classes
of SWB data of type ``(n, m)`` with coefficients in ``Z[alpha, beta, gamma]``.
Closed curves are evaluated on the fly: an internal separating loop becomes a
factor ``alpha``, a twisted loop ``beta`` and any other loop ``gamma``.
Stacking two diagrams multiplies by ``alpha`` per closed loop formed in the
glued layer.

Terms are stored under a canonical key: the serialisation of the datum after
its frame has been slid to the caravan normal form and the curves have been
isotopy-reduced.  Terms whose keys differ are merged when a bounded search
proves them handle-slide equivalent; a larger budget can only merge more.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import chord, swb
from .errors import ArityMismatch, TypeMismatch
from .swb import SWBDatum

EQUAL = "EQUAL"
DIFFERENT = "DIFFERENT"
UNDECIDED = "UNDECIDED"

DEFAULT_BUDGET = 4


# ---------------------------------------------------------------- scalars

Monomial = tuple[int, int, int]
_NAMES = ("α", "β", "γ")


class Scalar:
    """A polynomial in commuting ``alpha, beta, gamma`` with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | int = 0):
        if isinstance(terms, int):
            terms = {(0, 0, 0): terms}
        self.terms = {tuple(k): int(v) for k, v in terms.items() if v}

    @classmethod
    def monomial(cls, a: int = 0, b: int = 0, c: int = 0, coeff: int = 1) -> "Scalar":
        return cls({(a, b, c): coeff})

    @staticmethod
    def _coerce(x) -> "Scalar":
        return x if isinstance(x, Scalar) else Scalar(int(x))

    def __add__(self, other) -> "Scalar":
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Scalar(out)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "Scalar":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Scalar":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Scalar":
        other = self._coerce(other)
        out: dict[Monomial, int] = {}
        for (a1, b1, c1), v1 in self.terms.items():
            for (a2, b2, c2), v2 in other.terms.items():
                k = (a1 + a2, b1 + b2, c1 + c2)
                out[k] = out.get(k, 0) + v1 * v2
        return Scalar(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Scalar":
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        out = Scalar(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def evaluate(self, alpha, beta, gamma):
        """Specialise the indeterminates in any commutative ring."""
        total = 0
        for (a, b, c), v in self.terms.items():
            total = total + v * alpha ** a * beta ** b * gamma ** c
        return total

    def as_list(self) -> list[list[int]]:
        """``[[a, b, c, coeff], ...]`` sorted by exponent."""
        return [[a, b, c, v] for (a, b, c), v in sorted(self.terms.items())]

    @classmethod
    def from_list(cls, rows: Iterable[Iterable[int]]) -> "Scalar":
        out = Scalar(0)
        for a, b, c, v in rows:
            out = out + cls.monomial(a, b, c, v)
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b, c), v in sorted(self.terms.items(), reverse=True):
            mono = "".join(n + (f"^{e}" if e > 1 else "") for n, e in zip(_NAMES, (a, b, c)) if e)
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


ALPHA = Scalar.monomial(1, 0, 0)
BETA = Scalar.monomial(0, 1, 0)
GAMMA = Scalar.monomial(0, 0, 1)
ONE = Scalar(1)


# ---------------------------------------------------------------- canonical representatives

@dataclass(frozen=True)
class CanonicalRep:
    """A term representative.

    ``datum`` is the caravan form whose serialisation ``key`` indexes the
    term; ``source`` is the isotopy-reduced diagram the term was built from,
    kept because searches started there are often shorter.
    """

    datum: SWBDatum
    key: bytes
    source: SWBDatum


_CANON: dict[bytes, CanonicalRep] = {}
_SEARCH: dict[tuple[bytes, bytes, int], swb.SearchResult] = {}


def canonicalize(th: SWBDatum) -> CanonicalRep:
    """Slide the frame to its caravan form and isotopy-reduce.

    ``th`` must be free of internal components.
    """
    k0 = swb.canonical_key(th)
    hit = _CANON.get(k0)
    if hit is not None:
        return hit
    _, trace = chord.caravan_normalize(th.frame.tcd)
    source = swb.isotopy_reduce(th)
    rep = swb.slide_moves(source, trace)
    out = CanonicalRep(rep, swb.canonical_key(rep), source)
    _CANON[k0] = out
    return out


def normalize_homogeneous(th: SWBDatum) -> tuple[int, int, int, CanonicalRep]:
    """``th = alpha^a beta^b gamma^c th'`` with ``th'`` free of closed curves."""
    stripped, removed = swb.strip_internal(th)
    a = sum(1 for tw, sep in removed if sep)
    b = sum(1 for tw, sep in removed if tw and not sep)
    c = sum(1 for tw, sep in removed if not tw and not sep)
    return a, b, c, canonicalize(stripped)


def _search(x: SWBDatum, y: SWBDatum, budget: int) -> swb.SearchResult:
    kx, ky = swb.canonical_key(x), swb.canonical_key(y)
    k = (min(kx, ky), max(kx, ky), budget)
    hit = _SEARCH.get(k)
    if hit is None:
        hit = swb.hs_equivalent(x, y, budget)
        _SEARCH[k] = hit
    return hit


def compare_reps(r1: CanonicalRep, r2: CanonicalRep, budget: int) -> swb.SearchResult:
    """Search between the source diagrams, then between the caravan forms."""
    if r1.key == r2.key:
        return swb.SearchResult(swb.EQUIVALENT, 0, 1, (), ())
    first = _search(r1.source, r2.source, budget)
    if first.outcome != swb.UNDECIDED:
        return first
    return _search(r1.datum, r2.datum, budget)


def _compare(r1: CanonicalRep, r2: CanonicalRep, budget: int) -> str:
    return compare_reps(r1, r2, budget).outcome


def clear_caches() -> None:
    _CANON.clear()
    _SEARCH.clear()


# ---------------------------------------------------------------- morphisms

class Morphism:
    """A linear combination of SWB classes of one type ``(domain, codomain)``."""

    __slots__ = ("domain", "codomain", "budget", "_terms", "unresolved")

    def __init__(self, domain: int, codomain: int, terms: Iterable[tuple[SWBDatum, Scalar]] = (),
                 budget: int = DEFAULT_BUDGET):
        self.domain = domain
        self.codomain = codomain
        self.budget = budget
        self._terms: dict[bytes, tuple[CanonicalRep, Scalar]] = {}
        self.unresolved: set[frozenset] = set()
        for th, coeff in terms:
            self._add_datum(th, Scalar._coerce(coeff))

    # -- construction
    def _add_datum(self, th: SWBDatum, coeff: Scalar) -> None:
        if th.type != (self.domain, self.codomain):
            raise TypeMismatch(f"datum of type {th.type} in a morphism {self.domain} -> {self.codomain}")
        a, b, c, rep = normalize_homogeneous(th)
        self._add_rep(rep, coeff * Scalar.monomial(a, b, c))

    def _add_rep(self, rep: CanonicalRep, coeff: Scalar) -> None:
        if not coeff:
            return
        if rep.key in self._terms:
            self._bump(rep.key, coeff)
            return
        for key, (other, _) in list(self._terms.items()):
            outcome = _compare(rep, other, self.budget)
            if outcome == swb.EQUIVALENT:
                self._bump(key, coeff)
                return
            if outcome == swb.UNDECIDED:
                self.unresolved.add(frozenset((key, rep.key)))
        self._terms[rep.key] = (rep, coeff)

    def _bump(self, key: bytes, coeff: Scalar) -> None:
        rep, old = self._terms[key]
        new = old + coeff
        if new:
            self._terms[key] = (rep, new)
        else:
            del self._terms[key]

    @classmethod
    def homogeneous(cls, th: SWBDatum, coeff=1, budget: int = DEFAULT_BUDGET) -> "Morphism":
        n, m = th.type
        return cls(n, m, [(th, coeff)], budget)

    # -- access
    def terms(self) -> list[tuple[SWBDatum, Scalar]]:
        return [(rep.datum, c) for rep, c in self._terms.values()]

    def keyed_terms(self) -> dict[bytes, tuple[CanonicalRep, Scalar]]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, th: SWBDatum) -> Scalar:
        """Coefficient of the class of ``th`` (which must be free of closed curves)."""
        rep = canonicalize(th)
        if rep.key in self._terms:
            return self._terms[rep.key][1]
        for other, c in self._terms.values():
            if _compare(rep, other, self.budget) == swb.EQUIVALENT:
                return c
        return Scalar(0)

    # -- linear structure
    def __add__(self, other: "Morphism") -> "Morphism":
        self._check_same(other)
        out = self.copy(max(self.budget, other.budget))
        for rep, c in other._terms.values():
            out._add_rep(rep, c)
        return out

    def __neg__(self) -> "Morphism":
        return self.scale(Scalar(-1))

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def scale(self, s) -> "Morphism":
        s = Scalar._coerce(s)
        out = Morphism(self.domain, self.codomain, budget=self.budget)
        for rep, c in self._terms.values():
            out._add_rep(rep, c * s)
        return out

    def __rmul__(self, s) -> "Morphism":
        return self.scale(s)

    def copy(self, budget: int | None = None) -> "Morphism":
        out = Morphism(self.domain, self.codomain, budget=self.budget if budget is None else budget)
        for rep, c in self._terms.values():
            out._add_rep(rep, c)
        return out

    def _check_same(self, other: "Morphism") -> None:
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise TypeMismatch(f"{self.domain}->{self.codomain} versus {other.domain}->{other.codomain}")

    def __repr__(self) -> str:
        body = " + ".join(f"({c})·{rep.datum.frame.tcd!r}" for rep, c in self._terms.values()) or "0"
        return f"Morphism({self.domain}->{self.codomain}: {body})"


def _map_terms(f: Morphism, fn, domain: int, codomain: int) -> Morphism:
    out = Morphism(domain, codomain, budget=f.budget)
    for rep, c in f._terms.values():
        for th, s in fn(rep.source):
            out._add_datum(th, c * s)
    return out


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g ∘ f``: first ``f``, then ``g``."""
    if f.codomain != g.domain:
        raise TypeMismatch(f"cannot compose {g.domain}->{g.codomain} after {f.domain}->{f.codomain}")
    out = Morphism(f.domain, g.codomain, budget=max(f.budget, g.budget))
    for rf, cf in f._terms.values():
        for rg, cg in g._terms.values():
            th, loops = swb.juxtapose(rg.source, rf.source)
            out._add_datum(th, cf * cg * ALPHA ** loops)
    return out


def compose_all(*fs: Morphism) -> Morphism:
    """``fs[0] ∘ fs[1] ∘ ...``."""
    out = fs[-1]
    for g in reversed(fs[:-1]):
        out = compose(g, out)
    return out


def _pad(th: SWBDatum, left: int, right: int) -> SWBDatum:
    for _ in range(left):
        th = swb.insert_left(th)
    for _ in range(right):
        th = swb.insert_right(th)
    return th


def pad(f: Morphism, left: int = 0, right: int = 0) -> Morphism:
    """``id_left ⊗ f ⊗ id_right``."""
    return _map_terms(f, lambda th: [(_pad(th, left, right), ONE)],
                      f.domain + left + right, f.codomain + left + right)


def tensor(f: Morphism, g: Morphism) -> Morphism:
    """``f ⊗ g = (f ⊗ id) ∘ (id ⊗ g)``."""
    return compose(pad(f, right=g.codomain), pad(g, left=f.domain))


def tensor_all(*fs: Morphism) -> Morphism:
    out = fs[0]
    for g in fs[1:]:
        out = tensor(out, g)
    return out


def dual_star(f: Morphism) -> Morphism:
    """The vertical reflection (contravariant, tensor preserving)."""
    return _map_terms(f, lambda th: [(swb.star(th), ONE)], f.codomain, f.domain)


# ---------------------------------------------------------------- named morphisms

def identity(n: int, budget: int = DEFAULT_BUDGET) -> Morphism:
    return Morphism.homogeneous(swb.identity_datum(n), budget=budget)


def ev(n: int, budget: int = DEFAULT_BUDGET) -> Morphism:
    """Evaluation ``2n -> 0``: n nested caps."""
    return Morphism.homogeneous(swb.caps(n), budget=budget)


def coev(n: int, budget: int = DEFAULT_BUDGET) -> Morphism:
    """Coevaluation ``0 -> 2n``: n nested cups."""
    return Morphism.homogeneous(swb.cups(n), budget=budget)


def cup(budget: int = DEFAULT_BUDGET) -> Morphism:
    return Morphism.homogeneous(swb.cup_datum(), budget=budget)


def cap(budget: int = DEFAULT_BUDGET) -> Morphism:
    return Morphism.homogeneous(swb.cap_datum(), budget=budget)


def torus(l: int, m: int, budget: int = DEFAULT_BUDGET) -> Morphism:
    return Morphism.homogeneous(swb.torus_generator(l, m), budget=budget)


def mobius(n: int, budget: int = DEFAULT_BUDGET) -> Morphism:
    return Morphism.homogeneous(swb.mobius_generator(n), budget=budget)


def dagger(f: Morphism) -> Morphism:
    """The rigid dual ``(ev_m ⊗ id_n) ∘ (id_m ⊗ f ⊗ id_n) ∘ (id_m ⊗ coev_n)`` for ``f: n -> m``."""
    n, m = f.domain, f.codomain
    b = f.budget
    return compose_all(pad(ev(m, b), right=n), pad(f, left=m, right=n), pad(coev(n, b), left=m))


def functor_R(f: Morphism) -> Morphism:
    """``R = (dagger)*``: covariant and tensor reversing."""
    return dual_star(dagger(f))


# ---------------------------------------------------------------- equality

def equals(f: Morphism, g: Morphism, budget: int = DEFAULT_BUDGET) -> str:
    """EQUAL, DIFFERENT or UNDECIDED within the given search budget."""
    f._check_same(g)
    diff = Morphism(f.domain, f.codomain, budget=budget)
    for rep, c in f._terms.values():
        diff._add_rep(rep, c)
    for rep, c in g._terms.values():
        diff._add_rep(rep, -c)
    if diff.is_zero():
        return EQUAL
    live = set(diff._terms)
    if any(pair <= live for pair in diff.unresolved):
        return UNDECIDED
    return DIFFERENT


def search_budget_used(f: Morphism, g: Morphism, budget: int = DEFAULT_BUDGET) -> int | None:
    """Smallest search budget at which :func:`equals` returns EQUAL, or ``None``."""
    for b in range(budget + 1):
        if equals(f, g, b) == EQUAL:
            return b
    return None


# ---------------------------------------------------------------- Temperley-Lieb oracle

@dataclass(frozen=True)
class TLDiagram:
    """A planar matching between ``bottom`` lower and ``top`` upper points.

    Points ``0..bottom-1`` are the lower points from left to right and
    ``bottom..bottom+top-1`` the upper points from left to right.
    """

    bottom: int
    top: int
    match: tuple[int, ...]

    def __post_init__(self):
        n = self.bottom + self.top
        if len(self.match) != n or any(self.match[self.match[k]] != k or self.match[k] == k for k in range(n)):
            raise ValueError("not a perfect matching")


def tl_diagrams(bottom: int, top: int) -> list[TLDiagram]:
    """Every planar matching, found by brute force over perfect matchings."""
    n = bottom + top
    if n % 2:
        return []
    # boundary order around the rectangle: lower points left to right, then upper right to left
    ring = list(range(bottom)) + list(range(bottom + top - 1, bottom - 1, -1))
    pos = {p: k for k, p in enumerate(ring)}
    out = []

    def matchings(pts):
        if not pts:
            yield []
            return
        a = pts[0]
        for k in range(1, len(pts)):
            rest = pts[1:k] + pts[k + 1:]
            for m in matchings(rest):
                yield [(a, pts[k])] + m

    for m in matchings(list(range(n))):
        ok = True
        for (a, b), (c, d) in itertools.combinations(m, 2):
            x, y = sorted((pos[a], pos[b]))
            u, v = sorted((pos[c], pos[d]))
            if x < u < y < v or u < x < v < y:
                ok = False
                break
        if ok:
            match = [0] * n
            for a, b in m:
                match[a], match[b] = b, a
            out.append(TLDiagram(bottom, top, tuple(match)))
    return out


def tl_oracle_compose(d1: TLDiagram, d2: TLDiagram) -> tuple[TLDiagram, int]:
    """Stack ``d2`` on top of ``d1``; return the diagram and the number of loops."""
    if d1.top != d2.bottom:
        raise ArityMismatch(f"{d1.top} upper points against {d2.bottom} lower points")
    n, m, l = d1.bottom, d1.top, d2.top
    # d1 points keep their index, d2 point k becomes n + m + k
    adj: dict[int, list[int]] = {v: [] for v in range(n + 2 * m + l)}
    for k in range(n + m):
        adj[k].append(d1.match[k])
    for k in range(m + l):
        adj[n + m + k].append(n + m + d2.match[k])
    for j in range(m):  # glue the upper points of d1 to the lower points of d2
        adj[n + j].append(n + m + j)
        adj[n + m + j].append(n + j)
    ends = list(range(n)) + [n + 2 * m + k for k in range(l)]
    seen: set[int] = set()
    match = [0] * (n + l)

    def out_index(v):
        return v if v < n else v - 2 * m

    def walk(start):
        path, prev, cur = [start], None, start
        while True:
            seen.add(cur)
            nxt = [w for w in adj[cur] if w != prev and w not in seen]
            if not nxt:
                return path
            prev, cur = cur, nxt[0]
            path.append(cur)

    for e in ends:
        if e not in seen:
            path = walk(e)
            a, b = out_index(path[0]), out_index(path[-1])
            match[a], match[b] = b, a
    loops = 0
    for v in adj:
        if v not in seen:
            walk(v)
            loops += 1
    return TLDiagram(n, l, tuple(match)), loops


def tl_tensor(d1: TLDiagram, d2: TLDiagram) -> TLDiagram:
    """Horizontal juxtaposition with ``d1`` on the left."""
    b1, t1, b2, t2 = d1.bottom, d1.top, d2.bottom, d2.top

    def f1(k):
        return k if k < b1 else b1 + b2 + (k - b1)

    def f2(k):
        return b1 + k if k < b2 else b1 + b2 + t1 + (k - b2)

    match = [0] * (b1 + b2 + t1 + t2)
    for k in range(b1 + t1):
        match[f1(k)] = f1(d1.match[k])
    for k in range(b2 + t2):
        match[f2(k)] = f2(d2.match[k])
    return TLDiagram(b1 + b2, t1 + t2, tuple(match))

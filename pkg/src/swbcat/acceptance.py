"""The twelve acceptance checks, shared by ``swb selftest`` and the test suite.

Each check returns a :class:`CheckResult`.  Expected values that come from
the mathematics (counts, matrices, the Moebius-to-torus rewrite, the worked
SWB example) are written out here by hand; derived values are compared with
an independent route (brute-force path search, the Temperley-Lieb oracle,
strand tracing) rather than with a second call into the code under test.
"""
from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

from . import category as C
from . import chord, graph_core, swb
from .chord import ANN, MOB, TOR, TwistedChordDatum
from .graph_core import OrderedGraph

YB_BUDGET = 12


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    time_limit: float | None = None
    data: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"number": self.number, "name": self.name, "passed": self.passed,
                "detail": self.detail, "seconds": round(self.seconds, 3),
                "time_limit": self.time_limit, "data": self.data}


_CHECKS: dict[int, tuple[str, float | None, Callable]] = {}


def _check(number: int, name: str, time_limit: float | None = None):
    def wrap(fn):
        _CHECKS[number] = (name, time_limit, fn)
        return fn
    return wrap


def run(number: int, seed: int = 0) -> CheckResult:
    """Run one check; exceptions count as a failure."""
    name, limit, fn = _CHECKS[number]
    t0 = time.perf_counter()
    try:
        ok, detail, data = fn(random.Random(seed))
    except Exception as exc:  # a crash is a failed criterion, reported as such
        ok, detail, data = False, f"{type(exc).__name__}: {exc}", {}
    secs = time.perf_counter() - t0
    if ok and limit is not None and secs > limit:
        ok, detail = False, f"{detail}; took {secs:.1f}s against a limit of {limit:.0f}s"
    return CheckResult(number, name, ok, detail, secs, limit, data)


def run_all(seed: int = 0, only=None) -> list[CheckResult]:
    return [run(k, seed) for k in sorted(_CHECKS) if only is None or k in only]


def load_fixture(name: str) -> str:
    return resources.files("swbcat").joinpath("fixtures", name).read_text(encoding="utf-8")


# ---------------------------------------------------------------- 1. enumeration

@_check(1, "enumeration counts", 5.0)
def check_enumeration(rng):
    full = {0: 1, 1: 2, 2: 12, 3: 120, 4: 1680}
    plus = {0: 1, 1: 1, 2: 3, 3: 15, 4: 105}
    got = {n: len(chord.enumerate_tcd(n)) for n in full}
    got_plus = {n: len(chord.enumerate_tcd(n, orientable=True)) for n in plus}
    distinct = all(len(set(chord.enumerate_tcd(n))) == full[n] for n in full)
    ok = got == full and got_plus == plus and distinct
    return ok, f"|TC_N| = {list(got.values())}, orientable {list(got_plus.values())}", {
        "all": got, "orientable": got_plus}


# ---------------------------------------------------------------- 2. intersection matrices

def _random_tcd(rng, max_rank: int) -> TwistedChordDatum:
    n = rng.randint(0, max_rank)
    sites = list(range(1, 2 * n + 1))
    rng.shuffle(sites)
    arcs = tuple(tuple(sorted(sites[2 * k:2 * k + 2])) for k in range(n))
    return TwistedChordDatum(arcs, tuple(rng.randint(0, 1) for _ in arcs))


@_check(2, "elementary intersection matrices and direct sums")
def check_matrices(rng):
    expected = {"Mob": ((1,),), "Ann": ((0,),), "Tor": ((0, 1), (1, 0))}
    got = {k: chord.intersection_matrix(t).entries for k, t in (("Mob", MOB), ("Ann", ANN), ("Tor", TOR))}
    bad = 0
    for _ in range(50):
        t1, t2 = _random_tcd(rng, 3), _random_tcd(rng, 3)
        m1, m2 = chord.intersection_matrix(t1).entries, chord.intersection_matrix(t2).entries
        n1, n2 = len(m1), len(m2)
        block = tuple(tuple(r) + (0,) * n2 for r in m1) + tuple((0,) * n1 + tuple(r) for r in m2)
        if chord.intersection_matrix(chord.juxtapose(t2, t1)).entries != block:
            bad += 1
    ok = got == expected and bad == 0
    return ok, f"elementary matrices {'match' if got == expected else 'differ'}; {bad}/50 direct sums fail", {}


# ---------------------------------------------------------------- 3. slide invariants

@_check(3, "chord-slide invariants", 30.0)
def check_slides(rng):
    slides = bad = 0
    for n in range(4):
        for t in chord.enumerate_tcd(n):
            inv = (chord.boundary_count(t), t.is_orientable, chord.gf2_nullity(chord.intersection_matrix(t)))
            for i, e in chord.admissible_pairs(t):
                u = chord.chord_slide_strict(t, i, e)
                slides += 1
                after = (chord.boundary_count(u), u.is_orientable,
                         chord.gf2_nullity(chord.intersection_matrix(u)))
                back = chord.chord_slide_strict(u, *chord.inverse_slide(t, i, e))
                if after != inv or back != t:
                    bad += 1
    return bad == 0, f"{slides} admissible slides on TC_N, N <= 3; {bad} failures", {"slides": slides}


# ---------------------------------------------------------------- 4. caravan theorem

def _caravan_by_hand(b: int, g: int, t: int) -> TwistedChordDatum:
    """(#t Mob) # (#g Tor) # (#b Ann), written out site by site from the bottom."""
    arcs, tw, base = [], [], 0
    for _ in range(b):
        arcs.append((base + 1, base + 2)); tw.append(0); base += 2
    for _ in range(g):
        arcs += [(base + 1, base + 3), (base + 2, base + 4)]; tw += [0, 0]; base += 4
    for _ in range(t):
        arcs.append((base + 1, base + 2)); tw.append(1); base += 2
    return TwistedChordDatum(tuple(arcs), tuple(tw))


FIG9_STATES = (
    TwistedChordDatum(((1, 4), (2, 5), (3, 6)), (0, 1, 0)),
    TwistedChordDatum(((1, 6), (2, 4), (3, 5)), (1, 0, 0)),
    TwistedChordDatum(((1, 3), (2, 4), (5, 6)), (0, 0, 1)),
)


@_check(4, "caravan normal form", 120.0)
def check_caravan(rng):
    count = bad = 0
    for n in range(5):
        for t in chord.enumerate_tcd(n):
            st, trace = chord.caravan_normalize(t)
            count += 1
            if chord.replay(t, trace) != _caravan_by_hand(st.b, st.g, st.t):
                bad += 1
    # the Moebius-cubed rewrite, one state at a time
    s = chord.juxtapose_all(MOB, MOB, MOB)
    states = []
    for k, (i, e) in enumerate(chord.FIG9_MOVES):
        s = chord.chord_slide_strict(s, i, e)
        if k in (1, 3):
            states.append(s)
    s, _ = chord.boundary_slide_moves(s, 1, 1, TOR)
    states.append(s)
    fig_ok = tuple(states) == FIG9_STATES
    ok = bad == 0 and fig_ok
    return ok, (f"{count} data with N <= 4, {bad} traces miss the caravan; "
                f"Mob#Mob#Mob rewrite {'reproduced' if fig_ok else 'differs'}"), {"data": count}


# ---------------------------------------------------------------- 5. graph contraction

def _random_graph(rng, tag: str = "v") -> OrderedGraph:
    n = rng.randint(0, 12)
    vs = [(tag, k) for k in range(n)]
    rng.shuffle(vs)
    p = rng.random() * 0.4
    es = [(vs[a], vs[b]) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
    return OrderedGraph(vs, es)


def _reach(vertices, edges, start) -> set:
    """Brute-force path search over an explicit edge list."""
    seen, frontier = {start}, [start]
    while frontier:
        x = frontier.pop()
        for e in edges:
            if x in e:
                (y,) = set(e) - {x}
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
    return seen


def _oracle_components(g: OrderedGraph) -> set[frozenset]:
    out, left = set(), set(g.vertices)
    while left:
        c = _reach(g.vertices, g.edges, next(iter(left)))
        out.add(frozenset(c))
        left -= c
    return out


def _adjacent(g: OrderedGraph, u: set) -> set:
    return {v for v in g.vertices if v not in u and g.neighbours(v) & u}


@_check(5, "graph contraction laws")
def check_contraction(rng):
    fails = {"connectivity": 0, "definition": 0, "composition": 0, "relabel": 0, "union": 0, "bijection": 0}
    composed = bijections = 0
    for _ in range(1000):
        g = _random_graph(rng)
        vs = list(g.vertices)
        u = {v for v in vs if rng.random() < 0.4}
        gu = graph_core.contract(g, u)
        # V(G/U) = V \ U and outside connectivity is unchanged
        rest = [v for v in vs if v not in u]
        if list(gu.vertices) != rest:
            fails["connectivity"] += 1
        for v in rest:
            if _reach(g.vertices, g.edges, v) - u != _reach(gu.vertices, gu.edges, v):
                fails["connectivity"] += 1
                break
        if gu != graph_core.contract_literal(g, u):
            fails["definition"] += 1
        # composition when the adjacency sets are disjoint
        w = {v for v in rest if rng.random() < 0.4}
        if not (_adjacent(g, u) & _adjacent(g, w)):
            composed += 1
            lhs = graph_core.contract(gu, w)
            if lhs != graph_core.contract(g, u | w) or \
                    graph_core.index(g, u) + graph_core.index(gu, w) != graph_core.index(g, u | w):
                fails["composition"] += 1
        # injective relabelling
        f = {v: ("r", k * 7 + 3) for k, v in enumerate(vs)}
        if graph_core.contract(g.relabel(f), {f[v] for v in u}) != gu.relabel(f) or \
                graph_core.index(g.relabel(f), {f[v] for v in u}) != graph_core.index(g, u):
            fails["relabel"] += 1
        # disjoint union, contracting on one side
        h = _random_graph(rng, "h")
        if graph_core.contract(g.union(h), u) != gu.union(h):
            fails["union"] += 1
        # index zero: components correspond one to one
        if graph_core.index(g, u) == 0:
            bijections += 1
            comps = _oracle_components(g)
            images = {frozenset(c - u) for c in comps}
            after = _oracle_components(gu)
            per = all(graph_core.contract(g.induced(c), c & u) == gu.induced(c - u) for c in comps)
            if len(images) != len(comps) or images != after or not per:
                fails["bijection"] += 1
    ok = not any(fails.values())
    return ok, f"1000 graphs ({composed} composition cases, {bijections} index-zero cases); failures {fails}", fails


# ---------------------------------------------------------------- 6. isotopy confluence

def _nontrivial_pulls(th: swb.SWBDatum) -> list:
    out = []
    for i, a in swb.turnbacks(th):
        r = swb.pull_through(th, i, a)
        if r != th:
            out.append(r)
    return out


def _all_endpoints(th: swb.SWBDatum) -> set:
    """Every datum reachable by a maximal sequence of pull-throughs."""
    ends, seen, stack = set(), {th}, [th]
    while stack:
        x = stack.pop()
        nxt = _nontrivial_pulls(x)
        if not nxt:
            ends.add(x)
        for y in nxt:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return ends


@_check(6, "isotopy confluence")
def check_confluence(rng):
    # sampling is conditioned on at least one turn-back, otherwise most draws are already reduced
    done = several = bad = 0
    while done < 200:
        th = swb.random_datum(rng, max_rank=2, max_mult=4)
        if th.frame.complexity > 8 or not swb.turnbacks(th) or swb.has_internal_components(th):
            continue
        done += 1
        if len(swb.turnbacks(th)) > 1:
            several += 1
        ends = _all_endpoints(th)
        end = next(iter(ends))
        if len(ends) != 1 or swb.turnbacks(end) or end != swb.isotopy_reduce(th):
            bad += 1
    return bad == 0, (f"200 data with turn-backs ({several} with several); "
                      f"{bad} with more than one endpoint"), {"several": several}


# ---------------------------------------------------------------- 7. handle-slide invariants

def _component_profile(th: swb.SWBDatum) -> list:
    return sorted((c.twist, c.internal, c.separating) for c in swb.classify_components(th))


@_check(7, "handle-slide invariants")
def check_handle_slides(rng):
    data = slides = 0
    fails = {"complement": 0, "duality": 0, "components": 0}
    while data < 200:
        th = swb.random_datum(rng, max_rank=2, max_mult=2)
        moves = chord.admissible_pairs(th.tcd)
        if not moves:
            continue
        data += 1
        profile, cc = _component_profile(th), swb.complement_count(th)
        size = th.tcd.size
        for i, e in moves:
            h = swb.handle_slide(th, i, e)
            slides += 1
            if swb.complement_count(h) != cc:
                fails["complement"] += 1
            if swb.star(h) != swb.handle_slide(swb.star(th), size + 1 - i, -e):
                fails["duality"] += 1
            if _component_profile(h) != profile:
                fails["components"] += 1
    ok = not any(fails.values())
    return ok, f"{data} data, {slides} slides; failures {fails}", fails


# ---------------------------------------------------------------- 8. Temperley-Lieb oracle

def tl_to_morphism(d: C.TLDiagram) -> C.Morphism:
    """Rank-0 morphism of a TL diagram: lower point k is rank k, upper point j is rank n + m - 1 - j."""
    n, m = d.bottom, d.top

    def r(k):
        return k if k < n else n + (m - 1 - (k - n))

    p = [0] * (n + m)
    for k in range(n + m):
        p[r(k)] = r(d.match[k])
    return C.Morphism.homogeneous(swb._rank0(n, m, p))


def _terms(f: C.Morphism) -> dict:
    return {k: c for k, (_, c) in f.keyed_terms().items()}


@_check(8, "Temperley-Lieb oracle", 60.0)
def check_tl(rng):
    diagrams = [d for n in range(5) for m in range(5) for d in C.tl_diagrams(n, m)]
    conv = {d: tl_to_morphism(d) for d in diagrams}
    composed = bad_c = 0
    for d1 in diagrams:
        for d2 in diagrams:
            if d1.top != d2.bottom:
                continue
            d, loops = C.tl_oracle_compose(d1, d2)
            got = C.compose(conv[d2], conv[d1])
            composed += 1
            if _terms(got) != _terms(tl_to_morphism(d).scale(C.ALPHA ** loops)):
                bad_c += 1
    tensored = bad_t = 0
    for d1 in diagrams:
        for d2 in diagrams:
            got = C.tensor(conv[d1], conv[d2])
            tensored += 1
            if _terms(got) != _terms(tl_to_morphism(C.tl_tensor(d1, d2))):
                bad_t += 1
    ok = bad_c == 0 and bad_t == 0
    return ok, f"{composed} compositions ({bad_c} wrong), {tensored} tensor products ({bad_t} wrong)", {
        "compositions": composed, "tensors": tensored}


# ---------------------------------------------------------------- 9. rigidity

@_check(9, "rigidity")
def check_rigidity(rng):
    bad = []
    for n in range(1, 4):
        ident = C.identity(n)
        left = C.compose(C.pad(C.ev(n), left=n), C.pad(C.coev(n), right=n))
        right = C.compose(C.pad(C.ev(n), right=n), C.pad(C.coev(n), left=n))
        loops = C.compose(C.ev(n), C.coev(n))
        if _terms(left) != _terms(ident):
            bad.append(f"left zig-zag n={n}")
        if _terms(right) != _terms(ident):
            bad.append(f"right zig-zag n={n}")
        if _terms(loops) != _terms(C.identity(0).scale(C.ALPHA ** n)):
            bad.append(f"ev o coev n={n}")
    return not bad, "zig-zags and ev o coev for n <= 3" + (f"; failing: {bad}" if bad else " hold"), {}


# ---------------------------------------------------------------- 10. relations

def yang_baxter(l: int, m: int, n: int) -> tuple[C.Morphism, C.Morphism]:
    P, T = C.pad, C.torus
    lhs = C.compose_all(P(T(l, m), left=n), P(T(l, n), right=m), P(T(m, n), left=l))
    rhs = C.compose_all(P(T(m, n), right=l), P(T(l, n), left=m), P(T(l, m), right=n))
    return lhs, rhs


def mixed_relation(l: int, m: int) -> tuple[C.Morphism, C.Morphism]:
    P, M = C.pad, C.mobius
    lhs = C.compose_all(P(M(l), left=m), M(l + m), P(M(m), left=l))
    rhs = C.compose(P(M(0), left=l + m), C.torus(l, m))
    return lhs, rhs


@_check(10, "Yang-Baxter and mixed relations")
def check_relations(rng):
    used, bad = {}, []
    for l, m, n in itertools.product((0, 1), repeat=3):
        b = C.search_budget_used(*yang_baxter(l, m, n), YB_BUDGET)
        used[f"YB{l}{m}{n}"] = b
        if b is None:
            bad.append(f"YB{l}{m}{n}")
    for l, m in itertools.product((0, 1), repeat=2):
        b = C.search_budget_used(*mixed_relation(l, m), YB_BUDGET)
        used[f"MT{l}{m}"] = b
        if b is None:
            bad.append(f"MT{l}{m}")
    detail = "budget used " + ", ".join(f"{k}:{v}" for k, v in used.items())
    return not bad, detail + (f"; not EQUAL within {YB_BUDGET}: {bad}" if bad else ""), used


# ---------------------------------------------------------------- 11. dualities

def monoidal_generators() -> dict[str, C.Morphism]:
    out = {"cup": C.cup(), "cap": C.cap(), "id1": C.identity(1)}
    for l, m in itertools.product((0, 1), repeat=2):
        out[f"T{l}{m}"] = C.torus(l, m)
    for n in (0, 1):
        out[f"M{n}"] = C.mobius(n)
    return out


def random_composite(rng) -> C.Morphism:
    """A composite or tensor product of at most three generators, arities kept <= 4."""
    gens = list(monoidal_generators().values())
    f = rng.choice(gens)
    for _ in range(rng.randint(1, 2)):
        g = rng.choice(gens)
        if rng.random() < 0.5 or g.domain != f.codomain:
            if f.domain + g.domain > 4 or f.codomain + g.codomain > 4:
                continue
            f = C.tensor(f, g) if rng.random() < 0.5 else C.tensor(g, f)
        else:
            f = C.compose(g, f)
    return f


@_check(11, "dualities")
def check_dualities(rng):
    cases = list(monoidal_generators().items())
    cases += [(f"composite {k}", random_composite(rng)) for k in range(50)]
    bad = []
    for name, f in cases:
        if C.equals(C.dagger(C.dagger(f)), f, YB_BUDGET) != C.EQUAL:
            bad.append(f"{name}: dagger twice")
        if C.equals(C.dual_star(C.dagger(f)), C.dagger(C.dual_star(f)), YB_BUDGET) != C.EQUAL:
            bad.append(f"{name}: dagger and star")
    return not bad, f"{len(cases)} morphisms" + (f"; failing {bad}" if bad else ", all EQUAL"), {}


# ---------------------------------------------------------------- 12. fixture regression

@_check(12, "worked SWB example")
def check_fixture(rng):
    from .cli_io import parse_document

    doc = parse_document(load_fixture("theta1.json"))
    th = doc.obj
    exp = doc.annotations["_expected"]
    comps = {frozenset(c.component.vertices): c.twist for c in swb.classify_components(th)}
    # one complementary region; the curve through the twisted band has twist 1, the other 0
    by_hand = {frozenset({(0, 1), (0, 3), (1, 1), (3, 2)}): 0,
               frozenset({(0, 2), (1, 2), (2, 1), (3, 1), (4, 1), (5, 1)}): 1}
    recorded = {frozenset(tuple(v) for v in c["vertices"]): c["twist"] for c in exp["components"]}
    cc = swb.complement_count(th)
    ok = cc == 1 == exp["complement_count"] and comps == by_hand == recorded
    return ok, f"complement count {cc}, component twists {sorted(comps.values())}", {}


def table(results: list[CheckResult]) -> str:
    return "\n".join(f"{r.number:>2}  {'PASS' if r.passed else 'FAIL'}  {r.seconds:7.2f}s  {r.name}: {r.detail}"
                     for r in results)


if __name__ == "__main__":  # pragma: no cover
    print(json.dumps([r.as_dict() for r in run_all()], indent=2))

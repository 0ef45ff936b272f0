import itertools
import json
import random
from fractions import Fraction

import pytest

from swbcat import chord, cli_io, swb
from swbcat import graph_core as gc
from swbcat.acceptance import load_fixture
from swbcat.chord import ANN, EMPTY, MOB, TOR, TwistedChordDatum
from swbcat.errors import (EmptyNorth, HasInternalComponents, InvalidDatum, NotAComponent, NotInternal,
                           NotJuxtaposable, SetupViolated, TypeMismatch)

TCD = TwistedChordDatum
F2 = swb.Frame(TCD(((1, 4), (2, 6), (3, 5)), (0, 1, 0)), 2, 4, (1, 2, 3))


def theta1():
    return cli_io.parse(load_fixture("theta1.json"))


def expected(name):
    return json.loads(load_fixture(name))["_expected"]


def sample(seed, count, **kw):
    rng = random.Random(seed)
    return [swb.random_datum(rng, **kw) for _ in range(count)]


def clean_sample(seed, count, **kw):
    """Random turn-back-free data without internal components."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        th = swb.random_datum(rng, **kw)
        if not swb.has_internal_components(th):
            out.append(swb.isotopy_reduce(th))
    return out


def search_components(vertices, edges):
    """Connected components by depth-first search over an edge list."""
    adj = {v: set() for v in vertices}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    left, out = set(vertices), []
    while left:
        start = min(left)
        left.remove(start)
        comp, todo = {start}, [start]
        while todo:
            for y in adj[todo.pop()]:
                if y in left:
                    left.remove(y)
                    comp.add(y)
                    todo.append(y)
        out.append(comp)
    return out


def iota_oracle(fr, v):
    """The band pairing read straight off its case formula."""
    i, a = v
    t = fr.tcd
    j = t.partner(i)
    f = fr.level_sizes[i]
    return (j, a) if t.site_twist(i) else (j, f + 1 - a)


# ---------------------------------------------------------------- frames

def test_frame_f2_levels():
    assert F2.level_sizes == (2, 1, 2, 3, 1, 3, 2, 4)
    assert F2.size == 18 and F2.top == 7 and F2.type == (2, 4)
    assert F2.complexity == 6


def test_frame_f2_matches_fixture():
    fr = cli_io.parse(load_fixture("frame_f2.json"))
    assert fr == F2
    assert list(fr.level_sizes) == expected("frame_f2.json")["level_sizes"]


def test_northern_slots_descend():
    order = F2.vertices
    assert order[:2] == ((0, 1), (0, 2))
    assert order[-4:] == ((7, 4), (7, 3), (7, 2), (7, 1))
    assert all(F2.index(v) == k for k, v in enumerate(order))


def test_frame_rejects_several_boundary_circles():
    with pytest.raises(InvalidDatum):
        swb.Frame(ANN, 0, 0, (1,))
    with pytest.raises(InvalidDatum):
        swb.Frame(TOR, 0, 0, (1,))


def test_from_levels_needs_equal_band_ends():
    with pytest.raises(InvalidDatum):
        swb.Frame.from_levels(MOB, (0, 1, 2, 0))


@pytest.mark.parametrize("v, image", [((1, 1), (4, 1)), ((2, 1), (6, 1)), ((2, 2), (6, 2)),
                                      ((3, 1), (5, 3)), ((5, 1), (3, 3))])
def test_iota_examples_on_f2(v, image):
    assert swb.iota(F2, v) == image


def test_iota_matches_formula_and_is_an_involution():
    rng = random.Random(1)
    for _ in range(100):
        fr = swb.random_frame(rng, max_rank=3)
        for v in fr.vertices:
            if not fr.is_internal(v):
                with pytest.raises(NotInternal):
                    fr.iota(v)
                continue
            assert fr.iota(v) == iota_oracle(fr, v)
            assert fr.iota(fr.iota(v)) == v


def test_half_slot_pairing():
    for k in range(F2.half_offsets[-1]):
        i, x = F2.half_vertex(k)
        if 0 < i < F2.top:
            j, y = swb.iota_half(F2, (i, x))
            assert swb.iota_half(F2, (j, y)) == (i, x)
            assert F2.half_vertex(F2.half_iota[k]) == (j, y)
    assert swb.iota_half(F2, (1, Fraction(1, 2))) == (4, Fraction(3, 2))


def test_frame_star_reflects_and_commutes_with_iota():
    rng = random.Random(2)
    for _ in range(100):
        fr = swb.random_frame(rng, max_rank=3)
        st = fr.star()
        assert st.star() == fr
        assert st.level_sizes == tuple(reversed(fr.level_sizes))
        n = fr.size
        for k in range(n):
            if fr.iota_index[k] >= 0:
                assert st.iota_index[n - 1 - k] == n - 1 - fr.iota_index[k]


# ---------------------------------------------------------------- data

def test_pairing_must_be_crossingless():
    fr = swb.Frame(EMPTY, 4, 0, ())
    with pytest.raises(InvalidDatum):
        swb.SWBDatum.from_pairs(fr, [((0, 1), (0, 3)), ((0, 2), (0, 4))])
    with pytest.raises(InvalidDatum):
        swb.SWBDatum.from_pairs(fr, [((0, 1), (0, 2))])


def test_random_matchings_are_crossingless():
    rng = random.Random(3)
    for size in range(0, 14, 2):
        for _ in range(20):
            p = swb.random_matching(rng, size)
            pairs = [(k, q) for k, q in enumerate(p) if k < q]
            assert gc.is_crossingless(gc.PairPartition.from_pairs(range(size), pairs))


def test_pack_round_trip():
    for th in sample(4, 100, max_rank=3):
        assert swb.unpack(swb.pack(th)) == th
        assert swb._unkey(swb.canonical_key(th)) == swb.pack(th)


# ---------------------------------------------------------------- graphs and components

def test_theta1_fixture():
    th = theta1()
    exp = expected("theta1.json")
    assert list(th.type) == exp["type"]
    assert swb.complement_count(th) == exp["complement_count"]
    got = sorted((sorted(map(list, c.component.vertices)), c.twist) for c in swb.classify_components(th))
    assert got == sorted((c["vertices"], c["twist"]) for c in exp["components"])


def test_theta1_level_sizes():
    assert theta1().frame.level_sizes == (3, 2, 1, 2, 1, 1)


def test_curve_components_match_search():
    for th in sample(5, 150, max_rank=3):
        fr = th.frame
        edges = [(k, q) for k, q in enumerate(th.partner) if k < q]
        edges += [(k, q) for k, q in enumerate(fr.iota_index) if 0 <= q and k < q]
        want = sorted(tuple(sorted(c)) for c in search_components(range(fr.size), edges))
        assert sorted(swb.component_sets(th)) == want
        assert swb.component_count(th) == len(want)
        assert sorted(c.vertices for c in swb.components(th)) == sorted(tuple(fr.vertex(k) for k in c) for c in want)


def test_curve_graph_has_degree_at_most_two():
    for th in sample(6, 50, max_rank=3):
        g = swb.curve_graph(th)
        assert all(g.degree(v) <= 2 for v in g.vertices)
        assert all(g.degree(v) == 1 for v in g.vertices if not th.frame.is_internal(v))


def test_complement_count_matches_search_on_the_graph():
    for th in sample(7, 150, max_rank=3):
        g = swb.complement_graph(th)
        comps = search_components(g.vertices, [tuple(e) for e in g.edges])
        assert swb.complement_count(th) == len(comps)


def test_empty_pairing_leaves_the_surface_whole():
    for t in (EMPTY, MOB, TOR, chord.juxtapose(MOB, TOR)):
        th = swb.SWBDatum(swb.Frame(t, 0, 0, (0,) * t.rank), ())
        assert swb.complement_count(th) == 1 and swb.component_count(th) == 0


def test_cap_cuts_off_a_disc():
    # one arc across the empty square splits it in two
    assert swb.complement_count(swb.cap_datum()) == 2
    (info,) = swb.classify_components(swb.cap_datum())
    assert info.external and info.fully_external and info.separating and info.twist == 0


def test_core_of_mob_is_twisted_and_non_separating():
    th = swb.make_datum(MOB, 0, 0, (1,), [((1, 1), (2, 1))])
    (info,) = swb.classify_components(th)
    assert info.internal and info.twist == 1 and not info.separating
    assert swb.strip_internal(th) == (swb.SWBDatum(swb.Frame(MOB, 0, 0, (0,)), ()), [(1, 0)])


def test_torus_meridian_is_non_separating():
    th = swb.make_datum(TOR, 0, 0, (1, 0), [((1, 1), (3, 1))])
    (info,) = swb.classify_components(th)
    assert info.internal and info.twist == 0 and not info.separating


def test_delete_component_requires_a_component():
    th = theta1()
    with pytest.raises(NotAComponent):
        swb.delete_component(th, (0,))
    comp = swb.component_sets(th)[0]
    assert swb.delete_component(th, comp).frame.size == th.frame.size - len(comp)


# ---------------------------------------------------------------- duality

def test_star_of_cap_is_cup():
    assert swb.star(swb.cap_datum()) == swb.cup_datum()
    assert swb.cups(2) == swb.star(swb.caps(2))


@pytest.mark.parametrize("l, m", [(0, 1), (1, 0), (1, 2), (2, 1)])
def test_star_swaps_torus_multiplicities(l, m):
    assert swb.star(swb.torus_generator(l, m)) == swb.torus_generator(m, l)


def test_star_fixes_mobius_generators():
    for n in range(4):
        assert swb.star(swb.mobius_generator(n)) == swb.mobius_generator(n)


def test_star_is_an_involution_and_keeps_invariants():
    for th in sample(8, 100, max_rank=3):
        st = swb.star(th)
        assert swb.star(st) == th
        assert st.type == (th.type[1], th.type[0])
        assert swb.component_count(st) == swb.component_count(th)
        assert swb.complement_count(st) == swb.complement_count(th)
        assert sorted(c.twist for c in swb.classify_components(st)) == \
            sorted(c.twist for c in swb.classify_components(th))


# ---------------------------------------------------------------- juxtaposition

def test_cap_on_cup_closes_one_loop():
    out, loops = swb.juxtapose(swb.cap_datum(), swb.cup_datum())
    assert out == swb.empty_datum() and loops == 1


def test_nested_caps_on_cups_close_n_loops():
    for n in range(4):
        out, loops = swb.juxtapose(swb.caps(n), swb.cups(n))
        assert out == swb.empty_datum() and loops == n


def test_juxtapose_type_mismatch():
    with pytest.raises(TypeMismatch):
        swb.juxtapose(swb.cap_datum(), swb.identity_datum(1))


def test_identity_is_neutral():
    for th in sample(9, 60, max_rank=2):
        n, m = th.type
        assert swb.juxtapose(swb.identity_datum(m), th) == (th, 0)
        assert swb.juxtapose(th, swb.identity_datum(n)) == (th, 0)


def _compatible_triple(rng):
    while True:
        a, b, c = (swb.random_datum(rng, max_rank=1) for _ in range(3))
        if a.type[1] == b.type[0] and b.type[1] == c.type[0]:
            return a, b, c


def test_juxtaposition_is_associative_with_additive_loops():
    rng = random.Random(10)
    for _ in range(60):
        a, b, c = _compatible_triple(rng)
        ba, l1 = swb.juxtapose(b, a)
        left, l2 = swb.juxtapose(c, ba)
        cb, l3 = swb.juxtapose(c, b)
        right, l4 = swb.juxtapose(cb, a)
        assert left == right
        assert l1 + l2 == l3 + l4
        assert swb.juxtapose_all(c, b, a) == (left, l1 + l2)


def test_loops_counted_by_components():
    # every loop closed in the middle is a curve component the glued datum lost
    rng = random.Random(11)
    for _ in range(60):
        a, b, _ = _compatible_triple(rng)
        out, loops = swb.juxtapose(b, a)
        m = a.type[1]
        # component count of the stacked curves, counted on the disjoint union with the glue edges
        na, nb = a.frame.size, b.frame.size
        edges = [(k, q) for k, q in enumerate(a.partner) if k < q]
        edges += [(k, q) for k, q in enumerate(a.frame.iota_index) if 0 <= q and k < q]
        edges += [(na + k, na + q) for k, q in enumerate(b.partner) if k < q]
        edges += [(na + k, na + q) for k, q in enumerate(b.frame.iota_index) if 0 <= q and k < q]
        edges += [(na - s, na + s - 1) for s in range(1, m + 1)]
        glued = search_components(range(na + nb), edges)
        assert len(glued) == swb.component_count(out) + loops
        assert swb.linking_number(a, b) == loops


# ---------------------------------------------------------------- insertion and factorisation

def _insertions(th):
    t = th.frame.tcd
    for d in range(t.size):
        for w in range(2, t.size - d + 1, 2):
            sp = chord.extract_block(t, d, w)
            if sp is not None and chord.is_in_tc_star(sp[1]):
                yield d, sp[1]


def test_insertion_round_trip():
    checked = 0
    for th in sample(12, 200, max_rank=3):
        for d, inner in _insertions(th):
            parts = swb.insertion_decompose(th, d, inner)
            assert parts.inner.frame.tcd == inner
            assert swb.insertion_assemble(parts) == th
            checked += 1
    assert checked > 50


def test_factorize_rebuilds_the_datum():
    checked = 0
    for th in sample(13, 200, max_rank=3):
        for n1 in range(th.frame.rank + 1):
            try:
                th1, th2 = swb.factorize(th, n1)
            except NotJuxtaposable:
                continue
            assert swb.juxtapose(th2, th1) == (th, 0)
            checked += 1
    assert checked > 100


def test_factorize_refuses_an_inseparable_split():
    th = swb.SWBDatum(swb.Frame(TOR, 0, 0, (0, 0)), ())
    with pytest.raises(NotJuxtaposable):
        swb.factorize(th, 1)


# ---------------------------------------------------------------- isotopy

def _reduce_by_pull_throughs(th):
    while True:
        tb = swb.turnbacks(th)
        if not tb:
            return th
        th = swb.pull_through(th, *tb[0])


def test_pull_through_lowers_complexity_by_two():
    checked = 0
    for th in clean_sample(14, 1, max_rank=1) + sample(14, 300, max_rank=3):
        if swb.has_internal_components(th):
            continue
        for i, a in swb.turnbacks(th):
            out = swb.pull_through(th, i, a)
            assert out.frame.complexity == th.frame.complexity - 2
            assert swb.component_count(out) == swb.component_count(th)
            assert swb.complement_count(out) == swb.complement_count(th)
            checked += 1
    assert checked > 50


def test_isotopy_reduction_is_unique():
    # any order of pull-throughs reaches the same turn-back-free datum
    rng = random.Random(15)
    checked = 0
    for th in sample(15, 300, max_rank=3):
        if swb.has_internal_components(th):
            continue
        red = swb.isotopy_reduce(th)
        assert swb.is_reduced(red)
        assert _reduce_by_pull_throughs(th) == red
        x = th
        while swb.turnbacks(x):
            x = swb.pull_through(x, *rng.choice(swb.turnbacks(x)))
        assert x == red
        assert swb.isotopy_reduce(red) == red
        checked += 1
    assert checked > 100


def test_isotopy_needs_no_internal_components():
    th = swb.make_datum(MOB, 0, 0, (1,), [((1, 1), (2, 1))])
    with pytest.raises(HasInternalComponents):
        swb.isotopy_reduce(th)


def test_pull_through_is_identity_off_turnbacks():
    th = swb.make_datum(MOB, 0, 0, (2,), [((1, 1), (2, 2)), ((1, 2), (2, 1))])
    assert swb.pull_through(th, 1, 1) == th
    # a turn-back whose band image is also a part bounds an internal loop and stays
    th = swb.make_datum(MOB, 0, 0, (2,), [((1, 1), (1, 2)), ((2, 1), (2, 2))])
    assert swb.pull_through(th, 1, 1) == th


# ---------------------------------------------------------------- handle slides

def test_handle_slides_keep_invariants():
    checked = 0
    for th in clean_sample(16, 150, max_rank=3):
        inv = swb.invariants(th)
        for i in range(1, th.frame.tcd.size + 1):
            for e in (1, -1):
                out = swb.handle_slide(th, i, e)
                assert out.frame.tcd == chord.chord_slide(th.frame.tcd, i, e)
                assert swb.invariants(out) == inv
                assert swb.invariants(swb.isotopy_reduce(out)) == inv
                checked += 1
    assert checked > 200


def test_handle_slide_adds_the_tabulated_parts():
    for th in sample(17, 150, max_rank=3):
        for i in range(1, th.frame.tcd.size + 1):
            for e in (1, -1):
                new = swb.handle_slide_table(th, i, e)
                out = swb.handle_slide(th, i, e)
                pairs = {tuple(sorted(p)) for p in out.pairs()}
                assert {tuple(sorted(p)) for p in new} <= pairs


def test_iota_after_slide_matches_the_new_frame():
    for th in sample(18, 150, max_rank=3):
        fr = th.frame
        for i, e in chord.admissible_pairs(fr.tcd):
            sigma, fr2, _, u_lo, u_hi = swb._slide_geometry(fr, i, e)
            o = list(range(u_lo)) + list(range(u_hi, fr2.size))
            for a in range(1, fr.level_sizes[i] + 1):
                k = fr.index((i, a))
                first = fr2.vertex(fr2.iota_index[o[k]])
                second = fr2.vertex(fr2.iota_index[o[fr.iota_index[k]]])
                assert swb.iota_after_slide(th, i, e, a) == (first, second)


def test_handle_slide_commutes_with_star():
    for th in clean_sample(19, 100, max_rank=3):
        n = th.frame.tcd.size
        for i in range(1, n + 1):
            for e in (1, -1):
                lhs = swb.star(swb.handle_slide(th, i, e))
                rhs = swb.handle_slide(swb.star(th), n + 1 - i, -e)
                assert lhs == rhs


def test_handle_slide_has_an_inverse_up_to_isotopy():
    for th in clean_sample(20, 80, max_rank=2):
        for i, e in chord.admissible_pairs(th.frame.tcd):
            j, f = chord.inverse_slide(th.frame.tcd, i, e)
            back = swb.slide_moves(th, [(i, e), (j, f)])
            assert back == th


def test_neighbours_are_single_slides():
    for th in clean_sample(21, 30, max_rank=2):
        for (i, e), nb in swb.neighbours(th):
            assert nb == swb.slide_moves(th, [(i, e)])


# ---------------------------------------------------------------- search

def test_datum_is_equivalent_to_itself():
    th = theta1()
    th = swb.strip_internal(th)[0]
    r = swb.hs_equivalent(th, th)
    assert r.outcome == swb.EQUIVALENT and r.moves == 0


def test_fig9_pair_is_equivalent():
    lhs = cli_io.parse(load_fixture("fig9_lhs.json"))
    rhs = cli_io.parse(load_fixture("fig9_rhs.json"))
    r = swb.hs_equivalent(lhs, rhs, budget=8)
    assert r.outcome == swb.EQUIVALENT
    assert swb.slide_moves(lhs, r.path_from_first) == swb.slide_moves(rhs, r.path_from_second)


def test_different_external_patterns_are_distinct():
    a = swb.identity_datum(2)
    b = swb.make_datum(EMPTY, 2, 2, (), [((0, 1), (0, 2)), ((1, 1), (1, 2))])
    r = swb.hs_equivalent(a, b)
    assert r.outcome == swb.DISTINCT and "component data" in r.reason


def test_search_rejects_mismatched_types():
    with pytest.raises(TypeMismatch):
        swb.hs_equivalent(swb.cap_datum(), swb.cup_datum())


def test_random_slide_walks_are_found_and_certified():
    rng = random.Random(22)
    for th in clean_sample(22, 25, max_rank=2, max_mult=2):
        walk = th
        for _ in range(4):
            moves = chord.admissible_pairs(walk.frame.tcd)
            if moves:
                walk = swb.slide_moves(walk, [rng.choice(moves)])
        r = swb.hs_equivalent(th, walk, budget=8)
        assert r.outcome == swb.EQUIVALENT
        assert swb.slide_moves(th, r.path_from_first) == swb.slide_moves(walk, r.path_from_second)


# ---------------------------------------------------------------- strands, shifts and generators

def test_insert_left_and_right():
    th = theta1()
    n, m = th.type
    assert swb.insert_left(th).type == (n + 1, m + 1)
    assert swb.insert_right(th).type == (n + 1, m + 1)
    assert swb.insert_left(swb.insert_right(th)) == swb.insert_right(swb.insert_left(th))
    assert swb.insert_right(swb.empty_datum()) == swb.identity_datum(1)


def test_insert_left_is_tensoring_with_a_strand():
    # the new strand joins the first southern vertex to the first northern vertex
    for th in sample(23, 50, max_rank=2):
        out = swb.insert_left(th)
        assert out.frame.vertex(out.partner[0]) == (out.frame.top, 1)
        assert swb.component_count(out) == swb.component_count(th) + 1


def test_shift_moves_a_northern_end_south():
    th = theta1()
    sh = swb.shift(th)
    assert sh.type == (4, 0)
    assert swb.component_count(sh) == swb.component_count(th)
    assert swb.shift(swb.identity_datum(1)) == swb.cap_datum()
    with pytest.raises(EmptyNorth):
        swb.shift(swb.cap_datum())


def test_caps_are_nested():
    assert swb.caps(2).pairs() == [((0, 1), (0, 4)), ((0, 2), (0, 3))]


@pytest.mark.parametrize(
    "kind, params, tcd, typ",
    [("Id", (3,), EMPTY, (3, 3)), ("Cup", (2,), EMPTY, (0, 4)), ("Cap", (1,), EMPTY, (2, 0)),
     ("T", (1, 2), TOR, (3, 3)), ("M", (2,), MOB, (2, 2))],
)
def test_generators(kind, params, tcd, typ):
    g = swb.make_generator(kind, *params)
    assert g.frame.tcd == tcd and g.type == typ
    assert swb.is_reduced(g) and not swb.has_internal_components(g)


def test_torus_generator_band_multiplicities():
    g = swb.torus_generator(1, 2)
    assert g.frame.level_sizes == (3, 2, 1, 2, 1, 3)


def test_unknown_generator():
    with pytest.raises(ValueError):
        swb.make_generator("X", 1)


def test_factor_generators_rebuilds_an_equivalent_datum():
    for th in clean_sample(24, 30, max_rank=2, max_mult=2):
        pieces = swb.factor_generators(th)
        for p in pieces:
            assert p.frame.tcd in (EMPTY, TOR, MOB)
        out, loops = swb.juxtapose_all(*pieces)
        assert loops == 0
        r = swb.hs_equivalent(th, out, budget=8)
        assert r.outcome == swb.EQUIVALENT


def test_peel_block_is_exact():
    checked = 0
    for th in clean_sample(25, 200, max_rank=2):
        if th.frame.tcd not in (TOR, MOB):
            continue
        t2, mid, t1 = swb.peel_block(th)
        assert swb.juxtapose_all(t2, mid, t1) == (th, 0)
        checked += 1
    assert checked > 30


# ---------------------------------------------------------------- rewriting lemmas

def _shifted(th, k):
    for _ in range(k):
        th = swb.shift(th)
    return th


def _right_padded(th, k):
    for _ in range(k):
        th = swb.insert_right(th)
    return th


def _lemma_cases(seed, limit):
    out = []
    for th in clean_sample(seed, 4000, max_rank=3):
        for d, inner in _insertions(th):
            outer = chord.extract_block(th.frame.tcd, d, inner.size)[0]
            if d < outer.size:
                out.append((th, d, inner))
        if len(out) >= limit:
            break
    return out


LEMMA_CASES = _lemma_cases(26, 600)


def test_first_and_second_rewriting_lemmas():
    seen = {0: 0, 1: 0}
    for th, d, inner in LEMMA_CASES:
        su = swb.lemma_setup(th, d, inner)
        m1, m2, m3 = su.m
        outer = su.parts.outer_frame
        a = outer.tcd.arc_index(d + 1)
        if su.twist == 0:
            out = swb.rewrite_lemma1(th, d, inner)
            parts = swb.insertion_decompose(out, su.c, inner)
            assert parts.inner == _shifted(su.parts.inner, m1 + m2)
            with pytest.raises(SetupViolated):
                swb.rewrite_lemma2(th, d, inner)
        else:
            out = swb.rewrite_lemma2(th, d, inner)
            parts = swb.insertion_decompose(out, su.c - 1, chord.star(inner))
            assert parts.inner == swb.star(_shifted(su.parts.inner, m1 + m3))
        mult = parts.outer_frame.mult
        assert mult[a] == outer.mult[a] + su.n + m1 - m2 - m3
        assert all(mult[k] == outer.mult[k] for k in range(outer.rank) if k != a)
        seen[su.twist] += 1
    assert seen[0] > 20 and seen[1] > 20


def test_third_rewriting_lemma():
    applied = 0
    for th, d, inner in LEMMA_CASES:
        try:
            out = swb.rewrite_lemma3(th, d, inner)
        except SetupViolated:
            continue
        su = swb.lemma_setup(th, d, inner)
        l, k = len(su.X), len(su.X1)
        parts = swb.insertion_decompose(out, d + 1, inner)
        assert parts.inner == _shifted(_right_padded(su.parts.inner, l + k), l)
        assert parts.outer_frame == su.parts.outer_frame
        applied += 1
    assert applied > 10


def test_lemma_setup_reports_violations():
    th = swb.juxtapose(swb.mobius_generator(1), swb.mobius_generator(1))[0]
    th = swb.insert_left(swb.insert_left(th))
    with pytest.raises(SetupViolated):
        swb.lemma_setup(th, 1, MOB)


def test_crossing_detector_names_two_crossing_pairs():
    rng = random.Random(17)
    for _ in range(400):
        size = 2 * rng.randrange(1, 6)
        order = list(range(size))
        rng.shuffle(order)
        p = [0] * size
        for a, b in zip(order[::2], order[1::2]):
            p[a], p[b] = b, a
        crossing = [(a, b) for a in range(size) for b in range(size)
                    if a < p[a] and b < p[b] and a < b < p[a] < p[b]]
        got = swb._crossing(p)
        if not crossing:
            assert got is None
        else:
            a, b = sorted(got)
            assert a < b < p[a] < p[b]

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swbcat import chord
from swbcat.chord import ANN, EMPTY, MOB, TOR, SurfaceType, TwistedChordDatum
from swbcat.errors import BadPermutation, CapExceeded, HeightOutOfRange, NotAdmissible, NotAnInsertion, UnknownArc

TCD = TwistedChordDatum
P2 = TCD(((1, 2), (3, 5), (4, 6)), (1, 0, 0))  # Tor # Mob


def all_tcd(max_rank):
    for n in range(max_rank + 1):
        yield from chord.enumerate_tcd(n)


@st.composite
def tcds(draw, max_rank=3):
    n = draw(st.integers(0, max_rank))
    sites = draw(st.permutations(range(1, 2 * n + 1)))
    arcs = tuple(tuple(sorted(sites[2 * k:2 * k + 2])) for k in range(n))
    twists = tuple(draw(st.lists(st.integers(0, 1), min_size=n, max_size=n)))
    return TCD(arcs, twists)


def components_by_search(g):
    """Component count by depth-first search, independent of the kernels."""
    left, count = set(g.vertices), 0
    while left:
        count += 1
        todo = [left.pop()]
        while todo:
            x = todo.pop()
            for y in g.neighbours(x):
                if y in left:
                    left.remove(y)
                    todo.append(y)
    return count


# ---------------------------------------------------------------- data and enumeration

def test_datum_validation():
    with pytest.raises(ValueError):
        TCD(((1, 2), (2, 3)), (0, 0))
    with pytest.raises(ValueError):
        TCD(((1, 2),), (2,))
    with pytest.raises(ValueError):
        TCD(((1, 2),), ())


def test_from_pairs_marks_twisted_arcs():
    assert TCD.from_pairs([(4, 2), (1, 3)], twisted=[(2, 4)]) == TCD(((1, 3), (2, 4)), (0, 1))


@pytest.mark.parametrize("n, count", [(0, 1), (1, 2), (2, 12), (3, 120), (4, 1680)])
def test_enumeration_count(n, count):
    data = chord.enumerate_tcd(n)
    assert len(data) == len(set(data)) == count == 2 ** n * chord.double_factorial(2 * n - 1)


def test_rank_one_is_mob_and_ann():
    assert set(chord.enumerate_tcd(1)) == {MOB, ANN}


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (2, 3), (3, 15), (4, 105)])
def test_orientable_enumeration_count(n, count):
    data = chord.enumerate_tcd(n, orientable=True)
    assert len(data) == count and all(t.is_orientable for t in data)


def test_enumeration_is_deterministic():
    assert chord.enumerate_tcd(3) == chord.enumerate_tcd(3)


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        chord.enumerate_tcd(6)


@pytest.mark.parametrize("k, value", [(-1, 1), (0, 1), (1, 1), (5, 15), (7, 105)])
def test_double_factorial(k, value):
    assert chord.double_factorial(k) == value


# ---------------------------------------------------------------- permutations

def test_star_of_p2():
    assert chord.star(P2) == TCD(((5, 6), (2, 4), (1, 3)), (1, 0, 0))


def test_identity_permutation():
    assert chord.permute(range(1, 7), P2) == P2


def test_cycle_on_tor():
    assert chord.permute(chord.cycle_c(2), TOR) == TOR


def test_bad_permutation():
    with pytest.raises(BadPermutation):
        chord.permute((1, 1, 2, 3), TOR)


@settings(max_examples=200, deadline=None)
@given(tcds())
def test_star_is_an_involution(t):
    assert chord.star(chord.star(t)) == t


# ---------------------------------------------------------------- chord slides

def test_tor_is_fixed_by_slide():
    assert chord.chord_slide(TOR, 1, 1) == TOR


def test_mob_has_no_admissible_pair():
    assert chord.admissible_pairs(MOB) == []
    assert chord.chord_slide(MOB, 1, 1) == MOB


def test_slide_on_two_annuli():
    aa = chord.juxtapose(ANN, ANN)
    assert chord.chord_slide(aa, 2, 1) == TCD(((1, 4), (2, 3)), (0, 0))
    assert chord.inverse_slide(aa, 2, 1) == (4, -1)
    assert chord.chord_slide(chord.chord_slide(aa, 2, 1), 4, -1) == aa


def test_strict_slide_rejects_inert_pairs():
    with pytest.raises(NotAdmissible):
        chord.chord_slide_strict(MOB, 1, 1)
    with pytest.raises(NotAdmissible):
        chord.inverse_slide(MOB, 1, 1)


@pytest.mark.parametrize("case", [1, 2, 3, 4])
def test_each_slide_case_is_exercised(case):
    hits = [(t, i, e) for t in all_tcd(3) for i, e in chord.admissible_pairs(t) if chord.slide_case(t, i, e) == case]
    assert hits
    for t, i, e in hits:
        assert chord.slide_permutation(t, i, e) == chord.slide_permutation_by_placement(t, i, e)


def test_slide_twist_rule():
    # sliding over a twisted arc adds its twist to the moving arc
    for t in all_tcd(3):
        for i, e in chord.admissible_pairs(t):
            u, sigma = chord.slide_with_permutation(t, i, e)
            moved = t.arc_of(i)
            target_twist = t.site_twist(i + e)
            image = tuple(sorted(sigma[x - 1] for x in moved))
            assert u.twist(image) == (t.twist(moved) + target_twist) % 2


def test_flip_conjugation_identity():
    for t in all_tcd(3):
        n = t.rank
        w = chord.omega(n)
        for i, e in chord.admissible_pairs(t):
            lhs = chord.chord_slide(t, i, e)
            rhs = chord.star(chord.chord_slide(chord.star(t), w[i - 1], -e))
            assert lhs == rhs


def test_slides_preserve_invariants_exhaustively():
    for t in all_tcd(3):
        inv = (chord.boundary_count(t), t.is_orientable, chord.gf2_nullity(chord.intersection_matrix(t)))
        for i, e in chord.admissible_pairs(t):
            u = chord.chord_slide(t, i, e)
            assert (chord.boundary_count(u), u.is_orientable,
                    chord.gf2_nullity(chord.intersection_matrix(u))) == inv
            assert chord.chord_slide(u, *chord.inverse_slide(t, i, e)) == t


def test_type_is_constant_on_orbits_and_orbits_match_types():
    for n in range(4):
        seen = set()
        orbits = 0
        for t in chord.enumerate_tcd(n):
            if t in seen:
                continue
            orbit = chord.slide_orbit(t)
            seen |= orbit
            orbits += 1
            assert len({chord.classify_type(u) for u in orbit}) == 1
        # realizable types of rank n: b + 2g + t = n with t in {0,1,2}
        types = {(b, g, tt) for b in range(n + 1) for g in range(n + 1) for tt in range(3) if b + 2 * g + tt == n}
        assert orbits == len(types)


# ---------------------------------------------------------------- boundary graph

def test_boundary_graph_of_mob_is_one_path():
    g = chord.boundary_graph(MOB)
    assert set(g.vertices) == {(1, -1), (1, 1), (2, -1), (2, 1)}
    assert components_by_search(g) == 1
    assert all(g.degree(v) <= 2 for v in g.vertices)


@pytest.mark.parametrize("t, count", [(MOB, 1), (ANN, 2), (TOR, 1), (EMPTY, 0)])
def test_boundary_graph_components(t, count):
    assert components_by_search(chord.boundary_graph(t)) == count


def test_boundary_graph_edges_follow_the_rules():
    g = chord.boundary_graph(TCD(((1, 3), (2, 4)), (0, 1)))
    assert frozenset({(1, 1), (2, -1)}) in g.edges
    assert frozenset({(1, 1), (3, -1)}) in g.edges and frozenset({(1, -1), (3, 1)}) in g.edges
    assert frozenset({(2, 1), (4, 1)}) in g.edges and frozenset({(2, -1), (4, -1)}) in g.edges


@settings(max_examples=300, deadline=None)
@given(tcds(max_rank=4))
def test_boundary_count_matches_nullity(t):
    # one more boundary circle than the nullity of the intersection matrix
    closed = chord.boundary_graph(t, closed=True)
    assert components_by_search(closed) == chord.gf2_nullity(chord.intersection_matrix(t)) + 1
    assert chord.boundary_count(t) == components_by_search(chord.boundary_graph(t))


# ---------------------------------------------------------------- juxtaposition and insertion

def test_tor_over_mob_is_p2():
    assert chord.juxtapose(TOR, MOB) == P2


def test_mob_with_tor_inserted_is_rotated_p2():
    assert chord.insert(MOB, 1, TOR) == chord.permute(chord.cycle_c(3), P2)


@settings(max_examples=100, deadline=None)
@given(tcds())
def test_juxtapose_with_empty(t):
    assert chord.juxtapose(t, EMPTY) == t == chord.juxtapose(EMPTY, t)


def test_insertion_height_bounds():
    with pytest.raises(HeightOutOfRange):
        chord.insert(MOB, 3, TOR)


def test_insert_ends_are_juxtapositions():
    for t1 in all_tcd(2):
        for t2 in all_tcd(2):
            assert chord.insert(t2, 0, t1) == chord.juxtapose(t2, t1)
            assert chord.insert(t2, t2.size, t1) == chord.juxtapose(t1, t2)


def test_insertion_associativity_and_star():
    rng = random.Random(5)
    data = list(all_tcd(2))
    for _ in range(300):
        t1, t2, t3 = (rng.choice(data) for _ in range(3))
        n1, n2, n3 = t1.rank, t2.rank, t3.rank
        d1, d2 = rng.randint(0, 2 * n2), rng.randint(0, 2 * n3)
        assert chord.insert(t3, d2, chord.insert(t2, d1, t1)) == \
            chord.insert(chord.insert(t3, d2, t2), d1 + d2, t1)
        if n3:
            a, b = sorted(rng.sample(range(0, 2 * n3 + 1), 2))
            assert chord.insert(chord.insert(t3, b, t2), a, t1) == \
                chord.insert(chord.insert(t3, a, t1), b + 2 * n1, t2)
        n = n1 + n2
        assert chord.star(chord.insert(t2, d1, t1)) == chord.insert(chord.star(t2), 2 * n2 - d1, chord.star(t1))


def test_insertions_share_a_type():
    for t1 in all_tcd(2):
        for t2 in all_tcd(2):
            types = {chord.classify_type(chord.insert(t2, d, t1)) for d in range(t2.size + 1)}
            types.add(chord.classify_type(chord.juxtapose(t1, t2)))
            assert len(types) == 1


# ---------------------------------------------------------------- evacuation and boundary slides

def test_evacuation_carries_the_block_to_the_partner():
    for n1 in (1, 2):
        for n2 in (1, 2):
            for t1 in chord.enumerate_tcd(n1):
                for t2 in chord.enumerate_tcd(n2):
                    for d in range(2 * n2):
                        out = chord.evacuation(chord.insert(t2, d, t1), 1, d + 1, d + 2 * n1)
                        i = t2.partner(d + 1)
                        if t2.site_twist(d + 1) == 0:
                            assert out == chord.insert(t2, i, t1)
                        else:
                            assert out == chord.insert(t2, i - 1, chord.star(t1))


def test_downward_boundary_slide_raises_the_block():
    assert chord.boundary_slide_seq(chord.insert(ANN, 0, MOB), -1, 0, MOB) == chord.insert(ANN, 1, MOB)
    for t1 in all_tcd(2):
        for t2 in all_tcd(2):
            for d in range(t2.size):
                assert chord.boundary_slide_seq(chord.insert(t2, d, t1), -1, d, t1) == chord.insert(t2, d + 1, t1)


def test_upward_boundary_slide_lowers_the_block():
    for t1 in all_tcd(2):
        for t2 in all_tcd(2):
            for d in range(1, t2.size + 1):
                assert chord.boundary_slide_seq(chord.insert(t2, d, t1), 1, d, t1) == chord.insert(t2, d - 1, t1)


def test_boundary_slide_needs_an_insertion():
    with pytest.raises(NotAnInsertion):
        chord.boundary_slide_seq(chord.juxtapose(ANN, ANN), 1, 1, TOR)


def test_downward_evacuation_is_conjugate_to_upward():
    for t in all_tcd(3):
        n = t.rank
        for d1, d2 in itertools.combinations_with_replacement(range(1, 2 * n), 2):
            down = chord.evacuation(t, -1, d1, d2)
            up = chord.star(chord.evacuation(chord.star(t), 1, 2 * n + 1 - d2, 2 * n + 1 - d1))
            assert down == up


# ---------------------------------------------------------------- intersection matrix and type

@pytest.mark.parametrize("t, entries", [(MOB, ((1,),)), (ANN, ((0,),)), (TOR, ((0, 1), (1, 0)))])
def test_elementary_matrices(t, entries):
    assert chord.intersection_matrix(t).entries == entries


def test_direct_sum_for_tor_over_mob():
    m = chord.intersection_matrix(P2)
    assert m.entries == ((1, 0, 0), (0, 0, 1), (0, 1, 0))
    assert chord.gf2_nullity(m) == 0


def test_two_annuli_have_nullity_two():
    assert chord.gf2_nullity(chord.intersection_matrix(chord.juxtapose(ANN, ANN))) == 2


@settings(max_examples=200, deadline=None)
@given(tcds(), tcds())
def test_direct_sum_rule(t1, t2):
    m1, m2 = chord.intersection_matrix(t1), chord.intersection_matrix(t2)
    assert chord.intersection_matrix(chord.juxtapose(t2, t1)).entries == m1.direct_sum(m2)


def gf2_nullity_oracle(rows):
    """Nullity by listing every vector of the kernel."""
    n = len(rows)
    kernel = 0
    for x in itertools.product((0, 1), repeat=n):
        if all(sum(r[k] * x[k] for k in range(n)) % 2 == 0 for r in rows):
            kernel += 1
    return kernel.bit_length() - 1


@settings(max_examples=200, deadline=None)
@given(tcds(max_rank=4))
def test_nullity_against_kernel_count(t):
    m = chord.intersection_matrix(t)
    assert chord.gf2_nullity(m) == gf2_nullity_oracle(m.entries)


@pytest.mark.parametrize(
    "t, expected",
    [
        (TOR, SurfaceType(0, 1, 0)),
        (P2, SurfaceType(0, 1, 1)),
        (chord.juxtapose_all(MOB, MOB, MOB), SurfaceType(0, 1, 1)),
        (EMPTY, SurfaceType(0, 0, 0)),
        (chord.juxtapose(ANN, ANN), SurfaceType(2, 0, 0)),
    ],
)
def test_classify_type(t, expected):
    assert chord.classify_type(t) == expected
    assert expected.rank == t.rank


@pytest.mark.parametrize(
    "t, p, w",
    [
        (TCD(((1, 2), (3, 4)), (0, 0)), (1, 2), 0),
        (TCD(((1, 4), (2, 6), (3, 5)), (0, 1, 0)), (1, 4), 2),
        (TCD(((1, 4), (2, 6), (3, 5)), (0, 1, 0)), (2, 6), 3),
    ],
)
def test_width(t, p, w):
    assert chord.width(t, p) == w


def test_width_of_unknown_arc():
    with pytest.raises(UnknownArc):
        chord.width(TOR, (1, 2))


@pytest.mark.parametrize("t, flag", [(TOR, True), (ANN, False), (MOB, True)])
def test_tc_star(t, flag):
    assert chord.is_in_tc_star(t) is flag


def test_tc_star_agrees_with_invertible_matrix():
    for t in all_tcd(4):
        assert chord.is_in_tc_star(t) == (chord.gf2_nullity(chord.intersection_matrix(t)) == 0)


# ---------------------------------------------------------------- caravan form

@pytest.mark.parametrize("b, g, t", [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1), (1, 1, 2), (2, 0, 2)])
def test_caravan_data_have_empty_traces(b, g, t):
    st_ = SurfaceType(b, g, t)
    assert chord.caravan_normalize(chord.caravan(st_)) == (st_, [])


def test_mob_cubed_normalizes_through_the_rewrite():
    mmm = chord.juxtapose_all(MOB, MOB, MOB)
    st_, trace = chord.caravan_normalize(mmm)
    assert st_ == SurfaceType(0, 1, 1)
    assert tuple(trace[:4]) == chord.FIG9_MOVES
    assert chord.replay(mmm, trace) == chord.juxtapose(MOB, TOR)


def test_caravan_trace_replays_exhaustively():
    for t in all_tcd(4):
        st_, trace = chord.caravan_normalize(t)
        assert st_ == chord.classify_type(t)
        assert chord.replay(t, trace) == chord.caravan(st_)

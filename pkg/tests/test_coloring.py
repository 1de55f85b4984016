import pytest

from greatcircles import geometry
from greatcircles.arrangement import antipodal_involution, build_graph
from greatcircles.chains import enumerate_triangles, find_chain_pair
from greatcircles.coloring import (
    FOUND,
    HORIZON_SEQ_K7,
    INFEASIBLE,
    ODD_SEED_K5,
    ODD_SEED_K7,
    STAGE_EXACT,
    STAGE_PATTERN,
    SeedSequence,
    _odd_words,
    color_chain_heuristic,
    color_exact,
    count_colorings,
    format_coloring,
    kempe_flip,
    parse_coloring,
    verify_proper,
)
from greatcircles.errors import IncompleteColoring, TooLarge, VertexNotInPair

K4 = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]]


def antipodal_coloring(octahedron):
    sigma = antipodal_involution(octahedron)
    col = {}
    color = 1
    for v in range(6):
        if v not in col:
            col[v] = color
            col[sigma[v]] = color
            color += 1
    return col


def test_verify_proper_octahedron_antipodal(octahedron):
    # each antipodal pair is the unique non-adjacent pair, so one color per
    # pair is proper; the enumeration oracle confirms these are the only six
    col = antipodal_coloring(octahedron)
    assert verify_proper(octahedron, col) == []


def test_verify_proper_monochrome_returns_all_edges(octahedron):
    col = {v: 1 for v in range(6)}
    assert len(verify_proper(octahedron, col)) == octahedron.n_edges


def test_verify_proper_rejects_partial(octahedron):
    with pytest.raises(IncompleteColoring):
        verify_proper(octahedron, {0: 1})


def test_verify_proper_rejects_bad_color(octahedron):
    col = {v: 1 for v in range(6)}
    col[0] = 4
    with pytest.raises(ValueError):
        verify_proper(octahedron, col)


def test_color_exact_octahedron(octahedron):
    res = color_exact(octahedron)
    assert res.status == FOUND
    assert verify_proper(octahedron, res.coloring) == []


def test_color_exact_k4_infeasible():
    assert color_exact(K4).status == INFEASIBLE


def test_color_exact_cuboctahedron(cuboctahedron):
    res = color_exact(cuboctahedron)
    assert res.status == FOUND
    assert verify_proper(cuboctahedron, res.coloring) == []


def test_color_exact_deterministic(cuboctahedron):
    assert color_exact(cuboctahedron).coloring == color_exact(cuboctahedron).coloring


def test_color_exact_timeout_status(icosidodecahedron):
    res = color_exact(icosidodecahedron, timeout=0.0)
    assert res.status == "timeout"


def test_color_exact_seed_respected(octahedron):
    seed = {0: 2}
    res = color_exact(octahedron, seed_assignment=seed)
    assert res.status == FOUND
    assert res.coloring[0] == 2
    # a seed violating an edge is reported infeasible (seed does not extend)
    u, v = octahedron.edges[0].u, octahedron.edges[0].v
    assert color_exact(octahedron, seed_assignment={u: 1, v: 1}).status == INFEASIBLE


def test_count_colorings_octahedron_is_six(octahedron):
    # frozen from the exhaustive 3^6 enumeration: the three color classes
    # must be the three antipodal pairs, giving 3! labeled colorings
    assert count_colorings(octahedron) == 6


def test_count_colorings_single_edge():
    assert count_colorings([[1], [0]]) == 6


def test_count_colorings_cuboctahedron(cuboctahedron):
    # frozen from the exhaustive 3^12 enumeration; cross-check: vertex
    # 3-colorings of the cuboctahedron are proper 3-edge-colorings of the
    # cube (it is the cube's line graph), of which there are 4 * 3! = 24
    assert count_colorings(cuboctahedron) == 24


def test_count_colorings_agrees_with_k4():
    assert count_colorings(K4) == 0


def test_count_colorings_guard():
    with pytest.raises(TooLarge):
        count_colorings([[] for _ in range(17)])


@pytest.mark.parametrize("seed", range(4))
def test_count_and_exact_agree_on_feasibility(seed):
    g = build_graph(geometry.generate_random(3, seed))
    assert (count_colorings(g) > 0) == (color_exact(g).status == FOUND)


def test_kempe_flip_preserves_properness_and_is_involution(octahedron):
    col = color_exact(octahedron).coloring
    v = next(u for u in col if col[u] == 1)
    flipped = kempe_flip(octahedron, col, v, (1, 3))
    assert verify_proper(octahedron, flipped) == []
    assert flipped != col
    assert kempe_flip(octahedron, flipped, v, (1, 3)) == col


def test_kempe_flip_rejects_third_color(octahedron):
    col = color_exact(octahedron).coloring
    v = next(u for u in col if col[u] == 2)
    with pytest.raises(VertexNotInPair):
        kempe_flip(octahedron, col, v, (1, 3))
    with pytest.raises(ValueError):
        kempe_flip(octahedron, col, v, (2, 2))


# --- seed sequences ---------------------------------------------------------

def test_seed_sequences_literal_fixtures_valid():
    for seq in (*ODD_SEED_K5, *ODD_SEED_K7, HORIZON_SEQ_K7):
        assert seq.validate() == []
        assert seq.colors[0] == seq.colors[-1]


def test_seed_sequence_validator_catches_defects():
    assert SeedSequence((1, 1, 1)).validate()
    assert SeedSequence((1, 2, 3)).validate()  # open form: first != last
    assert SeedSequence((1, 2, 1), apex_marks=(7,)).validate()


@pytest.mark.parametrize("k", [5, 9, 13])
def test_odd_words_k1mod4_are_proper_cycles(k):
    w1, s1, w2, s2 = _odd_words(k, "k1mod4")
    for w, s in ((w1, s1), (w2, s2)):
        assert len(w) == k
        assert all(w[i] != w[(i + 1) % k] for i in range(k))
        assert s not in (w[0], w[-1])


@pytest.mark.parametrize("k", [7, 11, 15])
def test_odd_words_k3mod4_are_proper_cycles(k):
    w1, s1, w2, s2 = _odd_words(k, "k3mod4")
    for w, s in ((w1, s1), (w2, s2)):
        assert len(w) == k
        assert all(w[i] != w[(i + 1) % k] for i in range(k))
        assert s not in (w[0], w[-1])


def test_odd_words_match_literal_sequences():
    w1, s1, w2, s2 = _odd_words(5, "k1mod4")
    assert (s1, *w1, s1) == ODD_SEED_K5[0].colors
    assert (s2, *w2, s2) == ODD_SEED_K5[1].colors
    w1, s1, w2, s2 = _odd_words(7, "k3mod4")
    assert (s1, *w1, s1) == ODD_SEED_K7[0].colors
    assert (s2, *w2, s2) == ODD_SEED_K7[1].colors


# --- chain heuristic ---------------------------------------------------------

def chain_pair_of(g):
    search = find_chain_pair(g, enumerate_triangles(g), antipodal_involution(g))
    return search.pair if search.status == "found" else None


def test_heuristic_cuboctahedron_pattern_stage(cuboctahedron):
    pair = chain_pair_of(cuboctahedron)
    assert pair is not None
    res = color_chain_heuristic(cuboctahedron, pair)
    assert res.status == FOUND
    assert res.trace.stage == STAGE_PATTERN
    assert verify_proper(cuboctahedron, res.coloring) == []
    assert {res.coloring[v] for v in res.trace.apex_vertices} == {2}
    assert {res.coloring[v] for v in res.trace.cycle_vertices} <= {1, 3}


@pytest.mark.parametrize("k,seed", [(4, 0), (5, 0), (5, 3), (6, 0), (6, 1), (7, 0)])
def test_heuristic_random_instances_proper(k, seed):
    g = build_graph(geometry.generate_random(k, seed))
    res = color_chain_heuristic(g, chain_pair_of(g))
    assert res.status == FOUND
    assert verify_proper(g, res.coloring) == []
    assert res.trace.stage in (STAGE_PATTERN, "propagation", STAGE_EXACT)
    assert res.trace.notes


def test_heuristic_pattern_stage_structure_random_even():
    # whenever the pattern stage wins on an even instance, the chain cycles
    # carry only colors 1 and 3 and every apex is colored 2
    for seed in range(6):
        g = build_graph(geometry.generate_random(6, seed))
        pair = chain_pair_of(g)
        if pair is None:
            continue
        res = color_chain_heuristic(g, pair)
        assert res.status == FOUND
        if res.trace.stage == STAGE_PATTERN:
            assert {res.coloring[v] for v in res.trace.cycle_vertices} <= {1, 3}
            assert {res.coloring[v] for v in res.trace.apex_vertices} == {2}


def test_heuristic_without_chain_pair(octahedron):
    res = color_chain_heuristic(octahedron, None)
    assert res.status == FOUND
    assert res.trace.stage == STAGE_EXACT
    assert verify_proper(octahedron, res.coloring) == []


def test_heuristic_trace_populated(cuboctahedron):
    res = color_chain_heuristic(cuboctahedron, chain_pair_of(cuboctahedron))
    assert res.trace.parity == "even"
    assert res.trace.cycle_vertices and res.trace.apex_vertices


# --- coloring file format ------------------------------------------------------

def test_coloring_format_round_trip(octahedron):
    col = color_exact(octahedron).coloring
    text = format_coloring(col, "exact-fallback")
    assert text.rstrip().endswith("c stage=exact-fallback")
    back, stage = parse_coloring(text)
    assert back == col
    assert stage == "exact-fallback"

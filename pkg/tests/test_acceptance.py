"""Acceptance suite: one test per criterion, one printed verdict line each.

Run with `pytest -v tests/test_acceptance.py -s` to see the verdict lines.
The random corpus is k in 3..8 with 50 seeds each (300 instances), plus the
three named fixtures.
"""

import time
from collections import Counter

import pytest

from greatcircles import claims, geometry
from greatcircles.arrangement import (
    antipodal_involution,
    build_graph,
    is_automorphism,
    maps_faces_to_faces,
    parse_dimacs,
    to_dimacs,
)
from greatcircles.chains import enumerate_triangles, find_chain_pair, validate_chain_pair
from greatcircles.coloring import (
    FOUND,
    HORIZON_SEQ_K7,
    ODD_SEED_K5,
    ODD_SEED_K7,
    STAGE_PATTERN,
    color_chain_heuristic,
    color_exact,
    count_colorings,
    verify_proper,
)

KS = range(3, 9)
SEEDS = range(50)
HEURISTIC_KS = (4, 5, 6, 7)
HEURISTIC_SEEDS = range(20)
FIXTURES = ("octahedron", "cuboctahedron", "icosidodecahedron")


def record(num: int, name: str, ok: bool, detail: str = "") -> None:
    verdict = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {num:02d} {name}: {verdict}{suffix}")
    assert ok, f"criterion {num} ({name}) failed {suffix}"


@pytest.fixture(scope="module")
def corpus():
    graphs = {}
    for k in KS:
        for seed in SEEDS:
            graphs[(k, seed)] = build_graph(geometry.generate_random(k, seed))
    return graphs


@pytest.fixture(scope="module")
def fixture_graphs():
    return {name: build_graph(geometry.fixture_arrangement(name)) for name in FIXTURES}


def test_criterion_01_structural_invariants():
    ok = True
    worst = 0.0
    for k in KS:
        for seed in SEEDS:
            t0 = time.monotonic()
            g = build_graph(geometry.generate_random(k, seed))
            good = (
                g.n_vertices == k * (k - 1)
                and g.n_edges == 2 * k * (k - 1)
                and g.n_faces == k * (k - 1) + 2
                and all(len(ns) == 4 for ns in g.neighbors)
            )
            if good:
                directed = Counter()
                for f in g.faces:
                    n = len(f)
                    for i in range(n):
                        directed[(f.vertices[i], f.vertices[(i + 1) % n])] += 1
                good = len(directed) == 2 * g.n_edges and set(directed.values()) == {1}
            elapsed = time.monotonic() - t0
            worst = max(worst, elapsed)
            ok = ok and good and elapsed < 1.0
    record(1, "structural-invariants", ok, f"300 instances, worst build {worst:.3f}s")


def test_criterion_02_three_colorability_sweep(corpus, fixture_graphs):
    statuses = Counter()
    for g in list(corpus.values()) + list(fixture_graphs.values()):
        res = color_exact(g, timeout=60.0)
        statuses[res.status] += 1
        if res.status == FOUND and verify_proper(g, res.coloring):
            statuses["improper"] += 1
    ok = statuses == Counter({FOUND: 303})
    record(2, "three-colorability-sweep", ok, f"{dict(statuses)}")


def test_criterion_03_oracle_equivalence(corpus, fixture_graphs):
    ok = count_colorings(fixture_graphs["octahedron"]) == 6
    checked = 1
    for (k, seed), g in corpus.items():
        if k not in (3, 4):
            continue
        agrees = (count_colorings(g) > 0) == (color_exact(g).status == FOUND)
        ok = ok and agrees
        checked += 1
    record(3, "oracle-equivalence", ok, f"{checked} instances, octahedron count 6")


def test_criterion_04_cuboctahedron_chain_pair(fixture_graphs):
    g = fixture_graphs["cuboctahedron"]
    tris = enumerate_triangles(g)
    sigma = antipodal_involution(g)
    ok = len(tris) == 8 == 2 * g.k
    search = find_chain_pair(g, tris, sigma)
    ok = ok and search.status == "found"
    if search.status == "found":
        pair = search.pair
        problems, _ = validate_chain_pair(g, pair, sigma)
        ok = ok and not problems
        ok = ok and len(pair.first) == 4 and len(pair.second) == 4
        ok = ok and not (pair.first.triangle_indices & pair.second.triangle_indices)
        ok = ok and not (pair.first.edge_ids & pair.second.edge_ids)
        for t1, t2 in zip(pair.first.triangles, pair.second.triangles):
            ok = ok and frozenset(sigma[v] for v in t1.vertices) == frozenset(t2.vertices)
    record(4, "cuboctahedron-chain-pair", ok)


def test_criterion_05_antipodal_automorphism(corpus, fixture_graphs):
    ok = True
    for g in list(corpus.values()) + list(fixture_graphs.values()):
        sigma = antipodal_involution(g)
        ok = ok and all(sigma[v] != v for v in range(g.n_vertices))
        ok = ok and all(sigma[sigma[v]] == v for v in range(g.n_vertices))
        ok = ok and is_automorphism(g, sigma)
        ok = ok and maps_faces_to_faces(g, sigma)
        if not ok:
            break
    record(5, "antipodal-automorphism", ok, "303 instances")


def test_criterion_06_claim_harness(fixture_graphs):
    cub = claims.fixture_instance("cuboctahedron")
    icosi = claims.fixture_instance("icosidodecahedron")
    r1 = claims.check_claim("triangles_2k", cub)
    r2 = claims.check_claim("triangles_2k", icosi)
    ok = (r1.expected, r1.observed, r1.verdict) == ("8", "8", "PASS")
    ok = ok and (r2.expected, r2.observed, r2.verdict) == ("12", "20", "FAIL")
    a = claims.random_instance(3, 0)
    b = claims.random_instance(3, 1)
    r3 = claims.check_claim("fixed_k_isomorphic", a, second=b)
    ok = ok and r3.verdict == "PASS"
    record(6, "claim-harness", ok)


def test_criterion_07_heuristic_soundness(fixture_graphs):
    stages = Counter()
    ok = True
    for k in HEURISTIC_KS:
        for seed in HEURISTIC_SEEDS:
            g = build_graph(geometry.generate_random(k, seed))
            search = find_chain_pair(g, enumerate_triangles(g), antipodal_involution(g))
            pair = search.pair if search.status == "found" else None
            res = color_chain_heuristic(g, pair, timeout=60.0)
            good = (res.status == FOUND
                    and verify_proper(g, res.coloring) == []
                    and bool(res.trace.stage)
                    and bool(res.trace.notes))
            stages[res.trace.stage] += 1
            ok = ok and good
    g = fixture_graphs["cuboctahedron"]
    search = find_chain_pair(g, enumerate_triangles(g), antipodal_involution(g))
    res = color_chain_heuristic(g, search.pair)
    ok = ok and res.trace.stage == STAGE_PATTERN
    ok = ok and {res.coloring[v] for v in res.trace.apex_vertices} == {2}
    ok = ok and {res.coloring[v] for v in res.trace.cycle_vertices} <= {1, 3}
    record(7, "heuristic-soundness", ok, f"stages {dict(stages)}")


def test_criterion_08_seed_sequence_fixtures():
    seqs = (*ODD_SEED_K5, *ODD_SEED_K7, HORIZON_SEQ_K7)
    ok = all(s.validate() == [] for s in seqs)
    ok = ok and all(s.colors[0] == s.colors[-1] for s in seqs)
    record(8, "seed-sequence-fixtures", ok, f"{len(seqs)} sequences")


def test_criterion_09_dimacs_round_trip(fixture_graphs):
    ok = True
    for name, g in fixture_graphs.items():
        n, pairs = parse_dimacs(to_dimacs(g))
        original = sorted(tuple(sorted((e.u, e.v))) for e in g.edges)
        ok = ok and n == g.n_vertices and sorted(pairs) == original
    record(9, "dimacs-round-trip", ok)


def test_criterion_10_determinism(fixture_graphs):
    text1 = geometry.write_arrangement(geometry.generate_random(5, 7))
    text2 = geometry.write_arrangement(geometry.generate_random(5, 7))
    ok = text1 == text2
    insts = [claims.fixture_instance("cuboctahedron"), claims.random_instance(4, 0)]
    rep1 = claims.format_report(claims.sweep(["triangles_2k", "chain_pair_exists"], insts))
    rep2 = claims.format_report(claims.sweep(["triangles_2k", "chain_pair_exists"], insts))
    ok = ok and rep1 == rep2
    g = fixture_graphs["cuboctahedron"]
    ok = ok and color_exact(g).coloring == color_exact(g).coloring
    record(10, "determinism", ok)

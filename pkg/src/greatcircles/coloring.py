"""Vertex 3-coloring: verification, exact search, counting, and the chain heuristic.

Two independent routes to a coloring live here and are never merged
silently. `color_exact` is the oracle: most-constrained-first backtracking
with forward checking, deterministic for a fixed graph. The chain heuristic
is the artifact under study: it colors the two triangular chains by pattern
(alternating (1,3) link cycles plus color-2 apexes for even k, seeded link
words for odd k), extends by unique-color forcing, and only then falls back
to the exact solver; the trace always records which stage produced the
result.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .chains import ChainPair, TriangularChain
from .errors import IncompleteColoring, TooLarge, VertexNotInPair

COLORS = (1, 2, 3)

# result / trace status strings
FOUND = "found"
INFEASIBLE = "infeasible"
TIMEOUT = "timeout"

# stage tokens; these are wire-format values in coloring files, do not rename
STAGE_PATTERN = "pure-paper"
STAGE_PROPAGATION = "propagation"
STAGE_EXACT = "exact-fallback"

COUNT_GUARD = 16  # count_colorings enumerates 3^n assignments; hard cap on n

# A coloring is a plain map from vertex id to a color in COLORS.
Coloring = dict[int, int]


def as_adjacency(g) -> list[list[int]]:
    """Adjacency lists from an ArrangementGraph or from raw adjacency."""
    if hasattr(g, "neighbors"):
        return [list(ns) for ns in g.neighbors]
    return [list(ns) for ns in g]


def graph_edges(g) -> list[tuple[int, int]]:
    """Undirected edge list (u < v) from a graph or adjacency lists."""
    if hasattr(g, "edges"):
        return [tuple(sorted((e.u, e.v))) for e in g.edges]
    adj = as_adjacency(g)
    return [(u, v) for u in range(len(adj)) for v in adj[u] if u < v]


def verify_proper(g, coloring: Coloring) -> list[int]:
    """Indices of edges whose endpoints share a color; empty iff proper.

    The coloring must be total on the graph's vertices (IncompleteColoring)
    and use only colors 1..3 (ValueError).
    """
    adj = as_adjacency(g)
    for v in range(len(adj)):
        if v not in coloring:
            raise IncompleteColoring(f"vertex {v} has no color")
        if coloring[v] not in COLORS:
            raise ValueError(f"vertex {v} has color {coloring[v]}, expected one of {COLORS}")
    bad = []
    for i, (u, v) in enumerate(graph_edges(g)):
        if coloring[u] == coloring[v]:
            bad.append(i)
    return bad


@dataclass(frozen=True)
class ExactResult:
    """Outcome of the exact solver.

    status is "found" (coloring set), "infeasible" (search space exhausted,
    no proper 3-coloring extends the seed), or "timeout". With a seed
    assignment, "infeasible" says the *seed* does not extend, which is
    weaker than the graph being uncolorable.
    """

    status: str
    coloring: Coloring | None
    nodes: int
    elapsed: float


class _Timeout(Exception):
    pass


def color_exact(g, timeout: float = 60.0, seed_assignment: Coloring | None = None) -> ExactResult:
    """Backtracking 3-coloring with forward checking; deterministic.

    Vertex order is most-constrained-first (fewest remaining colors, ties by
    higher degree then lower index); colors are tried in ascending order.
    """
    adj = as_adjacency(g)
    n = len(adj)
    start = time.monotonic()
    domains = [set(COLORS) for _ in range(n)]
    assignment: Coloring = {}
    nodes = 0

    def assign(v: int, c: int, trail: list[tuple[int, int]]) -> bool:
        assignment[v] = c
        for w in adj[v]:
            if w not in assignment and c in domains[w]:
                domains[w].discard(c)
                trail.append((w, c))
                if not domains[w]:
                    return False
        return True

    def undo(v: int, trail: list[tuple[int, int]]) -> None:
        del assignment[v]
        for w, c in trail:
            domains[w].add(c)

    if seed_assignment:
        pre: list[tuple[int, int]] = []
        for v in sorted(seed_assignment):
            c = seed_assignment[v]
            if c not in COLORS:
                raise ValueError(f"seed color {c} for vertex {v} not in {COLORS}")
            if v in assignment:
                continue
            if c not in domains[v] or not assign(v, c, pre):
                return ExactResult(INFEASIBLE, None, 0, time.monotonic() - start)

    def pick() -> int | None:
        best = None
        best_key = None
        for v in range(n):
            if v in assignment:
                continue
            key = (len(domains[v]), -len(adj[v]), v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def search() -> bool:
        nonlocal nodes
        nodes += 1
        if time.monotonic() - start > timeout:
            raise _Timeout
        v = pick()
        if v is None:
            return True
        for c in sorted(domains[v]):
            trail: list[tuple[int, int]] = []
            if assign(v, c, trail) and search():
                return True
            undo(v, trail)
        return False

    try:
        ok = search()
    except _Timeout:
        return ExactResult(TIMEOUT, None, nodes, time.monotonic() - start)
    elapsed = time.monotonic() - start
    if ok:
        result = dict(assignment)
        assert not verify_proper(adj, result), "solver produced an improper coloring"
        return ExactResult(FOUND, result, nodes, elapsed)
    return ExactResult(INFEASIBLE, None, nodes, elapsed)


def count_colorings(g) -> int:
    """Exact number of proper 3-colorings, by enumerating all 3^n assignments.

    Labeled count, no symmetry quotient. This is the independent oracle for
    the backtracking solver, so it deliberately enumerates rather than
    searching; n is capped at COUNT_GUARD vertices (TooLarge).
    """
    adj = as_adjacency(g)
    n = len(adj)
    if n > COUNT_GUARD:
        raise TooLarge(f"count_colorings enumerates 3^n; n={n} exceeds the cap of {COUNT_GUARD}")
    if n == 0:
        return 1
    edges = graph_edges(adj)
    total_assignments = 3**n
    powers = 3 ** np.arange(n, dtype=np.int64)
    chunk = 3**12
    total = 0
    for lo in range(0, total_assignments, chunk):
        codes = np.arange(lo, min(lo + chunk, total_assignments), dtype=np.int64)
        digits = (codes[:, None] // powers) % 3
        ok = np.ones(len(codes), dtype=bool)
        for u, v in edges:
            ok &= digits[:, u] != digits[:, v]
        total += int(np.count_nonzero(ok))
    return total


def kempe_flip(g, coloring: Coloring, vertex: int, colors: tuple[int, int]) -> Coloring:
    """Swap the two colors on the Kempe component containing vertex.

    The component is the connected piece of the subgraph induced by the two
    color classes. Swapping preserves properness and applying the same flip
    twice restores the original coloring.
    """
    a, b = colors
    if a not in COLORS or b not in COLORS or a == b:
        raise ValueError(f"colors must be two distinct values from {COLORS}, got {colors}")
    if coloring.get(vertex) not in (a, b):
        raise VertexNotInPair(f"vertex {vertex} has color {coloring.get(vertex)}, not in {colors}")
    adj = as_adjacency(g)
    component = {vertex}
    stack = [vertex]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in component and coloring.get(w) in (a, b):
                component.add(w)
                stack.append(w)
    out = dict(coloring)
    for v in component:
        out[v] = b if coloring[v] == a else a
    return out


# --- seed sequences -----------------------------------------------------------

@dataclass(frozen=True)
class SeedSequence:
    """A chain-aligned cyclic color word, given in closed form (first = last).

    apex_marks are the positions of marked apex entries; an empty tuple
    means the word carries no apex markers (the horizon word, for example).
    """

    colors: tuple[int, ...]
    apex_marks: tuple[int, ...] = ()

    def validate(self) -> list[str]:
        problems = []
        if len(self.colors) < 2:
            problems.append("sequence too short")
            return problems
        for i in range(len(self.colors) - 1):
            if self.colors[i] == self.colors[i + 1]:
                problems.append(f"consecutive entries {i},{i + 1} are equal")
        if self.colors[0] != self.colors[-1]:
            problems.append("closed form requires first = last")
        for m in self.apex_marks:
            if not 0 <= m < len(self.colors):
                problems.append(f"apex mark {m} out of range")
        bad = [c for c in self.colors if c not in COLORS]
        if bad:
            problems.append(f"colors outside {COLORS}: {bad}")
        return problems

    @property
    def open_form(self) -> tuple[int, ...]:
        return self.colors[:-1]


# Literal odd-k seed words. Each pair is (light chain, dark chain); the
# starred entries (apex of the first triangle) are the marked positions.
ODD_SEED_K5 = (
    SeedSequence((3, 1, 2, 1, 3, 2, 3), apex_marks=(0, 6)),
    SeedSequence((1, 3, 2, 3, 1, 2, 1), apex_marks=(0, 6)),
)
ODD_SEED_K7 = (
    SeedSequence((3, 2, 3, 2, 3, 1, 3, 1, 3), apex_marks=(0, 8)),
    SeedSequence((3, 1, 3, 2, 3, 1, 3, 2, 3), apex_marks=(0, 8)),
)
# Colors around the horizon circle for k=7, closed form (12 vertices).
HORIZON_SEQ_K7 = SeedSequence((1, 2, 1, 3, 1, 2, 1, 2, 3, 2, 1, 2, 1))


def _odd_words(k: int, style: str) -> tuple[list[int], int, list[int], int]:
    """Link words and starred apex colors for odd k, by residue style.

    The k=5 and k=7 words follow a 4-periodic block structure; repeating the
    block extends each word to any k of the matching residue class mod 4.
    Returns (word1, star1, word2, star2); each word has length k, colors a
    proper odd cycle, and the star color differs from both word ends.
    """
    if style == "k1mod4":
        m = (k - 1) // 4
        w1 = [1, 2, 1, 3] * m + [2]
        w2 = [3, 2, 3, 1] * m + [2]
        return w1, 3, w2, 1
    if style == "k3mod4":
        m = (k - 3) // 4
        w1 = [2, 3] * (m + 1) + [1, 3] * m + [1]
        w2 = [1, 3, 2, 3] * m + [1, 3, 2]
        return w1, 3, w2, 3
    raise ValueError(f"unknown odd seed style {style!r}")


# --- chain heuristic ----------------------------------------------------------

@dataclass(frozen=True)
class HeuristicTrace:
    """What the heuristic actually did.

    stage is the wire-format token of the stage that produced the coloring
    ("pure-paper" = the pattern stage alone, "propagation" = pattern plus
    unique-color forcing, "exact-fallback" = the exact solver finished the
    job). cycle_vertices / apex_vertices are the chain link cycles and apex
    sets the pattern stage targeted.
    """

    stage: str
    parity: str
    pattern: str | None
    cycle_vertices: frozenset[int]
    apex_vertices: frozenset[int]
    levels: int
    notes: tuple[str, ...]


@dataclass(frozen=True)
class HeuristicResult:
    status: str  # "found" | "infeasible" | "timeout"
    coloring: Coloring | None
    trace: HeuristicTrace


class _StageAbort(Exception):
    pass


def _chain_cycle_data(chain: TriangularChain) -> tuple[list[int], list[int]]:
    """(links, apexes) for a chain; apex[i] is triangle i's non-link vertex."""
    n = len(chain.triangles)
    links = list(chain.links)
    apexes = []
    for i, t in enumerate(chain.triangles):
        rest = [v for v in t.vertices if v not in (links[i - 1], links[i])]
        if len(rest) != 1:
            raise _StageAbort(f"triangle at position {i} has no unique apex")
        apexes.append(rest[0])
    return links, apexes


def _try_set(assignment: Coloring, adj: Sequence[Sequence[int]], v: int, c: int) -> bool:
    """Assign v -> c unless it conflicts with an existing assignment."""
    if v in assignment:
        return assignment[v] == c
    if any(assignment.get(w) == c for w in adj[v]):
        return False
    assignment[v] = c
    return True


def _attempt_even(
    adj: Sequence[Sequence[int]], pair: ChainPair
) -> tuple[Coloring, bool, int, frozenset[int], frozenset[int], list[str]]:
    """Even-k pattern stage.

    2-color each chain's link cycle alternately with (1, 3), give every apex
    color 2, then color the rest level by level (colors 1, 2 alternating)
    outward from the apex set. Both alternation phases of each cycle are
    tried; the first conflict-free completion wins. Returns the assignment,
    whether it is total, the level count, the targeted vertex sets, and notes.
    """
    l1, a1 = _chain_cycle_data(pair.first)
    l2, a2 = _chain_cycle_data(pair.second)
    if len(set(l1)) != len(l1) or len(set(l2)) != len(l2):
        raise _StageAbort("link cycle repeats a vertex")
    cycle_vs = frozenset(l1) | frozenset(l2)
    apex_vs = frozenset(a1) | frozenset(a2)
    notes: list[str] = []
    fallback: Coloring | None = None
    for p1 in (0, 1):
        for p2 in (0, 1):
            asg: Coloring = {}
            ok = True
            for ring, phase in ((l1, p1), (l2, p2)):
                for i, v in enumerate(ring):
                    if not _try_set(asg, adj, v, (1, 3)[(i + phase) % 2]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                for v in sorted(apex_vs):
                    if not _try_set(asg, adj, v, 2):
                        ok = False
                        break
            levels = 0
            if ok:
                frontier = sorted(apex_vs)
                while True:
                    nxt = sorted({w for v in frontier for w in adj[v] if w not in asg})
                    if not nxt:
                        break
                    c = 1 if levels % 2 == 0 else 2
                    for w in nxt:
                        if not _try_set(asg, adj, w, c):
                            ok = False
                            break
                    if not ok:
                        break
                    levels += 1
                    frontier = nxt
            if ok and len(asg) == len(adj):
                notes.append(f"link-cycle phases ({p1},{p2}); {levels} levels beyond the apexes")
                return asg, True, levels, cycle_vs, apex_vs, notes
            if fallback is None:
                fallback = asg
    notes.append("pattern stage conflicted in all phase combinations")
    return fallback or {}, False, 0, cycle_vs, apex_vs, notes


def _attempt_odd(
    adj: Sequence[Sequence[int]], pair: ChainPair, k: int
) -> tuple[Coloring, str | None, frozenset[int], frozenset[int], list[str]]:
    """Odd-k pattern stage: seed link words and the starred apexes.

    The residue class of k mod 4 picks the word family; if seeding with
    (word1 on the first chain, word2 on the second) conflicts, the swapped
    assignment is attempted before giving up. Seeding is intentionally
    partial; forcing and the solver extend it.
    """
    l1, a1 = _chain_cycle_data(pair.first)
    l2, a2 = _chain_cycle_data(pair.second)
    if len(set(l1)) != len(l1) or len(set(l2)) != len(l2):
        raise _StageAbort("link cycle repeats a vertex")
    cycle_vs = frozenset(l1) | frozenset(l2)
    apex_vs = frozenset(a1) | frozenset(a2)
    style = "k1mod4" if k % 4 == 1 else "k3mod4"
    w1, s1, w2, s2 = _odd_words(k, style)
    notes: list[str] = []
    fallback: Coloring | None = None
    label: str | None = None
    for attempt, (wa, sa, wb, sb) in enumerate(((w1, s1, w2, s2), (w2, s2, w1, s1))):
        asg: Coloring = {}
        ok = _try_set(asg, adj, a1[0], sa)
        if ok:
            for i, v in enumerate(l1):
                if not _try_set(asg, adj, v, wa[i]):
                    ok = False
                    break
        if ok:
            ok = _try_set(asg, adj, a2[0], sb)
        if ok:
            for i, v in enumerate(l2):
                if not _try_set(asg, adj, v, wb[i]):
                    ok = False
                    break
        tag = style if attempt == 0 else style + "-swapped"
        if ok:
            notes.append(f"seeded link words, style {tag}")
            return asg, tag, cycle_vs, apex_vs, notes
        if fallback is None:
            fallback = asg
            label = tag + "-prefix"
    notes.append("seed words conflicted; keeping the proper prefix")
    return fallback or {}, label, cycle_vs, apex_vs, notes


def _force_unique(adj: Sequence[Sequence[int]], assignment: Coloring) -> tuple[str, Coloring]:
    """Assign every vertex whose neighbors leave exactly one color; repeat.

    Returns ("complete" | "stalled" | "contradiction", extended assignment).
    Forcing only draws necessary consequences, so a contradiction proves the
    input assignment extends to no proper coloring.
    """
    asg = dict(assignment)
    n = len(adj)
    while True:
        progress = False
        for v in range(n):
            if v in asg:
                continue
            taken = {asg[w] for w in adj[v] if w in asg}
            avail = [c for c in COLORS if c not in taken]
            if not avail:
                return "contradiction", asg
            if len(avail) == 1:
                asg[v] = avail[0]
                progress = True
        if len(asg) == n:
            return "complete", asg
        if not progress:
            return "stalled", asg


def _attempt_horizon(
    g, adj: Sequence[Sequence[int]], assignment: Coloring
) -> Coloring | None:
    """Try the horizon word on circle 0 when exactly its ring is uncolored.

    The literal word covers 12 ring vertices (k=7); every rotation and both
    directions are tried. Returns the extended assignment or None.
    """
    ring = list(g.circle_orders[0])
    word = list(HORIZON_SEQ_K7.open_form)
    uncolored = [v for v in range(len(adj)) if v not in assignment]
    if sorted(uncolored) != sorted(ring) or len(ring) != len(word):
        return None
    for direction in (1, -1):
        seq = ring[::direction]
        for shift in range(len(seq)):
            cand = dict(assignment)
            ok = True
            for i, v in enumerate(seq):
                if not _try_set(cand, adj, v, word[(i + shift) % len(word)]):
                    ok = False
                    break
            if ok:
                return cand
    return None


def color_chain_heuristic(
    g, chain_pair: ChainPair | None, timeout: float = 60.0
) -> HeuristicResult:
    """Chain-based 3-coloring with staged fallbacks and an honest trace.

    Stages: the parity-specific pattern stage; unique-color forcing from the
    pattern's partial assignment (plus the horizon word for odd k when it
    applies); the exact solver seeded with the partial; the exact solver
    unseeded. A returned coloring always passes verify_proper. status
    "infeasible" means even the unseeded exact solver found nothing, which
    makes the instance a counterexample candidate. chain_pair may be None
    (no chain pair was found for the instance); the heuristic then goes
    straight to the exact solver. Each exact call gets the full timeout.
    """
    adj = as_adjacency(g)
    notes: list[str] = []
    parity = "even" if g.k % 2 == 0 else "odd"
    pattern: str | None = None
    cycle_vs: frozenset[int] = frozenset()
    apex_vs: frozenset[int] = frozenset()
    levels = 0
    partial: Coloring = {}

    if chain_pair is None:
        notes.append("no chain pair available; direct exact solve")
    else:
        try:
            if parity == "even":
                partial, complete, levels, cycle_vs, apex_vs, st_notes = _attempt_even(adj, chain_pair)
                notes.extend(st_notes)
                if complete:
                    return _finish(g, adj, partial, STAGE_PATTERN, parity, pattern,
                                   cycle_vs, apex_vs, levels, notes)
            else:
                partial, pattern, cycle_vs, apex_vs, st_notes = _attempt_odd(adj, chain_pair, g.k)
                notes.extend(st_notes)
        except _StageAbort as exc:
            notes.append(f"pattern stage aborted: {exc}")
            partial = {}

    status, forced = _force_unique(adj, partial)
    if status == "complete":
        notes.append("unique-color forcing completed the coloring")
        return _finish(g, adj, forced, STAGE_PROPAGATION, parity, pattern,
                       cycle_vs, apex_vs, levels, notes)
    if status == "stalled" and parity == "odd":
        extended = _attempt_horizon(g, adj, forced)
        if extended is not None:
            notes.append("horizon ring word applied to circle 0")
            status2, forced2 = _force_unique(adj, extended)
            if status2 == "complete":
                return _finish(g, adj, forced2, STAGE_PROPAGATION, parity, pattern,
                               cycle_vs, apex_vs, levels, notes)
            if status2 == "stalled":
                forced = forced2
            else:
                notes.append("horizon word did not extend; discarded")
    if status == "contradiction":
        notes.append("forcing hit a contradiction: the pattern seed extends to no coloring")

    attempts: list[Coloring | None] = []
    if status != "contradiction" and forced:
        attempts.append(forced)
    attempts.append(None)
    for seed in attempts:
        result = color_exact(adj, timeout=timeout, seed_assignment=seed)
        seeded = seed is not None
        if result.status == FOUND:
            notes.append("exact solver finished from the pattern partial" if seeded
                         else "exact solver ran unseeded")
            return _finish(g, adj, result.coloring, STAGE_EXACT, parity, pattern,
                           cycle_vs, apex_vs, levels, notes)
        if result.status == TIMEOUT:
            notes.append("exact solver timed out")
            return HeuristicResult(TIMEOUT, None, _trace(STAGE_EXACT, parity, pattern,
                                                         cycle_vs, apex_vs, levels, notes))
        if not seeded:
            notes.append("unseeded exact solver proved infeasibility")
            return HeuristicResult(INFEASIBLE, None, _trace(STAGE_EXACT, parity, pattern,
                                                            cycle_vs, apex_vs, levels, notes))
        notes.append("pattern partial does not extend; retrying unseeded")
    raise AssertionError("unreachable")


def _trace(stage, parity, pattern, cycle_vs, apex_vs, levels, notes) -> HeuristicTrace:
    return HeuristicTrace(stage, parity, pattern, cycle_vs, apex_vs, levels, tuple(notes))


def _finish(g, adj, coloring, stage, parity, pattern, cycle_vs, apex_vs, levels, notes) -> HeuristicResult:
    bad = verify_proper(adj, coloring)
    if bad:
        raise AssertionError(f"heuristic produced an improper coloring (edges {bad})")
    return HeuristicResult(FOUND, dict(coloring),
                           _trace(stage, parity, pattern, cycle_vs, apex_vs, levels, notes))


# --- coloring file format -------------------------------------------------------
#
# one "v <vertex-id> <color>" line per vertex (ids 1-indexed, matching the
# DIMACS export), then a trailing comment "c stage=<stage token>"

def format_coloring(coloring: Coloring, stage: str) -> str:
    lines = [f"v {v + 1} {coloring[v]}" for v in sorted(coloring)]
    lines.append(f"c stage={stage}")
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> tuple[Coloring, str | None]:
    """Parse coloring lines; returns (coloring, stage or None)."""
    out: Coloring = {}
    stage: str | None = None
    for ln in text.splitlines():
        t = ln.split()
        if not t:
            continue
        if t[0] == "c":
            rest = ln.split(None, 1)[1] if len(t) > 1 else ""
            if rest.startswith("stage="):
                stage = rest[len("stage="):].strip()
            continue
        if t[0] == "v" and len(t) == 3:
            out[int(t[1]) - 1] = int(t[2])
    return out, stage

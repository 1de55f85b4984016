"""Triangular faces, their antipodal pairing, and closed triangular chains.

A triangular chain is a cyclic sequence of pairwise edge-disjoint triangles
in which consecutive triangles share exactly one vertex (the link). The
search looks for a chain of exactly k triangles together with its antipodal
mirror image, such that the two chains share no triangle and no edge.
Whether such a pair exists is treated as an observable fact about each
instance, not an assumption; the search reports found / not-found / cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arrangement import ArrangementGraph

DEFAULT_NODE_BUDGET = 2_000_000


@dataclass(frozen=True)
class Triangle:
    """A triangular face; index is its rank in the deterministic enumeration."""

    index: int
    vertices: tuple[int, int, int]  # face cyclic order
    edges: tuple[int, int, int]


@dataclass(frozen=True)
class TriangularChain:
    """Closed chain: triangles[i] and triangles[i+1 mod n] share exactly links[i]."""

    triangles: tuple[Triangle, ...]
    links: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.triangles)

    @property
    def triangle_indices(self) -> frozenset[int]:
        return frozenset(t.index for t in self.triangles)

    @property
    def edge_ids(self) -> frozenset[int]:
        return frozenset(e for t in self.triangles for e in t.edges)

    @property
    def vertex_ids(self) -> frozenset[int]:
        return frozenset(v for t in self.triangles for v in t.vertices)


@dataclass(frozen=True)
class ChainPair:
    """Two disjoint chains; the second is the antipodal image of the first.

    The first chain plays the role of the foreground side, the second of the
    background side; `side_of` reports which side a triangle index is on.
    """

    first: TriangularChain
    second: TriangularChain

    def side_of(self, triangle_index: int) -> str | None:
        if triangle_index in self.first.triangle_indices:
            return "foreground"
        if triangle_index in self.second.triangle_indices:
            return "background"
        return None


@dataclass(frozen=True)
class ChainSearch:
    """Outcome of the chain search.

    status: "found" | "not-found" | "cutoff". A cutoff means the node budget
    ran out before the space was exhausted, so absence is not established.
    longest is the longest open chain reached during the search.
    """

    status: str
    pair: ChainPair | None
    longest: int
    nodes: int


def enumerate_triangles(g: ArrangementGraph) -> list[Triangle]:
    """All triangular faces, ordered lexicographically by sorted vertex ids."""
    tris = [f for f in g.faces if len(f) == 3]
    tris.sort(key=lambda f: tuple(sorted(f.vertices)))
    return [Triangle(i, f.vertices, f.edges) for i, f in enumerate(tris)]


def mirror_pairing(
    triangles: Sequence[Triangle], sigma: Sequence[int]
) -> list[tuple[Triangle, Triangle]]:
    """Pair every triangle with its antipodal image.

    The antipodal involution is a face-preserving automorphism, so the
    image of a triangle is again a triangle and the pairing is a perfect
    matching; a failure here means the inputs are inconsistent.
    """
    by_verts = {frozenset(t.vertices): t for t in triangles}
    pairs = []
    for t in triangles:
        img = frozenset(sigma[v] for v in t.vertices)
        partner = by_verts.get(img)
        if partner is None:
            raise ValueError(f"antipodal image of triangle {t.index} is not a triangular face")
        if partner.index == t.index:
            raise ValueError(f"triangle {t.index} maps to itself under the involution")
        if t.index < partner.index:
            pairs.append((t, partner))
    if 2 * len(pairs) != len(triangles):
        raise ValueError("antipodal pairing is not a perfect matching")
    return pairs


def find_chain_pair(
    g: ArrangementGraph,
    triangles: Sequence[Triangle],
    sigma: Sequence[int],
    max_nodes: int | None = DEFAULT_NODE_BUDGET,
) -> ChainSearch:
    """Depth-first search for a closed chain of exactly k triangles plus its mirror.

    Two triangles may be consecutive in a chain iff they share exactly one
    vertex and no edge. The chain under construction also stays disjoint,
    in triangles and in edges, from its own antipodal image, so that the
    mirror chain can be returned alongside it. Candidates are tried lowest
    triangle index first, which makes the result deterministic; a chain is
    discovered from its lowest-index member.
    """
    k = g.k
    if k < 4:
        raise ValueError(f"chain search needs k >= 4, got k={k}")
    n = len(triangles)
    verts = [frozenset(t.vertices) for t in triangles]
    tedges = [frozenset(t.edges) for t in triangles]
    mirror = _mirror_indices(triangles, sigma)
    edge_sigma = _edge_involution(g, sigma)
    edge_images = [frozenset(edge_sigma[e] for e in te) for te in tedges]
    # a triangle sharing an edge with its own mirror can never join a chain
    usable = [not (tedges[i] & edge_images[i]) for i in range(n)]

    nodes = 0
    longest = 0
    cutoff = False
    found: list[int] | None = None

    def extend(chain: list[int], used_tris: set[int], used_edges: set[int]) -> bool:
        nonlocal nodes, longest, cutoff, found
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            cutoff = True
            return True
        longest = max(longest, len(chain))
        if len(chain) == k:
            if len(verts[chain[-1]] & verts[chain[0]]) == 1:
                found = list(chain)
                return True
            return False
        last = chain[-1]
        for t in range(chain[0] + 1, n):
            if t in used_tris or not usable[t]:
                continue
            if len(verts[t] & verts[last]) != 1:
                continue
            if (tedges[t] | edge_images[t]) & used_edges:
                continue
            chain.append(t)
            used_tris.update((t, mirror[t]))
            added = (tedges[t] | edge_images[t]) - used_edges
            used_edges.update(added)
            if extend(chain, used_tris, used_edges):
                return True
            chain.pop()
            used_tris.difference_update((t, mirror[t]))
            used_edges.difference_update(added)
        return False

    for start in range(n):
        if not usable[start]:
            continue
        chain = [start]
        used_tris = {start, mirror[start]}
        used_edges = set(tedges[start] | edge_images[start])
        if extend(chain, used_tris, used_edges):
            break

    if found is not None:
        pair = _assemble_pair(triangles, sigma, mirror, found)
        return ChainSearch("found", pair, longest, nodes)
    return ChainSearch("cutoff" if cutoff else "not-found", None, longest, nodes)


def _mirror_indices(triangles: Sequence[Triangle], sigma: Sequence[int]) -> list[int]:
    by_verts = {frozenset(t.vertices): t.index for t in triangles}
    out = []
    for t in triangles:
        img = frozenset(sigma[v] for v in t.vertices)
        out.append(by_verts[img])
    return out


def _edge_involution(g: ArrangementGraph, sigma: Sequence[int]) -> list[int]:
    by_ends = {frozenset((e.u, e.v)): e.index for e in g.edges}
    return [by_ends[frozenset((sigma[e.u], sigma[e.v]))] for e in g.edges]


def _assemble_pair(
    triangles: Sequence[Triangle],
    sigma: Sequence[int],
    mirror: Sequence[int],
    chain: Sequence[int],
) -> ChainPair:
    n = len(chain)
    tris = [triangles[i] for i in chain]
    links = []
    for i in range(n):
        shared = set(tris[i].vertices) & set(tris[(i + 1) % n].vertices)
        assert len(shared) == 1, "chain invariant broken during assembly"
        links.append(shared.pop())
    first = TriangularChain(tuple(tris), tuple(links))
    second = TriangularChain(
        tuple(triangles[mirror[i]] for i in chain),
        tuple(sigma[v] for v in links),
    )
    return ChainPair(first, second)


def validate_chain(g: ArrangementGraph, chain: TriangularChain) -> tuple[list[str], list[str]]:
    """Check the chain invariants; returns (problems, warnings).

    Problems break the definition (edge sharing, wrong link counts, an open
    chain). Extra vertex sharing between non-consecutive triangles and
    repeated link vertices are only reported as warnings, since the chain
    definition constrains edges, not vertices.
    """
    problems: list[str] = []
    warnings: list[str] = []
    n = len(chain.triangles)
    if n < 3:
        problems.append(f"chain has only {n} triangles")
        return problems, warnings
    if len({t.index for t in chain.triangles}) != n:
        problems.append("chain repeats a triangle")
    if len(chain.links) != n:
        problems.append(f"chain of {n} triangles has {len(chain.links)} links")
        return problems, warnings
    for i in range(n):
        for j in range(i + 1, n):
            if set(chain.triangles[i].edges) & set(chain.triangles[j].edges):
                problems.append(f"triangles at positions {i} and {j} share an edge")
    for i in range(n):
        a = set(chain.triangles[i].vertices)
        b = set(chain.triangles[(i + 1) % n].vertices)
        shared = a & b
        if len(shared) != 1:
            problems.append(
                f"consecutive triangles at positions {i},{(i + 1) % n} share {len(shared)} vertices"
            )
        elif chain.links[i] not in shared:
            problems.append(f"recorded link at position {i} is not the shared vertex")
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            shared = set(chain.triangles[i].vertices) & set(chain.triangles[j].vertices)
            if shared:
                warnings.append(
                    f"non-consecutive triangles at positions {i},{j} share vertices {sorted(shared)}"
                )
    if len(set(chain.links)) != len(chain.links):
        warnings.append("link vertices are not pairwise distinct")
    return problems, warnings


def validate_chain_pair(
    g: ArrangementGraph,
    pair: ChainPair,
    sigma: Sequence[int] | None = None,
) -> tuple[list[str], list[str]]:
    """Check both chains plus the pair-level invariants; (problems, warnings)."""
    p1, w1 = validate_chain(g, pair.first)
    p2, w2 = validate_chain(g, pair.second)
    problems = [f"first: {m}" for m in p1] + [f"second: {m}" for m in p2]
    warnings = [f"first: {m}" for m in w1] + [f"second: {m}" for m in w2]
    if pair.first.triangle_indices & pair.second.triangle_indices:
        problems.append("chains share a triangle")
    if pair.first.edge_ids & pair.second.edge_ids:
        problems.append("chains share an edge")
    if sigma is not None:
        n = len(pair.first.triangles)
        if len(pair.second.triangles) != n:
            problems.append("chains differ in length")
        else:
            for i in range(n):
                img = frozenset(sigma[v] for v in pair.first.triangles[i].vertices)
                if img != frozenset(pair.second.triangles[i].vertices):
                    problems.append(f"second chain at position {i} is not the antipodal image")
            if tuple(sigma[v] for v in pair.first.links) != pair.second.links:
                problems.append("second chain links are not the antipodal link images")
    return problems, warnings


def format_chain_report(pair: ChainPair) -> str:
    """Plain-text chain listing: vertex triples in cyclic order plus links."""
    lines = [f"triangular chain pair: 2 x {len(pair.first)} triangles"]
    for label, chain in (("foreground", pair.first), ("background", pair.second)):
        lines.append(f"chain ({label}):")
        for i, t in enumerate(chain.triangles):
            v = t.vertices
            lines.append(f"  triangle ({v[0]} {v[1]} {v[2]})  link to next: {chain.links[i]}")
    return "\n".join(lines) + "\n"

"""The 4-regular arrangement graph of a simple set of great circles.

Vertices are the circle-pair intersection points, identified combinatorially
by (circle pair, sign) rather than by coordinates; edges are the arcs
between consecutive points along each circle. The graph carries a rotation
system (the cyclic order of the four edge ends around each vertex,
counterclockwise as seen from outside the sphere), so the faces of the
spherical embedding are a combinatorial consequence; they are traced once
at build time and cached on the graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import geometry
from .errors import ArrangementFormatError, CorruptRotation, NotSimple, TooFewCircles
from .geometry import GreatCircle, SpherePoint


@dataclass(frozen=True)
class Vertex:
    index: int
    pair: tuple[int, int]  # host circle ids, i < j
    sign: int              # +1 = canonical intersection point, -1 = its antipode
    point: SpherePoint


@dataclass(frozen=True)
class Edge:
    index: int
    u: int
    v: int
    circle: int  # host circle id; u and v are consecutive on that circle


@dataclass(frozen=True)
class Face:
    """One face of the embedding: cyclic vertex and edge lists, in step.

    edges[i] joins vertices[i] and vertices[(i+1) % len]. The cycle is
    rotated so it starts at the smallest vertex id.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True, eq=False)
class ArrangementGraph:
    """Immutable arrangement graph; safe to share read-only across threads."""

    k: int
    circles: tuple[GreatCircle, ...]
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    rotation: tuple[tuple[int, int, int, int], ...]  # edge ids, CCW from outside
    circle_orders: tuple[tuple[int, ...], ...]       # cyclic vertex ids per circle
    faces: tuple[Face, ...]
    neighbors: tuple[tuple[int, ...], ...]           # sorted adjacent vertex ids

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_faces(self) -> int:
        return len(self.faces)


def build_graph(
    circles: Sequence[GreatCircle],
    eps_dup: float = geometry.EPS_DUP,
    eps_on: float = geometry.EPS_ON,
    eps_sep: float = geometry.EPS_SEP,
) -> ArrangementGraph:
    """Build the arrangement graph of a simple arrangement.

    Requires k >= 3 (TooFewCircles) and simplicity (NotSimple). Vertices are
    ordered by (pair, sign) with the canonical point first, edges circle by
    circle following each circle's cyclic order.
    """
    k = len(circles)
    if k < 3:
        raise TooFewCircles(f"need k >= 3 circles to build a graph, got {k}")
    geometry.validate_distinct(circles, eps_dup)
    if not geometry.check_simple(circles, eps_sep, eps_dup):
        raise NotSimple("three or more circles pass through a common point")

    vertices: list[Vertex] = []
    for i in range(k):
        for j in range(i + 1, k):
            p, q = geometry.intersect_pair(circles[i], circles[j], eps_dup)
            for sign, pt in ((1, p), (-1, q)):
                vertices.append(Vertex(len(vertices), (i, j), sign, pt))

    edges: list[Edge] = []
    incident: list[list[int]] = [[] for _ in vertices]
    circle_orders: list[tuple[int, ...]] = []
    for c in circles:
        ids = [v.index for v in vertices if c.id in v.pair]
        pts = [vertices[i].point for i in ids]
        order = geometry.circular_order(c, pts, eps_on, eps_sep)
        ring = [ids[i] for i in order]
        circle_orders.append(tuple(ring))
        for a, b in zip(ring, ring[1:] + ring[:1]):
            e = Edge(len(edges), a, b, c.id)
            edges.append(e)
            incident[a].append(e.index)
            incident[b].append(e.index)

    rotation: list[tuple[int, int, int, int]] = []
    for v in vertices:
        if len(incident[v.index]) != 4:
            raise NotSimple(f"vertex {v.index} has degree {len(incident[v.index])}, expected 4")
        u_ax, v_ax = geometry.circle_frame(v.point)

        def tangent_angle(eid: int, _v: Vertex = v, _u: np.ndarray = u_ax, _w: np.ndarray = v_ax) -> float:
            e = edges[eid]
            other = vertices[e.v if e.u == _v.index else e.u].point
            d = other - float(np.dot(other, _v.point)) * _v.point
            return math.atan2(float(np.dot(d, _w)), float(np.dot(d, _u)))

        rotation.append(tuple(sorted(incident[v.index], key=tangent_angle)))

    faces = tuple(trace_faces(len(vertices), edges, rotation))

    neighbor_sets: list[set[int]] = [set() for _ in vertices]
    for e in edges:
        if e.u == e.v:
            raise NotSimple(f"loop edge at vertex {e.u}")
        if e.v in neighbor_sets[e.u]:
            raise NotSimple(f"parallel edges between vertices {e.u} and {e.v}")
        neighbor_sets[e.u].add(e.v)
        neighbor_sets[e.v].add(e.u)
    neighbors = tuple(tuple(sorted(s)) for s in neighbor_sets)

    return ArrangementGraph(
        k=k,
        circles=tuple(circles),
        vertices=tuple(vertices),
        edges=tuple(edges),
        rotation=tuple(rotation),
        circle_orders=tuple(circle_orders),
        faces=faces,
        neighbors=neighbors,
    )


def trace_faces(
    n_vertices: int,
    edges: Sequence[Edge],
    rotation: Sequence[Sequence[int]],
) -> list[Face]:
    """Faces of the embedding, by orbit tracing over directed edges.

    From a directed edge, reverse it, then step one position clockwise in
    the rotation at the new tail; iterating traces one face boundary, and
    every directed edge belongs to exactly one face. Any inconsistency in
    the rotation tables (a vertex whose rotation does not list an incoming
    edge, or an orbit that collides with an already traced one) raises
    CorruptRotation.
    """
    slot: list[dict[int, int]] = [{} for _ in range(n_vertices)]
    for w, ring in enumerate(rotation):
        for s, eid in enumerate(ring):
            slot[w][eid] = s

    seen: set[tuple[int, bool]] = set()
    faces: list[Face] = []
    for eid in range(len(edges)):
        for forward in (True, False):
            start = (eid, forward)
            if start in seen:
                continue
            verts: list[int] = []
            eids: list[int] = []
            cur = start
            while True:
                seen.add(cur)
                ceid, cdir = cur
                e = edges[ceid]
                tail, head = (e.u, e.v) if cdir else (e.v, e.u)
                verts.append(tail)
                eids.append(ceid)
                if ceid not in slot[head]:
                    raise CorruptRotation(f"rotation at vertex {head} does not list edge {ceid}")
                ring = rotation[head]
                nxt = ring[(slot[head][ceid] - 1) % len(ring)]
                cur = (nxt, edges[nxt].u == head)
                if cur == start:
                    break
                if cur in seen:
                    raise CorruptRotation("face tracing revisited a directed edge")
            m = verts.index(min(verts))
            faces.append(Face(tuple(verts[m:] + verts[:m]), tuple(eids[m:] + eids[:m])))
    return faces


def enumerate_faces(g: ArrangementGraph) -> tuple[Face, ...]:
    """All faces of the embedding (computed at build time and cached)."""
    return g.faces


def antipodal_involution(g: ArrangementGraph) -> tuple[int, ...]:
    """The vertex permutation sending each intersection point to its antipode.

    A fixed-point-free automorphism of order 2 that maps every face to a
    face (its mirror image); see `is_automorphism` / `maps_faces_to_faces`
    for the checkable properties.
    """
    vid = {(v.pair, v.sign): v.index for v in g.vertices}
    return tuple(vid[(v.pair, -v.sign)] for v in g.vertices)


def is_automorphism(g: ArrangementGraph, perm: Sequence[int]) -> bool:
    """True when perm maps the edge set onto itself."""
    eset = {frozenset((e.u, e.v)) for e in g.edges}
    return all(frozenset((perm[e.u], perm[e.v])) in eset for e in g.edges)


def cycle_key(vertices: Iterable[int]) -> tuple[int, ...]:
    """Canonical key of a cyclic sequence, invariant to rotation and direction."""
    seq = list(vertices)
    best: tuple[int, ...] | None = None
    for s in (seq, seq[::-1]):
        for r in range(len(s)):
            cand = tuple(s[r:] + s[:r])
            if best is None or cand < best:
                best = cand
    return best if best is not None else ()


def maps_faces_to_faces(g: ArrangementGraph, perm: Sequence[int]) -> bool:
    """True when the induced action of perm sends every face to a face."""
    keys = {cycle_key(f.vertices) for f in g.faces}
    return all(cycle_key(perm[v] for v in f.vertices) in keys for f in g.faces)


# --- DIMACS col format --------------------------------------------------------

def to_dimacs(g: ArrangementGraph) -> str:
    """DIMACS col export; vertices are 1-indexed in vertex-list order."""
    lines = [f"p edge {g.n_vertices} {g.n_edges}"]
    for e in g.edges:
        a, b = sorted((e.u, e.v))
        lines.append(f"e {a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Parse a DIMACS col file into (vertex count, 0-indexed edge list)."""
    n: int | None = None
    declared: int | None = None
    out: list[tuple[int, int]] = []
    for ln in text.splitlines():
        t = ln.split()
        if not t or t[0] == "c":
            continue
        if t[0] == "p":
            if len(t) != 4 or t[1] != "edge":
                raise ArrangementFormatError(f"bad problem line: {ln!r}")
            n, declared = int(t[2]), int(t[3])
        elif t[0] == "e":
            if len(t) != 3:
                raise ArrangementFormatError(f"bad edge line: {ln!r}")
            u, v = int(t[1]), int(t[2])
            if n is None:
                raise ArrangementFormatError("edge line before problem line")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ArrangementFormatError(f"edge endpoint out of range: {ln!r}")
            out.append((min(u, v) - 1, max(u, v) - 1))
    if n is None:
        raise ArrangementFormatError("missing 'p edge' header")
    if declared is not None and declared != len(out):
        raise ArrangementFormatError(f"header declares {declared} edges, file has {len(out)}")
    return n, out


def adjacency_from_edges(n: int, pairs: Iterable[tuple[int, int]]) -> list[list[int]]:
    """Adjacency lists (sorted, deduplicated) from an edge list."""
    sets: list[set[int]] = [set() for _ in range(n)]
    for u, v in pairs:
        if u != v:
            sets[u].add(v)
            sets[v].add(u)
    return [sorted(s) for s in sets]

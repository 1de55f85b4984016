"""Static SVG figures of arrangements via stereographic projection.

The projection pole is picked by a grid search maximizing the angular
distance to every circle, so no circle blows up through the pole; with
horizon=True the pole of circle 0 is used instead, which maps circle 0 to
the unit circle of the drawing (the horizon view). Circles and face arcs
are drawn as densely sampled polylines; stereographic projection is
conformal enough at this sampling that the figures read as true circles.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .arrangement import ArrangementGraph
from .chains import ChainPair
from .coloring import Coloring
from .geometry import circle_frame, unit

PALETTE = {1: "red", 2: "green", 3: "blue"}
UNCOLORED = "#888888"
CHAIN_FILLS = ("#d3d3d3", "#6e6e6e")  # foreground light grey, background dark grey
CIRCLE_SAMPLES = 256
ARC_SAMPLES = 24


def fibonacci_sphere(n: int) -> np.ndarray:
    """n well-spread unit vectors (golden-angle spiral)."""
    i = np.arange(n, dtype=float) + 0.5
    phi = math.pi * (1.0 + math.sqrt(5.0)) * i
    z = 1.0 - 2.0 * i / n
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def choose_pole(g: ArrangementGraph, horizon: bool = False, samples: int = 2000) -> np.ndarray:
    """Projection pole: farthest grid point from all circles, or circle 0's pole."""
    if horizon:
        return np.array(g.circles[0].normal, dtype=float)
    grid = fibonacci_sphere(samples)
    normals = np.stack([c.normal for c in g.circles])
    # angular distance from a point to a great circle is |asin(p . n)|
    dist = np.abs(np.arcsin(np.clip(grid @ normals.T, -1.0, 1.0)))
    return grid[int(np.argmax(dist.min(axis=1)))]


def stereographic(points: np.ndarray, pole: np.ndarray) -> np.ndarray:
    """Project unit vectors from the pole onto the equatorial plane."""
    u, v = circle_frame(pole)
    t = 1.0 - points @ pole
    return np.stack([(points @ u) / t, (points @ v) / t], axis=1)


def _slerp(a: np.ndarray, b: np.ndarray, steps: int) -> np.ndarray:
    omega = math.atan2(float(np.linalg.norm(np.cross(a, b))), float(np.dot(a, b)))
    ts = np.linspace(0.0, 1.0, steps)
    if omega < 1e-12:
        return np.tile(a, (steps, 1))
    return (np.sin((1 - ts)[:, None] * omega) * a + np.sin(ts[:, None] * omega) * b) / math.sin(omega)


def render_svg(
    g: ArrangementGraph,
    coloring: Coloring | None = None,
    chain_pair: ChainPair | None = None,
    horizon: bool = False,
    width: int = 640,
) -> str:
    """Render the arrangement; deterministic bytes for identical inputs.

    Vertices are disks filled by the fixed palette (1=red, 2=green, 3=blue,
    grey when no coloring is given); the two chains, when given, are shaded
    light and dark grey.
    """
    pole = choose_pole(g, horizon=horizon)
    pts = np.stack([v.point for v in g.vertices])
    proj = stereographic(pts, pole)

    lo = proj.min(axis=0)
    hi = proj.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-6))
    pad = 0.30 * span
    lo = lo - pad
    scale = width / (span + 2 * pad)

    def xy(p: np.ndarray) -> tuple[float, float]:
        return ((p[0] - lo[0]) * scale, (width - (p[1] - lo[1]) * scale))

    def path_of(samples3d: np.ndarray, close: bool) -> str:
        pp = stereographic(samples3d, pole)
        cmds = []
        for i, p in enumerate(pp):
            x, y = xy(p)
            cmds.append(f"{'M' if i == 0 else 'L'} {x:.3f} {y:.3f}")
        if close:
            cmds.append("Z")
        return " ".join(cmds)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{width}" '
        f'viewBox="0 0 {width} {width}">',
        f'<rect width="{width}" height="{width}" fill="white"/>',
    ]

    if chain_pair is not None:
        for side, chain in enumerate((chain_pair.first, chain_pair.second)):
            fill = CHAIN_FILLS[side]
            for t in chain.triangles:
                segs = []
                verts = t.vertices
                for i in range(3):
                    a = g.vertices[verts[i]].point
                    b = g.vertices[verts[(i + 1) % 3]].point
                    segs.append(_slerp(a, b, ARC_SAMPLES)[:-1])
                d = path_of(np.concatenate(segs), close=True)
                out.append(f'<path class="chain-triangle chain-{side}" d="{d}" '
                           f'fill="{fill}" stroke="none"/>')

    for c in g.circles:
        u, v = circle_frame(c.normal)
        ang = np.linspace(0.0, 2.0 * math.pi, CIRCLE_SAMPLES, endpoint=False)
        ring = np.cos(ang)[:, None] * u + np.sin(ang)[:, None] * v
        ring = np.concatenate([ring, ring[:1]])
        d = path_of(ring, close=False)
        out.append(f'<path class="circle circle-{c.id}" d="{d}" fill="none" '
                   f'stroke="#333333" stroke-width="1.2"/>')

    r = max(3.0, 0.008 * width)
    for v in g.vertices:
        x, y = xy(stereographic(v.point[None, :], pole)[0])
        fill = PALETTE.get(coloring.get(v.index), UNCOLORED) if coloring else UNCOLORED
        out.append(f'<circle class="vertex" cx="{x:.3f}" cy="{y:.3f}" r="{r:.2f}" '
                   f'fill="{fill}" stroke="black" stroke-width="0.6"/>')

    out.append("</svg>")
    return "\n".join(out) + "\n"

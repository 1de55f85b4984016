import math
import xml.etree.ElementTree as ET

import numpy as np

from greatcircles.arrangement import antipodal_involution
from greatcircles.chains import enumerate_triangles, find_chain_pair
from greatcircles.coloring import color_exact
from greatcircles.render import choose_pole, render_svg, stereographic


def test_choose_pole_clears_all_circles(cuboctahedron):
    pole = choose_pole(cuboctahedron)
    for c in cuboctahedron.circles:
        dist = abs(math.asin(float(np.clip(np.dot(pole, c.normal), -1, 1))))
        assert dist > 1e-2


def test_choose_pole_horizon_is_circle0_pole(cuboctahedron):
    pole = choose_pole(cuboctahedron, horizon=True)
    assert np.allclose(pole, cuboctahedron.circles[0].normal)


def test_stereographic_horizon_maps_circle0_to_unit_circle(cuboctahedron):
    pole = choose_pole(cuboctahedron, horizon=True)
    ring = cuboctahedron.circle_orders[0]
    pts = np.stack([cuboctahedron.vertices[v].point for v in ring])
    proj = stereographic(pts, pole)
    assert np.allclose(np.linalg.norm(proj, axis=1), 1.0, atol=1e-9)


def test_svg_structure_cuboctahedron(cuboctahedron):
    col = color_exact(cuboctahedron).coloring
    search = find_chain_pair(cuboctahedron, enumerate_triangles(cuboctahedron),
                             antipodal_involution(cuboctahedron))
    svg = render_svg(cuboctahedron, coloring=col, chain_pair=search.pair)
    root = ET.fromstring(svg)  # well-formed XML
    ns = "{http://www.w3.org/2000/svg}"
    disks = [e for e in root.iter(f"{ns}circle") if e.get("class") == "vertex"]
    assert len(disks) == 12
    fills = {e.get("fill") for e in disks}
    assert fills <= {"red", "green", "blue"}
    shaded = [e for e in root.iter(f"{ns}path") if "chain-triangle" in (e.get("class") or "")]
    assert len(shaded) == 8
    light = [e for e in shaded if "chain-0" in e.get("class")]
    dark = [e for e in shaded if "chain-1" in e.get("class")]
    assert len(light) == 4 and len(dark) == 4
    assert {e.get("fill") for e in light} != {e.get("fill") for e in dark}
    circles = [e for e in root.iter(f"{ns}path") if (e.get("class") or "").startswith("circle")]
    assert len(circles) == 4


def test_svg_uncolored_fallback(octahedron):
    svg = render_svg(octahedron)
    root = ET.fromstring(svg)
    ns = "{http://www.w3.org/2000/svg}"
    disks = [e for e in root.iter(f"{ns}circle") if e.get("class") == "vertex"]
    assert len(disks) == 6
    assert {e.get("fill") for e in disks} == {"#888888"}


def test_svg_deterministic(octahedron):
    a = render_svg(octahedron, coloring=color_exact(octahedron).coloring)
    b = render_svg(octahedron, coloring=color_exact(octahedron).coloring)
    assert a == b

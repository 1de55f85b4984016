"""Great circles on the unit sphere and simple arrangements of them.

A great circle is the intersection of the unit sphere with a plane through
the origin, encoded here by a unit normal vector. An arrangement of circles
is *simple* when no three circles pass through a common point; everything
downstream (4-regularity, the face structure) depends on that property, so
it is checked explicitly rather than assumed.

All comparisons are angular and use plain float64 with the tolerances
below. Random instances sit far from any degeneracy, and `check_simple`
guards the rest of the pipeline against the ones that do not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    ArrangementFormatError,
    CoincidentPoints,
    DegenerateCircles,
    PointOffCircle,
    TooFewCircles,
    UnknownFixture,
)

# Angular tolerances, radians.
EPS_DUP = 1e-9  # below this line angle, two normals describe the same circle
EPS_ON = 1e-9   # max |normal . p| for p to count as lying on the circle
EPS_SEP = 1e-9  # min separation between intersection points of different pairs

_ZERO_COORD = 1e-12  # coordinate treated as zero when canonicalizing a point

_GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0

FIXTURE_NAMES = ("octahedron", "cuboctahedron", "icosidodecahedron")

# A point on the unit sphere is a plain length-3 float array with unit norm.
SpherePoint = np.ndarray


def unit(v: Sequence[float] | np.ndarray) -> np.ndarray:
    """Return v scaled to unit length; rejects the zero vector.

    A vector already of unit length (within 1e-12) is returned unchanged,
    which keeps normalization idempotent at the bit level and makes the
    text round trip byte-stable.
    """
    v = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(v))
    if n == 0.0:
        raise ValueError("cannot normalize the zero vector")
    if abs(n - 1.0) <= 1e-12:
        return v
    return v / n


def line_angle(a: np.ndarray, b: np.ndarray) -> float:
    """Angle between the lines spanned by a and b, in [0, pi/2].

    Sign-insensitive, so it also measures how close two unit vectors are to
    being equal *or* antipodal. atan2 keeps it accurate for tiny angles.
    """
    c = float(np.linalg.norm(np.cross(a, b)))
    d = abs(float(np.dot(a, b)))
    return math.atan2(c, d)


def angular_distance(p: np.ndarray, q: np.ndarray) -> float:
    """Angle between two unit vectors, in [0, pi]."""
    c = float(np.linalg.norm(np.cross(p, q)))
    d = float(np.dot(p, q))
    return math.atan2(c, d)


def canonicalize(p: np.ndarray) -> np.ndarray:
    """Flip p, if needed, so its first nonzero coordinate is positive.

    "Nonzero" means larger in magnitude than the zero tolerance. Idempotent:
    canonicalizing twice equals canonicalizing once.
    """
    for x in p:
        if abs(x) > _ZERO_COORD:
            return -p if x < 0 else p
    return p


@dataclass(frozen=True, eq=False)
class GreatCircle:
    """A great circle, identified by the unit normal of its plane.

    The constructor normalizes, so `normal` always has unit length. Within
    one arrangement no two circles may have equal or antipodal normals;
    `validate_distinct` enforces that for whole lists.
    """

    id: int
    normal: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "normal", unit(self.normal))


def validate_distinct(circles: Sequence[GreatCircle], eps_dup: float = EPS_DUP) -> None:
    """Reject lists that contain the same circle twice."""
    for i in range(len(circles)):
        for j in range(i + 1, len(circles)):
            if line_angle(circles[i].normal, circles[j].normal) < eps_dup:
                raise DegenerateCircles(
                    f"circles {circles[i].id} and {circles[j].id} have equal or antipodal normals"
                )


def intersect_pair(
    a: GreatCircle, b: GreatCircle, eps_dup: float = EPS_DUP
) -> tuple[SpherePoint, SpherePoint]:
    """Intersection of two distinct great circles: an antipodal point pair.

    Returns (p, -p) where p is the canonical representative of the pair.
    """
    if line_angle(a.normal, b.normal) < eps_dup:
        raise DegenerateCircles(f"circles {a.id} and {b.id} do not intersect transversally")
    p = canonicalize(unit(np.cross(a.normal, b.normal)))
    return p, -p


def circle_frame(normal: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Right-handed orthonormal frame (u, v, normal) for a circle's plane.

    u points along normal x e, where e is the standard basis vector least
    aligned with the normal (lowest index on ties); this makes the frame,
    and every angle measured in it, reproducible for a given normal.
    """
    e = np.zeros(3)
    e[int(np.argmin(np.abs(normal)))] = 1.0
    u = unit(np.cross(normal, e))
    v = np.cross(normal, u)
    return u, v


def circular_order(
    c: GreatCircle,
    pts: Sequence[SpherePoint],
    eps_on: float = EPS_ON,
    eps_sep: float = EPS_SEP,
) -> list[int]:
    """Indices of pts sorted by angle around circle c, smallest angle first.

    The result is a cyclic sequence: relabeling the input permutes indices
    but the underlying points come out in the same cyclic order. Points must
    lie on the circle (PointOffCircle) and be pairwise separated by at least
    eps_sep (CoincidentPoints; a coincidence here means some upstream
    arrangement was not simple).
    """
    u, v = circle_frame(c.normal)
    angles = []
    for p in pts:
        if abs(float(np.dot(c.normal, p))) >= eps_on:
            raise PointOffCircle(f"point {p} is not on circle {c.id}")
        angles.append(math.atan2(float(np.dot(p, v)), float(np.dot(p, u))))
    order = sorted(range(len(pts)), key=angles.__getitem__)
    if len(order) >= 2:
        for a, b in zip(order, order[1:] + order[:1]):
            if angular_distance(pts[a], pts[b]) < eps_sep:
                raise CoincidentPoints(f"points {a} and {b} coincide on circle {c.id}")
    return order


def check_simple(
    circles: Sequence[GreatCircle],
    eps_sep: float = EPS_SEP,
    eps_dup: float = EPS_DUP,
) -> bool:
    """True when no three circles share a point.

    Every unordered circle pair meets in one antipodal point pair; the
    arrangement is simple iff points coming from *different* circle pairs
    stay apart. Points are compared as antipodal classes (via line_angle),
    so a near miss against either sign counts as a coincidence.
    """
    if len(circles) < 2:
        raise TooFewCircles("check_simple needs at least 2 circles")
    reps = []
    for i in range(len(circles)):
        for j in range(i + 1, len(circles)):
            p, _ = intersect_pair(circles[i], circles[j], eps_dup)
            reps.append(p)
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            if line_angle(reps[a], reps[b]) < eps_sep:
                return False
    return True


def generate_random(
    k: int,
    seed: int,
    eps_dup: float = EPS_DUP,
    eps_sep: float = EPS_SEP,
) -> list[GreatCircle]:
    """k circles with normals drawn uniformly on the sphere, simple position.

    Deterministic for a fixed (k, seed). If the sampled set fails the
    simplicity check the *whole* set is resampled, which keeps the seeded
    stream reproducible and unbiased; for random normals a retry is all but
    impossible, so the loop terminates immediately in practice.
    """
    if k < 3:
        raise TooFewCircles(f"need k >= 3 circles, got {k}")
    rng = np.random.default_rng(seed)
    while True:
        normals = rng.standard_normal((k, 3))
        if np.any(np.linalg.norm(normals, axis=1) < 1e-8):
            continue
        circles = [GreatCircle(i, normals[i]) for i in range(k)]
        try:
            validate_distinct(circles, eps_dup)
        except DegenerateCircles:
            continue
        if check_simple(circles, eps_sep, eps_dup):
            return circles


def fixture_arrangement(name: str) -> list[GreatCircle]:
    """Named reference arrangements.

    octahedron: the 3 coordinate-plane circles (6 intersection points).
    cuboctahedron: 4 circles normal to the cube's body diagonals (12 points).
    icosidodecahedron: 6 circles normal to the icosahedron's vertex axes
    (30 points); its 20 triangular faces make it the stock counterexample to
    the "2k triangles" count.
    """
    if name == "octahedron":
        normals = [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
    elif name == "cuboctahedron":
        normals = [(1.0, 1.0, 1.0), (1.0, 1.0, -1.0), (1.0, -1.0, 1.0), (1.0, -1.0, -1.0)]
    elif name == "icosidodecahedron":
        g = _GOLDEN
        normals = [
            (0.0, 1.0, g),
            (0.0, 1.0, -g),
            (1.0, g, 0.0),
            (1.0, -g, 0.0),
            (g, 0.0, 1.0),
            (g, 0.0, -1.0),
        ]
    else:
        raise UnknownFixture(f"unknown fixture {name!r}; choose from {FIXTURE_NAMES}")
    return [GreatCircle(i, np.asarray(n)) for i, n in enumerate(normals)]


# --- arrangement text format ------------------------------------------------
#
# line 1: integer k
# then k lines, each three whitespace-separated floats (normal components)
# lines starting with '#' are comments

def write_arrangement(circles: Sequence[GreatCircle]) -> str:
    """Serialize an arrangement; stable bytes for identical inputs."""
    lines = [str(len(circles))]
    for c in circles:
        n = c.normal
        lines.append(f"{n[0]:.17g} {n[1]:.17g} {n[2]:.17g}")
    return "\n".join(lines) + "\n"


def parse_arrangement(text: str, eps_dup: float = EPS_DUP) -> list[GreatCircle]:
    """Parse the arrangement text format; normalizes and validates."""
    data = [ln.strip() for ln in text.splitlines()]
    data = [ln for ln in data if ln and not ln.startswith("#")]
    if not data:
        raise ArrangementFormatError("empty arrangement file")
    try:
        k = int(data[0])
    except ValueError:
        raise ArrangementFormatError(f"first line must be the circle count, got {data[0]!r}") from None
    if len(data) - 1 != k:
        raise ArrangementFormatError(f"expected {k} normal lines, found {len(data) - 1}")
    circles = []
    for i, row in enumerate(data[1:]):
        parts = row.split()
        if len(parts) != 3:
            raise ArrangementFormatError(f"normal line {i}: expected 3 components, got {len(parts)}")
        try:
            vec = np.array([float(x) for x in parts])
            circles.append(GreatCircle(i, vec))
        except ValueError as exc:
            raise ArrangementFormatError(f"normal line {i}: {exc}") from None
    validate_distinct(circles, eps_dup)
    return circles

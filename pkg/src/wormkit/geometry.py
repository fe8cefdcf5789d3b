"""Planar primitives: vectors, angles, open cones, parallelograms, congruence.

Everything here is an immutable value type or a pure function, safe to use
from any number of threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .tolerances import EPS, EPS_THETA


@dataclass(frozen=True, slots=True)
class Vec2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinates ({self.x}, {self.y})")

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def __mul__(self, k: float) -> "Vec2":
        return Vec2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def dot(self, other: "Vec2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Vec2") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def unit(self) -> "Vec2":
        n = self.norm()
        if n <= EPS:
            raise ValueError("degenerate vector")
        return Vec2(self.x / n, self.y / n)

    def angle(self) -> float:
        return math.atan2(self.y, self.x)

    def close_to(self, other: "Vec2", tol: float = EPS) -> bool:
        return abs(self.x - other.x) <= tol and abs(self.y - other.y) <= tol


def rotated(v: Vec2, theta: float) -> Vec2:
    c, s = math.cos(theta), math.sin(theta)
    return Vec2(c * v.x - s * v.y, s * v.x + c * v.y)


def angle_between(x: Vec2, z: Vec2) -> float:
    """Unsigned angle between two nonzero vectors, in [0, pi]."""
    nx, nz = x.norm(), z.norm()
    if nx <= EPS or nz <= EPS:
        raise ValueError("degenerate vector")
    c = x.dot(z) / (nx * nz)
    return math.acos(max(-1.0, min(1.0, c)))


@dataclass(frozen=True, slots=True)
class Cone:
    """Open cone: apex plus every direction within half_angle of the axis.

    Membership is strictly open; the apex and the two boundary rays are
    outside the cone.
    """

    apex: Vec2
    axis: Vec2
    half_angle: float

    def __post_init__(self):
        if self.axis.norm() <= EPS:
            raise ValueError("degenerate vector")
        if not 0.0 <= self.half_angle < math.pi:
            raise ValueError(f"half angle {self.half_angle} outside [0, pi)")


def cone_contains(c: Cone, p: Vec2) -> bool:
    """Open-cone membership, with EPS_THETA slack toward the boundary."""
    z = p - c.apex
    if z.norm() <= EPS:
        return False
    return angle_between(c.axis, z) < c.half_angle - EPS_THETA


@dataclass(frozen=True, slots=True)
class Isometry:
    """Rigid motion p -> R(rotation) . (mirror p) + translation.

    The mirror step (y -> -y) applies only when `reflected` is set, before
    the rotation.  `rotation` is kept in [0, 2*pi).
    """

    rotation: float
    reflected: bool
    translation: Vec2

    def apply(self, p: Vec2) -> Vec2:
        q = Vec2(p.x, -p.y) if self.reflected else p
        return rotated(q, self.rotation) + self.translation


@dataclass(frozen=True, slots=True)
class Pgram:
    """Parallelogram spanned by edge vectors u, v at the anchor vertex.

    Vertices in order: anchor, anchor+u, anchor+u+v, anchor+v.  Construction
    does not reject degenerate (zero-area) input; patch building does.
    """

    anchor: Vec2
    u: Vec2
    v: Vec2

    def vertices(self) -> tuple[Vec2, Vec2, Vec2, Vec2]:
        a = self.anchor
        return (a, a + self.u, a + self.u + self.v, a + self.v)

    def centroid(self) -> Vec2:
        return self.anchor + (self.u + self.v) * 0.5

    def area(self) -> float:
        return abs(self.u.cross(self.v))

    def is_degenerate(self) -> bool:
        return self.area() <= EPS

    def interior_angles(self) -> tuple[float, float]:
        a = angle_between(self.u, self.v)
        return (a, math.pi - a)

    def min_interior_angle(self) -> float:
        return min(self.interior_angles())


def _column_solve(u: Vec2, v: Vec2, t1: Vec2, t2: Vec2) -> tuple[float, float, float, float]:
    # L such that L u = t1 and L v = t2, as row-major (l00, l01, l10, l11)
    det = u.cross(v)
    l00 = (t1.x * v.y - t2.x * u.y) / det
    l01 = (-t1.x * v.x + t2.x * u.x) / det
    l10 = (t1.y * v.y - t2.y * u.y) / det
    l11 = (-t1.y * v.x + t2.y * u.x) / det
    return l00, l01, l10, l11


def congruences(a: Pgram, b: Pgram) -> list[Isometry]:
    """Every isometry mapping a onto b as a point set (up to 8 witnesses).

    Candidates are generated by matching a's edge pair onto b's edge pair in
    all orders and signs; each candidate is verified on the full vertex set
    before being accepted.
    """
    if abs(a.u.cross(a.v)) <= EPS:
        return []
    out: list[Isometry] = []
    seen: set[tuple[int, int, int, int]] = set()
    b_verts = b.vertices()
    ca, cb = a.centroid(), b.centroid()
    for e1, e2 in ((b.u, b.v), (b.v, b.u)):
        for s1 in (1.0, -1.0):
            for s2 in (1.0, -1.0):
                t1, t2 = e1 * s1, e2 * s2
                if abs(a.u.norm() - t1.norm()) > EPS or abs(a.v.norm() - t2.norm()) > EPS:
                    continue
                l00, _, l10, _ = _column_solve(a.u, a.v, t1, t2)
                theta = math.atan2(l10, l00) % (2.0 * math.pi)
                det_l = t1.cross(t2) * (1.0 if a.u.cross(a.v) > 0 else -1.0)
                reflected = det_l < 0
                # rebuild an exact isometry from the snapped angle
                mc = Vec2(ca.x, -ca.y) if reflected else ca
                iso = Isometry(theta, reflected, cb - rotated(mc, theta))
                mapped = [iso.apply(p) for p in a.vertices()]
                if all(any(m.close_to(q, EPS) for q in b_verts) for m in mapped):
                    key = (round(theta / EPS_THETA), int(reflected),
                           round(iso.translation.x / EPS), round(iso.translation.y / EPS))
                    if key not in seen:
                        seen.add(key)
                        out.append(iso)
    return out


def congruent(a: Pgram, b: Pgram) -> Isometry | None:
    """One isometry mapping a onto b as a point set, or None.

    When the shape has extra symmetry (rhombus, rectangle, square) the
    witness returned is the first found in a fixed enumeration order.
    """
    wits = congruences(a, b)
    return wits[0] if wits else None


def _clip_halfplane(poly: list[Vec2], n: Vec2, margin: float) -> list[Vec2]:
    # keep the part of poly with p.n >= margin (one Sutherland-Hodgman step)
    out: list[Vec2] = []
    k = len(poly)
    for i in range(k):
        p, q = poly[i], poly[(i + 1) % k]
        fp = p.dot(n) - margin
        fq = q.dot(n) - margin
        if fp >= 0.0:
            out.append(p)
        if (fp < 0.0) != (fq < 0.0):
            t = fp / (fp - fq)
            out.append(Vec2(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)))
    return out


def cone_intersects_pgram(c: Cone, p: Pgram) -> bool:
    """True iff the parallelogram reaches strictly inside the open cone.

    Contact with the apex or the boundary rays does not count: the cone is
    shrunk by EPS_THETA and the tile must clear both boundary half-planes by
    EPS.  For half angles up to pi/2 the (shrunk) cone is the intersection
    of two half-planes and the test clips the tile against them; for wider
    cones the complement is a convex closed cone, so a convex tile meets the
    open cone iff one of its corners does.
    """
    a = c.half_angle - EPS_THETA
    if a <= 0.0:
        return False
    axis = c.axis.unit()
    rel = [q - c.apex for q in p.vertices()]
    if a > math.pi / 2.0:
        return any(z.norm() > EPS and angle_between(axis, z) < a for z in rel)
    n1 = rotated(axis, a - math.pi / 2.0)
    n2 = rotated(axis, math.pi / 2.0 - a)
    poly = _clip_halfplane(rel, n1, EPS)
    if not poly:
        return False
    return bool(_clip_halfplane(poly, n2, EPS))

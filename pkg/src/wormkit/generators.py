"""Patch generators: square grids, sheared grids, multigrid duals.

The multigrid construction dualizes n families of equally spaced parallel
lines.  Family j consists of the lines {x : <x, n_j> = gamma_j + z} for
integer z, where n_j is a unit normal.  Every pairwise line intersection
inside the requested radius contributes one parallelogram with edge vectors
n_i and n_j, anchored at sum_r K_r * n_r with K_r the integer cell index of
the grid cell at the intersection's minimum corner.  Worms of the dual
patch correspond one-to-one with grid lines, so an n-direction multigrid
yields exactly n worm families.

Normal directions: pi*j/n for even n, 2*pi*j/n for odd n.  Both choices
spread the line directions evenly over the half-circle; for even n the
full-circle convention would collapse opposite families into parallel
copies and no n-direction structure would appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Pgram, Vec2
from .tiling import Patch, build_patch, validate
from .tolerances import EPS


def gen_square_grid(w: int, h: int) -> Patch:
    """w x h unit squares, anchored at the integer lattice."""
    if w < 1 or h < 1:
        raise ValueError("grid dimensions must be >= 1")
    u, v = Vec2(1.0, 0.0), Vec2(0.0, 1.0)
    tiles = [Pgram(Vec2(float(x), float(y)), u, v)
             for y in range(h) for x in range(w)]
    return build_patch(tiles)


def gen_sheared_grid(w: int, h: int, shear: float) -> Patch:
    """Grid of congruent parallelograms with u=(1,0), v=(shear,1).

    Exercises the non-rhombic code paths: edge lengths differ and the
    interior angles are not right angles (for shear != 0).
    """
    if w < 1 or h < 1:
        raise ValueError("grid dimensions must be >= 1")
    u, v = Vec2(1.0, 0.0), Vec2(shear, 1.0)
    tiles = [Pgram(Vec2(x + shear * y, float(y)), u, v)
             for y in range(h) for x in range(w)]
    return build_patch(tiles)


@dataclass(frozen=True)
class MultigridSpec:
    """Parameters of a multigrid dual patch.

    n: number of grid directions (>= 2).
    offsets: per-family line offsets gamma_j; must be generic (no three
        lines concurrent), which is checked during generation.
    radius: keep every line intersection within this distance of the origin.
    grid_range: line indices -grid_range..grid_range per family; None picks
        a range wide enough to cover the radius.
    """

    n: int
    offsets: tuple[float, ...]
    radius: float
    grid_range: int | None = None


def grid_normals(n: int) -> list[Vec2]:
    step = math.pi / n if n % 2 == 0 else 2.0 * math.pi / n
    return [Vec2(math.cos(j * step), math.sin(j * step)) for j in range(n)]


def multigrid_intersections(spec: MultigridSpec):
    """Yield (i, p, j, q, point) for every in-radius line intersection.

    Deterministic order: family pairs i<j, then p ascending, then q
    ascending.  Raises on non-generic offsets (a third line within EPS of
    an intersection point).
    """
    n = spec.n
    if n < 2:
        raise ValueError("multigrid needs n >= 2")
    if len(spec.offsets) != n:
        raise ValueError(f"expected {n} offsets, got {len(spec.offsets)}")
    if spec.radius <= 0.0:
        raise ValueError("radius must be positive")
    normals = grid_normals(n)
    gamma = [float(g) for g in spec.offsets]
    gr = spec.grid_range
    if gr is None:
        gr = int(math.ceil(spec.radius + max(abs(g) for g in gamma))) + 1
    zs = np.arange(-gr, gr + 1)

    for i in range(n):
        for j in range(i + 1, n):
            ni, nj = normals[i], normals[j]
            det = ni.cross(nj)
            if abs(det) <= EPS:
                continue  # parallel families never intersect
            a = gamma[i] + zs  # line levels of family i
            b = gamma[j] + zs
            aa, bb = np.meshgrid(a, b, indexing="ij")
            x = (aa * nj.y - bb * ni.y) / det
            y = (bb * ni.x - aa * nj.x) / det
            keep = x * x + y * y <= spec.radius * spec.radius
            pi_idx, qi_idx = np.nonzero(keep)
            xs, ys = x[keep], y[keep]
            # genericity: no third family's line may pass through a kept point
            for r in range(n):
                if r in (i, j):
                    continue
                proj = xs * normals[r].x + ys * normals[r].y - gamma[r]
                off = np.abs(proj - np.round(proj))
                if off.size and off.min() <= EPS:
                    k = int(off.argmin())
                    raise ValueError(
                        "degenerate multigrid: three lines concurrent near "
                        f"({xs[k]:.6g}, {ys[k]:.6g})")
            for k in range(len(xs)):
                yield (i, int(zs[pi_idx[k]]), j, int(zs[qi_idx[k]]),
                       Vec2(float(xs[k]), float(ys[k])))


def gen_multigrid(spec: MultigridSpec) -> Patch:
    """Dualize the multigrid into a validated parallelogram patch."""
    normals = grid_normals(spec.n)
    gamma = [float(g) for g in spec.offsets]
    tiles = []
    for i, p, j, q, point in multigrid_intersections(spec):
        # integer cell index of the intersection's minimum corner: exactly
        # p and q for the two crossing lines, ceil of the projection for
        # every other family (safely non-integer there, by genericity)
        anchor = Vec2(0.0, 0.0)
        for r, nr in enumerate(normals):
            if r == i:
                k = float(p)
            elif r == j:
                k = float(q)
            else:
                k = math.ceil(point.dot(nr) - gamma[r])
            anchor = anchor + nr * k
        tiles.append(Pgram(anchor, normals[i], normals[j]))
    if not tiles:
        raise ValueError("radius too small: no grid intersections")
    patch = build_patch(tiles)
    report = validate(patch)
    if not report.ok:
        raise RuntimeError("multigrid output failed validation; this is a bug")
    return patch

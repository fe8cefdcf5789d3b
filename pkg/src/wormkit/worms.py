"""Worm extraction and the structural checkers built on it.

A worm is the maximal run of tiles obtained by repeatedly stepping through
the parallel-edge pair of each parallelogram, seeded by one tile and one of
its edges.  On a finite patch the run is truncated at the boundary, so a
maximal segment stands in for the biinfinite sequence; the checkers only
assert facts that survive truncation (a sub-run of a crossing-free pair is
crossing-free, a sub-run of a cone-avoiding worm is cone-avoiding).

Every edge of the patch lies on exactly one worm ("rung"), and every tile
lies on exactly two worms, one per parallel-edge class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import Cone, Vec2, cone_intersects_pgram, rotated
from .tiling import Patch, adjacent_through_edge, opposite_edge
from .tolerances import EPS, EPS_THETA


@dataclass(frozen=True)
class Worm:
    """Ordered maximal tile run with its rungs (the parallel edges crossed).

    rungs[i] is the edge entering tiles[i]; rungs[-1] is the exit edge of
    the last tile, so there is one more rung than tiles.  All rungs are
    translates of each other, parallel to `direction` (unit vector with
    angle normalized into [0, pi)).  `loop_tile` records a revisited tile if
    tracing ever closed on itself; on valid patches it stays None.
    """

    tiles: tuple[int, ...]
    rungs: tuple[int, ...]
    direction: Vec2
    id: int | None = None
    family_id: int | None = None
    loop_tile: int | None = None

    def tile_set(self) -> frozenset[int]:
        return frozenset(self.tiles)


@dataclass(frozen=True)
class WormFamily:
    family_id: int
    direction: Vec2
    worms: tuple[int, ...]


@dataclass
class CheckReport:
    """Result of one structural check: statistics plus violation records."""

    name: str
    stats: dict = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def _sign_normalized_direction(v: Vec2) -> Vec2:
    u = v.unit()
    tiny = EPS_THETA
    if u.y < -tiny or (abs(u.y) <= tiny and u.x < 0.0):
        u = -u
    return u


def trace_worm(patch: Patch, tile_id: int, edge_id: int,
               worm_id: int | None = None) -> Worm:
    """Trace the maximal worm through (tile, edge) in both directions.

    The resulting tile sequence is independent of the seed (up to reversal);
    it is canonically oriented so that the first tile id is not larger than
    the last.
    """
    e = patch.edges[edge_id]
    direction = _sign_normalized_direction(e.endpoints[1] - e.endpoints[0])
    visited = {tile_id}
    loop_tile = None

    def walk(start_edge: int):
        nonlocal loop_tile
        tiles: list[int] = []
        rungs: list[int] = [start_edge]
        cur_t, cur_e = tile_id, start_edge
        while True:
            nxt = adjacent_through_edge(patch, cur_t, cur_e)
            if nxt is None:
                break
            if nxt in visited:
                loop_tile = nxt
                break
            visited.add(nxt)
            tiles.append(nxt)
            cur_e = opposite_edge(patch, nxt, cur_e)
            cur_t = nxt
            rungs.append(cur_e)
        return tiles, rungs

    fwd_tiles, fwd_rungs = walk(edge_id)
    bwd_tiles, bwd_rungs = walk(opposite_edge(patch, tile_id, edge_id))

    tiles = list(reversed(bwd_tiles)) + [tile_id] + fwd_tiles
    rungs = list(reversed(bwd_rungs)) + fwd_rungs
    if tiles[0] > tiles[-1]:
        tiles.reverse()
        rungs.reverse()
    return Worm(tuple(tiles), tuple(rungs), direction, id=worm_id,
                loop_tile=loop_tile)


class WormSet:
    """All worms of a patch, grouped into families, with tile/edge indexes.

    tile_worms[t] gives the two worm ids through tile t (by parallel-edge
    class); edge_worm[e] gives the single worm whose rung list contains e.
    """

    def __init__(self, patch: Patch, worms: list[Worm],
                 families: list[WormFamily],
                 tile_worms: list[tuple[int, int]], edge_worm: list[int]):
        self.patch = patch
        self.worms = worms
        self.families = families
        self.tile_worms = tile_worms
        self.edge_worm = edge_worm

    def worm(self, worm_id: int) -> Worm:
        return self.worms[worm_id]

    def family_of(self, worm_id: int) -> int:
        return self.worms[worm_id].family_id


def _edge_class(patch: Patch, tile_id: int, edge_id: int) -> int:
    # 0 for the u-parallel edge pair, 1 for the v-parallel pair
    return patch.tile_edges[tile_id].index(edge_id) % 2


def extract_worms(patch: Patch) -> WormSet:
    """Trace every worm of the patch exactly once and group into families."""
    n = len(patch.tiles)
    assigned: list[list[int | None]] = [[None, None] for _ in range(n)]
    worms: list[Worm] = []
    for tid in range(n):
        for cls in (0, 1):
            if assigned[tid][cls] is not None:
                continue
            w = trace_worm(patch, tid, patch.tile_edges[tid][cls],
                           worm_id=len(worms))
            for pos, member in enumerate(w.tiles):
                assigned[member][_edge_class(patch, member, w.rungs[pos])] = w.id
            worms.append(w)

    # group by direction modulo sign (angle in [0, pi), EPS_THETA chaining,
    # wrap-around between ~0 and ~pi merged)
    order = sorted(range(len(worms)), key=lambda i: worms[i].direction.angle() % math.pi)
    clusters: list[list[int]] = []
    prev_angle = None
    for i in order:
        ang = worms[i].direction.angle() % math.pi
        if prev_angle is None or ang - prev_angle > EPS_THETA:
            clusters.append([])
        clusters[-1].append(i)
        prev_angle = ang
    if len(clusters) > 1:
        first = worms[clusters[0][0]].direction.angle() % math.pi
        last = worms[clusters[-1][0]].direction.angle() % math.pi
        if first + math.pi - last <= EPS_THETA:
            clusters[0] = clusters.pop() + clusters[0]

    families: list[WormFamily] = []
    final: list[Worm | None] = [None] * len(worms)
    for fid, cluster in enumerate(clusters):
        rep = worms[min(cluster)]
        families.append(WormFamily(fid, rep.direction, tuple(sorted(cluster))))
        for i in cluster:
            w = worms[i]
            final[i] = Worm(w.tiles, w.rungs, w.direction, id=w.id,
                            family_id=fid, loop_tile=w.loop_tile)

    tile_worms = [(a[0], a[1]) for a in assigned]
    edge_worm: list[int] = [-1] * len(patch.edges)
    for w in final:
        for e in w.rungs:
            if edge_worm[e] not in (-1, w.id):
                raise RuntimeError(f"edge {e} claimed by worms {edge_worm[e]} and {w.id}")
            edge_worm[e] = w.id
    return WormSet(patch, final, families, tile_worms, edge_worm)


def all_worms(patch: Patch) -> list[WormFamily]:
    """Worm families of the patch (see `extract_worms` for the full index)."""
    return extract_worms(patch).families


def intersect_worms(a: Worm, b: Worm) -> set[int]:
    """Tile ids common to both worms."""
    return set(a.tiles) & set(b.tiles)


def check_crossing_lemma(patch: Patch, worms: WormSet | None = None) -> CheckReport:
    """Every pair of worms shares at most one tile; same-family pairs none.

    Counts crossings through the two-worms-per-tile index, which covers all
    pairs with nonempty intersection.
    """
    ws = worms if worms is not None else extract_worms(patch)
    pair_tiles: dict[tuple[int, int], list[int]] = {}
    report = CheckReport("crossing")
    for tid, (w0, w1) in enumerate(ws.tile_worms):
        if w0 == w1:
            report.violations.append({"kind": "tile-on-one-worm", "tile": tid,
                                      "worm": w0})
            continue
        pair = (w0, w1) if w0 < w1 else (w1, w0)
        pair_tiles.setdefault(pair, []).append(tid)
    for (a, b), tiles in sorted(pair_tiles.items()):
        if len(tiles) > 1:
            report.violations.append({"kind": "multiple-crossings", "worm_a": a,
                                      "worm_b": b, "tiles": tiles})
        if ws.family_of(a) == ws.family_of(b):
            report.violations.append({"kind": "same-family-crossing", "worm_a": a,
                                      "worm_b": b, "tiles": tiles})
    report.stats = {
        "worms": len(ws.worms),
        "families": len(ws.families),
        "crossing_pairs": len(pair_tiles),
        "tiles": len(patch.tiles),
    }
    return report


def check_no_loop(patch: Patch, worms: WormSet | None = None) -> CheckReport:
    """No worm trace revisits a tile."""
    ws = worms if worms is not None else extract_worms(patch)
    report = CheckReport("loop")
    for w in ws.worms:
        if w.loop_tile is not None:
            report.violations.append({"kind": "loop", "worm": w.id,
                                      "tile": w.loop_tile})
        elif len(set(w.tiles)) != len(w.tiles):
            report.violations.append({"kind": "repeated-tile", "worm": w.id})
    report.stats = {
        "worms": len(ws.worms),
        "longest": max(len(w.tiles) for w in ws.worms),
        "total_length": sum(len(w.tiles) for w in ws.worms),
    }
    return report


def _rung_cones(patch: Patch, edge_id: int, alpha: float) -> tuple[Cone, Cone]:
    e1, e2 = patch.edges[edge_id].endpoints
    return (Cone(e1, e1 - e2, alpha), Cone(e2, e2 - e1, alpha))


def check_cone_lemma(patch: Patch, worm: Worm | None = None,
                     worms: WormSet | None = None) -> CheckReport:
    """No tile of a worm reaches the open cones at its rung endpoints.

    For each rung with endpoints e1, e2 the forbidden regions are the open
    cones at e1 with axis e1-e2 and at e2 with axis e2-e1, of half angle
    alpha (the patch's minimum interior angle).  Lining up exactly along a
    cone's boundary ray is allowed.  With `worm` omitted, every worm of the
    patch is checked.

    A vectorized necessary condition (no tile corner clears both boundary
    half-planes) prunes almost every tile; survivors get the exact convex
    clipping test.  Only the positive-alpha branch exists here: the
    zero-angle variant needs prototiles with angles approaching zero, which
    a finite protoset cannot supply.
    """
    alpha = patch.alpha
    report = CheckReport("cone")
    if worm is not None:
        targets = [worm]
    else:
        ws = worms if worms is not None else extract_worms(patch)
        targets = ws.worms

    a_shrunk = alpha - EPS_THETA
    half = math.pi / 2.0
    rungs_checked = 0
    pairs_checked = 0
    for w in targets:
        corners = np.array([[(p.x, p.y) for p in patch.tiles[t].shape.vertices()]
                            for t in w.tiles])  # (L, 4, 2)
        for rung in w.rungs:
            rungs_checked += 1
            for cone in _rung_cones(patch, rung, alpha):
                pairs_checked += len(w.tiles)
                axis = cone.axis.unit()
                n1 = rotated(axis, a_shrunk - half)
                n2 = rotated(axis, half - a_shrunk)
                rel = corners - np.array([cone.apex.x, cone.apex.y])
                f1 = (rel @ np.array([n1.x, n1.y])).max(axis=1)
                f2 = (rel @ np.array([n2.x, n2.y])).max(axis=1)
                for idx in np.nonzero((f1 >= EPS) & (f2 >= EPS))[0]:
                    tid = w.tiles[int(idx)]
                    if cone_intersects_pgram(cone, patch.tiles[tid].shape):
                        report.violations.append({
                            "kind": "tile-in-cone", "worm": w.id, "rung": rung,
                            "tile": tid,
                            "apex_x": cone.apex.x, "apex_y": cone.apex.y,
                        })
    report.stats = {
        "alpha": alpha,
        "worms_checked": len(targets),
        "rungs_checked": rungs_checked,
        "tile_cone_pairs": pairs_checked,
    }
    return report

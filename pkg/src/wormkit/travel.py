"""Traveling between tiles by walking on worms and turning at crossings.

Two route finders are provided.  `travel_bfs` is the independent oracle: a
breadth-first search on the worm-crossing graph, guaranteed to return a
route with the minimum number of worms.  `travel_constructive` follows the
geometric sweep argument instead: starting from a worm through the source
tile, it repeatedly looks at the worms crossing the current one, finds the
two that bracket the target, and advances to the bracketing worm farther
from the current reference tile.  On an infinite tiling the sweep provably
terminates within ceil(2*pi/alpha) worms; on a finite patch it can run out
of crossings near the boundary, in which case it reports a diagnostic
instead of a route.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .tiling import Patch
from .worms import Worm, WormSet, extract_worms

ON = "on"
LEFT = "left"
RIGHT = "right"
UNREACHABLE = "unreachable"


@dataclass(frozen=True)
class TravelRoute:
    """A walk from start_tile to end_tile along `worms`, switching worms at
    the crossing tiles listed in `turns` (one fewer than worms)."""

    worms: tuple[int, ...]
    turns: tuple[int, ...]
    start_tile: int
    end_tile: int

    @property
    def worm_count(self) -> int:
        return len(self.worms)


@dataclass(frozen=True)
class TravelOutcome:
    route: TravelRoute | None
    diagnostic: str | None = None

    @property
    def ok(self) -> bool:
        return self.route is not None


class WormGraph:
    """Worms as nodes, crossing tiles as edges.

    Exactly one edge per crossing pair (enforced at build time; a duplicate
    pair would mean the crossing structure upstream is broken).  Also caches
    per-worm side partitions for the sweep.
    """

    def __init__(self, patch: Patch, wormset: WormSet):
        self.patch = patch
        self.wormset = wormset
        self.adj: dict[int, dict[int, int]] = {w.id: {} for w in wormset.worms}
        for tid, (w0, w1) in enumerate(wormset.tile_worms):
            if w0 == w1:
                raise RuntimeError(f"tile {tid} lies on a single worm twice")
            for a, b in ((w0, w1), (w1, w0)):
                prev = self.adj[a].get(b)
                if prev is not None and prev != tid:
                    raise RuntimeError(
                        f"worms {a} and {b} cross twice (tiles {prev}, {tid})")
                self.adj[a][b] = tid
        self._sides: dict[int, list[str]] = {}
        self._tile_sets: dict[int, frozenset[int]] = {}

    @property
    def nodes(self) -> list[int]:
        return [w.id for w in self.wormset.worms]

    def edge_list(self) -> list[tuple[int, int, int]]:
        out = []
        for a in sorted(self.adj):
            for b, tid in self.adj[a].items():
                if a < b:
                    out.append((a, b, tid))
        return sorted(out)

    def tile_set(self, worm_id: int) -> frozenset[int]:
        ts = self._tile_sets.get(worm_id)
        if ts is None:
            ts = self.wormset.worms[worm_id].tile_set()
            self._tile_sets[worm_id] = ts
        return ts

    def side_labels(self, worm_id: int) -> list[str]:
        labels = self._sides.get(worm_id)
        if labels is None:
            labels = _side_partition(self.patch, self.wormset.worms[worm_id])
            self._sides[worm_id] = labels
        return labels


def build_worm_graph(patch: Patch, worms: WormSet | None = None) -> WormGraph:
    ws = worms if worms is not None else extract_worms(patch)
    return WormGraph(patch, ws)


def _edge_midpoint(patch, edge_id):
    p, q = patch.edges[edge_id].endpoints
    return (p + q) * 0.5


def _side_partition(patch: Patch, worm: Worm) -> list[str]:
    """Label every tile of the patch relative to the worm's ribbon.

    Worm tiles get ON.  Each remaining connected component of the patch
    (edge adjacency, worm tiles removed) is labelled LEFT or RIGHT according
    to which flank of the ribbon it touches, where left/right follow the
    worm's traversal direction (entry rung to exit rung).  Components that
    touch both flanks, or none, are UNREACHABLE: on a truncated worm the
    plane halves can reconnect around the worm's end, and then the side is
    genuinely undecidable.
    """
    n = len(patch.tiles)
    labels = [UNREACHABLE] * n
    on_worm = set(worm.tiles)
    for t in worm.tiles:
        labels[t] = ON

    # classify each non-rung edge of each worm tile as a left or right exit
    flank: dict[int, str] = {}
    for pos, tid in enumerate(worm.tiles):
        step = _edge_midpoint(patch, worm.rungs[pos + 1]) - \
            _edge_midpoint(patch, worm.rungs[pos])
        centroid = patch.tiles[tid].shape.centroid()
        for eid in patch.tile_edges[tid]:
            if eid in (worm.rungs[pos], worm.rungs[pos + 1]):
                continue
            off = _edge_midpoint(patch, eid) - centroid
            flank[eid] = LEFT if step.cross(off) > 0 else RIGHT

    seen = [False] * n
    for start in range(n):
        if seen[start] or start in on_worm:
            continue
        component = []
        touches: set[str] = set()
        queue = deque([start])
        seen[start] = True
        while queue:
            t = queue.popleft()
            component.append(t)
            for eid in patch.tile_edges[t]:
                for other in patch.edges[eid].tiles:
                    if other == t:
                        continue
                    if other in on_worm:
                        side = flank.get(eid)
                        if side is not None:
                            touches.add(side)
                    elif not seen[other]:
                        seen[other] = True
                        queue.append(other)
        if len(touches) == 1:
            side = touches.pop()
            for t in component:
                labels[t] = side
    return labels


def side_of_worm(patch: Patch, worm: Worm, tile_id: int) -> str:
    """Which side of the worm's ribbon the tile lies on.

    Returns "on" for worm members, "left"/"right" relative to the worm's
    traversal direction, or "unreachable" when the finite patch does not
    decide the side.
    """
    return _side_partition(patch, worm)[tile_id]


def turn_budget(alpha: float) -> int:
    """ceil(2*pi/alpha), the worm budget for connecting any two tiles.

    Rounds away float noise when 2*pi/alpha is within EPS_THETA of an
    integer (as with alpha = pi/5).
    """
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    q = 2.0 * math.pi / alpha
    r = round(q)
    return r if abs(q - r) <= 1e-9 else math.ceil(q)


def travel_bfs(graph: WormGraph, s: int, t: int) -> TravelRoute | None:
    """Minimum-worm-count route from s to t, ties broken by lowest worm id.

    Returns None only when the crossing graph leaves the two tiles
    disconnected (a boundary-truncation artifact).
    """
    ws = graph.wormset
    s_worms = sorted(set(ws.tile_worms[s]))
    t_worms = set(ws.tile_worms[t])
    shared = sorted(set(s_worms) & t_worms)
    if shared:
        return TravelRoute((shared[0],), (), s, t)

    dist: dict[int, int] = {w: 1 for w in s_worms}
    queue = deque(s_worms)
    while queue:
        cur = queue.popleft()
        for nb in sorted(graph.adj[cur]):
            if nb not in dist:
                dist[nb] = dist[cur] + 1
                queue.append(nb)
    reached = [w for w in sorted(t_worms) if w in dist]
    if not reached:
        return None
    end = min(reached, key=lambda w: (dist[w], w))

    worms = [end]
    while dist[worms[-1]] > 1:
        cur = worms[-1]
        prev = min(nb for nb in graph.adj[cur] if dist.get(nb) == dist[cur] - 1)
        worms.append(prev)
    worms.reverse()
    turns = tuple(graph.adj[a][b] for a, b in zip(worms, worms[1:]))
    return TravelRoute(tuple(worms), turns, s, t)


def travel_constructive(patch: Patch, s: int, t: int,
                        graph: WormGraph | None = None) -> TravelOutcome:
    """The sweep route finder; see the module docstring.

    The start worm is the lower-id worm through s.  Iterations are bounded
    by the turn budget; overruns and missing brackets are reported as
    diagnostics, never exceptions.
    """
    if graph is None:
        graph = build_worm_graph(patch)
    ws = graph.wormset
    budget = turn_budget(patch.alpha)

    cur = min(ws.tile_worms[s])
    route = [cur]
    turns: list[int] = []
    ref = s
    visited = {cur}

    while True:
        if t in graph.tile_set(cur):
            return TravelOutcome(TravelRoute(tuple(route), tuple(turns), s, t))
        if len(route) >= budget:
            return TravelOutcome(None, f"budget-exhausted: {budget} worms used "
                                       f"without reaching tile {t}")

        worm = ws.worms[cur]
        ref_idx = worm.tiles.index(ref)
        last_idx = len(worm.tiles) - 1

        hit = None
        decided: list[tuple[int, str, int]] = []  # (index, F/B, crossing worm)
        for idx, tid in enumerate(worm.tiles):
            w0, w1 = ws.tile_worms[tid]
            x = w1 if w0 == cur else w0
            labels = graph.side_labels(x)
            if labels[t] == ON:
                hit = (idx, x)
                break
            if labels[t] not in (LEFT, RIGHT):
                continue
            fwd = labels[worm.tiles[last_idx]] if idx < last_idx else None
            bwd = labels[worm.tiles[0]] if idx > 0 else None
            if fwd not in (LEFT, RIGHT):
                fwd = None
            if bwd not in (LEFT, RIGHT):
                bwd = None
            if fwd is not None and bwd is not None and fwd == bwd:
                continue  # crossing worm fails to separate the run's ends
            if fwd is not None:
                decided.append((idx, "F" if labels[t] == fwd else "B", x))
            elif bwd is not None:
                decided.append((idx, "B" if labels[t] == bwd else "F", x))

        if hit is not None:
            idx, x = hit
            if x in visited:
                return TravelOutcome(None, f"worm-revisited: worm {x}")
            route.append(x)
            turns.append(worm.tiles[idx])
            visited.add(x)
            ref = worm.tiles[idx]
            cur = x
            continue

        if not decided:
            return TravelOutcome(None, "no-decidable-crossings: every crossing "
                                       "worm is truncated before it separates "
                                       f"tile {t} (boundary truncation)")
        bracket = None
        for (i1, h1, x1), (i2, h2, x2) in zip(decided, decided[1:]):
            if h1 == "F" and h2 == "B":
                bracket = ((i1, x1), (i2, x2))
                break
        if bracket is None:
            which = "before the first" if decided[0][1] == "B" else "past the last"
            return TravelOutcome(None, f"bracket-missing: tile {t} lies {which} "
                                       "in-patch crossing of the current worm "
                                       "(boundary truncation)")

        (ia, xa), (ib, xb) = bracket
        da, db = abs(ia - ref_idx), abs(ib - ref_idx)
        if da > db or (da == db and xa < xb):
            idx, chosen = ia, xa
        else:
            idx, chosen = ib, xb
        if chosen in visited:
            return TravelOutcome(None, f"worm-revisited: worm {chosen}")
        route.append(chosen)
        turns.append(worm.tiles[idx])
        visited.add(chosen)
        ref = worm.tiles[idx]
        cur = chosen


def replay_route(patch: Patch, graph: WormGraph, route: TravelRoute) -> list[int]:
    """Expand a route into the full tile walk it describes.

    Walks each route worm from its entry tile to the turn tile (consecutive
    worm tiles share a rung, so every step crosses a shared edge), ending at
    the route's end tile.  Raises if the route is inconsistent.
    """
    ws = graph.wormset
    walk: list[int] = []
    pos_tile = route.start_tile
    for k, wid in enumerate(route.worms):
        worm = ws.worms[wid]
        target = route.turns[k] if k < len(route.turns) else route.end_tile
        i, j = worm.tiles.index(pos_tile), worm.tiles.index(target)
        step = 1 if j >= i else -1
        seg = list(worm.tiles[i:j + step:step]) if step == 1 else \
            list(worm.tiles[j:i + 1][::-1])
        if walk:
            seg = seg[1:]
        walk.extend(seg)
        pos_tile = target
    if walk[-1] != route.end_tile or walk[0] != route.start_tile:
        raise RuntimeError("route replay did not connect its endpoints")
    return walk

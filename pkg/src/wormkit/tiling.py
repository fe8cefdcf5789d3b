"""Finite patch model: tiles, prototiles, edge adjacency, validation.

A Patch is a finite stand-in for an infinite parallelogram tiling.  Building
one canonicalizes vertices (nearly-coincident points snap to the first
representative seen), derives shared edges by matching vertex pairs,
deduplicates tile shapes into a protoset of congruence classes, and rejects
overlapping or degenerate input.  Checking the vertex-to-vertex condition is
a separate, non-throwing step (`validate`) so that counterexample patches
can be built and then reported on.

Patches are immutable after construction; concurrent reads are safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import Isometry, Pgram, Vec2, congruent
from .tolerances import EPS


class _VertexIndex:
    """Snap nearly-coincident points to one canonical representative.

    Hash grid with cell size EPS; a query checks the 3x3 cell neighborhood
    for an existing point within EPS (Chebyshev) and reuses it, so vertices
    shared between tiles unify exactly.
    """

    def __init__(self):
        self._cells: dict[tuple[int, int], list[int]] = {}
        self.points: list[Vec2] = []

    def canonical_id(self, p: Vec2) -> int:
        kx = math.floor(p.x / EPS)
        ky = math.floor(p.y / EPS)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for vid in self._cells.get((kx + dx, ky + dy), ()):
                    if self.points[vid].close_to(p, EPS):
                        return vid
        vid = len(self.points)
        self.points.append(p)
        self._cells.setdefault((kx, ky), []).append(vid)
        return vid


@dataclass(frozen=True)
class Tile:
    id: int
    shape: Pgram
    prototile_id: int
    placement: Isometry  # maps protoset[prototile_id] onto shape


@dataclass(frozen=True)
class Edge:
    id: int
    endpoints: tuple[Vec2, Vec2]  # canonical coordinates, lexicographic order
    tiles: tuple[int, ...]        # 1 (boundary) or 2 (interior) tile ids


@dataclass(frozen=True)
class Patch:
    tiles: tuple[Tile, ...]
    edges: tuple[Edge, ...]
    protoset: tuple[Pgram, ...]
    alpha: float  # minimum interior angle over the protoset, radians
    # per tile: edge ids in local order (u@anchor, v@anchor+u, u@anchor+v,
    # v@anchor); locals i and (i+2)%4 are the parallel pairs
    tile_edges: tuple[tuple[int, int, int, int], ...]
    tile_vertex_ids: tuple[tuple[int, int, int, int], ...]
    vertices: tuple[Vec2, ...]

    def edge_of(self, edge_id: int) -> Edge:
        return self.edges[edge_id]

    def tile_of(self, tile_id: int) -> Tile:
        return self.tiles[tile_id]

    def interior_edges(self) -> list[Edge]:
        return [e for e in self.edges if len(e.tiles) == 2]

    def bbox(self) -> tuple[float, float, float, float]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)


@dataclass
class ValidationReport:
    """Violations of the patch well-formedness assumptions.

    An empty report means the patch is a valid finite piece of a locally
    finite, vertex-to-vertex parallelogram tiling.  (Local finiteness is
    vacuous for finite patches and is recorded as always satisfied.)
    """

    vertex_contacts: list[dict] = field(default_factory=list)
    overlaps: list[tuple[int, int]] = field(default_factory=list)
    degenerate: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.vertex_contacts or self.overlaps or self.degenerate)


class _TileGrid:
    """Coarse spatial hash of tile bounding boxes, for candidate queries."""

    def __init__(self, shapes: list[Pgram]):
        self.cell = max(max(abs(s.u.x) + abs(s.v.x), abs(s.u.y) + abs(s.v.y))
                        for s in shapes) + EPS
        self.cells: dict[tuple[int, int], list[int]] = {}
        self.boxes: list[tuple[float, float, float, float]] = []
        for tid, s in enumerate(shapes):
            xs = [p.x for p in s.vertices()]
            ys = [p.y for p in s.vertices()]
            box = (min(xs), min(ys), max(xs), max(ys))
            self.boxes.append(box)
            for key in self._keys(box):
                self.cells.setdefault(key, []).append(tid)

    def _keys(self, box):
        x0 = math.floor(box[0] / self.cell)
        x1 = math.floor(box[2] / self.cell)
        y0 = math.floor(box[1] / self.cell)
        y1 = math.floor(box[3] / self.cell)
        return [(ix, iy) for ix in range(x0, x1 + 1) for iy in range(y0, y1 + 1)]

    def candidate_pairs(self):
        seen: set[tuple[int, int]] = set()
        for bucket in self.cells.values():
            for i in range(len(bucket)):
                for j in range(i + 1, len(bucket)):
                    a, b = bucket[i], bucket[j]
                    pair = (a, b) if a < b else (b, a)
                    if pair not in seen:
                        seen.add(pair)
                        yield pair

    def tiles_near(self, p: Vec2):
        ix = math.floor(p.x / self.cell)
        iy = math.floor(p.y / self.cell)
        out: set[int] = set()
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                out.update(self.cells.get((ix + dx, iy + dy), ()))
        return out


def _interiors_overlap(a: Pgram, b: Pgram) -> bool:
    # separating-axis test over the four edge normals; touching within EPS
    # does not count as overlap
    va, vb = a.vertices(), b.vertices()
    for w in (a.u, a.v, b.u, b.v):
        n = Vec2(-w.y, w.x).unit()
        pa = [p.dot(n) for p in va]
        pb = [p.dot(n) for p in vb]
        if min(max(pa), max(pb)) - max(min(pa), min(pb)) <= EPS:
            return False
    return True


def _contains_point(shape: Pgram, p: Vec2) -> bool:
    # closed containment with an EPS-wide skin
    det = shape.u.cross(shape.v)
    rel = p - shape.anchor
    s = rel.cross(shape.v) / det
    t = shape.u.cross(rel) / det
    s_tol = EPS * shape.v.norm() / abs(det)
    t_tol = EPS * shape.u.norm() / abs(det)
    return -s_tol <= s <= 1.0 + s_tol and -t_tol <= t <= 1.0 + t_tol


def build_patch(raw_tiles: list[Pgram]) -> Patch:
    """Assemble a Patch from raw parallelograms.

    Raises ValueError on degenerate tiles or interior overlaps ("packing
    violated").  The result need not be edge-connected or vertex-to-vertex;
    run `validate` for that.
    """
    if not raw_tiles:
        raise ValueError("empty tile list")
    for tid, s in enumerate(raw_tiles):
        if s.is_degenerate():
            raise ValueError(f"degenerate parallelogram (tile {tid})")

    vindex = _VertexIndex()
    tile_vertex_ids = []
    shapes = []
    for s in raw_tiles:
        ids = tuple(vindex.canonical_id(p) for p in s.vertices())
        tile_vertex_ids.append(ids)
        pts = vindex.points
        anchor = pts[ids[0]]
        shapes.append(Pgram(anchor, pts[ids[1]] - anchor, pts[ids[3]] - anchor))

    grid = _TileGrid(shapes)
    for i, j in sorted(grid.candidate_pairs()):
        if _interiors_overlap(shapes[i], shapes[j]):
            raise ValueError(f"packing violated: tiles {i} and {j} overlap")

    # edges keyed by unordered canonical vertex pair
    edge_ids: dict[tuple[int, int], int] = {}
    edge_tiles: list[list[int]] = []
    edge_ends: list[tuple[int, int]] = []
    tile_edges = []
    for tid, ids in enumerate(tile_vertex_ids):
        local = []
        for a, b in ((ids[0], ids[1]), (ids[1], ids[2]), (ids[3], ids[2]), (ids[0], ids[3])):
            key = (a, b) if a < b else (b, a)
            eid = edge_ids.get(key)
            if eid is None:
                eid = len(edge_ids)
                edge_ids[key] = eid
                edge_tiles.append([])
                edge_ends.append(key)
            edge_tiles[eid].append(tid)
            if len(edge_tiles[eid]) > 2:
                raise ValueError(f"packing violated: edge shared by >2 tiles "
                                 f"({edge_tiles[eid]})")
            local.append(eid)
        tile_edges.append(tuple(local))

    # congruence-class deduplication; first occurrence is canonical
    protoset: list[Pgram] = []
    tiles: list[Tile] = []
    for tid, s in enumerate(shapes):
        pid = None
        placement = None
        for k, proto in enumerate(protoset):
            placement = congruent(proto, s)
            if placement is not None:
                pid = k
                break
        if pid is None:
            protoset.append(s)
            pid = len(protoset) - 1
            placement = congruent(s, s)
        tiles.append(Tile(tid, s, pid, placement))

    alpha = min(p.min_interior_angle() for p in protoset)
    pts = vindex.points
    edges = tuple(
        Edge(eid, tuple(sorted((pts[a], pts[b]), key=lambda p: (p.x, p.y))),
             tuple(edge_tiles[eid]))
        for eid, (a, b) in enumerate(edge_ends)
    )
    return Patch(
        tiles=tuple(tiles),
        edges=edges,
        protoset=tuple(protoset),
        alpha=alpha,
        tile_edges=tuple(tile_edges),
        tile_vertex_ids=tuple(tile_vertex_ids),
        vertices=tuple(pts),
    )


def validate(patch: Patch) -> ValidationReport:
    """Check the patch against the well-formedness assumptions.

    Reports (rather than raises) every violation found: vertices resting on
    another tile's edge or interior (non-vertex-to-vertex contact), interior
    overlaps, degenerate tiles.
    """
    report = ValidationReport()
    shapes = [t.shape for t in patch.tiles]
    for t in patch.tiles:
        if t.shape.is_degenerate():
            report.degenerate.append(t.id)

    grid = _TileGrid(shapes)
    for i, j in sorted(grid.candidate_pairs()):
        if _interiors_overlap(shapes[i], shapes[j]):
            report.overlaps.append((i, j))

    for vid, p in enumerate(patch.vertices):
        for tid in sorted(grid.tiles_near(p)):
            if vid in patch.tile_vertex_ids[tid]:
                continue
            if _contains_point(shapes[tid], p):
                report.vertex_contacts.append(
                    {"vertex": vid, "x": p.x, "y": p.y, "tile": tid})
    return report


def _local_edge_index(patch: Patch, tile_id: int, edge_id: int) -> int:
    try:
        return patch.tile_edges[tile_id].index(edge_id)
    except ValueError:
        raise ValueError(f"edge {edge_id} is not an edge of tile {tile_id}") from None


def adjacent_through_edge(patch: Patch, tile_id: int, edge_id: int) -> int | None:
    """The other tile incident to the edge, or None on the patch boundary."""
    _local_edge_index(patch, tile_id, edge_id)
    others = [t for t in patch.edges[edge_id].tiles if t != tile_id]
    return others[0] if others else None


def opposite_edge(patch: Patch, tile_id: int, edge_id: int) -> int:
    """The parallel edge of the same parallelogram (an involution)."""
    i = _local_edge_index(patch, tile_id, edge_id)
    return patch.tile_edges[tile_id][(i + 2) % 4]

"""Deterministic SVG rendering of patches.

Identical inputs produce byte-identical SVG.  The viewBox is the patch
bounding box plus a 5% margin; the y axis is flipped at the coordinate
level so mathematical coordinates render upright and text stays readable.
"""

from __future__ import annotations

import io

from .geometry import rotated
from .tiling import Patch
from .travel import TravelRoute
from .worms import WormSet

# fill colors by prototile id (cycled)
PROTO_COLORS = ["#cfe3f5", "#f5d9c9", "#d9eecd", "#ece0f2", "#f7f2c6",
                "#d6eef0", "#f3d6e4", "#e3e3e3"]
# stroke colors by family id (cycled)
FAMILY_COLORS = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e",
                 "#17becf", "#bcbd22", "#e377c2", "#8c564b", "#7f7f7f"]
ROUTE_COLOR = "#c40000"
CONE_COLOR = "#808080"


def _f(x: float) -> str:
    return f"{x:.6f}"


class _Canvas:
    def __init__(self, patch: Patch):
        x0, y0, x1, y1 = patch.bbox()
        pad = 0.05 * max(x1 - x0, y1 - y0, 1e-6)
        self.x0, self.y0 = x0 - pad, y0 - pad
        self.w = (x1 - x0) + 2 * pad
        self.h = (y1 - y0) + 2 * pad
        self.flip_sum = (y0 - pad) + (y1 + pad)  # y -> flip_sum - y
        self.body = io.StringIO()

    def pt(self, p) -> str:
        return f"{_f(p.x)},{_f(self.flip_sum - p.y)}"

    def polygon(self, points, fill, stroke, width, opacity=None):
        attrs = (f'points="{" ".join(self.pt(p) for p in points)}" '
                 f'fill="{fill}" stroke="{stroke}" stroke-width="{_f(width)}"')
        if opacity is not None:
            attrs += f' fill-opacity="{_f(opacity)}"'
        self.body.write(f"<polygon {attrs} />\n")

    def polyline(self, points, stroke, width):
        self.body.write(
            f'<polyline points="{" ".join(self.pt(p) for p in points)}" '
            f'fill="none" stroke="{stroke}" stroke-width="{_f(width)}" '
            f'stroke-linejoin="round" stroke-linecap="round" />\n')

    def circle(self, p, r, fill):
        x, y = p.x, self.flip_sum - p.y
        self.body.write(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(r)}" '
                        f'fill="{fill}" />\n')

    def text(self, p, s, size):
        x, y = p.x, self.flip_sum - p.y
        self.body.write(f'<text x="{_f(x)}" y="{_f(y)}" font-size="{_f(size)}" '
                        f'text-anchor="middle" font-family="sans-serif">'
                        f"{s}</text>\n")

    def document(self) -> str:
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'viewBox="{_f(self.x0)} {_f(self.y0)} {_f(self.w)} {_f(self.h)}">\n'
            + self.body.getvalue() + "</svg>\n"
        )


def _edge_midpoint(patch, edge_id):
    p, q = patch.edges[edge_id].endpoints
    return (p + q) * 0.5


def _worm_spine(patch, worm):
    pts = [_edge_midpoint(patch, worm.rungs[0])]
    for pos, tid in enumerate(worm.tiles):
        pts.append(patch.tiles[tid].shape.centroid())
        pts.append(_edge_midpoint(patch, worm.rungs[pos + 1]))
    return pts


def render_svg(patch: Patch, worms: WormSet | None = None, *,
               show_worms: bool = False, route: TravelRoute | None = None,
               cone_worm: int | None = None, labels: bool = False) -> str:
    """Render the patch, with optional worm, route and cone overlays.

    `cone_worm` draws the two forbidden cones (half angle = patch alpha) at
    the endpoints of that worm's middle rung.
    """
    canvas = _Canvas(patch)
    stroke_w = 0.015 * max(canvas.w, canvas.h)

    for t in patch.tiles:
        canvas.polygon(t.shape.vertices(),
                       PROTO_COLORS[t.prototile_id % len(PROTO_COLORS)],
                       "#444444", stroke_w * 0.25)

    if (show_worms or route or cone_worm is not None) and worms is None:
        raise ValueError("worm overlays need the extracted WormSet")

    if show_worms:
        for w in worms.worms:
            color = FAMILY_COLORS[w.family_id % len(FAMILY_COLORS)]
            canvas.polyline(_worm_spine(patch, w), color, stroke_w * 0.5)

    if cone_worm is not None:
        w = worms.worms[cone_worm]
        rung = w.rungs[len(w.rungs) // 2]
        e1, e2 = patch.edges[rung].endpoints
        reach = 0.35 * max(canvas.w, canvas.h)
        for apex, axis in ((e1, e1 - e2), (e2, e2 - e1)):
            ua = axis.unit()
            lo = rotated(ua, -patch.alpha) * reach
            hi = rotated(ua, patch.alpha) * reach
            canvas.polygon([apex, apex + lo, apex + hi], CONE_COLOR,
                           "#333333", stroke_w * 0.2, opacity=0.45)
        canvas.polyline(_worm_spine(patch, w), "#000000", stroke_w * 0.6)

    if route is not None:
        for wid in route.worms:
            canvas.polyline(_worm_spine(patch, worms.worms[wid]),
                            ROUTE_COLOR, stroke_w * 0.8)
        marker = 0.012 * max(canvas.w, canvas.h)
        for tid in route.turns:
            canvas.circle(patch.tiles[tid].shape.centroid(), marker, "#000000")
        canvas.circle(patch.tiles[route.start_tile].shape.centroid(),
                      marker * 1.4, "#006400")
        canvas.circle(patch.tiles[route.end_tile].shape.centroid(),
                      marker * 1.4, "#00008b")

    if labels:
        size = 0.018 * max(canvas.w, canvas.h)
        for t in patch.tiles:
            canvas.text(t.shape.centroid(), str(t.id), size)

    return canvas.document()

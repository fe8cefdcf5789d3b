"""Plain-text patch files.

One tile per line, six numbers (anchor x y, edge vector u x y, edge vector
v x y) printed with 17 significant digits so doubles round-trip losslessly.
The first line is a fixed format header; '#' lines are comments (used for
generator provenance) and are ignored on load.  Saving a loaded patch
reproduces the canonical serialization byte for byte.
"""

from __future__ import annotations

import io

from .geometry import Pgram, Vec2
from .tiling import Patch, build_patch

HEADER = "wormkit-patch 1"


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def patch_to_string(patch: Patch, provenance: str | None = None) -> str:
    out = io.StringIO()
    out.write(HEADER + "\n")
    if provenance:
        for line in provenance.splitlines():
            out.write(f"# {line}\n")
    for t in patch.tiles:
        s = t.shape
        out.write(" ".join(_fmt(v) for v in
                           (s.anchor.x, s.anchor.y, s.u.x, s.u.y, s.v.x, s.v.y)))
        out.write("\n")
    return out.getvalue()


def save_patch(patch: Patch, path: str, provenance: str | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(patch_to_string(patch, provenance))


def patch_from_string(text: str) -> Patch:
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise ValueError(f"malformed patch file: missing '{HEADER}' header")
    tiles = []
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 6:
            raise ValueError(f"malformed patch file: line {lineno} has "
                             f"{len(parts)} fields, expected 6")
        try:
            ax, ay, ux, uy, vx, vy = (float(p) for p in parts)
        except ValueError:
            raise ValueError(f"malformed patch file: line {lineno} is not "
                             "numeric") from None
        tiles.append(Pgram(Vec2(ax, ay), Vec2(ux, uy), Vec2(vx, vy)))
    if not tiles:
        raise ValueError("malformed patch file: no tiles")
    return build_patch(tiles)


def load_patch(path: str) -> Patch:
    with open(path) as fh:
        return patch_from_string(fh.read())

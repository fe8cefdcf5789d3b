"""Orientation census and the finite-orientation bound.

Two tiles of the same prototile belong to the same orientation class when
one is a translate of the other as a point set.  Because every
parallelogram is symmetric under point reflection, and some prototiles are
symmetric under more (rhombus, rectangle, square), the census works on the
tile's pair of sign-normalized edge vectors: that signature is invariant
under exactly the symmetries that produce translates, so the symmetry
quotient comes out automatically.

The theoretical ceiling on class counts is
    N(m, k) = ((2m)^(k+1) + 2m - 2) / (2m - 1)
with m the protoset size and k = ceil(2*pi/alpha) the worm budget: a worm
step preserves orientation up to reflection (2 choices) and each turn
multiplies the possibilities by 2m.  N is computed in exact integer
arithmetic; it overflows 64 bits already for moderate m and k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import Pgram, Vec2, congruences
from .tiling import Patch
from .tolerances import EPS_THETA
from .travel import turn_budget
from .worms import CheckReport, WormSet, extract_worms

# Orientation classes of a shared prototile differ by at least the angle
# step between the patch's edge directions, which is macroscopic for any
# reasonable protoset; snap noise on edge vectors is a few EPS at most.
# This tolerance sits comfortably between the two scales.
_VEC_TOL = 1e-6


def _sign_normalized(v: Vec2) -> Vec2:
    tiny = EPS_THETA * max(v.norm(), 1.0)
    if v.y < -tiny or (abs(v.y) <= tiny and v.x < 0.0):
        return -v
    return v


def _signature(shape: Pgram) -> tuple[Vec2, Vec2]:
    return (_sign_normalized(shape.u), _sign_normalized(shape.v))


def _same_signature(a: tuple[Vec2, Vec2], b: tuple[Vec2, Vec2]) -> bool:
    return ((a[0].close_to(b[0], _VEC_TOL) and a[1].close_to(b[1], _VEC_TOL)) or
            (a[0].close_to(b[1], _VEC_TOL) and a[1].close_to(b[0], _VEC_TOL)))


def translation_related(a: Pgram, b: Pgram) -> bool:
    """True iff b is a translate of a as a point set."""
    return _same_signature(_signature(a), _signature(b))


def translation_or_reflection_related(a: Pgram, b: Pgram) -> bool:
    """True iff some orientation-reversing isometry or a pure translation
    maps a onto b (i.e. no proper rotation beyond the shapes' own symmetry
    is needed)."""
    for w in congruences(a, b):
        if w.reflected:
            return True
        if min(w.rotation, 2.0 * math.pi - w.rotation) <= EPS_THETA:
            return True
    return False


@dataclass(frozen=True)
class OrientationClass:
    prototile_id: int
    rotation: float   # canonical representative in [0, 2*pi)
    reflected: bool
    count: int


@dataclass(frozen=True)
class CensusReport:
    classes: tuple[OrientationClass, ...]
    m: int
    alpha: float
    k: int
    bound_n: int
    per_prototile_counts: tuple[int, ...]

    def classes_for(self, prototile_id: int) -> list[OrientationClass]:
        return [c for c in self.classes if c.prototile_id == prototile_id]


def orientation_bound(m: int, k: int) -> int:
    """((2m)^(k+1) + 2m - 2) / (2m - 1), exactly.

    Equals 1 + sum_{n=0..k} (2m)^n; the division is always exact, which is
    asserted rather than assumed.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if k < 0:
        raise ValueError("k must be >= 0")
    num = (2 * m) ** (k + 1) + 2 * m - 2
    quot, rem = divmod(num, 2 * m - 1)
    assert rem == 0, "bound formula must divide exactly"
    return quot


def orientation_census(patch: Patch) -> CensusReport:
    """Group the patch's tiles into orientation classes per prototile.

    The canonical (rotation, reflected) representative of a class is the
    lexicographically smallest witness isometry from the canonical prototile
    onto the class representative (non-reflected preferred, then smallest
    rotation angle).
    """
    m = len(patch.protoset)
    reps: list[list[dict]] = [[] for _ in range(m)]
    for tile in patch.tiles:
        sig = _signature(tile.shape)
        bucket = reps[tile.prototile_id]
        for rep in bucket:
            if _same_signature(sig, rep["sig"]):
                rep["count"] += 1
                break
        else:
            wits = congruences(patch.protoset[tile.prototile_id], tile.shape)
            best = min(wits, key=lambda w: (w.reflected, round(w.rotation, 12)))
            bucket.append({"sig": sig, "count": 1,
                           "rotation": best.rotation % (2.0 * math.pi),
                           "reflected": best.reflected})

    classes = []
    for pid, bucket in enumerate(reps):
        for rep in bucket:
            classes.append(OrientationClass(pid, rep["rotation"],
                                            rep["reflected"], rep["count"]))
    k = turn_budget(patch.alpha)
    return CensusReport(
        classes=tuple(classes),
        m=m,
        alpha=patch.alpha,
        k=k,
        bound_n=orientation_bound(m, k),
        per_prototile_counts=tuple(len(b) for b in reps),
    )


def check_orientation_theorem(patch: Patch) -> CheckReport:
    """Observed orientation-class counts stay within the bound N.

    The pairwise claim (any two congruent tiles sit in one of at most N^2
    relative orientations) follows from the per-prototile bound and is
    reported as satisfied by implication.
    """
    census = orientation_census(patch)
    report = CheckReport("census")
    for pid, count in enumerate(census.per_prototile_counts):
        if count > census.bound_n:
            report.violations.append({"kind": "orientation-count-exceeds-bound",
                                      "prototile": pid, "count": count,
                                      "bound": census.bound_n})
    report.stats = {
        "m": census.m,
        "k": census.k,
        "alpha": census.alpha,
        "bound_n": census.bound_n,
        "pairwise_bound": "satisfied-by-implication",
    }
    for pid, count in enumerate(census.per_prototile_counts):
        report.stats[f"classes_prototile_{pid}"] = count
    return report


def check_worm_step_orientation(patch: Patch,
                                worms: WormSet | None = None) -> CheckReport:
    """Along one worm, same-prototile tiles are translates or reflections.

    Checked between orientation-class representatives on each worm (class
    members are translates of their representative, so the pairwise property
    transfers).
    """
    ws = worms if worms is not None else extract_worms(patch)
    report = CheckReport("worm-step-orientation")
    pairs = 0
    for w in ws.worms:
        by_proto: dict[int, list[Pgram]] = {}
        for tid in w.tiles:
            tile = patch.tiles[tid]
            bucket = by_proto.setdefault(tile.prototile_id, [])
            if not any(translation_related(tile.shape, r) for r in bucket):
                bucket.append(tile.shape)
        for pid, bucket in sorted(by_proto.items()):
            for i in range(len(bucket)):
                for j in range(i + 1, len(bucket)):
                    pairs += 1
                    if not translation_or_reflection_related(bucket[i], bucket[j]):
                        report.violations.append({
                            "kind": "rotation-needed", "worm": w.id,
                            "prototile": pid})
    report.stats = {"worms": len(ws.worms), "class_pairs_checked": pairs}
    return report

"""wormkit: worms in finite parallelogram tilings, with executable checks.

A parallelogram has two pairs of parallel edges, so a parallelogram tiling
carries natural tile runs ("worms") obtained by repeatedly stepping through
each tile's parallel-edge pair.  This package builds finite patches,
extracts their worms, and machine-checks the structural facts worms
satisfy: no loops, at most one crossing per worm pair, forbidden cones at
every rung, bounded-worm-count travel between any two tiles, and a finite
orientation census per prototile with an explicit ceiling.
"""

from .census import (CensusReport, OrientationClass, check_orientation_theorem,
                     check_worm_step_orientation, orientation_bound,
                     orientation_census)
from .generators import (MultigridSpec, gen_multigrid, gen_sheared_grid,
                         gen_square_grid, grid_normals, multigrid_intersections)
from .geometry import (Cone, Isometry, Pgram, Vec2, angle_between, cone_contains,
                       cone_intersects_pgram, congruences, congruent)
from .patchio import load_patch, patch_from_string, patch_to_string, save_patch
from .render import render_svg
from .tiling import (Edge, Patch, Tile, ValidationReport, adjacent_through_edge,
                     build_patch, opposite_edge, validate)
from .travel import (TravelOutcome, TravelRoute, WormGraph, build_worm_graph,
                     replay_route, side_of_worm, travel_bfs, travel_constructive,
                     turn_budget)
from .worms import (CheckReport, Worm, WormFamily, WormSet, all_worms,
                    check_cone_lemma, check_crossing_lemma, check_no_loop,
                    extract_worms, intersect_worms, trace_worm)

__all__ = [
    "CensusReport", "CheckReport", "Cone", "Edge", "Isometry", "MultigridSpec",
    "OrientationClass", "Patch", "Pgram", "Tile", "TravelOutcome", "TravelRoute",
    "ValidationReport", "Vec2", "Worm", "WormFamily", "WormGraph", "WormSet",
    "adjacent_through_edge", "all_worms", "angle_between", "build_patch",
    "build_worm_graph", "check_cone_lemma", "check_crossing_lemma",
    "check_no_loop", "check_orientation_theorem", "check_worm_step_orientation",
    "cone_contains", "cone_intersects_pgram", "congruences", "congruent",
    "extract_worms", "gen_multigrid", "gen_sheared_grid", "gen_square_grid",
    "grid_normals", "intersect_worms", "load_patch", "multigrid_intersections",
    "opposite_edge", "orientation_bound", "orientation_census",
    "patch_from_string", "patch_to_string", "render_svg", "replay_route",
    "save_patch", "side_of_worm", "trace_worm", "travel_bfs",
    "travel_constructive", "turn_budget", "validate",
]

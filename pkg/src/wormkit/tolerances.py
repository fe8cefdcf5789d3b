"""Global floating-point tolerances.

All predicates in the package share a single absolute coordinate tolerance
EPS and a single angle tolerance EPS_THETA.  Coordinates are assumed to be
O(1)..O(1e3); with the default EPS of 1e-9 this leaves roughly six decimal
digits of headroom above double-precision noise.

EPS may be overridden through the WORMKIT_EPS environment variable (read
once, at import time).
"""

import os

EPS = float(os.environ.get("WORMKIT_EPS", "1e-9"))

# Angle comparisons (radians).  Not overridable: angles are always O(1).
EPS_THETA = 1e-9

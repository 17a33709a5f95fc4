"""Numerical tolerances and size limits shared across the package.

Values are module-level constants so that every consumer (solver, selection,
verification, CLI) agrees on them; functions that need a different setting
accept an explicit override argument.
"""

import os

# Infinity-norm residual above which a linear solve is declared failed.
TAU_SOLVE = 1e-9

# Pivot magnitude below which elimination is declared singular.
TAU_PIVOT = 1e-12

# Absolute tolerance for the triangle inequality on user-supplied metrics.
# Graph encodings are integer-valued and are checked exactly instead.
TAU_METRIC = 1e-9

# Slack on threshold comparisons in the decision problem.  The yes/no gap of
# generated instances is orders of magnitude larger than this.
TAU_DECIDE = 1e-9

# Guard for the ceiling in the distance-scale formula: values this close to
# an integer are treated as that integer so results do not depend on the last
# bit of the platform's log().
SCALE_CEIL_EPS = 1e-12

# Default cap on the number of subsets an exhaustive search may enumerate.
ENUMERATION_CAP = 5_000_000

# Central-difference step and relative tolerance for derivative checks.
FD_STEP = 1e-5
FD_RTOL = 1e-5

# Default number of grid points for deformation scans (inclusive endpoints).
DEFAULT_SCAN_SAMPLES = 33

# Lower bound every solved weight component must exceed on generated
# two-distance instances.
WEIGHT_FLOOR = 2.0 / 3.0


def enumeration_cap() -> int:
    """Active enumeration cap; the SP_ENUM_CAP environment variable overrides."""
    raw = os.environ.get("SP_ENUM_CAP")
    if raw is None:
        return ENUMERATION_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"SP_ENUM_CAP must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError(f"SP_ENUM_CAP must be positive, got {cap}")
    return cap

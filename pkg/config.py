"""
OpCat — Configuration
All settings are read from environment variables with sensible defaults.
"""
import os

# ── Enumeration bounds ────────────────────────────────────────────────────────
OPCAT_BOUND           = int(os.getenv("OPCAT_BOUND", "4"))   # points per object
BOUND_MIN             = 1
BOUND_MAX             = 8
WREATH_DEPTH          = int(os.getenv("OPCAT_WREATH_DEPTH", "2"))
CONE_BOUND            = int(os.getenv("OPCAT_CONE_BOUND", "2"))  # test objects for pullback certificates

# ── Sampling ──────────────────────────────────────────────────────────────────
ASSOC_SAMPLES         = int(os.getenv("OPCAT_ASSOC_SAMPLES", "200"))
SEED                  = int(os.getenv("OPCAT_SEED", "0"))

# ── Output ────────────────────────────────────────────────────────────────────
VERBOSE               = os.getenv("OPCAT_VERBOSE", "false").lower() == "true"
SCHEMA_VERSION        = "opcat/1"


def parse_bound(value: str | int | None) -> int:
    """Parse and clamp an enumeration bound. Falls back to OPCAT_BOUND if absent or invalid."""
    if value is None:
        return max(BOUND_MIN, min(BOUND_MAX, OPCAT_BOUND))
    try:
        bound = int(value)
    except (ValueError, TypeError):
        return max(BOUND_MIN, min(BOUND_MAX, OPCAT_BOUND))
    return max(BOUND_MIN, min(BOUND_MAX, bound))

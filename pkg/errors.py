"""
OpCat — Errors and diagnostics
Every failure carries an exit code and a detail, the way the CLI reports it.
"""
import sys

from config import VERBOSE

# ── Exit codes ────────────────────────────────────────────────────────────────
EXIT_OK          = 0
EXIT_LAW_FAILURE = 1
EXIT_NOT_PERFECT = 2
EXIT_USAGE       = 64
EXIT_UNIQUENESS  = 70


class OpcatError(Exception):
    """Base error. `detail` is human readable, `counterexample` is replayable data."""

    exit_code = EXIT_USAGE

    def __init__(self, detail: str, counterexample: object | None = None) -> None:
        super().__init__(detail)
        self.detail = detail
        self.counterexample = counterexample


class CompositionError(OpcatError):
    """Source/target mismatch."""


class SelectorError(OpcatError):
    """Unparseable category selector or malformed command-line input."""


class SequenceError(OpcatError):
    """Malformed Φ-sequence (length mismatch, non-composable arrows)."""


class NotPerfectError(OpcatError):
    exit_code = EXIT_NOT_PERFECT


class UniquenessError(OpcatError):
    """A search-based universal construction found zero or several solutions."""

    exit_code = EXIT_UNIQUENESS


class RecognitionUnavailable(OpcatError):
    """Interval-inclusion recognition asked of a witness-only category."""


def log(tag: str, message: str) -> None:
    if VERBOSE:
        print(f"[{tag}] {message}", file=sys.stderr, flush=True)

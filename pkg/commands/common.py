"""
OpCat — Helpers shared by the subcommands (parsing, rendering, exit codes)
"""
import sys

from categories import CategoryHandle, TableCategory
from errors import EXIT_LAW_FAILURE, EXIT_OK, SelectorError, log
from export import to_json
from models import LawReport


def parse_ints(text: str | None, what: str) -> tuple[int, ...]:
    if text is None:
        raise SelectorError(f"missing {what}")
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise SelectorError(f"{what} must be comma-separated integers, got {text!r}")


def parse_tables(text: str | None) -> list[tuple[int, ...]]:
    """'0,0,1;1,0' -> [(0, 0, 1), (1, 0)]."""
    if text is None or not text.strip():
        return []
    return [parse_ints(part, "map table") for part in text.split(";")]


def sized_object(C: CategoryHandle, n: int):
    if not isinstance(C, TableCategory):
        raise SelectorError(f"{C.name}: objects can only be given by size for O and F")
    if n < 0:
        raise SelectorError(f"object size must be non-negative, got {n}")
    return C.code(n)


def render_report(report: LawReport, fmt: str) -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "dot":
        raise SelectorError("law reports have no DOT rendering")
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.law:<32} {c.object}" for c in report.checks]
    failed = len(report.failures)
    fiber = "" if report.fiber_bound is None else f" fiber-bound={report.fiber_bound}"
    lines.append(f"{report.suite} {report.category} bound={report.bound}{fiber}: "
                 f"{len(report.checks) - failed}/{len(report.checks)} passed")
    return "\n".join(lines) + "\n"


def emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    log("out", f"wrote {out}")


def finish(report: LawReport, fmt: str, out: str | None) -> int:
    log(report.suite, f"{report.category} bound={report.bound}: {len(report.checks)} checks, "
                      f"{len(report.failures)} failed")
    emit(render_report(report, fmt), out)
    return EXIT_OK if report.ok else EXIT_LAW_FAILURE

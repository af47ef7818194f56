"""
OpCat — Law report assembly
Checks are aggregated per (law, object); the first failing counterexample is kept.
"""
import random
from typing import Any, Callable

from categories import CategoryHandle
from codes import Mor, ObjCode
from errors import CompositionError, UniquenessError
from models import LawCheck, LawReport


class ReportBuilder:
    def __init__(self, suite: str, category: str, bound: int, fiber_bound: int | None = None) -> None:
        self.suite = suite
        self.category = category
        self.bound = bound
        self.fiber_bound = fiber_bound
        self._records: dict[tuple[str, str], list] = {}

    def record(self, law: str, obj: object, ok: bool, counterexample: Any = None) -> bool:
        key = (law, str(obj))
        entry = self._records.setdefault(key, [True, None])
        if entry[0] and not ok:
            entry[0] = False
            entry[1] = counterexample
        return ok

    def guard(self, law: str, obj: object, check: Callable[[], bool], counterexample: Any = None) -> bool:
        """Run a check; a failed uniqueness search or composition counts as a violation."""
        try:
            ok = bool(check())
        except (UniquenessError, CompositionError) as exc:
            return self.record(law, obj, False, {"error": exc.detail, "data": exc.counterexample or counterexample})
        return self.record(law, obj, ok, counterexample)

    def merge(self, report: LawReport, prefix: str | None = None) -> None:
        for c in report.checks:
            law = f"{prefix}/{c.law}" if prefix else c.law
            self.record(law, c.object, c.passed, c.counterexample)

    def build(self) -> LawReport:
        checks = [LawCheck(law=law, object=obj, passed=ok, counterexample=cex)
                  for (law, obj), (ok, cex) in self._records.items()]
        return LawReport(suite=self.suite, category=self.category, bound=self.bound,
                         fiber_bound=self.fiber_bound, checks=checks)


def mor_json(*mors: Mor) -> list:
    return [m.to_json() for m in mors]


def sample_members(items, samples: int, seed: int) -> list:
    """All of `items` when there are at most `samples`, otherwise a seeded sample."""
    items = list(items)
    if len(items) <= samples:
        return items
    return random.Random(seed).sample(items, samples)


def sample_chains(C: CategoryHandle, objects: tuple[ObjCode, ...], length: int,
                  samples: int, seed: int) -> list[tuple[Mor, ...]]:
    """Seeded composable chains (f_1, ..., f_length) with f_k: X_{k-1} -> X_k."""
    rng = random.Random(seed)
    out = []
    for _ in range(samples * 4):
        if len(out) >= samples:
            break
        stops = [rng.choice(objects) for _ in range(length + 1)]
        chain = []
        for a, b in zip(stops, stops[1:]):
            homs = C.hom(a, b)
            if not homs:
                break
            chain.append(rng.choice(homs))
        if len(chain) == length:
            out.append(tuple(chain))
    return out

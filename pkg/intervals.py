"""
OpCat — Fiber and interval-inclusion machinery
Interval inclusions are composites of fiber inclusions. A witness records the
chain of fibers and the final isomorphism; pullbacks are certified by cone
enumeration rather than trusted.
"""
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Any

from categories import (
    CategoryHandle,
    FinCategory,
    OrdCategory,
    Point,
    TruncatedCategory,
    WreathCategory,
)
from codes import Mor, ObjCode, Ord, Wreath
from errors import CompositionError, RecognitionUnavailable


@dataclass(frozen=True)
class IntervalWitness:
    """steps[s] = (f, i) exhibits stage s as the fiber of f at i; iso: K -> last stage."""
    steps: tuple[tuple[Mor, Point], ...]
    iso: Mor

    def to_json(self) -> Any:
        return {"steps": [{"map": f.to_json(), "point": _point_json(i)} for f, i in self.steps],
                "iso": self.iso.to_json()}


def _point_json(p: Point) -> Any:
    return list(_point_json(q) for q in p) if isinstance(p, tuple) else p


# ── Pullback certificates ─────────────────────────────────────────────────────

def pullback_violation(C: CategoryHandle, p1: Mor, p2: Mor, f: Mor, g: Mor, cone_bound: int) -> str | None:
    """Check that (p1: P->A, p2: P->B) is a pullback of (f: A->Z, g: B->Z) against all test objects."""
    if C.compose(f, p1) != C.compose(g, p2):
        return "square does not commute"
    P, A, B = p1.src, p1.tgt, p2.tgt
    for X in C.objects(cone_bound):
        mediators = Counter((C.compose(p1, h), C.compose(p2, h)) for h in C.hom(X, P))
        legs = defaultdict(list)
        for a in C.hom(X, A):
            legs[C.compose(f, a)].append(a)
        for b in C.hom(X, B):
            for a in legs.get(C.compose(g, b), ()):
                count = mediators.get((a, b), 0)
                if count != 1:
                    return f"cone ({a}, {b}) from {X} has {count} mediating maps"
    return None


def is_pullback(C: CategoryHandle, p1: Mor, p2: Mor, f: Mor, g: Mor, cone_bound: int) -> bool:
    return pullback_violation(C, p1, p2, f, g, cone_bound) is None


def fiber_violation(C: CategoryHandle, f: Mor, i: Point, cone_bound: int) -> str | None:
    k, incl = C.fiber(f, i)
    return pullback_violation(C, incl, C.bang(k), f, C.point_mor(f.tgt, i), cone_bound)


# ── Witnesses ─────────────────────────────────────────────────────────────────

def walk(C: CategoryHandle, start: ObjCode, steps) -> tuple[ObjCode, Mor] | None:
    """Follow a chain of fiber steps from `start`; returns the last stage and its inclusion."""
    obj, composite = start, C.identity(start)
    for f, i in steps:
        if f.src != obj or i not in C.point_index(f.tgt):
            return None
        obj, incl = C.fiber(f, i)
        composite = C.compose(composite, incl)
    return obj, composite


def finish_witness(C: CategoryHandle, m: Mor, steps) -> IntervalWitness | None:
    walked = walk(C, m.tgt, steps)
    if walked is None:
        return None
    _, composite = walked
    iso = C.factor_through(composite, m)
    if iso is None or not C.is_iso(iso):
        return None
    return IntervalWitness(tuple(steps), iso)


def validate_witness(C: CategoryHandle, m: Mor, w: IntervalWitness) -> bool:
    walked = walk(C, m.tgt, w.steps)
    if walked is None:
        return False
    obj, composite = walked
    return (w.iso.src == m.src and w.iso.tgt == obj and C.is_iso(w.iso)
            and C.compose(composite, w.iso) == m)


def fiber_witness(C: CategoryHandle, f: Mor, i: Point) -> tuple[Mor, IntervalWitness]:
    """A fiber inclusion together with its one-step witness."""
    k, incl = C.fiber(f, i)
    return incl, IntervalWitness(((f, i),), C.identity(k))


def compose_witnesses(C: CategoryHandle, outer: Mor, outer_w: IntervalWitness,
                      inner: Mor, inner_w: IntervalWitness) -> IntervalWitness | None:
    """Witness for outer∘inner, transporting the inner chain along outer's final iso."""
    walked = walk(C, outer.tgt, outer_w.steps)
    if walked is None:
        return None
    steps = list(outer_w.steps)
    transport = outer_w.iso
    for g, i in inner_w.steps:
        back = C.inverse(transport)
        if back is None:
            return None
        moved = C.compose(g, back)
        steps.append((moved, i))
        _, new_incl = C.fiber(moved, i)
        _, old_incl = C.fiber(g, i)
        transport = C.factor_through(new_incl, C.compose(transport, old_incl))
        if transport is None:
            return None
    return finish_witness(C, C.compose(outer, inner), steps)


# ── Recognition ───────────────────────────────────────────────────────────────

def is_interval_inclusion(C: CategoryHandle, m: Mor, witness: IntervalWitness | None = None) -> IntervalWitness | None:
    if witness is not None:
        return witness if validate_witness(C, m, witness) else None
    if C.is_iso(m):
        return IntervalWitness((), m)
    if C.witness_only:
        raise RecognitionUnavailable(f"{C.name}: interval inclusions need a caller-supplied witness")
    return _recognize(C, m)


def _recognize(C: CategoryHandle, m: Mor) -> IntervalWitness | None:
    if isinstance(C, OrdCategory):
        return _recognize_ord(C, m)
    if isinstance(C, FinCategory):
        return _recognize_fin(C, m)
    if isinstance(C, WreathCategory):
        return _recognize_wreath(C, m)
    if isinstance(C, TruncatedCategory):
        return _search_witness(C, m)
    return None


def _recognize_fin(C: FinCategory, m: Mor) -> IntervalWitness | None:
    if len(set(m.data)) != len(m.data):
        return None
    image = set(m.data)
    indicator = Mor(m.tgt, C.code(2), tuple(1 if x in image else 0 for x in range(m.tgt.n)))
    return finish_witness(C, m, [(indicator, 1)])


def _recognize_ord(C: OrdCategory, m: Mor) -> IntervalWitness | None:
    table = m.data
    if len(set(table)) != len(table):
        return None
    if table and table[-1] - table[0] + 1 != len(table):
        return None
    if table:
        lo, hi = table[0], table[-1]
        cut = tuple(0 if x < lo else 1 if x <= hi else 2 for x in range(m.tgt.n))
    else:
        cut = (0,) * m.tgt.n
    return finish_witness(C, m, [(Mor(m.tgt, Ord(3), cut), 1)])


def _recognize_wreath(C: WreathCategory, m: Mor) -> IntervalWitness | None:
    """Cut the base first, then each fiber component in turn."""
    eta, _ = m.data
    base_w = is_interval_inclusion(C.outer, eta)
    if base_w is None:
        return None
    inner_term = C.inner.terminal()
    inner_pt = C.inner.points(inner_term)[0]
    steps: list = []
    obj = m.tgt
    for f, i in base_w.steps:
        target = Wreath(f.tgt, (inner_term,) * C.outer.point_count(f.tgt))
        step = Mor(obj, target, (f, tuple(C.inner.bang(fib) for fib in obj.fibers)))
        steps.append((step, (i, inner_pt)))
        obj, _ = C.fiber(step, (i, inner_pt))

    walked = walk(C, m.tgt, steps)
    if walked is None:
        return None
    reduced = C.factor_through(walked[1], m)
    if reduced is None:
        return None
    r_eta, r_om = reduced.data
    outer_term = C.outer.terminal()
    outer_pt = C.outer.points(outer_term)[0]
    for k, j in enumerate(C.outer.points(m.src.base)):
        w = is_interval_inclusion(C.inner, r_om[k])
        if w is None:
            return None
        pos = C.outer.point_index(obj.base)[C.outer.image(r_eta, j)]
        for g, x in w.steps:
            comps = tuple(g if q == pos else C.inner.constant(fib, g.tgt, x)
                          for q, fib in enumerate(obj.fibers))
            step = Mor(obj, Wreath(outer_term, (g.tgt,)), (C.outer.bang(obj.base), comps))
            steps.append((step, (outer_pt, x)))
            obj, _ = C.fiber(step, (outer_pt, x))
    return finish_witness(C, m, steps)


def _search_witness(C: TruncatedCategory, m: Mor) -> IntervalWitness | None:
    """Breadth-first search over chains of fiber inclusions with targets inside C."""
    goal = C.point_count(m.src)
    frontier = [((), m.tgt, C.identity(m.tgt))]
    seen = {C.identity(m.tgt)}
    targets = C.objects(C.n)
    for _ in range(C.point_count(m.tgt) + 1):
        advanced = []
        for steps, obj, composite in frontier:
            for target in targets:
                for f in C.hom(obj, target):
                    for i in C.points(target):
                        k, incl = C.fiber(f, i)
                        reached = C.compose(composite, incl)
                        if reached in seen:
                            continue
                        seen.add(reached)
                        chain = steps + ((f, i),)
                        if C.point_count(k) == goal:
                            w = finish_witness(C, m, chain)
                            if w is not None:
                                return w
                        advanced.append((chain, k, reached))
        frontier = advanced
    return None


# ── Pullback along interval inclusions ────────────────────────────────────────

def _pullback_chain(C: CategoryHandle, f: Mor, m: Mor, w: IntervalWitness):
    if f.tgt != m.tgt:
        raise CompositionError(f"interval_pullback: {f.tgt} != {m.tgt}")
    current, proj, obj = f, C.identity(f.src), f.src
    steps = []
    for g, i in w.steps:
        along = C.compose(g, current)
        steps.append((along, i))
        obj, l_incl = C.fiber(along, i)
        _, j_incl = C.fiber(g, i)
        current = C.factor_through(j_incl, C.compose(current, l_incl))
        proj = C.compose(proj, l_incl)
    to_interval = C.compose(C.inverse(w.iso), current)
    return obj, proj, to_interval, tuple(steps)


def interval_pullback(C: CategoryHandle, f: Mor, m: Mor, w: IntervalWitness) -> tuple[ObjCode, Mor, Mor]:
    """K ×_J L for the interval inclusion m: K -> J witnessed by w and f: L -> J.

    Returns (K ×_J L, projection to L, projection to K).
    """
    obj, proj, to_interval, _ = _pullback_chain(C, f, m, w)
    return obj, proj, to_interval


def pullback_projection_witness(C: CategoryHandle, f: Mor, m: Mor, w: IntervalWitness) -> IntervalWitness:
    obj, _, _, steps = _pullback_chain(C, f, m, w)
    return IntervalWitness(steps, C.identity(obj))

"""
OpCat — Operator-category handles
One handle per instance behind a uniform interface: terminal object, points,
finite hom-sets, composition, identities and fibers. Everything else
(factorisations, inverses, lifts) is derived from hom_over.
"""
import itertools
from functools import lru_cache
from typing import Hashable, Iterator

from codes import Cyc, Fin, Mor, ObjCode, Ord, Semidir, Triv, Trunc, Wreath
from errors import CompositionError, UniquenessError

Point = Hashable


class CategoryHandle:
    kind = "abstract"
    # Interval inclusions can only be validated against a caller-supplied witness.
    witness_only = False

    def __init__(self, name: str) -> None:
        self.name = name

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"

    # ── Primitives ────────────────────────────────────────────────────────────

    def terminal(self) -> ObjCode:
        raise NotImplementedError

    def objects(self, bound: int, fiber_bound: int | None = None) -> tuple[ObjCode, ...]:
        """Objects with at most `bound` points. Only wreaths read `fiber_bound`."""
        raise NotImplementedError

    def points(self, obj: ObjCode) -> tuple[Point, ...]:
        raise NotImplementedError

    def hom(self, src: ObjCode, tgt: ObjCode) -> tuple[Mor, ...]:
        raise NotImplementedError

    def identity(self, obj: ObjCode) -> Mor:
        raise NotImplementedError

    def image(self, f: Mor, p: Point) -> Point:
        raise NotImplementedError

    def point_mor(self, obj: ObjCode, p: Point) -> Mor:
        raise NotImplementedError

    def bang(self, obj: ObjCode) -> Mor:
        raise NotImplementedError

    def fiber(self, f: Mor, p: Point) -> tuple[ObjCode, Mor]:
        raise NotImplementedError

    def _compose(self, g: Mor, f: Mor) -> Mor:
        raise NotImplementedError

    # ── Derived ───────────────────────────────────────────────────────────────

    def compose(self, g: Mor, f: Mor) -> Mor:
        if f.tgt != g.src:
            raise CompositionError(f"cannot compose {g} after {f}: {f.tgt} != {g.src}")
        return self._compose(g, f)

    def compose_all(self, *mors: Mor) -> Mor:
        """compose_all(h, g, f) == h∘g∘f"""
        result = mors[-1]
        for m in reversed(mors[:-1]):
            result = self.compose(m, result)
        return result

    @lru_cache(maxsize=None)
    def point_index(self, obj: ObjCode) -> dict:
        return {p: k for k, p in enumerate(self.points(obj))}

    def point_count(self, obj: ObjCode) -> int:
        return len(self.points(obj))

    def point_of(self, m: Mor) -> Point:
        """The point named by a morphism out of a one-point object."""
        return self.image(m, self.points(m.src)[0])

    def constant(self, src: ObjCode, tgt: ObjCode, p: Point) -> Mor:
        return self.compose(self.point_mor(tgt, p), self.bang(src))

    def is_constant_at(self, f: Mor, p: Point) -> bool:
        return f == self.constant(f.src, f.tgt, p)

    def hom_over(self, p: Mor, f: Mor, pins: dict | None = None) -> list[Mor]:
        """All h: X -> A with p∘h = f (p: A -> B, f: X -> B), optionally pinning h on points."""
        if p.tgt != f.tgt:
            raise CompositionError(f"hom_over: {p.tgt} != {f.tgt}")
        return [h for h in self.hom(f.src, p.src)
                if self.compose(p, h) == f and self._respects(h, pins)]

    def _respects(self, h: Mor, pins: dict | None) -> bool:
        return not pins or all(self.image(h, x) == a for x, a in pins.items())

    def factor_through(self, incl: Mor, g: Mor) -> Mor | None:
        """The unique h with incl∘h = g, or None. `incl` must be a monomorphism."""
        solutions = self.hom_over(incl, g)
        if len(solutions) > 1:
            raise UniquenessError(f"{incl} is not a monomorphism", counterexample=[str(s) for s in solutions])
        return solutions[0] if solutions else None

    def inverse(self, f: Mor) -> Mor | None:
        for s in self.hom_over(f, self.identity(f.tgt)):
            if self.compose(s, f) == self.identity(f.src):
                return s
        return None

    def is_iso(self, f: Mor) -> bool:
        return self.inverse(f) is not None

    def isomorphisms(self, src: ObjCode, tgt: ObjCode) -> list[Mor]:
        if self.point_count(src) != self.point_count(tgt):
            return []
        return [f for f in self.hom(src, tgt) if self.is_iso(f)]

    @lru_cache(maxsize=None)
    def iso_class(self, obj: ObjCode) -> tuple[ObjCode, ...]:
        """Every enumerated object isomorphic to obj, obj included."""
        n = self.point_count(obj)
        found = tuple(o for o in self.objects(n)
                      if self.point_count(o) == n and self.isomorphisms(obj, o))
        return found if obj in found else (obj,) + found


# ── Trivial category {1} ──────────────────────────────────────────────────────

class TrivialCategory(CategoryHandle):
    kind = "triv"

    def __init__(self) -> None:
        super().__init__("triv")

    def terminal(self) -> ObjCode:
        return Triv()

    def objects(self, bound: int, fiber_bound: int | None = None) -> tuple[ObjCode, ...]:
        return (Triv(),)

    def points(self, obj: ObjCode) -> tuple[Point, ...]:
        return (0,)

    def hom(self, src: ObjCode, tgt: ObjCode) -> tuple[Mor, ...]:
        return (self.identity(src),)

    def identity(self, obj: ObjCode) -> Mor:
        return Mor(Triv(), Triv(), None)

    def image(self, f: Mor, p: Point) -> Point:
        return 0

    def point_mor(self, obj: ObjCode, p: Point) -> Mor:
        return self.identity(obj)

    def bang(self, obj: ObjCode) -> Mor:
        return self.identity(obj)

    def fiber(self, f: Mor, p: Point) -> tuple[ObjCode, Mor]:
        return Triv(), self.identity(Triv())

    def _compose(self, g: Mor, f: Mor) -> Mor:
        return self.identity(Triv())


# ── Finite sets with table morphisms (O, F, Cyc) ─────────────────────────────

class TableCategory(CategoryHandle):
    """Objects are cardinalities; morphisms are maps on indices 0..n-1."""

    code: type = Fin

    def terminal(self) -> ObjCode:
        return self.code(1)

    def objects(self, bound: int, fiber_bound: int | None = None) -> tuple[ObjCode, ...]:
        return tuple(self.code(n) for n in range(bound + 1))

    def points(self, obj: ObjCode) -> tuple[Point, ...]:
        return tuple(range(obj.n))

    def _extend_ok(self, prefix: tuple[int, ...], value: int) -> bool:
        return True

    def _valid(self, table: tuple[int, ...]) -> bool:
        return True

    def _tables(self, candidates: list[list[int]]) -> Iterator[tuple[int, ...]]:
        """Backtracking over per-position candidates, pruned by _extend_ok."""
        def extend(prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
            if len(prefix) == len(candidates):
                if self._valid(prefix):
                    yield prefix
                return
            for value in candidates[len(prefix)]:
                if self._extend_ok(prefix, value):
                    yield from extend(prefix + (value,))
        return extend(())

    @lru_cache(maxsize=None)
    def hom(self, src: ObjCode, tgt: ObjCode) -> tuple[Mor, ...]:
        full = [list(range(tgt.n))] * src.n
        return tuple(Mor(src, tgt, t) for t in self._tables(full))

    @lru_cache(maxsize=None)
    def identity(self, obj: ObjCode) -> Mor:
        return Mor(obj, obj, tuple(range(obj.n)))

    def image(self, f: Mor, p: Point) -> Point:
        return f.data[p]

    def point_mor(self, obj: ObjCode, p: Point) -> Mor:
        return Mor(self.terminal(), obj, (p,))

    def bang(self, obj: ObjCode) -> Mor:
        return Mor(obj, self.terminal(), (0,) * obj.n)

    @lru_cache(maxsize=None)
    def fiber(self, f: Mor, p: Point) -> tuple[ObjCode, Mor]:
        preimage = tuple(x for x in range(f.src.n) if f.data[x] == p)
        k = self.code(len(preimage))
        return k, Mor(k, f.src, preimage)

    def _compose(self, g: Mor, f: Mor) -> Mor:
        return Mor(f.src, g.tgt, tuple(g.data[x] for x in f.data))

    def hom_over(self, p: Mor, f: Mor, pins: dict | None = None) -> list[Mor]:
        if p.tgt != f.tgt:
            raise CompositionError(f"hom_over: {p.tgt} != {f.tgt}")
        candidates = []
        for x in range(f.src.n):
            if pins and x in pins:
                a = pins[x]
                candidates.append([a] if p.data[a] == f.data[x] else [])
            else:
                candidates.append([a for a in range(p.src.n) if p.data[a] == f.data[x]])
        return [Mor(f.src, p.src, t) for t in self._tables(candidates)]


class FinCategory(TableCategory):
    kind = "F"
    code = Fin

    def __init__(self) -> None:
        super().__init__("F")


class OrdCategory(TableCategory):
    kind = "O"
    code = Ord

    def __init__(self) -> None:
        super().__init__("O")

    def _extend_ok(self, prefix: tuple[int, ...], value: int) -> bool:
        return not prefix or prefix[-1] <= value


def cyclically_between(a: int, b: int, c: int) -> bool:
    """[a, b, c] in the rotation order on 0..n-1: distinct and in cyclic sequence."""
    return a < b < c or b < c < a or c < a < b


class CycCategory(TableCategory):
    kind = "cyc"
    code = Cyc
    witness_only = True

    def __init__(self) -> None:
        super().__init__("cyc")

    def _valid(self, table: tuple[int, ...]) -> bool:
        n = len(table)
        for r, s, t in itertools.permutations(range(n), 3):
            if cyclically_between(table[r], table[s], table[t]) and not cyclically_between(r, s, t):
                return False
        return True


# ── Truncation Φ_{≤n} ─────────────────────────────────────────────────────────

class TruncatedCategory(CategoryHandle):
    kind = "trunc"

    def __init__(self, inner: CategoryHandle, n: int) -> None:
        super().__init__(f"trunc:{inner.name}:{n}")
        self.inner = inner
        self.n = n

    def wrap(self, obj: ObjCode) -> ObjCode:
        return Trunc(obj, self.n)

    def terminal(self) -> ObjCode:
        return self.wrap(self.inner.terminal())

    def objects(self, bound: int, fiber_bound: int | None = None) -> tuple[ObjCode, ...]:
        return tuple(self.wrap(o) for o in self.inner.objects(min(bound, self.n), fiber_bound)
                     if self.inner.point_count(o) <= self.n)

    def iso_class(self, obj: ObjCode) -> tuple[ObjCode, ...]:
        return tuple(self.wrap(o) for o in self.inner.iso_class(obj.inner))

    def points(self, obj: ObjCode) -> tuple[Point, ...]:
        return self.inner.points(obj.inner)

    @lru_cache(maxsize=None)
    def hom(self, src: ObjCode, tgt: ObjCode) -> tuple[Mor, ...]:
        return tuple(Mor(src, tgt, m) for m in self.inner.hom(src.inner, tgt.inner))

    def identity(self, obj: ObjCode) -> Mor:
        return Mor(obj, obj, self.inner.identity(obj.inner))

    def image(self, f: Mor, p: Point) -> Point:
        return self.inner.image(f.data, p)

    def point_mor(self, obj: ObjCode, p: Point) -> Mor:
        return Mor(self.terminal(), obj, self.inner.point_mor(obj.inner, p))

    def bang(self, obj: ObjCode) -> Mor:
        return Mor(obj, self.terminal(), self.inner.bang(obj.inner))

    def fiber(self, f: Mor, p: Point) -> tuple[ObjCode, Mor]:
        k, incl = self.inner.fiber(f.data, p)
        return self.wrap(k), Mor(self.wrap(k), f.src, incl)

    def _compose(self, g: Mor, f: Mor) -> Mor:
        return Mor(f.src, g.tgt, self.inner.compose(g.data, f.data))

    def hom_over(self, p: Mor, f: Mor, pins: dict | None = None) -> list[Mor]:
        if p.tgt != f.tgt:
            raise CompositionError(f"hom_over: {p.tgt} != {f.tgt}")
        return [Mor(f.src, p.src, h) for h in self.inner.hom_over(p.data, f.data, pins)]


# ── Wreath product Ψ≀Φ ────────────────────────────────────────────────────────

class WreathCategory(CategoryHandle):
    """Objects (I, {M_i}) with I in the outer category and M_i in the inner one.

    Morphism data is (η, ω) with ω indexed by the points of the source base.
    """
    kind = "wreath"

    def __init__(self, inner: CategoryHandle, outer: CategoryHandle) -> None:
        super().__init__(f"wreath:{inner.name}:{outer.name}")
        self.inner = inner
        self.outer = outer
        self.witness_only = inner.witness_only or outer.witness_only

    def terminal(self) -> ObjCode:
        return Wreath(self.outer.terminal(), (self.inner.terminal(),))

    @lru_cache(maxsize=None)
    def objects(self, bound: int, fiber_bound: int | None = None) -> tuple[ObjCode, ...]:
        """Without `fiber_bound`, bases and total points are both capped by `bound`.

        With it, `bound` caps the base and `fiber_bound` caps each fiber separately.
        """
        inner_objs = self.inner.objects(bound if fiber_bound is None else fiber_bound)
        out = []
        for base in self.outer.objects(bound):
            k = self.outer.point_count(base)
            for fibers in itertools.product(inner_objs, repeat=k):
                if fiber_bound is not None or sum(self.inner.point_count(f) for f in fibers) <= bound:
                    out.append(Wreath(base, fibers))
        return tuple(out)

    @lru_cache(maxsize=None)
    def iso_class(self, obj: ObjCode) -> tuple[ObjCode, ...]:
        # A base iso η carries the fiber over j to the fiber over η(j).
        out: dict = {}
        src_points = self.outer.points(obj.base)
        for base in self.outer.iso_class(obj.base):
            for eta in self.outer.isomorphisms(obj.base, base):
                over = {self.outer.image(eta, j): obj.fibers[k] for k, j in enumerate(src_points)}
                choices = [self.inner.iso_class(over[q]) for q in self.outer.points(base)]
                for fibers in itertools.product(*choices):
                    out.setdefault(Wreath(base, fibers), None)
        out.setdefault(obj, None)
        return tuple(out)

    @lru_cache(maxsize=None)
    def points(self, obj: ObjCode) -> tuple[Point, ...]:
        return tuple((b, m)
                     for k, b in enumerate(self.outer.points(obj.base))
                     for m in self.inner.points(obj.fibers[k]))

    def fiber_at(self, obj: ObjCode, base_point: Point) -> ObjCode:
        return obj.fibers[self.outer.point_index(obj.base)[base_point]]

    @lru_cache(maxsize=None)
    def hom(self, src: ObjCode, tgt: ObjCode) -> tuple[Mor, ...]:
        out = []
        src_points = self.outer.points(src.base)
        for eta in self.outer.hom(src.base, tgt.base):
            choices = [self.inner.hom(src.fibers[k], self.fiber_at(tgt, self.outer.image(eta, j)))
                       for k, j in enumerate(src_points)]
            for omegas in itertools.product(*choices):
                out.append(Mor(src, tgt, (eta, omegas)))
        return tuple(out)

    @lru_cache(maxsize=None)
    def identity(self, obj: ObjCode) -> Mor:
        return Mor(obj, obj, (self.outer.identity(obj.base),
                              tuple(self.inner.identity(f) for f in obj.fibers)))

    def image(self, f: Mor, p: Point) -> Point:
        eta, omegas = f.data
        j, n = p
        k = self.outer.point_index(f.src.base)[j]
        return self.outer.image(eta, j), self.inner.image(omegas[k], n)

    def point_mor(self, obj: ObjCode, p: Point) -> Mor:
        i, m = p
        fib = self.fiber_at(obj, i)
        return Mor(self.terminal(), obj, (self.outer.point_mor(obj.base, i),
                                          (self.inner.point_mor(fib, m),)))

    def bang(self, obj: ObjCode) -> Mor:
        return Mor(obj, self.terminal(), (self.outer.bang(obj.base),
                                          tuple(self.inner.bang(f) for f in obj.fibers)))

    @lru_cache(maxsize=None)
    def fiber(self, f: Mor, p: Point) -> tuple[ObjCode, Mor]:
        eta, omegas = f.data
        i, m = p
        k_obj, k_incl = self.outer.fiber(eta, i)
        src_index = self.outer.point_index(f.src.base)
        fibs, incls = [], []
        for k in self.outer.points(k_obj):
            j = self.outer.image(k_incl, k)
            fib, incl = self.inner.fiber(omegas[src_index[j]], m)
            fibs.append(fib)
            incls.append(incl)
        obj = Wreath(k_obj, tuple(fibs))
        return obj, Mor(obj, f.src, (k_incl, tuple(incls)))

    def _compose(self, g: Mor, f: Mor) -> Mor:
        f_eta, f_om = f.data
        g_eta, g_om = g.data
        mid = self.outer.point_index(f.tgt.base)
        omegas = tuple(self.inner.compose(g_om[mid[self.outer.image(f_eta, j)]], f_om[k])
                       for k, j in enumerate(self.outer.points(f.src.base)))
        return Mor(f.src, g.tgt, (self.outer.compose(g_eta, f_eta), omegas))

    def hom_over(self, p: Mor, f: Mor, pins: dict | None = None) -> list[Mor]:
        if p.tgt != f.tgt:
            raise CompositionError(f"hom_over: {p.tgt} != {f.tgt}")
        base_pins: dict = {}
        for (xb, _), (ab, _) in (pins or {}).items():
            if base_pins.setdefault(xb, ab) != ab:
                return []
        p_eta, p_om = p.data
        f_eta, f_om = f.data
        x_points = self.outer.points(f.src.base)
        a_index = self.outer.point_index(p.src.base)
        out = []
        for eta in self.outer.hom_over(p_eta, f_eta, base_pins or None):
            choices = []
            for k, xb in enumerate(x_points):
                inner_pins = {xi: ai for (pb, xi), (_, ai) in (pins or {}).items() if pb == xb}
                a = a_index[self.outer.image(eta, xb)]
                choices.append(self.inner.hom_over(p_om[a], f_om[k], inner_pins or None))
            for omegas in itertools.product(*choices):
                out.append(Mor(f.src, p.src, (eta, omegas)))
        return out


def wreath(inner: CategoryHandle, outer: CategoryHandle) -> WreathCategory:
    """Ψ≀Φ with Ψ = inner, Φ = outer."""
    return WreathCategory(inner, outer)


def constant_wreath(inner_obj: ObjCode, outer_obj: ObjCode, outer: CategoryHandle) -> ObjCode:
    """K≀I: the wreath object over I with every fiber equal to K."""
    return Wreath(outer_obj, (inner_obj,) * outer.point_count(outer_obj))


# ── Semidirect product Φ⋊O ────────────────────────────────────────────────────

class SemidirectCategory(CategoryHandle):
    """Objects are chains M_0 -> ... -> M_{n-1} in the parameter category.

    Morphism data is (η, ω): a monotone table and a natural transformation N -> η*M.
    """
    kind = "semidir"
    witness_only = True

    def __init__(self, param: CategoryHandle) -> None:
        super().__init__(f"semidir:{param.name}")
        self.param = param

    def terminal(self) -> ObjCode:
        return Semidir(1, (self.param.terminal(),), ())

    @lru_cache(maxsize=None)
    def objects(self, bound: int, fiber_bound: int | None = None) -> tuple[ObjCode, ...]:
        param_objs = self.param.objects(bound)
        out = []
        for n in range(bound + 1):
            for entries in itertools.product(param_objs, repeat=n):
                if sum(self.param.point_count(e) for e in entries) > bound:
                    continue
                arrow_choices = [self.param.hom(entries[k], entries[k + 1]) for k in range(n - 1)]
                for arrows in itertools.product(*arrow_choices):
                    out.append(Semidir(n, entries, arrows))
        return tuple(out)

    @lru_cache(maxsize=None)
    def iso_class(self, obj: ObjCode) -> tuple[ObjCode, ...]:
        out = [obj]
        for entries in itertools.product(*(self.param.iso_class(e) for e in obj.entries)):
            arrow_choices = [self.param.hom(entries[k], entries[k + 1]) for k in range(obj.n - 1)]
            for arrows in itertools.product(*arrow_choices):
                candidate = Semidir(obj.n, entries, arrows)
                if candidate != obj and self.isomorphisms(obj, candidate):
                    out.append(candidate)
        return tuple(out)

    @lru_cache(maxsize=None)
    def points(self, obj: ObjCode) -> tuple[Point, ...]:
        return tuple((k, p) for k in range(obj.n) for p in self.param.points(obj.entries[k]))

    def chain(self, obj: ObjCode, a: int, b: int) -> Mor:
        """M(a <= b): the composite of arrows a..b-1."""
        result = self.param.identity(obj.entries[a])
        for k in range(a, b):
            result = self.param.compose(obj.arrows[k], result)
        return result

    def _natural(self, src: ObjCode, tgt: ObjCode, eta: tuple[int, ...], omegas: tuple[Mor, ...]) -> bool:
        for j in range(src.n - 1):
            lhs = self.param.compose(self.chain(tgt, eta[j], eta[j + 1]), omegas[j])
            rhs = self.param.compose(omegas[j + 1], src.arrows[j])
            if lhs != rhs:
                return False
        return True

    @lru_cache(maxsize=None)
    def hom(self, src: ObjCode, tgt: ObjCode) -> tuple[Mor, ...]:
        out = []
        for eta in itertools.combinations_with_replacement(range(tgt.n), src.n):
            choices = [self.param.hom(src.entries[j], tgt.entries[eta[j]]) for j in range(src.n)]
            for omegas in itertools.product(*choices):
                if self._natural(src, tgt, eta, omegas):
                    out.append(Mor(src, tgt, (eta, omegas)))
        return tuple(out)

    def identity(self, obj: ObjCode) -> Mor:
        return Mor(obj, obj, (tuple(range(obj.n)), tuple(self.param.identity(e) for e in obj.entries)))

    def image(self, f: Mor, p: Point) -> Point:
        eta, omegas = f.data
        k, q = p
        return eta[k], self.param.image(omegas[k], q)

    def point_mor(self, obj: ObjCode, p: Point) -> Mor:
        k, q = p
        return Mor(self.terminal(), obj, ((k,), (self.param.point_mor(obj.entries[k], q),)))

    def bang(self, obj: ObjCode) -> Mor:
        return Mor(obj, self.terminal(), ((0,) * obj.n, tuple(self.param.bang(e) for e in obj.entries)))

    @lru_cache(maxsize=None)
    def fiber(self, f: Mor, p: Point) -> tuple[ObjCode, Mor]:
        eta, omegas = f.data
        k, q = p
        span = [j for j in range(f.src.n) if eta[j] == k]
        fibs, incls = [], []
        for j in span:
            fib, incl = self.param.fiber(omegas[j], q)
            fibs.append(fib)
            incls.append(incl)
        arrows = []
        for pos in range(len(span) - 1):
            moved = self.param.compose(f.src.arrows[span[pos]], incls[pos])
            arrow = self.param.factor_through(incls[pos + 1], moved)
            if arrow is None:
                raise UniquenessError(f"fiber of {f} at {p}: arrow {pos} does not restrict")
            arrows.append(arrow)
        obj = Semidir(len(span), tuple(fibs), tuple(arrows))
        return obj, Mor(obj, f.src, (tuple(span), tuple(incls)))

    def _compose(self, g: Mor, f: Mor) -> Mor:
        f_eta, f_om = f.data
        g_eta, g_om = g.data
        eta = tuple(g_eta[x] for x in f_eta)
        omegas = tuple(self.param.compose(g_om[f_eta[j]], f_om[j]) for j in range(f.src.n))
        return Mor(f.src, g.tgt, (eta, omegas))

"""
OpCat — Perfect operator categories and the canonical monad
Each perfect handle supplies its point classifier (T, t) and the functor T with
its structure maps e_I: TI -> T and the identification of I with the special
fiber of e_I. Unit, multiplication, classifying maps and the colax structure on
admissible functors are all found by search with a hard uniqueness assertion.
"""
from dataclasses import dataclass
from functools import lru_cache

from categories import (
    CategoryHandle,
    FinCategory,
    OrdCategory,
    Point,
    TrivialCategory,
    WreathCategory,
)
from codes import Fin, Mor, ObjCode, Ord, Triv, Wreath
from errors import CompositionError, NotPerfectError, UniquenessError, log


@dataclass(frozen=True)
class PointedObj:
    obj: ObjCode
    basepoint: Point

    def __str__(self) -> str:
        return f"({self.obj},{self.basepoint})"


class PerfectHandle:
    """A perfect operator category. Subclasses implement the per-instance primitives."""

    def __init__(self, C: CategoryHandle) -> None:
        self.C = C
        self.name = C.name

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"

    # ── Primitives ────────────────────────────────────────────────────────────

    def point_classifier(self) -> PointedObj:
        raise NotImplementedError

    def T(self, obj: ObjCode) -> ObjCode:
        raise NotImplementedError

    def e(self, obj: ObjCode) -> Mor:
        """Structure map TI -> T."""
        raise NotImplementedError

    def T_mor(self, f: Mor) -> Mor:
        raise NotImplementedError

    def embed(self, obj: ObjCode) -> Mor:
        """I -> TI onto the special fiber of e_I."""
        raise NotImplementedError

    # ── Derived ───────────────────────────────────────────────────────────────

    @property
    def Tc(self) -> ObjCode:
        return self.point_classifier().obj

    @property
    def t(self) -> Point:
        return self.point_classifier().basepoint

    def apply_T(self, obj: ObjCode) -> tuple[ObjCode, Mor]:
        return self.T(obj), self.e(obj)

    def special_fiber(self, f: Mor) -> tuple[ObjCode, Mor]:
        """Fiber of f: X -> T at the special point."""
        if f.tgt != self.Tc:
            raise CompositionError(f"special_fiber: {f} does not land in {self.Tc}")
        return self.C.fiber(f, self.t)

    def is_conservative(self, m: Mor, w: Point, v: Point) -> bool:
        """The fiber of m at v is a terminal object sitting at w."""
        k, incl = self.C.fiber(m, v)
        if self.C.point_count(k) != 1 or not self.C.is_iso(self.C.bang(k)):
            return False
        return self.C.image(incl, self.C.points(k)[0]) == w

    def conservative_maps(self, obj: ObjCode, i: Point) -> list[Mor]:
        return [h for h in self.C.hom(obj, self.Tc) if self.is_conservative(h, i, self.t)]

    @lru_cache(maxsize=None)
    def classify(self, obj: ObjCode, i: Point) -> Mor:
        """χ_i: the unique conservative map (I, i) -> (T, t)."""
        found = self.conservative_maps(obj, i)
        if len(found) != 1:
            raise UniquenessError(f"{self.name}: {len(found)} classifying maps for {i} in {obj}",
                                  counterexample=[h.to_json() for h in found])
        return found[0]

    @lru_cache(maxsize=None)
    def lift_over_T(self, f: Mor, g: Mor) -> Mor:
        """The unique h: X -> TI with e_I∘h = f restricting to g: X_t -> I on special fibers."""
        C, obj = self.C, g.tgt
        x_t, incl = self.special_fiber(f)
        if g.src != x_t:
            raise CompositionError(f"lift_over_T: {g.src} is not the special fiber {x_t}")
        target = C.compose(self.embed(obj), g)
        pins = {C.image(incl, x): C.image(target, x) for x in C.points(x_t)}
        found = [h for h in C.hom_over(self.e(obj), f, pins) if C.compose(h, incl) == target]
        if len(found) != 1:
            raise UniquenessError(f"{self.name}: {len(found)} lifts of {f} over T{obj}",
                                  counterexample={"f": f.to_json(), "g": g.to_json(),
                                                  "found": [h.to_json() for h in found]})
        return found[0]

    @lru_cache(maxsize=None)
    def unit(self, obj: ObjCode) -> Mor:
        """ι_I: lift of the constant map at t, identity on special fibers."""
        f = self.C.constant(obj, self.Tc, self.t)
        _, incl = self.special_fiber(f)
        return self.lift_over_T(f, incl)

    @lru_cache(maxsize=None)
    def kappa(self, obj: ObjCode) -> Mor:
        """(TI)_t -> I, inverse to the corestriction of ι_I."""
        _, incl = self.special_fiber(self.e(obj))
        k = self.C.factor_through(self.unit(obj), incl)
        if k is None:
            raise UniquenessError(f"{self.name}: special fiber of e_{obj} is not the image of ι")
        return k

    @lru_cache(maxsize=None)
    def chi_t(self) -> Mor:
        """TT -> T, classifying ι_T(t)."""
        return self.classify(self.T(self.Tc), self.C.image(self.unit(self.Tc), self.t))

    @lru_cache(maxsize=None)
    def rho(self, phi: Mor) -> Mor:
        """J_t -> (TJ)_t for φ: J -> T, where the second fiber is taken along χ_t∘Tφ."""
        C = self.C
        _, incl_x = self.special_fiber(C.compose(self.chi_t(), self.T_mor(phi)))
        _, incl_t = self.special_fiber(phi)
        r = C.factor_through(incl_x, C.compose(self.unit(phi.src), incl_t))
        if r is None:
            raise UniquenessError(f"{self.name}: ι does not restrict over {phi}")
        return r

    def invert(self, f: Mor) -> Mor:
        inv = self.C.inverse(f)
        if inv is None:
            raise UniquenessError(f"{self.name}: {f} is not invertible", counterexample=f.to_json())
        return inv

    @lru_cache(maxsize=None)
    def sigma(self, phi: Mor) -> Mor:
        """σ_φ: TJ -> T(J_t) for φ: J -> T."""
        f = self.C.compose(self.chi_t(), self.T_mor(phi))
        return self.lift_over_T(f, self.invert(self.rho(phi)))

    @lru_cache(maxsize=None)
    def mult(self, obj: ObjCode) -> Mor:
        """μ_I: T²I -> TI over χ_t∘T(e_I), with κ on special fibers."""
        e = self.e(obj)
        f = self.C.compose(self.chi_t(), self.T_mor(e))
        g = self.C.compose(self.kappa(obj), self.invert(self.rho(e)))
        log("monad", f"{self.name}: μ at {obj}")
        return self.lift_over_T(f, g)


# ── Instances ─────────────────────────────────────────────────────────────────

class TrivialPerfect(PerfectHandle):
    def point_classifier(self) -> PointedObj:
        return PointedObj(Triv(), 0)

    def T(self, obj: ObjCode) -> ObjCode:
        return Triv()

    def e(self, obj: ObjCode) -> Mor:
        return self.C.identity(obj)

    def T_mor(self, f: Mor) -> Mor:
        return f

    def embed(self, obj: ObjCode) -> Mor:
        return self.C.identity(obj)


class OrdPerfect(PerfectHandle):
    """T adds a new least and a new greatest element."""

    def point_classifier(self) -> PointedObj:
        return PointedObj(Ord(3), 1)

    def T(self, obj: ObjCode) -> ObjCode:
        return Ord(obj.n + 2)

    def e(self, obj: ObjCode) -> Mor:
        return Mor(self.T(obj), Ord(3), (0,) + (1,) * obj.n + (2,))

    def T_mor(self, f: Mor) -> Mor:
        return Mor(self.T(f.src), self.T(f.tgt), (0,) + tuple(v + 1 for v in f.data) + (f.tgt.n + 1,))

    def embed(self, obj: ObjCode) -> Mor:
        return Mor(obj, self.T(obj), tuple(k + 1 for k in range(obj.n)))


class FinPerfect(PerfectHandle):
    """T adds a disjoint basepoint, placed last."""

    def point_classifier(self) -> PointedObj:
        return PointedObj(Fin(2), 1)

    def T(self, obj: ObjCode) -> ObjCode:
        return Fin(obj.n + 1)

    def e(self, obj: ObjCode) -> Mor:
        return Mor(self.T(obj), Fin(2), (1,) * obj.n + (0,))

    def T_mor(self, f: Mor) -> Mor:
        return Mor(self.T(f.src), self.T(f.tgt), tuple(f.data) + (f.tgt.n,))

    def embed(self, obj: ObjCode) -> Mor:
        return Mor(obj, self.T(obj), tuple(range(obj.n)))


class WreathPerfect(PerfectHandle):
    """T(I, M) = (T_Φ I, N) with N = T_Ψ M_i over the old points and 1 over the new ones."""

    C: WreathCategory

    def __init__(self, C: WreathCategory, inner: PerfectHandle, outer: PerfectHandle) -> None:
        super().__init__(C)
        self.inner = inner
        self.outer = outer

    @lru_cache(maxsize=None)
    def point_classifier(self) -> PointedObj:
        o, i = self.outer.point_classifier(), self.inner.point_classifier()
        unit = self.C.inner.terminal()
        fibers = tuple(i.obj if b == o.basepoint else unit for b in self.C.outer.points(o.obj))
        return PointedObj(Wreath(o.obj, fibers), (o.basepoint, i.basepoint))

    def old_points(self, base: ObjCode) -> dict:
        """Points of T_Φ(base) in the image of the embedding, mapped to their source index."""
        emb = self.outer.embed(base)
        return {self.C.outer.image(emb, b): k for k, b in enumerate(self.C.outer.points(base))}

    @lru_cache(maxsize=None)
    def T(self, obj: ObjCode) -> ObjCode:
        old = self.old_points(obj.base)
        unit = self.C.inner.terminal()
        base = self.outer.T(obj.base)
        fibers = tuple(self.inner.T(obj.fibers[old[j]]) if j in old else unit
                       for j in self.C.outer.points(base))
        return Wreath(base, fibers)

    @lru_cache(maxsize=None)
    def e(self, obj: ObjCode) -> Mor:
        old = self.old_points(obj.base)
        unit_id = self.C.inner.identity(self.C.inner.terminal())
        comps = tuple(self.inner.e(obj.fibers[old[j]]) if j in old else unit_id
                      for j in self.C.outer.points(self.outer.T(obj.base)))
        return Mor(self.T(obj), self.Tc, (self.outer.e(obj.base), comps))

    @lru_cache(maxsize=None)
    def T_mor(self, f: Mor) -> Mor:
        eta, omegas = f.data
        old = self.old_points(f.src.base)
        unit_id = self.C.inner.identity(self.C.inner.terminal())
        comps = tuple(self.inner.T_mor(omegas[old[j]]) if j in old else unit_id
                      for j in self.C.outer.points(self.outer.T(f.src.base)))
        return Mor(self.T(f.src), self.T(f.tgt), (self.outer.T_mor(eta), comps))

    @lru_cache(maxsize=None)
    def embed(self, obj: ObjCode) -> Mor:
        return Mor(obj, self.T(obj), (self.outer.embed(obj.base),
                                      tuple(self.inner.embed(m) for m in obj.fibers)))

    def conservative_maps(self, obj: ObjCode, i: Point) -> list[Mor]:
        # A wreath map is conservative at (b, m) iff its base is conservative at b
        # and its component at b is conservative at m; every other component lands in 1.
        b, m = i
        k = self.C.outer.point_index(obj.base)[b]
        out = []
        for eta in self.outer.conservative_maps(obj.base, b):
            for omega in self.inner.conservative_maps(obj.fibers[k], m):
                comps = tuple(omega if q == k else self.C.inner.bang(fib)
                              for q, fib in enumerate(obj.fibers))
                out.append(Mor(obj, self.Tc, (eta, comps)))
        return out


@lru_cache(maxsize=None)
def perfect(C: CategoryHandle) -> PerfectHandle:
    """The perfect structure on C, or NotPerfectError (truncations, cyclic, semidirect)."""
    if isinstance(C, TrivialCategory):
        return TrivialPerfect(C)
    if isinstance(C, OrdCategory):
        return OrdPerfect(C)
    if isinstance(C, FinCategory):
        return FinPerfect(C)
    if isinstance(C, WreathCategory):
        return WreathPerfect(C, perfect(C.inner), perfect(C.outer))
    raise NotPerfectError(f"{C.name} is not a perfect operator category")


def is_perfect(C: CategoryHandle) -> bool:
    try:
        perfect(C)
    except NotPerfectError:
        return False
    return True


# ── Colax structure on admissible functors ────────────────────────────────────

@lru_cache(maxsize=None)
def alpha(F, obj: ObjCode) -> Mor:
    """α_{F,I}: F(T_Ψ I) -> T_Φ(F I) for an admissible F: Ψ -> Φ."""
    P, Q = perfect(F.source), perfect(F.target)
    D = Q.C
    chi = Q.classify(F(P.Tc), F.point_map(P.Tc, P.t))
    f = D.compose(chi, F(P.e(obj)))
    _, incl = Q.special_fiber(f)
    g = D.factor_through(F(P.unit(obj)), incl)
    if g is None:
        raise UniquenessError(f"{F.name}: special fiber of F(T{obj}) does not factor through F(ι)",
                              counterexample=f.to_json())
    return Q.lift_over_T(f, g)


def brute_conservative_maps(P: PerfectHandle, obj: ObjCode, i: Point) -> list[Mor]:
    """Unpruned search over hom(I, T); used to certify the pruned wreath search."""
    return PerfectHandle.conservative_maps(P, obj, i)

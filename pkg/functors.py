"""
OpCat — Admissible functors and operator morphisms
The functor zoo (points, terminal embedding, truncation inclusion, wreath
projection and sections) plus the bounded checks that certify each claimed flag.
"""
from dataclasses import dataclass
from typing import Callable

from categories import (
    CategoryHandle,
    FinCategory,
    Point,
    TrivialCategory,
    TruncatedCategory,
    WreathCategory,
)
from codes import Fin, Mor, ObjCode, Triv, Wreath
from config import ASSOC_SAMPLES, SEED
from models import LawCheck, LawReport
from reports import ReportBuilder, mor_json, sample_chains


@dataclass(frozen=True, eq=False)
class AdmFunctor:
    source: CategoryHandle
    target: CategoryHandle
    obj_map: Callable[[ObjCode], ObjCode]
    mor_map: Callable[[Mor], Mor]
    name: str
    admissible: bool = True
    operator_morphism: bool = False

    def __call__(self, x):
        return self.mor_map(x) if isinstance(x, Mor) else self.obj_map(x)

    def point_map(self, obj: ObjCode, p: Point) -> Point:
        return self.target.point_of(self.mor_map(self.source.point_mor(obj, p)))


# ── Zoo ───────────────────────────────────────────────────────────────────────

def underlying_points_functor(C: CategoryHandle, target: FinCategory | None = None) -> AdmFunctor:
    """u: I ↦ |I|."""
    def obj_map(obj: ObjCode) -> ObjCode:
        return Fin(C.point_count(obj))

    def mor_map(f: Mor) -> Mor:
        index = C.point_index(f.tgt)
        return Mor(obj_map(f.src), obj_map(f.tgt), tuple(index[C.image(f, p)] for p in C.points(f.src)))

    return AdmFunctor(C, target or FinCategory(), obj_map, mor_map, f"u:{C.name}",
                      admissible=True, operator_morphism=True)


def terminal_embedding(C: CategoryHandle) -> AdmFunctor:
    return AdmFunctor(TrivialCategory(), C,
                      lambda _: C.terminal(),
                      lambda _: C.identity(C.terminal()),
                      f"terminal:{C.name}", admissible=True, operator_morphism=True)


def truncation_inclusion(C: CategoryHandle, n: int) -> AdmFunctor:
    return AdmFunctor(TruncatedCategory(C, n), C,
                      lambda obj: obj.inner,
                      lambda f: f.data,
                      f"include:{C.name}:{n}", admissible=True, operator_morphism=True)


def to_trivial(C: CategoryHandle) -> AdmFunctor:
    """The unique functor Φ -> {1}: admissible, generally not an operator morphism."""
    triv = TrivialCategory()
    return AdmFunctor(C, triv,
                      lambda _: Triv(),
                      lambda _: triv.identity(Triv()),
                      f"collapse:{C.name}", admissible=True, operator_morphism=False)


def identity_functor(C: CategoryHandle) -> AdmFunctor:
    return AdmFunctor(C, C, lambda obj: obj, lambda f: f, f"id:{C.name}",
                      admissible=True, operator_morphism=True)


def wreath_projection(W: WreathCategory) -> AdmFunctor:
    """(I, M) ↦ I. Surjective on points only when no inner object is point-free."""
    surjective = all(W.inner.point_count(o) > 0 for o in W.inner.objects(1))
    return AdmFunctor(W, W.outer,
                      lambda obj: obj.base,
                      lambda f: f.data[0],
                      f"project:{W.name}", admissible=True, operator_morphism=surjective)


def wreath_section(W: WreathCategory, position: str = "inner") -> AdmFunctor:
    """inner: M ↦ (1, [M]); outer: I ↦ (I, [1, ..., 1])."""
    if position == "inner":
        base = W.outer.terminal()
        return AdmFunctor(W.inner, W,
                          lambda obj: Wreath(base, (obj,)),
                          lambda f: Mor(Wreath(base, (f.src,)), Wreath(base, (f.tgt,)),
                                        (W.outer.identity(base), (f,))),
                          f"section-inner:{W.name}", admissible=True, operator_morphism=True)
    if position == "outer":
        unit = W.inner.terminal()

        def obj_map(obj: ObjCode) -> ObjCode:
            return Wreath(obj, (unit,) * W.outer.point_count(obj))

        def mor_map(f: Mor) -> Mor:
            return Mor(obj_map(f.src), obj_map(f.tgt),
                       (f, (W.inner.identity(unit),) * W.outer.point_count(f.src)))

        return AdmFunctor(W.outer, W, obj_map, mor_map, f"section-outer:{W.name}",
                          admissible=True, operator_morphism=True)
    raise ValueError(f"unknown section position: {position}")


def compose_functors(G: AdmFunctor, F: AdmFunctor) -> AdmFunctor:
    """G∘F (F applied first)."""
    return AdmFunctor(F.source, G.target,
                      lambda obj: G.obj_map(F.obj_map(obj)),
                      lambda f: G.mor_map(F.mor_map(f)),
                      f"{G.name}∘{F.name}",
                      admissible=F.admissible and G.admissible,
                      operator_morphism=F.operator_morphism and G.operator_morphism)


def functor_zoo(C: CategoryHandle) -> list[AdmFunctor]:
    """Every zoo functor with C as source or target."""
    zoo = [underlying_points_functor(C), terminal_embedding(C), to_trivial(C), identity_functor(C)]
    if isinstance(C, TruncatedCategory):
        zoo.append(truncation_inclusion(C.inner, C.n))
    if isinstance(C, WreathCategory):
        zoo += [wreath_projection(C), wreath_section(C, "inner"), wreath_section(C, "outer")]
    return zoo


# ── Checks ────────────────────────────────────────────────────────────────────

def _admissible_checks(F: AdmFunctor, bound: int, rb: ReportBuilder, seed: int, samples: int) -> None:
    S, T = F.source, F.target
    objs = S.objects(bound)

    image_of_terminal = F(S.terminal())
    rb.record("preserves-terminal", image_of_terminal,
              T.point_count(image_of_terminal) == 1
              and all(len(T.hom(Y, image_of_terminal)) == 1 for Y in T.objects(bound)))

    for obj in objs:
        rb.record("preserves-identity", obj, F(S.identity(obj)) == T.identity(F(obj)))
    for f, g in sample_chains(S, objs, 2, samples, seed):
        rb.guard("preserves-composition", f.src,
                 lambda: F(S.compose(g, f)) == T.compose(F(g), F(f)), mor_json(g, f))

    for J in objs:
        for I in objs:
            for f in S.hom(J, I):
                for i in S.points(I):
                    rb.guard("preserves-fibers", J, lambda: _fiber_preserved(F, f, i), mor_json(f))


def _fiber_preserved(F: AdmFunctor, f: Mor, i: Point) -> bool:
    S, T = F.source, F.target
    _, incl = S.fiber(f, i)
    _, target_incl = T.fiber(F(f), F.point_map(f.tgt, i))
    comparison = T.factor_through(target_incl, F(incl))
    return comparison is not None and T.is_iso(comparison)


def check_admissible(F: AdmFunctor, bound: int, seed: int = SEED, samples: int = ASSOC_SAMPLES) -> LawReport:
    rb = ReportBuilder("admissible", F.name, bound)
    _admissible_checks(F, bound, rb, seed, samples)
    return rb.build()


def check_operator_morphism(F: AdmFunctor, bound: int, seed: int = SEED, samples: int = ASSOC_SAMPLES) -> LawReport:
    """Admissibility plus surjectivity (hence bijectivity) of |I| -> |FI|."""
    rb = ReportBuilder("operator-morphism", F.name, bound)
    _admissible_checks(F, bound, rb, seed, samples)
    S, T = F.source, F.target
    for obj in S.objects(bound):
        image = [F.point_map(obj, p) for p in S.points(obj)]
        target_points = T.points(F(obj))
        rb.record("point-surjective", obj, set(image) == set(target_points), [str(p) for p in image])
        rb.record("point-bijective", obj, len(set(image)) == len(image) == len(target_points))
    return rb.build()


def two_out_of_three(F: AdmFunctor, G: AdmFunctor, bound: int) -> LawCheck:
    """With F an operator morphism and H = F∘G: G is an operator morphism iff H is."""
    H = compose_functors(F, G)
    f_ok = check_operator_morphism(F, bound).ok
    g_ok = check_operator_morphism(G, bound).ok
    h_ok = check_operator_morphism(H, bound).ok
    return LawCheck(law="two-out-of-three", object=H.name, passed=f_ok and g_ok == h_ok,
                    counterexample=None if f_ok and g_ok == h_ok else {"F": f_ok, "G": g_ok, "H": h_ok})


def coronal_check(W: WreathCategory, bound: int) -> LawReport:
    """The fiber of the wreath projection over I is the |I|-fold power of the inner category."""
    rb = ReportBuilder("coronal", W.name, bound)
    inner = W.inner
    for base in W.outer.objects(bound):
        over = [o for o in W.objects(bound) if o.base == base]
        base_id = W.outer.identity(base)
        vertical = {}
        for N in over:
            for M in over:
                homs = tuple(h for h in W.hom(N, M) if h.data[0] == base_id)
                vertical[N, M] = homs
                predicted = 1
                for n_obj, m_obj in zip(N.fibers, M.fibers):
                    predicted *= len(inner.hom(n_obj, m_obj))
                rb.record("fiber-hom-count", base, len(homs) == predicted,
                          {"src": str(N), "tgt": str(M), "count": len(homs), "predicted": predicted})
        for N in over:
            for M in over:
                for L in over:
                    for h1 in vertical[N, M]:
                        for h2 in vertical[M, L]:
                            composite = W.compose(h2, h1)
                            componentwise = tuple(inner.compose(b, a) for a, b in zip(h1.data[1], h2.data[1]))
                            rb.record("fiber-composition", base,
                                      composite.data == (base_id, componentwise), mor_json(h2, h1))
    return rb.build()

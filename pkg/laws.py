"""
OpCat — Law suites
Operator-category axioms, monad laws for T and the colax laws for α_F, each
checked exhaustively over objects within the bound (composition and naturality
squares on seeded samples).
"""
from categories import CategoryHandle, WreathCategory
from config import ASSOC_SAMPLES, CONE_BOUND, SEED
from errors import RecognitionUnavailable, log
from functors import AdmFunctor, check_admissible, check_operator_morphism, coronal_check, functor_zoo, two_out_of_three
from intervals import (
    fiber_violation,
    fiber_witness,
    interval_pullback,
    is_interval_inclusion,
    pullback_projection_witness,
    pullback_violation,
    validate_witness,
)
from models import LawReport
from perfect import PerfectHandle, alpha, is_perfect, perfect
from reports import ReportBuilder, mor_json, sample_chains, sample_members


# ── Operator-category axioms ──────────────────────────────────────────────────

def opcat_law_suite(C: CategoryHandle, bound: int, cone_bound: int = CONE_BOUND,
                    seed: int = SEED, samples: int = ASSOC_SAMPLES,
                    fiber_bound: int | None = None) -> LawReport:
    rb = ReportBuilder("axioms", C.name, bound, fiber_bound)
    objs = C.objects(bound, fiber_bound)
    term = C.terminal()

    rb.record("terminal", term, C.point_count(term) == 1)
    for obj in objs:
        rb.record("terminal", obj, len(C.hom(obj, term)) == 1, [str(h) for h in C.hom(obj, term)])
        rb.record("points-are-homs", obj,
                  len(C.hom(term, obj)) == C.point_count(obj)
                  and all(C.point_of(C.point_mor(obj, p)) == p for p in C.points(obj)))

    for src in objs:
        for tgt in objs:
            homs = C.hom(src, tgt)
            rb.record("hom-duplicate-free", src, len(set(homs)) == len(homs))
            for f in homs:
                rb.record("identity", src,
                          C.compose(C.identity(tgt), f) == f and C.compose(f, C.identity(src)) == f,
                          mor_json(f))
    for f, g, h in sample_chains(C, objs, 3, samples, seed):
        rb.guard("associativity", f.src,
                 lambda: C.compose(h, C.compose(g, f)) == C.compose(C.compose(h, g), f),
                 mor_json(h, g, f))

    log("laws", f"axioms {C.name}: fibers")
    for src in objs:
        for tgt in objs:
            for f in C.hom(src, tgt):
                for i in C.points(tgt):
                    _fiber_laws(C, rb, f, i, cone_bound)

    if not C.witness_only:
        _recognition_laws(C, rb, objs, cone_bound)
    if isinstance(C, WreathCategory):
        rb.merge(coronal_check(C, bound))
    return rb.build()


def _fiber_laws(C: CategoryHandle, rb: ReportBuilder, f, i, cone_bound: int) -> None:
    k, incl = C.fiber(f, i)
    rb.record("fiber-constant", f.src, C.is_constant_at(C.compose(f, incl), i), mor_json(f))
    violation = fiber_violation(C, f, i, cone_bound)
    rb.record("fiber-pullback", f.src, violation is None, {"map": f.to_json(), "reason": violation})
    m, w = fiber_witness(C, f, i)
    rb.record("fiber-witness", f.src, validate_witness(C, m, w), mor_json(f))
    for j in C.points(f.src):
        rb.record("interval-dichotomy", f.src, C.point_count(C.fiber(m, j)[0]) <= 1, mor_json(m))
    for X in C.objects(cone_bound):
        images = [C.compose(m, h) for h in C.hom(X, k)]
        rb.record("interval-mono", f.src, len(set(images)) == len(images), mor_json(m))


def _recognition_laws(C: CategoryHandle, rb: ReportBuilder, objs, cone_bound: int) -> None:
    for src in objs:
        for tgt in objs:
            for m in C.hom(src, tgt):
                try:
                    w = is_interval_inclusion(C, m)
                except RecognitionUnavailable:
                    return
                if w is None:
                    continue
                rb.record("interval-witness", src, validate_witness(C, m, w), mor_json(m))
                for L in objs:
                    for psi in C.hom(L, src):
                        composite = is_interval_inclusion(C, C.compose(m, psi)) is not None
                        rb.record("interval-left-cancel", src,
                                  composite == (is_interval_inclusion(C, psi) is not None),
                                  mor_json(m, psi))
                    for f in C.hom(L, tgt):
                        rb.guard("interval-pullback", src,
                                 lambda: _pullback_ok(C, f, m, w, cone_bound), mor_json(f, m))


def _pullback_ok(C: CategoryHandle, f, m, w, cone_bound: int) -> bool:
    _, proj, to_k = interval_pullback(C, f, m, w)
    return (is_interval_inclusion(C, proj, pullback_projection_witness(C, f, m, w)) is not None
            and pullback_violation(C, proj, to_k, f, m, cone_bound) is None)


# ── Monad laws ────────────────────────────────────────────────────────────────

def monad_law_suite(P: PerfectHandle, bound: int, cone_bound: int = CONE_BOUND,
                    seed: int = SEED, samples: int = ASSOC_SAMPLES,
                    fiber_bound: int | None = None) -> LawReport:
    """Per-object laws run on every object; maps into T_c beyond `samples` are sampled."""
    C = P.C
    rb = ReportBuilder("monad", P.name, bound, fiber_bound)
    objs = C.objects(bound, fiber_bound)

    rb.guard("e-star-iso", C.terminal(), lambda: C.is_iso(P.e(C.terminal())))
    for obj in objs:
        for i in C.points(obj):
            rb.guard("point-classifier", obj, lambda: P.classify(obj, i) is not None)
        log("laws", f"monad {P.name}: {obj}")
        T_obj, e_obj = P.apply_T(obj)
        ident = C.identity(T_obj)
        rb.guard("counit-iso", obj, lambda: C.is_iso(P.kappa(obj)))
        rb.guard("left-unit", obj, lambda: C.compose(P.mult(obj), P.unit(T_obj)) == ident)
        rb.guard("right-unit", obj, lambda: C.compose(P.mult(obj), P.T_mor(P.unit(obj))) == ident)
        rb.guard("associativity", obj,
                 lambda: C.compose(P.mult(obj), P.T_mor(P.mult(obj)))
                 == C.compose(P.mult(obj), P.mult(T_obj)))
        rb.guard("mult-via-sigma", obj,
                 lambda: P.mult(obj) == C.compose(P.T_mor(P.kappa(obj)), P.sigma(e_obj)))
        rb.guard("unit-pullback", obj,
                 lambda: pullback_violation(C, C.identity(obj),
                                            C.compose(P.unit(T_obj), P.unit(obj)),
                                            P.unit(obj), P.mult(obj), cone_bound) is None)
        for phi in sample_members(C.hom(obj, P.Tc), samples, seed):
            rb.guard("rho-iso", obj, lambda: C.is_iso(P.rho(phi)), mor_json(phi))
            rb.guard("sigma-square", obj, lambda: _sigma_square(P, phi), mor_json(phi))

    for (f,) in sample_chains(C, objs, 1, samples, seed):
        rb.record("T-identity", f.src, P.T_mor(C.identity(f.src)) == C.identity(P.T(f.src)))
        rb.record("e-natural", f.src, C.compose(P.e(f.tgt), P.T_mor(f)) == P.e(f.src), mor_json(f))
        rb.guard("unit-natural", f.src,
                 lambda: C.compose(P.T_mor(f), P.unit(f.src)) == C.compose(P.unit(f.tgt), f),
                 mor_json(f))
        rb.guard("mult-natural", f.src,
                 lambda: C.compose(P.mult(f.tgt), P.T_mor(P.T_mor(f)))
                 == C.compose(P.T_mor(f), P.mult(f.src)),
                 mor_json(f))
    for f, g in sample_chains(C, objs, 2, samples, seed):
        rb.record("T-composition", f.src,
                  P.T_mor(C.compose(g, f)) == C.compose(P.T_mor(g), P.T_mor(f)), mor_json(g, f))
    return rb.build()


def _sigma_square(P: PerfectHandle, phi) -> bool:
    C = P.C
    s = P.sigma(phi)
    structural = C.compose(P.chi_t(), P.T_mor(phi))
    j_t, _ = P.special_fiber(phi)
    if C.compose(P.e(j_t), s) != structural:
        return False
    _, incl_x = P.special_fiber(structural)
    _, incl_special = P.special_fiber(P.e(j_t))
    restricted = C.factor_through(incl_special, C.compose(s, incl_x))
    return restricted is not None and C.is_iso(restricted)


# ── Colax laws ────────────────────────────────────────────────────────────────

def colax_law_suite(F: AdmFunctor, bound: int, seed: int = SEED, samples: int = ASSOC_SAMPLES) -> LawReport:
    """Triangle and pentagon for α_F, its naturality, and the square relating σ to α."""
    P, Q = perfect(F.source), perfect(F.target)
    S, D = P.C, Q.C
    rb = ReportBuilder("colax", F.name, bound)
    objs = S.objects(bound)

    for obj in objs:
        log("laws", f"colax {F.name}: {obj}")
        rb.guard("alpha-unique", obj, lambda: alpha(F, obj) is not None)
        rb.guard("triangle", obj,
                 lambda: D.compose(alpha(F, obj), F(P.unit(obj))) == Q.unit(F(obj)))
        rb.guard("pentagon", obj,
                 lambda: D.compose(alpha(F, obj), F(P.mult(obj)))
                 == D.compose_all(Q.mult(F(obj)), Q.T_mor(alpha(F, obj)), alpha(F, P.T(obj))))
        for psi in S.hom(obj, P.Tc):
            rb.guard("sigma-alpha-square", obj, lambda: _sigma_alpha_square(F, P, Q, psi), mor_json(psi))

    for (f,) in sample_chains(S, objs, 1, samples, seed):
        rb.guard("alpha-natural", f.src,
                 lambda: D.compose(alpha(F, f.tgt), F(P.T_mor(f)))
                 == D.compose(Q.T_mor(F(f)), alpha(F, f.src)),
                 mor_json(f))
    return rb.build()


def _sigma_alpha_square(F: AdmFunctor, P: PerfectHandle, Q: PerfectHandle, psi) -> bool:
    D = Q.C
    chi = Q.classify(F(P.Tc), F.point_map(P.Tc, P.t))
    psi_f = D.compose(chi, F(psi))
    j_t, incl_t = P.special_fiber(psi)
    _, incl_f = Q.special_fiber(psi_f)
    beta = D.factor_through(incl_f, F(incl_t))
    if beta is None:
        return False
    lhs = D.compose(Q.sigma(psi_f), alpha(F, psi.src))
    rhs = D.compose_all(Q.T_mor(beta), alpha(F, j_t), F(P.sigma(psi)))
    return lhs == rhs


# ── Functor zoo ───────────────────────────────────────────────────────────────

def functor_law_suite(C: CategoryHandle, bound: int, seed: int = SEED, samples: int = ASSOC_SAMPLES) -> LawReport:
    """Each zoo functor around C is checked against the flags it claims, then 2-out-of-3."""
    rb = ReportBuilder("functors", C.name, bound)
    zoo = functor_zoo(C)
    for F in zoo:
        log("laws", f"functors {F.name}")
        check = check_operator_morphism if F.operator_morphism else check_admissible
        rb.merge(check(F, bound, seed, samples), prefix=F.name)
    u = zoo[0]
    for G in zoo:
        if G.target is C:
            c = two_out_of_three(u, G, bound)
            rb.record(c.law, c.object, c.passed, c.counterexample)
    return rb.build()


def colax_functors(C: CategoryHandle) -> list[AdmFunctor]:
    return [F for F in functor_zoo(C) if F.admissible and is_perfect(F.source) and is_perfect(F.target)]

"""
OpCat — Leinster categories Λ(Φ)
Kleisli morphisms J -> I are Φ-morphisms J -> TI. Inert and active morphisms are
read off the special-fiber pullback J ×_{TI} I, which also drives the
inert-active factorization.
"""
import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from categories import constant_wreath
from codes import Mor, ObjCode, Wreath
from config import ASSOC_SAMPLES, SEED
from errors import CompositionError, UniquenessError, log
from functors import AdmFunctor
from models import LawReport
from perfect import PerfectHandle, WreathPerfect, alpha, perfect
from reports import ReportBuilder


@dataclass(frozen=True)
class KleisliMor:
    src: ObjCode
    tgt: ObjCode
    carrier: Mor

    def __str__(self) -> str:
        return f"{self.src}=>{self.tgt}:{self.carrier}"

    def to_json(self):
        return {"src": str(self.src), "tgt": str(self.tgt), "carrier": self.carrier.to_json()}


@dataclass(frozen=True)
class Factorization:
    middle: ObjCode
    inert: KleisliMor
    active: KleisliMor
    comparison: Mor  # K -> J ×_{TI} I


@dataclass(frozen=True)
class PatternCospan:
    J: ObjCode
    I: ObjCode
    I2: ObjCode
    left: KleisliMor
    right: KleisliMor


# ── Homs and composition ──────────────────────────────────────────────────────

@lru_cache(maxsize=None)
def khom(P: PerfectHandle, J: ObjCode, I: ObjCode) -> tuple[KleisliMor, ...]:
    return tuple(KleisliMor(J, I, c) for c in P.C.hom(J, P.T(I)))


def kid(P: PerfectHandle, I: ObjCode) -> KleisliMor:
    return KleisliMor(I, I, P.unit(I))


@lru_cache(maxsize=None)
def kcompose(P: PerfectHandle, phi: KleisliMor, psi: KleisliMor) -> KleisliMor:
    """φ∘ψ with carrier μ_I∘Tφ∘ψ."""
    if psi.tgt != phi.src:
        raise CompositionError(f"cannot compose {phi} after {psi}")
    carrier = P.C.compose_all(P.mult(phi.tgt), P.T_mor(phi.carrier), psi.carrier)
    return KleisliMor(psi.src, phi.tgt, carrier)


def from_phi(P: PerfectHandle, f: Mor) -> KleisliMor:
    """The Λ-morphism ι∘f."""
    return KleisliMor(f.src, f.tgt, P.C.compose(P.unit(f.tgt), f))


# ── Inert and active ──────────────────────────────────────────────────────────

@lru_cache(maxsize=None)
def special_pullback(P: PerfectHandle, phi: KleisliMor) -> tuple[ObjCode, Mor, Mor]:
    """(K, K -> J, K -> I) with K = J ×_{TI} I, the special fiber of e_I∘carrier."""
    C = P.C
    k, incl = P.special_fiber(C.compose(P.e(phi.tgt), phi.carrier))
    a = C.factor_through(P.unit(phi.tgt), C.compose(phi.carrier, incl))
    if a is None:
        raise UniquenessError(f"{P.name}: special fiber of {phi} does not land in I")
    return k, incl, a


def is_inert(P: PerfectHandle, phi: KleisliMor) -> bool:
    return P.C.is_iso(special_pullback(P, phi)[2])


def is_active(P: PerfectHandle, phi: KleisliMor) -> bool:
    return P.C.is_iso(special_pullback(P, phi)[1])


def is_active_by_factoring(P: PerfectHandle, phi: KleisliMor) -> bool:
    """The carrier is Tf∘ι_J for some f: J -> I."""
    C = P.C
    return any(C.compose(P.T_mor(f), P.unit(phi.src)) == phi.carrier for f in C.hom(phi.src, phi.tgt))


def is_kiso(P: PerfectHandle, phi: KleisliMor) -> bool:
    return any(kcompose(P, psi, phi) == kid(P, phi.src) and kcompose(P, phi, psi) == kid(P, phi.tgt)
               for psi in khom(P, phi.tgt, phi.src))


# ── Factorization ─────────────────────────────────────────────────────────────

@lru_cache(maxsize=None)
def factorize(P: PerfectHandle, phi: KleisliMor) -> Factorization:
    """Inert J -> K followed by active K -> I, with K the special pullback."""
    C = P.C
    k, _, a = special_pullback(P, phi)
    active = KleisliMor(k, phi.tgt, C.compose(P.unit(phi.tgt), a))
    inert = KleisliMor(phi.src, k, P.lift_over_T(C.compose(P.e(phi.tgt), phi.carrier), C.identity(k)))
    return Factorization(k, inert, active, C.identity(k))


@lru_cache(maxsize=None)
def _inert_khom(P: PerfectHandle, J: ObjCode, I: ObjCode) -> tuple[KleisliMor, ...]:
    return tuple(phi for phi in khom(P, J, I) if is_inert(P, phi))


@lru_cache(maxsize=None)
def _active_khom(P: PerfectHandle, J: ObjCode, I: ObjCode) -> tuple[KleisliMor, ...]:
    return tuple(phi for phi in khom(P, J, I) if is_active(P, phi))


def candidate_middles(P: PerfectHandle, middle: ObjCode, bound: int | None = None) -> tuple[ObjCode, ...]:
    """The iso class of `middle`, plus same-size objects within bound when one is given."""
    C = P.C
    found = dict.fromkeys(C.iso_class(middle))
    if bound is not None:
        size = C.point_count(middle)
        found.update(dict.fromkeys(o for o in C.objects(bound) if C.point_count(o) == size))
    return tuple(found)


def all_factorizations(P: PerfectHandle, phi: KleisliMor, bound: int | None = None) -> list[Factorization]:
    """Every inert-active factorization through a middle isomorphic to the canonical one.

    Each one is matched to the canonical factorization by its unique comparison
    isomorphism θ: K -> K'; zero or several θ raise UniquenessError.
    """
    C = P.C
    canon = factorize(P, phi)
    out = []
    for middle in candidate_middles(P, canon.middle, bound):
        for i in _inert_khom(P, phi.src, middle):
            for a in _active_khom(P, middle, phi.tgt):
                if kcompose(P, a, i) != phi:
                    continue
                thetas = [th for th in C.isomorphisms(canon.middle, middle)
                          if kcompose(P, from_phi(P, th), canon.inert) == i
                          and kcompose(P, a, from_phi(P, th)) == canon.active]
                if len(thetas) != 1:
                    raise UniquenessError(f"{P.name}: {len(thetas)} comparison isomorphisms for {phi}",
                                          counterexample={"inert": i.to_json(), "active": a.to_json()})
                out.append(Factorization(middle, i, a, thetas[0]))
    return out


# ── Functoriality ─────────────────────────────────────────────────────────────

def lmap(F: AdmFunctor, phi: KleisliMor) -> KleisliMor:
    """Λ(F): carrier α_{F,I}∘F(carrier)."""
    carrier = F.target.compose(alpha(F, phi.tgt), F(phi.carrier))
    return KleisliMor(F(phi.src), F(phi.tgt), carrier)


def lmap_report(F: AdmFunctor, bound: int) -> LawReport:
    """Λ(F) preserves identities, composition and inert morphisms."""
    P, Q = perfect(F.source), perfect(F.target)
    rb = ReportBuilder("lmap", F.name, bound)
    objs = P.C.objects(bound)
    for obj in objs:
        rb.guard("lmap-identity", obj, lambda: lmap(F, kid(P, obj)) == kid(Q, F(obj)))
    for J in objs:
        for I in objs:
            for phi in khom(P, J, I):
                if is_inert(P, phi):
                    rb.guard("lmap-inert", J, lambda: is_inert(Q, lmap(F, phi)), phi.to_json())
    for phi, psi in sample_kchains(P, objs, 2, ASSOC_SAMPLES, SEED):
        rb.guard("lmap-composition", phi.src,
                 lambda: lmap(F, kcompose(P, psi, phi)) == kcompose(Q, lmap(F, psi), lmap(F, phi)),
                 [psi.to_json(), phi.to_json()])
    return rb.build()


# ── Wreath functor W: Λ(Ψ) × Λ(Φ) -> Λ(Ψ≀Φ) ─────────────────────────────────────

def W_obj(W: WreathPerfect, K: ObjCode, I: ObjCode) -> ObjCode:
    return constant_wreath(K, I, W.C.outer)


def omega(W: WreathPerfect, K: ObjCode, I: ObjCode) -> Mor:
    """T_Ψ K ≀ T_Φ I -> T(K ≀ I): identity on the base and old fibers, collapsing the new ones."""
    inner, outer = W.C.inner, W.C.outer
    src = W_obj(W, W.inner.T(K), W.outer.T(I))
    tgt = W.T(W_obj(W, K, I))
    old = W.old_points(I)
    comps = tuple(inner.identity(fib) if j in old else inner.bang(fib)
                  for j, fib in zip(outer.points(src.base), src.fibers))
    return Mor(src, tgt, (outer.identity(src.base), comps))


def kleisli_W(W: WreathPerfect, kappa: KleisliMor, phi: KleisliMor) -> KleisliMor:
    src = W_obj(W, kappa.src, phi.src)
    tgt = W_obj(W, kappa.tgt, phi.tgt)
    mid = W_obj(W, W.inner.T(kappa.tgt), W.outer.T(phi.tgt))
    pair = Mor(src, mid, (phi.carrier, (kappa.carrier,) * len(src.fibers)))
    return KleisliMor(src, tgt, W.C.compose(omega(W, kappa.tgt, phi.tgt), pair))


# ── Categorical pattern ───────────────────────────────────────────────────────

def _covered(P: PerfectHandle, phi: KleisliMor) -> frozenset:
    k, incl, _ = special_pullback(P, phi)
    return frozenset(P.C.image(incl, x) for x in P.C.points(k))


def pattern_cospans(P: PerfectHandle, J: ObjCode, bound: int, targets=None) -> list[PatternCospan]:
    """Pairs of inert morphisms out of J whose special pullbacks partition |J|."""
    C = P.C
    objs = tuple(targets) if targets is not None else C.objects(bound)
    inerts = [(phi, _covered(P, phi)) for I in objs for phi in khom(P, J, I) if is_inert(P, phi)]
    everything = frozenset(C.points(J))
    out, seen = [], set()
    for left, s1 in inerts:
        for right, s2 in inerts:
            if s1 & s2 or s1 | s2 != everything:
                continue
            cospan = PatternCospan(J, left.tgt, right.tgt, left, right)
            if cospan not in seen:
                seen.add(cospan)
                out.append(cospan)
    return out


# ── Fibration over the base of a wreath ───────────────────────────────────────

class LambdaProjection:
    """A functor Λ(total) -> Λ(base) with chosen lifts over active and inert morphisms."""

    def __init__(self, total: PerfectHandle, base: PerfectHandle, name: str) -> None:
        self.total = total
        self.base = base
        self.name = name

    def obj(self, X: ObjCode) -> ObjCode:
        raise NotImplementedError

    def mor(self, g: KleisliMor) -> KleisliMor:
        raise NotImplementedError

    def cartesian_lift(self, phi: KleisliMor, X: ObjCode) -> KleisliMor:
        raise NotImplementedError

    def cocartesian_lift(self, phi: KleisliMor, Y: ObjCode) -> KleisliMor:
        raise NotImplementedError

    def predicted_vertical(self, Y: ObjCode, X: ObjCode) -> int:
        raise NotImplementedError


class IdentityProjection(LambdaProjection):
    def __init__(self, P: PerfectHandle) -> None:
        super().__init__(P, P, f"id:{P.name}")

    def obj(self, X: ObjCode) -> ObjCode:
        return X

    def mor(self, g: KleisliMor) -> KleisliMor:
        return g

    def cartesian_lift(self, phi: KleisliMor, X: ObjCode) -> KleisliMor:
        return phi

    def cocartesian_lift(self, phi: KleisliMor, Y: ObjCode) -> KleisliMor:
        return phi

    def predicted_vertical(self, Y: ObjCode, X: ObjCode) -> int:
        return 1


class WreathProjection(LambdaProjection):
    """(I, M) ↦ I; a Kleisli morphism keeps the base part of its carrier."""

    total: WreathPerfect

    def __init__(self, W: WreathPerfect) -> None:
        super().__init__(W, W.outer, f"project:{W.name}")

    def obj(self, X: ObjCode) -> ObjCode:
        return X.base

    def mor(self, g: KleisliMor) -> KleisliMor:
        return KleisliMor(g.src.base, g.tgt.base, g.carrier.data[0])

    def _old_index(self, I: ObjCode) -> dict:
        outer = self.total.C.outer
        emb = self.base.embed(I)
        return {outer.image(emb, b): k for k, b in enumerate(outer.points(I))}

    def cartesian_lift(self, phi: KleisliMor, X: ObjCode) -> KleisliMor:
        """Over active φ: J -> I every point of J lands on an old point; Y = (J, [M_{φ(j)}])."""
        outer, W = self.total.C.outer, self.total
        old = self._old_index(phi.tgt)
        picks = [old[outer.image(phi.carrier, j)] for j in outer.points(phi.src)]
        Y = Wreath(phi.src, tuple(X.fibers[k] for k in picks))
        comps = tuple(W.inner.unit(X.fibers[k]) for k in picks)
        return KleisliMor(Y, X, Mor(Y, W.T(X), (phi.carrier, comps)))

    def cocartesian_lift(self, phi: KleisliMor, Y: ObjCode) -> KleisliMor:
        """Over inert φ: J -> I each point of I is hit by exactly one j; X = (I, [N_{j(i)}])."""
        outer, inner, W = self.total.C.outer, self.total.C.inner, self.total
        old = self._old_index(phi.tgt)
        hit = {}
        for q, j in enumerate(outer.points(phi.src)):
            target = outer.image(phi.carrier, j)
            if target in old:
                hit[old[target]] = q
        X = Wreath(phi.tgt, tuple(Y.fibers[hit[k]] for k in range(outer.point_count(phi.tgt))))
        comps = []
        for j, fib in zip(outer.points(phi.src), Y.fibers):
            target = outer.image(phi.carrier, j)
            comps.append(W.inner.unit(fib) if target in old else inner.bang(fib))
        return KleisliMor(Y, X, Mor(Y, W.T(X), (phi.carrier, tuple(comps))))

    def predicted_vertical(self, Y: ObjCode, X: ObjCode) -> int:
        count = 1
        for n_obj, m_obj in zip(Y.fibers, X.fibers):
            count *= len(khom(self.total.inner, n_obj, m_obj))
        return count


def fibration_check(proj: LambdaProjection, bound: int, seed: int = SEED,
                    samples: int = ASSOC_SAMPLES) -> LawReport:
    """Cartesian lifts over active morphisms, cocartesian lifts over inert ones,
    and vertical hom counts against the predicted fiber categories."""
    T, B = proj.total, proj.base
    rb = ReportBuilder("fibration", proj.name, bound)
    objs = T.C.objects(bound)
    over: dict = {}
    for X in objs:
        over.setdefault(proj.obj(X), []).append(X)

    for Y in objs:
        rb.guard("projection-identity", Y, lambda: proj.mor(kid(T, Y)) == kid(B, proj.obj(Y)))
    for g, h in sample_kchains(T, objs, 2, samples, seed):
        rb.guard("projection-composition", g.src,
                 lambda: proj.mor(kcompose(T, h, g)) == kcompose(B, proj.mor(h), proj.mor(g)),
                 [h.to_json(), g.to_json()])

    for base_src in sorted(over, key=str):
        for base_tgt in sorted(over, key=str):
            for phi in khom(B, base_src, base_tgt):
                if is_active(B, phi):
                    for X in over[base_tgt]:
                        rb.guard("cartesian-lift", X, lambda: _cartesian(proj, phi, X, objs), phi.to_json())
                if is_inert(B, phi):
                    for Y in over[base_src]:
                        rb.guard("cocartesian-lift", Y, lambda: _cocartesian(proj, phi, Y, objs), phi.to_json())

    for base, fiber in over.items():
        for Y in fiber:
            for X in fiber:
                vertical = [g for g in khom(T, Y, X) if proj.mor(g) == kid(B, base)]
                predicted = proj.predicted_vertical(Y, X)
                rb.record("fiber-hom-count", base, len(vertical) == predicted,
                          {"src": str(Y), "tgt": str(X), "count": len(vertical), "predicted": predicted})
    log("fibration", f"{proj.name}: {len(objs)} objects")
    return rb.build()


def _cartesian(proj: LambdaProjection, phi: KleisliMor, X: ObjCode, objs) -> bool:
    T, B = proj.total, proj.base
    lift = proj.cartesian_lift(phi, X)
    if proj.mor(lift) != phi:
        return False
    Y = lift.src
    for Z in objs:
        factor = Counter((proj.mor(g2), kcompose(T, lift, g2)) for g2 in khom(T, Z, Y))
        below = _group((kcompose(B, phi, h0), h0) for h0 in khom(B, proj.obj(Z), phi.src))
        for g in khom(T, Z, X):
            if any(factor[h0, g] != 1 for h0 in below.get(proj.mor(g), ())):
                return False
    return True


def _group(composites) -> dict:
    """Map each composite φ∘h0 (resp. h0∘φ) back to the h0 producing it."""
    out: dict = {}
    for composite, h0 in composites:
        out.setdefault(composite, []).append(h0)
    return out


def _cocartesian(proj: LambdaProjection, phi: KleisliMor, Y: ObjCode, objs) -> bool:
    T, B = proj.total, proj.base
    lift = proj.cocartesian_lift(phi, Y)
    if proj.mor(lift) != phi:
        return False
    X = lift.tgt
    for Z in objs:
        factor = Counter((proj.mor(g2), kcompose(T, g2, lift)) for g2 in khom(T, X, Z))
        above = _group((kcompose(B, h0, phi), h0) for h0 in khom(B, phi.tgt, proj.obj(Z)))
        for g in khom(T, Y, Z):
            if any(factor[h0, g] != 1 for h0 in above.get(proj.mor(g), ())):
                return False
    return True


# ── Law suite ─────────────────────────────────────────────────────────────────

def sample_kchains(P: PerfectHandle, objects, length: int, samples: int, seed: int) -> list[tuple[KleisliMor, ...]]:
    """Seeded composable Λ-chains (φ_1, ..., φ_length), φ_k: X_{k-1} -> X_k."""
    rng = random.Random(seed)
    out = []
    for _ in range(samples * 4):
        if len(out) >= samples:
            break
        stops = [rng.choice(objects) for _ in range(length + 1)]
        chain = []
        for a, b in zip(stops, stops[1:]):
            homs = khom(P, a, b)
            if not homs:
                break
            chain.append(rng.choice(homs))
        if len(chain) == length:
            out.append(tuple(chain))
    return out


def leinster_law_suite(P: PerfectHandle, bound: int, seed: int = SEED, samples: int = ASSOC_SAMPLES,
                       check_uniqueness: bool = True, fiber_bound: int | None = None) -> LawReport:
    C = P.C
    rb = ReportBuilder("leinster", P.name, bound, fiber_bound)
    objs = C.objects(bound, fiber_bound)
    terminal = C.terminal()
    to_terminal = P.invert(P.e(terminal))

    for obj in objs:
        for i in C.points(obj):
            chi = KleisliMor(obj, terminal, C.compose(to_terminal, P.classify(obj, i)))
            rb.guard("chi-inert", obj, lambda: is_inert(P, chi), chi.to_json())

    for J in objs:
        for I in objs:
            for phi in khom(P, J, I):
                cex = phi.to_json()
                rb.guard("unital", J,
                         lambda: kcompose(P, phi, kid(P, J)) == phi == kcompose(P, kid(P, I), phi), cex)
                rb.guard("active-by-factoring", J,
                         lambda: is_active(P, phi) == is_active_by_factoring(P, phi), cex)
                rb.guard("factorization", J, lambda: _factorization_ok(P, phi), cex)
                if check_uniqueness:
                    rb.guard("factorization-unique", J, lambda: _factorizations_match_isos(P, phi), cex)

    for phi, psi in sample_kchains(P, objs, 2, samples, seed):
        cex = [psi.to_json(), phi.to_json()]
        composite = kcompose(P, psi, phi)
        if is_inert(P, phi):
            rb.guard("inert-cancel", phi.src, lambda: is_inert(P, composite) == is_inert(P, psi), cex)
        if is_active(P, psi):
            rb.guard("active-cancel", phi.src, lambda: is_active(P, composite) == is_active(P, phi), cex)
        rb.guard("iso-iff-inert-active", phi.src,
                 lambda: (is_inert(P, phi) and is_active(P, phi)) == is_kiso(P, phi), phi.to_json())
    for phi, psi, chi in sample_kchains(P, objs, 3, samples, seed):
        rb.guard("associativity", phi.src,
                 lambda: kcompose(P, chi, kcompose(P, psi, phi)) == kcompose(P, kcompose(P, chi, psi), phi),
                 [chi.to_json(), psi.to_json(), phi.to_json()])
    return rb.build()


def _factorization_ok(P: PerfectHandle, phi: KleisliMor) -> bool:
    fac = factorize(P, phi)
    return (kcompose(P, fac.active, fac.inert) == phi
            and is_inert(P, fac.inert) and is_active(P, fac.active))


def _factorizations_match_isos(P: PerfectHandle, phi: KleisliMor) -> bool:
    # one factorization per isomorphism out of the canonical middle
    canon = factorize(P, phi)
    expected = sum(len(P.C.isomorphisms(canon.middle, m)) for m in candidate_middles(P, canon.middle))
    return len(all_factorizations(P, phi)) == expected

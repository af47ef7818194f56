"""
OpCat — Comparison functors
Λ(F) against pointed finite sets and Λ(O) against the simplex category. Both
sides are enumerated independently and the functor is checked to be bijective
on every hom-set within bound.
"""
import itertools
from functools import lru_cache

from categories import FinCategory, OrdCategory
from codes import Fin, Mor, ObjCode, Ord
from config import ASSOC_SAMPLES, SEED
from leinster import KleisliMor, is_active, is_inert, kcompose, khom, kid, sample_kchains
from models import LawReport
from perfect import PerfectHandle, perfect
from reports import ReportBuilder


# ── Pointed finite sets ───────────────────────────────────────────────────────

def pointed_table(phi: KleisliMor) -> tuple[int, ...]:
    """J₊ -> I₊ with the basepoint last on both sides."""
    return tuple(phi.carrier.data) + (phi.tgt.n,)


def pointed_maps(j: int, i: int) -> list[tuple[int, ...]]:
    return [t + (i,) for t in itertools.product(range(i + 1), repeat=j)]


def compose_pointed(g: tuple[int, ...], f: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(g[x] for x in f)


def gamma_compare(bound: int, compose_bound: int = 3) -> LawReport:
    P = perfect(FinCategory())
    rb = ReportBuilder("gamma", "F", bound)
    objs = P.C.objects(bound)
    for J in objs:
        rb.record("identity", J, pointed_table(kid(P, J)) == tuple(range(J.n + 1)))
        for I in objs:
            tables = [pointed_table(phi) for phi in khom(P, J, I)]
            expected = pointed_maps(J.n, I.n)
            rb.record("hom-count", J, len(tables) == (I.n + 1) ** J.n == len(expected),
                      {"tgt": str(I), "count": len(tables)})
            rb.record("hom-bijective", J, len(set(tables)) == len(tables) and set(tables) == set(expected),
                      {"tgt": str(I)})

    small = P.C.objects(min(bound, compose_bound))
    for K in small:
        for J in small:
            for I in small:
                for psi in khom(P, K, J):
                    for phi in khom(P, J, I):
                        rb.record("composition", K,
                                  pointed_table(kcompose(P, phi, psi))
                                  == compose_pointed(pointed_table(phi), pointed_table(psi)),
                                  [phi.to_json(), psi.to_json()])
    for n in range(bound + 1):
        rb.record("essentially-surjective", Fin(n), Fin(n) in objs)
    return rb.build()


# ── Simplex category ──────────────────────────────────────────────────────────

def _ord_perfect() -> PerfectHandle:
    return perfect(OrdCategory())


def bottom() -> KleisliMor:
    """* -> ∅ picking ⊥."""
    return KleisliMor(Ord(1), Ord(0), Mor(Ord(1), Ord(2), (0,)))


def top() -> KleisliMor:
    """* -> ∅ picking ⊤."""
    return KleisliMor(Ord(1), Ord(0), Mor(Ord(1), Ord(2), (1,)))


def c_map(P: PerfectHandle, xi: KleisliMor) -> tuple[KleisliMor, KleisliMor]:
    """c_I: Mor(I, *) -> Mor(I, ∅) × Mor(I, ∅)."""
    return kcompose(P, bottom(), xi), kcompose(P, top(), xi)


@lru_cache(maxsize=None)
def _c_image(P: PerfectHandle, I: ObjCode) -> dict:
    return {c_map(P, xi): xi for xi in khom(P, I, Ord(1))}


def leq(P: PerfectHandle, phi: KleisliMor, psi: KleisliMor) -> bool:
    """φ <= ψ in D(I) iff (φ, ψ) lies in the image of c_I."""
    return (phi, psi) in _c_image(P, phi.src)


def star(P: PerfectHandle, phi: KleisliMor, psi: KleisliMor) -> KleisliMor | None:
    """φ⋆ψ: the unique ξ: I -> * with c_I(ξ) = (φ, ψ)."""
    return _c_image(P, phi.src).get((phi, psi))


@lru_cache(maxsize=None)
def delta_points(P: PerfectHandle, I: ObjCode) -> tuple[KleisliMor, ...]:
    """D(I) = Mor(I, ∅), sorted from least to greatest."""
    elements = khom(P, I, Ord(0))
    return tuple(sorted(elements, key=lambda phi: sum(leq(P, other, phi) for other in elements)))


def delta_map(P: PerfectHandle, theta: KleisliMor) -> tuple[int, ...]:
    """D(θ): D(I) -> D(J) for θ: J -> I, as a table on ranks."""
    rank = {phi: r for r, phi in enumerate(delta_points(P, theta.src))}
    return tuple(rank[kcompose(P, phi, theta)] for phi in delta_points(P, theta.tgt))


def is_shift(table: tuple[int, ...]) -> bool:
    return all(b == a + 1 for a, b in zip(table, table[1:]))


def is_endpoint_preserving(table: tuple[int, ...], size: int) -> bool:
    return bool(table) and table[0] == 0 and table[-1] == size - 1


def delta_dual(n: int) -> ObjCode:
    """n^∨: the endpoint-preserving monotone maps [n] -> [1] under the pointwise order."""
    maps = [f for f in OrdCategory().hom(Ord(n + 1), Ord(2)) if is_endpoint_preserving(f.data, 2)]
    return Ord(len(maps))


def delta_compare(bound: int, seed: int = SEED, samples: int = ASSOC_SAMPLES) -> LawReport:
    P = _ord_perfect()
    O = P.C
    rb = ReportBuilder("delta", "O", bound)
    objs = O.objects(bound)

    for I in O.objects(bound + 1):
        points = delta_points(P, I)
        rb.record("point-count", I, len(points) == I.n + 1, {"count": len(points)})
        rb.record("total-order", I,
                  all(leq(P, a, b) == (r <= s) for r, a in enumerate(points) for s, b in enumerate(points)))
        for r, phi in enumerate(points):
            for s, psi in enumerate(points):
                if r > s:
                    continue
                xi = star(P, phi, psi)
                classifying = xi is not None and any(xi.carrier == P.classify(I, i) for i in O.points(I))
                rb.record("successor", I, classifying == (s == r + 1),
                          {"lower": phi.to_json(), "upper": psi.to_json()})

    for J in objs:
        rb.record("identity", J, delta_map(P, kid(P, J)) == tuple(range(J.n + 1)))
        for I in objs:
            tables = {}
            for theta in khom(P, J, I):
                table = delta_map(P, theta)
                tables[table] = theta
                rb.record("inert-is-shift", J, is_inert(P, theta) == is_shift(table), theta.to_json())
                rb.record("active-is-endpoint-preserving", J,
                          is_active(P, theta) == is_endpoint_preserving(table, J.n + 1), theta.to_json())
            monotone = {f.data for f in O.hom(Ord(I.n + 1), Ord(J.n + 1))}
            rb.record("hom-bijective", J,
                      len(tables) == len(khom(P, J, I)) and set(tables) == monotone,
                      {"tgt": str(I), "count": len(tables), "monotone": len(monotone)})

    for theta, eta in sample_kchains(P, objs, 2, samples, seed):
        rb.record("composition", theta.src,
                  delta_map(P, kcompose(P, eta, theta))
                  == tuple(delta_map(P, theta)[x] for x in delta_map(P, eta)),
                  [eta.to_json(), theta.to_json()])

    for n in range(1, bound + 2):
        rb.record("essentially-surjective", Ord(n), any(len(delta_points(P, I)) == n for I in O.objects(bound + 1)))
        rb.record("dual-round-trip", Ord(n), len(delta_points(P, delta_dual(n))) == n + 1)
    return rb.build()

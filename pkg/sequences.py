"""
OpCat — Φ-sequences and their index posets
Sequences [I_0 -> ... -> I_m], their morphisms (a monotone index map plus
interval inclusions whose squares are pullbacks), Segal fiber restriction,
the wreath of sequences, and the marked posets Õ(m), F_σ and A(m, I).
"""
import itertools
from dataclasses import dataclass, field
from typing import Any, Sequence

from categories import CategoryHandle, WreathCategory, constant_wreath
from codes import Mor, ObjCode
from config import CONE_BOUND
from errors import CompositionError, RecognitionUnavailable, SequenceError, UniquenessError
from intervals import IntervalWitness, compose_witnesses, fiber_witness, is_interval_inclusion, pullback_violation
from leinster import KleisliMor, is_inert, kcompose, kid
from perfect import PerfectHandle


@dataclass(frozen=True)
class PhiSeq:
    objects: tuple[ObjCode, ...]
    arrows: tuple[Mor, ...]

    @property
    def m(self) -> int:
        return len(self.objects) - 1

    def __str__(self) -> str:
        return "[" + " -> ".join(str(o) for o in self.objects) + "]"

    def to_json(self) -> Any:
        return {"objects": [str(o) for o in self.objects], "arrows": [a.to_json() for a in self.arrows]}


@dataclass(frozen=True)
class PullbackCertificate:
    """The square J_k -> J_l over I_{η k} -> I_{η l}, checked by cone enumeration."""
    k: int
    l: int
    cone_bound: int


@dataclass(frozen=True)
class SeqMor:
    src: PhiSeq
    tgt: PhiSeq
    eta: tuple[int, ...]
    components: tuple[Mor, ...]
    witnesses: tuple[IntervalWitness, ...]
    certificates: tuple[PullbackCertificate, ...]

    def to_json(self) -> Any:
        return {"src": str(self.src), "tgt": str(self.tgt), "eta": list(self.eta),
                "components": [c.to_json() for c in self.components]}


@dataclass(frozen=True)
class MarkedPoset:
    name: str
    elements: tuple
    leq: frozenset
    marked: frozenset
    labels: dict = field(default_factory=dict, compare=False)
    edge_labels: dict = field(default_factory=dict, compare=False)

    def below(self, a, b) -> bool:
        return (a, b) in self.leq

    def covers(self) -> list[tuple]:
        """Hasse edges a < b with nothing strictly between."""
        strict = [(a, b) for a, b in self.leq if a != b]
        return sorted((a, b) for a, b in strict
                      if not any((a, c) in self.leq and (c, b) in self.leq and c not in (a, b)
                                 for c in self.elements))


# ── Sequences ─────────────────────────────────────────────────────────────────

def make_seq(C: CategoryHandle, objects: Sequence[ObjCode], arrows: Sequence[Mor]) -> PhiSeq:
    objects, arrows = tuple(objects), tuple(arrows)
    if not objects:
        raise SequenceError("a sequence needs at least one object")
    if len(arrows) != len(objects) - 1:
        raise SequenceError(f"{len(objects)} objects need {len(objects) - 1} arrows, got {len(arrows)}")
    for k, a in enumerate(arrows):
        if a.src != objects[k] or a.tgt != objects[k + 1]:
            raise SequenceError(f"arrow {k} is {a.src} -> {a.tgt}, expected {objects[k]} -> {objects[k + 1]}")
    return PhiSeq(objects, arrows)


def chain_map(C: CategoryHandle, s: PhiSeq, k: int, l: int) -> Mor:
    """I(k -> l) for k <= l."""
    result = C.identity(s.objects[k])
    for a in s.arrows[k:l]:
        result = C.compose(a, result)
    return result


# ── Morphisms of sequences ────────────────────────────────────────────────────

def seq_mor_violation(C: CategoryHandle, src: PhiSeq, tgt: PhiSeq, eta: Sequence[int],
                      components: Sequence[Mor], witnesses: Sequence[IntervalWitness] | None = None,
                      cone_bound: int = CONE_BOUND) -> str | None:
    """The first violated condition, or None for a valid morphism."""
    eta, components = tuple(eta), tuple(components)
    if len(eta) != len(src.objects) or len(components) != len(src.objects):
        return f"expected {len(src.objects)} indices and components"
    if any(not 0 <= x <= tgt.m for x in eta) or any(a > b for a, b in zip(eta, eta[1:])):
        return f"index map {list(eta)} is not monotone into [0, {tgt.m}]"
    for k, phi in enumerate(components):
        if phi.src != src.objects[k] or phi.tgt != tgt.objects[eta[k]]:
            return f"component {k} is {phi.src} -> {phi.tgt}, expected {src.objects[k]} -> {tgt.objects[eta[k]]}"
        given = witnesses[k] if witnesses is not None else None
        try:
            if is_interval_inclusion(C, phi, given) is None:
                return f"component {k} is not an interval inclusion"
        except RecognitionUnavailable as exc:
            return f"component {k}: {exc.detail}"
    for k in range(len(eta)):
        for l in range(k, len(eta)):
            reason = pullback_violation(C, components[k], chain_map(C, src, k, l),
                                        chain_map(C, tgt, eta[k], eta[l]), components[l], cone_bound)
            if reason is not None:
                return f"square ({k}, {l}): {reason}"
    return None


def validate_seq_mor(C: CategoryHandle, src: PhiSeq, tgt: PhiSeq, eta: Sequence[int],
                     components: Sequence[Mor], witnesses: Sequence[IntervalWitness] | None = None,
                     cone_bound: int = CONE_BOUND) -> SeqMor | None:
    if seq_mor_violation(C, src, tgt, eta, components, witnesses, cone_bound) is not None:
        return None
    if witnesses is None:
        witnesses = [is_interval_inclusion(C, phi) for phi in components]
    certs = tuple(PullbackCertificate(k, l, cone_bound) for k in range(len(eta)) for l in range(k, len(eta)))
    return SeqMor(src, tgt, tuple(eta), tuple(components), tuple(witnesses), certs)


def recheck(C: CategoryHandle, f: SeqMor) -> bool:
    """Re-derive every certificate of f from scratch."""
    return seq_mor_violation(C, f.src, f.tgt, f.eta, f.components, f.witnesses,
                             min((c.cone_bound for c in f.certificates), default=CONE_BOUND)) is None


def seq_hom(C: CategoryHandle, src: PhiSeq, tgt: PhiSeq, cone_bound: int = CONE_BOUND) -> tuple[SeqMor, ...]:
    out = []
    for eta in itertools.combinations_with_replacement(range(tgt.m + 1), src.m + 1):
        choices = []
        for k, x in enumerate(eta):
            choices.append([(phi, w) for phi in C.hom(src.objects[k], tgt.objects[x])
                            if (w := is_interval_inclusion(C, phi)) is not None])
        for picked in itertools.product(*choices):
            comps = [phi for phi, _ in picked]
            f = validate_seq_mor(C, src, tgt, eta, comps, [w for _, w in picked], cone_bound)
            if f is not None:
                out.append(f)
    return tuple(out)


def seq_identity(C: CategoryHandle, s: PhiSeq) -> SeqMor:
    ids = tuple(C.identity(o) for o in s.objects)
    f = validate_seq_mor(C, s, s, range(len(s.objects)), ids, [IntervalWitness((), i) for i in ids])
    if f is None:
        raise SequenceError(f"identity on {s} failed validation")
    return f


def seq_compose(C: CategoryHandle, g: SeqMor, f: SeqMor) -> SeqMor:
    if f.tgt != g.src:
        raise CompositionError(f"cannot compose sequence morphisms: {f.tgt} != {g.src}")
    eta = tuple(g.eta[x] for x in f.eta)
    comps, witnesses = [], []
    for k, x in enumerate(f.eta):
        comps.append(C.compose(g.components[x], f.components[k]))
        w = compose_witnesses(C, g.components[x], g.witnesses[x], f.components[k], f.witnesses[k])
        if w is None:
            raise UniquenessError(f"no witness for component {k} of the composite")
        witnesses.append(w)
    h = validate_seq_mor(C, f.src, g.tgt, eta, comps, witnesses)
    if h is None:
        raise SequenceError("composite failed validation",
                            counterexample=seq_mor_violation(C, f.src, g.tgt, eta, comps, witnesses))
    return h


# ── Segal restriction ─────────────────────────────────────────────────────────

def _restriction(C: CategoryHandle, s: PhiSeq, i) -> tuple[list, list]:
    if i not in C.point_index(s.objects[-1]):
        raise SequenceError(f"{i} is not a point of {s.objects[-1]}")
    fibers = [C.fiber(chain_map(C, s, k, s.m), i) for k in range(s.m + 1)]
    arrows = []
    for k, a in enumerate(s.arrows):
        arrow = C.factor_through(fibers[k + 1][1], C.compose(a, fibers[k][1]))
        if arrow is None:
            raise UniquenessError(f"arrow {k} does not restrict to the fibers over {i}")
        arrows.append(arrow)
    return fibers, arrows


def segal_restrict(C: CategoryHandle, s: PhiSeq, i) -> PhiSeq:
    """[I_{0,i} -> I_{1,i} -> ... -> {i}]."""
    fibers, arrows = _restriction(C, s, i)
    return make_seq(C, [obj for obj, _ in fibers], arrows)


def segal_inclusion(C: CategoryHandle, s: PhiSeq, i) -> SeqMor:
    fibers, arrows = _restriction(C, s, i)
    restricted = make_seq(C, [obj for obj, _ in fibers], arrows)
    witnesses = [fiber_witness(C, chain_map(C, s, k, s.m), i)[1] for k in range(s.m + 1)]
    f = validate_seq_mor(C, restricted, s, range(s.m + 1), [incl for _, incl in fibers], witnesses)
    if f is None:
        raise SequenceError(f"restriction of {s} over {i} is not a sequence morphism")
    return f


# ── Wreath of sequences ───────────────────────────────────────────────────────

def seq_W(W: WreathCategory, jseq: PhiSeq, iseq: PhiSeq) -> PhiSeq:
    """[J_0≀I_0 -> ... -> J_m≀I_m]."""
    if jseq.m != iseq.m:
        raise SequenceError(f"lengths differ: {jseq.m} != {iseq.m}")
    objects = [constant_wreath(j, i, W.outer) for j, i in zip(jseq.objects, iseq.objects)]
    arrows = [Mor(objects[k], objects[k + 1], (a, (b,) * W.outer.point_count(a.src)))
              for k, (b, a) in enumerate(zip(jseq.arrows, iseq.arrows))]
    return make_seq(W, objects, arrows)


def seq_W_mor(W: WreathCategory, f: SeqMor, g: SeqMor) -> SeqMor:
    """f a morphism of Ψ-sequences, g of Φ-sequences, sharing the index map."""
    if f.eta != g.eta:
        raise SequenceError(f"index maps differ: {list(f.eta)} != {list(g.eta)}")
    src, tgt = seq_W(W, f.src, g.src), seq_W(W, f.tgt, g.tgt)
    comps = [Mor(src.objects[k], tgt.objects[x], (g.components[k], (f.components[k],) * W.outer.point_count(g.src.objects[k])))
             for k, x in enumerate(f.eta)]
    h = validate_seq_mor(W, src, tgt, f.eta, comps)
    if h is None:
        raise SequenceError("wreath of sequence morphisms failed validation",
                            counterexample=seq_mor_violation(W, src, tgt, f.eta, comps))
    return h


# ── Index posets ──────────────────────────────────────────────────────────────

def twisted_arrows(m: int) -> MarkedPoset:
    """Õ(m): (i', j') <= (i, j) iff i <= i' <= j' <= j; marked edges keep the left end."""
    if m < 0:
        raise SequenceError("m must be non-negative")
    elements = tuple((i, j) for i in range(m + 1) for j in range(i, m + 1))
    leq = frozenset((a, b) for a in elements for b in elements if b[0] <= a[0] <= a[1] <= b[1])
    marked = frozenset((a, b) for a, b in leq if a[0] == b[0])
    return MarkedPoset(f"twisted:{m}", elements, leq, marked)


def _composites(P: PerfectHandle, objects, sigma) -> dict:
    """c[k, j]: I_k -> I_j in Λ for k <= j."""
    c = {}
    for j in range(len(objects)):
        c[j, j] = kid(P, objects[j])
        for k in range(j - 1, -1, -1):
            c[k, j] = kcompose(P, c[k + 1, j], sigma[k])
    return c


def F_sigma(P: PerfectHandle, sigma: Sequence[KleisliMor], start: ObjCode | None = None,
            cone_bound: int = CONE_BOUND) -> MarkedPoset:
    """Label (i, j) of Õ(m) by [I_0 ×_{TI_j} I_j -> ... -> I_i ×_{TI_j} I_j].

    Edge labels are keyed (source, target) with F_σ(i, j) -> F_σ(i', j') for (i', j') <= (i, j).
    """
    C = P.C
    sigma = tuple(sigma)
    if not sigma and start is None:
        raise SequenceError("an empty chain needs its object")
    objects = (sigma[0].src if sigma else start,) + tuple(s.tgt for s in sigma)
    for k in range(len(sigma) - 1):
        if sigma[k].tgt != sigma[k + 1].src:
            raise SequenceError(f"Λ-chain breaks at {k}: {sigma[k].tgt} != {sigma[k + 1].src}")
    m = len(sigma)
    c = _composites(P, objects, sigma)
    fibers = {}
    for j in range(m + 1):
        for k in range(j + 1):
            fibers[k, j] = P.special_fiber(C.compose(P.e(objects[j]), c[k, j].carrier))

    def label(i: int, j: int) -> PhiSeq:
        arrows = []
        for k in range(i):
            target = C.compose(P.unit(objects[k + 1]), fibers[k + 1, j][1])
            arrow = C.factor_through(target, C.compose(sigma[k].carrier, fibers[k, j][1]))
            if arrow is None:
                raise UniquenessError(f"σ_{k} does not restrict over I_{j}")
            arrows.append(arrow)
        return make_seq(C, [fibers[k, j][0] for k in range(i + 1)], arrows)

    poset = twisted_arrows(m)
    labels = {x: label(*x) for x in poset.elements}
    edges = {}
    for (i2, j2), (i, j) in poset.leq:
        comps = []
        for k in range(i + 1):
            comp = C.factor_through(fibers[k, j2][1], fibers[k, j][1])
            if comp is None:
                raise UniquenessError(f"fiber over I_{j} at {k} does not sit inside the fiber over I_{j2}")
            comps.append(comp)
        f = validate_seq_mor(C, labels[i, j], labels[i2, j2], range(i + 1), comps, cone_bound=cone_bound)
        if f is None:
            raise SequenceError(f"F_σ transition ({i},{j}) -> ({i2},{j2}) is not a sequence morphism",
                                counterexample=seq_mor_violation(C, labels[i, j], labels[i2, j2],
                                                                 range(i + 1), comps, cone_bound=cone_bound))
        edges[(i, j), (i2, j2)] = f
    return MarkedPoset(f"F_sigma:{m}", poset.elements, poset.leq, poset.marked, labels, edges)


def A_poset(P: PerfectHandle, s: PhiSeq) -> MarkedPoset:
    """A(m, I): triples (r, s, i) labelled by I_{r,i} = I_r ×_{I_s} {i}."""
    C = P.C
    m = s.m
    elements = tuple((r, q, i) for r in range(m + 1) for q in range(r, m + 1) for i in C.points(s.objects[q]))
    images = {}
    for q in range(m + 1):
        for q2 in range(q, m + 1):
            down = chain_map(C, s, q, q2)
            images[q, q2] = {i: C.image(down, i) for i in C.points(s.objects[q])}
    leq = frozenset((a, b) for a in elements for b in elements
                    if a[0] <= b[0] <= b[1] <= a[1] and images[b[1], a[1]][b[2]] == a[2])
    marked = frozenset((a, b) for a, b in leq if a[0] == b[0])
    fibers = {(r, q, i): C.fiber(chain_map(C, s, r, q), i) for r, q, i in elements}
    labels = {x: fibers[x][0] for x in elements}
    edges = {(a, b): _a_edge(P, s, fibers, a, b) for a, b in leq}
    return MarkedPoset(f"A:{m}", elements, leq, marked, labels, edges)


def _a_edge(P: PerfectHandle, s: PhiSeq, fibers: dict, a: tuple, b: tuple) -> KleisliMor:
    """Active I_{r,i} -> X followed by inert X -> I_{r',i'}, X the fiber of I(r' -> s) at i."""
    C = P.C
    r, q, i = a
    r2, q2, i2 = b
    x_obj, incl_x = C.fiber(chain_map(C, s, r2, q), i)
    src_obj, src_incl = fibers[a]
    tgt_obj, tgt_incl = fibers[b]

    into_x = C.factor_through(incl_x, C.compose(chain_map(C, s, r, r2), src_incl))
    if into_x is None:
        raise UniquenessError(f"{a} -> {b}: I_{{r,i}} does not map into the fiber over {i}")
    active = KleisliMor(src_obj, x_obj, C.compose(P.unit(x_obj), into_x))

    chi = P.classify(s.objects[q2], i2)
    f = C.compose_all(chi, chain_map(C, s, r2, q2), incl_x)
    _, incl_fib = P.special_fiber(f)
    g = C.factor_through(tgt_incl, C.compose(incl_x, incl_fib))
    if g is None:
        raise UniquenessError(f"{a} -> {b}: special fiber is not I_{{r',i'}}")
    inert = KleisliMor(x_obj, tgt_obj, P.lift_over_T(f, g))
    return kcompose(P, inert, active)


def a_poset_checks(P: PerfectHandle, poset: MarkedPoset) -> dict[str, bool]:
    """Marked labels are inert; labels respect identities and composition."""
    marked_inert = all(is_inert(P, poset.edge_labels[e]) for e in poset.marked)
    identities = all(poset.edge_labels[a, a] == kid(P, poset.labels[a]) for a in poset.elements)
    composition = all(
        kcompose(P, poset.edge_labels[b, c], poset.edge_labels[a, b]) == poset.edge_labels[a, c]
        for a, b in poset.leq for c in poset.elements if (b, c) in poset.leq)
    return {"marked-inert": marked_inert, "identities": identities, "composition": composition}

import hypothesis
import hypothesis.strategies as strat
import pytest

from categories import FinCategory, OrdCategory
from codes import Fin, Mor, Ord
from errors import SequenceError
from leinster import KleisliMor, is_inert
from sequences import (
    A_poset,
    F_sigma,
    a_poset_checks,
    make_seq,
    recheck,
    segal_inclusion,
    segal_restrict,
    seq_compose,
    seq_hom,
    seq_identity,
    seq_mor_violation,
    seq_W,
    seq_W_mor,
    twisted_arrows,
    validate_seq_mor,
)

FIN = FinCategory()


def fin_maps(max_size=3):
    return strat.tuples(strat.integers(0, max_size), strat.integers(1, max_size)).flatmap(
        lambda st: strat.lists(strat.integers(0, st[1] - 1), min_size=st[0], max_size=st[0])
        .map(lambda t: Mor(Fin(st[0]), Fin(st[1]), tuple(t))))


def test_make_seq_rejects_mismatches(F):
    with pytest.raises(SequenceError):
        make_seq(F, [Fin(2), Fin(1)], [])
    with pytest.raises(SequenceError):
        make_seq(F, [Fin(2), Fin(1)], [Mor(Fin(3), Fin(1), (0, 0, 0))])


def test_seq_hom_between_single_objects(F):
    s = make_seq(F, [Fin(2)], [])
    homs = seq_hom(F, s, s)
    assert len(homs) == 2
    assert all(recheck(F, f) for f in homs)


def test_non_injective_component_is_rejected(F):
    s = make_seq(F, [Fin(2)], [])
    t = make_seq(F, [Fin(1)], [])
    reason = seq_mor_violation(F, s, t, (0,), [Mor(Fin(2), Fin(1), (0, 0))])
    assert reason is not None and "interval inclusion" in reason


def test_degeneracy_with_identity_components(F):
    s = make_seq(F, [Fin(2), Fin(2)], [F.identity(Fin(2))])
    t = make_seq(F, [Fin(2)], [])
    f = validate_seq_mor(F, s, t, (0, 0), [F.identity(Fin(2))] * 2)
    assert f is not None


def test_identity_and_composition(F):
    s = make_seq(F, [Fin(1), Fin(2)], [Mor(Fin(1), Fin(2), (1,))])
    ident = seq_identity(F, s)
    for f in seq_hom(F, s, s):
        g = seq_compose(F, ident, f)
        assert (g.eta, g.components) == (f.eta, f.components)
        h = seq_compose(F, f, ident)
        assert (h.eta, h.components) == (f.eta, f.components)


def test_segal_restriction_example(F):
    s = make_seq(F, [Fin(3), Fin(2)], [Mor(Fin(3), Fin(2), (0, 0, 1))])
    r = segal_restrict(F, s, 0)
    assert r.objects == (Fin(2), Fin(1))
    assert r.arrows[0].data == (0, 0)
    assert recheck(F, segal_inclusion(F, s, 0))


def test_segal_restriction_of_constant_sequence(O):
    s = make_seq(O, [Ord(3), Ord(3)], [O.identity(Ord(3))])
    assert segal_restrict(O, s, 1).objects == (Ord(1), Ord(1))


@hypothesis.given(fin_maps())
def test_segal_restrictions_partition_points(f):
    s = make_seq(FIN, [f.src, f.tgt], [f])
    pieces = [segal_restrict(FIN, s, i) for i in FIN.points(f.tgt)]
    for k in range(2):
        assert sum(FIN.point_count(p.objects[k]) for p in pieces) == FIN.point_count(s.objects[k])


def test_seq_W_objects_and_identities(O, OO):
    j, i = make_seq(O, [Ord(2)], []), make_seq(O, [Ord(3)], [])
    w = seq_W(OO, j, i)
    assert OO.point_count(w.objects[0]) == 6
    ident = seq_W_mor(OO, seq_identity(O, j), seq_identity(O, i))
    assert ident.components == tuple(OO.identity(x) for x in w.objects)


def test_seq_W_length_mismatch(O, OO):
    with pytest.raises(SequenceError):
        seq_W(OO, make_seq(O, [Ord(1)], []), make_seq(O, [Ord(1), Ord(1)], [O.identity(Ord(1))]))


def test_seq_W_preserves_composition(O, OO):
    j = make_seq(O, [Ord(1)], [])
    i = make_seq(O, [Ord(2)], [])
    i_homs = seq_hom(O, i, i)
    j_id = seq_identity(O, j)
    for g1 in i_homs:
        for g2 in i_homs:
            lhs = seq_W_mor(OO, j_id, seq_compose(O, g2, g1))
            rhs = seq_compose(OO, seq_W_mor(OO, j_id, g2), seq_W_mor(OO, j_id, g1))
            assert (lhs.eta, lhs.components) == (rhs.eta, rhs.components)


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_twisted_arrow_counts(m):
    poset = twisted_arrows(m)
    assert len(poset.elements) == (m + 1) * (m + 2) // 2
    assert all(poset.below(x, (0, m)) for x in poset.elements)


def test_twisted_arrow_order():
    poset = twisted_arrows(2)
    assert poset.below((1, 1), (0, 2))
    assert not poset.below((0, 2), (1, 1))
    assert ((0, 1), (0, 2)) in poset.marked
    assert ((1, 2), (0, 2)) not in poset.marked


def test_A_poset_example(PF, F):
    s = make_seq(F, [Fin(2), Fin(1)], [Mor(Fin(2), Fin(1), (0, 0))])
    poset = A_poset(PF, s)
    assert sorted(poset.elements) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 1, 0)]
    assert poset.labels[0, 1, 0] == Fin(2)
    assert all(a_poset_checks(PF, poset).values())
    assert all(is_inert(PF, poset.edge_labels[e]) for e in poset.marked)


def test_A_poset_of_single_object(PF, F):
    poset = A_poset(PF, make_seq(F, [Fin(3)], []))
    assert len(poset.elements) == 3
    assert poset.leq == poset.marked == frozenset((x, x) for x in poset.elements)


@pytest.mark.parametrize("table", [(0, 1, 2), (1, 0, 0), (2, 2, 1)])
def test_A_poset_counts_in_ord(PO, O, table):
    s = make_seq(O, [Ord(3), Ord(3), Ord(1)], [Mor(Ord(3), Ord(3), tuple(sorted(table))), O.bang(Ord(3))])
    poset = A_poset(PO, s)
    assert len(poset.elements) == 3 + 3 + 1 + 3 + 1 + 1
    assert all(a_poset_checks(PO, poset).values())


def test_F_sigma_of_inert_morphism(PF):
    sigma = KleisliMor(Fin(2), Fin(1), Mor(Fin(2), Fin(2), (0, 1)))
    poset = F_sigma(PF, [sigma])
    assert poset.labels[0, 0].objects == (Fin(2),)
    assert poset.labels[0, 1].objects == (Fin(1),)
    assert poset.labels[1, 1].objects == (Fin(1), Fin(1))
    assert len(poset.edge_labels) == len(poset.leq)


def test_F_sigma_of_empty_chain(PO):
    poset = F_sigma(PO, [], start=Ord(2))
    assert poset.elements == ((0, 0),)
    assert poset.labels[0, 0].objects == (Ord(2),)


@pytest.mark.parametrize("C,code", [(FIN, Fin), (OrdCategory(), Ord)])
def test_seq_compose_is_associative(C, code):
    a, b, c, d = (make_seq(C, [code(n)], []) for n in (1, 2, 2, 3))
    for f in seq_hom(C, a, b):
        for g in seq_hom(C, b, c):
            for h in seq_hom(C, c, d):
                lhs = seq_compose(C, h, seq_compose(C, g, f))
                rhs = seq_compose(C, seq_compose(C, h, g), f)
                assert (lhs.eta, lhs.components) == (rhs.eta, rhs.components)

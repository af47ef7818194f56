import hypothesis
import hypothesis.strategies as strat
import pytest

from categories import FinCategory, OrdCategory, SemidirectCategory, TruncatedCategory, wreath
from codes import Cyc, Fin, Mor, Ord, Semidir, Trunc, Wreath
from errors import CompositionError, RecognitionUnavailable
from intervals import (
    compose_witnesses,
    fiber_witness,
    interval_pullback,
    is_interval_inclusion,
    is_pullback,
    validate_witness,
)
from laws import opcat_law_suite

ORD = OrdCategory()


def monotone_tables(max_src=4, max_tgt=4):
    return strat.integers(0, max_tgt).flatmap(
        lambda tgt: strat.lists(strat.integers(0, max(tgt - 1, 0)), max_size=max_src if tgt else 0)
        .map(lambda xs: (tuple(sorted(xs)), tgt)))


def test_ord_hom_counts(O):
    assert len(O.hom(Ord(2), Ord(2))) == 3
    assert len(O.hom(Ord(2), Ord(3))) == 6
    assert len(O.hom(Ord(0), Ord(0))) == 1
    assert len(O.hom(Ord(1), Ord(0))) == 0


def test_fin_hom_counts(F):
    assert len(F.hom(Fin(2), Fin(3))) == 9
    assert len(F.hom(Fin(3), Fin(2))) == 8


def test_terminal_and_points(O, F, triv):
    for C in (O, F, triv):
        assert C.point_count(C.terminal()) == 1
    assert O.points(Ord(3)) == (0, 1, 2)


def test_fiber_of_fin_map(F):
    f = Mor(Fin(3), Fin(2), (0, 0, 1))
    k, incl = F.fiber(f, 0)
    assert k == Fin(2)
    assert incl.data == (0, 1)
    assert F.fiber(f, 1)[0] == Fin(1)


def test_compose_mismatch_raises(O):
    with pytest.raises(CompositionError):
        O.compose(O.identity(Ord(2)), O.identity(Ord(3)))


def test_ord_interval_inclusions(O):
    assert is_interval_inclusion(O, Mor(Ord(2), Ord(4), (1, 2))) is not None
    assert is_interval_inclusion(O, Mor(Ord(2), Ord(4), (0, 2))) is None
    assert is_interval_inclusion(O, Mor(Ord(0), Ord(3), ())) is not None


def test_fin_interval_inclusions_are_monomorphisms(F):
    assert is_interval_inclusion(F, Mor(Fin(2), Fin(3), (2, 0))) is not None
    assert is_interval_inclusion(F, Mor(Fin(2), Fin(3), (1, 1))) is None


@hypothesis.given(monotone_tables())
def test_ord_interval_iff_injective_and_contiguous(case):
    O = ORD
    table, tgt = case
    m = Mor(Ord(len(table)), Ord(tgt), table)
    contiguous = len(set(table)) == len(table) and (not table or table[-1] - table[0] + 1 == len(table))
    w = is_interval_inclusion(O, m)
    assert (w is not None) == contiguous
    if w is not None:
        assert validate_witness(O, m, w)


def test_fiber_witness_composes(O):
    f = Mor(Ord(4), Ord(2), (0, 1, 1, 1))
    m, w = fiber_witness(O, f, 1)
    g = Mor(Ord(3), Ord(2), (0, 0, 1))
    n, v = fiber_witness(O, g, 0)
    assert n.tgt == m.src
    composite = O.compose(m, n)
    combined = compose_witnesses(O, m, w, n, v)
    assert combined is not None
    assert validate_witness(O, composite, combined)
    assert composite.data == (1, 2)


def test_interval_pullback_is_a_pullback(F):
    m = Mor(Fin(2), Fin(3), (0, 2))
    w = is_interval_inclusion(F, m)
    f = Mor(Fin(2), Fin(3), (2, 1))
    _, proj, to_k = interval_pullback(F, f, m, w)
    assert is_pullback(F, proj, to_k, f, m, 2)
    assert proj.src == Fin(1)


def test_cyclic_recognition_needs_a_witness(cyc):
    f = Mor(Cyc(2), Cyc(3), (0, 1))
    with pytest.raises(RecognitionUnavailable):
        is_interval_inclusion(cyc, f)
    assert is_interval_inclusion(cyc, cyc.identity(Cyc(3))) is not None


def test_truncation_keeps_small_objects():
    C = TruncatedCategory(ORD, 2)
    assert C.objects(4) == (Trunc(Ord(0), 2), Trunc(Ord(1), 2), Trunc(Ord(2), 2))
    assert len(C.hom(Trunc(Ord(2), 2), Trunc(Ord(1), 2))) == 1


def test_semidirect_homs_are_natural():
    C = SemidirectCategory(FinCategory())
    bang = FinCategory().bang(Fin(2))
    X = Semidir(2, (Fin(2), Fin(1)), (bang,))
    Y = Semidir(1, (Fin(2),), ())
    assert C.points(X) == ((0, 0), (0, 1), (1, 0))
    assert len(C.hom(Y, X)) == 5
    # ω_0 must be constant at the image of ω_1
    assert len(C.hom(X, Y)) == 2
    assert len(C.hom(C.terminal(), X)) == 3


def test_semidirect_fiber_keeps_arrows():
    C = SemidirectCategory(FinCategory())
    X = Semidir(2, (Fin(1), Fin(1)), (FinCategory().identity(Fin(1)),))
    fib, incl = C.fiber(C.bang(X), (0, 0))
    assert fib == X
    assert incl == C.identity(X)


@pytest.mark.parametrize("name", ["O", "F", "triv"])
def test_axiom_suite_passes(name):
    from selector import parse_selector
    report = opcat_law_suite(parse_selector(name), 2, cone_bound=1, samples=30)
    assert report.ok, report.failures


def test_axiom_suite_on_wreath(OO):
    report = opcat_law_suite(OO, 1, cone_bound=1, samples=20)
    assert report.ok, report.failures
    assert "fiber-hom-count" in report.laws()


@pytest.mark.parametrize("n,count", [(2, 9), (3, 24)])
def test_cyclic_hom_counts(cyc, n, count):
    assert len(cyc.hom(Cyc(n), Cyc(3))) == count


def test_cyclic_maps_keep_orientation(cyc):
    homs = cyc.hom(Cyc(3), Cyc(3))
    assert Mor(Cyc(3), Cyc(3), (1, 2, 0)) in homs
    assert Mor(Cyc(3), Cyc(3), (0, 2, 1)) not in homs
    assert Mor(Cyc(3), Cyc(3), (2, 1, 0)) not in homs
    assert Mor(Cyc(3), Cyc(3), (0, 0, 2)) in homs


def test_axiom_suite_on_cyclic(cyc):
    report = opcat_law_suite(cyc, 3, cone_bound=1, samples=30)
    assert report.ok, report.failures
    assert "interval-witness" not in report.laws()


def test_axiom_suite_on_semidirect():
    report = opcat_law_suite(SemidirectCategory(FinCategory()), 2, cone_bound=1, samples=30)
    assert report.ok, report.failures


def test_wreath_fiber_bound_caps_each_fiber(OO):
    objs = OO.objects(3, 2)
    assert len(objs) == 1 + 3 + 9 + 27
    assert Wreath(Ord(2), (Ord(2), Ord(2))) in objs
    assert Wreath(Ord(2), (Ord(2), Ord(2))) not in OO.objects(3)
    assert all(OO.outer.point_count(o.base) <= 3 for o in objs)
    assert all(OO.inner.point_count(f) <= 2 for o in objs for f in o.fibers)


def test_fiber_bound_ignored_off_wreaths(O):
    assert O.objects(3, 1) == O.objects(3)


def test_iso_class_reaches_past_the_point_bound(OO, F):
    empty_fiber = Wreath(Ord(1), (Ord(0),))
    assert OO.point_count(empty_fiber) == 0
    assert empty_fiber not in OO.objects(0)
    assert OO.iso_class(empty_fiber) == (empty_fiber,)
    assert F.iso_class(Fin(3)) == (Fin(3),)


def test_iso_class_in_wreath_over_fin():
    W = wreath(OrdCategory(), FinCategory())
    obj = Wreath(Fin(2), (Ord(1), Ord(2)))
    assert set(W.iso_class(obj)) == {obj, Wreath(Fin(2), (Ord(2), Ord(1)))}

import pytest

from categories import TruncatedCategory
from codes import Fin, Mor, Ord, Wreath
from errors import NotPerfectError
from functors import terminal_embedding, underlying_points_functor, wreath_section
from laws import colax_law_suite, monad_law_suite
from perfect import alpha, brute_conservative_maps, is_perfect, perfect


def test_point_classifiers(PO, PF):
    assert (PO.Tc, PO.t) == (Ord(3), 1)
    assert (PF.Tc, PF.t) == (Fin(2), 1)


def test_classify_examples(PO, PF):
    assert PO.classify(Ord(3), 1).data == (0, 1, 2)
    assert PO.classify(Ord(4), 0).data == (1, 2, 2, 2)
    assert PF.classify(Fin(3), 2).data == (0, 0, 1)


def test_unit_and_multiplication(PO, PF):
    assert PF.unit(Fin(2)).data == (0, 1)
    assert PO.unit(Ord(2)).data == (1, 2)
    assert PF.mult(Fin(1)).data == (0, 1, 1)
    assert PO.mult(Ord(0)).data == (0, 0, 1, 1)


def test_e_at_terminal_is_iso(PO, PF, POO):
    for P in (PO, PF, POO):
        assert P.C.is_iso(P.e(P.C.terminal()))


def test_truncations_and_cyclic_are_not_perfect(O, cyc):
    with pytest.raises(NotPerfectError):
        perfect(TruncatedCategory(O, 3))
    assert not is_perfect(cyc)
    assert is_perfect(O)


@pytest.mark.parametrize("name,bound", [("O", 4), ("F", 4), ("triv", 2)])
def test_monad_laws(name, bound):
    from selector import parse_selector
    report = monad_law_suite(perfect(parse_selector(name)), bound, cone_bound=1, samples=25)
    assert report.ok, report.failures
    assert {"left-unit", "right-unit", "associativity", "unit-pullback"} <= report.laws()


def test_monad_laws_on_wreath(POO):
    report = monad_law_suite(POO, 1, cone_bound=1, samples=10)
    assert report.ok, report.failures


def test_wreath_point_classifier(POO):
    assert POO.Tc == Wreath(Ord(3), (Ord(1), Ord(3), Ord(1)))
    assert POO.t == (1, 1)


def test_pruned_wreath_search_matches_brute_force(POO):
    C = POO.C
    for obj in C.objects(1):
        for p in C.points(obj):
            assert set(POO.conservative_maps(obj, p)) == set(brute_conservative_maps(POO, obj, p))
            assert len(POO.conservative_maps(obj, p)) == 1


def test_alpha_for_points_functor(O):
    u = underlying_points_functor(O)
    assert alpha(u, Ord(1)).data == (1, 0, 1)
    assert alpha(u, Ord(0)).data == (0, 0)


def test_colax_laws_for_points_functor(O):
    report = colax_law_suite(underlying_points_functor(O), 2, samples=20)
    assert report.ok, report.failures


def test_colax_laws_for_terminal_embedding(F):
    report = colax_law_suite(terminal_embedding(F), 2)
    assert report.ok, report.failures


def test_colax_laws_for_wreath_section(OO):
    report = colax_law_suite(wreath_section(OO, "inner"), 1, samples=10)
    assert report.ok, report.failures


def test_lift_over_T_restricts_on_special_fibers(PF):
    C = PF.C
    f = Mor(Fin(3), Fin(2), (1, 0, 1))
    _, incl = PF.special_fiber(f)
    g = Mor(Fin(2), Fin(2), (1, 0))
    h = PF.lift_over_T(f, g)
    assert C.compose(PF.e(Fin(2)), h) == f
    assert h.data == (1, 2, 0)
    assert C.compose(h, incl) == C.compose(PF.embed(Fin(2)), g)


def test_monad_laws_on_wreath_with_fiber_bound(POO):
    report = monad_law_suite(POO, 3, cone_bound=1, samples=8, fiber_bound=2)
    assert report.ok, report.failures
    assert (report.bound, report.fiber_bound) == (3, 2)
    assert any(c.object == "(O2;[O2,O2])" for c in report.checks)


def test_apply_T(PO, PF):
    assert PO.apply_T(Ord(2)) == (Ord(4), Mor(Ord(4), Ord(3), (0, 1, 1, 2)))
    assert PF.apply_T(Fin(2)) == (Fin(3), Mor(Fin(3), Fin(2), (1, 1, 0)))


def test_is_conservative(PO, PF, O):
    assert PO.is_conservative(O.identity(Ord(3)), 1, 1)
    chi = Mor(Ord(4), Ord(3), (0, 0, 1, 2))
    assert PO.is_conservative(chi, 2, 1)
    assert not PO.is_conservative(chi, 1, 1)
    assert not PO.is_conservative(chi, 0, 0)
    to_basepoint = Mor(Fin(2), Fin(2), (1, 1))
    assert not PF.is_conservative(to_basepoint, 0, 1)
    assert not PF.is_conservative(to_basepoint, 1, 1)


def test_lift_over_T_examples(PO, PF, O, F):
    const = F.constant(Fin(2), PF.Tc, PF.t)
    assert PF.lift_over_T(const, F.identity(Fin(2))) == PF.unit(Fin(2))
    assert PF.lift_over_T(PF.e(Fin(2)), F.identity(Fin(2))) == F.identity(Fin(3))
    assert PO.lift_over_T(PO.e(Ord(2)), O.identity(Ord(2))) == O.identity(Ord(4))
    to_other = Mor(Fin(1), Fin(2), (0,))
    assert PF.lift_over_T(to_other, Mor(Fin(0), Fin(2), ())).data == (2,)

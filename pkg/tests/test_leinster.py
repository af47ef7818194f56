import hypothesis
import hypothesis.strategies as strat
import pytest

from categories import FinCategory
from codes import Fin, Mor, Ord, Wreath
from comparisons import compose_pointed, pointed_table
from functors import identity_functor, underlying_points_functor
from leinster import (
    IdentityProjection,
    KleisliMor,
    WreathProjection,
    W_obj,
    all_factorizations,
    factorize,
    fibration_check,
    is_active,
    is_inert,
    kcompose,
    khom,
    kid,
    kleisli_W,
    leinster_law_suite,
    lmap,
    lmap_report,
    pattern_cospans,
)
from perfect import perfect

GAMMA = perfect(FinCategory())


def pointed_maps(max_size=3):
    """(|J|, |I|, table J -> I₊) with the basepoint of I₊ last."""
    return strat.tuples(strat.integers(0, max_size), strat.integers(0, max_size)).flatmap(
        lambda ji: strat.lists(strat.integers(0, ji[1]), min_size=ji[0], max_size=ji[0])
        .map(lambda t: (ji[0], ji[1], tuple(t))))


def fin_kmor(j, i, table):
    return KleisliMor(Fin(j), Fin(i), Mor(Fin(j), Fin(i + 1), table))


def test_khom_counts(PF, PO):
    assert len(khom(PF, Fin(2), Fin(2))) == 9
    assert len(khom(PO, Ord(2), Ord(1))) == 6
    assert len(khom(PO, Ord(1), Ord(0))) == 2


@pytest.mark.parametrize("j,i", [(0, 0), (1, 2), (2, 1), (3, 3)])
def test_gamma_hom_count(PF, j, i):
    assert len(khom(PF, Fin(j), Fin(i))) == (i + 1) ** j


def test_factorization_example(PF):
    phi = fin_kmor(3, 2, (0, 0, 2))
    fac = factorize(PF, phi)
    assert fac.middle == Fin(2)
    assert fac.inert.carrier.data == (0, 1, 2)
    assert fac.active.carrier.data == (0, 0)
    assert kcompose(PF, fac.active, fac.inert) == phi
    assert len(all_factorizations(PF, phi)) == 2


def test_inert_and_active_on_extremes(PF):
    ident = kid(PF, Fin(2))
    assert is_inert(PF, ident) and is_active(PF, ident)
    assert is_inert(PF, fin_kmor(2, 1, (1, 0)))
    assert not is_active(PF, fin_kmor(2, 1, (1, 0)))
    assert is_active(PF, fin_kmor(2, 1, (0, 0)))
    assert not is_inert(PF, fin_kmor(2, 1, (0, 0)))


@hypothesis.given(pointed_maps())
def test_gamma_inert_iff_singleton_preimages(case):
    PF = GAMMA
    j, i, table = case
    phi = fin_kmor(j, i, table)
    singletons = all(table.count(x) == 1 for x in range(i))
    assert is_inert(PF, phi) == singletons
    assert is_active(PF, phi) == (i not in table)


@hypothesis.settings(max_examples=60)
@hypothesis.given(pointed_maps(2), pointed_maps(2))
def test_gamma_composition_is_pointed_composition(first, second):
    PF = GAMMA
    k, j, t1 = first
    _, i, t2 = second
    hypothesis.assume(all(v <= i for v in t2) and len(t2) == j)
    psi, phi = fin_kmor(k, j, t1), fin_kmor(j, i, t2)
    assert pointed_table(kcompose(PF, phi, psi)) == compose_pointed(pointed_table(phi), pointed_table(psi))


@pytest.mark.parametrize("name,bound", [("F", 3), ("O", 3), ("wreath:O:O", 1), ("wreath:O:O", 2)])
def test_leinster_laws(name, bound):
    from selector import parse_selector
    report = leinster_law_suite(perfect(parse_selector(name)), bound, samples=20)
    assert report.ok, report.failures


def test_lmap_of_points_functor_preserves_inerts(O):
    report = lmap_report(underlying_points_functor(O), 2)
    assert report.ok, report.failures


def test_lmap_identity(PO, O):
    phi = khom(PO, Ord(2), Ord(1))[3]
    assert lmap(identity_functor(O), phi) == phi


def test_pattern_cospans(PF):
    assert len(pattern_cospans(PF, Fin(2), 1, targets=[Fin(1)])) == 2
    assert len(pattern_cospans(PF, Fin(1), 1)) == 2
    empty = pattern_cospans(PF, Fin(0), 1)
    assert len(empty) == 1
    assert (empty[0].I, empty[0].I2) == (Fin(0), Fin(0))


def test_kleisli_W_objects_and_identities(POO, PO):
    assert POO.C.point_count(W_obj(POO, Ord(2), Ord(3))) == 6
    K, I = Ord(1), Ord(2)
    assert kleisli_W(POO, kid(PO, K), kid(PO, I)) == kid(POO, W_obj(POO, K, I))


def test_kleisli_W_preserves_composition(POO, PO):
    objs = [Ord(0), Ord(1)]
    for K in objs:
        for K2 in objs:
            for I in objs:
                for I2 in objs:
                    for kappa in khom(PO, K, K2):
                        for phi in khom(PO, I, I2):
                            for kappa2 in khom(PO, K2, Ord(1)):
                                for phi2 in khom(PO, I2, Ord(1)):
                                    lhs = kleisli_W(POO, kcompose(PO, kappa2, kappa), kcompose(PO, phi2, phi))
                                    rhs = kcompose(POO, kleisli_W(POO, kappa2, phi2), kleisli_W(POO, kappa, phi))
                                    assert lhs == rhs


def test_fibration_over_wreath_base(POO):
    report = fibration_check(WreathProjection(POO), 2, samples=20)
    assert report.ok, report.failures
    assert {"cartesian-lift", "cocartesian-lift", "fiber-hom-count"} <= report.laws()


def test_identity_projection_is_a_fibration(PF):
    assert fibration_check(IdentityProjection(PF), 2, samples=10).ok


def test_factorization_through_middle_with_empty_fiber(POO):
    middle = Wreath(Ord(1), (Ord(0),))
    phis = [phi for phi in khom(POO, middle, POO.C.terminal()) if factorize(POO, phi).middle == middle]
    assert phis
    for phi in phis:
        facs = all_factorizations(POO, phi)
        assert [fac.middle for fac in facs] == [middle]


@pytest.mark.parametrize("J", [
    Wreath(Ord(3), (Ord(0), Ord(3), Ord(0))),
    Wreath(Ord(2), (Ord(1), Ord(2))),
    Wreath(Ord(3), (Ord(1), Ord(1), Ord(1))),
])
def test_wreath_factorizations_unique_at_three_points(POO, J):
    for phi in khom(POO, J, POO.C.terminal()):
        facs = all_factorizations(POO, phi)
        assert len(facs) == 1
        assert kcompose(POO, facs[0].active, facs[0].inert) == phi


def test_fin_factorizations_count_automorphisms(PF):
    # through K = Fin(2) the two factorizations differ by the swap
    phi = fin_kmor(3, 3, (0, 2, 3))
    assert factorize(PF, phi).middle == Fin(2)
    assert len(all_factorizations(PF, phi)) == 2
    assert len(all_factorizations(PF, fin_kmor(3, 3, (0, 1, 2)))) == 6


def test_leinster_laws_on_wreath_with_fiber_bound(POO):
    report = leinster_law_suite(POO, 2, samples=10, fiber_bound=1)
    assert report.ok, report.failures
    assert report.fiber_bound == 1

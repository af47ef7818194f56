from codes import Fin, Ord, Wreath
from functors import (
    check_admissible,
    check_operator_morphism,
    compose_functors,
    coronal_check,
    functor_zoo,
    terminal_embedding,
    to_trivial,
    truncation_inclusion,
    two_out_of_three,
    underlying_points_functor,
    wreath_projection,
    wreath_section,
)
from laws import functor_law_suite


def test_points_functor_is_an_operator_morphism(O):
    u = underlying_points_functor(O)
    assert u(Ord(3)) == Fin(3)
    assert check_operator_morphism(u, 4).ok


def test_zoo_flags_hold(O, F, OO):
    for F_ in (terminal_embedding(F), truncation_inclusion(O, 2), wreath_section(OO, "inner"),
               wreath_section(OO, "outer")):
        assert F_.operator_morphism
        report = check_operator_morphism(F_, 2)
        assert report.ok, (F_.name, report.failures)


def test_wreath_projection_is_only_admissible(OO):
    p = wreath_projection(OO)
    assert not p.operator_morphism
    assert check_admissible(p, 1).ok
    assert not check_operator_morphism(p, 1).ok


def test_collapse_is_not_an_operator_morphism(O):
    collapse = to_trivial(O)
    assert check_admissible(collapse, 2).ok
    assert not check_operator_morphism(collapse, 2).ok


def test_two_out_of_three(O, OO):
    u = underlying_points_functor(O)
    assert two_out_of_three(u, terminal_embedding(O), 2).passed
    section = wreath_section(OO, "outer")
    assert two_out_of_three(underlying_points_functor(OO), section, 1).passed


def test_composed_functor(O):
    u = underlying_points_functor(O)
    H = compose_functors(u, truncation_inclusion(O, 2))
    assert H.operator_morphism
    assert check_operator_morphism(H, 2).ok


def test_coronal_check(OO):
    report = coronal_check(OO, 2)
    assert report.ok, report.failures


def test_outer_section_objects(OO):
    s = wreath_section(OO, "outer")
    assert s(Ord(2)) == Wreath(Ord(2), (Ord(1), Ord(1)))


def test_functor_suite(O):
    assert len(functor_zoo(O)) == 4
    report = functor_law_suite(O, 2, samples=20)
    assert report.ok, report.failures


def test_operator_morphisms_at_four_points(O, F, OO):
    for F_ in (terminal_embedding(F), truncation_inclusion(O, 3), wreath_section(OO, "inner")):
        report = check_operator_morphism(F_, 4, samples=40)
        assert report.ok, (F_.name, report.failures)

import pytest

from codes import Ord
from comparisons import (
    bottom,
    delta_compare,
    delta_dual,
    delta_points,
    gamma_compare,
    is_endpoint_preserving,
    is_shift,
    leq,
    top,
)


def test_gamma_comparison():
    report = gamma_compare(2, compose_bound=2)
    assert report.ok, report.failures
    assert {"hom-count", "hom-bijective", "composition"} <= report.laws()


def test_delta_comparison():
    report = delta_compare(2, samples=30)
    assert report.ok, report.failures
    assert {"successor", "hom-bijective", "inert-is-shift", "dual-round-trip"} <= report.laws()


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_delta_point_count(PO, n):
    assert len(delta_points(PO, Ord(n))) == n + 1


def test_bottom_below_top(PO):
    assert leq(PO, bottom(), top())
    assert not leq(PO, top(), bottom())
    assert delta_points(PO, Ord(1)) == (bottom(), top())


def test_shift_and_endpoint_tables():
    assert is_shift((1, 2, 3))
    assert not is_shift((0, 2))
    assert is_endpoint_preserving((0, 1, 1, 3), 4)
    assert not is_endpoint_preserving((1, 3), 4)


def test_delta_dual():
    assert delta_dual(1) == Ord(1)
    assert delta_dual(3) == Ord(3)

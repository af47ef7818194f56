import pytest

from categories import CycCategory, FinCategory, OrdCategory, SemidirectCategory, TruncatedCategory, WreathCategory
from errors import EXIT_USAGE, SelectorError
from selector import parse_selector


@pytest.mark.parametrize("text,kind", [
    ("O", OrdCategory), ("o", OrdCategory), ("F", FinCategory), ("cyc", CycCategory),
    ("trunc:O:3", TruncatedCategory), ("wreath:O:F", WreathCategory), ("semidir:F", SemidirectCategory),
])
def test_selectors(text, kind):
    assert isinstance(parse_selector(text), kind)


def test_nested_wreath():
    C = parse_selector("wreath:O:wreath:O:O")
    assert C.name == "wreath:O:wreath:O:O"
    assert isinstance(C.outer, WreathCategory)
    assert parse_selector("trunc:wreath:O:O:2").inner.name == "wreath:O:O"


@pytest.mark.parametrize("text", ["", "X", "wreath:O", "trunc:O", "trunc:O:x", "trunc:O:0", "O:F",
                                  "wreath:O:wreath:O:wreath:O:O"])
def test_bad_selectors(text):
    with pytest.raises(SelectorError) as exc:
        parse_selector(text)
    assert exc.value.exit_code == EXIT_USAGE

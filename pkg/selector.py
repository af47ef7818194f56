"""
OpCat — Category selector grammar
  O | F | triv | cyc | trunc:<sel>:<n> | wreath:<inner>:<outer> | semidir:<sel>
Selectors nest, e.g. wreath:O:wreath:O:O for the threefold wreath power of O.
"""
from functools import lru_cache

from categories import (
    CategoryHandle,
    CycCategory,
    FinCategory,
    OrdCategory,
    SemidirectCategory,
    TrivialCategory,
    TruncatedCategory,
    wreath,
)
from config import WREATH_DEPTH
from errors import SelectorError

_ATOMS = {"o": OrdCategory, "f": FinCategory, "triv": TrivialCategory, "cyc": CycCategory}


@lru_cache(maxsize=None)
def parse_selector(text: str, depth: int = WREATH_DEPTH) -> CategoryHandle:
    tokens = text.strip().split(":")
    handle, rest = _parse(tokens, depth, text)
    if rest:
        raise SelectorError(f"trailing input in selector {text!r}: {':'.join(rest)}")
    return handle


def _parse(tokens: list[str], depth: int, text: str) -> tuple[CategoryHandle, list[str]]:
    if not tokens or not tokens[0]:
        raise SelectorError(f"incomplete selector {text!r}")
    head, rest = tokens[0].lower(), tokens[1:]
    if head in _ATOMS:
        return _ATOMS[head](), rest
    if head == "trunc":
        inner, rest = _parse(rest, depth, text)
        if not rest or not rest[0].isdigit():
            raise SelectorError(f"trunc needs a point bound in {text!r}")
        n = int(rest[0])
        if n < 1:
            raise SelectorError(f"trunc bound must be at least 1, got {n} in {text!r}")
        return TruncatedCategory(inner, n), rest[1:]
    if head == "wreath":
        if depth < 1:
            raise SelectorError(f"wreath nesting deeper than {WREATH_DEPTH} in {text!r}")
        inner, rest = _parse(rest, depth - 1, text)
        outer, rest = _parse(rest, depth - 1, text)
        return wreath(inner, outer), rest
    if head == "semidir":
        param, rest = _parse(rest, depth, text)
        return SemidirectCategory(param), rest
    raise SelectorError(f"unknown category {tokens[0]!r} in {text!r}")

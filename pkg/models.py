"""
OpCat — Pydantic models (CLI input + report and export shapes)
"""
from typing import Any, Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from config import BOUND_MAX, BOUND_MIN, SCHEMA_VERSION

FORMATS = ("json", "dot", "text")
SUITES = ("axioms", "monad", "colax", "all")
TARGETS = ("gamma", "delta", "theta-fibration")
EXPORTS = ("category", "leinster")
POSETS = ("twisted", "A", "F_sigma")


class CliConfig(BaseModel):
    command: str
    selector: str = "F"
    bound: int
    fiber_bound: int | None = None
    format: str = "json"
    out: str | None = None
    seed: int = 0
    suite: str = "all"
    target: str | None = None
    what: str = "category"
    poset: str = "twisted"
    src: int | None = None
    tgt: int | None = None
    table: str | None = None
    seq: str | None = None
    maps: str | None = None
    m: int | None = None

    @field_validator("bound")
    @classmethod
    def bound_in_range(cls, v: int) -> int:
        if not BOUND_MIN <= v <= BOUND_MAX:
            raise ValueError(f"bound must be between {BOUND_MIN} and {BOUND_MAX}")
        return v

    @field_validator("fiber_bound")
    @classmethod
    def fiber_bound_in_range(cls, v: int | None) -> int | None:
        if v is not None and not 0 <= v <= BOUND_MAX:
            raise ValueError(f"fiber bound must be between 0 and {BOUND_MAX}")
        return v

    @field_validator("format")
    @classmethod
    def known_format(cls, v: str) -> str:
        if v not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}")
        return v

    @field_validator("suite")
    @classmethod
    def known_suite(cls, v: str) -> str:
        if v not in SUITES:
            raise ValueError(f"suite must be one of {', '.join(SUITES)}")
        return v

    @field_validator("target")
    @classmethod
    def known_target(cls, v: str | None) -> str | None:
        if v is not None and v not in TARGETS:
            raise ValueError(f"target must be one of {', '.join(TARGETS)}")
        return v

    @field_validator("what")
    @classmethod
    def known_export(cls, v: str) -> str:
        if v not in EXPORTS:
            raise ValueError(f"export must be one of {', '.join(EXPORTS)}")
        return v

    @field_validator("poset")
    @classmethod
    def known_poset(cls, v: str) -> str:
        if v not in POSETS:
            raise ValueError(f"poset must be one of {', '.join(POSETS)}")
        return v

    @field_validator("m")
    @classmethod
    def m_non_negative(cls, v: int | None) -> int | None:
        if v is not None and v < 0:
            raise ValueError("m must be non-negative")
        return v


# ── Law reports ───────────────────────────────────────────────────────────────

class LawCheck(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    law: str
    object: str
    passed: bool = Field(alias="pass")
    counterexample: Any | None = None


class LawReport(BaseModel):
    suite: str
    category: str
    bound: int
    fiber_bound: int | None = None
    checks: List[LawCheck]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[LawCheck]:
        return [c for c in self.checks if not c.passed]

    def laws(self) -> set[str]:
        return {c.law for c in self.checks}


# ── Exports ───────────────────────────────────────────────────────────────────

class MorphismEntry(BaseModel):
    id: int
    src: str
    tgt: str
    data: Any
    inert: bool | None = None
    active: bool | None = None


class HomEntry(BaseModel):
    src: str
    tgt: str
    morphisms: List[int]


class CategoryExport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default=SCHEMA_VERSION, alias="schema")
    kind: str
    category: str
    bound: int
    objects: List[str]
    morphisms: List[MorphismEntry]
    homs: List[HomEntry]
    composition: List[Tuple[int, int, int]]  # (g, f, g∘f)


class PosetExport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default=SCHEMA_VERSION, alias="schema")
    name: str
    elements: List[str]
    leq: List[Tuple[str, str]]
    marked: List[Tuple[str, str]]
    labels: Dict[str, Any] = {}


class FactorizationView(BaseModel):
    category: str
    src: str
    tgt: str
    carrier: Any
    middle: str
    inert: Any
    active: Any
    comparison: Any


class ErrorView(BaseModel):
    error: str
    exit_code: int
    detail: str
    counterexample: Any | None = None

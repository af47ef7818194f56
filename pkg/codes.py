"""
OpCat — Canonical object and morphism encodings
Structural equality is object identity: two codes are the same object iff they compare equal.
"""
from dataclasses import dataclass
from typing import Any, Union


@dataclass(frozen=True)
class Triv:
    def __str__(self) -> str:
        return "*"

    def to_json(self) -> Any:
        return {"kind": "triv"}


@dataclass(frozen=True)
class Ord:
    n: int

    def __str__(self) -> str:
        return f"O{self.n}"

    def to_json(self) -> Any:
        return {"kind": "ord", "n": self.n}


@dataclass(frozen=True)
class Fin:
    n: int

    def __str__(self) -> str:
        return f"F{self.n}"

    def to_json(self) -> Any:
        return {"kind": "fin", "n": self.n}


@dataclass(frozen=True)
class Cyc:
    n: int

    def __str__(self) -> str:
        return f"C{self.n}"

    def to_json(self) -> Any:
        return {"kind": "cyc", "n": self.n}


@dataclass(frozen=True)
class Trunc:
    inner: "ObjCode"
    bound: int

    def __str__(self) -> str:
        return f"{self.inner}|<={self.bound}"

    def to_json(self) -> Any:
        return {"kind": "trunc", "inner": self.inner.to_json(), "bound": self.bound}


@dataclass(frozen=True)
class Wreath:
    base: "ObjCode"
    fibers: tuple["ObjCode", ...]

    def __str__(self) -> str:
        return f"({self.base};[{','.join(str(f) for f in self.fibers)}])"

    def to_json(self) -> Any:
        return {"kind": "wreath", "base": self.base.to_json(),
                "fibers": [f.to_json() for f in self.fibers]}


@dataclass(frozen=True)
class Semidir:
    """An ordered set of length n with a functor into the parameter category.

    `arrows[k]` is the morphism entries[k] -> entries[k+1].
    """
    n: int
    entries: tuple["ObjCode", ...]
    arrows: tuple["Mor", ...] = ()

    def __str__(self) -> str:
        parts = [str(self.entries[0])] if self.entries else []
        for k, arrow in enumerate(self.arrows):
            parts.append(f"-{data_str(arrow.data)}->")
            parts.append(str(self.entries[k + 1]))
        return f"<{' '.join(parts)}>"

    def to_json(self) -> Any:
        return {"kind": "semidir", "n": self.n,
                "entries": [e.to_json() for e in self.entries],
                "arrows": [a.to_json() for a in self.arrows]}


ObjCode = Union[Triv, Ord, Fin, Cyc, Trunc, Wreath, Semidir]


@dataclass(frozen=True)
class Mor:
    src: ObjCode
    tgt: ObjCode
    data: Any

    def __str__(self) -> str:
        return f"{self.src}->{self.tgt}:{data_str(self.data)}"

    def to_json(self) -> Any:
        return {"src": str(self.src), "tgt": str(self.tgt), "data": data_json(self.data)}


def data_str(data: Any) -> str:
    if isinstance(data, Mor):
        return data_str(data.data)
    if isinstance(data, tuple):
        return "[" + ",".join(data_str(d) for d in data) + "]"
    if data is None:
        return "id"
    return str(data)


def data_json(data: Any) -> Any:
    if isinstance(data, Mor):
        return data_json(data.data)
    if isinstance(data, tuple):
        return [data_json(d) for d in data]
    return data

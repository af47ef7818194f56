"""
OpCat — JSON and DOT export
Bounded categories, Leinster categories and marked posets. Orderings follow the
enumeration order of the handles, so identical inputs give byte-identical output.
"""
from typing import Any

from categories import CategoryHandle
from leinster import is_active, is_inert, kcompose, khom
from models import CategoryExport, HomEntry, MorphismEntry, PosetExport
from perfect import PerfectHandle
from sequences import MarkedPoset


def category_export(C: CategoryHandle, bound: int) -> CategoryExport:
    objs = C.objects(bound)
    ids: dict = {}
    morphisms, homs = [], []
    for src in objs:
        for tgt in objs:
            members = []
            for f in C.hom(src, tgt):
                ids[f] = len(ids)
                members.append(ids[f])
                morphisms.append(MorphismEntry(id=ids[f], src=str(src), tgt=str(tgt), data=f.to_json()["data"]))
            homs.append(HomEntry(src=str(src), tgt=str(tgt), morphisms=members))
    composition = [(ids[g], ids[f], ids[C.compose(g, f)])
                   for f in ids for g in ids if g.src == f.tgt]
    return CategoryExport(kind="category", category=C.name, bound=bound, objects=[str(o) for o in objs],
                          morphisms=morphisms, homs=homs, composition=composition)


def leinster_export(P: PerfectHandle, bound: int) -> CategoryExport:
    objs = P.C.objects(bound)
    ids: dict = {}
    morphisms, homs = [], []
    for src in objs:
        for tgt in objs:
            members = []
            for phi in khom(P, src, tgt):
                ids[phi] = len(ids)
                members.append(ids[phi])
                morphisms.append(MorphismEntry(id=ids[phi], src=str(src), tgt=str(tgt),
                                               data=phi.carrier.to_json()["data"],
                                               inert=is_inert(P, phi), active=is_active(P, phi)))
            homs.append(HomEntry(src=str(src), tgt=str(tgt), morphisms=members))
    composition = [(ids[g], ids[f], ids[kcompose(P, g, f)])
                   for f in ids for g in ids if g.src == f.tgt]
    return CategoryExport(kind="leinster", category=P.name, bound=bound, objects=[str(o) for o in objs],
                          morphisms=morphisms, homs=homs, composition=composition)


def element_str(x: Any) -> str:
    return "(" + ",".join(str(c) for c in x) + ")" if isinstance(x, tuple) else str(x)


def _label_json(label: Any) -> Any:
    return label.to_json() if hasattr(label, "to_json") else str(label)


def poset_export(poset: MarkedPoset) -> PosetExport:
    labels = {element_str(x): _label_json(poset.labels[x]) for x in poset.elements if x in poset.labels}
    for a, b in sorted(poset.edge_labels):
        labels[f"{element_str(a)}->{element_str(b)}"] = _label_json(poset.edge_labels[a, b])
    return PosetExport(name=poset.name,
                       elements=[element_str(x) for x in poset.elements],
                       leq=[(element_str(a), element_str(b)) for a, b in sorted(poset.leq)],
                       marked=[(element_str(a), element_str(b)) for a, b in sorted(poset.marked)],
                       labels=labels)


# ── DOT ───────────────────────────────────────────────────────────────────────

def _quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def _closure(reached: set[int], composition) -> set[int]:
    reached = set(reached)
    grew = True
    while grew:
        grew = False
        for g, f, h in composition:
            if g in reached and f in reached and h not in reached:
                reached.add(h)
                grew = True
    return reached


def generating_morphisms(export: CategoryExport) -> set[int]:
    """Ids of a generating set: morphisms that factor through no third object,
    then, in enumeration order, whatever those fail to reach.
    """
    by_id = {m.id: m for m in export.morphisms}
    identities = {m.id for m in export.morphisms if m.src == m.tgt
                  and all(f == h for g, f, h in export.composition if g == m.id)}
    composites = {h for g, f, h in export.composition
                  if by_id[f].tgt not in (by_id[f].src, by_id[g].tgt)}
    chosen = {m.id for m in export.morphisms if m.id not in identities | composites}
    reached = _closure(identities | chosen, export.composition)
    for m in export.morphisms:
        if m.id not in reached:
            chosen.add(m.id)
            reached = _closure(reached | {m.id}, export.composition)
    return chosen


def category_dot(export: CategoryExport) -> str:
    """Generating morphisms as edges; inert edges blue, active edges red."""
    lines = [f"digraph {_quote(export.category)} {{"]
    lines += [f"  {_quote(o)};" for o in export.objects]
    generators = generating_morphisms(export)
    for m in export.morphisms:
        if m.id not in generators:
            continue
        style = ""
        if m.inert and not m.active:
            style = ", color=blue"
        elif m.active and not m.inert:
            style = ", color=red"
        lines.append(f"  {_quote(m.src)} -> {_quote(m.tgt)} [label={_quote(str(m.data))}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_dot(poset: MarkedPoset) -> str:
    """Hasse diagram; marked covers are drawn bold."""
    lines = [f"digraph {_quote(poset.name)} {{", "  rankdir=BT;"]
    lines += [f"  {_quote(element_str(x))};" for x in poset.elements]
    for a, b in poset.covers():
        style = " [style=bold]" if (a, b) in poset.marked else " [style=dashed]"
        lines.append(f"  {_quote(element_str(a))} -> {_quote(element_str(b))}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(model) -> str:
    return model.model_dump_json(by_alias=True, exclude_none=True, indent=2) + "\n"

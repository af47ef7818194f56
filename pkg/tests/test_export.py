import json

from codes import Fin, Mor
from export import (
    category_dot,
    category_export,
    generating_morphisms,
    leinster_export,
    poset_dot,
    poset_export,
    to_json,
)
from sequences import A_poset, make_seq, twisted_arrows


def test_category_export_is_deterministic(O):
    first = to_json(category_export(O, 2))
    second = to_json(category_export(O, 2))
    assert first == second
    data = json.loads(first)
    assert data["schema"] == "opcat/1"
    assert data["objects"] == ["O0", "O1", "O2"]
    assert len(data["morphisms"]) == sum(len(h["morphisms"]) for h in data["homs"])


def test_composition_table_matches(F):
    export = category_export(F, 2)
    by_id = {m.id: m for m in export.morphisms}
    for g, f, h in export.composition:
        assert by_id[f].tgt == by_id[g].src
        assert (by_id[h].src, by_id[h].tgt) == (by_id[f].src, by_id[g].tgt)


def test_leinster_export_flags(PF):
    export = leinster_export(PF, 1)
    flags = {(m.src, m.tgt, tuple(m.data)): (m.inert, m.active) for m in export.morphisms}
    assert flags["F1", "F1", (0,)] == (True, True)
    assert flags["F1", "F1", (1,)] == (False, False)
    assert flags["F1", "F0", (0,)] == (True, False)
    assert "color=blue" in category_dot(export)


def test_dot_skips_identities(O):
    dot = category_dot(category_export(O, 1))
    assert dot.startswith('digraph "O" {')
    assert '"O1" -> "O1"' not in dot
    assert '"O0" -> "O1"' in dot


def test_poset_exports(PF, F):
    poset = twisted_arrows(2)
    data = json.loads(to_json(poset_export(poset)))
    assert len(data["elements"]) == 6
    assert ["(0,1)", "(0,2)"] in data["marked"]
    assert "style=bold" in poset_dot(poset)

    s = make_seq(F, [Fin(2), Fin(1)], [Mor(Fin(2), Fin(1), (0, 0))])
    labelled = poset_export(A_poset(PF, s))
    assert labelled.labels["(0,1,0)"] == {"kind": "fin", "n": 2}
    assert "(0,1,0)->(0,0,1)" in labelled.labels


def test_dot_draws_generating_morphisms_only(O):
    dot = category_dot(category_export(O, 2))
    assert '"O0" -> "O1"' in dot
    assert dot.count('"O1" -> "O2"') == 2
    assert dot.count('"O2" -> "O1"') == 1
    assert '"O0" -> "O2"' not in dot
    assert '"O2" -> "O2"' not in dot


def test_generators_reach_every_morphism(F):
    export = category_export(F, 2)
    generators = generating_morphisms(export)
    index = {(m.src, m.tgt, tuple(m.data)): m.id for m in export.morphisms}
    identities = {index[str(o), str(o), F.identity(o).data] for o in F.objects(2)}
    reached = set(generators) | identities
    grew = True
    while grew:
        new = {h for g, f, h in export.composition if g in reached and f in reached} - reached
        reached |= new
        grew = bool(new)
    assert reached == {m.id for m in export.morphisms}
    assert len(generators) < len(export.morphisms) - len(identities)

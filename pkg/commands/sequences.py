"""
OpCat — sequences
  sequences --poset twisted --m 2
  sequences --poset A --cat F --seq 2,1 --maps 0,0
  sequences --poset F_sigma --cat F --seq 2,1 --maps 0,1
For F_sigma the maps are Kleisli carriers I_k -> TI_{k+1}.
"""
from codes import Mor
from errors import SelectorError
from export import element_str, poset_dot, poset_export, to_json
from leinster import KleisliMor
from models import POSETS, CliConfig
from perfect import perfect
from selector import parse_selector
from sequences import A_poset, F_sigma, MarkedPoset, make_seq, twisted_arrows

from commands.common import emit, parse_ints, parse_tables, sized_object


def register(subparsers, parents) -> None:
    p = subparsers.add_parser("sequences", parents=parents, help="Build and export an index poset")
    p.add_argument("--poset", choices=POSETS, default="twisted")
    p.add_argument("--seq", help="object sizes, e.g. 3,2")
    p.add_argument("--maps", help="arrow tables separated by ';', e.g. 0,0,1")
    p.add_argument("--m", type=int)
    p.set_defaults(run=run)


def build(config: CliConfig) -> MarkedPoset:
    if config.poset == "twisted":
        if config.m is None:
            raise SelectorError("--poset twisted needs --m")
        return twisted_arrows(config.m)

    P = perfect(parse_selector(config.selector))
    C = P.C
    objects = [sized_object(C, n) for n in parse_ints(config.seq, "--seq")]
    tables = parse_tables(config.maps)
    if not objects:
        raise SelectorError("--seq needs at least one object")
    if len(tables) != len(objects) - 1:
        raise SelectorError(f"{len(objects)} objects need {len(objects) - 1} maps, got {len(tables)}")

    if config.poset == "A":
        arrows = [_checked(C, Mor(objects[k], objects[k + 1], t)) for k, t in enumerate(tables)]
        return A_poset(P, make_seq(C, objects, arrows))
    sigma = [KleisliMor(objects[k], objects[k + 1], _checked(C, Mor(objects[k], P.T(objects[k + 1]), t)))
             for k, t in enumerate(tables)]
    return F_sigma(P, sigma, start=objects[0])


def _checked(C, f: Mor) -> Mor:
    if f not in C.hom(f.src, f.tgt):
        raise SelectorError(f"{list(f.data)} is not a morphism {f.src} -> {f.tgt}")
    return f


def run(config: CliConfig) -> int:
    poset = build(config)
    if config.format == "json":
        emit(to_json(poset_export(poset)), config.out)
    elif config.format == "dot":
        emit(poset_dot(poset), config.out)
    else:
        lines = [f"{element_str(x)}  {poset.labels.get(x, '')}" for x in poset.elements]
        lines += [f"{element_str(a)} <= {element_str(b)}{'  marked' if (a, b) in poset.marked else ''}"
                  for a, b in poset.covers()]
        emit("\n".join(lines) + "\n", config.out)
    return 0

"""
OpCat — factor
  factor --cat F --src 3 --tgt 2 --map 0,0,2
The carrier is given as a table J -> TI.
"""
from codes import Mor
from errors import SelectorError
from export import to_json
from leinster import KleisliMor, factorize
from models import CliConfig, FactorizationView
from perfect import perfect
from selector import parse_selector

from commands.common import emit, parse_ints, sized_object


def register(subparsers, parents) -> None:
    p = subparsers.add_parser("factor", parents=parents, help="Inert-active factorization of a Kleisli morphism")
    p.add_argument("--src", type=int, required=True)
    p.add_argument("--tgt", type=int, required=True)
    p.add_argument("--map", dest="table", required=True, help="carrier table, e.g. 0,0,2")
    p.set_defaults(run=run)


def run(config: CliConfig) -> int:
    C = parse_selector(config.selector)
    P = perfect(C)
    J, I = sized_object(C, config.src), sized_object(C, config.tgt)
    table = parse_ints(config.table, "--map")
    carrier = Mor(J, P.T(I), table)
    if carrier not in C.hom(J, P.T(I)):
        raise SelectorError(f"{list(table)} is not a morphism {J} -> {P.T(I)}")
    phi = KleisliMor(J, I, carrier)
    fac = factorize(P, phi)
    view = FactorizationView(category=C.name, src=str(J), tgt=str(I), carrier=list(table),
                             middle=str(fac.middle), inert=fac.inert.carrier.to_json()["data"],
                             active=fac.active.carrier.to_json()["data"],
                             comparison=fac.comparison.to_json()["data"])
    if config.format == "json":
        emit(to_json(view), config.out)
    elif config.format == "text":
        emit(f"{J} -> {fac.middle} -> {I}\n"
             f"inert  {view.inert}\n"
             f"active {view.active}\n", config.out)
    else:
        raise SelectorError("factorizations have no DOT rendering")
    return 0

"""
OpCat — compare
  compare --target gamma            Λ(F) against pointed finite sets
  compare --target delta            Λ(O) against the simplex category
  compare --target theta-fibration  Λ(Ψ≀Φ) -> Λ(Φ), with --cat naming the wreath
"""
from categories import WreathCategory
from comparisons import delta_compare, gamma_compare
from leinster import WreathProjection, fibration_check
from errors import SelectorError
from models import TARGETS, CliConfig
from perfect import perfect
from selector import parse_selector

from commands.common import finish


def register(subparsers, parents) -> None:
    p = subparsers.add_parser("compare", parents=parents, help="Run a comparison functor check")
    p.add_argument("--target", choices=TARGETS, required=True)
    p.set_defaults(run=run)


def run(config: CliConfig) -> int:
    if config.target == "gamma":
        report = gamma_compare(config.bound)
    elif config.target == "delta":
        report = delta_compare(config.bound, seed=config.seed)
    else:
        W = parse_selector(config.selector)
        if not isinstance(W, WreathCategory):
            raise SelectorError(f"theta-fibration needs a wreath --cat such as wreath:O:O, got {W.name}")
        report = fibration_check(WreathProjection(perfect(W)), config.bound, seed=config.seed)
    return finish(report, config.format, config.out)

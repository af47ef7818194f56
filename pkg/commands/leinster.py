"""
OpCat — leinster
  leinster --cat SEL   Λ(Φ) laws, Λ(u) functoriality, and the fibration check for wreaths
"""
from categories import FinCategory, WreathCategory
from functors import underlying_points_functor
from leinster import WreathProjection, fibration_check, leinster_law_suite, lmap_report
from models import CliConfig
from perfect import perfect
from reports import ReportBuilder
from selector import parse_selector

from commands.common import finish


def register(subparsers, parents) -> None:
    p = subparsers.add_parser("leinster", parents=parents, help="Check the Leinster category of a perfect category")
    p.set_defaults(run=run)


def run(config: CliConfig) -> int:
    C = parse_selector(config.selector)
    P = perfect(C)
    rb = ReportBuilder("leinster", C.name, config.bound, config.fiber_bound)
    rb.merge(leinster_law_suite(P, config.bound, seed=config.seed, fiber_bound=config.fiber_bound))
    if not isinstance(C, FinCategory):
        rb.merge(lmap_report(underlying_points_functor(C), config.bound), prefix="lmap")
    if isinstance(C, WreathCategory):
        rb.merge(fibration_check(WreathProjection(P), config.bound, seed=config.seed), prefix="fibration")
    return finish(rb.build(), config.format, config.out)

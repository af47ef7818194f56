"""
OpCat — laws
  laws --cat SEL --suite {axioms,monad,colax,all}
"""
from errors import log
from laws import colax_functors, colax_law_suite, functor_law_suite, monad_law_suite, opcat_law_suite
from models import SUITES, CliConfig
from perfect import is_perfect, perfect
from reports import ReportBuilder
from selector import parse_selector

from commands.common import finish


def register(subparsers, parents) -> None:
    p = subparsers.add_parser("laws", parents=parents, help="Run a law suite on a category")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.set_defaults(run=run)


def run(config: CliConfig) -> int:
    C = parse_selector(config.selector)
    rb = ReportBuilder(config.suite, C.name, config.bound, config.fiber_bound)

    if config.suite in ("axioms", "all"):
        rb.merge(opcat_law_suite(C, config.bound, seed=config.seed, fiber_bound=config.fiber_bound),
                 prefix="axioms")
        rb.merge(functor_law_suite(C, config.bound, seed=config.seed))
    # monad and colax raise NotPerfectError when asked for by name
    if config.suite in ("monad", "colax") or is_perfect(C):
        P = perfect(C)
        if config.suite in ("monad", "all"):
            rb.merge(monad_law_suite(P, config.bound, seed=config.seed, fiber_bound=config.fiber_bound),
                     prefix="monad")
        if config.suite in ("colax", "all"):
            for F in colax_functors(C):
                log("laws", f"colax {F.name}")
                rb.merge(colax_law_suite(F, config.bound, seed=config.seed), prefix=F.name)
    return finish(rb.build(), config.format, config.out)

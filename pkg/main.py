"""
OpCat
=====
Finite combinatorics of operator categories: concrete instances, the canonical
monad on perfect operator categories, Leinster categories with their inert-active
factorization, wreath products, sequence posets, and a law-checking harness.

  python main.py laws --cat O --bound 3
  python main.py factor --cat F --src 3 --tgt 2 --map 0,0,2
  python main.py compare --target delta --bound 4
  python main.py export --cat wreath:O:O --bound 2 --format dot

Exit codes: 0 ok, 1 law failure, 2 not perfect, 64 usage, 70 uniqueness failure.
"""
import argparse
import sys

from pydantic import ValidationError

import commands
from config import OPCAT_BOUND, SEED, parse_bound
from errors import OpcatError, SelectorError, log
from models import FORMATS, CliConfig, ErrorView


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise SelectorError(message)


def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False)
    shared.add_argument("--cat", dest="selector", default="F", help="category selector, e.g. O, F, wreath:O:O")
    shared.add_argument("--bound", type=int, default=parse_bound(OPCAT_BOUND), help="points per object")
    shared.add_argument("--fiber-bound", type=int, help="points per wreath fiber; --bound then caps the base only")
    shared.add_argument("--format", choices=FORMATS, default="json")
    shared.add_argument("--out", help="write to a file instead of stdout")
    shared.add_argument("--seed", type=int, default=SEED, help="seed for sampled checks")

    parser = _Parser(prog="opcat", description="Operator categories and their Leinster categories")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in (commands.laws, commands.leinster, commands.factor,
                   commands.compare, commands.sequences, commands.export):
        module.register(subparsers, [shared])
    return parser


def _fail(exc: OpcatError) -> int:
    view = ErrorView(error=type(exc).__name__, exit_code=exc.exit_code, detail=exc.detail,
                     counterexample=exc.counterexample)
    print(view.model_dump_json(exclude_none=True), file=sys.stderr, flush=True)
    return exc.exit_code


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        fields = {k: v for k, v in vars(args).items() if k != "run" and v is not None}
        config = CliConfig(**fields)
        log("main", f"{config.command} {config.selector} bound={config.bound}")
        return args.run(config)
    except ValidationError as exc:
        detail = "; ".join(e["msg"] for e in exc.errors())
        return _fail(SelectorError(detail))
    except OpcatError as exc:
        return _fail(exc)


if __name__ == "__main__":
    sys.exit(main())
